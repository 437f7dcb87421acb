#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "json.hpp"
#include "weylscatter/models.hpp"
#include "weylscatter/relation.hpp"

namespace weylscatter {

struct PotentialSpec {
    std::string kind = "constant_well";  // constant_well | exponential | tabulated
    CMatrix strength;                    // constant_well, exponential
    double radius = 1.0;                 // constant_well
    double decay_length = 1.0;           // exponential
    std::string path;                    // tabulated (CSV, relative to the config file)

    bool operator==(const PotentialSpec&) const;
};

struct ModelSpec {
    std::string kind = "free_scalar";  // free_scalar | schrodinger_matrix | dirac | point_interaction | conjugated
    Eigen::Index n = 1;
    double a = 1.0;
    PotentialSpec potential;
    double x_max = 0.0;  // 0 = automatic
    double ode_tol = 1e-8;
    std::shared_ptr<const ModelSpec> inner;  // point_interaction, conjugated

    bool operator==(const ModelSpec&) const;
};

struct GridSpec {
    double start = 0.0;
    double stop = 1.0;
    int points = 1;
    std::string scale = "linear";  // linear | log
    double nudge = 1e-6;

    bool operator==(const GridSpec&) const = default;
};

struct OutputSpec {
    std::string format = "csv";  // csv | json
    std::string path;            // empty = stdout

    bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
    ModelSpec model;
    BoundaryParameter theta = BoundaryParameter::matrix(CMatrix::Zero(1, 1));
    GridSpec grid;
    QuadratureConfig quad;
    OutputSpec outputs;
    double lambda_probe = 1e8;
    std::filesystem::path base_dir;  // where relative paths resolve; not serialized

    bool operator==(const RunConfig&) const;
};

/// Throws Error(Config) with a JSON-pointer style location on malformed input.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);

RunConfig load_config(const std::filesystem::path& path);

nlohmann::json theta_to_json(const BoundaryParameter& theta);
BoundaryParameter theta_from_json(const nlohmann::json& j, const std::string& where = "/theta");

/// FNV-1a over the canonical JSON dump, as 16 hex digits.
std::string config_hash(const RunConfig& config);

WeylFunctionPtr build_model(const ModelSpec& spec, const std::filesystem::path& base_dir = {});

}  // namespace weylscatter
