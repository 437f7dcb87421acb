#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "weylscatter/config.hpp"
#include "weylscatter/grid.hpp"
#include "weylscatter/scattering.hpp"
#include "weylscatter/ssf.hpp"

namespace weylscatter {

struct ResultRow {
    GridPoint point;
    Regime regime = Regime::Singular;
    std::optional<ScatteringPoint> scattering;  // empty for Singular rows
    std::optional<double> xi;
    std::optional<double> bk_residual;
    std::string error;  // why the row is Singular
};

struct ResultTable {
    std::string command;
    std::string config_hash;
    std::vector<ResultRow> rows;  // ordered by λ
};

/// S per grid point. Points where M(λ+i0) or (Θ − M)⁻¹ does not exist become
/// Singular rows.
ResultTable cmd_scatter(const RunConfig& config, int jobs = 1);

/// S, ξ and the Birman-Krein residual per grid point. Throws NotOperator when
/// Θ is not single-valued.
ResultTable cmd_ssf(const RunConfig& config, int jobs = 1);

/// Rows with equal rank are grouped under a "# rank r" header; a new block
/// starts whenever the rank changes along the grid.
void write_csv(std::ostream& os, const ResultTable& table);
nlohmann::json table_to_json(const ResultTable& table);

struct CheckResult {
    std::string check_name;
    std::size_t points_tested = 0;
    double max_residual = 0.0;
    bool pass = true;
    bool applicable = true;
    std::string detail;
    std::vector<double> series;  // per-point values where a trend matters
};

struct VerifyReport {
    std::string config_hash;
    std::vector<CheckResult> checks;
    bool pass() const;
    const CheckResult* find(const std::string& name) const;
};

VerifyReport cmd_verify(const RunConfig& config, int jobs = 1);
nlohmann::json report_to_json(const VerifyReport& report);

struct RecoveryResult {
    double lambda_probe = 0.0;
    CMatrix theta_est;
    CMatrix theta_true;
    double error_norm = 0.0;
};

/// Needs a Dirac model and a matrix-form Θ. NonInvertible propagates.
RecoveryResult cmd_recover_theta(const RunConfig& config);
nlohmann::json recovery_to_json(const RecoveryResult& result);

/// 17 significant digits, locale independent.
std::string format_double(double v);

}  // namespace weylscatter
