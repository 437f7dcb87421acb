#include "weylscatter/config.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "weylscatter/error.hpp"

namespace weylscatter {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::Config, where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) config_error(where, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) config_error(where + "/" + key, "missing");
    return *it;
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) config_error(where, "expected a number");
    return j.get<double>();
}

double number_or(const json& j, const char* key, double fallback, const std::string& where) {
    const auto it = j.find(key);
    return it == j.end() ? fallback : number(*it, where + "/" + key);
}

std::string string_of(const json& j, const std::string& where) {
    if (!j.is_string()) config_error(where, "expected a string");
    return j.get<std::string>();
}

Eigen::MatrixXd real_matrix(const json& j, const std::string& where) {
    if (j.is_number()) return Eigen::MatrixXd::Constant(1, 1, j.get<double>());
    if (!j.is_array() || j.empty()) config_error(where, "expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    Eigen::MatrixXd out(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::string row_where = where + "/" + std::to_string(r);
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
            config_error(row_where, "expected a row of length " + std::to_string(rows));
        }
        for (Eigen::Index c = 0; c < rows; ++c) {
            out(r, c) = number(row[static_cast<std::size_t>(c)], row_where + "/" + std::to_string(c));
        }
    }
    return out;
}

CMatrix complex_matrix(const json& j, const char* re_key, const char* im_key, const std::string& where) {
    const Eigen::MatrixXd re = real_matrix(field(j, re_key, where), where + "/" + re_key);
    Eigen::MatrixXd im = Eigen::MatrixXd::Zero(re.rows(), re.cols());
    if (j.contains(im_key)) {
        im = real_matrix(j.at(im_key), where + "/" + im_key);
        if (im.rows() != re.rows()) config_error(where + "/" + im_key, std::string("size differs from ") + re_key);
    }
    CMatrix out(re.rows(), re.cols());
    out.real() = re;
    out.imag() = im;
    return out;
}

json rows_of(const Eigen::MatrixXd& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(std::move(row));
    }
    return out;
}

PotentialSpec potential_from_json(const json& j, const std::string& where) {
    PotentialSpec p;
    p.kind = string_of(field(j, "kind", where), where + "/kind");
    if (p.kind == "constant_well") {
        p.strength = complex_matrix(j, "re", "im", where);
        p.radius = number_or(j, "radius", 1.0, where);
        if (!(p.radius > 0.0)) config_error(where + "/radius", "must be positive");
    } else if (p.kind == "exponential") {
        p.strength = complex_matrix(j, "re", "im", where);
        p.decay_length = number_or(j, "decay_length", 1.0, where);
        if (!(p.decay_length > 0.0)) config_error(where + "/decay_length", "must be positive");
    } else if (p.kind == "tabulated") {
        p.path = string_of(field(j, "path", where), where + "/path");
    } else {
        config_error(where + "/kind", "unknown potential kind '" + p.kind + "'");
    }
    return p;
}

json potential_to_json(const PotentialSpec& p) {
    json j{{"kind", p.kind}};
    if (p.kind == "tabulated") {
        j["path"] = p.path;
        return j;
    }
    j["re"] = rows_of(p.strength.real());
    j["im"] = rows_of(p.strength.imag());
    if (p.kind == "constant_well") j["radius"] = p.radius;
    if (p.kind == "exponential") j["decay_length"] = p.decay_length;
    return j;
}

ModelSpec model_from_json(const json& j, const std::string& where) {
    ModelSpec m;
    m.kind = string_of(field(j, "kind", where), where + "/kind");
    if (m.kind == "free_scalar") {
        m.n = static_cast<Eigen::Index>(number_or(j, "n", 1.0, where));
        if (m.n < 1) config_error(where + "/n", "must be ≥ 1");
    } else if (m.kind == "dirac") {
        m.n = 2;
        m.a = number(field(j, "a", where), where + "/a");
        if (!(m.a > 0.0)) config_error(where + "/a", "must be positive");
    } else if (m.kind == "schrodinger_matrix") {
        m.potential = potential_from_json(field(j, "potential", where), where + "/potential");
        m.n = m.potential.kind == "tabulated"
                  ? static_cast<Eigen::Index>(number(field(j, "n", where), where + "/n"))
                  : static_cast<Eigen::Index>(number_or(j, "n", static_cast<double>(m.potential.strength.rows()), where));
        if (m.n < 1) config_error(where + "/n", "must be ≥ 1");
        if (m.potential.kind != "tabulated" && m.potential.strength.rows() != m.n) {
            config_error(where + "/n", "does not match the potential size");
        }
        m.x_max = number_or(j, "x_max", 0.0, where);
        m.ode_tol = number_or(j, "ode_tol", 1e-8, where);
        if (!(m.ode_tol > 0.0)) config_error(where + "/ode_tol", "must be positive");
    } else if (m.kind == "point_interaction" || m.kind == "conjugated") {
        auto inner = std::make_shared<ModelSpec>(model_from_json(field(j, "inner", where), where + "/inner"));
        m.n = inner->n;
        m.inner = std::move(inner);
    } else {
        config_error(where + "/kind", "unknown model kind '" + m.kind + "'");
    }
    return m;
}

json model_to_json(const ModelSpec& m) {
    json j{{"kind", m.kind}};
    if (m.kind == "free_scalar") {
        j["n"] = m.n;
    } else if (m.kind == "dirac") {
        j["a"] = m.a;
    } else if (m.kind == "schrodinger_matrix") {
        j["n"] = m.n;
        j["potential"] = potential_to_json(m.potential);
        j["x_max"] = m.x_max;
        j["ode_tol"] = m.ode_tol;
    } else if (m.inner) {
        j["inner"] = model_to_json(*m.inner);
    }
    return j;
}

}  // namespace

bool PotentialSpec::operator==(const PotentialSpec& o) const {
    const bool same_strength = strength.rows() == o.strength.rows() && strength.cols() == o.strength.cols() &&
                               (strength.size() == 0 || strength == o.strength);
    return kind == o.kind && same_strength && radius == o.radius && decay_length == o.decay_length &&
           path == o.path;
}

bool ModelSpec::operator==(const ModelSpec& o) const {
    const bool inner_eq = (!inner && !o.inner) || (inner && o.inner && *inner == *o.inner);
    return kind == o.kind && n == o.n && a == o.a && potential == o.potential && x_max == o.x_max &&
           ode_tol == o.ode_tol && inner_eq;
}

bool RunConfig::operator==(const RunConfig& o) const {
    return model == o.model && theta == o.theta && grid == o.grid && quad.tol == o.quad.tol &&
           quad.cond_cap == o.quad.cond_cap && outputs == o.outputs && lambda_probe == o.lambda_probe;
}

json theta_to_json(const BoundaryParameter& theta) {
    if (const auto* m = theta.as_matrix_form()) {
        return {{"kind", "matrix"}, {"re", rows_of(m->t.real())}, {"im", rows_of(m->t.imag())}};
    }
    const auto* kp = theta.as_kernel_pair();
    return {{"kind", "kernel_pair"},
            {"A_re", rows_of(kp->a.real())},
            {"A_im", rows_of(kp->a.imag())},
            {"B_re", rows_of(kp->b.real())},
            {"B_im", rows_of(kp->b.imag())}};
}

BoundaryParameter theta_from_json(const json& j, const std::string& where) {
    const std::string kind = string_of(field(j, "kind", where), where + "/kind");
    if (kind == "matrix") return BoundaryParameter::matrix(complex_matrix(j, "re", "im", where));
    if (kind == "kernel_pair") {
        CMatrix a = complex_matrix(j, "A_re", "A_im", where);
        CMatrix b = complex_matrix(j, "B_re", "B_im", where);
        if (a.rows() != b.rows()) config_error(where + "/B_re", "size differs from A");
        return BoundaryParameter::kernel_pair(std::move(a), std::move(b));
    }
    config_error(where + "/kind", "unknown boundary parameter kind '" + kind + "'");
}

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) config_error("", "config must be a JSON object");
    RunConfig c;
    c.model = model_from_json(field(j, "model", ""), "/model");
    c.theta = theta_from_json(field(j, "theta", ""), "/theta");
    if (c.theta.dim() != c.model.n) config_error("/theta", "dimension differs from the model");

    const json& g = field(j, "grid", "");
    c.grid.start = number(field(g, "start", "/grid"), "/grid/start");
    c.grid.stop = number(field(g, "stop", "/grid"), "/grid/stop");
    c.grid.points = static_cast<int>(number(field(g, "points", "/grid"), "/grid/points"));
    if (g.contains("scale")) c.grid.scale = string_of(g.at("scale"), "/grid/scale");
    c.grid.nudge = number_or(g, "nudge", 1e-6, "/grid");
    if (c.grid.points < 1) config_error("/grid/points", "must be ≥ 1");
    if (c.grid.points > 1 && !(c.grid.start < c.grid.stop)) config_error("/grid/stop", "must exceed start");
    if (c.grid.scale != "linear" && c.grid.scale != "log") config_error("/grid/scale", "must be linear or log");
    if (c.grid.scale == "log" && !(c.grid.start > 0.0)) config_error("/grid/start", "log grid needs start > 0");
    if (!(c.grid.nudge >= 0.0)) config_error("/grid/nudge", "must be ≥ 0");

    if (j.contains("quad")) {
        const json& q = j.at("quad");
        c.quad.tol = number_or(q, "tol", c.quad.tol, "/quad");
        c.quad.cond_cap = number_or(q, "cond_cap", c.quad.cond_cap, "/quad");
        if (!(c.quad.tol > 0.0)) config_error("/quad/tol", "must be positive");
        if (!(c.quad.cond_cap > 1.0)) config_error("/quad/cond_cap", "must exceed 1");
    }
    if (j.contains("outputs")) {
        const json& o = j.at("outputs");
        if (o.contains("format")) c.outputs.format = string_of(o.at("format"), "/outputs/format");
        if (o.contains("path")) c.outputs.path = string_of(o.at("path"), "/outputs/path");
        if (c.outputs.format != "csv" && c.outputs.format != "json") {
            config_error("/outputs/format", "must be csv or json");
        }
    }
    c.lambda_probe = number_or(j, "lambda_probe", c.lambda_probe, "");
    return c;
}

json config_to_json(const RunConfig& c) {
    return {{"model", model_to_json(c.model)},
            {"theta", theta_to_json(c.theta)},
            {"grid",
             {{"start", c.grid.start},
              {"stop", c.grid.stop},
              {"points", c.grid.points},
              {"scale", c.grid.scale},
              {"nudge", c.grid.nudge}}},
            {"quad", {{"tol", c.quad.tol}, {"cond_cap", c.quad.cond_cap}}},
            {"outputs", {{"format", c.outputs.format}, {"path", c.outputs.path}}},
            {"lambda_probe", c.lambda_probe}};
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Config, "cannot open config " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Config, path.string() + ": " + e.what());
    }
    RunConfig c = config_from_json(j);
    c.base_dir = path.parent_path();
    return c;
}

std::string config_hash(const RunConfig& config) {
    const std::string text = config_to_json(config).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

WeylFunctionPtr build_model(const ModelSpec& spec, const std::filesystem::path& base_dir) {
    if (spec.kind == "free_scalar") return std::make_shared<FreeHalfLineModel>(spec.n);
    if (spec.kind == "dirac") return std::make_shared<DiracModel>(spec.a);
    if (spec.kind == "schrodinger_matrix") {
        PotentialPtr q;
        const PotentialSpec& p = spec.potential;
        if (p.kind == "constant_well") {
            q = std::make_shared<ConstantWellPotential>(p.strength, p.radius);
        } else if (p.kind == "exponential") {
            q = std::make_shared<ExponentialPotential>(p.strength, p.decay_length);
        } else {
            std::filesystem::path file(p.path);
            if (file.is_relative()) file = base_dir / file;
            q = TabulatedPotential::from_csv(file, spec.n);
        }
        return std::make_shared<MatrixSchrodingerModel>(std::move(q), spec.x_max, spec.ode_tol);
    }
    if (spec.kind == "point_interaction") {
        return std::make_shared<PointInteractionModel>(build_model(*spec.inner, base_dir));
    }
    if (spec.kind == "conjugated") return std::make_shared<ConjugatedModel>(build_model(*spec.inner, base_dir));
    throw Error(ErrorKind::Config, "/model/kind: unknown model kind '" + spec.kind + "'");
}

}  // namespace weylscatter
