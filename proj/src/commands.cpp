#include "weylscatter/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <functional>
#include <cmath>
#include <random>
#include <thread>

#include "weylscatter/error.hpp"

namespace weylscatter {

using nlohmann::json;

namespace {

// Runs f(i) for i in [0, n) on up to `jobs` threads; results land at their index.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& f) {
    const std::size_t workers = std::min<std::size_t>(std::max(1, jobs), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) f(i);
        });
    }
}

struct Prepared {
    WeylFunctionPtr model;
    std::vector<GridPoint> grid;
};

Prepared prepare(const RunConfig& config) {
    Prepared p;
    p.model = build_model(config.model, config.base_dir);
    const auto avoid = threshold_points(*p.model, config.theta);
    p.grid = make_grid(config.grid, avoid);
    return p;
}

ResultRow evaluate_row(const WeylFunction& model, const BoundaryParameter& theta, const GridPoint& point,
                       const QuadratureConfig& quad, bool with_xi) {
    ResultRow row;
    row.point = point;
    try {
        const CMatrix m = eval_boundary(model, point.lambda).value;
        ScatteringPoint sp = smatrix(m, theta);
        sp.lambda = point.lambda;
        row.regime = classify_regime(m);
        if (with_xi) {
            const double x = xi(m, theta, quad);
            row.xi = x;
            row.bk_residual = birman_krein_residual(sp, x);
        }
        row.scattering = std::move(sp);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotOperator) throw;
        row.regime = Regime::Singular;
        row.scattering.reset();
        row.xi.reset();
        row.bk_residual.reset();
        row.error = e.what();
    }
    return row;
}

std::vector<ResultRow> evaluate_grid(const WeylFunction& model, const RunConfig& config,
                                     const std::vector<GridPoint>& grid, bool with_xi, int jobs) {
    std::vector<ResultRow> rows(grid.size());
    parallel_for(grid.size(), jobs, [&](std::size_t i) {
        rows[i] = evaluate_row(model, config.theta, grid[i], config.quad, with_xi);
    });
    return rows;
}

ResultTable run_table(const RunConfig& config, int jobs, bool with_xi, const char* name) {
    if (with_xi && !config.theta.is_operator()) {
        throw Error(ErrorKind::NotOperator, "ssf needs an operator-valued Θ (matrix form or invertible B)");
    }
    const Prepared p = prepare(config);
    ResultTable table;
    table.command = name;
    table.config_hash = config_hash(config);
    table.rows = evaluate_grid(*p.model, config, p.grid, with_xi, jobs);
    return table;
}

std::string csv_columns(Eigen::Index r) {
    std::string out = "lambda";
    for (const char* part : {"re", "im"}) {
        for (Eigen::Index i = 1; i <= r; ++i) {
            for (Eigen::Index j = 1; j <= r; ++j) {
                out += ",S_" + std::string(part) + "_" + std::to_string(i) + "_" + std::to_string(j);
            }
        }
    }
    return out + ",rank,det_re,det_im,xi,bk_residual,cond,regime";
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

json matrix_rows(const Eigen::MatrixXd& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(std::move(row));
    }
    return out;
}

// Largest distance between matched eigenvalues, matching greedily by proximity.
double spectrum_distance(const CMatrix& a, const CMatrix& b) {
    const CVector ea = Eigen::ComplexEigenSolver<CMatrix>(a, false).eigenvalues();
    CVector eb = Eigen::ComplexEigenSolver<CMatrix>(b, false).eigenvalues();
    std::vector<bool> used(static_cast<std::size_t>(eb.size()), false);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < ea.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        Eigen::Index best_j = 0;
        for (Eigen::Index j = 0; j < eb.size(); ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            const double d = std::abs(ea(i) - eb(j));
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        used[static_cast<std::size_t>(best_j)] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

bool is_free_like(const WeylFunction& model) {
    return dynamic_cast<const FreeHalfLineModel*>(&model) != nullptr ||
           dynamic_cast<const MatrixSchrodingerModel*>(&model) != nullptr;
}

class CheckBuilder {
public:
    CheckBuilder(std::string name, double tol) : tol_(tol) { r_.check_name = std::move(name); }

    void add(double residual) {
        ++r_.points_tested;
        r_.max_residual = std::max(r_.max_residual, residual);
        if (!(residual <= tol_)) r_.pass = false;
    }
    void fail(const std::string& why) {
        r_.pass = false;
        if (r_.detail.empty()) r_.detail = why;
    }
    CheckResult& result() { return r_; }
    CheckResult done() {
        if (r_.points_tested == 0 && r_.detail.empty()) {
            r_.applicable = false;
            r_.detail = "no applicable points";
        }
        return std::move(r_);
    }
    static CheckResult not_applicable(std::string name, std::string why) {
        CheckResult r;
        r.check_name = std::move(name);
        r.applicable = false;
        r.detail = std::move(why);
        return r;
    }

private:
    CheckResult r_;
    double tol_;
};

constexpr double kCondLimit = 1e10;

CheckResult check_unitarity(const std::vector<ResultRow>& rows) {
    CheckBuilder b("unitarity", 1e-10);
    for (const auto& row : rows) {
        if (row.regime != Regime::AC || !row.scattering || row.scattering->cond >= kCondLimit) continue;
        const CMatrix& s = row.scattering->s_reduced;
        b.add((s.adjoint() * s - identity(s.rows())).norm());
    }
    return b.done();
}

CheckResult check_birman_krein(const std::vector<ResultRow>& rows, bool operator_theta) {
    if (!operator_theta) return CheckBuilder::not_applicable("birman_krein", "Θ is not an operator");
    CheckBuilder b("birman_krein", 1e-8);
    for (const auto& row : rows) {
        if (!row.bk_residual || row.scattering->cond >= kCondLimit) continue;
        b.add(*row.bk_residual);
    }
    return b.done();
}

CheckResult check_scalar_type(const WeylFunction& model, const BoundaryParameter& theta,
                              const std::vector<ResultRow>& rows) {
    CheckBuilder b("scalar_type_agreement", 1e-10);
    for (const auto& row : rows) {
        if (row.regime != Regime::AC || !row.scattering || row.scattering->cond >= kCondLimit) continue;
        const CMatrix m = eval_boundary(model, row.point.lambda).value;
        const Complex mean = m.trace() / static_cast<double>(m.rows());
        if ((m - mean * identity(m.rows())).norm() > 1e-14 * scale_of(m)) continue;
        try {
            const CMatrix s = smatrix_scalar_type(mean, theta, m.rows());
            b.add((s - row.scattering->s_full).norm());
        } catch (const Error& e) {
            b.fail(e.what());
        }
    }
    return b.done();
}

CheckResult check_factorization(const WeylFunction& model, const BoundaryParameter& theta,
                                const std::vector<ResultRow>& rows) {
    if (!theta.is_operator()) return CheckBuilder::not_applicable("factorization_similarity", "Θ is not an operator");
    CheckBuilder b("factorization_similarity", 1e-8);
    for (const auto& row : rows) {
        if (!row.scattering || row.scattering->rank != model.dim() || row.scattering->cond >= kCondLimit) continue;
        const CMatrix m = eval_boundary(model, row.point.lambda).value;
        try {
            b.add(spectrum_distance(smatrix_factorized(m, theta), row.scattering->s_full));
        } catch (const Error& e) {
            b.fail(e.what());
        }
    }
    return b.done();
}

CheckResult check_gap(const WeylFunction& model, const BoundaryParameter& theta, const std::vector<ResultRow>& rows) {
    if (!theta.is_operator()) return CheckBuilder::not_applicable("gap_integrality", "Θ is not an operator");
    CheckBuilder b("gap_integrality", 1e-8);
    for (const auto& row : rows) {
        if (row.regime != Regime::Gap || !row.xi) continue;
        try {
            const int count = gap_count(eval_boundary(model, row.point.lambda).value, theta);
            b.add(std::abs(*row.xi - count) + std::abs(row.scattering->det_s - Complex(1.0, 0.0)));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SingularArgument) b.fail(e.what());
        }
    }
    return b.done();
}

CheckResult check_closed_form(const WeylFunction& model, const BoundaryParameter& theta,
                              const std::vector<ResultRow>& rows) {
    const char* name = "closed_form_agreement";
    if (!theta.is_operator()) return CheckBuilder::not_applicable(name, "Θ is not an operator");
    const CMatrix t = theta.operator_matrix();
    if (!is_hermitian(t, 1e-12)) return CheckBuilder::not_applicable(name, "Θ is not Hermitian");

    std::function<double(double)> closed;
    const auto eigs_of = [](const CMatrix& m) {
        const RVector w = herm_eig(m).eigenvalues;
        return std::vector<double>(w.data(), w.data() + w.size());
    };
    if (dynamic_cast<const FreeHalfLineModel*>(&model) != nullptr) {
        closed = [e = eigs_of(t)](double l) { return xi_closed_form_free(e, l); };
    } else if (const auto* pi = dynamic_cast<const PointInteractionModel*>(&model);
               pi != nullptr && dynamic_cast<const FreeHalfLineModel*>(pi->inner().get()) != nullptr) {
        closed = [e = eigs_of(t - identity(t.rows()))](double l) { return xi_closed_form_free(e, l); };
    } else if (const auto* d = dynamic_cast<const DiracModel*>(&model)) {
        if ((t - CMatrix(t.diagonal().asDiagonal())).norm() != 0.0) {
            return CheckBuilder::not_applicable(name, "closed form needs diagonal Θ for Dirac");
        }
        const double a = d->mass(), t1 = t(0, 0).real(), t2 = t(1, 1).real();
        closed = [a, t1, t2](double l) { return xi_closed_form_dirac(a, t1, t2, l); };
    } else {
        return CheckBuilder::not_applicable(name, "no closed form for model " + model.kind());
    }

    CheckBuilder b(name, 1e-8);
    for (const auto& row : rows) {
        if (!row.xi) continue;
        try {
            b.add(std::abs(*row.xi - closed(row.point.lambda)));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ThresholdPoint) b.fail(e.what());
        }
    }
    return b.done();
}

CheckResult check_asymptotic(const WeylFunction& model) {
    const char* name = "asymptotic_decay";
    if (!is_free_like(model)) return CheckBuilder::not_applicable(name, "model has no i√λ asymptote");
    CheckBuilder b(name, 0.2);
    const std::vector<double> lambdas{1e2, 1e3, 1e4};
    try {
        const auto dev = asymptotic_check(model, lambdas);
        b.result().series = dev;
        for (double d : dev) b.add(d);
        b.result().max_residual = dev.back();
        const bool exact = *std::max_element(dev.begin(), dev.end()) <= 1e-12;
        const bool decreasing = dev[0] > dev[1] && dev[1] > dev[2];
        if (!exact && !decreasing) b.fail("deviation is not strictly decreasing");
        if (!(dev.back() < 0.2)) b.fail("deviation at 1e4 is not below 0.2");
    } catch (const Error& e) {
        b.fail(e.what());
    }
    return b.done();
}

std::vector<Complex> upper_sample(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-10.0, 10.0);
    std::uniform_real_distribution<double> log_im(std::log(0.01), std::log(10.0));
    std::vector<Complex> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.emplace_back(re(rng), std::exp(log_im(rng)));
    return out;
}

CheckResult check_trace_formula(const WeylFunction& model, const BoundaryParameter& theta, int jobs) {
    const char* name = "trace_formula";
    if (!theta.is_operator()) return CheckBuilder::not_applicable(name, "Θ is not an operator");
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> re(-5.0, 5.0);
    std::uniform_real_distribution<double> im(0.5, 3.0);
    std::vector<Complex> points;
    for (int i = 0; i < 20; ++i) points.emplace_back(re(rng), im(rng));

    std::vector<std::optional<TraceFormulaResult>> results(points.size());
    std::vector<std::string> errors(points.size());
    parallel_for(points.size(), jobs, [&](std::size_t i) {
        try {
            results[i] = trace_formula_check(model, theta, points[i]);
        } catch (const Error& e) {
            errors[i] = e.what();
        }
    });
    CheckBuilder b(name, 1e-5);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!results[i]) {
            b.fail(errors[i]);
            continue;
        }
        b.add(results[i]->residual / std::max(1.0, std::abs(results[i]->rhs)));
    }
    return b.done();
}

CheckResult check_nevanlinna(const WeylFunction& model) {
    CheckBuilder b("nevanlinna_validation", 0.0);
    const auto points = upper_sample(100, 11);
    try {
        const NevanlinnaReport report = validate_nevanlinna(model, points);
        auto& r = b.result();
        r.points_tested = report.points_tested;
        r.max_residual = std::max(0.0, -report.min_eigenvalue);
        if (!report.ok()) {
            b.fail(std::to_string(report.violations.size()) + " violations, first: " + report.violations[0].message);
        }
    } catch (const Error& e) {
        b.fail(e.what());
    }
    return b.done();
}

CheckResult check_theta_recovery(const RunConfig& config, const WeylFunction& model) {
    const char* name = "theta_recovery";
    if (dynamic_cast<const DiracModel*>(&model) == nullptr) {
        return CheckBuilder::not_applicable(name, "recovery applies to the Dirac model");
    }
    if (!config.theta.is_matrix()) return CheckBuilder::not_applicable(name, "Θ is not in matrix form");
    CheckBuilder b(name, 1e-3);
    try {
        b.add(cmd_recover_theta(config).error_norm);
    } catch (const Error& e) {
        b.fail(e.what());
    }
    return b.done();
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

ResultTable cmd_scatter(const RunConfig& config, int jobs) { return run_table(config, jobs, false, "scatter"); }

ResultTable cmd_ssf(const RunConfig& config, int jobs) { return run_table(config, jobs, true, "ssf"); }

void write_csv(std::ostream& os, const ResultTable& table) {
    os << "# weyl-scatter " << table.command << "\n# config_hash " << table.config_hash << '\n';
    for (const auto& row : table.rows) {
        if (row.point.nudged) {
            os << "# nudged " << format_double(row.point.requested) << " -> " << format_double(row.point.lambda)
               << '\n';
        }
    }
    std::optional<Eigen::Index> block;  // -1 marks the singular block
    for (const auto& row : table.rows) {
        const Eigen::Index r = row.scattering ? row.scattering->rank : -1;
        if (block != r) {
            block = r;
            if (r < 0) {
                os << "# rank singular\n# columns lambda,rank,det_re,det_im,xi,bk_residual,cond,regime\n";
            } else {
                os << "# rank " << r << "\n# columns " << csv_columns(r) << '\n';
            }
        }
        if (!row.scattering) {
            os << "# error " << row.error << '\n';
            os << format_double(row.point.lambda) << ",,,,,,," << to_string(row.regime) << '\n';
            continue;
        }
        const ScatteringPoint& sp = *row.scattering;
        os << format_double(row.point.lambda);
        for (Eigen::Index i = 0; i < r; ++i) {
            for (Eigen::Index j = 0; j < r; ++j) os << ',' << format_double(sp.s_reduced(i, j).real());
        }
        for (Eigen::Index i = 0; i < r; ++i) {
            for (Eigen::Index j = 0; j < r; ++j) os << ',' << format_double(sp.s_reduced(i, j).imag());
        }
        os << ',' << r << ',' << format_double(sp.det_s.real()) << ',' << format_double(sp.det_s.imag()) << ','
           << opt(row.xi) << ',' << opt(row.bk_residual) << ',' << format_double(sp.cond) << ','
           << to_string(row.regime) << '\n';
    }
}

json table_to_json(const ResultTable& table) {
    json rows = json::array();
    json nudges = json::array();
    for (const auto& row : table.rows) {
        if (row.point.nudged) nudges.push_back({{"requested", row.point.requested}, {"lambda", row.point.lambda}});
        json j{{"lambda", row.point.lambda}, {"regime", std::string(to_string(row.regime))}};
        if (row.scattering) {
            const ScatteringPoint& sp = *row.scattering;
            j["rank"] = sp.rank;
            j["s_re"] = matrix_rows(sp.s_reduced.real());
            j["s_im"] = matrix_rows(sp.s_reduced.imag());
            j["det_re"] = sp.det_s.real();
            j["det_im"] = sp.det_s.imag();
            j["cond"] = sp.cond;
            j["rank_ambiguous"] = sp.rank_ambiguous;
        } else {
            j["error"] = row.error;
        }
        if (row.xi) j["xi"] = *row.xi;
        if (row.bk_residual) j["bk_residual"] = *row.bk_residual;
        rows.push_back(std::move(j));
    }
    return {{"command", table.command}, {"config_hash", table.config_hash}, {"nudges", nudges}, {"rows", rows}};
}

bool VerifyReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* VerifyReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.check_name == name) return &c;
    }
    return nullptr;
}

VerifyReport cmd_verify(const RunConfig& config, int jobs) {
    VerifyReport report;
    report.config_hash = config_hash(config);
    const Prepared p = prepare(config);
    const WeylFunction& model = *p.model;
    const bool op = config.theta.is_operator();
    const auto rows = evaluate_grid(model, config, p.grid, op, jobs);

    report.checks.push_back(check_unitarity(rows));
    report.checks.push_back(check_birman_krein(rows, op));
    report.checks.push_back(check_scalar_type(model, config.theta, rows));
    report.checks.push_back(check_factorization(model, config.theta, rows));
    report.checks.push_back(check_gap(model, config.theta, rows));
    report.checks.push_back(check_closed_form(model, config.theta, rows));
    report.checks.push_back(check_asymptotic(model));
    report.checks.push_back(check_trace_formula(model, config.theta, jobs));
    report.checks.push_back(check_nevanlinna(model));
    report.checks.push_back(check_theta_recovery(config, model));
    return report;
}

json report_to_json(const VerifyReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) {
        json j{{"check_name", c.check_name},
               {"points_tested", c.points_tested},
               {"max_residual", c.max_residual},
               {"pass", c.pass},
               {"applicable", c.applicable}};
        if (!c.detail.empty()) j["detail"] = c.detail;
        if (!c.series.empty()) j["series"] = c.series;
        checks.push_back(std::move(j));
    }
    return {{"config_hash", report.config_hash}, {"pass", report.pass()}, {"checks", checks}};
}

RecoveryResult cmd_recover_theta(const RunConfig& config) {
    const auto model = build_model(config.model, config.base_dir);
    if (dynamic_cast<const DiracModel*>(model.get()) == nullptr) {
        throw Error(ErrorKind::WrongModelKind, "recover-theta needs a dirac model, not " + model->kind());
    }
    const auto* form = config.theta.as_matrix_form();
    if (form == nullptr) throw Error(ErrorKind::Config, "/theta: recover-theta needs a matrix-form Θ");
    RecoveryResult out;
    out.lambda_probe = config.lambda_probe;
    out.theta_true = form->t;
    const ScatteringPoint sp = scatter_at(*model, config.theta, config.lambda_probe);
    out.theta_est = dirac_theta_recovery(sp.s_full);
    out.error_norm = (out.theta_est - out.theta_true).norm();
    return out;
}

json recovery_to_json(const RecoveryResult& r) {
    return {{"lambda_probe", r.lambda_probe},
            {"theta_est", theta_to_json(BoundaryParameter::matrix(r.theta_est))},
            {"theta_true", theta_to_json(BoundaryParameter::matrix(r.theta_true))},
            {"error_norm", r.error_norm}};
}

}  // namespace weylscatter
