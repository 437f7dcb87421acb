// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "oracles.hpp"
#include "weylscatter/commands.hpp"
#include "weylscatter/error.hpp"

using namespace weylscatter;

namespace {

struct Outcome {
    bool pass = true;
    double worst = 0.0;
    std::string note;

    void check(double residual, double tol) {
        if (!(residual <= tol)) pass = false;
        worst = std::max(worst, residual);
    }
};

CMatrix diag(std::initializer_list<double> d) {
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double v : d) m(i, i) = v, ++i;
    return m;
}

ModelSpec free_spec(Eigen::Index n) {
    ModelSpec m;
    m.kind = "free_scalar";
    m.n = n;
    return m;
}

ModelSpec well_spec(Eigen::Index n) {
    ModelSpec m;
    m.kind = "schrodinger_matrix";
    m.n = n;
    m.potential.kind = "constant_well";
    m.potential.strength = identity(n);
    m.potential.radius = 1.0;
    return m;
}

ModelSpec dirac_spec() {
    ModelSpec m;
    m.kind = "dirac";
    m.n = 2;
    m.a = 1.0;
    return m;
}

ModelSpec point_spec(Eigen::Index n) {
    ModelSpec m;
    m.kind = "point_interaction";
    m.n = n;
    m.inner = std::make_shared<ModelSpec>(free_spec(n));
    return m;
}

RunConfig config(ModelSpec model, CMatrix theta, GridSpec grid) {
    RunConfig c;
    c.model = std::move(model);
    c.theta = BoundaryParameter::matrix(std::move(theta));
    c.grid = std::move(grid);
    return c;
}

GridSpec linear(double a, double b, int n) { return {a, b, n, "linear", 1e-6}; }
GridSpec logarithmic(double a, double b, int n) { return {a, b, n, "log", 1e-6}; }

// Negative eigenvalues of the Hermitian part of M − Θ, counted by Eigen directly.
int oracle_gap_count(const CMatrix& m, const CMatrix& theta) {
    const CMatrix h = m - theta;
    Eigen::SelfAdjointEigenSolver<CMatrix> es((h + h.adjoint()) / 2.0);
    return static_cast<int>((es.eigenvalues().array() < 0.0).count());
}

// Sweeps shared by criteria 4, 5 and 6.
struct Sweep {
    std::string label;
    RunConfig cfg;
    ResultTable table;
};

std::vector<Sweep> birman_krein_sweeps() {
    std::mt19937_64 rng(4242);
    std::vector<Sweep> out;
    auto thetas = [&](Eigen::Index n) {
        std::vector<CMatrix> t;
        if (n == 1) {
            for (double v : {-2.0, -0.5, 0.0, 1.0, 3.0}) t.push_back(v * identity(1));
        } else {
            t.push_back(diag({1.0, -1.0}));
            t.push_back(diag({0.0, 2.0}));
            t.push_back(CMatrix::Zero(2, 2));
            for (int k = 0; k < 3; ++k) t.push_back(oracle::random_hermitian(rng, 2, 1.0));
        }
        return t;
    };
    for (const CMatrix& t : thetas(1)) out.push_back({"free", config(free_spec(1), t, linear(-10, 10, 100)), {}});
    for (const CMatrix& t : thetas(2)) out.push_back({"well", config(well_spec(2), t, linear(-10, 40, 100)), {}});
    for (const CMatrix& t : thetas(2)) out.push_back({"dirac", config(dirac_spec(), t, linear(-6, 6, 100)), {}});
    for (const CMatrix& t : thetas(2)) {
        out.push_back({"point", config(point_spec(2), t, linear(-10, 10, 100)), {}});
    }
    for (auto& s : out) s.table = cmd_ssf(s.cfg, 4);
    return out;
}

const std::vector<Sweep>& sweeps() {
    static const std::vector<Sweep> s = birman_krein_sweeps();
    return s;
}

Outcome criterion1() {
    Outcome o;
    const FreeHalfLineModel free(1);
    for (double theta : {-2.0, 0.0, 1.0, 5.0}) {
        for (const GridPoint& p : make_grid(logarithmic(0.01, 1e4, 50))) {
            const auto sp = scatter_at(free, BoundaryParameter::matrix(theta * identity(1)), p.lambda);
            o.check(std::abs(sp.s_reduced(0, 0) - oracle::free_s(theta, p.lambda)), 1e-12);
        }
    }
    return o;
}

Outcome criterion2() {
    Outcome o;
    for (Eigen::Index n : {1, 3}) {
        const FreeHalfLineModel free(n);
        const auto neumann = BoundaryParameter::matrix(CMatrix::Zero(n, n));
        const auto a0 = BoundaryParameter::kernel_pair(identity(n), CMatrix::Zero(n, n));
        for (const GridPoint& p : make_grid(logarithmic(0.01, 1e4, 50))) {
            o.check((scatter_at(free, neumann, p.lambda).s_full + identity(n)).cwiseAbs().maxCoeff(), 1e-12);
            if (!(scatter_at(free, a0, p.lambda).s_full == identity(n))) {
                o.pass = false;
                o.note = "A0 kernel pair did not give S = I exactly";
            }
        }
    }
    return o;
}

Outcome criterion3() {
    Outcome o;
    std::vector<CMatrix> thetas;
    for (double v : {-2.0, 0.0, 1.0}) thetas.push_back(v * identity(1));
    thetas.push_back(diag({-2.0, 0.0}));
    thetas.push_back(diag({0.0, 1.0}));
    thetas.push_back(diag({-2.0, 1.0}));
    for (const CMatrix& t : thetas) {
        const RunConfig c = config(free_spec(t.rows()), t, linear(-10, 10, 100));
        for (const ResultRow& row : cmd_ssf(c, 4).rows) {
            if (!row.xi) {
                o.pass = false;
                o.note = "singular row at " + format_double(row.point.lambda);
                continue;
            }
            const double l = row.point.lambda;
            std::vector<double> eigs;
            double ref = 0.0;
            for (Eigen::Index i = 0; i < t.rows(); ++i) {
                eigs.push_back(t(i, i).real());
                ref += oracle::scalar_xi(Complex(0.0, 1.0) * oracle::phys_sqrt(l), t(i, i).real());
            }
            o.check(std::abs(*row.xi - xi_closed_form_free(eigs, l)), 1e-8);
            o.check(std::abs(*row.xi - ref), 1e-8);
        }
    }
    return o;
}

Outcome criterion4() {
    Outcome o;
    std::size_t tested = 0, singular = 0;
    for (const Sweep& s : sweeps()) {
        for (const ResultRow& row : s.table.rows) {
            if (!row.bk_residual) {
                ++singular;
                continue;
            }
            ++tested;
            o.check(*row.bk_residual, 1e-8);
        }
    }
    o.note = std::to_string(sweeps().size()) + " sweeps, " + std::to_string(tested) + " points, " +
             std::to_string(singular) + " singular rows skipped";
    return o;
}

Outcome criterion5() {
    Outcome o;
    std::size_t tested = 0;
    for (const Sweep& s : sweeps()) {
        for (const ResultRow& row : s.table.rows) {
            if (row.regime != Regime::AC || row.scattering->cond >= 1e10) continue;
            const CMatrix& u = row.scattering->s_reduced;
            ++tested;
            o.check((u.adjoint() * u - identity(u.rows())).norm(), 1e-10);
        }
    }
    o.note = std::to_string(tested) + " AC points";
    return o;
}

Outcome criterion6() {
    Outcome o;
    std::size_t tested = 0;
    for (const Sweep& s : sweeps()) {
        const auto model = build_model(s.cfg.model);
        const CMatrix t = s.cfg.theta.operator_matrix();
        for (const ResultRow& row : s.table.rows) {
            const double l = row.point.lambda;
            const bool in_gap = s.label == "dirac" ? std::abs(l) < 1.0 : l < 0.0;
            if (!in_gap || !row.xi) continue;
            ++tested;
            const CMatrix m = eval_boundary(*model, l).value;
            o.check(std::abs(*row.xi - oracle_gap_count(m, t)), 1e-8);
            if (row.scattering->det_s != Complex(1.0, 0.0)) {
                o.pass = false;
                o.note = "det S ≠ 1 in a gap";
            }
        }
    }
    if (o.note.empty()) o.note = std::to_string(tested) + " gap points";
    return o;
}

Outcome criterion7() {
    Outcome o;
    const auto model = build_model(well_spec(2));
    const std::vector<double> ls{1e2, 1e3, 1e4};
    const auto dev = asymptotic_check(*model, ls);
    if (!(dev[0] > dev[1] && dev[1] > dev[2])) o.pass = false;
    o.check(dev[2], 0.2);
    const auto sp = scatter_at(*model, BoundaryParameter::matrix(diag({1.0, -1.0})), 1e4);
    const double s_dev = (sp.s_full + identity(2)).norm();
    o.check(s_dev, 0.2);
    o.note = "deviations " + format_double(dev[0]) + ", " + format_double(dev[1]) + ", " + format_double(dev[2]) +
             "; ‖S+I‖ = " + format_double(s_dev);
    return o;
}

Outcome criterion8() {
    Outcome o;
    const MatrixSchrodingerModel m(std::make_shared<ConstantWellPotential>(identity(1), 1.0));
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> re(1.1, 500.0);
    std::uniform_real_distribution<double> cre(-30.0, 30.0);
    std::uniform_real_distribution<double> cim(0.01, 30.0);
    for (int i = 0; i < 20; ++i) {
        const double l = re(rng);
        o.check(std::abs(m.evaluate(l)(0, 0) - oracle::well_channel_m(1.0, 1.0, l)), 1e-7);
        const Complex z(cre(rng), cim(rng));
        o.check(std::abs(m.evaluate(z)(0, 0) - oracle::well_channel_m(1.0, 1.0, z)), 1e-7);
    }
    return o;
}

Outcome criterion9() {
    Outcome o;
    std::mt19937_64 rng(909);
    const DiracModel dirac(1.0);
    for (int i = 0; i < 10; ++i) {
        const CMatrix t = oracle::random_hermitian(rng, 2, 1.5);
        const auto sp = scatter_at(dirac, BoundaryParameter::matrix(t), 1e8);
        o.check((dirac_theta_recovery(sp.s_full) - t).norm(), 1e-3);
    }
    return o;
}

Outcome criterion10() {
    Outcome o;
    const DiracModel dirac(1.0);
    for (auto [t1, t2] : {std::pair{1.0, 1.0}, {0.0, 0.0}, {-1.0, 2.0}}) {
        const RunConfig c = config(dirac_spec(), diag({t1, t2}), linear(-5, 5, 100));
        for (const ResultRow& row : cmd_ssf(c, 4).rows) {
            const double l = row.point.lambda;
            if (!row.xi) {
                o.pass = false;
                o.note = "singular row at " + format_double(l);
                continue;
            }
            const CMatrix m = oracle::dirac_m(1.0, l);
            const double ref = oracle::scalar_xi(m(0, 0), t1) + oracle::scalar_xi(m(1, 1), t2);
            o.check(std::abs(*row.xi - xi_closed_form_dirac(1.0, t1, t2, l)), 1e-8);
            o.check(std::abs(*row.xi - ref), 1e-8);
        }
    }
    return o;
}

Outcome criterion11() {
    Outcome o;
    const auto pi = build_model(point_spec(2));
    const FreeHalfLineModel free(2);
    for (const CMatrix& t : {identity(2), CMatrix(2.0 * identity(2)), diag({1.0, 3.0})}) {
        const auto theta = BoundaryParameter::matrix(t);
        const auto shifted = BoundaryParameter::matrix(t - identity(2));
        for (const GridPoint& p : make_grid(logarithmic(0.01, 1e3, 40))) {
            const double k = std::sqrt(p.lambda);
            const CMatrix ref = identity(2) + 2.0 * kI * k * (t - Complex(1.0, k) * identity(2)).inverse();
            o.check((scatter_at(*pi, theta, p.lambda).s_full - ref).cwiseAbs().maxCoeff(), 1e-10);
        }
        if (t == identity(2)) {
            o.check((scatter_at(*pi, theta, 3.0).s_full + identity(2)).cwiseAbs().maxCoeff(), 1e-10);
        }
        for (const GridPoint& p : make_grid(linear(-10, 10, 100), threshold_points(*pi, theta))) {
            const double a = xi(eval_boundary(*pi, p.lambda).value, theta);
            const double b = xi(eval_boundary(free, p.lambda).value, shifted);
            o.check(std::abs(a - b), 1e-8);
        }
    }
    return o;
}

Outcome criterion12() {
    Outcome o;
    std::mt19937_64 rng(1212);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const Eigen::Index n = 1 + i % 4;
        CMatrix t = oracle::random_hermitian(rng, n);
        if (i % 3 != 0) {
            // Hermitian plus i·(positive definite), in general not normal.
            CMatrix p = oracle::random_hermitian(rng, n, 0.6);
            t += kI * (p * p + u(rng) * identity(n));
        }
        const Complex det = t.determinant();
        const Complex via_log = std::exp(matlog_integral(t).trace());
        o.check(std::abs(det - via_log) / std::abs(det), 1e-9);
    }
    o.check(std::abs(matlog_integral(-identity(1))(0, 0) - Complex(0.0, std::numbers::pi)), 1e-9);
    o.check(std::abs(matlog_integral(kI * identity(1))(0, 0) - Complex(0.0, std::numbers::pi / 2)), 1e-9);
    return o;
}

Outcome criterion13() {
    Outcome o;
    const std::vector<std::pair<WeylFunctionPtr, CMatrix>> cases{
        {build_model(free_spec(2)), diag({1.0, -0.5})},
        {build_model(well_spec(2)), diag({1.0, -1.0})},
        {build_model(dirac_spec()), diag({1.0, -1.0})},
        {build_model(point_spec(2)), diag({2.0, 0.0})},
    };
    std::mt19937_64 rng(1313);
    std::uniform_real_distribution<double> re(-5.0, 5.0);
    std::uniform_real_distribution<double> im(0.5, 3.0);
    for (const auto& [model, t] : cases) {
        for (int i = 0; i < 20; ++i) {
            const Complex z(re(rng), im(rng));
            const auto r = trace_formula_check(*model, BoundaryParameter::matrix(t), z);
            o.check(r.residual / std::max(1.0, std::abs(r.rhs)), 1e-5);
        }
    }
    return o;
}

struct Criterion {
    int id;
    const char* title;
    double time_limit;  // seconds; ≤ 0 for none
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> all{
        {1, "free scalar S-matrix", 1.0, criterion1},
        {2, "Neumann and A0 parameters", 0.0, criterion2},
        {3, "free spectral shift closed forms", 10.0, criterion3},
        {4, "Birman-Krein across four model families", 60.0, criterion4},
        {5, "unitarity of S on H_lambda", 0.0, criterion5},
        {6, "gap integrality", 0.0, criterion6},
        {7, "Jost high-energy asymptotics", 30.0, criterion7},
        {8, "Jost path against the constant-well oracle", 0.0, criterion8},
        {9, "Dirac Theta recovery at 1e8", 0.0, criterion9},
        {10, "Dirac spectral shift closed form", 0.0, criterion10},
        {11, "point interaction S and xi", 0.0, criterion11},
        {12, "matrix logarithm consistency", 0.0, criterion12},
        {13, "trace formula identity", 0.0, criterion13},
    };
    int failures = 0;
    for (const Criterion& c : all) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0.0 && secs > c.time_limit) {
            o.pass = false;
            o.note += (o.note.empty() ? "" : "; ") + std::string("over time limit");
        }
        if (!o.pass) ++failures;
        std::printf("criterion %2d %s  %-44s max_residual=%.3e time=%.3fs%s%s\n", c.id, o.pass ? "PASS" : "FAIL",
                    c.title, o.worst, secs, o.note.empty() ? "" : "  ", o.note.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failures, all.size());
    return failures;
}
