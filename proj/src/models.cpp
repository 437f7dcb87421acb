#include "weylscatter/models.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "weylscatter/error.hpp"

namespace weylscatter {

CMatrix free_m(Eigen::Index n, Complex lambda) {
    if (lambda.imag() < 0.0) throw Error(ErrorKind::EvaluationDomain, "free_m needs Im λ ≥ 0", lambda.imag());
    return kI * branch_sqrt(lambda) * identity(n);
}

CMatrix dirac_m(double a, Complex lambda) {
    if (lambda.imag() < 0.0) throw Error(ErrorKind::EvaluationDomain, "dirac_m needs Im λ ≥ 0", lambda.imag());
    if (lambda.imag() == 0.0 && std::abs(std::abs(lambda.real()) - a) <= 1e-14 * a) {
        throw Error(ErrorKind::BandEdge, "Dirac Weyl function has no boundary value at ±a", lambda.real());
    }
    const Complex plus = branch_sqrt(lambda + a);
    const Complex minus = branch_sqrt(lambda - a);
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = kI * plus / minus;
    m(1, 1) = kI * minus / plus;
    return m;
}

FreeHalfLineModel::FreeHalfLineModel(Eigen::Index n) : n_(n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "free model needs n ≥ 1");
}

DiracModel::DiracModel(double mass) : a_(mass) {
    if (!(mass > 0.0)) throw Error(ErrorKind::InvalidArgument, "Dirac mass must be positive", mass);
}

// ---------------------------------------------------------------------------
// Jost solution

namespace {

// Dormand–Prince 5(4) tableau.
constexpr std::array<double, 7> kC{0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192, kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920, kE5 = -17253.0 / 339200,
                 kE6 = 22.0 / 525, kE7 = -1.0 / 40;

// y = [E; E′] stacked as a 2n×n block; y′ = [E′; (Q − λ)E].
class JostRhs {
public:
    JostRhs(const Potential& q, Complex lambda) : q_(q), lambda_(lambda), n_(q.dim()) {}

    CMatrix operator()(double x, const CMatrix& y) const {
        CMatrix out(2 * n_, n_);
        out.topRows(n_) = y.bottomRows(n_);
        CMatrix shifted = q_.at(x);
        shifted.diagonal().array() -= lambda_;
        out.bottomRows(n_) = shifted * y.topRows(n_);
        return out;
    }

private:
    const Potential& q_;
    Complex lambda_;
    Eigen::Index n_;
};

double error_norm(const CMatrix& err, const CMatrix& y0, const CMatrix& y1, double tol) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < err.cols(); ++j) {
        for (Eigen::Index i = 0; i < err.rows(); ++i) {
            const double sc = tol + tol * std::max(std::abs(y0(i, j)), std::abs(y1(i, j)));
            const double r = std::abs(err(i, j)) / sc;
            acc += r * r;
        }
    }
    return std::sqrt(acc / static_cast<double>(err.size()));
}

// Integrates y from x0 down to x1 < x0 with adaptive step control.
void integrate_segment(const JostRhs& f, double x0, double x1, CMatrix& y, double tol, double h_hint,
                       std::size_t& steps) {
    constexpr std::size_t kMaxSteps = 5'000'000;
    // Q is sampled from inside the segment so a jump at x0 is seen from the left.
    const double top = std::nextafter(x0, x1);
    const auto rhs = [&](double x, const CMatrix& state) { return f(std::min(x, top), state); };
    double x = x0;
    double h = -std::min(h_hint, x0 - x1);
    CMatrix k1 = rhs(x, y);
    while (x > x1) {
        if (x + h < x1) h = x1 - x;
        const CMatrix k2 = rhs(x + kC[1] * h, y + h * (kA21 * k1));
        const CMatrix k3 = rhs(x + kC[2] * h, y + h * (kA31 * k1 + kA32 * k2));
        const CMatrix k4 = rhs(x + kC[3] * h, y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
        const CMatrix k5 = rhs(x + kC[4] * h, y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
        const CMatrix k6 = rhs(x + h, y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
        CMatrix y_new = y + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
        const CMatrix k7 = rhs(x + h, y_new);
        const CMatrix err = h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);
        const double e = error_norm(err, y, y_new, tol);
        if (e <= 1.0) {
            x = (x + h < x1 + 1e-15 * std::max(1.0, std::abs(x1))) ? x1 : x + h;
            y = std::move(y_new);
            k1 = k7;
            ++steps;
        }
        const double factor = e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
        h *= factor;
        if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(x))) {
            throw Error(ErrorKind::StepFailure, "Jost integrator step size underflow", x);
        }
        if (steps > kMaxSteps) throw Error(ErrorKind::StepFailure, "Jost integrator exceeded step budget", x);
    }
}

}  // namespace

MatrixSchrodingerModel::MatrixSchrodingerModel(PotentialPtr potential, double x_max, double ode_tol)
    : potential_(std::move(potential)), x_max_(x_max), ode_tol_(ode_tol) {
    if (!potential_) throw Error(ErrorKind::InvalidArgument, "Schrödinger model needs a potential");
    if (!(ode_tol_ > 0.0)) throw Error(ErrorKind::InvalidArgument, "ode_tol must be positive", ode_tol_);
    if (x_max_ <= 0.0) {
        const double support = potential_->support_end();
        if (std::isfinite(support)) {
            x_max_ = support;
        } else {
            x_max_ = 1.0;
            while (potential_->tail_estimate(x_max_) > ode_tol_ && x_max_ < 1e6) x_max_ *= 1.25;
        }
    }
    const double tail = potential_->tail_estimate(x_max_);
    if (tail > ode_tol_) {
        throw Error(ErrorKind::TruncationWarning, "potential tail beyond x_max exceeds ode_tol", tail);
    }
    constexpr int kProbe = 64;
    for (int i = 0; i <= kProbe; ++i) {
        const double x = x_max_ * i / kProbe;
        if (!is_hermitian(potential_->at(x), 1e-12)) {
            throw Error(ErrorKind::NotHermitian, "potential is not Hermitian", x);
        }
    }
}

JostSolution MatrixSchrodingerModel::integrate_unscaled(Complex lambda) const {
    if (lambda.imag() < 0.0) throw Error(ErrorKind::EvaluationDomain, "Jost solution needs Im λ ≥ 0", lambda.imag());
    if (lambda == Complex(0.0, 0.0)) throw Error(ErrorKind::EvaluationDomain, "Jost solution is not evaluated at λ = 0");
    const Eigen::Index n = dim();
    const Complex k = branch_sqrt(lambda);

    CMatrix y(2 * n, n);
    y.topRows(n) = identity(n);
    y.bottomRows(n) = kI * k * identity(n);

    std::vector<double> knots{x_max_, 0.0};
    for (double b : potential_->breakpoints()) {
        if (b > 0.0 && b < x_max_) knots.push_back(b);
    }
    std::sort(knots.begin(), knots.end(), std::greater<>());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    const JostRhs rhs(*potential_, lambda);
    const double tol = 0.1 * ode_tol_;
    const double h_hint = 0.1 / std::max(1.0, std::abs(k));
    JostSolution out;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        integrate_segment(rhs, knots[i], knots[i + 1], y, tol, h_hint, out.steps);
    }
    out.e0 = y.topRows(n);
    out.e0_prime = y.bottomRows(n);
    return out;
}

JostSolution MatrixSchrodingerModel::jost(Complex lambda) const {
    JostSolution out = integrate_unscaled(lambda);
    const Complex phase = std::exp(kI * branch_sqrt(lambda) * x_max_);
    out.e0 *= phase;
    out.e0_prime *= phase;
    return out;
}

CMatrix MatrixSchrodingerModel::evaluate(Complex lambda) const {
    const JostSolution sol = integrate_unscaled(lambda);
    // Relative to the whole Cauchy data, so a scalar E(0,λ) can be singular too.
    CMatrix data(2 * dim(), dim());
    data << sol.e0, sol.e0_prime;
    const double cond = data.norm() / min_singular_value(sol.e0);
    if (!(cond <= 1e12)) throw Error(ErrorKind::SingularJost, "E(0,λ) is singular: pole of M", cond);
    // M = E′ E⁻¹  ⇔  Mᵀ = E⁻ᵀ E′ᵀ
    return sol.e0.transpose().partialPivLu().solve(sol.e0_prime.transpose()).transpose();
}

JostSolution jost_solution(const MatrixSchrodingerModel& model, Complex lambda) { return model.jost(lambda); }

CMatrix schrodinger_m(const MatrixSchrodingerModel& model, Complex lambda) { return model.evaluate(lambda); }

PointInteractionModel::PointInteractionModel(WeylFunctionPtr inner) : inner_(std::move(inner)) {
    if (!inner_) throw Error(ErrorKind::InvalidArgument, "point interaction needs an inner model");
}

CMatrix PointInteractionModel::evaluate(Complex lambda) const { return point_interaction_m(*inner_, lambda); }

CMatrix point_interaction_m(const WeylFunction& inner, Complex lambda) {
    return identity(inner.dim()) + inner.evaluate(lambda);
}

std::vector<double> asymptotic_check(const WeylFunction& model, std::span<const double> lambdas) {
    if (dynamic_cast<const FreeHalfLineModel*>(&model) == nullptr &&
        dynamic_cast<const MatrixSchrodingerModel*>(&model) == nullptr) {
        throw Error(ErrorKind::WrongModelKind, "asymptotic check applies to half-line Schrödinger models, not " +
                                                   model.kind());
    }
    std::vector<double> out;
    out.reserve(lambdas.size());
    double prev = 0.0;
    for (double lambda : lambdas) {
        if (!(lambda > 0.0) || (!out.empty() && !(lambda > prev))) {
            throw Error(ErrorKind::InvalidArgument, "asymptotic check needs positive ascending λ", lambda);
        }
        prev = lambda;
        const CMatrix m = model.evaluate({lambda, 0.0});
        out.push_back((m - free_m(model.dim(), lambda)).norm());
    }
    return out;
}

}  // namespace weylscatter
