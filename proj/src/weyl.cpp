#include "weylscatter/weyl.hpp"

#include <cmath>
#include <limits>

#include "weylscatter/error.hpp"

namespace weylscatter {

Complex branch_sqrt(Complex z) {
    if (z.imag() == 0.0 && z.real() >= 0.0) return {std::sqrt(z.real()), 0.0};
    if (z.imag() == 0.0) return {0.0, std::sqrt(-z.real())};
    Complex r = std::sqrt(z);
    if (r.imag() < 0.0) r = -r;
    return r;
}

CMatrix eval_upper(const WeylFunction& model, Complex lambda) {
    if (!(lambda.imag() > 0.0)) {
        throw Error(ErrorKind::EvaluationDomain, "eval_upper needs Im λ > 0", lambda.imag());
    }
    return model.evaluate(lambda);
}

namespace {

void check_singular_points(const SingularSet& set, double lambda) {
    for (double p : set.points) {
        if (std::abs(lambda - p) <= 1e-12 * std::max(1.0, std::abs(p))) {
            throw Error(ErrorKind::SingularPoint, "boundary value requested at a declared singular point", lambda);
        }
    }
}

// Richardson extrapolation of M(λ + iε) for ε = ε₀, ε₀/2, ε₀/4 assuming a
// Taylor expansion in ε.
BoundaryValue epsilon_limit(const WeylFunction& model, double lambda) {
    const double eps0 = model.epsilon0();
    const CMatrix m1 = model.evaluate({lambda, eps0});
    const CMatrix m2 = model.evaluate({lambda, eps0 / 2});
    const CMatrix m4 = model.evaluate({lambda, eps0 / 4});
    const CMatrix r1 = 2.0 * m2 - m1;
    const CMatrix r2 = 2.0 * m4 - m2;
    BoundaryValue out;
    out.value = (4.0 * r2 - r1) / 3.0;
    out.error_estimate = (out.value - r2).norm();
    out.extrapolated = true;
    if (out.error_estimate > 1e-6 * scale_of(out.value)) {
        throw Error(ErrorKind::BoundaryLimitFailed, "ε-extrapolation did not settle", out.error_estimate);
    }
    return out;
}

}  // namespace

BoundaryValue eval_boundary(const WeylFunction& model, double lambda, BoundaryMode mode) {
    const SingularSet set = model.singular_set();
    check_singular_points(set, lambda);
    if (mode == BoundaryMode::EpsilonLimit) return epsilon_limit(model, lambda);
    return BoundaryValue{model.evaluate({lambda, 0.0}), 0.0, false};
}

BoundaryValue eval_boundary(const WeylFunction& model, double lambda) {
    BoundaryMode mode = model.boundary_mode();
    for (const Interval& iv : model.singular_set().epsilon_intervals) {
        if (iv.contains(lambda)) mode = BoundaryMode::EpsilonLimit;
    }
    return eval_boundary(model, lambda, mode);
}

double default_derivative_step(Complex lambda) { return 1e-5 * std::max(1.0, std::abs(lambda)); }

CMatrix derivative(const WeylFunction& model, Complex lambda, double h) {
    if (!(h > 0.0) || !(lambda.imag() > 2.0 * h)) {
        throw Error(ErrorKind::EvaluationDomain, "derivative needs h > 0 and Im λ > 2h", lambda.imag());
    }
    const CMatrix plus = model.evaluate(lambda + h);
    const CMatrix minus = model.evaluate(lambda - h);
    return (plus - minus) / (2.0 * h);
}

CMatrix derivative(const WeylFunction& model, Complex lambda) {
    return derivative(model, lambda, default_derivative_step(lambda));
}

NevanlinnaReport validate_nevanlinna(const WeylFunction& model, std::span<const Complex> grid) {
    NevanlinnaReport report;
    report.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (const Complex& lambda : grid) {
        ++report.points_tested;
        if (!(lambda.imag() > 0.0)) {
            report.violations.push_back({lambda, 0.0, "sample point not in the open upper half plane"});
            continue;
        }
        CMatrix m;
        try {
            m = model.evaluate(lambda);
        } catch (const Error& e) {
            report.violations.push_back({lambda, 0.0, e.what()});
            continue;
        }
        const double w = herm_eig(imag_part(m)).eigenvalues(0);
        report.min_eigenvalue = std::min(report.min_eigenvalue, w);
        if (!(w > 0.0)) report.violations.push_back({lambda, w, "Im M(λ) is not positive definite"});
    }
    return report;
}

}  // namespace weylscatter
