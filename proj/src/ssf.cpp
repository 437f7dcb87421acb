#include "weylscatter/ssf.hpp"

#include <cmath>
#include <numbers>

#include "weylscatter/error.hpp"

namespace weylscatter {

using std::numbers::pi;

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::AC: return "AC";
        case Regime::Gap: return "Gap";
        case Regime::Singular: return "Singular";
    }
    return "Singular";
}

Regime classify_regime(const CMatrix& m_boundary) {
    return im_boundary(m_boundary).norm() <= 1e-10 * scale_of(m_boundary) ? Regime::Gap : Regime::AC;
}

double xi(const CMatrix& m_boundary, const BoundaryParameter& theta, const QuadratureConfig& quad) {
    if (!theta.is_operator()) throw Error(ErrorKind::NotOperator, "ξ needs an operator-valued Θ");
    const CMatrix arg = m_boundary - theta.operator_matrix();
    return matlog_integral(arg, quad).trace().imag() / pi;
}

double birman_krein_residual(const ScatteringPoint& sp, double xi_value) {
    return std::abs(sp.det_s - std::exp(Complex(0.0, -2.0 * pi * xi_value)));
}

namespace {

bool near(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y)); }

// One channel with coupling θ and Im-part s > 0 of a purely imaginary boundary value i·s.
double arctan_channel(double theta, double s) {
    if (theta > 0.0) return 1.0 - std::atan(s / theta) / pi;
    if (theta == 0.0) return 0.5;
    return -std::atan(s / theta) / pi;
}

}  // namespace

double xi_closed_form_free(std::span<const double> theta_eigs, double lambda) {
    if (near(lambda, 0.0)) throw Error(ErrorKind::ThresholdPoint, "ξ is not defined at λ = 0", lambda);
    double total = 0.0;
    for (double theta : theta_eigs) {
        if (lambda > 0.0) {
            total += arctan_channel(theta, std::sqrt(lambda));
        } else if (theta >= 0.0) {
            total += 1.0;
        } else {
            const double edge = -theta * theta;
            if (near(lambda, edge)) throw Error(ErrorKind::ThresholdPoint, "λ = −θ² is a bound state", lambda);
            total += lambda < edge ? 1.0 : 0.0;
        }
    }
    return total;
}

std::vector<double> dirac_thresholds(double a, double theta1, double theta2) {
    const double t1 = theta1 * theta1;
    const double t2 = theta2 * theta2;
    return {-a, a, a * (t1 - 1.0) / (t1 + 1.0), a * (1.0 - t2) / (1.0 + t2)};
}

double xi_closed_form_dirac(double a, double theta1, double theta2, double lambda) {
    const auto thresholds = dirac_thresholds(a, theta1, theta2);
    for (double p : thresholds) {
        if (near(lambda, p)) throw Error(ErrorKind::ThresholdPoint, "λ is a Dirac threshold", lambda);
    }
    const double vartheta1 = thresholds[2];
    const double vartheta2 = thresholds[3];
    if (std::abs(lambda) > a) {
        const double s1 = std::sqrt(std::abs((lambda + a) / (lambda - a)));
        return arctan_channel(theta1, s1) + arctan_channel(theta2, 1.0 / s1);
    }
    // Gap: M(λ) = diag(√((a+λ)/(a−λ)), −√((a−λ)/(a+λ))), so each channel counts
    // whether m_j(λ) − θ_j < 0.
    const double channel1 = theta1 > 0.0 && lambda < vartheta1 ? 1.0 : 0.0;
    const double channel2 = theta2 >= 0.0 ? 1.0 : (lambda < vartheta2 ? 1.0 : 0.0);
    return channel1 + channel2;
}

int gap_count(const CMatrix& m_boundary, const BoundaryParameter& theta) {
    const CMatrix arg = hermitian_part(m_boundary - theta.operator_matrix());
    const RVector w = herm_eig(arg, 1e-8).eigenvalues;
    const double floor = 1e-12 * scale_of(arg);
    int count = 0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (std::abs(w(i)) <= floor) throw Error(ErrorKind::SingularArgument, "M − Θ is singular", w(i));
        if (w(i) < 0.0) ++count;
    }
    return count;
}

TraceFormulaResult trace_formula_check(const WeylFunction& model, const BoundaryParameter& theta, Complex lambda,
                                       const TraceFormulaOptions& opts) {
    const double h = opts.h > 0.0 ? opts.h : 1e-4 * std::max(1.0, std::abs(lambda));
    const CMatrix t = theta.operator_matrix();
    auto tr_log = [&](Complex z) { return matlog_integral(model.evaluate(z) - t, opts.quad).trace(); };

    TraceFormulaResult out;
    out.lhs = (tr_log(lambda + h) - tr_log(lambda - h)) / (2.0 * h);
    const CMatrix arg = eval_upper(model, lambda) - t;
    out.rhs = arg.partialPivLu().solve(derivative(model, lambda, h)).trace();
    out.residual = std::abs(out.lhs - out.rhs);
    out.tolerance = 1e-5 * std::max(1.0, std::abs(out.rhs));
    return out;
}

SsfEvaluation ssf_at(const WeylFunction& model, const BoundaryParameter& theta, double lambda,
                     const QuadratureConfig& quad, const ScatteringOptions& opts) {
    const CMatrix m = eval_boundary(model, lambda).value;
    SsfEvaluation out;
    out.scattering = smatrix(m, theta, opts);
    out.scattering.lambda = lambda;
    out.ssf.lambda = lambda;
    out.ssf.regime = classify_regime(m);
    out.ssf.xi = xi(m, theta, quad);
    out.ssf.bk_residual = birman_krein_residual(out.scattering, out.ssf.xi);
    return out;
}

}  // namespace weylscatter
