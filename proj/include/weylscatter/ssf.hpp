#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "weylscatter/cxlinalg.hpp"
#include "weylscatter/relation.hpp"
#include "weylscatter/scattering.hpp"
#include "weylscatter/weyl.hpp"

namespace weylscatter {

enum class Regime { AC, Gap, Singular };

std::string_view to_string(Regime regime);

/// Gap when ‖Im M‖ ≤ 1e-10·max(1,‖M‖), AC otherwise.
Regime classify_regime(const CMatrix& m_boundary);

struct SsfPoint {
    double lambda = 0.0;
    double xi = 0.0;
    double bk_residual = 0.0;  // |det S − exp(−2πiξ)|
    Regime regime = Regime::AC;
};

/// ξ_Θ(λ) = (1/π)·Im tr log(M(λ+i0) − Θ) with the integral logarithm.
/// Θ must be an operator (NotOperator otherwise).
double xi(const CMatrix& m_boundary, const BoundaryParameter& theta, const QuadratureConfig& quad = {});

/// |det S − exp(−2πi·ξ)|.
double birman_krein_residual(const ScatteringPoint& sp, double xi_value);

/// Sum over the eigenvalues θ of Θ of the free half-line spectral shift
///   θ > 0:  1 − χ_[0,∞)(λ)·arctan(√|λ|/θ)/π
///   θ = 0:  1 − χ_[0,∞)(λ)/2
///   θ < 0:  χ_(−∞,−θ²)(λ) − χ_[0,∞)(λ)·arctan(√|λ|/θ)/π
/// Throws ThresholdPoint at λ = 0 and at λ = −θ² for θ < 0.
double xi_closed_form_free(std::span<const double> theta_eigs, double lambda);

/// Points where the Dirac spectral shift for Θ = diag(θ₁, θ₂) jumps: ±a and
///   ϑ₁ = a(θ₁² − 1)/(θ₁² + 1),  ϑ₂ = a(1 − θ₂²)/(1 + θ₂²).
std::vector<double> dirac_thresholds(double a, double theta1, double theta2);

/// Closed form of ξ for the Dirac model with Θ = diag(θ₁, θ₂). On |λ| > a each
/// channel contributes the arctan term of the free formula with
/// s₁ = √|(λ+a)/(λ−a)| and s₂ = 1/s₁ in place of √λ; on (−a, a) channel 1
/// contributes χ_(−a,ϑ₁) when θ₁ > 0 (else 0) and channel 2 contributes 1 when
/// θ₂ ≥ 0 (else χ_(−a,ϑ₂)). Throws ThresholdPoint at the dirac_thresholds.
double xi_closed_form_dirac(double a, double theta1, double theta2, double lambda);

/// Number of negative eigenvalues of the Hermitian matrix M − Θ in a gap.
/// Throws SingularArgument if M − Θ has an eigenvalue within 1e-12·max(1,‖M−Θ‖) of 0.
int gap_count(const CMatrix& m_boundary, const BoundaryParameter& theta);

struct TraceFormulaResult {
    Complex lhs;  // central difference of tr log(M(·) − Θ)
    Complex rhs;  // tr((M(λ) − Θ)⁻¹ M′(λ))
    double residual = 0.0;
    double tolerance = 0.0;  // 1e-5·max(1, |rhs|)
    bool pass() const { return residual <= tolerance; }
};

struct TraceFormulaOptions {
    double h = 0.0;  // ≤ 0 selects 1e-4·max(1,|λ|)
    QuadratureConfig quad{1e-12, 1e12, 40000};
};

/// Compares d/dλ tr log(M(λ) − Θ) against tr((M(λ) − Θ)⁻¹ M′(λ)) at Im λ > 0.
TraceFormulaResult trace_formula_check(const WeylFunction& model, const BoundaryParameter& theta, Complex lambda,
                                       const TraceFormulaOptions& opts = {});

struct SsfEvaluation {
    ScatteringPoint scattering;
    SsfPoint ssf;
};

/// S, ξ and the Birman-Krein residual at a real point of a model.
SsfEvaluation ssf_at(const WeylFunction& model, const BoundaryParameter& theta, double lambda,
                     const QuadratureConfig& quad = {}, const ScatteringOptions& opts = {});

}  // namespace weylscatter
