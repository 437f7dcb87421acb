#pragma once

#include <optional>

#include "weylscatter/relation.hpp"
#include "weylscatter/weyl.hpp"

namespace weylscatter {

struct ScatteringOptions {
    double rank_tol = 1e-10;   // relative to max(1, ‖Im M‖)
    double cond_cap = 1e12;    // larger condition numbers of Θ − M raise SpectralPoint
};

/// S_Θ(λ) of the pair {A_Θ, A₀} on the fiber H_λ = ran Im M(λ+i0).
struct ScatteringPoint {
    double lambda = 0.0;
    Eigen::Index rank = 0;
    CMatrix s_full;      // n×n, identity on ker Im M
    CMatrix s_reduced;   // rank×rank in the eigenbasis of Im M
    Complex det_s{1.0, 0.0};
    double cond = 1.0;
    bool rank_ambiguous = false;  // an eigenvalue of Im M sits in the undecided band
};

/// (M − M*)/(2i).
CMatrix im_boundary(const CMatrix& m);

struct RangeProjection {
    Eigen::Index rank = 0;
    CMatrix basis;               // n×rank isometry onto the range
    RVector eigenvalues;         // retained eigenvalues, ascending
    bool rank_ambiguous = false;
};

/// Orthonormal eigenvectors of Im M whose eigenvalues exceed rank_tol·max(1,‖Im M‖).
RangeProjection range_projection(const CMatrix& im_m, double rank_tol = 1e-10);

/// S = I + 2i·√(Im M)·(Θ − M)⁻¹·√(Im M), with the square root taken on the
/// retained range of Im M. det S = 1 when the range is trivial.
ScatteringPoint smatrix(const CMatrix& m, const BoundaryParameter& theta, const ScatteringOptions& opts = {});

/// S at a real point of a model; λ is recorded in the result.
ScatteringPoint scatter_at(const WeylFunction& model, const BoundaryParameter& theta, double lambda,
                           const ScatteringOptions& opts = {});

/// Scalar-type Weyl function M = m·I: S = (Θ − m̄)(Θ − m)⁻¹. Throws ImZero when Im m = 0.
CMatrix smatrix_scalar_type(Complex m, const BoundaryParameter& theta, Eigen::Index n);

/// (Θ − M*)(Θ − M)⁻¹ for the matrix form of Θ; similar to S_full when Im M is invertible.
CMatrix smatrix_factorized(const CMatrix& m_plus, const BoundaryParameter& theta, double cond_cap = 1e12);

/// Θ = i(S∞ + I)(S∞ − I)⁻¹. Throws NonInvertible if σ_min(S∞ − I) < 1e-10.
CMatrix dirac_theta_recovery(const CMatrix& s_inf);

}  // namespace weylscatter
