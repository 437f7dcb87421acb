#include "weylscatter/scattering.hpp"

#include <cmath>

#include "weylscatter/error.hpp"

namespace weylscatter {

CMatrix im_boundary(const CMatrix& m) { return imag_part(m); }

RangeProjection range_projection(const CMatrix& im_m, double rank_tol) {
    const HermitianEigen eig = herm_eig(im_m, 1e-10);
    const double scale = scale_of(im_m);
    const double cut = rank_tol * scale;
    const Eigen::Index n = im_m.rows();
    Eigen::Index first = n;
    RangeProjection out;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double w = eig.eigenvalues(i);
        if (w > 1e-14 * scale && w < 1e-8 * scale) out.rank_ambiguous = true;
        if (w > cut && first == n) first = i;
    }
    out.rank = n - first;
    out.basis = eig.eigenvectors.rightCols(out.rank);
    out.eigenvalues = eig.eigenvalues.tail(out.rank);
    return out;
}

ScatteringPoint smatrix(const CMatrix& m, const BoundaryParameter& theta, const ScatteringOptions& opts) {
    const Eigen::Index n = m.rows();
    const RangeProjection range = range_projection(im_boundary(m), opts.rank_tol);
    const ResolventValue res = relation_resolvent(theta, m, opts.cond_cap);

    ScatteringPoint sp;
    sp.rank = range.rank;
    sp.cond = res.cond;
    sp.rank_ambiguous = range.rank_ambiguous;
    // √(Im M) restricted to H_λ: eigenvalues below the rank cut are treated as zero.
    const CMatrix root = range.basis * range.eigenvalues.cwiseSqrt().asDiagonal() * range.basis.adjoint();
    sp.s_full = identity(n) + 2.0 * kI * root * res.value * root;
    sp.s_reduced = range.basis.adjoint() * sp.s_full * range.basis;
    sp.det_s = sp.rank == 0 ? Complex(1.0, 0.0) : sp.s_reduced.determinant();
    return sp;
}

ScatteringPoint scatter_at(const WeylFunction& model, const BoundaryParameter& theta, double lambda,
                           const ScatteringOptions& opts) {
    ScatteringPoint sp = smatrix(eval_boundary(model, lambda).value, theta, opts);
    sp.lambda = lambda;
    return sp;
}

CMatrix smatrix_scalar_type(Complex m, const BoundaryParameter& theta, Eigen::Index n) {
    if (m.imag() == 0.0) throw Error(ErrorKind::ImZero, "Im m(λ) = 0: H_λ is trivial");
    const CMatrix t = theta.operator_matrix();
    if (t.rows() != n) throw Error(ErrorKind::InvalidArgument, "Θ has the wrong dimension");
    CMatrix num = t;
    num.diagonal().array() -= std::conj(m);
    CMatrix den = t;
    den.diagonal().array() -= m;
    // num · den⁻¹ = (den⁻ᵀ numᵀ)ᵀ; num and den commute here, so den⁻¹·num gives the same matrix.
    return den.partialPivLu().solve(num);
}

CMatrix smatrix_factorized(const CMatrix& m_plus, const BoundaryParameter& theta, double cond_cap) {
    const CMatrix t = theta.operator_matrix();
    const CMatrix den = t - m_plus;
    const double cond = condition_number(den);
    if (!(cond <= cond_cap)) throw Error(ErrorKind::SpectralPoint, "Θ − M(λ+i0) is not invertible", cond);
    const CMatrix num = t - m_plus.adjoint();
    return den.transpose().partialPivLu().solve(num.transpose()).transpose();
}

CMatrix dirac_theta_recovery(const CMatrix& s_inf) {
    const Eigen::Index n = s_inf.rows();
    const CMatrix minus = s_inf - identity(n);
    const double smin = min_singular_value(minus);
    if (smin < 1e-10) throw Error(ErrorKind::NonInvertible, "S(∞) − I is singular", smin);
    const CMatrix plus = s_inf + identity(n);
    return kI * minus.transpose().partialPivLu().solve(plus.transpose()).transpose();
}

}  // namespace weylscatter
