#include "weylscatter/relation.hpp"

#include "weylscatter/error.hpp"

namespace weylscatter {

BoundaryParameter BoundaryParameter::matrix(CMatrix t) {
    if (t.rows() == 0 || t.rows() != t.cols()) {
        throw Error(ErrorKind::InvalidArgument, "boundary parameter matrix must be square and non-empty");
    }
    return BoundaryParameter(MatrixForm{std::move(t)});
}

BoundaryParameter BoundaryParameter::kernel_pair(CMatrix a, CMatrix b) {
    if (a.rows() == 0 || a.rows() != a.cols() || b.rows() != a.rows() || b.cols() != a.cols()) {
        throw Error(ErrorKind::InvalidArgument, "kernel pair needs two square matrices of equal size");
    }
    return BoundaryParameter(KernelPairForm{std::move(a), std::move(b)});
}

Eigen::Index BoundaryParameter::dim() const {
    if (const auto* m = as_matrix_form()) return m->t.rows();
    return as_kernel_pair()->a.rows();
}

bool BoundaryParameter::is_operator() const {
    if (is_matrix()) return true;
    const CMatrix& b = as_kernel_pair()->b;
    return min_singular_value(b) > 1e-12 * scale_of(b);
}

CMatrix BoundaryParameter::operator_matrix() const {
    if (const auto* m = as_matrix_form()) return m->t;
    if (!is_operator()) throw Error(ErrorKind::NotOperator, "kernel pair with singular B is not an operator");
    const auto* kp = as_kernel_pair();
    return kp->b.partialPivLu().solve(kp->a);
}

BoundaryParameter::KernelPairForm BoundaryParameter::to_kernel_pair() const {
    if (const auto* m = as_matrix_form()) return {m->t, identity(m->t.rows())};
    return *as_kernel_pair();
}

bool BoundaryParameter::operator==(const BoundaryParameter& other) const {
    if (form_.index() != other.form_.index()) return false;
    if (const auto* m = as_matrix_form()) return m->t == other.as_matrix_form()->t;
    const auto* x = as_kernel_pair();
    const auto* y = other.as_kernel_pair();
    return x->a == y->a && x->b == y->b;
}

ResolventValue relation_resolvent(const BoundaryParameter& theta, const CMatrix& m, double cond_cap) {
    if (m.rows() != theta.dim() || m.cols() != theta.dim()) {
        throw Error(ErrorKind::InvalidArgument, "boundary parameter and Weyl function dimensions differ");
    }
    CMatrix lhs;
    CMatrix rhs;
    if (const auto* mf = theta.as_matrix_form()) {
        lhs = mf->t - m;
        rhs = identity(m.rows());
    } else {
        const auto* kp = theta.as_kernel_pair();
        lhs = kp->a - kp->b * m;
        rhs = kp->b;
    }
    ResolventValue out;
    out.cond = condition_number(lhs);
    if (!(out.cond <= cond_cap)) {
        throw Error(ErrorKind::SpectralPoint, "Θ − M(λ) is not boundedly invertible", out.cond);
    }
    out.value = lhs.partialPivLu().solve(rhs);
    return out;
}

SelfadjointReport check_selfadjoint(const BoundaryParameter& theta, double tol) {
    SelfadjointReport report;
    const Eigen::Index n = theta.dim();
    if (const auto* mf = theta.as_matrix_form()) {
        report.hermitian_defect = (mf->t - mf->t.adjoint()).norm();
        report.rank = n;
        if (report.hermitian_defect > tol * scale_of(mf->t)) {
            report.violations.push_back("T is not Hermitian");
        }
        return report;
    }
    const auto* kp = theta.as_kernel_pair();
    const CMatrix cross = kp->a * kp->b.adjoint();
    report.hermitian_defect = (cross - cross.adjoint()).norm();
    CMatrix block(n, 2 * n);
    block << kp->a, kp->b;
    Eigen::JacobiSVD<CMatrix> svd(block);
    const auto& s = svd.singularValues();
    const double cut = tol * std::max(1.0, s(0));
    report.rank = (s.array() > cut).count();
    if (report.hermitian_defect > tol * std::max(1.0, block.squaredNorm())) {
        report.violations.push_back("AB* − BA* ≠ 0: relation is not symmetric");
    }
    if (report.rank != n) {
        report.violations.push_back("rank (A | B) = " + std::to_string(report.rank) + " < n: relation is not maximal");
    }
    return report;
}

}  // namespace weylscatter
