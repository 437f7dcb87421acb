#include "weylscatter/cxlinalg.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "gauss_legendre.hpp"
#include "weylscatter/error.hpp"

namespace weylscatter {

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

CMatrix hermitian_part(const CMatrix& t) {
    CMatrix h = 0.5 * (t + t.adjoint());
    for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = h(i, i).real();
    return h;
}

CMatrix imag_part(const CMatrix& t) {
    CMatrix h = (t - t.adjoint()) / (2.0 * kI);
    h = 0.5 * (h + h.adjoint()).eval();
    for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = h(i, i).real();
    return h;
}

bool is_hermitian(const CMatrix& t, double tol) {
    return t.rows() == t.cols() && (t - t.adjoint()).norm() <= tol * scale_of(t);
}

bool is_psd(const CMatrix& t, double tol) {
    if (!is_hermitian(t, tol)) return false;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(t), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol * scale_of(t);
}

bool is_unitary(const CMatrix& t, double tol) {
    return t.rows() == t.cols() && (t.adjoint() * t - identity(t.rows())).norm() <= tol;
}

double condition_number(const CMatrix& t) {
    Eigen::JacobiSVD<CMatrix> svd(t);
    const auto& s = svd.singularValues();
    if (s.size() == 0) return 1.0;
    const double smin = s(s.size() - 1);
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / smin;
}

double min_singular_value(const CMatrix& t) {
    Eigen::JacobiSVD<CMatrix> svd(t);
    const auto& s = svd.singularValues();
    return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

HermitianEigen herm_eig(const CMatrix& t, double tol) {
    if (t.rows() != t.cols() || t.rows() == 0) {
        throw Error(ErrorKind::InvalidArgument, "herm_eig needs a non-empty square matrix");
    }
    const double asym = (t - t.adjoint()).norm();
    if (asym > tol * scale_of(t)) {
        throw Error(ErrorKind::NotHermitian, "‖T−T*‖ exceeds tolerance", asym);
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(t));
    HermitianEigen out{es.eigenvalues(), es.eigenvectors()};
    for (Eigen::Index j = 0; j < out.eigenvectors.cols(); ++j) {
        auto col = out.eigenvectors.col(j);
        for (Eigen::Index k = 0; k < col.size(); ++k) {
            const double mag = std::abs(col(k));
            if (mag > 1e-10) {
                col *= std::conj(col(k)) / mag;
                col(k) = mag;
                break;
            }
        }
    }
    return out;
}

CMatrix psd_sqrt(const CMatrix& t, double tol) {
    const HermitianEigen eig = herm_eig(t, std::max(tol, 1e-12));
    const double floor = -tol * scale_of(t);
    RVector roots(eig.eigenvalues.size());
    for (Eigen::Index i = 0; i < roots.size(); ++i) {
        const double w = eig.eigenvalues(i);
        if (w < floor) throw Error(ErrorKind::NotPSD, "negative eigenvalue", w);
        roots(i) = w > 0.0 ? std::sqrt(w) : 0.0;
    }
    CMatrix r = eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
    return hermitian_part(r);
}

namespace {

constexpr int kOrder = 10;

struct Panel {
    double a;
    double b;
    CMatrix left;
    CMatrix right;
    double err;
};

struct PanelOrder {
    bool operator()(const Panel& x, const Panel& y) const { return x.err < y.err; }
};

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Integrand on s ∈ (0,1) after t = s/(1−s). The difference of resolvents is
// written as (T+it)⁻¹(I−T)(1+it)⁻¹ so it does not cancel for large t.
class LogIntegrand {
public:
    explicit LogIntegrand(const CMatrix& t) : t_(t), rhs_(identity(t.rows()) - t) {}

    CMatrix operator()(double s) const {
        const double one_minus = 1.0 - s;
        const double tt = s / one_minus;
        const double jac = 1.0 / (one_minus * one_minus);
        CMatrix shifted = t_;
        shifted.diagonal().array() += Complex(0.0, tt);
        CMatrix sol = shifted.partialPivLu().solve(rhs_);
        return sol * (jac / Complex(1.0, tt));
    }

private:
    CMatrix t_;
    CMatrix rhs_;
};

CMatrix gauss_panel(const LogIntegrand& f, double a, double b, Eigen::Index n) {
    static const detail::GaussLegendre<kOrder> rule;
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    CMatrix acc = CMatrix::Zero(n, n);
    for (int k = 0; k < kOrder; ++k) acc += rule.weights[k] * f(mid + half * rule.nodes[k]);
    return acc * half;
}

Panel make_panel(const LogIntegrand& f, double a, double b, const CMatrix& whole, Eigen::Index n) {
    const double m = 0.5 * (a + b);
    Panel p{a, b, gauss_panel(f, a, m, n), gauss_panel(f, m, b, n), 0.0};
    p.err = max_abs(p.left + p.right - whole);
    return p;
}

}  // namespace

CMatrix matlog_integral(const CMatrix& t, const QuadratureConfig& quad) {
    if (t.rows() != t.cols() || t.rows() == 0) {
        throw Error(ErrorKind::InvalidArgument, "matlog_integral needs a non-empty square matrix");
    }
    const Eigen::Index n = t.rows();
    const double cond = condition_number(t);
    if (!(cond <= quad.cond_cap)) {
        throw Error(ErrorKind::SingularArgument, "argument is numerically singular", cond);
    }
    const RVector im_eigs = herm_eig(imag_part(t)).eigenvalues;
    if (im_eigs(0) < -quad.tol * scale_of(t)) {
        throw Error(ErrorKind::LowerHalfSpectrum, "Im T is not positive semidefinite", im_eigs(0));
    }

    const LogIntegrand f(t);
    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> work;
    // Start from a few panels so features near s = 0 and s = 1 are seen.
    constexpr int kInitial = 8;
    for (int i = 0; i < kInitial; ++i) {
        const double a = static_cast<double>(i) / kInitial;
        const double b = static_cast<double>(i + 1) / kInitial;
        work.push(make_panel(f, a, b, gauss_panel(f, a, b, n), n));
    }

    // Local error estimates compare one rule against its two halves, which
    // overstates the error of the halves; the sum is used as a global bound.
    double total_err = 0.0;
    auto recompute_total = [&] {
        total_err = 0.0;
        auto copy = work;
        while (!copy.empty()) {
            total_err += copy.top().err;
            copy.pop();
        }
    };
    recompute_total();
    int panels = kInitial;
    while (total_err > quad.tol) {
        if (panels >= quad.max_intervals) {
            throw Error(ErrorKind::SingularArgument, "log quadrature did not converge", total_err);
        }
        Panel worst = work.top();
        work.pop();
        total_err -= worst.err;
        const double m = 0.5 * (worst.a + worst.b);
        Panel l = make_panel(f, worst.a, m, worst.left, n);
        Panel r = make_panel(f, m, worst.b, worst.right, n);
        total_err += l.err + r.err;
        work.push(std::move(l));
        work.push(std::move(r));
        ++panels;
        if (panels % 256 == 0) recompute_total();
    }

    CMatrix integral = CMatrix::Zero(n, n);
    while (!work.empty()) {
        integral += work.top().left + work.top().right;
        work.pop();
    }
    return -kI * integral;
}

double det_tr_log_consistency(const CMatrix& t, const QuadratureConfig& quad) {
    const CMatrix log_t = matlog_integral(t, quad);
    return std::abs(t.determinant() - std::exp(log_t.trace()));
}

}  // namespace weylscatter
