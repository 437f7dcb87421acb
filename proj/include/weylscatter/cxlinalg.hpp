#pragma once

#include <complex>

#include <Eigen/Dense>

namespace weylscatter {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

// Frobenius norm; used for all relative tolerances in the library.
inline double norm(const CMatrix& m) { return m.norm(); }
inline double scale_of(const CMatrix& m) { return std::max(1.0, m.norm()); }

CMatrix identity(Eigen::Index n);

/// (T + T*)/2, exactly Hermitian.
CMatrix hermitian_part(const CMatrix& t);
/// (T - T*)/(2i), exactly Hermitian.
CMatrix imag_part(const CMatrix& t);

bool is_hermitian(const CMatrix& t, double tol);
bool is_psd(const CMatrix& t, double tol);
bool is_unitary(const CMatrix& t, double tol);

/// Ratio of extreme singular values; +inf for singular input.
double condition_number(const CMatrix& t);
double min_singular_value(const CMatrix& t);

struct HermitianEigen {
    RVector eigenvalues;   // ascending
    CMatrix eigenvectors;  // columns; first non-negligible component real positive
};

/// Eigendecomposition of a Hermitian matrix with deterministic ordering and phases.
/// Throws NotHermitian if ‖T−T*‖ > tol·max(1,‖T‖).
HermitianEigen herm_eig(const CMatrix& t, double tol = 1e-12);

/// Hermitian PSD square root. Eigenvalues in [−tol·max(1,‖T‖), 0) are clamped to 0,
/// anything below throws NotPSD.
CMatrix psd_sqrt(const CMatrix& t, double tol = 1e-12);

struct QuadratureConfig {
    double tol = 1e-9;        // absolute, entrywise
    double cond_cap = 1e12;   // arguments with larger condition number are refused
    int max_intervals = 20000;
};

/// Matrix logarithm of T with Im T ≥ 0 and 0 ∉ σ(T), evaluated from
///
///     log T = −i ∫₀^∞ ((T + it)⁻¹ − (1 + it)⁻¹ I) dt
///
/// by adaptive Gauss-Legendre quadrature after mapping t = s/(1−s). The
/// integral fixes the branch with 0 ≤ Im log ≤ π and does not need T normal.
///
/// Throws SingularArgument when cond(T) > quad.cond_cap or the quadrature does
/// not reach quad.tol, and LowerHalfSpectrum when Im T has an eigenvalue below
/// −quad.tol·max(1,‖T‖).
CMatrix matlog_integral(const CMatrix& t, const QuadratureConfig& quad = {});

/// |det T − exp(tr log T)| with log from matlog_integral.
double det_tr_log_consistency(const CMatrix& t, const QuadratureConfig& quad = {});

}  // namespace weylscatter
