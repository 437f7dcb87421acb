#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "weylscatter/cxlinalg.hpp"
#include "weylscatter/error.hpp"

using namespace weylscatter;
using std::numbers::pi;

TEST_SUITE("cxlinalg") {

TEST_CASE("herm_eig sorts ascending and fixes phases") {
    CMatrix t = CMatrix::Zero(2, 2);
    t(0, 0) = 8.0;
    t(1, 1) = 2.0;
    const auto e = herm_eig(t);
    CHECK(e.eigenvalues(0) == doctest::Approx(2.0));
    CHECK(e.eigenvalues(1) == doctest::Approx(8.0));
    CHECK(std::abs(e.eigenvectors(1, 0) - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(e.eigenvectors(0, 1) - Complex(1.0, 0.0)) < 1e-14);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix h = oracle::random_hermitian(rng, 4);
        const auto d = herm_eig(h);
        const CMatrix back = d.eigenvectors * d.eigenvalues.cast<Complex>().asDiagonal() * d.eigenvectors.adjoint();
        CHECK((back - h).norm() < 1e-12 * scale_of(h));
        for (Eigen::Index j = 0; j < 4; ++j) {
            for (Eigen::Index i = 0; i < 4; ++i) {
                if (std::abs(d.eigenvectors(i, j)) > 1e-10) {
                    CHECK(d.eigenvectors(i, j).imag() == 0.0);
                    CHECK(d.eigenvectors(i, j).real() > 0.0);
                    break;
                }
            }
        }
    }
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
    CMatrix t = CMatrix::Zero(2, 2);
    t(0, 1) = 1.0;
    CHECK_THROWS_AS(herm_eig(t), Error);
    try {
        herm_eig(t);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotHermitian);
    }
}

TEST_CASE("psd_sqrt squares back and clamps round-off") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix a = oracle::random_hermitian(rng, 3);
        const CMatrix p = a * a;
        const CMatrix r = psd_sqrt(p);
        CHECK((r * r - p).norm() < 1e-10 * scale_of(p));
        CHECK(is_hermitian(r, 1e-14));
    }
    CMatrix tiny = CMatrix::Zero(2, 2);
    tiny(0, 0) = 1.0;
    tiny(1, 1) = -1e-14;
    CHECK(std::abs(psd_sqrt(tiny)(1, 1)) == 0.0);
    tiny(1, 1) = -1e-3;
    CHECK_THROWS_AS(psd_sqrt(tiny), Error);
}

TEST_CASE("matlog scalar anchors") {
    const CMatrix minus_one = -identity(1);
    CHECK(std::abs(matlog_integral(minus_one)(0, 0) - Complex(0.0, pi)) < 1e-9);
    const CMatrix i1 = kI * identity(1);
    CHECK(std::abs(matlog_integral(i1)(0, 0) - Complex(0.0, pi / 2)) < 1e-9);
    CHECK(matlog_integral(identity(3)).norm() < 1e-12);
}

TEST_CASE("matlog agrees with an eigendecomposition log") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::Index n = 1 + trial % 4;
        const CMatrix h = oracle::random_hermitian(rng, n);
        CMatrix p = oracle::random_hermitian(rng, n, 0.5);
        p = p * p + u(rng) * identity(n);
        const CMatrix t = h + kI * p;
        const CMatrix ours = matlog_integral(t);
        const CMatrix ref = oracle::logm_eig(t);
        CHECK(oracle::max_abs(ours - ref) < 1e-8);
    }
}

TEST_CASE("matlog on Hermitian arguments puts π on the negative part") {
    CMatrix t = CMatrix::Zero(2, 2);
    t(0, 0) = -3.0;
    t(1, 1) = 0.5;
    const CMatrix l = matlog_integral(t);
    CHECK(std::abs(l(0, 0) - Complex(std::log(3.0), pi)) < 1e-9);
    CHECK(std::abs(l(1, 1) - Complex(std::log(0.5), 0.0)) < 1e-9);
    CHECK(std::abs(l(0, 1)) < 1e-12);
}

TEST_CASE("det and tr log agree on random admissible matrices") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.5);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = 1 + trial % 4;
        const CMatrix h = oracle::random_hermitian(rng, n);
        CMatrix p = oracle::random_hermitian(rng, n, 0.7);
        p = p * p + u(rng) * identity(n);
        const CMatrix t = h + kI * p;
        const Complex det = t.determinant();
        CHECK(det_tr_log_consistency(t) <= 1e-9 * std::abs(det));
    }
}

TEST_CASE("matlog refuses arguments outside its domain") {
    CMatrix lower = CMatrix::Zero(1, 1);
    lower(0, 0) = Complex(1.0, -1.0);
    try {
        matlog_integral(lower);
        FAIL("expected LowerHalfSpectrum");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::LowerHalfSpectrum);
    }
    CMatrix singular = CMatrix::Zero(2, 2);
    singular(0, 0) = 1.0;
    try {
        matlog_integral(singular);
        FAIL("expected SingularArgument");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SingularArgument);
    }
}

TEST_CASE("condition number and unitarity helpers") {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 0.5;
    CHECK(condition_number(d) == doctest::Approx(8.0));
    CHECK(min_singular_value(d) == doctest::Approx(0.5));
    CMatrix u(2, 2);
    u << 0.0, kI, kI, 0.0;
    CHECK(is_unitary(u, 1e-14));
    CHECK_FALSE(is_unitary(d, 1e-3));
    CHECK(imag_part(kI * d).isApprox(d));
}

}
