#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "weylscatter/error.hpp"
#include "weylscatter/relation.hpp"

using namespace weylscatter;

namespace {

CMatrix diag2(Complex a, Complex b) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace

TEST_SUITE("relation") {

TEST_CASE("resolvent examples") {
    const auto t = BoundaryParameter::matrix(2.0 * identity(1));
    const CMatrix m = Complex(0.0, 2.0) * identity(1);
    CHECK(std::abs(relation_resolvent(t, m).value(0, 0) - Complex(0.25, 0.25)) < 1e-15);

    const auto a0 = BoundaryParameter::kernel_pair(identity(2), CMatrix::Zero(2, 2));
    CHECK(relation_resolvent(a0, kI * identity(2)).value.norm() == 0.0);

    const auto mixed = BoundaryParameter::kernel_pair(diag2(1.0, 0.0), diag2(0.0, 1.0));
    const CMatrix r = relation_resolvent(mixed, kI * identity(2)).value;
    CHECK((r - diag2(0.0, kI)).norm() < 1e-15);
}

TEST_CASE("matrix and kernel pair (T, I) give identical resolvents") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = 1 + trial % 4;
        const CMatrix t = oracle::random_hermitian(rng, n);
        const CMatrix h = oracle::random_hermitian(rng, n);
        CMatrix p = oracle::random_hermitian(rng, n, 0.5);
        p = p * p + 0.1 * identity(n);
        const CMatrix m = h + kI * p;
        const CMatrix a = relation_resolvent(BoundaryParameter::matrix(t), m).value;
        const CMatrix b = relation_resolvent(BoundaryParameter::kernel_pair(t, identity(n)), m).value;
        CHECK(a == b);
    }
}

TEST_CASE("nonreal points are never spectral for selfadjoint Θ") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index n = 1 + trial % 3;
        const CMatrix t = oracle::random_hermitian(rng, n, 5.0);
        CMatrix p = oracle::random_hermitian(rng, n, 0.3);
        p = p * p + 1e-3 * identity(n);
        const CMatrix m = oracle::random_hermitian(rng, n, 5.0) + kI * p;
        CHECK_NOTHROW(relation_resolvent(BoundaryParameter::matrix(t), m));
    }
}

TEST_CASE("singular Θ − M is a spectral point") {
    const auto t = BoundaryParameter::matrix(diag2(1.0, 2.0));
    try {
        relation_resolvent(t, diag2(1.0, 0.0));
        FAIL("expected SpectralPoint");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SpectralPoint);
        CHECK(e.value() > 1e12);
    }
}

TEST_CASE("selfadjointness report") {
    CMatrix h(2, 2);
    h << 1.0, kI, -kI, 2.0;
    CHECK(check_selfadjoint(BoundaryParameter::matrix(h)).ok());
    CHECK(check_selfadjoint(BoundaryParameter::kernel_pair(identity(2), identity(2))).ok());
    const auto deficient = check_selfadjoint(BoundaryParameter::kernel_pair(diag2(1.0, 0.0), CMatrix::Zero(2, 2)));
    CHECK_FALSE(deficient.ok());
    CHECK(deficient.rank == 1);
    CMatrix nh(2, 2);
    nh << 1.0, 1.0, 0.0, 2.0;
    const auto bad = check_selfadjoint(BoundaryParameter::matrix(nh));
    CHECK_FALSE(bad.ok());
    CHECK(bad.hermitian_defect > 0.5);
}

TEST_CASE("operator test and operator matrix") {
    CMatrix b(2, 2);
    b << 2.0, 0.0, 1.0, 1.0;
    CMatrix t(2, 2);
    t << 1.0, 0.5, 0.5, -1.0;
    const auto kp = BoundaryParameter::kernel_pair(b * t, b);
    CHECK(kp.is_operator());
    CHECK((kp.operator_matrix() - t).norm() < 1e-14);

    const auto a0 = BoundaryParameter::kernel_pair(identity(2), CMatrix::Zero(2, 2));
    CHECK_FALSE(a0.is_operator());
    CHECK_THROWS_AS(a0.operator_matrix(), Error);

    const auto m = BoundaryParameter::matrix(t);
    const auto pair = m.to_kernel_pair();
    CHECK(pair.a == t);
    CHECK(pair.b == identity(2));
    CHECK(m == BoundaryParameter::matrix(t));
    CHECK_FALSE(m == kp);
}

TEST_CASE("dimension mismatches are rejected") {
    CHECK_THROWS_AS(BoundaryParameter::kernel_pair(identity(2), identity(3)), Error);
    CHECK_THROWS_AS(BoundaryParameter::matrix(CMatrix::Zero(2, 3)), Error);
}

}
