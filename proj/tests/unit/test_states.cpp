#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qfisher/detail/rng.hpp"
#include "qfisher/states.hpp"

using namespace qfisher;

namespace {

CorrelationTriple random_valid_triple(detail::SplitMix64& rng) {
    const double z = rng.uniform(-0.95, 0.95);
    const double w = rng.sign() * rng.uniform(0.0, 1.0) * (1.0 + z);
    const double u = rng.sign() * rng.uniform(0.0, 1.0) * (1.0 - z);
    return CorrelationTriple{0.5 * (u + w), 0.5 * (u - w), z};
}

// closed form for X-shaped density matrices, used as an independent check
double x_state_concurrence(const Matrix4& m) {
    const double inner = std::abs(m(1, 2)) - std::sqrt(m(0, 0).real() * m(3, 3).real());
    const double outer = std::abs(m(0, 3)) - std::sqrt(m(1, 1).real() * m(2, 2).real());
    return 2.0 * std::max({0.0, inner, outer});
}

} // namespace

TEST_CASE("vanishing correlations give the maximally mixed state") {
    const DensityMatrix4 rho = build_x_state({0.0, 0.0, 0.0});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(rho(i, j) - (i == j ? 0.25 : 0.0)) < 1e-15);
}

TEST_CASE("(-1,-1,-1) is the singlet projector") {
    const DensityMatrix4 rho = build_x_state({-1.0, -1.0, -1.0});
    CHECK(rho(1, 1).real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rho(2, 2).real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rho(1, 2).real() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(std::abs(rho(0, 0)) < 1e-15);
    CHECK(std::abs(rho(3, 3)) < 1e-15);
    CHECK(std::abs(rho(0, 3)) < 1e-15);
}

TEST_CASE("coefficients of (0.5, 0.5, -0.9)") {
    const XStateCoefficients c = XStateCoefficients::from({0.5, 0.5, -0.9});
    CHECK(c.b11 == doctest::Approx(0.025).epsilon(1e-15));
    CHECK(c.b22 == doctest::Approx(0.475).epsilon(1e-15));
    CHECK(c.b33 == doctest::Approx(0.475).epsilon(1e-15));
    CHECK(c.b44 == doctest::Approx(0.025).epsilon(1e-15));
    CHECK(c.b23 == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(c.b14 == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("positivity violations are rejected, not clamped") {
    CHECK_THROWS_AS(build_x_state({2.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(build_x_state({0.5, -0.6, -0.9}), DomainError); // |x-y| > 1+z
    CHECK_THROWS_AS(build_x_state({0.8, 0.8, 0.0}), DomainError);   // |x+y| > 1-z
    CHECK_THROWS_AS(build_werner(0.4), DomainError);
    CHECK_THROWS_AS(build_werner(-1.01), DomainError);
}

TEST_CASE("werner eigenvalues at x = -0.6") {
    const DensityMatrix4 rho = build_werner(-0.6);
    EigenDecomposition4 eig = hermitian_eigensystem(rho.matrix());
    CHECK(eig.values[0] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(eig.values[1] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(eig.values[2] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(eig.values[3] == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("werner equals the x = y = z X-state entrywise") {
    for (double x = -1.0; x <= 1.0 / 3.0 + 1e-12; x += 0.05) {
        const double clamped = std::min(x, 1.0 / 3.0);
        const DensityMatrix4 wern = build_werner(clamped);
        const DensityMatrix4 xst = build_x_state({clamped, clamped, clamped});
        CHECK(max_abs_entry(wern.matrix() - xst.matrix()) <= 1e-15);
    }
}

TEST_CASE("boundary states touch zero eigenvalue") {
    // |x + y| = 1 - z exactly
    const DensityMatrix4 rho = build_x_state({0.3, 0.2, 0.5});
    const EigenDecomposition4 eig = hermitian_eigensystem(rho.matrix());
    CHECK(std::abs(eig.values[0]) < 1e-12);
}

TEST_CASE("concurrence of reference states") {
    CHECK(concurrence(build_x_state({-1.0, -1.0, -1.0})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(concurrence(build_x_state({0.0, 0.0, 0.0})) == doctest::Approx(0.0).epsilon(1e-12));
    // Werner concurrence (3p - 1)/2 with singlet weight p = 0.6
    CHECK(concurrence(build_werner(-0.6)) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("concurrence matches the X-state closed form on random states") {
    detail::SplitMix64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const CorrelationTriple t = random_valid_triple(rng);
        const DensityMatrix4 rho = build_x_state(t);
        CHECK(concurrence(rho) ==
              doctest::Approx(x_state_concurrence(rho.matrix())).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("concurrence is invariant under (x, y) -> (-x, -y)") {
    detail::SplitMix64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const CorrelationTriple t = random_valid_triple(rng);
        const CorrelationTriple flipped{-t.x, -t.y, t.z};
        CHECK(concurrence(build_x_state(t)) ==
              doctest::Approx(concurrence(build_x_state(flipped))).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("random valid triples build valid density matrices") {
    detail::SplitMix64 rng(13);
    for (int trial = 0; trial < 300; ++trial) {
        const CorrelationTriple t = random_valid_triple(rng);
        CHECK_NOTHROW(build_x_state(t)); // from_matrix revalidates all invariants
    }
}

TEST_CASE("density matrix validation rejects bad inputs") {
    Matrix4 not_hermitian = Matrix4::Zero();
    not_hermitian(0, 0) = 0.5;
    not_hermitian(1, 1) = 0.5;
    not_hermitian(0, 1) = 0.3;
    CHECK_THROWS_AS(DensityMatrix4::from_matrix(not_hermitian), DomainError);

    Matrix4 wrong_trace = Matrix4::Identity();
    CHECK_THROWS_AS(DensityMatrix4::from_matrix(wrong_trace), DomainError);

    Matrix4 negative = Matrix4::Zero();
    negative(0, 0) = 1.1;
    negative(1, 1) = -0.1;
    CHECK_THROWS_AS(DensityMatrix4::from_matrix(negative), DomainError);
}
