#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qfisher/detail/rng.hpp"
#include "qfisher/spectral.hpp"

using namespace qfisher;

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

CorrelationTriple sample_interior(detail::SplitMix64& rng) {
    const double z = rng.uniform(-0.9, 0.9);
    const double w = rng.sign() * rng.uniform(0.05, 0.95) * (1.0 + z);
    const double u = rng.sign() * rng.uniform(0.05, 0.95) * (1.0 - z);
    return CorrelationTriple{0.5 * (u + w), 0.5 * (u - w), z};
}

std::array<double, 4> sorted(std::array<double, 4> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// phase-align b to a, i.e. multiply b by the unit phase of <b|a>
Vector4 aligned(const Vector4& reference, Vector4 v) {
    const Complex overlap = (v.adjoint() * reference)(0);
    if (std::abs(overlap) > 1e-14) v *= overlap / std::abs(overlap);
    return v;
}

} // namespace

TEST_CASE("kappa functions") {
    const CorrelationTriple t{-0.3, -0.6, -0.5};
    const AccelerationParameter r(0.4);
    const KappaFunctions k = kappa_functions(t, r);
    const double c2 = r.cos_r() * r.cos_r();
    const double s2 = r.sin_r() * r.sin_r();
    const double cos2r = c2 - s2, cos4r = 2 * cos2r * cos2r - 1;
    const double w = t.x - t.y, u = t.x + t.y;
    // kappa1^2 equals the printed radicand
    CHECK(k.kappa1 * k.kappa1 ==
          doctest::Approx(4 * w * w - 4 * (1 - w * w) * cos2r + cos4r + 3).epsilon(1e-12));
    CHECK(k.kappa2 == doctest::Approx(std::sqrt(u * u * c2 + s2 * s2)).epsilon(1e-14));
    // the corrected kappa3 is 2*sqrt2*kappa2
    CHECK(k.kappa3 == doctest::Approx(2.0 * std::sqrt(2.0) * k.kappa2).epsilon(1e-14));
}

TEST_CASE("closed-form eigenvalues at r = 0") {
    const Spectrum4 spec = x_state_spectrum({-0.3, -0.6, -0.5}, AccelerationParameter(0.0));
    CHECK_FALSE(spec.fallback);
    CHECK(spec.lambda[0] == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(spec.lambda[1] == doctest::Approx(0.20).epsilon(1e-12));
    CHECK(spec.lambda[2] == doctest::Approx(0.60).epsilon(1e-12));
    CHECK(spec.lambda[3] == doctest::Approx(0.15).epsilon(1e-12));
}

TEST_CASE("block support of the closed-form eigenvectors") {
    const Spectrum4 spec = x_state_spectrum({-0.3, -0.6, -0.5}, AccelerationParameter(0.35));
    for (int i : {0, 1}) {
        CHECK(std::abs(spec.psi[i](1)) == 0.0);
        CHECK(std::abs(spec.psi[i](2)) == 0.0);
    }
    for (int i : {2, 3}) {
        CHECK(std::abs(spec.psi[i](0)) == 0.0);
        CHECK(std::abs(spec.psi[i](3)) == 0.0);
    }
}

TEST_CASE("maximally mixed input takes the generic fallback") {
    const AccelerationParameter r(0.5);
    const Spectrum4 spec = x_state_spectrum({0, 0, 0}, r);
    CHECK(spec.fallback);
    const double c2 = r.cos_r() * r.cos_r();
    const double s2 = r.sin_r() * r.sin_r();
    const std::array<double, 4> expected =
        sorted({c2 / 4, c2 / 4, s2 / 4 + 0.25, s2 / 4 + 0.25});
    const std::array<double, 4> got = sorted(spec.lambda);
    for (int i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("accelerated singlet spectrum at r = pi/4") {
    const Spectrum4 spec = x_state_spectrum({-1, -1, -1}, AccelerationParameter(kQuarterPi));
    const std::array<double, 4> got = sorted(spec.lambda);
    CHECK(std::abs(got[0]) < 1e-12);
    CHECK(std::abs(got[1]) < 1e-12);
    CHECK(got[2] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(got[3] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("werner spectrum reference values") {
    SUBCASE("x = -0.6, r = 0") {
        const WernerSpectrum spec = werner_spectrum(-0.6, AccelerationParameter(0.0));
        const std::array<double, 4> got = sorted(spec.lambda);
        CHECK(got[0] == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(got[1] == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(got[2] == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(got[3] == doctest::Approx(0.7).epsilon(1e-12));
    }
    SUBCASE("x = -1, r = 0 is pure") {
        const WernerSpectrum spec = werner_spectrum(-1.0, AccelerationParameter(0.0));
        const std::array<double, 4> got = sorted(spec.lambda);
        CHECK(std::abs(got[0]) < 1e-12);
        CHECK(std::abs(got[2]) < 1e-12);
        CHECK(got[3] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("x = -0.6, r = pi/4") {
        const WernerSpectrum spec = werner_spectrum(-0.6, AccelerationParameter(kQuarterPi));
        CHECK(spec.lambda[0] == doctest::Approx(0.05).epsilon(1e-12));
        CHECK(spec.lambda[1] == doctest::Approx(0.30).epsilon(1e-12));
        const double gamma = std::sqrt(7.76);
        CHECK(spec.gamma == doctest::Approx(gamma).epsilon(1e-12));
        CHECK(spec.lambda[2] ==
              doctest::Approx(0.25 * (1.3 - gamma / (2 * std::sqrt(2.0)))).epsilon(1e-12));
        CHECK(spec.lambda[3] ==
              doctest::Approx(0.25 * (1.3 + gamma / (2 * std::sqrt(2.0)))).epsilon(1e-12));
    }
}

TEST_CASE("generic spectrum on diagonal input") {
    Matrix4 rho_m = Matrix4::Zero();
    rho_m(0, 0) = 0.1;
    rho_m(1, 1) = 0.2;
    rho_m(2, 2) = 0.3;
    rho_m(3, 3) = 0.4;
    Matrix4 drho = Matrix4::Zero();
    drho(0, 0) = 1.0;
    drho(1, 1) = -2.0;
    drho(2, 2) = 0.5;
    drho(3, 3) = 0.5;
    const EigenSystem4 s = generic_spectrum(DensityMatrix4::from_matrix(rho_m), drho);
    // ascending eigenvalue order matches the diagonal order here
    CHECK(s.dlambda[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.dlambda[1] == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(s.dlambda[2] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(s.dlambda[3] == doctest::Approx(0.5).epsilon(1e-14));
    for (int i = 0; i < 4; ++i) CHECK(s.dpsi[i].norm() < 1e-14);
}

TEST_CASE("generic spectrum with zero perturbation") {
    const DensityMatrix4 rho = build_x_state({-0.3, -0.6, -0.5});
    const EigenSystem4 s = generic_spectrum(rho, Matrix4::Zero());
    for (int i = 0; i < 4; ++i) {
        CHECK(s.dlambda[i] == 0.0);
        CHECK(s.dpsi[i].norm() == 0.0);
    }
}

TEST_CASE("generic eigenvalue derivatives match the differentiated closed forms") {
    // independent oracle: d(lambda)/dx from differentiating the eigenvalue
    // formulas by hand
    const CorrelationTriple t{-0.3, -0.6, -0.5};
    const AccelerationParameter r(0.3);
    const double c2 = r.cos_r() * r.cos_r();
    const double s2 = r.sin_r() * r.sin_r();
    const double w = t.x - t.y, u = t.x + t.y;
    const double kappa1 = 2.0 * std::sqrt(2.0) * std::sqrt(w * w * c2 + s2 * s2);
    const double kappa2 = std::sqrt(u * u * c2 + s2 * s2);

    const double dl_outer = std::sqrt(2.0) * c2 * w / (2.0 * kappa1); // -/+ for labels 1/2
    const double dl_inner = u * c2 / (4.0 * kappa2);                  // +/- for labels 3/4

    const Spectrum4 labels = x_state_spectrum(t, r);
    const XStateCoefficients coeffs = XStateCoefficients::from(t);
    const EigenSystem4 generic = generic_spectrum(accelerate(coeffs, r),
                                                  accelerated_state_derivative(coeffs, r,
                                                                               Estimand::X));

    const std::array<double, 4> expected_dl = {-dl_outer, dl_outer, dl_inner, -dl_inner};
    for (int i = 0; i < 4; ++i) {
        int match = 0;
        double best = 1e99;
        for (int j = 0; j < 4; ++j) {
            const double gap = std::abs(generic.lambda[i] - labels.lambda[j]);
            if (gap < best) {
                best = gap;
                match = j;
            }
        }
        REQUIRE(best < 1e-10);
        CHECK(generic.dlambda[i] == doctest::Approx(expected_dl[match]).epsilon(1e-9));
    }
}

TEST_CASE("degenerate perturbation raises") {
    Matrix4 quarter = 0.25 * Matrix4::Identity();
    Matrix4 drho = Matrix4::Zero();
    drho(0, 3) = drho(3, 0) = 0.25;
    drho(1, 2) = drho(2, 1) = 0.25;
    CHECK_THROWS_AS(generic_spectrum(DensityMatrix4::from_matrix(quarter), drho),
                    DegeneracyError);
}

TEST_CASE("closed path matches the generic eigensolver") {
    detail::SplitMix64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const CorrelationTriple t = sample_interior(rng);
        const AccelerationParameter r(rng.uniform(0.0, kQuarterPi));
        const Spectrum4 spec = x_state_spectrum(t, r);
        REQUIRE_FALSE(spec.fallback);

        const Matrix4 rho = accelerate(XStateCoefficients::from(t), r).matrix();
        const EigenDecomposition4 generic = hermitian_eigensystem(rho);

        // eigenvalue multisets agree
        const std::array<double, 4> a = sorted(spec.lambda);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(a[i] - generic.values[i]) < 1e-10);

        // reconstruction (robust at cross-block crossings)
        Matrix4 rebuilt = Matrix4::Zero();
        for (int i = 0; i < 4; ++i)
            rebuilt += spec.lambda[i] * (spec.psi[i] * spec.psi[i].adjoint());
        CHECK(max_abs_entry(rebuilt - rho) < 1e-10);

        // eigenvector overlap when the spectrum is well separated
        double min_gap = 1e99;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                min_gap = std::min(min_gap, std::abs(generic.values[i] - generic.values[j]));
        if (min_gap > 1e-6) {
            for (int i = 0; i < 4; ++i) {
                double best = 0.0;
                for (int j = 0; j < 4; ++j)
                    best = std::max(best,
                                    std::abs((generic.vectors[j].adjoint() * spec.psi[i])(0)));
                CHECK(best == doctest::Approx(1.0).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("literal eigenvector slopes reproduce the production vectors") {
    // Mu-form vectors with the squared kappa3 variant; label pairing is
    // psi1<->lambda1, psi2<->lambda2, psi3<->lambda4, psi4<->lambda3.
    detail::SplitMix64 rng(32);
    for (int trial = 0; trial < 50; ++trial) {
        const CorrelationTriple t = sample_interior(rng);
        const AccelerationParameter r(rng.uniform(0.05, kQuarterPi));
        const Spectrum4 spec = x_state_spectrum(t, r);

        const double c = r.cos_r();
        const double s2 = r.sin_r() * r.sin_r();
        const double cos2r = c * c - s2;
        const KappaFunctions k = kappa_functions(t, r);
        const double w = t.x - t.y, u = t.x + t.y;
        const double sqrt2 = std::sqrt(2.0);

        const double mu1 = (1 / c) / (4 * w) * (2 * (1 - cos2r) + sqrt2 * k.kappa1);
        const double mu2 = -(1 / c) / (4 * w) * (2 * (1 - cos2r) - sqrt2 * k.kappa1);
        const double mu3 = (1 / c) / (4 * u) * (2 * (1 - cos2r) + sqrt2 * k.kappa3);
        const double mu4 = -(1 / c) / (4 * u) * (2 * (1 - cos2r) - sqrt2 * k.kappa3);

        auto outer_vec = [](double first, double last) {
            Vector4 v = Vector4::Zero();
            const double norm = std::sqrt(first * first + last * last);
            v(0) = first / norm;
            v(3) = last / norm;
            return v;
        };
        auto inner_vec = [](double first, double last) {
            Vector4 v = Vector4::Zero();
            const double norm = std::sqrt(first * first + last * last);
            v(1) = first / norm;
            v(2) = last / norm;
            return v;
        };

        const Vector4 psi1 = outer_vec(-mu1, 1.0);
        const Vector4 psi2 = outer_vec(mu2, 1.0);
        const Vector4 psi3 = inner_vec(-mu3, 1.0);
        const Vector4 psi4 = inner_vec(mu4, 1.0);

        CHECK(std::abs((psi1.adjoint() * spec.psi[0])(0)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs((psi2.adjoint() * spec.psi[1])(0)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs((psi4.adjoint() * spec.psi[2])(0)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs((psi3.adjoint() * spec.psi[3])(0)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("eigen derivatives match finite differences of the spectrum") {
    detail::SplitMix64 rng(33);
    const double h = 1e-6;
    for (int trial = 0; trial < 40; ++trial) {
        const CorrelationTriple t = sample_interior(rng);
        const double rr = rng.uniform(0.05, kQuarterPi - 0.05);
        const AccelerationParameter r(rr);
        const Spectrum4 spec = x_state_spectrum(t, r);
        REQUIRE_FALSE(spec.fallback);

        for (Estimand e : all_estimands) {
            CorrelationTriple tp = t, tm = t;
            double rp = rr, rm = rr;
            switch (e) {
            case Estimand::X: tp.x += h; tm.x -= h; break;
            case Estimand::Y: tp.y += h; tm.y -= h; break;
            case Estimand::Z: tp.z += h; tm.z -= h; break;
            case Estimand::R: rp += h; rm -= h; break;
            }
            const Spectrum4 hi = x_state_spectrum(tp, AccelerationParameter(rp));
            const Spectrum4 lo = x_state_spectrum(tm, AccelerationParameter(rm));
            const EigenSystem4 s = spec.for_estimand(e);

            for (int i = 0; i < 4; ++i) {
                const double fd_lambda = (hi.lambda[i] - lo.lambda[i]) / (2 * h);
                CHECK(std::abs(s.dlambda[i] - fd_lambda) <
                      1e-6 * std::max(1.0, std::abs(s.dlambda[i])));

                const Vector4 fd_psi =
                    (aligned(spec.psi[i], hi.psi[i]) - aligned(spec.psi[i], lo.psi[i])) / (2 * h);
                CHECK((s.dpsi[i] - fd_psi).norm() < 1e-6 * std::max(1.0, s.dpsi[i].norm()));
            }
        }
    }
}

TEST_CASE("generic engine derivatives match finite differences") {
    // same FD oracle applied to generic_spectrum directly
    const CorrelationTriple t{-0.35, -0.55, -0.45};
    const double rr = 0.4, h = 1e-6;
    const AccelerationParameter r(rr);
    const XStateCoefficients coeffs = XStateCoefficients::from(t);
    const DensityMatrix4 rho = accelerate(coeffs, r);

    for (Estimand e : all_estimands) {
        const EigenSystem4 s = generic_spectrum(rho, accelerated_state_derivative(coeffs, r, e));
        CorrelationTriple tp = t, tm = t;
        double rp = rr, rm = rr;
        switch (e) {
        case Estimand::X: tp.x += h; tm.x -= h; break;
        case Estimand::Y: tp.y += h; tm.y -= h; break;
        case Estimand::Z: tp.z += h; tm.z -= h; break;
        case Estimand::R: rp += h; rm -= h; break;
        }
        const EigenDecomposition4 hi = hermitian_eigensystem(
            accelerate(XStateCoefficients::from(tp), AccelerationParameter(rp)).matrix());
        const EigenDecomposition4 lo = hermitian_eigensystem(
            accelerate(XStateCoefficients::from(tm), AccelerationParameter(rm)).matrix());
        for (int i = 0; i < 4; ++i) {
            const double fd_lambda = (hi.values[i] - lo.values[i]) / (2 * h);
            CHECK(std::abs(s.dlambda[i] - fd_lambda) < 1e-6);
            const Vector4 fd_psi =
                (aligned(s.psi[i], hi.vectors[i]) - aligned(s.psi[i], lo.vectors[i])) / (2 * h);
            CHECK((s.dpsi[i] - fd_psi).norm() < 1e-6 * std::max(1.0, s.dpsi[i].norm()));
        }
    }
}

TEST_CASE("werner eigenvalues equal the x-route eigenvalues as multisets") {
    detail::SplitMix64 rng(34);
    for (int trial = 0; trial < 50; ++trial) {
        const double x = rng.uniform(-0.95, 0.3);
        const AccelerationParameter r(rng.uniform(0.0, kQuarterPi));
        const std::array<double, 4> a = sorted(werner_spectrum(x, r).lambda);
        const std::array<double, 4> b = sorted(x_state_spectrum({x, x, x}, r).lambda);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);
    }
}

TEST_CASE("populations") {
    SUBCASE("uniform spectrum") {
        const Populations p = populations({0.25, 0.25, 0.25, 0.25});
        for (double v : p.p) CHECK(v == doctest::Approx(0.25).epsilon(1e-15));
    }
    SUBCASE("pure state") {
        const Populations p = populations({0.0, 0.0, 0.0, 1.0});
        CHECK(p.p[3] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(p.p[0] == 0.0);
    }
    SUBCASE("reference arithmetic") {
        const Populations p = populations({0.05, 0.2, 0.6, 0.15});
        CHECK(p.p[0] == doctest::Approx(1.0 / 170.0).epsilon(1e-14));
        CHECK(p.p[1] == doctest::Approx(8.0 / 85.0).epsilon(1e-14));
        CHECK(p.p[2] == doctest::Approx(72.0 / 85.0).epsilon(1e-14));
        CHECK(p.p[3] == doctest::Approx(9.0 / 170.0).epsilon(1e-14));
    }
}
