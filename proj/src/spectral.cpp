#include "qfisher/spectral.hpp"

#include <cmath>
#include <string>

namespace qfisher {

namespace {

// g(w, r) = sqrt(w^2 cos^2 r + sin^4 r); kappa1 = 2*sqrt2*g(x-y),
// kappa2 = g(x+y), corrected kappa3 = 2*sqrt2*g(x+y).
double block_gap_root(double w, double c, double s) {
    return std::sqrt(w * w * c * c + s * s * s * s);
}

struct BlockVectors {
    Vector4 minus; // eigenvector of the minus branch (m - g/4)
    Vector4 plus;  // eigenvector of the plus branch (m + g/4)
};

// Cancellation-free eigenvectors of the 2x2 block [[a, b], [b, d]] with
// b = w*c/4 and d - a = sin^2(r)/2.  In block coordinates the minus branch
// is (-(s^2 + g), w c), the plus branch (w c, s^2 + g); both have norm
// sqrt((s^2+g)^2 + w^2 c^2).
BlockVectors block_eigenvectors(double w, double c, double s, int lo, int hi) {
    const double s2 = s * s;
    const double g = block_gap_root(w, c, s);
    const double big = s2 + g;
    const double off = w * c;
    const double norm = std::sqrt(big * big + off * off);

    BlockVectors out;
    out.minus = Vector4::Zero();
    out.plus = Vector4::Zero();
    out.minus(lo) = -big / norm;
    out.minus(hi) = off / norm;
    out.plus(lo) = off / norm;
    out.plus(hi) = big / norm;
    fix_phase(out.minus);
    fix_phase(out.plus);
    return out;
}

// First-order perturbation derivatives for a fixed eigenbasis.
// degenerate is set instead of throwing when allow_flag is true.
struct Perturbation {
    std::array<double, 4> dlambda{};
    std::array<Vector4, 4> dpsi;
    bool degenerate = false;
};

Perturbation perturbation_derivatives(const std::array<double, 4>& lambda,
                                      const std::array<Vector4, 4>& psi, const Matrix4& drho,
                                      bool throw_on_degeneracy) {
    Perturbation out;
    for (int i = 0; i < 4; ++i) out.dpsi[i] = Vector4::Zero();
    for (int i = 0; i < 4; ++i) {
        out.dlambda[i] = (psi[i].adjoint() * drho * psi[i])(0).real();
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            const Complex coupling = (psi[j].adjoint() * drho * psi[i])(0);
            const double gap = lambda[i] - lambda[j];
            if (std::abs(gap) < kGapThreshold) {
                if (std::abs(coupling) > kCouplingThreshold) {
                    if (throw_on_degeneracy)
                        throw DegeneracyError(
                            "eigenvalue gap " + std::to_string(gap) +
                            " below threshold with perturbation coupling " +
                            std::to_string(std::abs(coupling)) +
                            "; eigenvector derivative undefined");
                    out.degenerate = true;
                    return out;
                }
                continue; // exact crossing with vanishing coupling
            }
            out.dpsi[i] += (coupling / gap) * psi[j];
        }
    }
    return out;
}

} // namespace

KappaFunctions kappa_functions(const CorrelationTriple& t, const AccelerationParameter& r) {
    const double c = r.cos_r();
    const double s = r.sin_r();
    KappaFunctions k{};
    k.kappa1 = 2.0 * std::sqrt(2.0) * block_gap_root(t.x - t.y, c, s);
    k.kappa2 = block_gap_root(t.x + t.y, c, s);
    k.kappa3 = 2.0 * std::sqrt(2.0) * block_gap_root(t.x + t.y, c, s);
    return k;
}

EigenSystem4 Spectrum4::for_estimand(Estimand e) const {
    const int idx = static_cast<int>(e);
    if (degenerate[idx])
        throw DegeneracyError(std::string("eigenvector derivatives for estimand ") +
                              to_string(e) + " are undefined at this point");
    EigenSystem4 out;
    out.lambda = lambda;
    out.psi = psi;
    out.dlambda = dlambda[idx];
    out.dpsi = dpsi[idx];
    out.fallback = fallback;
    return out;
}

EigenSystem4 WernerSpectrum::for_estimand(Estimand e) const {
    int slot;
    if (e == Estimand::X)
        slot = 0;
    else if (e == Estimand::R)
        slot = 1;
    else
        throw DomainError("Werner states support estimands x (joint) and r only");
    if (degenerate[slot])
        throw DegeneracyError(std::string("eigenvector derivatives for estimand ") +
                              to_string(e) + " are undefined at this point");
    EigenSystem4 out;
    out.lambda = lambda;
    out.psi = psi;
    out.dlambda = slot == 0 ? dlambda_x : dlambda_r;
    out.dpsi = slot == 0 ? dpsi_x : dpsi_r;
    out.fallback = fallback;
    return out;
}

Spectrum4 x_state_spectrum(const CorrelationTriple& t, const AccelerationParameter& r) {
    const XStateCoefficients coeffs = XStateCoefficients::from(t);
    const double c = r.cos_r();
    const double s = r.sin_r();
    const double w = t.x - t.y; // outer {|00>,|11>} block
    const double u = t.x + t.y; // inner {|01>,|10>} block

    Spectrum4 spec;

    const double g_outer = block_gap_root(w, c, s);
    const double g_inner = block_gap_root(u, c, s);
    const bool use_fallback = std::abs(w) < kMuSingularityThreshold ||
                              std::abs(u) < kMuSingularityThreshold ||
                              0.5 * g_outer < kGapThreshold || 0.5 * g_inner < kGapThreshold;

    if (!use_fallback) {
        const double cos2r = c * c - s * s;
        const double sqrt2 = std::sqrt(2.0);
        const double kappa1 = 2.0 * sqrt2 * g_outer;
        const double kappa2 = g_inner;
        // closed-form eigenvalues; label order (1,2) outer -/+, (3,4) inner +/-
        spec.lambda[0] = (4.0 + 2.0 * (1.0 + cos2r) * t.z - sqrt2 * kappa1) / 16.0;
        spec.lambda[1] = (4.0 + 2.0 * (1.0 + cos2r) * t.z + sqrt2 * kappa1) / 16.0;
        spec.lambda[2] = (2.0 - (1.0 + cos2r) * t.z + 2.0 * kappa2) / 8.0;
        spec.lambda[3] = (2.0 - (1.0 + cos2r) * t.z - 2.0 * kappa2) / 8.0;

        const BlockVectors outer = block_eigenvectors(w, c, s, 0, 3);
        const BlockVectors inner = block_eigenvectors(u, c, s, 1, 2);
        spec.psi[0] = outer.minus;
        spec.psi[1] = outer.plus;
        spec.psi[2] = inner.plus;
        spec.psi[3] = inner.minus;
    } else {
        const DensityMatrix4 rho = accelerate(coeffs, r);
        const EigenDecomposition4 eig = hermitian_eigensystem(rho.matrix());
        spec.lambda = eig.values;
        spec.psi = eig.vectors;
        spec.fallback = true;
    }

    for (Estimand e : all_estimands) {
        const Matrix4 drho = accelerated_state_derivative(coeffs, r, e);
        const Perturbation p = perturbation_derivatives(spec.lambda, spec.psi, drho, false);
        const int idx = static_cast<int>(e);
        if (p.degenerate) {
            spec.degenerate[idx] = true;
            continue;
        }
        spec.dlambda[idx] = p.dlambda;
        spec.dpsi[idx] = p.dpsi;
    }
    return spec;
}

WernerSpectrum werner_spectrum(double x, const AccelerationParameter& r) {
    if (x < -1.0 || x > 1.0 / 3.0)
        throw DomainError("Werner parameter x = " + std::to_string(x) + " outside [-1, 1/3]");

    const XStateCoefficients coeffs = XStateCoefficients::from(CorrelationTriple{x, x, x});
    const double c = r.cos_r();
    const double s = r.sin_r();
    const double s2 = s * s;
    const double c2 = c * c;

    WernerSpectrum spec;
    const double g = block_gap_root(2.0 * x, c, s);
    spec.gamma = 2.0 * std::sqrt(2.0) * g;

    if (std::abs(x) >= kMuSingularityThreshold) {
        // lambda_1w = rho_11, lambda_2w = rho_44 (the outer block is diagonal)
        spec.lambda[0] = 0.25 * c2 * (1.0 + x);
        spec.lambda[1] = 0.25 * (1.0 + s2 + c2 * x);
        spec.lambda[2] = 0.25 * (1.0 - x * c2 - spec.gamma / (2.0 * std::sqrt(2.0)));
        spec.lambda[3] = 0.25 * (1.0 - x * c2 + spec.gamma / (2.0 * std::sqrt(2.0)));

        spec.psi[0] = Vector4::Zero();
        spec.psi[0](0) = 1.0;
        spec.psi[1] = Vector4::Zero();
        spec.psi[1](3) = 1.0;
        const BlockVectors inner = block_eigenvectors(2.0 * x, c, s, 1, 2);
        spec.psi[2] = inner.minus;
        spec.psi[3] = inner.plus;

        spec.mu3w = (s2 + g) / (2.0 * x * c);
        spec.mu4w = (s2 - g) / (2.0 * x * c);
    } else {
        const DensityMatrix4 rho = accelerate(coeffs, r);
        const EigenDecomposition4 eig = hermitian_eigensystem(rho.matrix());
        spec.lambda = eig.values;
        spec.psi = eig.vectors;
        spec.fallback = true;
        spec.mu3w = spec.mu4w = 0.0;
    }

    const Matrix4 drho_x = werner_state_derivative(x, r, Estimand::X);
    const Matrix4 drho_r = werner_state_derivative(x, r, Estimand::R);
    const Perturbation px = perturbation_derivatives(spec.lambda, spec.psi, drho_x, false);
    const Perturbation pr = perturbation_derivatives(spec.lambda, spec.psi, drho_r, false);
    if (px.degenerate) {
        spec.degenerate[0] = true;
    } else {
        spec.dlambda_x = px.dlambda;
        spec.dpsi_x = px.dpsi;
    }
    if (pr.degenerate) {
        spec.degenerate[1] = true;
    } else {
        spec.dlambda_r = pr.dlambda;
        spec.dpsi_r = pr.dpsi;
    }
    return spec;
}

EigenSystem4 generic_spectrum(const DensityMatrix4& rho, const Matrix4& drho) {
    if (hermiticity_defect(drho) > 1e-10)
        throw DomainError("perturbation matrix is not Hermitian");
    const EigenDecomposition4 eig = hermitian_eigensystem(rho.matrix());
    EigenSystem4 out;
    out.lambda = eig.values;
    out.psi = eig.vectors;
    out.fallback = true;
    const Perturbation p = perturbation_derivatives(out.lambda, out.psi, drho, true);
    out.dlambda = p.dlambda;
    out.dpsi = p.dpsi;
    return out;
}

Populations populations(const std::array<double, 4>& lambda) {
    double total = 0.0;
    for (double l : lambda) total += l * l;
    Populations out{};
    for (int i = 0; i < 4; ++i) out.p[i] = lambda[i] * lambda[i] / total;
    return out;
}

} // namespace qfisher
