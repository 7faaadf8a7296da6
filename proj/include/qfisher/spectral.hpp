#pragma once

#include <array>

#include "qfisher/estimand.hpp"
#include "qfisher/states.hpp"
#include "qfisher/unruh.hpp"

namespace qfisher {

// Fallback thresholds for the closed-form eigen-system: the mu formulas
// divide by (x - y) resp. (x + y), and eigenvector derivatives become
// ill-conditioned when a within-block gap closes.
inline constexpr double kMuSingularityThreshold = 1e-8;
inline constexpr double kGapThreshold = 1e-9;
// Couplings below this are treated as exact zeros when a gap closes.
inline constexpr double kCouplingThreshold = 1e-12;

// kappa functions of the closed-form eigenvalues.  kappa3 is the corrected
// form with 4(x+y)^2 under the root; the as-printed linear variant lives in
// closed_forms for the errata test.
struct KappaFunctions {
    double kappa1;
    double kappa2;
    double kappa3;
};

KappaFunctions kappa_functions(const CorrelationTriple& t, const AccelerationParameter& r);

// Eigen-system of an accelerated state together with the derivatives of
// eigenvalues and eigenvectors along one perturbation direction.
struct EigenSystem4 {
    std::array<double, 4> lambda;
    std::array<Vector4, 4> psi;
    std::array<double, 4> dlambda;
    std::array<Vector4, 4> dpsi;
    bool fallback = false;
};

// Eigen-system of the accelerated X-state with derivatives for all four
// estimands.  Eigenvalue order follows the closed-form labels: (1, 2) the
// {|00>,|11>} block pair (minus/plus branch), (3, 4) the {|01>,|10>} block
// pair (plus/minus branch).
struct Spectrum4 {
    std::array<double, 4> lambda;
    std::array<Vector4, 4> psi;
    std::array<std::array<double, 4>, 4> dlambda;  // [estimand][i]
    std::array<std::array<Vector4, 4>, 4> dpsi;    // [estimand][i]
    std::array<bool, 4> degenerate{};              // per estimand
    bool fallback = false;

    EigenSystem4 for_estimand(Estimand e) const; // throws DegeneracyError if flagged
};

// Eigen-system of the accelerated Werner state, with the closed-form fields
// mu_3w, mu_4w and gamma.  Derivatives cover the Werner estimands x (joint)
// and r.  Eigenvalue order follows the closed-form labels lambda_1w..4w.
struct WernerSpectrum {
    std::array<double, 4> lambda;
    std::array<Vector4, 4> psi;
    double mu3w = 0.0, mu4w = 0.0, gamma = 0.0;
    std::array<double, 4> dlambda_x{}, dlambda_r{};
    std::array<Vector4, 4> dpsi_x, dpsi_r;
    std::array<bool, 2> degenerate{}; // [0] = x, [1] = r
    bool fallback = false;

    EigenSystem4 for_estimand(Estimand e) const; // X or R only
};

Spectrum4 x_state_spectrum(const CorrelationTriple& t, const AccelerationParameter& r);

WernerSpectrum werner_spectrum(double x, const AccelerationParameter& r);

// Dense-eigensolver route: eigenpairs of rho plus first-order perturbation
// derivatives along drho,
//   dlambda_i = <psi_i| drho |psi_i>,
//   dpsi_i    = sum_{j != i} <psi_j| drho |psi_i> / (lambda_i - lambda_j) |psi_j>.
// Throws DegeneracyError when a gap below kGapThreshold carries coupling
// above kCouplingThreshold.
EigenSystem4 generic_spectrum(const DensityMatrix4& rho, const Matrix4& drho);

// Populations P_i = lambda_i^2 / sum_j lambda_j^2.
struct Populations {
    std::array<double, 4> p;
};

Populations populations(const std::array<double, 4>& lambda);

} // namespace qfisher
