#pragma once

#include "qfisher/spectral.hpp"

namespace qfisher {

// Eigenvalue-sum cutoff for the lambda_j != 0 / lambda_j + lambda_l != 0
// exclusions of the decomposition and the SLD sum.
inline constexpr double kEigenvalueCutoff = 1e-12;
// Perturbation weight allowed in the kernel-kernel block of rho before the
// parameter is declared not estimable.
inline constexpr double kKernelWeightThreshold = 1e-10;

// Fisher information split into the classical part (eigenvalue
// sensitivity), the lambda-weighted pure-state part, and the mixture
// correction: total = classical + pure_part - mixture.
struct FisherDecomposition {
    double classical = 0.0;
    double pure_part = 0.0;
    double mixture = 0.0;
    double total = 0.0;
};

// SLD engine: F = sum_{lambda_i + lambda_j > eps} 2 |<psi_i| drho |psi_j>|^2 / (lambda_i + lambda_j).
// Uses its own dense eigen-decomposition of rho; independent of the
// closed-form spectral route.  Throws NotEstimableError when drho has
// weight above kKernelWeightThreshold entirely inside rho's kernel block.
double qfi_sld(const DensityMatrix4& rho, const Matrix4& drho);

FisherDecomposition qfi_decomposed(const EigenSystem4& s);
FisherDecomposition qfi_decomposed(const Spectrum4& s, Estimand e);
FisherDecomposition qfi_decomposed(const WernerSpectrum& s, Estimand e);

// End-to-end convenience: state -> Unruh channel -> spectrum -> decomposition.
FisherDecomposition qfi_x_state(const CorrelationTriple& t, const AccelerationParameter& r,
                                Estimand e);
FisherDecomposition qfi_werner(double x, const AccelerationParameter& r, Estimand e);

} // namespace qfisher
