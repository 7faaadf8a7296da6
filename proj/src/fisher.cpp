#include "qfisher/fisher.hpp"

#include <cmath>

namespace qfisher {

double qfi_sld(const DensityMatrix4& rho, const Matrix4& drho) {
    if (hermiticity_defect(drho) > 1e-10)
        throw DomainError("perturbation matrix is not Hermitian");
    const EigenDecomposition4 eig = hermitian_eigensystem(rho.matrix());

    // matrix elements of drho in the eigenbasis
    Complex element[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) element[i][j] = (eig.vectors[i].adjoint() * drho * eig.vectors[j])(0);

    // reject perturbations supported on the kernel of rho
    double kernel_weight = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (eig.values[i] > kEigenvalueCutoff) continue;
        for (int j = 0; j < 4; ++j) {
            if (eig.values[j] > kEigenvalueCutoff) continue;
            kernel_weight = std::max(kernel_weight, std::abs(element[i][j]));
        }
    }
    if (kernel_weight > kKernelWeightThreshold)
        throw NotEstimableError("perturbation has weight " + std::to_string(kernel_weight) +
                                " in the kernel block of rho; parameter not estimable");

    double f = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double denom = eig.values[i] + eig.values[j];
            if (denom <= kEigenvalueCutoff) continue;
            f += 2.0 * std::norm(element[i][j]) / denom;
        }
    }
    return f;
}

FisherDecomposition qfi_decomposed(const EigenSystem4& s) {
    FisherDecomposition out;

    for (int j = 0; j < 4; ++j) {
        if (s.lambda[j] > kEigenvalueCutoff)
            out.classical += s.dlambda[j] * s.dlambda[j] / s.lambda[j];
    }

    for (int j = 0; j < 4; ++j) {
        const double dd = (s.dpsi[j].adjoint() * s.dpsi[j])(0).real();
        const double overlap = std::norm((s.psi[j].adjoint() * s.dpsi[j])(0));
        out.pure_part += 4.0 * s.lambda[j] * (dd - overlap);
    }

    for (int j = 0; j < 4; ++j) {
        for (int l = 0; l < 4; ++l) {
            if (j == l) continue;
            const double denom = s.lambda[j] + s.lambda[l];
            if (denom <= kEigenvalueCutoff) continue;
            const double overlap = std::norm((s.psi[j].adjoint() * s.dpsi[l])(0));
            out.mixture += 8.0 * s.lambda[j] * s.lambda[l] / denom * overlap;
        }
    }

    out.total = out.classical + out.pure_part - out.mixture;
    return out;
}

FisherDecomposition qfi_decomposed(const Spectrum4& s, Estimand e) {
    return qfi_decomposed(s.for_estimand(e));
}

FisherDecomposition qfi_decomposed(const WernerSpectrum& s, Estimand e) {
    return qfi_decomposed(s.for_estimand(e));
}

FisherDecomposition qfi_x_state(const CorrelationTriple& t, const AccelerationParameter& r,
                                Estimand e) {
    return qfi_decomposed(x_state_spectrum(t, r), e);
}

FisherDecomposition qfi_werner(double x, const AccelerationParameter& r, Estimand e) {
    return qfi_decomposed(werner_spectrum(x, r), e);
}

} // namespace qfisher
