#include "qfisher/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qfisher {

void fix_phase(Vector4& v) {
    for (int k = 3; k >= 0; --k) {
        const double mag = std::abs(v(k));
        if (mag > 1e-12) {
            v *= std::conj(v(k)) / mag;
            // kill the residual imaginary part of the anchor component
            v(k) = Complex(std::abs(v(k)), 0.0);
            return;
        }
    }
}

EigenDecomposition4 hermitian_eigensystem(const Matrix4& h) {
    Eigen::SelfAdjointEigenSolver<Matrix4> solver;
    solver.compute(h);
    EigenDecomposition4 out;
    for (int i = 0; i < 4; ++i) {
        out.values[i] = solver.eigenvalues()(i);
        out.vectors[i] = solver.eigenvectors().col(i);
        fix_phase(out.vectors[i]);
    }
    return out;
}

double max_abs_entry(const Matrix4& m) {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(m(i, j)));
    return worst;
}

double hermiticity_defect(const Matrix4& m) {
    return max_abs_entry(m - m.adjoint().eval());
}

Matrix4 psd_sqrt(const Matrix4& h) {
    const EigenDecomposition4 eig = hermitian_eigensystem(h);
    Matrix4 root = Matrix4::Zero();
    for (int i = 0; i < 4; ++i) {
        const double lam = std::max(eig.values[i], 0.0);
        root += std::sqrt(lam) * (eig.vectors[i] * eig.vectors[i].adjoint());
    }
    return root;
}

} // namespace qfisher
