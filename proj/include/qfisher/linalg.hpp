#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace qfisher {

using Complex = std::complex<double>;
using Matrix4 = Eigen::Matrix4cd;
using Vector4 = Eigen::Vector4cd;

// Eigen-decomposition of a 4x4 Hermitian matrix, eigenvalues ascending,
// eigenvectors orthonormal with the phase convention below.
struct EigenDecomposition4 {
    std::array<double, 4> values;
    std::array<Vector4, 4> vectors;
};

// Multiplies v by a unit phase so that its last component of magnitude
// above 1e-12 becomes real and positive.
void fix_phase(Vector4& v);

EigenDecomposition4 hermitian_eigensystem(const Matrix4& h);

double max_abs_entry(const Matrix4& m);
double hermiticity_defect(const Matrix4& m);

// Principal square root of a positive-semidefinite Hermitian matrix;
// eigenvalues below zero are clamped.
Matrix4 psd_sqrt(const Matrix4& h);

} // namespace qfisher
