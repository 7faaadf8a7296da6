#pragma once

#include "qfisher/errors.hpp"
#include "qfisher/linalg.hpp"

namespace qfisher {

// Bloch correlation parameters (x, y, z) of an inertial two-qubit X-state,
// basis order |00>, |01>, |10>, |11> with the first qubit the accelerated one.
//
// Positivity of the state is equivalent to the two block inequalities
//   |x - y| <= 1 + z   ({|00>,|11>} block)
//   |x + y| <= 1 - z   ({|01>,|10>} block)
// Violations are rejected, never clamped.
struct CorrelationTriple {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool is_valid() const;
    void validate() const; // throws DomainError
};

// Coefficients B_ij of the X-state matrix.  All coherences are real; the
// matrix type stays complex so the SLD engine accepts arbitrary Hermitian
// perturbations.
struct XStateCoefficients {
    double b11, b22, b33, b44; // diagonal
    double b14, b23;           // coherences (b41 = b14, b32 = b23)

    static XStateCoefficients from(const CorrelationTriple& t);
};

// 4x4 density matrix validated on construction: Hermitian within 1e-12,
// unit trace within 1e-12, smallest eigenvalue >= -1e-10.
class DensityMatrix4 {
public:
    static DensityMatrix4 from_matrix(const Matrix4& m); // throws DomainError

    const Matrix4& matrix() const { return m_; }
    Complex operator()(int i, int j) const { return m_(i, j); }

private:
    explicit DensityMatrix4(const Matrix4& m) : m_(m) {}
    Matrix4 m_;
};

DensityMatrix4 build_x_state(const CorrelationTriple& t);

// Werner state: x = y = z, valid for x in [-1, 1/3].
DensityMatrix4 build_werner(double x);

// Wootters concurrence, in [0, 1].  Tiny negative eigenvalues of the
// auxiliary matrix are clamped to zero.
double concurrence(const DensityMatrix4& rho);

} // namespace qfisher
