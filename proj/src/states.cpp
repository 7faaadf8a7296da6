#include "qfisher/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qfisher {

namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kTraceTolerance = 1e-12;
constexpr double kEigenvalueFloor = -1e-10;

std::string triple_text(const CorrelationTriple& t) {
    std::ostringstream os;
    os << "(" << t.x << ", " << t.y << ", " << t.z << ")";
    return os.str();
}

} // namespace

bool CorrelationTriple::is_valid() const {
    return std::abs(x - y) <= 1.0 + z && std::abs(x + y) <= 1.0 - z;
}

void CorrelationTriple::validate() const {
    if (std::abs(x - y) > 1.0 + z)
        throw DomainError("correlation triple " + triple_text(*this) +
                          " violates |x - y| <= 1 + z; state not positive-semidefinite");
    if (std::abs(x + y) > 1.0 - z)
        throw DomainError("correlation triple " + triple_text(*this) +
                          " violates |x + y| <= 1 - z; state not positive-semidefinite");
}

XStateCoefficients XStateCoefficients::from(const CorrelationTriple& t) {
    t.validate();
    XStateCoefficients c{};
    c.b11 = 0.25 * (1.0 + t.z);
    c.b44 = c.b11;
    c.b22 = 0.25 * (1.0 - t.z);
    c.b33 = c.b22;
    c.b23 = 0.25 * (t.x + t.y);
    c.b14 = 0.25 * (t.x - t.y);
    return c;
}

DensityMatrix4 DensityMatrix4::from_matrix(const Matrix4& m) {
    if (hermiticity_defect(m) > kHermitianTolerance)
        throw DomainError("density matrix is not Hermitian within 1e-12");
    const double trace = m.trace().real();
    if (std::abs(trace - 1.0) > kTraceTolerance || std::abs(m.trace().imag()) > kTraceTolerance)
        throw DomainError("density matrix trace differs from 1 beyond 1e-12");
    const EigenDecomposition4 eig = hermitian_eigensystem(m);
    if (eig.values[0] < kEigenvalueFloor)
        throw DomainError("density matrix has eigenvalue " + std::to_string(eig.values[0]) +
                          " below -1e-10");
    return DensityMatrix4(m);
}

DensityMatrix4 build_x_state(const CorrelationTriple& t) {
    const XStateCoefficients c = XStateCoefficients::from(t);
    Matrix4 m = Matrix4::Zero();
    m(0, 0) = c.b11;
    m(1, 1) = c.b22;
    m(2, 2) = c.b33;
    m(3, 3) = c.b44;
    m(0, 3) = c.b14;
    m(3, 0) = c.b14;
    m(1, 2) = c.b23;
    m(2, 1) = c.b23;
    return DensityMatrix4::from_matrix(m);
}

DensityMatrix4 build_werner(double x) {
    if (x < -1.0 || x > 1.0 / 3.0)
        throw DomainError("Werner parameter x = " + std::to_string(x) +
                          " outside [-1, 1/3]");
    return build_x_state(CorrelationTriple{x, x, x});
}

double concurrence(const DensityMatrix4& rho) {
    // spin-flipped state: (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y)
    Matrix4 yy = Matrix4::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Matrix4 rho_tilde = yy * rho.matrix().conjugate() * yy;

    // eigenvalues of rho * rho_tilde via the Hermitian form sqrt(rho) rho_tilde sqrt(rho)
    const Matrix4 root = psd_sqrt(rho.matrix());
    Matrix4 m = root * rho_tilde * root;
    m = 0.5 * (m + m.adjoint().eval()); // symmetrize away rounding noise

    EigenDecomposition4 eig = hermitian_eigensystem(m);
    std::array<double, 4> s{};
    for (int i = 0; i < 4; ++i) s[i] = std::sqrt(std::max(eig.values[i], 0.0));
    std::sort(s.begin(), s.end(), std::greater<>());
    return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

} // namespace qfisher
