#include "qfisher/unruh.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qfisher {

namespace {
constexpr double kQuarterPi = std::numbers::pi / 4.0;
// grid endpoints computed as k*(pi/180) may overshoot pi/4 by a few ulp
constexpr double kBoundarySlack = 1e-12;
} // namespace

AccelerationParameter::AccelerationParameter(double r) : r_(r) {
    if (!(r >= 0.0) || r > kQuarterPi + kBoundarySlack)
        throw DomainError("acceleration parameter r = " + std::to_string(r) +
                          " outside [0, pi/4]");
    if (r_ > kQuarterPi) r_ = kQuarterPi;
    c_ = std::cos(r_);
    s_ = std::sin(r_);
}

AccelerationParameter rindler_parameter(const PhysicalAcceleration& p) {
    if (!(p.a > 0.0)) throw DomainError("proper acceleration must be positive");
    if (!(p.omega > 0.0)) throw DomainError("mode frequency must be positive");
    return AccelerationParameter(std::atan(std::exp(-std::numbers::pi * p.omega / p.a)));
}

DensityMatrix4 accelerate(const XStateCoefficients& coeffs, const AccelerationParameter& r) {
    const double c = r.cos_r();
    const double s = r.sin_r();
    const double c2 = c * c;
    const double s2 = s * s;

    Matrix4 m = Matrix4::Zero();
    m(0, 0) = coeffs.b11 * c2;
    m(1, 1) = coeffs.b22 * c2;
    m(2, 2) = coeffs.b11 * s2 + coeffs.b33;
    m(3, 3) = coeffs.b22 * s2 + coeffs.b44;
    m(0, 3) = coeffs.b14 * c;
    m(3, 0) = coeffs.b14 * c;
    m(1, 2) = coeffs.b23 * c;
    m(2, 1) = coeffs.b23 * c;
    return DensityMatrix4::from_matrix(m);
}

Matrix4 accelerated_state_derivative(const XStateCoefficients& coeffs,
                                     const AccelerationParameter& r, Estimand param) {
    const double c = r.cos_r();
    const double s = r.sin_r();
    const double c2 = c * c;
    const double sin2r = 2.0 * s * c;

    Matrix4 d = Matrix4::Zero();
    switch (param) {
    case Estimand::X:
        // dB23/dx = dB14/dx = 1/4
        d(0, 3) = d(3, 0) = 0.25 * c;
        d(1, 2) = d(2, 1) = 0.25 * c;
        break;
    case Estimand::Y:
        // dB23/dy = 1/4, dB14/dy = -1/4
        d(0, 3) = d(3, 0) = -0.25 * c;
        d(1, 2) = d(2, 1) = 0.25 * c;
        break;
    case Estimand::Z:
        // dB11 = dB44 = 1/4, dB22 = dB33 = -1/4
        d(0, 0) = 0.25 * c2;
        d(1, 1) = -0.25 * c2;
        d(2, 2) = -0.25 * c2; // s^2/4 - 1/4
        d(3, 3) = 0.25 * c2;  // 1/4 - s^2/4
        break;
    case Estimand::R:
        d(0, 0) = -coeffs.b11 * sin2r;
        d(1, 1) = -coeffs.b22 * sin2r;
        d(2, 2) = coeffs.b11 * sin2r;
        d(3, 3) = coeffs.b22 * sin2r;
        d(0, 3) = d(3, 0) = -coeffs.b14 * s;
        d(1, 2) = d(2, 1) = -coeffs.b23 * s;
        break;
    }
    return d;
}

Matrix4 werner_state_derivative(double x, const AccelerationParameter& r, Estimand param) {
    if (x < -1.0 || x > 1.0 / 3.0)
        throw DomainError("Werner parameter x = " + std::to_string(x) + " outside [-1, 1/3]");
    const XStateCoefficients coeffs = XStateCoefficients::from(CorrelationTriple{x, x, x});
    switch (param) {
    case Estimand::X:
        // joint derivative along x = y = z
        return accelerated_state_derivative(coeffs, r, Estimand::X) +
               accelerated_state_derivative(coeffs, r, Estimand::Y) +
               accelerated_state_derivative(coeffs, r, Estimand::Z);
    case Estimand::R:
        return accelerated_state_derivative(coeffs, r, Estimand::R);
    default:
        throw DomainError("Werner states support estimands x (joint) and r only");
    }
}

} // namespace qfisher
