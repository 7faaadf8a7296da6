#pragma once

#include "qfisher/errors.hpp"
#include "qfisher/estimand.hpp"
#include "qfisher/states.hpp"

namespace qfisher {

// Unruh mixing angle r in [0, pi/4]; r = 0 is inertial, r = pi/4 the
// infinite-acceleration limit.  cos r and sin r are cached.
class AccelerationParameter {
public:
    explicit AccelerationParameter(double r); // throws DomainError outside [0, pi/4]

    double r() const { return r_; }
    double cos_r() const { return c_; }
    double sin_r() const { return s_; }

private:
    double r_, c_, s_;
};

// Proper acceleration a and mode frequency omega, in units with c = 1 so
// that pi*omega/a is the dimensionless Rindler exponent.
struct PhysicalAcceleration {
    double a = 1.0;
    double omega = 1.0;
};

// r = arctan(exp(-pi * omega / a)), in (0, pi/4).
AccelerationParameter rindler_parameter(const PhysicalAcceleration& p);

// Single-observer Unruh channel: the closed-form entry map obtained by
// transforming the accelerated qubit's modes and tracing out region II.
DensityMatrix4 accelerate(const XStateCoefficients& coeffs, const AccelerationParameter& r);

// Exact entrywise derivative of the accelerated state with respect to the
// estimand.  Hermitian and traceless for every estimand.
Matrix4 accelerated_state_derivative(const XStateCoefficients& coeffs,
                                     const AccelerationParameter& r, Estimand param);

// Derivative of the accelerated Werner state.  Estimand::X means the joint
// derivative along x = y = z (the Werner family parameter); Estimand::R the
// usual one.  Other estimands are rejected.
Matrix4 werner_state_derivative(double x, const AccelerationParameter& r, Estimand param);

} // namespace qfisher
