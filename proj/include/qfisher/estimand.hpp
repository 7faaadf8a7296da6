#pragma once

#include <array>
#include <string_view>

#include "qfisher/errors.hpp"

namespace qfisher {

// Parameter of the accelerated state with respect to which Fisher
// information is evaluated.  x, y, z are the inertial correlations;
// r is the acceleration parameter itself.
enum class Estimand { X = 0, Y = 1, Z = 2, R = 3 };

inline constexpr std::array<Estimand, 4> all_estimands{Estimand::X, Estimand::Y,
                                                       Estimand::Z, Estimand::R};

inline const char* to_string(Estimand e) {
    switch (e) {
    case Estimand::X: return "x";
    case Estimand::Y: return "y";
    case Estimand::Z: return "z";
    case Estimand::R: return "r";
    }
    return "?";
}

inline Estimand estimand_from_string(std::string_view s) {
    if (s == "x") return Estimand::X;
    if (s == "y") return Estimand::Y;
    if (s == "z") return Estimand::Z;
    if (s == "r") return Estimand::R;
    throw ConfigError("unknown estimand '" + std::string(s) + "' (expected x, y, z or r)");
}

} // namespace qfisher
