#pragma once

#include <cstdint>

namespace qfisher::detail {

// SplitMix64 with an explicit uint64 -> double mapping, so seeded runs are
// reproducible across standard libraries (std::uniform_real_distribution is
// implementation-defined).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double sign() { return (next() & 1ull) ? 1.0 : -1.0; }

private:
    std::uint64_t state_;
};

} // namespace qfisher::detail
