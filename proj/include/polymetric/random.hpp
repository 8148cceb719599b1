#ifndef POLYMETRIC_RANDOM_HPP
#define POLYMETRIC_RANDOM_HPP

#include <cstdint>
#include <random>

namespace polymetric {

/// Seeded generator with a platform-independent real mapping.
/// std::mt19937_64's output sequence is fixed by the standard; the
/// distribution classes are not, so reals are built from the raw bits here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    bool coin(double p_true) { return unit() < p_true; }

    /// Uniform integer in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + engine_() % (hi - lo + 1); }

private:
    std::mt19937_64 engine_;
};

} // namespace polymetric

#endif
