#ifndef POLYMETRIC_TESTS_ORACLES_HPP
#define POLYMETRIC_TESTS_ORACLES_HPP

// Independent reference computations for the test suites. Nothing here calls
// into the solver; the maps are plain closures.

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cmath>
#include <cstddef>
#include <functional>

namespace polymetric::oracle {

/// Fixed point of cos, frozen from 200 iterations of cos from 0.5 in
/// 50-digit decimal arithmetic (see cos_fixed_point_high_precision).
inline constexpr double kCosFixedPoint = 0.73908513321516064166;

inline double cos_fixed_point_high_precision()
{
    using Real = boost::multiprecision::cpp_dec_float_50;
    Real x = 0.5;
    for (int i = 0; i < 200; ++i) {
        x = cos(x);
    }
    return static_cast<double>(x);
}

struct GridMinimum {
    double x;
    double cell;
};

/// argmin over `points` equally spaced samples of [lo, hi] of |f(x) - x|.
inline GridMinimum grid_fixed_point(const std::function<double(double)>& f, double lo, double hi,
                                    std::size_t points = 100000)
{
    const double cell = (hi - lo) / static_cast<double>(points - 1);
    double best_x = lo;
    double best = std::abs(f(lo) - lo);
    for (std::size_t i = 1; i < points; ++i) {
        const double x = lo + cell * static_cast<double>(i);
        const double gap = std::abs(f(x) - x);
        if (gap < best) {
            best = gap;
            best_x = x;
        }
    }
    return {best_x, cell};
}

} // namespace polymetric::oracle

#endif
