#include "polymetric/point.hpp"

#include <cmath>
#include <string>

#include "polymetric/error.hpp"

namespace polymetric {

void check_point(PointView x, std::size_t dimension, const char* what)
{
    if (x.size() != dimension) {
        throw DimensionError(dimension, x.size(), what);
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) {
            throw ValidationError(std::string(what) + ": coordinate " + std::to_string(i) +
                                  " is not finite");
        }
    }
}

void check_same_dimension(PointView x, PointView y)
{
    if (x.size() != y.size()) {
        throw DimensionError(x.size(), y.size(), "second point");
    }
}

} // namespace polymetric
