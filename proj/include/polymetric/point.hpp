#ifndef POLYMETRIC_POINT_HPP
#define POLYMETRIC_POINT_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace polymetric {

/// A point of the ambient real vector space shared by every component.
using Point = std::vector<double>;
using PointView = std::span<const double>;

/// Throws DimensionError if `x` does not have `dimension` coordinates and
/// ValidationError if any coordinate is NaN or infinite.
void check_point(PointView x, std::size_t dimension, const char* what = "point");

/// Throws DimensionError when the two spans differ in length.
void check_same_dimension(PointView x, PointView y);

} // namespace polymetric

#endif
