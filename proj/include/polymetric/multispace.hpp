#ifndef POLYMETRIC_MULTISPACE_HPP
#define POLYMETRIC_MULTISPACE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "polymetric/metric.hpp"
#include "polymetric/point.hpp"
#include "polymetric/random.hpp"

namespace polymetric {

/// 1-based position of a component inside a MultiMetricSpace.
using ComponentId = std::size_t;

/**
 * @brief Closed subset of the ambient space underlying one component.
 */
class Region {
public:
    enum class Kind { Box, Ball, Whole };

    /// Axis-aligned box; requires lower <= upper coordinatewise.
    static Region box(Point lower, Point upper);
    /// Closed ball {x : metric(x, center) <= radius}; requires radius > 0.
    static Region ball(Point center, double radius, Metric metric);
    /// The whole ambient space of the given dimension.
    static Region whole(std::size_t dimension);

    Kind kind() const noexcept { return kind_; }
    std::size_t dimension() const noexcept { return dimension_; }

    const Point& lower() const noexcept { return lower_; }
    const Point& upper() const noexcept { return upper_; }
    double radius() const noexcept { return radius_; }
    const std::optional<Metric>& ball_metric() const noexcept { return metric_; }

    /// Closed membership: boundary points belong to the region.
    bool contains(PointView x) const;

    /// Box midpoint, ball center, or the origin for Whole.
    Point center() const;

    /**
     * Draws a point inside the region. Boxes are sampled uniformly, Whole is
     * sampled from [-10, 10]^d, and balls by shrinking a random offset from
     * the center until it lands inside.
     */
    Point sample(Rng& rng) const;

private:
    Region(Kind kind, std::size_t dimension) : kind_(kind), dimension_(dimension) {}

    Kind kind_;
    std::size_t dimension_;
    Point lower_;
    Point upper_;
    double radius_ = 0.0;
    std::optional<Metric> metric_;
};

struct ComponentSpace {
    ComponentId id;
    Region region;
    Metric metric;
};

/// Result of measuring two points that may not share a component.
class PartialDistance {
public:
    static PartialDistance comparable(double value, ComponentId via) { return {value, via}; }
    static PartialDistance incomparable() { return {}; }

    bool is_comparable() const noexcept { return via_ != 0; }
    explicit operator bool() const noexcept { return is_comparable(); }

    /// Throws MathError when incomparable.
    double value() const;
    ComponentId via() const noexcept { return via_; }

    friend bool operator==(const PartialDistance&, const PartialDistance&) = default;

private:
    PartialDistance() = default;
    PartialDistance(double value, ComponentId via) : value_(value), via_(via) {}

    double value_ = 0.0;
    ComponentId via_ = 0;
};

struct DiskSpec {
    Point center;
    double radius;
};

/**
 * @brief Union of component metric spaces sharing one ambient R^d.
 *
 * Component ids are 1-based and equal to the position in the list.
 */
class MultiMetricSpace {
public:
    /// Validates ids, dimensions and that every metric accepts the dimension.
    MultiMetricSpace(std::size_t dimension, std::vector<ComponentSpace> components);

    /// Convenience: assigns ids 1..m in order.
    static MultiMetricSpace from_parts(std::size_t dimension,
                                       std::vector<std::pair<Region, Metric>> parts);

    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t size() const noexcept { return components_.size(); }
    const std::vector<ComponentSpace>& components() const noexcept { return components_; }

    /// Throws ValidationError for ids outside 1..m.
    const ComponentSpace& component(ComponentId id) const;

    bool contains(ComponentId id, PointView x) const;

    /// Distance under the component's own metric, whether or not the points belong to it.
    double metric_value(ComponentId id, PointView x, PointView y) const;

private:
    std::size_t dimension_;
    std::vector<ComponentSpace> components_;
};

/// Ids (ascending) of every component whose region contains `x`.
std::vector<ComponentId> components_of(const MultiMetricSpace& space, PointView x);

/**
 * Minimum rho_k(x, y) over the components k containing both points, ties
 * going to the lowest id. Incomparable when no component holds both.
 */
PartialDistance distance(const MultiMetricSpace& space, PointView x, PointView y);

/// True iff some component k holds both the center and `y` with
/// rho_k(y, center) strictly below the radius.
bool in_disk(const MultiMetricSpace& space, const DiskSpec& disk, PointView y);

/// Throws ValidationError unless the radius is positive and the center lies in some component.
void check_disk(const MultiMetricSpace& space, const DiskSpec& disk);

/**
 * Disk centered at points.front() that contains every point, or nullopt when
 * no single component holds all of them. The radius is 1 + max rho_k over the
 * shared component k that minimizes that maximum.
 */
std::optional<DiskSpec> bounding_disk(const MultiMetricSpace& space,
                                      const std::vector<Point>& points);

} // namespace polymetric

#endif
