#include "polymetric/multispace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "polymetric/error.hpp"

namespace polymetric {

// ---------------------------------------------------------------------------
// Region

Region Region::box(Point lower, Point upper)
{
    if (lower.empty()) {
        throw ValidationError("box: dimension must be at least 1");
    }
    check_point(lower, lower.size(), "box lower corner");
    check_point(upper, lower.size(), "box upper corner");
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (lower[i] > upper[i]) {
            throw ValidationError("box: lower > upper on coordinate " + std::to_string(i));
        }
    }
    Region r(Kind::Box, lower.size());
    r.lower_ = std::move(lower);
    r.upper_ = std::move(upper);
    return r;
}

Region Region::ball(Point center, double radius, Metric metric)
{
    if (center.empty()) {
        throw ValidationError("ball: dimension must be at least 1");
    }
    check_point(center, center.size(), "ball center");
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw ValidationError("ball: radius must be positive and finite");
    }
    if (auto d = metric.dimension(); d && *d != center.size()) {
        throw DimensionError(center.size(), *d, "ball metric");
    }
    Region r(Kind::Ball, center.size());
    r.lower_ = std::move(center);
    r.radius_ = radius;
    r.metric_ = std::move(metric);
    return r;
}

Region Region::whole(std::size_t dimension)
{
    if (dimension < 1) {
        throw ValidationError("whole: dimension must be at least 1");
    }
    return Region(Kind::Whole, dimension);
}

bool Region::contains(PointView x) const
{
    if (x.size() != dimension_) {
        throw DimensionError(dimension_, x.size());
    }
    switch (kind_) {
    case Kind::Box:
        for (std::size_t i = 0; i < dimension_; ++i) {
            if (x[i] < lower_[i] || x[i] > upper_[i]) {
                return false;
            }
        }
        return true;
    case Kind::Ball:
        return (*metric_)(x, lower_) <= radius_;
    case Kind::Whole:
        return true;
    }
    return false;
}

Point Region::center() const
{
    switch (kind_) {
    case Kind::Box: {
        Point c(dimension_);
        for (std::size_t i = 0; i < dimension_; ++i) {
            c[i] = lower_[i] + 0.5 * (upper_[i] - lower_[i]);
        }
        return c;
    }
    case Kind::Ball:
        return lower_;
    case Kind::Whole:
        break;
    }
    return Point(dimension_, 0.0);
}

Point Region::sample(Rng& rng) const
{
    Point p(dimension_);
    switch (kind_) {
    case Kind::Box:
        for (std::size_t i = 0; i < dimension_; ++i) {
            p[i] = rng.uniform(lower_[i], upper_[i]);
        }
        return p;
    case Kind::Whole:
        for (auto& c : p) {
            c = rng.uniform(-10.0, 10.0);
        }
        return p;
    case Kind::Ball: {
        Point offset(dimension_);
        for (auto& c : offset) {
            c = rng.uniform(-radius_, radius_);
        }
        // The center is always inside, so halving the offset terminates for
        // any metric that vanishes continuously at the center; give up after
        // 64 halvings and fall back to the center itself.
        for (int attempt = 0; attempt < 64; ++attempt) {
            for (std::size_t i = 0; i < dimension_; ++i) {
                p[i] = lower_[i] + offset[i];
            }
            if (contains(p)) {
                return p;
            }
            for (auto& c : offset) {
                c *= 0.5;
            }
        }
        return lower_;
    }
    }
    return p;
}

// ---------------------------------------------------------------------------
// PartialDistance

double PartialDistance::value() const
{
    if (!is_comparable()) {
        throw MathError("distance is incomparable: the points share no component");
    }
    return value_;
}

// ---------------------------------------------------------------------------
// MultiMetricSpace

MultiMetricSpace::MultiMetricSpace(std::size_t dimension, std::vector<ComponentSpace> components)
    : dimension_(dimension), components_(std::move(components))
{
    if (dimension_ < 1) {
        throw ValidationError("space: dimension must be at least 1");
    }
    if (components_.empty()) {
        throw ValidationError("space: at least one component is required");
    }
    for (std::size_t i = 0; i < components_.size(); ++i) {
        const auto& c = components_[i];
        const std::string where = "component " + std::to_string(i + 1);
        if (c.id != i + 1) {
            throw ValidationError(where + ": id " + std::to_string(c.id) +
                                  " does not match its position");
        }
        if (c.region.dimension() != dimension_) {
            throw DimensionError(dimension_, c.region.dimension(), where + " region");
        }
        if (auto d = c.metric.dimension(); d && *d != dimension_) {
            throw DimensionError(dimension_, *d, where + " metric");
        }
    }
}

MultiMetricSpace MultiMetricSpace::from_parts(std::size_t dimension,
                                              std::vector<std::pair<Region, Metric>> parts)
{
    std::vector<ComponentSpace> components;
    components.reserve(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        components.push_back({i + 1, std::move(parts[i].first), std::move(parts[i].second)});
    }
    return MultiMetricSpace(dimension, std::move(components));
}

const ComponentSpace& MultiMetricSpace::component(ComponentId id) const
{
    if (id < 1 || id > components_.size()) {
        throw ValidationError("component id " + std::to_string(id) + " out of range 1.." +
                              std::to_string(components_.size()));
    }
    return components_[id - 1];
}

bool MultiMetricSpace::contains(ComponentId id, PointView x) const
{
    return component(id).region.contains(x);
}

double MultiMetricSpace::metric_value(ComponentId id, PointView x, PointView y) const
{
    return component(id).metric(x, y);
}

// ---------------------------------------------------------------------------
// Operations

std::vector<ComponentId> components_of(const MultiMetricSpace& space, PointView x)
{
    check_point(x, space.dimension());
    std::vector<ComponentId> ids;
    for (const auto& c : space.components()) {
        if (c.region.contains(x)) {
            ids.push_back(c.id);
        }
    }
    return ids;
}

PartialDistance distance(const MultiMetricSpace& space, PointView x, PointView y)
{
    check_point(x, space.dimension());
    check_point(y, space.dimension(), "second point");
    std::optional<PartialDistance> best;
    for (const auto& c : space.components()) {
        if (!c.region.contains(x) || !c.region.contains(y)) {
            continue;
        }
        const double value = c.metric(x, y);
        if (!best || value < best->value()) {
            best = PartialDistance::comparable(value, c.id);
        }
    }
    return best.value_or(PartialDistance::incomparable());
}

void check_disk(const MultiMetricSpace& space, const DiskSpec& disk)
{
    check_point(disk.center, space.dimension(), "disk center");
    if (!(disk.radius > 0.0) || !std::isfinite(disk.radius)) {
        throw ValidationError("disk radius must be positive and finite");
    }
    if (components_of(space, disk.center).empty()) {
        throw ValidationError("disk center lies in no component");
    }
}

bool in_disk(const MultiMetricSpace& space, const DiskSpec& disk, PointView y)
{
    check_point(y, space.dimension());
    check_point(disk.center, space.dimension(), "disk center");
    for (const auto& c : space.components()) {
        if (c.region.contains(disk.center) && c.region.contains(y) &&
            c.metric(y, disk.center) < disk.radius) {
            return true;
        }
    }
    return false;
}

std::optional<DiskSpec> bounding_disk(const MultiMetricSpace& space,
                                      const std::vector<Point>& points)
{
    if (points.empty()) {
        throw ValidationError("bounding_disk: points must be nonempty");
    }
    const Point& first = points.front();
    std::optional<double> best;
    for (const auto& c : space.components()) {
        if (!c.region.contains(first)) {
            continue;
        }
        double worst = 0.0;
        bool shared = true;
        for (const auto& p : points) {
            if (!c.region.contains(p)) {
                shared = false;
                break;
            }
            worst = std::max(worst, c.metric(first, p));
        }
        if (shared && (!best || worst < *best)) {
            best = worst;
        }
    }
    if (!best) {
        return std::nullopt;
    }
    return DiskSpec{first, 1.0 + *best};
}

} // namespace polymetric
