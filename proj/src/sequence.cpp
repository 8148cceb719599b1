#include "polymetric/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polymetric {

SequenceSample::SequenceSample(std::vector<Point> points, std::optional<ContractionMap> map,
                               std::size_t length)
    : points_(std::move(points)), map_(std::move(map)), length_(length)
{
    if (length_ < 2) {
        throw ValidationError("sequence: length must be at least 2");
    }
}

SequenceSample SequenceSample::explicit_points(std::vector<Point> points)
{
    if (points.size() >= 2) {
        for (const auto& p : points) {
            check_point(p, points.front().size(), "sequence point");
        }
    }
    const std::size_t n = points.size();
    return SequenceSample(std::move(points), std::nullopt, n);
}

SequenceSample SequenceSample::iterated(ContractionMap map, Point start, std::size_t length)
{
    check_point(start, map.dimension(), "sequence start");
    std::vector<Point> seed{std::move(start)};
    return SequenceSample(std::move(seed), std::move(map), length);
}

std::vector<Point> SequenceSample::materialize() const
{
    if (!map_) {
        return points_;
    }
    std::vector<Point> out;
    out.reserve(length_);
    out.push_back(points_.front());
    while (out.size() < length_) {
        out.push_back((*map_)(out.back()));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::optional<StabilizationWitness> eventual_component(const MultiMetricSpace& space,
                                                       std::span<const Point> points)
{
    if (points.size() < 2) {
        throw ValidationError("eventual_component: sequence length must be at least 2");
    }
    // Walk backwards, intersecting memberships until the intersection empties.
    std::vector<ComponentId> common = components_of(space, points.back());
    std::size_t start = points.size() - 1;
    while (start > 0 && !common.empty()) {
        const auto here = components_of(space, points[start - 1]);
        std::vector<ComponentId> next;
        std::set_intersection(common.begin(), common.end(), here.begin(), here.end(),
                              std::back_inserter(next));
        if (next.empty()) {
            break;
        }
        common = std::move(next);
        --start;
    }
    if (common.empty() || points.size() - start < 2) {
        return std::nullopt;
    }
    return StabilizationWitness{common.front(), start};
}

std::optional<StabilizationWitness> eventual_component(const MultiMetricSpace& space,
                                                       const SequenceSample& seq)
{
    const auto points = seq.materialize();
    return eventual_component(space, points);
}

namespace {

void check_detection_args(std::size_t tail_window, double tolerance)
{
    if (tail_window < 2) {
        throw ValidationError("tail_window must be at least 2");
    }
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
        throw ValidationError("tolerance must be positive and finite");
    }
}

/// Witness whose stabilized tail covers the whole window, if any.
std::optional<StabilizationWitness> windowed_witness(const MultiMetricSpace& space,
                                                     std::span<const Point> points,
                                                     std::size_t tail_window)
{
    if (points.size() < tail_window) {
        return std::nullopt;
    }
    auto witness = eventual_component(space, points);
    if (!witness || points.size() - witness->index < tail_window) {
        return std::nullopt;
    }
    return witness;
}

} // namespace

ConvergenceReport classify_convergence(const MultiMetricSpace& space,
                                       std::span<const Point> points, std::size_t tail_window,
                                       double tolerance)
{
    check_detection_args(tail_window, tolerance);
    ConvergenceReport report;
    const auto witness = windowed_witness(space, points, tail_window);
    if (!witness) {
        return report;
    }
    const auto& metric = space.component(witness->component).metric;
    const Point& last = points.back();
    double residual = 0.0;
    for (std::size_t n = points.size() - tail_window; n < points.size(); ++n) {
        residual = std::max(residual, metric(points[n], last));
    }
    if (residual > tolerance) {
        return report;
    }
    report.convergent = true;
    report.limit_estimate = last;
    report.eventual_component = witness->component;
    report.stabilization_index = witness->index;
    report.final_residual = residual;
    return report;
}

ConvergenceReport classify_convergence(const MultiMetricSpace& space, const SequenceSample& seq,
                                       std::size_t tail_window, double tolerance)
{
    const auto points = seq.materialize();
    return classify_convergence(space, points, tail_window, tolerance);
}

CauchyReport is_cauchy(const MultiMetricSpace& space, std::span<const Point> points,
                       std::size_t tail_window, double tolerance)
{
    check_detection_args(tail_window, tolerance);
    CauchyReport report;
    report.max_tail_gap = std::numeric_limits<double>::infinity();
    const auto witness = windowed_witness(space, points, tail_window);
    if (!witness) {
        return report;
    }
    const auto& metric = space.component(witness->component).metric;
    const std::size_t begin = points.size() - tail_window;
    double gap = 0.0;
    for (std::size_t i = begin; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            gap = std::max(gap, metric(points[i], points[j]));
        }
    }
    report.max_tail_gap = gap;
    report.witness_component = witness->component;
    report.stabilization_index = witness->index;
    report.cauchy = gap <= tolerance;
    return report;
}

CauchyReport is_cauchy(const MultiMetricSpace& space, const SequenceSample& seq,
                       std::size_t tail_window, double tolerance)
{
    const auto points = seq.materialize();
    return is_cauchy(space, points, tail_window, tolerance);
}

double limit_metric_consistency(const MultiMetricSpace& space, std::span<const Point> seq_x,
                                std::span<const Point> seq_y, ComponentId p)
{
    const auto& component = space.component(p);
    auto limit_of = [&](std::span<const Point> seq, const char* name) {
        const auto report = classify_convergence(space, seq);
        if (!report.convergent) {
            throw PreconditionError(name, "not detected as convergent");
        }
        if (!component.region.contains(*report.limit_estimate)) {
            throw PreconditionError(name, "limit estimate lies outside component " +
                                              std::to_string(p));
        }
        return *report.limit_estimate;
    };
    const Point x0 = limit_of(seq_x, "seqX");
    const Point y0 = limit_of(seq_y, "seqY");
    if (seq_x.size() != seq_y.size()) {
        throw ValidationError("limit_metric_consistency: sequences differ in length");
    }
    const std::size_t n = seq_x.size() - 2;
    return std::abs(component.metric(seq_x[n], seq_y[n]) - component.metric(x0, y0));
}

double limit_metric_consistency(const MultiMetricSpace& space, const SequenceSample& seq_x,
                                const SequenceSample& seq_y, ComponentId p)
{
    const auto xs = seq_x.materialize();
    const auto ys = seq_y.materialize();
    return limit_metric_consistency(space, xs, ys, p);
}

Point nested_disk_intersection(const MultiMetricSpace& space, const std::vector<DiskSpec>& disks)
{
    if (disks.size() < 2) {
        throw ValidationError("nested_disk_intersection: at least two disks are required");
    }
    for (const auto& disk : disks) {
        check_disk(space, disk);
    }
    for (std::size_t j = 0; j + 1 < disks.size(); ++j) {
        if (!(disks[j + 1].radius < disks[j].radius)) {
            throw NestingError(j, "radii are not strictly decreasing");
        }
        if (!in_disk(space, disks[j], disks[j + 1].center)) {
            throw NestingError(j, "inner center lies outside the outer disk");
        }
    }
    const Point& estimate = disks.back().center;
    for (std::size_t j = 0; j < disks.size(); ++j) {
        if (!in_disk(space, disks[j], estimate)) {
            throw NestingError(j, "intersection estimate escapes this disk");
        }
    }
    return estimate;
}

} // namespace polymetric
