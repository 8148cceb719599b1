#ifndef POLYMETRIC_SEQUENCE_HPP
#define POLYMETRIC_SEQUENCE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polymetric/error.hpp"
#include "polymetric/map.hpp"
#include "polymetric/multispace.hpp"

/**
 * @file sequence.hpp
 *
 * Convergence and Cauchy detection over finite sequence prefixes in a
 * multi-metric space. Every verdict here is a detection on the supplied
 * prefix at the given window and tolerance, never a proof about the
 * infinite sequence.
 */

namespace polymetric {

inline constexpr std::size_t kDefaultTailWindow = 10;
inline constexpr double kDefaultSequenceTolerance = 1e-9;

/// A finite sequence prefix, given point by point or as an orbit of a map.
class SequenceSample {
public:
    /// Requires at least 2 points.
    static SequenceSample explicit_points(std::vector<Point> points);
    /// x_0 = start, x_{n+1} = map(x_n), for n < length. Requires length >= 2.
    static SequenceSample iterated(ContractionMap map, Point start, std::size_t length);

    std::size_t length() const noexcept { return length_; }

    /// The points of the prefix; throws MapUndefined if an orbit leaves the map's domain.
    std::vector<Point> materialize() const;

private:
    SequenceSample(std::vector<Point> points, std::optional<ContractionMap> map, std::size_t length);

    std::vector<Point> points_;
    std::optional<ContractionMap> map_;
    std::size_t length_;
};

struct StabilizationWitness {
    ComponentId component;
    std::size_t index;

    friend bool operator==(const StabilizationWitness&, const StabilizationWitness&) = default;
};

/**
 * Smallest N such that one component holds every x_n with n >= N, choosing
 * the lowest such component. The stabilized tail must contain at least two
 * points; otherwise (or if the last point is in no component) nullopt.
 */
std::optional<StabilizationWitness> eventual_component(const MultiMetricSpace& space,
                                                       std::span<const Point> points);
std::optional<StabilizationWitness> eventual_component(const MultiMetricSpace& space,
                                                       const SequenceSample& seq);

struct ConvergenceReport {
    bool convergent = false;
    std::optional<Point> limit_estimate;
    std::optional<ComponentId> eventual_component;
    std::optional<std::size_t> stabilization_index;
    std::optional<double> final_residual;
};

/**
 * Convergent when an eventual component k exists, the stabilized tail has
 * at least `tail_window` points, and each of the last `tail_window` points
 * is within `tolerance` of the last point under rho_k. The limit estimate is
 * the last point.
 */
ConvergenceReport classify_convergence(const MultiMetricSpace& space,
                                       std::span<const Point> points,
                                       std::size_t tail_window = kDefaultTailWindow,
                                       double tolerance = kDefaultSequenceTolerance);
ConvergenceReport classify_convergence(const MultiMetricSpace& space, const SequenceSample& seq,
                                       std::size_t tail_window = kDefaultTailWindow,
                                       double tolerance = kDefaultSequenceTolerance);

struct CauchyReport {
    bool cauchy = false;
    std::optional<ComponentId> witness_component;
    std::optional<std::size_t> stabilization_index;
    /// Largest pairwise rho_s gap in the tail window; +inf without a witness.
    double max_tail_gap = 0.0;
};

/// Cauchy when an eventual component s exists and every pair among the last
/// `tail_window` points is within `tolerance` under rho_s.
CauchyReport is_cauchy(const MultiMetricSpace& space, std::span<const Point> points,
                       std::size_t tail_window = kDefaultTailWindow,
                       double tolerance = kDefaultSequenceTolerance);
CauchyReport is_cauchy(const MultiMetricSpace& space, const SequenceSample& seq,
                       std::size_t tail_window = kDefaultTailWindow,
                       double tolerance = kDefaultSequenceTolerance);

/// A sequence handed to limit_metric_consistency is not detectably convergent in M_p.
class PreconditionError : public MathError {
public:
    PreconditionError(std::string sequence, const std::string& reason)
        : MathError(sequence + ": " + reason), sequence_(std::move(sequence))
    {
    }
    const std::string& sequence() const noexcept { return sequence_; }

private:
    std::string sequence_;
};

/**
 * |rho_p(x_{L-2}, y_{L-2}) - rho_p(x0, y0)| where x0, y0 are the limit
 * estimates (last points) of the two sequences. The residual shrinks as
 * the prefix grows when both sequences converge inside M_p.
 *
 * Both sequences are classified with the default window and tolerance; a
 * failure, or a limit outside M_p, throws PreconditionError naming "seqX"
 * or "seqY".
 */
double limit_metric_consistency(const MultiMetricSpace& space, std::span<const Point> seq_x,
                                std::span<const Point> seq_y, ComponentId p);
double limit_metric_consistency(const MultiMetricSpace& space, const SequenceSample& seq_x,
                                const SequenceSample& seq_y, ComponentId p);

/// Disk j+1 is not nested in disk j, or radii do not strictly decrease.
class NestingError : public ValidationError {
public:
    NestingError(std::size_t index, const std::string& reason)
        : ValidationError("disks " + std::to_string(index) + " and " + std::to_string(index + 1) +
                          ": " + reason),
          index_(index)
    {
    }
    /// 0-based index of the outer disk of the offending pair.
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/**
 * Estimates the single point common to a nested family of shrinking disks:
 * the last center. Requires at least two disks, strictly decreasing radii,
 * and each center inside its predecessor disk. The returned point lies in
 * every supplied disk; NestingError otherwise.
 */
Point nested_disk_intersection(const MultiMetricSpace& space, const std::vector<DiskSpec>& disks);

} // namespace polymetric

#endif
