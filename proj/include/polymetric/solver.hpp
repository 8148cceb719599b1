#ifndef POLYMETRIC_SOLVER_HPP
#define POLYMETRIC_SOLVER_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polymetric/error.hpp"
#include "polymetric/map.hpp"
#include "polymetric/multispace.hpp"

/**
 * @file solver.hpp
 *
 * Multi-seed Banach iteration on a multi-metric space.
 *
 * A contraction T sends each component M_i into some M_j with
 * rho_j(Tx, Ty) <= alpha rho_i(x, y), 0 < alpha < 1. Running one orbit per
 * component and merging coincident limits yields every fixed point, and
 * there are between 1 and m of them.
 */

namespace polymetric {

/// Source component -> component that receives its image.
using RoutingTable = std::map<ComponentId, ComponentId>;

struct ContractionEstimate {
    double alpha_hat = 0.0;
    RoutingTable routing;
    std::size_t samples_per_component = 0;
    /// Sample pairs whose images left every region, scattered across
    /// components, or fell outside the map's domain.
    std::size_t violations = 0;

    bool accepted() const noexcept { return violations == 0 && alpha_hat < 1.0; }
};

inline constexpr std::size_t kDefaultSamplesPerComponent = 256;
inline constexpr std::size_t kDefaultMaxIterations = 10000;

/**
 * Samples `samples_per_component` pairs per component, finds the common
 * target component of their images, and records the largest observed ratio
 * rho_j(Tx, Ty) / rho_i(x, y) over pairs with rho_i(x, y) > 1e-12.
 */
ContractionEstimate estimate_contraction(const MultiMetricSpace& space, const ContractionMap& map,
                                         std::size_t samples_per_component =
                                             kDefaultSamplesPerComponent,
                                         std::uint64_t seed = kDefaultSeed);

class NotAContraction : public MathError {
public:
    explicit NotAContraction(ContractionEstimate estimate);
    const ContractionEstimate& estimate() const noexcept { return estimate_; }

private:
    ContractionEstimate estimate_;
};

/// Trace of one seeded orbit.
struct OrbitTrace {
    ComponentId seed_component = 0;
    std::vector<Point> iterates;
    /// steps[n] = distance(x_{n+1}, x_n); NaN where the two are incomparable.
    std::vector<double> steps;
    bool converged = false;
};

class NoConvergence : public MathError {
public:
    explicit NoConvergence(std::vector<OrbitTrace> orbits);
    const std::vector<OrbitTrace>& orbits() const noexcept { return orbits_; }

private:
    std::vector<OrbitTrace> orbits_;
};

struct FixedPoint {
    ComponentId component;
    Point point;
    double residual;
    std::size_t iterations;
    ComponentId seed_component;
};

struct FixedPointReport {
    /// Ordered by seed component id.
    std::vector<FixedPoint> points;
    ContractionEstimate estimate;
    std::vector<OrbitTrace> orbits;
    std::size_t component_count = 0;

    std::size_t count() const noexcept { return points.size(); }
    bool count_within_bounds() const noexcept
    {
        return count() >= 1 && count() <= component_count;
    }
};

struct SolveOptions {
    double tolerance = 1e-10;
    std::size_t max_iterations = kDefaultMaxIterations;
    double dedup_tolerance = 1e-8;
    std::size_t samples_per_component = kDefaultSamplesPerComponent;
    std::uint64_t seed = kDefaultSeed;
};

/**
 * Seeds one orbit at every component's region center and iterates until the
 * step falls below tolerance (1 - alpha) / alpha, which bounds the distance
 * to the limit by `tolerance`. Converged limits closer than the dedup
 * tolerance are merged, keeping the smaller residual.
 *
 * alpha is max(alpha_hat, claimed_alpha). Throws NotAContraction when the
 * estimate is rejected and NoConvergence when no orbit converges.
 */
FixedPointReport solve(const MultiMetricSpace& space, const ContractionMap& map,
                       const SolveOptions& options = {});

/// distance(x, T x). Throws MathError if x and its image share no component.
double verify_fixed_point(const MultiMetricSpace& space, const ContractionMap& map, PointView x);

struct BanachResult {
    Point point;
    double residual;
};

/// solve() on the single-component space (region, metric).
BanachResult banach_solve(const Region& region, const Metric& metric, const ContractionMap& map,
                          double tolerance = 1e-10,
                          std::size_t max_iterations = kDefaultMaxIterations);

} // namespace polymetric

#endif
