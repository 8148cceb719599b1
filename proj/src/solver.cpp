#include "polymetric/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace polymetric {

namespace {

constexpr double kMinSampleDistance = 1e-12;

std::string describe_estimate(const ContractionEstimate& e)
{
    std::ostringstream os;
    os << "not a contraction: alpha_hat = " << e.alpha_hat << ", violations = " << e.violations;
    return os.str();
}

std::string describe_orbits(const std::vector<OrbitTrace>& orbits)
{
    std::ostringstream os;
    os << "no convergence:";
    for (const auto& o : orbits) {
        os << " [seed M" << o.seed_component << ": " << o.steps.size() << " iterations";
        if (!o.steps.empty()) {
            os << ", last step " << o.steps.back();
        }
        os << "]";
    }
    return os.str();
}

} // namespace

NotAContraction::NotAContraction(ContractionEstimate estimate)
    : MathError(describe_estimate(estimate)), estimate_(std::move(estimate))
{
}

NoConvergence::NoConvergence(std::vector<OrbitTrace> orbits)
    : MathError(describe_orbits(orbits)), orbits_(std::move(orbits))
{
}

ContractionEstimate estimate_contraction(const MultiMetricSpace& space, const ContractionMap& map,
                                         std::size_t samples_per_component, std::uint64_t seed)
{
    if (samples_per_component < 2) {
        throw ValidationError("estimate_contraction: samples_per_component must be at least 2");
    }
    if (map.dimension() != space.dimension()) {
        throw DimensionError(space.dimension(), map.dimension(), "map");
    }

    struct Sample {
        Point x, y, tx, ty;
    };

    Rng rng(seed);
    ContractionEstimate estimate;
    estimate.samples_per_component = samples_per_component;

    for (const auto& source : space.components()) {
        std::vector<Sample> samples;
        std::size_t undefined = 0;
        for (std::size_t s = 0; s < samples_per_component; ++s) {
            Point x = source.region.sample(rng);
            Point y = source.region.sample(rng);
            try {
                Point tx = map(x);
                Point ty = map(y);
                samples.push_back({std::move(x), std::move(y), std::move(tx), std::move(ty)});
            } catch (const MapUndefined&) {
                ++undefined;
            }
        }

        // Target: the component holding both images of the most pairs.
        std::vector<std::size_t> hits(space.size() + 1, 0);
        for (const auto& s : samples) {
            for (const auto& c : space.components()) {
                if (c.region.contains(s.tx) && c.region.contains(s.ty)) {
                    ++hits[c.id];
                }
            }
        }
        const auto best = std::max_element(hits.begin() + 1, hits.end());
        const auto target = static_cast<ComponentId>(best - hits.begin());
        estimate.violations += undefined + (samples.size() - *best);
        if (*best == 0) {
            continue;
        }
        estimate.routing[source.id] = target;

        const auto& target_space = space.component(target);
        for (const auto& s : samples) {
            if (!target_space.region.contains(s.tx) || !target_space.region.contains(s.ty)) {
                continue;
            }
            const double before = source.metric(s.x, s.y);
            if (before <= kMinSampleDistance) {
                continue;
            }
            const double after = target_space.metric(s.tx, s.ty);
            estimate.alpha_hat = std::max(estimate.alpha_hat, after / before);
        }
    }
    return estimate;
}

double verify_fixed_point(const MultiMetricSpace& space, const ContractionMap& map, PointView x)
{
    const Point image = map(x);
    const auto d = distance(space, x, image);
    if (!d) {
        throw MathError("residual incomparable: point and image share no component");
    }
    return d.value();
}

FixedPointReport solve(const MultiMetricSpace& space, const ContractionMap& map,
                       const SolveOptions& options)
{
    if (!(options.tolerance > 0.0) || !(options.dedup_tolerance > 0.0)) {
        throw ValidationError("solve: tolerance and dedup_tolerance must be positive");
    }
    if (options.max_iterations < 1) {
        throw ValidationError("solve: max_iterations must be at least 1");
    }

    FixedPointReport report;
    report.component_count = space.size();
    report.estimate =
        estimate_contraction(space, map, options.samples_per_component, options.seed);
    if (!report.estimate.accepted()) {
        throw NotAContraction(report.estimate);
    }

    const double alpha = std::max(report.estimate.alpha_hat, map.claimed_alpha().value_or(0.0));
    const double step_threshold = options.tolerance * (1.0 - alpha) / std::max(alpha, 1e-6);

    std::vector<FixedPoint> limits;
    for (const auto& component : space.components()) {
        OrbitTrace orbit;
        orbit.seed_component = component.id;
        orbit.iterates.push_back(component.region.center());
        try {
            for (std::size_t n = 1; n <= options.max_iterations; ++n) {
                Point next = map(orbit.iterates.back());
                const auto step = distance(space, next, orbit.iterates.back());
                orbit.steps.push_back(step ? step.value()
                                           : std::numeric_limits<double>::quiet_NaN());
                orbit.iterates.push_back(std::move(next));
                if (!step || step.value() > step_threshold) {
                    continue;
                }
                // The geometric tail bound relies on an estimated alpha, so
                // the residual is confirmed directly before accepting.
                const Point& x = orbit.iterates.back();
                const auto residual = distance(space, x, map(x));
                if (residual && residual.value() <= options.tolerance) {
                    orbit.converged = true;
                    limits.push_back({residual.via(), x, residual.value(), n, component.id});
                    break;
                }
            }
        } catch (const MapUndefined&) {
            orbit.converged = false;
        }
        report.orbits.push_back(std::move(orbit));
    }

    if (limits.empty()) {
        throw NoConvergence(report.orbits);
    }

    for (auto& candidate : limits) {
        auto duplicate = std::find_if(report.points.begin(), report.points.end(),
                                      [&](const FixedPoint& kept) {
                                          const auto d = distance(space, kept.point, candidate.point);
                                          return d && d.value() <= options.dedup_tolerance;
                                      });
        if (duplicate == report.points.end()) {
            report.points.push_back(std::move(candidate));
        } else if (candidate.residual < duplicate->residual) {
            *duplicate = std::move(candidate);
        }
    }
    std::sort(report.points.begin(), report.points.end(),
              [](const FixedPoint& a, const FixedPoint& b) {
                  return a.seed_component < b.seed_component;
              });

    if (!report.count_within_bounds()) {
        throw MathError("fixed point count " + std::to_string(report.count()) +
                        " outside [1, " + std::to_string(report.component_count) + "]");
    }
    return report;
}

BanachResult banach_solve(const Region& region, const Metric& metric, const ContractionMap& map,
                          double tolerance, std::size_t max_iterations)
{
    const auto space = MultiMetricSpace::from_parts(region.dimension(), {{region, metric}});
    SolveOptions options;
    options.tolerance = tolerance;
    options.max_iterations = max_iterations;
    const auto report = solve(space, map, options);
    return {report.points.front().point, report.points.front().residual};
}

} // namespace polymetric
