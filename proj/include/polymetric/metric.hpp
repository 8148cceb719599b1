#ifndef POLYMETRIC_METRIC_HPP
#define POLYMETRIC_METRIC_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polymetric/point.hpp"

/**
 * @file metric.hpp
 *
 * Metric descriptors on the ambient space, the closed set of metric
 * combinators, and sampling-based checkers for the metric axioms and for
 * the combinator conditions (monotone, zero only at zero, subadditive).
 */

namespace polymetric {

inline constexpr std::uint64_t kDefaultSeed = 20260101;

/**
 * @brief A function F of m nonnegative arguments used to fuse m metrics.
 *
 * Sum, Max and WeightedSum are the shipped variants. Each is monotone in
 * every argument, vanishes only at the zero tuple, and is subadditive, so
 * F(rho_1, ..., rho_m) is again a metric.
 */
class Combinator {
public:
    enum class Kind { Sum, Max, WeightedSum, Custom };

    static Combinator sum();
    static Combinator max();
    /// Throws ValidationError if any weight is non-positive or non-finite.
    static Combinator weighted_sum(std::vector<double> weights);

    /**
     * Arbitrary F, with no guarantee attached. Only meant for negative
     * controls in tests (e.g. min, which vanishes off the zero tuple).
     */
    static Combinator custom(std::string name, std::function<double(std::span<const double>)> fn);

    Kind kind() const noexcept { return kind_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    std::string name() const;

    /// Throws ValidationError for a WeightedSum whose arity differs from `values.size()`.
    double operator()(std::span<const double> values) const;

private:
    Combinator(Kind kind, std::vector<double> weights, std::string name,
               std::function<double(std::span<const double>)> fn);

    Kind kind_;
    std::vector<double> weights_;
    std::string name_;
    std::function<double(std::span<const double>)> fn_;
};

/**
 * @brief Closed recipe for a distance function on the ambient space.
 *
 * Descriptors are immutable values; copies share their structure.
 */
class Metric {
public:
    enum class Kind {
        Euclidean,
        Manhattan,
        Chebyshev,
        Discrete,
        WeightedEuclidean,
        BoundedTransform,
        Combined,
        Custom
    };

    using Function = std::function<double(PointView, PointView)>;

    static Metric euclidean();
    static Metric manhattan();
    static Metric chebyshev();
    static Metric discrete();
    /// sqrt(sum_i (w_i (x_i - y_i))^2); weights strictly positive and finite.
    static Metric weighted_euclidean(std::vector<double> weights);
    /// rho / (1 + rho), always in [0, 1).
    static Metric bounded(Metric inner);
    static Metric combined(Combinator combinator, std::vector<Metric> parts);
    /// Unchecked user function; test-only extension point for broken metrics.
    static Metric custom(std::string name, Function fn);

    Kind kind() const noexcept;

    /// Fixed dimension imposed by the descriptor (weights), if any.
    std::optional<std::size_t> dimension() const;

    const std::vector<double>& weights() const;
    const Metric& inner() const;
    const Combinator& combinator() const;
    const std::vector<Metric>& parts() const;

    /// Human-readable rendering, e.g. "sum(euclidean, bounded(euclidean))".
    std::string describe() const;

    /// Same as eval_metric(*this, x, y).
    double operator()(PointView x, PointView y) const;

    struct Node;

private:
    friend Metric combine(Combinator combinator, std::vector<Metric> parts);

    explicit Metric(std::shared_ptr<const Node> node);

    std::shared_ptr<const Node> node_;
};

/**
 * Distance between `x` and `y` under `metric`.
 *
 * Throws DimensionError when the points disagree in length or do not match
 * the descriptor's fixed dimension.
 */
double eval_metric(const Metric& metric, PointView x, PointView y);

/// Builds Combined(combinator, parts). Throws ValidationError for empty
/// parts or a weight-count mismatch.
Metric combine(Combinator combinator, std::vector<Metric> parts);

struct AxiomReport {
    std::size_t samples_tested = 0;
    std::size_t definiteness_failures = 0;
    std::size_t symmetry_failures = 0;
    std::size_t triangle_failures = 0;
    /// Largest value of rho(x,z) - rho(x,y) - rho(y,z) seen; negative when
    /// every sampled triple satisfied the triangle inequality strictly.
    double worst_triangle_slack = 0.0;

    bool passed() const noexcept
    {
        return definiteness_failures == 0 && symmetry_failures == 0 && triangle_failures == 0;
    }
};

/**
 * Draws `sample_count` seeded triples from the box [-10, 10]^dimension and
 * counts violations of definiteness, symmetry and the triangle inequality.
 *
 * A triangle failure is rho(x,z) > rho(x,y) + rho(y,z) + tol * (1 + rho(x,z)).
 * Definiteness is probed statistically: rho(x,x) > tol, or rho(x,y) <= tol
 * while the largest coordinate gap of (x,y) exceeds 1000 * tol.
 */
AxiomReport check_metric_axioms(const Metric& metric, std::size_t dimension,
                                std::size_t sample_count, std::uint64_t seed = kDefaultSeed,
                                double tolerance = 1e-9);

struct ConditionReport {
    std::size_t samples_tested = 0;
    std::size_t monotonicity_failures = 0;
    std::size_t zero_failures = 0;
    std::size_t subadditivity_failures = 0;

    bool passed() const noexcept
    {
        return monotonicity_failures == 0 && zero_failures == 0 && subadditivity_failures == 0;
    }
};

/**
 * Samples nonnegative `arity`-tuples (with coordinates randomly zeroed) and
 * checks that the combinator is coordinatewise monotone, zero exactly at the
 * zero tuple, and subadditive. The unit tuples and their complements are
 * always probed in addition to the random samples.
 */
ConditionReport check_combinator_conditions(const Combinator& combinator, std::size_t arity,
                                            std::size_t sample_count,
                                            std::uint64_t seed = kDefaultSeed,
                                            double tolerance = 1e-9);

} // namespace polymetric

#endif
