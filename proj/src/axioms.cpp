#include <algorithm>
#include <cmath>
#include <limits>

#include "polymetric/error.hpp"
#include "polymetric/metric.hpp"
#include "polymetric/random.hpp"

namespace polymetric {

namespace {

constexpr double kBoxHalfWidth = 10.0;

Point random_point(Rng& rng, std::size_t dimension)
{
    Point p(dimension);
    for (auto& c : p) {
        c = rng.uniform(-kBoxHalfWidth, kBoxHalfWidth);
    }
    return p;
}

double max_gap(PointView x, PointView y)
{
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        m = std::max(m, std::abs(x[i] - y[i]));
    }
    return m;
}

void check_tolerance(double tolerance)
{
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
        throw ValidationError("tolerance must be positive and finite");
    }
}

} // namespace

AxiomReport check_metric_axioms(const Metric& metric, std::size_t dimension,
                                std::size_t sample_count, std::uint64_t seed, double tolerance)
{
    if (sample_count < 1) {
        throw ValidationError("check_metric_axioms: sample_count must be at least 1");
    }
    if (dimension < 1) {
        throw ValidationError("check_metric_axioms: dimension must be at least 1");
    }
    check_tolerance(tolerance);

    Rng rng(seed);
    AxiomReport report;
    report.worst_triangle_slack = -std::numeric_limits<double>::infinity();

    for (std::size_t s = 0; s < sample_count; ++s) {
        const Point x = random_point(rng, dimension);
        const Point y = random_point(rng, dimension);
        const Point z = random_point(rng, dimension);

        const double xy = metric(x, y);
        const double yx = metric(y, x);
        const double yz = metric(y, z);
        const double xz = metric(x, z);
        const double xx = metric(x, x);

        // Also probe a pair differing in one coordinate only.
        Point w = x;
        const auto k = static_cast<std::size_t>(rng.between(0, dimension - 1));
        w[k] = y[k];
        const double xw = metric(x, w);

        if (xx > tolerance || (xy <= tolerance && max_gap(x, y) > 1000.0 * tolerance) ||
            (xw <= tolerance && max_gap(x, w) > 1000.0 * tolerance)) {
            ++report.definiteness_failures;
        }
        if (std::abs(xy - yx) > tolerance) {
            ++report.symmetry_failures;
        }
        const double slack = xz - (xy + yz);
        report.worst_triangle_slack = std::max(report.worst_triangle_slack, slack);
        if (slack > tolerance * (1.0 + xz)) {
            ++report.triangle_failures;
        }
        ++report.samples_tested;
    }
    return report;
}

ConditionReport check_combinator_conditions(const Combinator& combinator, std::size_t arity,
                                            std::size_t sample_count, std::uint64_t seed,
                                            double tolerance)
{
    if (arity < 1) {
        throw ValidationError("check_combinator_conditions: arity must be at least 1");
    }
    check_tolerance(tolerance);

    ConditionReport report;
    const std::vector<double> zero(arity, 0.0);

    auto is_zero = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double c) { return c == 0.0; });
    };

    auto probe = [&](const std::vector<double>& x, const std::vector<double>& y) {
        std::vector<double> sum(arity);
        for (std::size_t i = 0; i < arity; ++i) {
            sum[i] = x[i] + y[i];
        }
        const double fx = combinator(x);
        const double fy = combinator(y);
        const double fsum = combinator(sum);

        // x <= x + y coordinatewise because y >= 0.
        if (fx > fsum + tolerance * (1.0 + std::abs(fsum))) {
            ++report.monotonicity_failures;
        }
        if (!is_zero(x) && fx <= tolerance) {
            ++report.zero_failures;
        }
        if (!is_zero(y) && fy <= tolerance) {
            ++report.zero_failures;
        }
        if (fsum > fx + fy + tolerance * (1.0 + std::abs(fsum))) {
            ++report.subadditivity_failures;
        }
        ++report.samples_tested;
    };

    if (std::abs(combinator(zero)) > tolerance) {
        ++report.zero_failures;
    }

    // Unit tuples and their complements catch functions that vanish on
    // partially-zero tuples (min, products).
    for (std::size_t i = 0; i < arity; ++i) {
        std::vector<double> unit(arity, 0.0);
        std::vector<double> complement(arity, 1.0);
        unit[i] = 1.0;
        complement[i] = 0.0;
        probe(unit, complement);
    }

    Rng rng(seed);
    for (std::size_t s = 0; s < sample_count; ++s) {
        std::vector<double> x(arity);
        std::vector<double> y(arity);
        for (std::size_t i = 0; i < arity; ++i) {
            x[i] = rng.coin(0.25) ? 0.0 : rng.uniform(0.0, 10.0);
            y[i] = rng.coin(0.25) ? 0.0 : rng.uniform(0.0, 10.0);
        }
        probe(x, y);
    }
    return report;
}

} // namespace polymetric
