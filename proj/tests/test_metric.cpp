#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "polymetric/error.hpp"
#include "polymetric/metric.hpp"
#include "polymetric/random.hpp"

using namespace polymetric;

namespace {

Metric squared_euclidean()
{
    return Metric::custom("squared_euclidean", [](PointView x, PointView y) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            s += (x[i] - y[i]) * (x[i] - y[i]);
        }
        return s;
    });
}

Combinator min_combinator()
{
    return Combinator::custom("min", [](std::span<const double> v) {
        double m = v[0];
        for (double c : v) {
            m = std::min(m, c);
        }
        return m;
    });
}

std::vector<Metric> shipped_metrics()
{
    const auto e = Metric::euclidean();
    return {e,
            Metric::manhattan(),
            Metric::chebyshev(),
            Metric::discrete(),
            Metric::bounded(e),
            combine(Combinator::sum(), {e, Metric::bounded(e)}),
            combine(Combinator::max(), {Metric::manhattan(), Metric::discrete()}),
            combine(Combinator::weighted_sum({0.5, 2.0}), {Metric::chebyshev(), e})};
}

} // namespace

TEST(MetricEval, BaseMetrics)
{
    const Point o{0.0, 0.0};
    const Point p{3.0, 4.0};
    EXPECT_DOUBLE_EQ(5.0, eval_metric(Metric::euclidean(), o, p));
    EXPECT_DOUBLE_EQ(7.0, eval_metric(Metric::manhattan(), o, p));
    EXPECT_DOUBLE_EQ(4.0, eval_metric(Metric::chebyshev(), o, p));
    EXPECT_DOUBLE_EQ(1.0, eval_metric(Metric::discrete(), o, p));
    EXPECT_DOUBLE_EQ(0.0, eval_metric(Metric::discrete(), p, p));
    EXPECT_DOUBLE_EQ(std::sqrt(36.0 + 4.0), eval_metric(Metric::weighted_euclidean({2.0, 0.5}), o, p));
}

TEST(MetricEval, BoundedTransform)
{
    EXPECT_DOUBLE_EQ(0.5, eval_metric(Metric::bounded(Metric::euclidean()), Point{0.0}, Point{1.0}));
}

TEST(MetricEval, SumOfEuclideanAndItsBoundedTransform)
{
    const auto e = Metric::euclidean();
    const auto m = combine(Combinator::sum(), {e, Metric::bounded(e)});
    // 1 + 1/(1+1)
    EXPECT_DOUBLE_EQ(1.5, eval_metric(m, Point{0.0}, Point{1.0}));
}

TEST(MetricEval, DimensionMismatchNamesBothSizes)
{
    try {
        eval_metric(Metric::euclidean(), Point{0.0, 0.0}, Point{1.0});
        FAIL() << "expected DimensionError";
    } catch (const DimensionError& e) {
        EXPECT_EQ(2u, e.expected());
        EXPECT_EQ(1u, e.actual());
    }
    EXPECT_THROW(eval_metric(Metric::weighted_euclidean({1.0, 1.0}), Point{0.0}, Point{1.0}),
                 DimensionError);
}

TEST(MetricConstruction, RejectsBadWeights)
{
    EXPECT_THROW(Metric::weighted_euclidean({1.0, 0.0}), ValidationError);
    EXPECT_THROW(Metric::weighted_euclidean({-1.0}), ValidationError);
    EXPECT_THROW(Metric::weighted_euclidean({NAN}), ValidationError);
    EXPECT_THROW(Combinator::weighted_sum({1.0, INFINITY}), ValidationError);
}

TEST(Combine, RejectsEmptyPartsAndWeightMismatch)
{
    EXPECT_THROW(combine(Combinator::sum(), {}), ValidationError);
    EXPECT_THROW(combine(Combinator::weighted_sum({1.0, 2.0}), {Metric::euclidean()}),
                 ValidationError);
}

TEST(Combine, SumEqualsPointwiseSumOfParts)
{
    const auto e = Metric::euclidean();
    const auto l1 = Metric::manhattan();
    const auto sum = combine(Combinator::sum(), {e, l1});
    Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        const Point x{rng.uniform(-10, 10), rng.uniform(-10, 10)};
        const Point y{rng.uniform(-10, 10), rng.uniform(-10, 10)};
        const double expected = e(x, y) + l1(x, y);
        EXPECT_NEAR(expected, sum(x, y), 1e-12 * expected);
    }
}

TEST(Combine, SinglePartSumIsIdentity)
{
    const auto e = Metric::euclidean();
    const auto sum = combine(Combinator::sum(), {e});
    const Point x{1.0, -2.0, 0.5};
    const Point y{-3.0, 4.0, 2.0};
    EXPECT_EQ(e(x, y), sum(x, y));
}

TEST(Combine, MaxOfEuclideanAndDiscrete)
{
    const auto m = combine(Combinator::max(), {Metric::euclidean(), Metric::discrete()});
    EXPECT_DOUBLE_EQ(1.0, m(Point{0.0}, Point{1.0}));
    EXPECT_DOUBLE_EQ(3.0, m(Point{0.0}, Point{3.0}));
    EXPECT_DOUBLE_EQ(1.0, m(Point{0.0}, Point{0.25}));
}

TEST(AxiomChecker, EuclideanPasses)
{
    const auto report = check_metric_axioms(Metric::euclidean(), 2, 10000, kDefaultSeed, 1e-9);
    EXPECT_TRUE(report.passed());
    EXPECT_EQ(10000u, report.samples_tested);
    EXPECT_EQ(0u, report.definiteness_failures);
    EXPECT_EQ(0u, report.symmetry_failures);
    EXPECT_EQ(0u, report.triangle_failures);
    EXPECT_LE(report.worst_triangle_slack, 0.0);
}

TEST(AxiomChecker, SumWithBoundedTransformPasses)
{
    const auto e = Metric::euclidean();
    const auto m = combine(Combinator::sum(), {e, Metric::bounded(e)});
    EXPECT_TRUE(check_metric_axioms(m, 2, 10000, kDefaultSeed, 1e-9).passed());
}

TEST(AxiomChecker, SquaredEuclideanBreaksTriangle)
{
    // Direct oracle: (0),(1),(2) gives 4 > 1 + 1.
    const auto sq = squared_euclidean();
    EXPECT_GT(sq(Point{0.0}, Point{2.0}), sq(Point{0.0}, Point{1.0}) + sq(Point{1.0}, Point{2.0}));

    const auto report = check_metric_axioms(sq, 1, 10000, kDefaultSeed, 1e-9);
    EXPECT_FALSE(report.passed());
    EXPECT_GT(report.triangle_failures, 0u);
    EXPECT_GT(report.worst_triangle_slack, 0.0);
}

TEST(AxiomChecker, DetectsAsymmetryAndIndefiniteness)
{
    const auto lopsided = Metric::custom("lopsided", [](PointView x, PointView y) {
        return std::abs(x[0] - y[0]) + (x[0] < y[0] ? 1.0 : 0.0) * std::abs(x[0] - y[0]);
    });
    EXPECT_GT(check_metric_axioms(lopsided, 1, 1000).symmetry_failures, 0u);

    const auto first_only = Metric::custom(
        "first_only", [](PointView x, PointView y) { return std::abs(x[0] - y[0]); });
    EXPECT_TRUE(check_metric_axioms(first_only, 1, 1000).passed());
    EXPECT_GT(check_metric_axioms(first_only, 2, 1000).definiteness_failures, 0u);
}

TEST(AxiomChecker, RejectsBadArguments)
{
    EXPECT_THROW(check_metric_axioms(Metric::euclidean(), 2, 0), ValidationError);
    EXPECT_THROW(check_metric_axioms(Metric::euclidean(), 2, 10, 1, 0.0), ValidationError);
}

TEST(AxiomChecker, IsDeterministicForASeed)
{
    const auto sq = squared_euclidean();
    const auto a = check_metric_axioms(sq, 2, 500, 99);
    const auto b = check_metric_axioms(sq, 2, 500, 99);
    EXPECT_EQ(a.triangle_failures, b.triangle_failures);
    EXPECT_EQ(a.worst_triangle_slack, b.worst_triangle_slack);
}

TEST(CombinatorConditions, SumAndMaxPass)
{
    EXPECT_TRUE(check_combinator_conditions(Combinator::sum(), 3, 10000).passed());
    EXPECT_TRUE(check_combinator_conditions(Combinator::max(), 2, 10000).passed());
    EXPECT_TRUE(
        check_combinator_conditions(Combinator::weighted_sum({0.2, 3.0, 1.0}), 3, 10000).passed());
}

TEST(CombinatorConditions, MaxOnExhaustiveGrid)
{
    // Oracle: every pair of tuples over {0, 0.5, 1}^2, i.e. the grid {0,0.5,1}^4.
    const double grid[] = {0.0, 0.5, 1.0};
    const auto mx = Combinator::max();
    for (double a : grid) {
        for (double b : grid) {
            for (double c : grid) {
                for (double d : grid) {
                    const std::vector<double> x{a, b};
                    const std::vector<double> y{c, d};
                    const std::vector<double> s{a + c, b + d};
                    EXPECT_LE(mx(s), mx(x) + mx(y));
                    if (c >= 0 && d >= 0) {
                        EXPECT_LE(mx(x), mx(s));
                    }
                    if (a != 0.0 || b != 0.0) {
                        EXPECT_GT(mx(x), 0.0);
                    }
                }
            }
        }
    }
}

TEST(CombinatorConditions, MinFailsZeroOnlyAtZero)
{
    const auto mn = min_combinator();
    EXPECT_EQ(0.0, mn(std::vector<double>{0.0, 1.0}));
    const auto report = check_combinator_conditions(mn, 2, 1000);
    EXPECT_GT(report.zero_failures, 0u);
    EXPECT_FALSE(report.passed());
}

TEST(CombinatorConditions, ProductIsNotSubadditive)
{
    const auto product = Combinator::custom("product", [](std::span<const double> v) {
        double p = 1.0;
        for (double c : v) {
            p *= c;
        }
        return p;
    });
    EXPECT_GT(check_combinator_conditions(product, 2, 1000).subadditivity_failures, 0u);
}

// Properties over every shipped descriptor.

TEST(MetricProperties, SymmetryIdentityAndTriangle)
{
    Rng rng(12345);
    for (const auto& m : shipped_metrics()) {
        for (std::size_t d = 1; d <= 3; ++d) {
            SCOPED_TRACE(m.describe() + " d=" + std::to_string(d));
            for (int i = 0; i < 300; ++i) {
                Point x(d), y(d);
                for (std::size_t k = 0; k < d; ++k) {
                    x[k] = rng.uniform(-10, 10);
                    y[k] = rng.uniform(-10, 10);
                }
                const double xy = m(x, y);
                EXPECT_LE(std::abs(xy - m(y, x)), 1e-12 * (1.0 + xy));
                EXPECT_EQ(0.0, m(x, x));
                EXPECT_GE(xy, 0.0);
            }
            EXPECT_TRUE(check_metric_axioms(m, d, 10000, kDefaultSeed + d, 1e-9).passed());
        }
    }
}

TEST(MetricProperties, BoundedTransformStaysBelowOne)
{
    const auto b = Metric::bounded(Metric::manhattan());
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double scale = std::pow(10.0, rng.uniform(-6, 12));
        const Point x{rng.uniform(-scale, scale)};
        const Point y{rng.uniform(-scale, scale)};
        const double v = b(x, y);
        EXPECT_GE(v, 0.0);
        EXPECT_LT(v, 1.0);
    }
}

TEST(MetricDescribe, NestedRendering)
{
    const auto e = Metric::euclidean();
    EXPECT_EQ("sum(euclidean, bounded(euclidean))",
              combine(Combinator::sum(), {e, Metric::bounded(e)}).describe());
}
