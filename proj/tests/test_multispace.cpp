#include <gtest/gtest.h>

#include <cmath>

#include "polymetric/error.hpp"
#include "polymetric/multispace.hpp"

using namespace polymetric;

namespace {

Region interval(double lo, double hi) { return Region::box({lo}, {hi}); }

MultiMetricSpace two_intervals(double a0, double a1, double b0, double b1)
{
    return MultiMetricSpace::from_parts(
        1, {{interval(a0, a1), Metric::euclidean()}, {interval(b0, b1), Metric::euclidean()}});
}

} // namespace

TEST(Region, BoxIsClosed)
{
    const auto box = Region::box({0.0, 0.0}, {1.0, 2.0});
    EXPECT_TRUE(box.contains(Point{0.0, 2.0}));
    EXPECT_TRUE(box.contains(Point{0.5, 1.0}));
    EXPECT_FALSE(box.contains(Point{1.0 + 1e-15, 1.0}));
    EXPECT_EQ((Point{0.5, 1.0}), box.center());
}

TEST(Region, BallUsesItsMetric)
{
    const auto ball = Region::ball({0.0, 0.0}, 1.0, Metric::manhattan());
    EXPECT_TRUE(ball.contains(Point{0.5, 0.5}));
    EXPECT_FALSE(ball.contains(Point{0.6, 0.5}));
    EXPECT_EQ((Point{0.0, 0.0}), ball.center());
}

TEST(Region, RejectsInvalidShapes)
{
    EXPECT_THROW(Region::box({1.0}, {0.0}), ValidationError);
    EXPECT_THROW(Region::box({0.0, 0.0}, {1.0}), DimensionError);
    EXPECT_THROW(Region::ball({0.0}, 0.0, Metric::euclidean()), ValidationError);
    EXPECT_THROW(Region::ball({0.0}, 1.0, Metric::weighted_euclidean({1.0, 1.0})), DimensionError);
}

TEST(Region, SamplesStayInside)
{
    Rng rng(5);
    const Region regions[] = {Region::box({-1.0, 2.0}, {0.0, 5.0}),
                              Region::ball({1.0, 1.0}, 0.5, Metric::euclidean()),
                              Region::ball({0.0, 0.0}, 0.1, Metric::weighted_euclidean({0.1, 10.0})),
                              Region::whole(2)};
    for (const auto& r : regions) {
        for (int i = 0; i < 500; ++i) {
            EXPECT_TRUE(r.contains(r.sample(rng)));
        }
    }
}

TEST(MultiMetricSpace, ValidatesIdsAndDimensions)
{
    EXPECT_THROW(MultiMetricSpace(1, {}), ValidationError);
    EXPECT_THROW(MultiMetricSpace(1, {{2, interval(0, 1), Metric::euclidean()}}), ValidationError);
    EXPECT_THROW(MultiMetricSpace(2, {{1, interval(0, 1), Metric::euclidean()}}), DimensionError);
    EXPECT_THROW(MultiMetricSpace(1, {{1, interval(0, 1), Metric::weighted_euclidean({1.0, 2.0})}}),
                 DimensionError);
    const auto s = two_intervals(0, 1, 2, 3);
    EXPECT_THROW(s.component(3), ValidationError);
    EXPECT_THROW(s.component(0), ValidationError);
}

TEST(ComponentsOf, InteriorBoundaryAndOverlap)
{
    const auto disjoint = two_intervals(0, 1, 2, 3);
    EXPECT_EQ((std::vector<ComponentId>{1}), components_of(disjoint, Point{0.5}));
    EXPECT_EQ((std::vector<ComponentId>{1}), components_of(disjoint, Point{1.0}));
    EXPECT_TRUE(components_of(disjoint, Point{1.5}).empty());

    const auto overlap = two_intervals(0, 2, 1, 3);
    EXPECT_EQ((std::vector<ComponentId>{1, 2}), components_of(overlap, Point{1.5}));

    EXPECT_THROW(components_of(disjoint, Point{0.5, 0.5}), DimensionError);
}

TEST(Distance, SharedAndDisjoint)
{
    const auto s = two_intervals(0, 1, 2, 3);
    const auto d = distance(s, Point{0.2}, Point{0.7});
    ASSERT_TRUE(d.is_comparable());
    EXPECT_DOUBLE_EQ(0.5, d.value());
    EXPECT_EQ(1u, d.via());

    const auto none = distance(s, Point{0.5}, Point{2.5});
    EXPECT_FALSE(none.is_comparable());
    EXPECT_THROW(none.value(), MathError);
}

TEST(Distance, PicksSmallestMetricValue)
{
    const auto s = MultiMetricSpace::from_parts(
        2, {{Region::box({0, 0}, {2, 2}), Metric::euclidean()},
            {Region::box({0, 0}, {2, 2}), Metric::manhattan()}});
    const auto d = distance(s, Point{0.0, 0.0}, Point{1.0, 1.0});
    // min(sqrt 2, 2)
    EXPECT_DOUBLE_EQ(std::sqrt(2.0), d.value());
    EXPECT_EQ(1u, d.via());

    // Equal values tie to the lowest id.
    const auto same = MultiMetricSpace::from_parts(
        1, {{interval(0, 1), Metric::chebyshev()}, {interval(0, 1), Metric::euclidean()}});
    EXPECT_EQ(1u, distance(same, Point{0.1}, Point{0.9}).via());
}

TEST(InDisk, StrictAndExistential)
{
    const auto s = MultiMetricSpace::from_parts(1, {{interval(0, 1), Metric::euclidean()}});
    const DiskSpec disk{{0.5}, 0.3};
    EXPECT_TRUE(in_disk(s, disk, Point{0.7}));
    EXPECT_FALSE(in_disk(s, disk, Point{0.8}));

    const auto scaled = MultiMetricSpace::from_parts(
        1, {{interval(0, 2), Metric::euclidean()}, {interval(0, 2), Metric::weighted_euclidean({2.0})}});
    // rho_1 = 0.4 < 0.5 even though rho_2 = 0.8.
    EXPECT_NEAR(0.8, scaled.metric_value(2, Point{1.4}, Point{1.0}), 1e-15);
    EXPECT_TRUE(in_disk(scaled, DiskSpec{{1.0}, 0.5}, Point{1.4}));
}

TEST(BoundingDisk, Examples)
{
    const auto s = two_intervals(0, 1, 2, 3);
    const auto disk = bounding_disk(s, {{0.1}, {0.2}, {0.9}});
    ASSERT_TRUE(disk);
    EXPECT_EQ((Point{0.1}), disk->center);
    EXPECT_DOUBLE_EQ(1.8, disk->radius);

    const auto single = bounding_disk(s, {{2.5}});
    ASSERT_TRUE(single);
    EXPECT_DOUBLE_EQ(1.0, single->radius);

    EXPECT_FALSE(bounding_disk(s, {{0.5}, {2.5}}));
    EXPECT_THROW(bounding_disk(s, {}), ValidationError);
}

// Properties over randomized spaces: overlapping 2-d boxes with mixed metrics.

class MultispaceProperties : public ::testing::TestWithParam<std::uint64_t> {
protected:
    static MultiMetricSpace random_space(Rng& rng)
    {
        const Metric metrics[] = {Metric::euclidean(), Metric::manhattan(), Metric::chebyshev(),
                                  Metric::weighted_euclidean({0.5, 3.0})};
        std::vector<std::pair<Region, Metric>> parts;
        const auto m = rng.between(1, 4);
        for (std::uint64_t i = 0; i < m; ++i) {
            const double x0 = rng.uniform(-3, 2);
            const double y0 = rng.uniform(-3, 2);
            parts.emplace_back(Region::box({x0, y0}, {x0 + rng.uniform(0.5, 3), y0 + rng.uniform(0.5, 3)}),
                               metrics[rng.between(0, 3)]);
        }
        return MultiMetricSpace::from_parts(2, std::move(parts));
    }
};

TEST_P(MultispaceProperties, DistanceAndDiskInvariants)
{
    Rng rng(GetParam());
    const auto s = random_space(rng);
    for (int i = 0; i < 200; ++i) {
        const Point x{rng.uniform(-4, 6), rng.uniform(-4, 6)};
        const Point y{rng.uniform(-4, 6), rng.uniform(-4, 6)};
        const auto xy = distance(s, x, y);
        const auto yx = distance(s, y, x);
        EXPECT_EQ(xy, yx);

        const auto cx = components_of(s, x);
        const auto cy = components_of(s, y);
        std::vector<ComponentId> shared;
        std::set_intersection(cx.begin(), cx.end(), cy.begin(), cy.end(), std::back_inserter(shared));
        EXPECT_EQ(!shared.empty(), xy.is_comparable());

        if (!cx.empty()) {
            const auto self = distance(s, x, x);
            ASSERT_TRUE(self.is_comparable());
            EXPECT_EQ(0.0, self.value());
            for (double r : {1e-9, 0.1, 5.0}) {
                EXPECT_TRUE(in_disk(s, DiskSpec{x, r}, x));
            }
            const double r = rng.uniform(0.01, 3.0);
            if (in_disk(s, DiskSpec{x, r}, y)) {
                EXPECT_TRUE(in_disk(s, DiskSpec{x, r * 1.5}, y));
                EXPECT_TRUE(in_disk(s, DiskSpec{x, r + 1e-6}, y));
            }
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, MultispaceProperties, ::testing::Range<std::uint64_t>(1, 21));
