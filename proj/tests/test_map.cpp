#include <gtest/gtest.h>

#include <cmath>

#include "polymetric/map.hpp"

using namespace polymetric;

namespace {

MultiMetricSpace two_intervals()
{
    return MultiMetricSpace::from_parts(1, {{Region::box({0.0}, {1.0}), Metric::euclidean()},
                                            {Region::box({2.0}, {3.0}), Metric::euclidean()}});
}

} // namespace

TEST(Form1D, Catalog)
{
    EXPECT_DOUBLE_EQ(0.4, Form1D::affine(0.5, 0.0)(0.8));
    EXPECT_DOUBLE_EQ(1.0, Form1D::cosine()(0.0));
    EXPECT_DOUBLE_EQ(0.3 * std::sin(2.0) + 0.1, Form1D::sine(0.3, 0.1)(2.0));
    EXPECT_DOUBLE_EQ(2.0 / 3.0, Form1D::rational(1, 2, 1, 3)(0.0));
    EXPECT_THROW(Form1D::rational(1, 0, 1, 0)(0.0), MapUndefined);
    EXPECT_THROW(Form1D::rational(1, 0, 0, 0), ValidationError);
}

TEST(ApplyMap, Coordinatewise)
{
    const ContractionMap half(Rule::coordinatewise({Form1D::affine(0.5, 0.0)}));
    EXPECT_EQ((Point{0.4}), apply_map(half, Point{0.8}));
    const ContractionMap cosine(Rule::coordinatewise({Form1D::cosine()}));
    EXPECT_EQ((Point{1.0}), apply_map(cosine, Point{0.0}));
}

TEST(ApplyMap, Affine)
{
    const ContractionMap rot(Rule::affine({{0.0, -0.5}, {0.5, 0.0}}, {1.0, 2.0}));
    EXPECT_EQ((Point{1.0 - 1.0, 2.0 + 0.5}), apply_map(rot, Point{1.0, 2.0}));
    EXPECT_THROW(apply_map(rot, Point{1.0}), DimensionError);
    EXPECT_THROW(Rule::affine({{1.0}}, {0.0, 0.0}), DimensionError);
}

TEST(ApplyMap, PiecewiseSelectsGuard)
{
    const auto space = two_intervals();
    const ContractionMap map(Rule::piecewise(
        space, {{1, Rule::coordinatewise({Form1D::affine(0.5, 0.0)})},
                {2, Rule::coordinatewise({Form1D::affine(0.5, 1.25)})}}));
    // (2 + 2.5) / 2
    EXPECT_DOUBLE_EQ(2.25, apply_map(map, Point{2.0})[0]);
    EXPECT_DOUBLE_EQ(0.5, apply_map(map, Point{1.0})[0]);
    EXPECT_THROW(apply_map(map, Point{1.5}), MapUndefined);
}

TEST(ApplyMap, PiecewiseTiesGoToLowestGuard)
{
    const auto overlap = MultiMetricSpace::from_parts(
        1, {{Region::box({0.0}, {2.0}), Metric::euclidean()},
            {Region::box({1.0}, {3.0}), Metric::euclidean()}});
    // Pieces listed out of order on purpose.
    const ContractionMap map(Rule::piecewise(
        overlap, {{2, Rule::coordinatewise({Form1D::affine(0.0, 7.0)})},
                  {1, Rule::coordinatewise({Form1D::affine(0.0, 3.0)})}}));
    EXPECT_DOUBLE_EQ(3.0, apply_map(map, Point{1.5})[0]);
    EXPECT_DOUBLE_EQ(7.0, apply_map(map, Point{2.5})[0]);
}

TEST(Rule, PiecewiseValidation)
{
    const auto space = two_intervals();
    const auto half = Rule::coordinatewise({Form1D::affine(0.5, 0.0)});
    EXPECT_THROW(Rule::piecewise(space, {}), ValidationError);
    EXPECT_THROW(Rule::piecewise(space, {{3, half}}), ValidationError);
    EXPECT_THROW(Rule::piecewise(space, {{1, half}, {1, half}}), ValidationError);
    EXPECT_THROW(
        Rule::piecewise(space, {{1, Rule::coordinatewise({Form1D::cosine(), Form1D::cosine()})}}),
        DimensionError);
}

TEST(ContractionMap, ClaimedAlphaMustBeInsideUnitInterval)
{
    const auto half = Rule::coordinatewise({Form1D::affine(0.5, 0.0)});
    EXPECT_NO_THROW(ContractionMap(half, 0.5));
    EXPECT_THROW(ContractionMap(half, 1.0), ValidationError);
    EXPECT_THROW(ContractionMap(half, 0.0), ValidationError);
    EXPECT_THROW(ContractionMap(half, -0.3), ValidationError);
}
