#include "oracles.h"

#include "manet/geometry.h"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace manet;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("distance and bearing on axis-aligned points")
{
    CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
    CHECK(bearing({0, 0}, {1, 0}) == 0.0);
    CHECK(bearing({0, 0}, {0, 1}) == doctest::Approx(pi / 2));
    CHECK(bearing({0, 0}, {-1, 0}) == doctest::Approx(pi));
    CHECK(bearing({0, 0}, {0, -1}) == doctest::Approx(3 * pi / 2));
    CHECK_THROWS_AS(bearing({2, 2}, {2, 2}), UndefinedBearing);
}

TEST_CASE("bearing stays inside [0, 2pi)")
{
    // just below the positive x axis, atan2 returns a tiny negative angle
    const double b = bearing({0, 0}, {1, -1e-300});
    CHECK(b >= 0.0);
    CHECK(b < kTwoPi);
}

TEST_CASE("six sectors at their boundaries")
{
    CHECK(area_of(0.0, 6).index == 1);
    CHECK(area_of(M_PI / 3, 6).index == 2);
    CHECK(area_of(2 * M_PI / 3, 6).index == 3);
    CHECK(area_of(M_PI, 6).index == 4);
    CHECK(area_of(4 * M_PI / 3, 6).index == 5);
    CHECK(area_of(5 * M_PI / 3, 6).index == 6);
    CHECK(area_of(std::nextafter(kTwoPi, 0.0), 6).index == 6);
    CHECK(area_of(std::nextafter(M_PI / 3, 0.0), 6).index == 1);
}

TEST_CASE("area_of rejects bad input")
{
    CHECK_THROWS_AS(area_of(kTwoPi, 6), std::domain_error);
    CHECK_THROWS_AS(area_of(-0.1, 6), std::domain_error);
    CHECK_THROWS_AS(area_of(1.0, 0), std::domain_error);
}

TEST_CASE("single sector covers everything")
{
    oracle::Gen g(3);
    for (int i = 0; i < 1000; ++i)
    {
        CHECK(area_of(g.range(0, kTwoPi), 1).index == 1);
    }
}

TEST_CASE("area_of agrees with the branch oracle for k = 6")
{
    oracle::Gen g(11);
    int mismatches = 0;
    for (int i = 0; i < 100000; ++i)
    {
        const double theta = g.range(0, kTwoPi);
        mismatches += area_of(theta, 6).index != oracle::six_sector_area(theta);
    }
    CHECK(mismatches == 0);
}

TEST_CASE("sectors are equal width for any k")
{
    oracle::Gen g(5);
    for (int k = 1; k <= 20; ++k)
    {
        for (int i = 0; i < 500; ++i)
        {
            const double theta = g.range(0, kTwoPi);
            const int a = area_of(theta, k).index;
            REQUIRE(a >= 1);
            REQUIRE(a <= k);
            const double width = kTwoPi / k;
            // the sector's nominal interval contains theta, allowing rounding at the edges
            CHECK(theta >= (a - 1) * width - 1e-12);
            CHECK(theta < a * width + 1e-12);
        }
        for (int i = 0; i < k; ++i)
        {
            CHECK(area_of(sector_lower_bound(i, k), k).index == i + 1);
        }
    }
}

TEST_CASE("positions map through bearing from the base station")
{
    const Position bs{750, 750};
    CHECK(area_of_position(bs, {1000, 750}, 6).index == 1);
    CHECK(area_of_position(bs, {750, 1000}, 6).index == 2);
    CHECK(area_of_position(bs, {500, 750}, 6).index == 4);
    CHECK(area_of_position(bs, bs, 6).index == 1);
}

TEST_CASE("bearing and distance reconstruct the point")
{
    oracle::Gen g(17);
    for (int i = 0; i < 10000; ++i)
    {
        const Position a{g.range(-2000, 2000), g.range(-2000, 2000)};
        const Position b{g.range(-2000, 2000), g.range(-2000, 2000)};
        const double d = distance(a, b);
        const double t = bearing(a, b);
        const double scale = std::max({1.0, std::abs(b.x), std::abs(b.y)});
        CHECK(std::abs(a.x + d * std::cos(t) - b.x) <= 1e-9 * scale);
        CHECK(std::abs(a.y + d * std::sin(t) - b.y) <= 1e-9 * scale);
    }
}

TEST_CASE("bearing agrees with an acos reference")
{
    oracle::Gen g(23);
    for (int i = 0; i < 10000; ++i)
    {
        const Position a{g.range(0, 1500), g.range(0, 1500)};
        const Position b{g.range(0, 1500), g.range(0, 1500)};
        const double expect = oracle::angle_from({a.x, a.y}, {b.x, b.y});
        double diff = std::abs(bearing(a, b) - expect);
        diff = std::min(diff, kTwoPi - diff);
        CHECK(diff < 1e-7);
    }
}

TEST_CASE("rect containment is closed")
{
    const Rect r{0, 10, 0, 5};
    CHECK(r.contains({0, 0}));
    CHECK(r.contains({10, 5}));
    CHECK_FALSE(r.contains({10.0001, 5}));
}
