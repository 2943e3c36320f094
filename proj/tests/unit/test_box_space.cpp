#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "mcmo/box_space.hpp"
#include "mcmo/rng.hpp"

using namespace mcmo;

TEST_SUITE("box_space") {

TEST_CASE("linear normalization maps midpoint and bounds") {
    const auto space = BoxSpace::linear({-5.0}, {5.0});
    CHECK(space.normalize(std::vector{0.0})[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(space.normalize(std::vector{5.0})[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(space.normalize(std::vector{-5.0})[0] == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("log10 normalization maps the decade midpoint to zero") {
    const BoxSpace space({1e5}, {1e7}, {AxisScale::Log10});
    CHECK(space.normalize(std::vector{1e6})[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(space.normalize(std::vector{1e5})[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(space.normalize(std::vector{1e7})[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("denormalization inverts the bound cases") {
    const auto linear = BoxSpace::linear({-5.0}, {5.0});
    CHECK(linear.denormalize(std::vector{1.0})[0] == doctest::Approx(5.0));
    CHECK(linear.denormalize(std::vector{-1.0})[0] == doctest::Approx(-5.0));
    const BoxSpace log({1e5}, {1e7}, {AxisScale::Log10});
    CHECK(log.denormalize(std::vector{-1.0})[0] == doctest::Approx(1e5).epsilon(1e-10));
    CHECK(log.denormalize(std::vector{1.0})[0] == doctest::Approx(1e7).epsilon(1e-10));
}

TEST_CASE("round trip over random points") {
    Rng rng(123);
    const BoxSpace space({-3.0, 0.25, 1e2}, {7.5, 11.0, 1e6},
                         {AxisScale::Linear, AxisScale::Linear, AxisScale::Log10});
    for (int k = 0; k < 2000; ++k) {
        std::vector<double> n(3);
        for (double& v : n) v = rng.uniform(-1.0, 1.0);
        const auto raw = space.denormalize(n);
        const auto back = space.normalize(raw);
        CHECK(std::abs(back[0] - n[0]) <= 1e-12);
        CHECK(std::abs(back[1] - n[1]) <= 1e-12);
        CHECK(std::abs(back[2] - n[2]) <= 1e-10);

        std::vector<double> raw2 = {rng.uniform(-3.0, 7.5), rng.uniform(0.25, 11.0),
                                    std::pow(10.0, rng.uniform(2.0, 6.0))};
        const auto rt = space.denormalize(space.normalize(raw2));
        CHECK(std::abs(rt[0] - raw2[0]) <= 1e-12);
        CHECK(std::abs(rt[1] - raw2[1]) <= 1e-12);
        CHECK(std::abs(rt[2] - raw2[2]) / raw2[2] <= 1e-10);
    }
}

TEST_CASE("rejections name the offending axis") {
    const auto space = BoxSpace::linear({0.0, 0.0}, {1.0, 1.0});
    CHECK_THROWS_WITH_AS(space.normalize(std::vector{0.5, 1.5}),
                         doctest::Contains("axis 1"), std::invalid_argument);
    CHECK_THROWS_AS(space.denormalize(std::vector{0.0, -1.0000001}), std::invalid_argument);
    CHECK_THROWS_AS(space.normalize(std::vector{0.5}), std::invalid_argument);
}

TEST_CASE("construction invariants") {
    CHECK_THROWS_AS(BoxSpace::linear({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(BoxSpace::linear({2.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(BoxSpace({0.0}, {1.0}, {AxisScale::Log10}), std::invalid_argument);
    CHECK_THROWS_AS(BoxSpace({-1.0}, {1.0}, {AxisScale::Log10}), std::invalid_argument);
    CHECK_NOTHROW(BoxSpace({0.5}, {1.0}, {AxisScale::Log10}));
}

}  // TEST_SUITE
