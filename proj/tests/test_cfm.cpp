//
//  test_cfm.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "panobin/cfm.hpp"
#include "test_util.hpp"

using namespace panobin;
using namespace panobin::cfm;
using panobin_test::random_samples;

TEST_CASE("interpolation endpoints are exact") {
    const LatentVector x0{1.0, -2.0, 0.5};
    const LatentVector x1{-1.0, 3.0, 0.25};
    CHECK(interpolate(x0, x1, 0.0) == x0);
    CHECK(interpolate(x0, x1, 1.0) == x1);
}

TEST_CASE("interpolation quarter point") {
    const LatentVector x = interpolate({0.0, 0.0}, {2.0, 4.0}, 0.25);
    CHECK(x[0] == 0.5);
    CHECK(x[1] == 1.0);
}

TEST_CASE("interpolation argument checking") {
    CHECK_THROWS_AS(interpolate({1.0}, {1.0, 2.0}, 0.5), InvalidArgumentError);
    CHECK_THROWS_AS(interpolate({1.0}, {2.0}, -0.1), InvalidArgumentError);
    CHECK_THROWS_AS(interpolate({1.0}, {2.0}, 1.1), InvalidArgumentError);
}

TEST_CASE("target velocity is x1 - x0 and t-free") {
    CHECK(target_velocity({3.0}, {3.0}) == LatentVector{0.0});
    CHECK(target_velocity({1.0}, {3.0}) == LatentVector{2.0});

    // Path derivative identity: x_t - x_0 = t * u, at any t.
    std::mt19937 gen(21);
    for (int i = 0; i < 200; ++i) {
        const LatentVector x0 = random_samples(gen, 8);
        const LatentVector x1 = random_samples(gen, 8);
        const LatentVector u = target_velocity(x0, x1);
        for (double t : {0.1, 0.5, 0.9}) {
            const LatentVector xt = interpolate(x0, x1, t);
            for (std::size_t k = 0; k < xt.size(); ++k)
                CHECK(std::abs(xt[k] - x0[k] - t * u[k]) < 1e-12);
        }
    }
}

TEST_CASE("cfm loss") {
    const LatentVector x0{0.0, 0.0};
    const LatentVector x1{3.0, 4.0};
    CHECK(cfm_loss(target_velocity(x0, x1), x0, x1) == 0.0);
    CHECK(cfm_loss({0.0, 0.0}, x0, x1) == 25.0);

    std::mt19937 gen(22);
    for (int i = 0; i < 100; ++i)
        CHECK(cfm_loss(random_samples(gen, 6), random_samples(gen, 6),
                       random_samples(gen, 6)) >= 0.0);

    CHECK_THROWS_AS(cfm_loss({1.0}, {1.0, 2.0}, {1.0, 2.0}), InvalidArgumentError);
}

TEST_CASE("dual loss is the sum of the channel losses and swap-invariant") {
    std::mt19937 gen(23);
    for (int i = 0; i < 100; ++i) {
        const auto vl = random_samples(gen, 5), vr = random_samples(gen, 5);
        const auto x0l = random_samples(gen, 5), x1l = random_samples(gen, 5);
        const auto x0r = random_samples(gen, 5), x1r = random_samples(gen, 5);
        const double dual = dual_cfm_loss(vl, vr, x0l, x1l, x0r, x1r);
        const double parts = cfm_loss(vl, x0l, x1l) + cfm_loss(vr, x0r, x1r);
        CHECK(std::abs(dual - parts) < 1e-12);
        CHECK(std::abs(dual - dual_cfm_loss(vr, vl, x0r, x1r, x0l, x1l)) < 1e-12);
    }

    // One channel exact, the other off by [1]: only that channel contributes.
    const LatentVector z{0.0};
    CHECK(dual_cfm_loss({0.0}, {1.0}, z, z, z, z) == 1.0);
}

TEST_CASE("Euler with the exact constant field lands on x1 for any step count") {
    const LatentVector x0{0.2, -0.4, 1.7};
    const LatentVector x1{-1.0, 0.0, 2.5};
    const LatentVector u = target_velocity(x0, x1);
    for (std::size_t steps : {std::size_t{1}, std::size_t{7}, std::size_t{1000}}) {
        const LatentVector x =
            euler_integrate([&](double, const LatentVector&) { return u; }, x0, steps);
        for (std::size_t k = 0; k < x.size(); ++k)
            CHECK(std::abs(x[k] - x1[k]) < 1e-12);
    }
}

TEST_CASE("Euler with a zero field stays at x0") {
    const LatentVector x0{1.0, 2.0};
    const LatentVector x =
        euler_integrate([](double, const LatentVector& v) { return LatentVector(v.size(), 0.0); },
                        x0, 17);
    CHECK(x == x0);
}

TEST_CASE("Euler on dx/dt = x approaches e with the known discretization error") {
    const std::size_t steps = 1000;
    const LatentVector x =
        euler_integrate([](double, const LatentVector& v) { return v; }, {1.0}, steps);

    // Independent oracle: the explicit scheme on dx/dt = x from 1 is
    // exactly (1 + 1/K)^K.
    const double oracle = std::pow(1.0 + 1.0 / static_cast<double>(steps),
                                   static_cast<double>(steps));
    CHECK(x[0] == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(std::abs(x[0] - std::exp(1.0)) < 2e-3);
}

TEST_CASE("Euler argument checking") {
    CHECK_THROWS_AS(euler_integrate([](double, const LatentVector&) { return LatentVector{}; },
                                    {1.0}, 0),
                    InvalidArgumentError);
    CHECK_THROWS_AS(
        euler_integrate([](double, const LatentVector&) { return LatentVector{1.0, 2.0}; },
                        {1.0}, 4),
        InvalidArgumentError);
}
