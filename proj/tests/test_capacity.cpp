#include <algorithm>
#include <array>
#include <cmath>

#include "doctest.h"
#include "gsb/capacity.hpp"
#include "gsb/membership.hpp"
#include "gsb/verify.hpp"
#include "oracle.hpp"

using namespace gsb;

namespace {

BroadcastScenario make(double P, std::vector<double> N, double b, double ns = 1.0) {
    return validate_scenario(RawScenario{P, std::move(N), b, ns});
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected gsb::Error");
    return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("boundary_rates two-user examples") {
    const auto ch = make_gaussian_bc(3, {3, 1});
    const auto all_worst = boundary_rates_2user(ch, 0.0, 1.5);
    CHECK(all_worst.rates[0] == doctest::Approx(0.75 * std::log2(2.0)).epsilon(1e-15));
    CHECK(all_worst.rates[1] == 0.0);
    const auto all_best = boundary_rates_2user(ch, 1.0, 1.5);
    CHECK(all_best.rates[0] == 0.0);
    CHECK(all_best.rates[1] == doctest::Approx(0.75 * std::log2(4.0)).epsilon(1e-15));
    const auto third = boundary_rates_2user(ch, 1.0 / 3.0, 1.0);
    CHECK(third.rates[0] == doctest::Approx(0.29248125036057804).epsilon(1e-14));
    CHECK(third.rates[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("boundary_rates rejects bad splits") {
    const auto ch = make_gaussian_bc(3, {3, 1});
    CHECK(code_of([&] { boundary_rates(ch, std::vector<double>{0.5, 0.6}, 1.0); }) == ErrorCode::InvalidSplit);
    CHECK(code_of([&] { boundary_rates(ch, std::vector<double>{1.5, -0.5}, 1.0); }) == ErrorCode::InvalidSplit);
    CHECK(code_of([&] { boundary_rates(ch, std::vector<double>{1.0}, 1.0); }) == ErrorCode::InvalidSplit);
    CHECK(code_of([&] { boundary_rates_2user(ch, 1.2, 1.0); }) == ErrorCode::InvalidSplit);
}

TEST_CASE("boundary points round-trip through the greedy inversion") {
    ScenarioSampler rng(31);
    for (int i = 0; i < 200; ++i) {
        const std::size_t K = rng.uniform_index(1, 5);
        const auto s = rng.scenario(K, 1.0);
        const auto ch = physical_channel(s);
        const double b = rng.log_uniform(0.2, 5.0);
        std::vector<double> split(K);
        double total = 0.0;
        for (auto& a : split) total += (a = rng.uniform(0.0, 1.0));
        for (auto& a : split) a /= total;
        double drift = 0.0;
        for (double a : split) drift += a;
        split.back() += 1.0 - drift;
        if (split.back() < 0.0) continue;
        const auto r = boundary_rates(ch, split, b);
        const auto beta = residual_power(ch, r, b);
        REQUIRE(beta.has_value());
        CHECK(std::abs(*beta) <= 1e-9 * ch.power);

        RatePoint bigger = r;
        bool any_positive = false;
        for (auto& x : bigger.rates) {
            any_positive = any_positive || x > 1e-6;
            x *= 1.01;
        }
        if (any_positive) CHECK_FALSE(rate_membership(ch, bigger, b));
    }
    const auto ch = make_gaussian_bc(1, {2, 1});
    CHECK(rate_membership(ch, RatePoint{{0.0, 0.0}}, 1.0));
}

TEST_CASE("rate_membership agrees with a fine dominance search") {
    ScenarioSampler rng(37);
    const auto ch = make_gaussian_bc(3, {3, 1});
    for (int i = 0; i < 60; ++i) {
        const double b = rng.log_uniform(0.5, 2.0);
        const RatePoint r{{rng.uniform(0.0, 0.6 * b), rng.uniform(0.0, 1.1 * b)}};
        const bool lib = rate_membership(ch, r, b);
        // Skip points within the dominance grid's resolution of the boundary.
        RatePoint in = r, out = r;
        for (auto& x : in.rates) x = std::max(0.0, x - 1e-4);
        for (auto& x : out.rates) x += 1e-4;
        if (rate_membership(ch, in, b) != rate_membership(ch, out, b)) continue;
        CHECK(lib == oracle::dominated_2user(3, 3, 1, b, r.rates[0], r.rates[1]));
    }
}

TEST_CASE("virtual_channel") {
    const auto v = virtual_channel(1.0, DistortionTuple({0.5, 0.25}));
    CHECK(v.power == 1.0);
    CHECK(v.noises[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v.noises[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    const auto w = virtual_channel(2.0, DistortionTuple({1.0, 0.5}));
    CHECK(w.power == 2.0);
    CHECK(w.noises[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(w.noises[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(virtual_channel(1.0, DistortionTuple({0.5, 1e-12})).noises[1] < 1e-11);
    CHECK(code_of([] { virtual_channel(1.0, DistortionTuple({1.0, 0.5})); }) ==
          ErrorCode::DistortionAtSourceVariance);
    CHECK(code_of([] { virtual_channel(1.0, DistortionTuple({0.3, 0.5})); }) == ErrorCode::NonStrictOrdering);
    CHECK(code_of([] { virtual_channel(1.0, DistortionTuple({0.3, 0.3})); }) == ErrorCode::NonStrictOrdering);
}

TEST_CASE("containment") {
    const auto ch = make_gaussian_bc(3, {3, 1});
    CHECK(containment(ch, 1.3, ch, 1.3).contained);
    CHECK(code_of([&] { containment(ch, 1.0, make_gaussian_bc(1, {1}), 1.0); }) == ErrorCode::DimensionMismatch);

    SUBCASE("matched bandwidth: virtual and physical regions coincide") {
        const auto s = make(3, {3, 1}, 1);
        const auto virt = virtual_channel(1.0, trivial_point(s));
        CHECK(containment(virt, 1.0, ch, 1.0).contained);
        CHECK(containment(ch, 1.0, virt, 1.0).contained);
    }
    SUBCASE("expansion: the virtual region sticks out") {
        const auto s = make(3, {3, 1}, 2);
        const auto virt = virtual_channel(1.0, trivial_point(s));
        const auto res = containment(virt, 1.0, ch, 2.0);
        CHECK_FALSE(res.contained);
        REQUIRE(res.witness.has_value());
        const auto& w = res.witness->rates;
        CHECK_FALSE(oracle::dominated_2user(3, 3, 1, 2.0, w[0] - 1e-6, w[1] - 1e-6));
        CHECK(containment(ch, 2.0, virt, 1.0).contained);
    }
    SUBCASE("compression: the virtual region fits") {
        const auto s = make(3, {3, 1}, 0.5);
        CHECK(containment(virtual_channel(1.0, trivial_point(s)), 1.0, ch, 0.5).contained);
    }
}

TEST_CASE("split_grid") {
    CHECK(split_grid(2, 512).size() == 512);
    const auto g3 = split_grid(3, 512);
    CHECK(g3.size() <= 512);
    CHECK(g3.size() > 400);
    for (const auto& s : g3) {
        double t = 0.0;
        for (double a : s) t += a;
        CHECK(t == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(split_grid(1, 10).size() == 1);
}

TEST_CASE("scenario_from_capacities") {
    const auto s1 = scenario_from_capacities(1, 5, 1);
    CHECK(s1.power() == 1.0);
    CHECK(s1.noise(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(s1.noise(2) == doctest::Approx(1.0 / 1023.0).epsilon(1e-15));
    const auto s2 = scenario_from_capacities(1, 5, 2);
    CHECK(s2.noise(1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s2.noise(2) == doctest::Approx(1.0 / 31.0).epsilon(1e-15));
    CHECK(scenario_from_capacities(1.5, 5, 3).noise(1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(code_of([] { scenario_from_capacities(5, 1, 1); }) == ErrorCode::InvalidCapacities);
    CHECK(code_of([] { scenario_from_capacities(0, 1, 1); }) == ErrorCode::InvalidCapacities);
}

TEST_CASE("regions at fixed point-to-point capacities shrink with b") {
    const double bs[] = {0.25, 0.5, 1.0, 2.0, 4.0};
    std::vector<GaussianBC> chans;
    for (double b : bs) {
        const auto ch = physical_channel(scenario_from_capacities(1, 5, b));
        const auto corner1 = boundary_rates_2user(ch, 0.0, b);
        const auto corner2 = boundary_rates_2user(ch, 1.0, b);
        CHECK(std::abs(corner1.rates[0] - 1.0) < 1e-9);
        CHECK(std::abs(corner2.rates[1] - 5.0) < 1e-9);
        chans.push_back(ch);
    }
    for (std::size_t i = 0; i < chans.size(); ++i) {
        for (std::size_t j = i + 1; j < chans.size(); ++j) {
            CHECK(containment(chans[j], bs[j], chans[i], bs[i]).contained);
            CHECK_FALSE(containment(chans[i], bs[i], chans[j], bs[j]).contained);
        }
    }
}

TEST_CASE("caption-literal region form") {
    const auto ch = make_gaussian_bc(1, {0.5, 0.1});
    const auto r = boundary_rates_2user(ch, 1.0, 1.0, RegionForm::CaptionLiteral);
    CHECK(r.rates[1] == doctest::Approx(0.5 * std::log2(1.1 / 0.5)).epsilon(1e-14));
    const auto clamp = boundary_rates_2user(ch, 0.1, 1.0, RegionForm::CaptionLiteral);
    CHECK(clamp.rates[1] == 0.0);  // (0.1 + 0.1) / 0.5 < 1
    CHECK_THROWS_AS(boundary_rates(make_gaussian_bc(1, {3, 2, 1}), std::vector<double>{0.2, 0.3, 0.5}, 1.0,
                                   RegionForm::CaptionLiteral),
                    Error);
}

TEST_CASE("outer-region membership equals capacity containment") {
    ScenarioSampler rng(41);
    int checked = 0;
    for (int i = 0; i < 90; ++i) {
        const double b = std::array{0.5, 1.0, 2.0}[i % 3];
        const std::size_t K = i % 2 == 0 ? 2 : 3;
        const auto s = rng.scenario(K, b, 0.1, 10.0);
        const auto star = trivial_point(s);
        std::vector<double> d(K);
        for (std::size_t k = 0; k < K; ++k) d[k] = std::min(0.999, star[k] * std::exp(rng.uniform(-0.4, 0.4)));
        std::sort(d.begin(), d.end(), std::greater<>());
        if (std::adjacent_find(d.begin(), d.end()) != d.end()) continue;
        const DistortionTuple D(d);
        const auto v = in_outer_region(s, D);
        if (std::abs(v.margin) < 1e-5 * s.rhs()) continue;  // too close to call with sampling
        CHECK(v.member == virtual_fits_physical(s, D).contained);
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("rate_split_grid") {
    const auto ch = make_gaussian_bc(20.0, {4.0, 1e-3, 1e-5});
    const auto grid = rate_split_grid(ch, 512);
    CHECK(grid.size() == split_grid(3, 512).size());
    double smallest_positive = 1.0;
    for (const auto& split : grid) {
        double total = 0.0;
        for (double a : split) {
            CHECK(a >= 0.0);
            total += a;
            if (a > 0.0) smallest_positive = std::min(smallest_positive, a);
        }
        CHECK(std::abs(total - 1.0) <= 1e-12);
        CHECK_NOTHROW(boundary_rates(ch, split, 1.0));
    }
    // Layers carrying power near the smallest noise are represented.
    CHECK(smallest_positive < 1e-5);

    // Two receivers: uniform steps in the strong receiver's rate.
    const auto two = make_gaussian_bc(3.0, {3.0, 1.0});
    const auto g2 = rate_split_grid(two, 9);
    REQUIRE(g2.size() == 9);
    const double top = boundary_rates(two, g2.back(), 1.0).rates[1];
    for (std::size_t i = 0; i < g2.size(); ++i) {
        CHECK(boundary_rates(two, g2[i], 1.0).rates[1] == doctest::Approx(top * i / 8.0).epsilon(1e-12));
    }
}

TEST_CASE("containment sees violations at power levels far below P") {
    // The violating splits sit at alpha in [3.6e-6, 2.4e-4]; an evenly spaced
    // alpha grid of 512 points steps straight over them.
    const auto s = validate_scenario(RawScenario{23.54929169302703, {0.034012668023050294, 0.02177571101393852}, 2.0, 1.0});
    const DistortionTuple d({3.0625301447599478e-06, 9.0422593178215446e-07});
    const auto res = virtual_fits_physical(s, d);
    CHECK_FALSE(res.contained);
    REQUIRE(res.witness.has_value());
    CHECK_FALSE(in_outer_region(s, d).member);
}
