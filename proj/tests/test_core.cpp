#include <cmath>
#include <limits>

#include "doctest.h"
#include "gsb/core.hpp"
#include "gsb/scenario_io.hpp"
#include "gsb/verify.hpp"

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

TEST_CASE("ExtReal rejects NaN and negatives") {
    CHECK(code_of([] { ExtReal(std::nan("")); }) == ErrorCode::InvalidTauValue);
    CHECK(code_of([] { ExtReal(-1.0); }) == ErrorCode::InvalidTauValue);
    CHECK(ExtReal(std::numeric_limits<double>::infinity()).is_inf());
    CHECK(ExtReal(2.0) < ExtReal::infinity());
    CHECK(ExtReal::infinity() == ExtReal::infinity());
    CHECK((ExtReal(1.0) + ExtReal::infinity()).is_inf());
}

TEST_CASE("ExtReal parsing accepts only `inf` for infinity") {
    CHECK(parse_ext_real("inf").is_inf());
    CHECK(parse_ext_real("1.5").value() == 1.5);
    CHECK(code_of([] { parse_ext_real("Infinity"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_ext_real("+inf"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_ext_real("-2"); }) == ErrorCode::InvalidTauValue);
    CHECK(format_ext_real(ExtReal::infinity()) == "inf");
}

TEST_CASE("validate_scenario") {
    SUBCASE("valid") {
        const auto s = make(3, {3, 1}, 1);
        CHECK(s.users() == 2);
        CHECK(s.delta_noise(1) == 2.0);
        CHECK(s.delta_noise(2) == 1.0);
        CHECK(s.rhs() == 6.0);
    }
    SUBCASE("ordering violated") {
        CHECK(code_of([] { make(3, {1, 3}, 1); }) == ErrorCode::NonDecreasingNoises);
        CHECK(code_of([] { make(3, {2, 2}, 1); }) == ErrorCode::NonDecreasingNoises);
    }
    SUBCASE("non-positive parameters") {
        CHECK(code_of([] { make(0, {1}, 1); }) == ErrorCode::NonPositiveParameter);
        CHECK(code_of([] { make(1, {1}, 0); }) == ErrorCode::NonPositiveParameter);
        CHECK(code_of([] { make(1, {1}, 1, -1); }) == ErrorCode::NonPositiveParameter);
        CHECK(code_of([] { make(1, {1, 0}, 1); }) == ErrorCode::NonPositiveParameter);
        CHECK(code_of([] { make(1, {}, 1); }) == ErrorCode::NonPositiveParameter);
    }
    SUBCASE("source variance is carried, not normalised") {
        const auto s = make(3, {3, 1}, 1, 2.5);
        CHECK(s.source_var() == 2.5);
        CHECK(trivial_distortion(s, 1) == doctest::Approx(1.25).epsilon(1e-15));
    }
}

TEST_CASE("trivial_distortion") {
    CHECK(trivial_distortion(make(3, {3, 1}, 1), 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(trivial_distortion(make(3, {3, 1}, 2), 2) == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(trivial_distortion(make(3, {3, 1}, 0.5), 1) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(code_of([] { trivial_distortion(make(3, {3, 1}, 1), 3); }) == ErrorCode::IndexOutOfRange);
    CHECK(code_of([] { trivial_distortion(make(3, {3, 1}, 1), 0); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("trivial_distortion properties on random scenarios") {
    ScenarioSampler rng(11);
    for (int i = 0; i < 500; ++i) {
        const double b = rng.log_uniform(0.05, 8.0);
        const auto s = rng.scenario(rng.uniform_index(1, 5), b);
        for (std::size_t k = 1; k <= s.users(); ++k) {
            const double d = trivial_distortion(s, k);
            CHECK(d > 0.0);
            CHECK(d < s.source_var());
            if (k > 1) CHECK(trivial_distortion(s, k - 1) > d);  // higher noise, higher distortion
        }
        const auto matched = validate_scenario(RawScenario{s.power(), {s.noises().begin(), s.noises().end()}, 1.0, 1.0});
        for (std::size_t k = 1; k <= s.users(); ++k) {
            const double n = s.noise(k);
            CHECK(trivial_distortion(matched, k) == doctest::Approx(n / (s.power() + n)).epsilon(1e-15));
        }
    }
}

TEST_CASE("tau_step_schedule") {
    const auto t = tau_step_schedule(3, 2);
    CHECK(t[0].is_inf());
    CHECK(t[1] == ExtReal(0.0));
    CHECK(t[2] == ExtReal(0.0));
    CHECK(tau_step_schedule(1, 1)[0] == ExtReal(0.0));
    const auto flat = tau_step_schedule(2, 1);
    CHECK(flat.all_finite());
    CHECK(flat[0] == ExtReal(0.0));
    CHECK(code_of([] { tau_step_schedule(2, 3); }) == ErrorCode::IndexOutOfRange);
    CHECK(code_of([] { tau_step_schedule(2, 0); }) == ErrorCode::IndexOutOfRange);
    for (std::size_t K = 1; K <= 6; ++K) {
        for (std::size_t k = 1; k <= K; ++k) {
            const auto step = tau_step_schedule(K, k);
            CHECK_NOTHROW(TauSchedule(std::vector<ExtReal>(step.taus().begin(), step.taus().end())));
        }
    }
}

TEST_CASE("TauSchedule invariants") {
    CHECK(code_of([] { TauSchedule::from_doubles(std::vector<double>{0.0, 1.0}); }) == ErrorCode::NonMonotoneTau);
    CHECK(code_of([] { TauSchedule::from_doubles(std::vector<double>{2.0, 1.0}); }) == ErrorCode::NonZeroLastTau);
    CHECK_NOTHROW(TauSchedule({ExtReal::infinity(), ExtReal::infinity(), ExtReal(0.0)}));
    CHECK(code_of([] { TauSchedule({ExtReal(1.0), ExtReal::infinity(), ExtReal(0.0)}); }) == ErrorCode::NonMonotoneTau);
}

TEST_CASE("DistortionTuple bounds") {
    const auto s = make(3, {3, 1}, 1);
    CHECK(code_of([] { DistortionTuple({0.5, 0.0}); }) == ErrorCode::InvalidDistortion);
    CHECK(code_of([&] { check_distortions(s, DistortionTuple({0.5, 1.5})); }) == ErrorCode::InvalidDistortion);
    CHECK(code_of([&] { check_distortions(s, DistortionTuple({0.5})); }) == ErrorCode::InvalidDistortion);
    CHECK_NOTHROW(check_distortions(s, DistortionTuple({1.0, 1.0})));  // D = N_S is allowed
}

TEST_CASE("scenario files") {
    const auto s = parse_scenario(R"({"power": 3, "noises": [3, 1], "bandwidth": 2, "source_var": 1})");
    CHECK(s.power() == 3.0);
    CHECK(s.bandwidth() == 2.0);
    const auto defaults = parse_scenario(R"({"power": 1, "noises": [1]})");
    CHECK(defaults.bandwidth() == 1.0);
    CHECK(defaults.source_var() == 1.0);
    CHECK(code_of([] { parse_scenario(R"({"power": 1})"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_scenario(R"({"power": "x", "noises": [1]})"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_scenario("not json"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_scenario(R"({"power": 1, "noises": [1, 2]})"); }) == ErrorCode::NonDecreasingNoises);
    const auto j = to_json(s);
    CHECK(parse_scenario(j.dump()).noises()[1] == 1.0);
}
