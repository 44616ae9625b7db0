// Randomised property suites for the theorem set: equality at b = 1,
// compression, expansion, the step-schedule reduction, monotonicity in D,
// Minkowski's inequality and the capacity-containment equivalence.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsb/core.hpp"
#include "gsb/rng.hpp"

namespace gsb {

/// Draws random scenarios and schedules for property tests.
class ScenarioSampler {
public:
    explicit ScenarioSampler(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi);
    double log_uniform(double lo, double hi);
    std::size_t uniform_index(std::size_t lo, std::size_t hi);  // inclusive

    /// P and N_k log-uniform on [lo, hi], N distinct and sorted descending.
    BroadcastScenario scenario(std::size_t users, double bandwidth, double lo = 1e-2, double hi = 1e2,
                               double source_var = 1.0);

    /// Finite monotone schedule with tau_K = 0; entries log-uniform on
    /// [1e-3, 1e3] with an occasional exact zero.
    TauSchedule finite_schedule(std::size_t users);

    Xoshiro256ss& engine() { return gen_; }

private:
    Xoshiro256ss gen_;
};

enum class FaultInjection {
    None,
    /// Negates the equality comparison of the b = 1 suite. Used to check that
    /// the harness reports failures.
    NegateEqualityCheck,
};

struct SuiteResult {
    std::string name;
    std::uint64_t trials = 0;
    std::uint64_t passed = 0;
    std::vector<std::string> failures;  // first few, for diagnostics

    bool ok() const { return passed == trials; }
};

std::vector<SuiteResult> run_theorem_suites(std::uint64_t trials, std::uint64_t seed,
                                            FaultInjection fault = FaultInjection::None);

}  // namespace gsb
