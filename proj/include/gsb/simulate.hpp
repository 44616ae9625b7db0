// Monte Carlo check that uncoded transmission reaches the point-to-point
// distortions when the bandwidths match (b = 1).
//
// Per sample: S ~ N(0, N_S), X = sqrt(P / N_S) S, Y_k = X + Z_k with
// Z_k ~ N(0, N_k), and the receiver applies the LMMSE estimate
// S_hat_k = sqrt(P N_S) / (P + N_k) * Y_k.

#pragma once

#include <cstdint>
#include <vector>

#include "gsb/core.hpp"
#include "json.hpp"

namespace gsb {

struct SimConfig {
    BroadcastScenario scenario;
    std::uint64_t samples = 1;
    std::uint64_t seed = 0;
};

struct SimReport {
    std::vector<double> empirical;    // mean squared error per receiver
    std::vector<double> theoretical;  // D_k*
    std::vector<double> std_err;      // standard error of each mean
    double empirical_power = 0.0;     // mean of X^2
    double power_std_err = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::string generator;
};

/// Samples are processed in fixed chunks, chunk c drawing from the seeded
/// generator jumped c times, and partial sums are reduced in chunk order. The
/// report therefore does not depend on `threads`.
SimReport run_analog(const SimConfig& cfg, unsigned threads = 1);

inline constexpr std::uint64_t kSimChunk = 1u << 16;

nlohmann::json to_json(const SimReport& r);

}  // namespace gsb
