// Capacity regions of degraded Gaussian broadcast channels.
//
// With superposition coding and power split alpha_1..alpha_K (alpha_k is the
// share of receiver k), the residual power seen by receiver k is
// beta_k = P * sum_{j>k} alpha_j, beta_0 = P, and the dominant face is
//
//   R_k = (b/2) log2((beta_{k-1} + N_k) / (beta_k + N_k)).
//
// Rates are in bits per source sample once scaled by b (bits per channel use
// when b = 1).

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gsb/core.hpp"

namespace gsb {

struct GaussianBC {
    double power = 0.0;
    std::vector<double> noises;  // strictly decreasing, positive

    std::size_t users() const noexcept { return noises.size(); }
};

GaussianBC make_gaussian_bc(double power, std::vector<double> noises);
GaussianBC physical_channel(const BroadcastScenario& s);

struct RatePoint {
    std::vector<double> rates;
};

enum class RegionForm {
    Standard,
    /// Two-user only: R_2 = (b/2) log2((alpha P + N_2) / N_1), a variant seen
    /// in some plots of this region. Not a capacity region; negative values
    /// are clamped to zero.
    CaptionLiteral,
};

RatePoint boundary_rates(const GaussianBC& ch, std::span<const double> split, double b,
                         RegionForm form = RegionForm::Standard);

/// Two-user shortcut: alpha is the share of receiver 2.
RatePoint boundary_rates_2user(const GaussianBC& ch, double alpha, double b,
                               RegionForm form = RegionForm::Standard);

/// Residual power left after serving r by greedy layer-by-layer inversion
/// from the worst receiver; nullopt as soon as a layer runs out of power.
/// The returned beta_K may be slightly negative within the tolerance.
std::optional<double> residual_power(const GaussianBC& ch, const RatePoint& r, double b, double rel_tol = 1e-9);

/// True iff r lies in b * C(ch) (tolerance relative to the channel power).
bool rate_membership(const GaussianBC& ch, const RatePoint& r, double b, double rel_tol = 1e-9);

/// Channel with power N_S and noises N_S D_k / (N_S - D_k). Requires
/// N_S > D_1 > D_2 > ... > D_K > 0.
GaussianBC virtual_channel(double source_var, const DistortionTuple& d);

/// Power splits on the simplex: `samples` evenly spaced values of alpha_2 for
/// K = 2, the largest uniform composition lattice with at most `samples`
/// nodes for K >= 3.
std::vector<std::vector<double>> split_grid(std::size_t users, std::size_t samples);

/// Power splits spread evenly in rate rather than in power: the increments of
/// log(beta_k + N_K), with beta_k the power left after layer k and N_K the
/// smallest noise, run over the same composition lattice as split_grid. Keeps
/// resolution at power levels far below P, where a weak layer still carries
/// bits for the strongest receiver.
std::vector<std::vector<double>> rate_split_grid(const GaussianBC& ch, std::size_t samples);

struct RegionSample {
    std::vector<double> split;
    RatePoint rates;
};

std::vector<RegionSample> sample_region(const GaussianBC& ch, double b, std::size_t samples,
                                        RegionForm form = RegionForm::Standard);

struct ContainmentResult {
    bool contained = true;
    std::optional<RatePoint> witness;  // first sampled inner point outside
    std::size_t checked = 0;
};

inline constexpr double kDefaultBitTolerance = 1e-7;

/// Samples the dominant face of b_in * C(inner) on rate_split_grid, shrinks each point by
/// tol_bits per coordinate, and tests it against b_out * C(outer).
ContainmentResult containment(const GaussianBC& inner, double b_in, const GaussianBC& outer, double b_out,
                              std::size_t samples = 512, double tol_bits = kDefaultBitTolerance);

/// Whether C(N_S, D) fits inside b * C(P, N): the virtual channel of D at
/// unit bandwidth against the physical channel of s.
ContainmentResult virtual_fits_physical(const BroadcastScenario& s, const DistortionTuple& d,
                                        std::size_t samples = 512, double tol_bits = kDefaultBitTolerance);

/// Two-user scenario with P = 1 whose point-to-point capacities at bandwidth
/// b are C_1 and C_2: N_k = P / (2^(2 C_k / b) - 1).
BroadcastScenario scenario_from_capacities(double c1, double c2, double b, double source_var = 1.0);

}  // namespace gsb
