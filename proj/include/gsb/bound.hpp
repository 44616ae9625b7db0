// The outer-bound functional
//
//   g(D; tau) = sum_k dN_k [ (N_S + tau_k)/(D_1 + tau_1)
//                            * prod_{j=2..k} (D_j + tau_{j-1})/(D_j + tau_j) ]^(1/b)
//
// and the inequality g <= P + N_1 that every achievable distortion tuple
// satisfies for every tau schedule.

#pragma once

#include <vector>

#include "gsb/core.hpp"

namespace gsb {

inline constexpr double kDefaultRelTolerance = 1e-9;

struct BoundEvaluation {
    ExtReal lhs;       // g
    double rhs = 0.0;  // P + N_1
    bool satisfied = false;
    double slack = 0.0;  // rhs - lhs, -inf when lhs is +inf
};

/// g for a schedule whose entries are all finite. Each term is accumulated as
/// a sum of log-ratios and exponentiated once.
double eval_g(const BroadcastScenario& s, const DistortionTuple& d, const TauSchedule& tau);

/// g where the infinite entries of tau tend to +inf together at one shared
/// rate. Factors carrying the divergent parameter cancel pairwise; with a
/// monotone schedule every term keeps as many in the numerator as in the
/// denominator, so the result is finite.
ExtReal eval_g_extended(const BroadcastScenario& s, const DistortionTuple& d, const TauSchedule& tau);

/// (N_1 - N_user) + N_user (N_S / D_user)^(1/b): the value of g at
/// tau_step_schedule(K, user).
double reduced_bound_value(const BroadcastScenario& s, const DistortionTuple& d, std::size_t user);

/// Evaluates g (extended semantics when needed) against P + N_1. The
/// comparison passes when g <= (P + N_1)(1 + rel_tol).
BoundEvaluation check_inequality(const BroadcastScenario& s, const DistortionTuple& d, const TauSchedule& tau,
                                 double rel_tol = kDefaultRelTolerance);

/// Central differences of g with respect to each D_k. Requires a finite
/// schedule and 0 < D_k - h, D_k + h <= N_S.
std::vector<double> finite_diff_partials(const BroadcastScenario& s, const DistortionTuple& d,
                                         const TauSchedule& tau, double h);

}  // namespace gsb
