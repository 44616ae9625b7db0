// Membership in the outer-bound region: a tuple D belongs to it when
// g(D; tau) <= P + N_1 for every schedule 0 = tau_K <= ... <= tau_1 <= +inf,
// i.e. when the supremum of g over schedules stays below P + N_1.
//
// The search maps [0, +inf] onto [0, 1] with both ends kept exact and a
// logarithmic interior scaled to the tuple (from 1e-12 min D to 1e12 N_S).
// tau_K = 0 is fixed and the K-1 remaining coordinates are ordered. An
// exhaustive grid over the ordered set is followed by cyclic golden-section
// refinement of each coordinate from the best grid nodes. The argmax is
// reported both as tau and as t = tau / (1 + tau).

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "gsb/bound.hpp"
#include "gsb/core.hpp"

namespace gsb {

struct SupOptions {
    /// Grid steps per axis; 0 picks 64 for K <= 3, 16 for K <= 5 and 8 beyond.
    int grid = 0;
    /// Number of best grid nodes refined.
    int starts = 5;
    /// Refinement stops once no coordinate moves more than this.
    double coord_tol = 1e-10;
    int max_sweeps = 100;
};

int default_grid_resolution(std::size_t users);

struct SupResult {
    double sup_value = 0.0;
    TauSchedule argmax_tau = TauSchedule::zeros(1);
    std::vector<double> argmax_t;  // tau / (1 + tau), t_K = 0 included
    std::size_t iterations = 0;    // evaluations of g
    /// Largest change of g between the best grid node and its grid neighbours
    /// plus the refinement gain: an estimate of the residual optimisation
    /// error at the chosen resolution.
    double certified_gap = 0.0;
};

struct MembershipVerdict {
    bool member = false;
    SupResult sup;
    double margin = 0.0;  // (P + N_1) - sup_value
};

/// tau = t / (1 - t), +inf at t = 1.
ExtReal tau_from_compact(double t);
double compact_from_tau(ExtReal tau);

SupResult sup_g(const BroadcastScenario& s, const DistortionTuple& d, const SupOptions& opts = {});

/// member iff sup_g <= (P + N_1)(1 + rel_tol).
MembershipVerdict in_outer_region(const BroadcastScenario& s, const DistortionTuple& d,
                                  double rel_tol = kDefaultRelTolerance, const SupOptions& opts = {});

struct SearchRange {
    double lower = 0.0;
    double upper = 0.0;
};

/// Smallest D_K for which (fixed..., D_K) is a member, found by bisection to
/// an absolute width of `width`. g is nonincreasing in D_K so feasibility is
/// monotone along the search. The default range is [D_K*/2, N_S]; when the
/// lower end is already a member it is returned as is.
double trace_boundary(const BroadcastScenario& s, std::span<const double> fixed,
                      std::optional<SearchRange> range = std::nullopt, double width = 1e-10,
                      double rel_tol = kDefaultRelTolerance, const SupOptions& opts = {});

enum class BoundClass { Degenerate, Equal, StrictlyTighter };

std::string_view to_string(BoundClass c);

/// Regime predicted from b and K alone.
BoundClass analytic_class(const BroadcastScenario& s);

/// Classifies the outer bound against the trivial one by probing membership
/// at and around the trivial point, then checks the result against
/// analytic_class. Throws ClassificationMismatch on disagreement.
BoundClass classify_vs_trivial(const BroadcastScenario& s, double rel_tol = kDefaultRelTolerance,
                               const SupOptions& opts = {});

}  // namespace gsb
