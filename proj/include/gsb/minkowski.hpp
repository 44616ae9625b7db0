// Minkowski's inequality for sequences of extended reals: for 0 < p < 1
//   ||x||_p + ||y||_p <= ||x + y||_p
// and the reverse for p > 1, with equality iff x and y are positively linearly
// dependent, x vanishes, or an entry is +inf.

#pragma once

#include <vector>

#include "gsb/core.hpp"

namespace gsb {

using ExtVector = std::vector<ExtReal>;

ExtVector to_ext_vector(std::span<const double> v);

/// (sum_i x_i^p)^(1/p), accumulated in the log domain. Throws ZeroP for p = 0.
ExtReal power_sum(const ExtVector& x, double p);

struct MinkowskiCheck {
    bool direction_holds = false;
    bool equality = false;
    ExtReal lhs;  // power_sum(x) + power_sum(y)
    ExtReal rhs;  // power_sum(x + y)
};

/// Requires p > 0 and |p - 1| >= 1e-3; the comparison tolerance is relative
/// to max(1, rhs).
MinkowskiCheck check_minkowski(const ExtVector& x, const ExtVector& y, double p, double tol = 1e-9);

/// y = lambda x for some lambda >= 0, x identically zero, or any entry +inf.
/// Ratios are compared with relative tolerance rel_tol; zero patterns must
/// match exactly.
bool equality_condition(const ExtVector& x, const ExtVector& y, double rel_tol = 1e-12);

}  // namespace gsb
