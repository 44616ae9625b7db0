#include "gsb/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gsb {

namespace {

void require_same_length(const ExtVector& x, const ExtVector& y) {
    if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "sequences differ in length");
    if (x.empty()) throw Error(ErrorCode::LengthMismatch, "sequences must be nonempty");
}

bool any_inf(const ExtVector& v) {
    return std::any_of(v.begin(), v.end(), [](ExtReal e) { return e.is_inf(); });
}

}  // namespace

ExtVector to_ext_vector(std::span<const double> v) {
    return ExtVector(v.begin(), v.end());
}

ExtReal power_sum(const ExtVector& x, double p) {
    if (p == 0.0 || std::isnan(p)) throw Error(ErrorCode::ZeroP, "exponent must be nonzero");
    if (x.empty()) throw Error(ErrorCode::LengthMismatch, "empty sequence");

    bool has_zero = false;
    bool has_inf = false;
    std::vector<double> logs;  // p * log(x_i) for finite positive entries
    for (ExtReal e : x) {
        if (e.is_inf()) {
            has_inf = true;
        } else if (e.value() == 0.0) {
            has_zero = true;
        } else {
            logs.push_back(p * std::log(e.value()));
        }
    }
    if (p > 0.0) {
        if (has_inf) return ExtReal::infinity();
        if (logs.empty()) return ExtReal(0.0);
    } else {
        // 0^p = +inf drives the sum to +inf and the result to 0; +inf^p = 0.
        if (has_zero) return ExtReal(0.0);
        if (logs.empty()) return ExtReal::infinity();
    }
    const double m = *std::max_element(logs.begin(), logs.end());
    double acc = 0.0;
    for (double l : logs) acc += std::exp(l - m);
    const double log_sum = m + std::log(acc);
    const double r = std::exp(log_sum / p);
    return std::isinf(r) ? ExtReal::infinity() : ExtReal(r);
}

MinkowskiCheck check_minkowski(const ExtVector& x, const ExtVector& y, double p, double tol) {
    require_same_length(x, y);
    if (!(p > 0.0) || std::abs(p - 1.0) < 1e-3 || !std::isfinite(p)) {
        throw Error(ErrorCode::InvalidP, "p must be positive and bounded away from 1");
    }
    ExtVector sum(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) sum[i] = x[i] + y[i];

    MinkowskiCheck c;
    c.lhs = power_sum(x, p) + power_sum(y, p);
    c.rhs = power_sum(sum, p);
    if (c.lhs.is_inf() || c.rhs.is_inf()) {
        // With p > 0 an infinite entry makes both sides infinite.
        c.equality = c.lhs.is_inf() && c.rhs.is_inf();
        c.direction_holds = p < 1.0 ? c.lhs <= c.rhs : c.lhs >= c.rhs;
        return c;
    }
    const double l = c.lhs.value();
    const double r = c.rhs.value();
    const double band = tol * std::max(1.0, r);
    c.direction_holds = p < 1.0 ? l <= r + band : l >= r - band;
    c.equality = std::abs(l - r) <= band;
    return c;
}

bool equality_condition(const ExtVector& x, const ExtVector& y, double rel_tol) {
    require_same_length(x, y);
    if (any_inf(x) || any_inf(y)) return true;
    const bool x_zero = std::all_of(x.begin(), x.end(), [](ExtReal e) { return e.value() == 0.0; });
    if (x_zero) return true;
    const bool y_zero = std::all_of(y.begin(), y.end(), [](ExtReal e) { return e.value() == 0.0; });
    if (y_zero) return true;  // lambda = 0

    double lambda = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i].value();
        const double yi = y[i].value();
        if ((xi == 0.0) != (yi == 0.0)) return false;
        if (xi == 0.0) continue;
        const double ratio = yi / xi;
        if (std::isnan(lambda)) {
            lambda = ratio;
        } else if (std::abs(ratio - lambda) > rel_tol * std::max(std::abs(ratio), std::abs(lambda))) {
            return false;
        }
    }
    return true;
}

}  // namespace gsb
