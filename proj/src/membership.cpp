#include "gsb/membership.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace gsb {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2

// Search coordinate u in [0, 1]: u = 0 is tau = 0, u = 1 is tau = inf, and
// interior u is logarithmic in tau between 1e-12 min(D) and 1e12 N_S. g only
// moves where tau is comparable to some D_k or N_S, which can be many decades
// apart, so a linear compactification would step over narrow features.
class ScheduleObjective {
public:
    ScheduleObjective(const BroadcastScenario& s, const DistortionTuple& d) : s_(s), d_(d) {
        const auto v = d.values();
        log_lo_ = std::log(*std::min_element(v.begin(), v.end())) - 12.0 * std::log(10.0);
        log_hi_ = std::log(s.source_var()) + 12.0 * std::log(10.0);
    }

    // u holds the K-1 free coordinates u_1 >= ... >= u_{K-1}.
    double operator()(std::span<const double> u) {
        ++evaluations;
        return eval_g_extended(s_, d_, schedule(u)).value();
    }

    ExtReal tau(double u) const {
        if (u <= 0.0) return ExtReal(0.0);
        if (u >= 1.0) return ExtReal::infinity();
        return ExtReal(std::exp(log_lo_ + (log_hi_ - log_lo_) * u));
    }

    TauSchedule schedule(std::span<const double> u) const {
        std::vector<ExtReal> taus;
        taus.reserve(u.size() + 1);
        for (double x : u) taus.push_back(tau(x));
        taus.emplace_back(0.0);
        return TauSchedule(std::move(taus));
    }

    std::size_t evaluations = 0;

private:
    const BroadcastScenario& s_;
    const DistortionTuple& d_;
    double log_lo_ = 0.0;
    double log_hi_ = 0.0;
};

struct GridNode {
    double value;
    std::vector<int> idx;
};

// Visits every nonincreasing index vector idx_0 >= ... >= idx_{F-1} in [0, G].
void enumerate_ordered(int free_dims, int G, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> idx(free_dims, 0);
    std::function<void(int, int)> rec = [&](int pos, int upper) {
        if (pos == free_dims) {
            visit(idx);
            return;
        }
        for (int i = 0; i <= upper; ++i) {
            idx[pos] = i;
            rec(pos + 1, i);
        }
    };
    rec(0, G);
}

// Maximises f on [lo, hi]; returns (argmax, value) among the golden-section
// result and both endpoints.
std::pair<double, double> golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double best_x = lo;
    double best_v = f(lo);
    if (hi - lo <= 0.0) return {best_x, best_v};
    const double v_hi = f(hi);
    if (v_hi > best_v) {
        best_x = hi;
        best_v = v_hi;
    }
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    const double x = fc >= fd ? c : d;
    const double v = std::max(fc, fd);
    if (v > best_v) {
        best_x = x;
        best_v = v;
    }
    return {best_x, best_v};
}

}  // namespace

int default_grid_resolution(std::size_t users) {
    if (users <= 3) return 64;
    if (users <= 5) return 16;
    return 8;
}

ExtReal tau_from_compact(double t) {
    if (!(t >= 0.0) || t > 1.0) throw Error(ErrorCode::InvalidTauValue, "compact coordinate outside [0, 1]");
    if (t == 1.0) return ExtReal::infinity();
    return ExtReal(t / (1.0 - t));
}

double compact_from_tau(ExtReal tau) {
    if (tau.is_inf()) return 1.0;
    return tau.value() / (1.0 + tau.value());
}

SupResult sup_g(const BroadcastScenario& s, const DistortionTuple& d, const SupOptions& opts) {
    check_distortions(s, d);
    const std::size_t K = s.users();
    const int F = static_cast<int>(K) - 1;
    ScheduleObjective objective(s, d);

    SupResult result;
    if (F == 0) {
        const std::vector<double> none;
        result.sup_value = objective(none);
        result.argmax_tau = TauSchedule::zeros(1);
        result.argmax_t = {0.0};
        result.iterations = objective.evaluations;
        return result;
    }

    const int G = opts.grid > 0 ? opts.grid : default_grid_resolution(K);
    const std::size_t keep = static_cast<std::size_t>(std::max(1, opts.starts));
    std::vector<GridNode> best;  // sorted descending, size <= keep
    std::vector<double> t(F);
    enumerate_ordered(F, G, [&](const std::vector<int>& idx) {
        for (int i = 0; i < F; ++i) t[i] = static_cast<double>(idx[i]) / G;
        const double v = objective(t);
        if (best.size() < keep || v > best.back().value) {
            auto pos = std::find_if(best.begin(), best.end(), [v](const GridNode& n) { return v > n.value; });
            best.insert(pos, GridNode{v, idx});
            if (best.size() > keep) best.pop_back();
        }
    });

    const double grid_best = best.front().value;

    // Local variation around the incumbent grid node.
    double neighbour_spread = 0.0;
    {
        const auto& idx = best.front().idx;
        for (int i = 0; i < F; ++i) {
            for (int step : {-1, 1}) {
                std::vector<int> n = idx;
                n[i] += step;
                const int upper = i == 0 ? G : n[i - 1];
                const int lower = i + 1 < F ? n[i + 1] : 0;
                if (n[i] < lower || n[i] > upper) continue;
                for (int j = 0; j < F; ++j) t[j] = static_cast<double>(n[j]) / G;
                neighbour_spread = std::max(neighbour_spread, std::abs(objective(t) - grid_best));
            }
        }
    }

    double best_value = grid_best;
    std::vector<double> best_t(F);
    for (int i = 0; i < F; ++i) best_t[i] = static_cast<double>(best.front().idx[i]) / G;

    for (const auto& start : best) {
        std::vector<double> cur(F);
        for (int i = 0; i < F; ++i) cur[i] = static_cast<double>(start.idx[i]) / G;
        double cur_value = start.value;
        for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
            double max_move = 0.0;
            for (int i = 0; i < F; ++i) {
                const double hi = i == 0 ? 1.0 : cur[i - 1];
                const double lo = i + 1 < F ? cur[i + 1] : 0.0;
                std::vector<double> probe = cur;
                auto along = [&](double x) {
                    probe[i] = x;
                    return objective(probe);
                };
                const auto [x, v] = golden_max(along, lo, hi, opts.coord_tol);
                if (v > cur_value) {
                    max_move = std::max(max_move, std::abs(x - cur[i]));
                    cur[i] = x;
                    cur_value = v;
                }
            }
            if (max_move < opts.coord_tol) break;
        }
        if (cur_value > best_value) {
            best_value = cur_value;
            best_t = cur;
        }
    }

    result.sup_value = best_value;
    result.argmax_tau = objective.schedule(best_t);
    for (const auto& x : result.argmax_tau.taus()) result.argmax_t.push_back(compact_from_tau(x));
    result.iterations = objective.evaluations;
    result.certified_gap = neighbour_spread + (best_value - grid_best);
    return result;
}

MembershipVerdict in_outer_region(const BroadcastScenario& s, const DistortionTuple& d, double rel_tol,
                                  const SupOptions& opts) {
    MembershipVerdict v;
    v.sup = sup_g(s, d, opts);
    v.margin = s.rhs() - v.sup.sup_value;
    v.member = v.margin >= -rel_tol * s.rhs();
    return v;
}

double trace_boundary(const BroadcastScenario& s, std::span<const double> fixed, std::optional<SearchRange> range,
                      double width, double rel_tol, const SupOptions& opts) {
    const std::size_t K = s.users();
    if (fixed.size() + 1 != K) {
        throw Error(ErrorCode::DimensionMismatch, "trace_boundary needs K-1 fixed distortions");
    }
    SearchRange r = range.value_or(SearchRange{0.5 * trivial_distortion(s, K), s.source_var()});
    if (!(r.lower > 0.0) || !(r.upper > r.lower) || r.upper > s.source_var()) {
        throw Error(ErrorCode::InvalidDistortion, "search range must satisfy 0 < lower < upper <= N_S");
    }
    std::vector<double> work(fixed.begin(), fixed.end());
    work.push_back(0.0);
    auto member = [&](double dk) {
        work.back() = dk;
        return in_outer_region(s, DistortionTuple(work), rel_tol, opts).member;
    };
    if (!member(r.upper)) {
        throw Error(ErrorCode::InfeasibleEverywhere, "not a member even at the top of the search range");
    }
    if (member(r.lower)) return r.lower;
    double lo = r.lower, hi = r.upper;
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        if (member(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

std::string_view to_string(BoundClass c) {
    switch (c) {
        case BoundClass::Degenerate: return "Degenerate";
        case BoundClass::Equal: return "Equal";
        case BoundClass::StrictlyTighter: return "StrictlyTighter";
    }
    return "Unknown";
}

BoundClass analytic_class(const BroadcastScenario& s) {
    if (s.users() == 1) return BoundClass::Equal;
    if (s.bandwidth() < 1.0) return BoundClass::Degenerate;
    if (s.bandwidth() == 1.0) return BoundClass::Equal;
    return BoundClass::StrictlyTighter;
}

BoundClass classify_vs_trivial(const BroadcastScenario& s, double rel_tol, const SupOptions& opts) {
    const std::size_t K = s.users();
    const DistortionTuple star = trivial_point(s);
    const auto mismatch = [](const std::string& what) { throw Error(ErrorCode::ClassificationMismatch, what); };

    // Any coordinate pushed below its point-to-point optimum leaves the region.
    constexpr double kProbe = 1e-4;
    for (std::size_t k = 0; k < K; ++k) {
        std::vector<double> lowered(star.values().begin(), star.values().end());
        lowered[k] *= 1.0 - kProbe;
        if (in_outer_region(s, DistortionTuple(lowered), rel_tol, opts).member) {
            mismatch("a tuple below the trivial point was classified as a member");
        }
    }

    BoundClass empirical;
    if (!in_outer_region(s, star, rel_tol, opts).member) {
        empirical = BoundClass::StrictlyTighter;
    } else {
        std::vector<double> raised(star.values().begin(), star.values().end());
        for (double& x : raised) x = std::min(s.source_var(), x * (1.0 + kProbe));
        if (!in_outer_region(s, DistortionTuple(raised), rel_tol, opts).member) {
            mismatch("region is not upward closed at the trivial point");
        }
        if (K == 1) {
            empirical = BoundClass::Equal;
        } else {
            std::vector<ExtReal> taus(K, ExtReal(0.0));
            taus[0] = ExtReal(1.0);
            const double g = eval_g(s, star, TauSchedule(std::move(taus)));
            empirical = std::abs(g - s.rhs()) <= rel_tol * s.rhs() ? BoundClass::Equal : BoundClass::Degenerate;
        }
    }

    const BoundClass expected = analytic_class(s);
    if (empirical != expected) {
        mismatch("numerics say " + std::string(to_string(empirical)) + ", b/K regime says " +
                 std::string(to_string(expected)));
    }
    return empirical;
}

}  // namespace gsb
