#include "gsb/bound.hpp"

#include <cmath>
#include <limits>

namespace gsb {

namespace {

// log of a product of ratios, plus the net number of divergent factors
// (numerator minus denominator) that were cancelled out of it.
struct LogRatio {
    double log = 0.0;
    int divergent = 0;

    LogRatio& operator+=(const LogRatio& o) {
        log += o.log;
        divergent += o.divergent;
        return *this;
    }
};

LogRatio log_ratio(double num_base, ExtReal num_tau, double den_base, ExtReal den_tau) {
    const bool num_inf = num_tau.is_inf();
    const bool den_inf = den_tau.is_inf();
    if (num_inf && den_inf) return {};
    if (num_inf) return {-std::log(den_base + den_tau.value()), +1};
    if (den_inf) return {std::log(num_base + num_tau.value()), -1};
    return {std::log((num_base + num_tau.value()) / (den_base + den_tau.value())), 0};
}

ExtReal accumulate_g(const BroadcastScenario& s, const DistortionTuple& d, const TauSchedule& tau) {
    check_distortions(s, d);
    const std::size_t K = s.users();
    if (tau.size() != K) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "tau schedule has " + std::to_string(tau.size()) + " entries, expected " + std::to_string(K));
    }
    const auto D = d.values();
    const auto t = tau.taus();
    const double inv_b = 1.0 / s.bandwidth();

    double total = 0.0;
    LogRatio chain;  // prod_{j=2..k} (D_j + tau_{j-1}) / (D_j + tau_j)
    for (std::size_t k = 0; k < K; ++k) {
        if (k > 0) chain += log_ratio(D[k], t[k - 1], D[k], t[k]);
        LogRatio term = log_ratio(s.source_var(), t[k], D[0], t[0]);
        term += chain;
        const double dn = s.delta_noise(k + 1);
        if (term.divergent > 0) return ExtReal::infinity();
        if (term.divergent < 0) continue;
        total += dn * std::exp(term.log * inv_b);
    }
    return ExtReal(total);
}

}  // namespace

double eval_g(const BroadcastScenario& s, const DistortionTuple& d, const TauSchedule& tau) {
    if (!tau.all_finite()) {
        throw Error(ErrorCode::NonFiniteTau, "eval_g needs a finite schedule; use eval_g_extended");
    }
    return accumulate_g(s, d, tau).value();
}

ExtReal eval_g_extended(const BroadcastScenario& s, const DistortionTuple& d, const TauSchedule& tau) {
    return accumulate_g(s, d, tau);
}

double reduced_bound_value(const BroadcastScenario& s, const DistortionTuple& d, std::size_t user) {
    check_distortions(s, d);
    if (user < 1 || user > s.users()) throw Error(ErrorCode::IndexOutOfRange, "user must lie in 1..K");
    const double n1 = s.noise(1);
    const double nk = s.noise(user);
    return (n1 - nk) + nk * std::pow(s.source_var() / d[user - 1], 1.0 / s.bandwidth());
}

BoundEvaluation check_inequality(const BroadcastScenario& s, const DistortionTuple& d, const TauSchedule& tau,
                                 double rel_tol) {
    BoundEvaluation ev;
    ev.lhs = eval_g_extended(s, d, tau);
    ev.rhs = s.rhs();
    if (ev.lhs.is_inf()) {
        ev.slack = -std::numeric_limits<double>::infinity();
        ev.satisfied = false;
        return ev;
    }
    ev.slack = ev.rhs - ev.lhs.value();
    // Differences within the tolerance band count as equality.
    if (std::abs(ev.slack) <= rel_tol * ev.rhs) ev.slack = 0.0;
    ev.satisfied = ev.slack >= 0.0;
    return ev;
}

std::vector<double> finite_diff_partials(const BroadcastScenario& s, const DistortionTuple& d,
                                         const TauSchedule& tau, double h) {
    check_distortions(s, d);
    if (!tau.all_finite()) throw Error(ErrorCode::NonFiniteTau, "finite differences need a finite schedule");
    if (!(h > 0.0)) throw Error(ErrorCode::StepOutOfDomain, "step must be > 0");
    const auto D = d.values();
    for (double x : D) {
        if (!(x - h > 0.0) || x + h > s.source_var()) {
            throw Error(ErrorCode::StepOutOfDomain, "D_k +/- h leaves (0, N_S]");
        }
    }
    std::vector<double> out(D.size());
    std::vector<double> work(D.begin(), D.end());
    for (std::size_t k = 0; k < D.size(); ++k) {
        work[k] = D[k] + h;
        const double up = eval_g(s, DistortionTuple(work), tau);
        work[k] = D[k] - h;
        const double down = eval_g(s, DistortionTuple(work), tau);
        work[k] = D[k];
        out[k] = (up - down) / (2.0 * h);
    }
    return out;
}

}  // namespace gsb
