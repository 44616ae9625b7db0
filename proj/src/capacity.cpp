#include "gsb/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace gsb {

GaussianBC make_gaussian_bc(double power, std::vector<double> noises) {
    // Same constraints as a broadcast scenario, without the bandwidth.
    const auto s = validate_scenario(RawScenario{power, noises, 1.0, 1.0});
    return GaussianBC{s.power(), std::move(noises)};
}

GaussianBC physical_channel(const BroadcastScenario& s) {
    return GaussianBC{s.power(), std::vector<double>(s.noises().begin(), s.noises().end())};
}

RatePoint boundary_rates(const GaussianBC& ch, std::span<const double> split, double b, RegionForm form) {
    const std::size_t K = ch.users();
    if (split.size() != K) throw Error(ErrorCode::InvalidSplit, "split must have one share per receiver");
    if (!(b > 0.0)) throw Error(ErrorCode::NonPositiveParameter, "bandwidth must be > 0");
    double total = 0.0;
    for (double a : split) {
        if (!(a >= 0.0)) throw Error(ErrorCode::InvalidSplit, "power shares must be >= 0");
        total += a;
    }
    if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::InvalidSplit, "power shares must sum to 1");
    if (form == RegionForm::CaptionLiteral && K != 2) {
        throw Error(ErrorCode::DimensionMismatch, "caption-literal region is defined for two receivers");
    }

    // suffix[k] = sum_{j>k} alpha_j
    std::vector<double> suffix(K, 0.0);
    for (std::size_t k = K - 1; k > 0; --k) suffix[k - 1] = suffix[k] + split[k];

    RatePoint out;
    out.rates.resize(K);
    double prev = ch.power;
    for (std::size_t k = 0; k < K; ++k) {
        const double beta = suffix[k] * ch.power;
        const double n = ch.noises[k];
        double num = prev + n;
        double den = beta + n;
        if (form == RegionForm::CaptionLiteral && k == 1) den = ch.noises[0];
        out.rates[k] = std::max(0.0, 0.5 * b * std::log2(num / den));
        prev = beta;
    }
    return out;
}

RatePoint boundary_rates_2user(const GaussianBC& ch, double alpha, double b, RegionForm form) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidSplit, "alpha must lie in [0, 1]");
    const double split[2] = {1.0 - alpha, alpha};
    return boundary_rates(ch, split, b, form);
}

std::optional<double> residual_power(const GaussianBC& ch, const RatePoint& r, double b, double rel_tol) {
    if (r.rates.size() != ch.users()) throw Error(ErrorCode::DimensionMismatch, "rate point size");
    const double slack = rel_tol * ch.power;
    double beta = ch.power;
    for (std::size_t k = 0; k < ch.users(); ++k) {
        const double n = ch.noises[k];
        beta = (std::max(beta, 0.0) + n) * std::exp2(-2.0 * r.rates[k] / b) - n;
        if (beta < -slack) return std::nullopt;
    }
    return beta;
}

bool rate_membership(const GaussianBC& ch, const RatePoint& r, double b, double rel_tol) {
    return residual_power(ch, r, b, rel_tol).has_value();
}

GaussianBC virtual_channel(double source_var, const DistortionTuple& d) {
    if (!(source_var > 0.0)) throw Error(ErrorCode::NonPositiveParameter, "source variance must be > 0");
    GaussianBC ch;
    ch.power = source_var;
    const auto D = d.values();
    for (std::size_t k = 0; k < D.size(); ++k) {
        if (D[k] >= source_var) {
            throw Error(ErrorCode::DistortionAtSourceVariance, "D_k = N_S gives an infinitely noisy virtual receiver");
        }
        if (k > 0 && !(D[k - 1] > D[k])) {
            throw Error(ErrorCode::NonStrictOrdering, "virtual channel needs D_1 > D_2 > ... > D_K");
        }
        ch.noises.push_back(source_var * D[k] / (source_var - D[k]));
    }
    return ch;
}

std::vector<std::vector<double>> split_grid(std::size_t users, std::size_t samples) {
    if (users == 0) throw Error(ErrorCode::DimensionMismatch, "no receivers");
    std::vector<std::vector<double>> out;
    if (users == 1) {
        out.push_back({1.0});
        return out;
    }
    if (samples < 2) samples = 2;
    if (users == 2) {
        for (std::size_t i = 0; i < samples; ++i) {
            const double a = static_cast<double>(i) / static_cast<double>(samples - 1);
            out.push_back({1.0 - a, a});
        }
        return out;
    }
    // Number of compositions of n into `users` parts is C(n + users - 1, users - 1).
    auto count = [users](std::size_t n) {
        double c = 1.0;
        for (std::size_t i = 1; i < users; ++i) c = c * static_cast<double>(n + i) / static_cast<double>(i);
        return c;
    };
    std::size_t n = 1;
    while (count(n + 1) <= static_cast<double>(samples)) ++n;

    std::vector<std::size_t> parts(users, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
        if (pos + 1 == users) {
            parts[pos] = left;
            std::vector<double> split(users);
            for (std::size_t i = 0; i < users; ++i) split[i] = static_cast<double>(parts[i]) / static_cast<double>(n);
            out.push_back(std::move(split));
            return;
        }
        for (std::size_t i = 0; i <= left; ++i) {
            parts[pos] = i;
            rec(pos + 1, left - i);
        }
    };
    rec(0, n);
    return out;
}

std::vector<std::vector<double>> rate_split_grid(const GaussianBC& ch, std::size_t samples) {
    const std::size_t K = ch.users();
    const double floor_noise = ch.noises.back();
    const double span = std::log1p(ch.power / floor_noise);
    auto out = split_grid(K, samples);
    for (auto& split : out) {
        // split is read as the increments of log(beta + N_K) / span.
        std::vector<double> beta(K + 1, 0.0);
        beta[0] = ch.power;
        double used = 0.0;
        for (std::size_t k = 1; k < K; ++k) {
            used += split[k - 1];
            beta[k] = std::min(beta[k - 1], floor_noise * std::expm1(span * (1.0 - used)));
        }
        for (std::size_t k = 0; k < K; ++k) split[k] = (beta[k] - beta[k + 1]) / ch.power;
        // Telescoped shares sum to 1 up to rounding; give the residue to layer 1.
        split[0] += 1.0 - std::accumulate(split.begin(), split.end(), 0.0);
        split[0] = std::max(0.0, split[0]);
    }
    return out;
}

std::vector<RegionSample> sample_region(const GaussianBC& ch, double b, std::size_t samples, RegionForm form) {
    std::vector<RegionSample> out;
    for (auto& split : split_grid(ch.users(), samples)) {
        RatePoint r = boundary_rates(ch, split, b, form);
        out.push_back(RegionSample{std::move(split), std::move(r)});
    }
    return out;
}

ContainmentResult containment(const GaussianBC& inner, double b_in, const GaussianBC& outer, double b_out,
                              std::size_t samples, double tol_bits) {
    if (inner.users() != outer.users()) {
        throw Error(ErrorCode::DimensionMismatch, "regions have different numbers of receivers");
    }
    ContainmentResult res;
    for (const auto& split : rate_split_grid(inner, samples)) {
        RatePoint r = boundary_rates(inner, split, b_in);
        RatePoint shrunk = r;
        for (double& x : shrunk.rates) x = std::max(0.0, x - tol_bits);
        ++res.checked;
        if (!rate_membership(outer, shrunk, b_out)) {
            res.contained = false;
            res.witness = std::move(r);
            return res;
        }
    }
    return res;
}

ContainmentResult virtual_fits_physical(const BroadcastScenario& s, const DistortionTuple& d, std::size_t samples,
                                        double tol_bits) {
    check_distortions(s, d);
    return containment(virtual_channel(s.source_var(), d), 1.0, physical_channel(s), s.bandwidth(), samples,
                       tol_bits);
}

BroadcastScenario scenario_from_capacities(double c1, double c2, double b, double source_var) {
    if (!(c1 > 0.0) || !(c2 > c1) || !std::isfinite(c2)) {
        throw Error(ErrorCode::InvalidCapacities, "capacities must satisfy 0 < C_1 < C_2");
    }
    if (!(b > 0.0)) throw Error(ErrorCode::NonPositiveParameter, "bandwidth must be > 0");
    constexpr double P = 1.0;
    const double n1 = P / (std::exp2(2.0 * c1 / b) - 1.0);
    const double n2 = P / (std::exp2(2.0 * c2 / b) - 1.0);
    if (!(n2 > 0.0)) throw Error(ErrorCode::InvalidCapacities, "C_2 / b too large for double precision");
    return validate_scenario(RawScenario{P, {n1, n2}, b, source_var});
}

}  // namespace gsb
