#include "gsb/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "gsb/rng.hpp"

namespace gsb {

// ---------------------------------------------------------------------------
// xoshiro256**

namespace {

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed) {
    for (auto& w : s_) w = splitmix64(seed);
}

Xoshiro256ss::result_type Xoshiro256ss::operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

void Xoshiro256ss::jump() {
    static constexpr std::uint64_t kJump[] = {0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL, 0xa9582618e03fc9aaULL,
                                              0x39abdc4529b1661cULL};
    std::array<std::uint64_t, 4> acc{};
    for (std::uint64_t word : kJump) {
        for (int b = 0; b < 64; ++b) {
            if (word & (std::uint64_t{1} << b)) {
                for (int i = 0; i < 4; ++i) acc[i] ^= s_[i];
            }
            (*this)();
        }
    }
    s_ = acc;
    has_spare_ = false;
}

double Xoshiro256ss::uniform_open() {
    // (k + 0.5) / 2^53 for k in [0, 2^53) never hits 0 or 1.
    const std::uint64_t k = (*this)() >> 11;
    return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double Xoshiro256ss::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

// ---------------------------------------------------------------------------

namespace {

struct Partial {
    std::vector<double> err2;  // sum of squared errors per receiver
    std::vector<double> err4;  // sum of fourth powers
    double pow2 = 0.0;
    double pow4 = 0.0;
};

Partial run_chunk(const BroadcastScenario& s, Xoshiro256ss gen, std::uint64_t count) {
    const std::size_t K = s.users();
    const double P = s.power();
    const double ns = s.source_var();
    const double src_scale = std::sqrt(ns);
    const double tx_gain = std::sqrt(P / ns);
    std::vector<double> noise_scale(K), est_gain(K);
    for (std::size_t k = 0; k < K; ++k) {
        const double n = s.noises()[k];
        noise_scale[k] = std::sqrt(n);
        est_gain[k] = std::sqrt(P * ns) / (P + n);
    }

    Partial part;
    part.err2.assign(K, 0.0);
    part.err4.assign(K, 0.0);
    for (std::uint64_t i = 0; i < count; ++i) {
        const double src = src_scale * gen.normal();
        const double x = tx_gain * src;
        const double x2 = x * x;
        part.pow2 += x2;
        part.pow4 += x2 * x2;
        for (std::size_t k = 0; k < K; ++k) {
            const double y = x + noise_scale[k] * gen.normal();
            const double e = src - est_gain[k] * y;
            const double e2 = e * e;
            part.err2[k] += e2;
            part.err4[k] += e2 * e2;
        }
    }
    return part;
}

// Mean and standard error from the first two moment sums of a statistic.
std::pair<double, double> mean_and_se(double sum, double sum_sq, double m) {
    const double mean = sum / m;
    // One sample has no spread estimate; report a 100% error bar instead of NaN.
    if (m < 2.0) return {mean, mean};
    const double var = std::max(0.0, (sum_sq / m - mean * mean) * m / (m - 1.0));
    return {mean, std::sqrt(var / m)};
}

}  // namespace

SimReport run_analog(const SimConfig& cfg, unsigned threads) {
    const BroadcastScenario& s = cfg.scenario;
    if (s.bandwidth() != 1.0) {
        throw Error(ErrorCode::BandwidthNotOne, "analog simulation covers the matched case b = 1 only");
    }
    if (cfg.samples < 1) throw Error(ErrorCode::NonPositiveParameter, "sample count must be >= 1");

    const std::uint64_t chunks = (cfg.samples + kSimChunk - 1) / kSimChunk;
    std::vector<Xoshiro256ss> starts;
    starts.reserve(chunks);
    Xoshiro256ss gen(cfg.seed);
    for (std::uint64_t c = 0; c < chunks; ++c) {
        starts.push_back(gen);
        gen.jump();
    }

    std::vector<Partial> parts(chunks);
    auto work = [&](std::uint64_t c) {
        const std::uint64_t count = std::min(kSimChunk, cfg.samples - c * kSimChunk);
        parts[c] = run_chunk(s, starts[c], count);
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
    if (threads == 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) work(c);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::uint64_t c = t; c < chunks; c += threads) work(c);
            });
        }
    }

    const std::size_t K = s.users();
    std::vector<double> e2(K, 0.0), e4(K, 0.0);
    double p2 = 0.0, p4 = 0.0;
    for (const auto& part : parts) {
        for (std::size_t k = 0; k < K; ++k) {
            e2[k] += part.err2[k];
            e4[k] += part.err4[k];
        }
        p2 += part.pow2;
        p4 += part.pow4;
    }

    const double m = static_cast<double>(cfg.samples);
    SimReport r;
    r.samples = cfg.samples;
    r.seed = cfg.seed;
    r.generator = Xoshiro256ss::name();
    for (std::size_t k = 0; k < K; ++k) {
        const auto [mean, se] = mean_and_se(e2[k], e4[k], m);
        r.empirical.push_back(mean);
        r.std_err.push_back(se);
        r.theoretical.push_back(trivial_distortion(s, k + 1));
    }
    std::tie(r.empirical_power, r.power_std_err) = mean_and_se(p2, p4, m);
    return r;
}

nlohmann::json to_json(const SimReport& r) {
    return {
        {"generator", r.generator},
        {"seed", r.seed},
        {"samples", r.samples},
        {"empirical", r.empirical},
        {"theoretical", r.theoretical},
        {"std_err", r.std_err},
        {"empirical_power", r.empirical_power},
        {"power_std_err", r.power_std_err},
    };
}

}  // namespace gsb
