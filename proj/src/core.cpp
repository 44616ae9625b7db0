#include "gsb/core.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace gsb {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonDecreasingNoises: return "NonDecreasingNoises";
        case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::NonMonotoneTau: return "NonMonotoneTau";
        case ErrorCode::NonZeroLastTau: return "NonZeroLastTau";
        case ErrorCode::InvalidTauValue: return "InvalidTauValue";
        case ErrorCode::NonFiniteTau: return "NonFiniteTau";
        case ErrorCode::InvalidDistortion: return "InvalidDistortion";
        case ErrorCode::StepOutOfDomain: return "StepOutOfDomain";
        case ErrorCode::InfeasibleEverywhere: return "InfeasibleEverywhere";
        case ErrorCode::ClassificationMismatch: return "ClassificationMismatch";
        case ErrorCode::InvalidSplit: return "InvalidSplit";
        case ErrorCode::DistortionAtSourceVariance: return "DistortionAtSourceVariance";
        case ErrorCode::NonStrictOrdering: return "NonStrictOrdering";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidCapacities: return "InvalidCapacities";
        case ErrorCode::ZeroP: return "ZeroP";
        case ErrorCode::InvalidP: return "InvalidP";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::BandwidthNotOne: return "BandwidthNotOne";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

ExtReal::ExtReal(double v) {
    if (std::isnan(v) || v < 0.0) {
        throw Error(ErrorCode::InvalidTauValue, "extended real must be >= 0 or inf");
    }
    if (std::isinf(v)) {
        inf_ = true;
    } else {
        value_ = v;
    }
}

ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.is_inf() || b.is_inf()) return ExtReal::infinity();
    return ExtReal(a.value() + b.value());
}

ExtReal parse_ext_real(std::string_view text) {
    if (text == "inf") return ExtReal::infinity();
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        throw Error(ErrorCode::ParseError, "not a number or `inf`: '" + std::string(text) + "'");
    }
    if (v < 0.0) {
        throw Error(ErrorCode::InvalidTauValue, "negative value '" + std::string(text) + "'");
    }
    return ExtReal(v);
}

std::string format_ext_real(ExtReal x) {
    if (x.is_inf()) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << x.value();
    return os.str();
}

// ---------------------------------------------------------------------------

double BroadcastScenario::noise(std::size_t user) const {
    if (user < 1 || user > noises_.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "receiver index " + std::to_string(user));
    }
    return noises_[user - 1];
}

double BroadcastScenario::delta_noise(std::size_t user) const {
    const double n = noise(user);
    return user == noises_.size() ? n : n - noises_[user];
}

RawScenario BroadcastScenario::raw() const {
    return RawScenario{power_, noises_, bandwidth_, source_var_};
}

BroadcastScenario validate_scenario(const RawScenario& raw) {
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!positive(raw.power)) throw Error(ErrorCode::NonPositiveParameter, "power must be > 0");
    if (!positive(raw.bandwidth)) throw Error(ErrorCode::NonPositiveParameter, "bandwidth must be > 0");
    if (!positive(raw.source_var)) throw Error(ErrorCode::NonPositiveParameter, "source_var must be > 0");
    if (raw.noises.empty()) throw Error(ErrorCode::NonPositiveParameter, "at least one receiver is required");
    for (double n : raw.noises) {
        if (!positive(n)) throw Error(ErrorCode::NonPositiveParameter, "noise variances must be > 0");
    }
    for (std::size_t k = 0; k + 1 < raw.noises.size(); ++k) {
        if (!(raw.noises[k] > raw.noises[k + 1])) {
            throw Error(ErrorCode::NonDecreasingNoises, "noises must satisfy N_1 > N_2 > ... > N_K");
        }
    }
    BroadcastScenario s;
    s.power_ = raw.power;
    s.noises_ = raw.noises;
    s.bandwidth_ = raw.bandwidth;
    s.source_var_ = raw.source_var;
    return s;
}

// ---------------------------------------------------------------------------

TauSchedule::TauSchedule(std::vector<ExtReal> taus) : taus_(std::move(taus)) {
    if (taus_.empty()) throw Error(ErrorCode::IndexOutOfRange, "empty tau schedule");
    for (std::size_t k = 0; k + 1 < taus_.size(); ++k) {
        if (taus_[k + 1] > taus_[k]) {
            throw Error(ErrorCode::NonMonotoneTau, "tau must be nonincreasing in the receiver index");
        }
    }
    if (!(taus_.back() == ExtReal(0.0))) {
        throw Error(ErrorCode::NonZeroLastTau, "tau_K must be 0");
    }
}

bool TauSchedule::all_finite() const noexcept {
    for (auto t : taus_) {
        if (t.is_inf()) return false;
    }
    return true;
}

TauSchedule TauSchedule::zeros(std::size_t users) {
    return TauSchedule(std::vector<ExtReal>(users, ExtReal(0.0)));
}

TauSchedule TauSchedule::from_doubles(std::span<const double> taus) {
    std::vector<ExtReal> v;
    v.reserve(taus.size());
    for (double t : taus) v.emplace_back(t);
    return TauSchedule(std::move(v));
}

DistortionTuple::DistortionTuple(std::vector<double> d) : d_(std::move(d)) {
    if (d_.empty()) throw Error(ErrorCode::InvalidDistortion, "empty distortion tuple");
    for (double x : d_) {
        if (!std::isfinite(x) || !(x > 0.0)) {
            throw Error(ErrorCode::InvalidDistortion, "distortions must be finite and > 0");
        }
    }
}

void check_distortions(const BroadcastScenario& s, const DistortionTuple& d) {
    if (d.size() != s.users()) {
        throw Error(ErrorCode::InvalidDistortion,
                    "expected " + std::to_string(s.users()) + " distortions, got " + std::to_string(d.size()));
    }
    for (double x : d.values()) {
        if (x > s.source_var()) {
            throw Error(ErrorCode::InvalidDistortion, "distortion exceeds the source variance");
        }
    }
}

double trivial_distortion(const BroadcastScenario& s, std::size_t user) {
    const double n = s.noise(user);
    return s.source_var() * std::pow(n / (s.power() + n), s.bandwidth());
}

DistortionTuple trivial_point(const BroadcastScenario& s) {
    std::vector<double> d(s.users());
    for (std::size_t k = 1; k <= s.users(); ++k) d[k - 1] = trivial_distortion(s, k);
    return DistortionTuple(std::move(d));
}

TauSchedule tau_step_schedule(std::size_t users, std::size_t user) {
    if (user < 1 || user > users) {
        throw Error(ErrorCode::IndexOutOfRange, "step index must lie in 1..K");
    }
    std::vector<ExtReal> taus(users, ExtReal(0.0));
    for (std::size_t k = 0; k + 1 < user; ++k) taus[k] = ExtReal::infinity();
    return TauSchedule(std::move(taus));
}

}  // namespace gsb
