// Domain types shared by every part of the library: extended reals, the
// broadcast scenario, tau schedules and distortion tuples.
//
// Indexing convention: containers are 0-based. Functions that take a
// receiver number (`user`) use the 1-based numbering 1..K, since receivers
// are conventionally numbered from the noisiest one.

#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gsb {

enum class ErrorCode {
    NonDecreasingNoises,
    NonPositiveParameter,
    IndexOutOfRange,
    NonMonotoneTau,
    NonZeroLastTau,
    InvalidTauValue,
    NonFiniteTau,
    InvalidDistortion,
    StepOutOfDomain,
    InfeasibleEverywhere,
    ClassificationMismatch,
    InvalidSplit,
    DistortionAtSourceVariance,
    NonStrictOrdering,
    DimensionMismatch,
    InvalidCapacities,
    ZeroP,
    InvalidP,
    LengthMismatch,
    BandwidthNotOne,
    ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Nonnegative real number or +inf. NaN and negative values are rejected.
class ExtReal {
public:
    constexpr ExtReal() = default;
    ExtReal(double v);  // NOLINT: implicit from double is intended

    static constexpr ExtReal infinity() { return ExtReal(Inf{}); }

    constexpr bool is_inf() const noexcept { return inf_; }
    constexpr bool is_finite() const noexcept { return !inf_; }

    /// The finite value, or +inf as a double.
    constexpr double value() const noexcept {
        return inf_ ? std::numeric_limits<double>::infinity() : value_;
    }

    friend constexpr bool operator==(ExtReal a, ExtReal b) noexcept {
        return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
    }
    friend constexpr bool operator<(ExtReal a, ExtReal b) noexcept {
        if (a.inf_) return false;
        return b.inf_ || a.value_ < b.value_;
    }
    friend constexpr bool operator<=(ExtReal a, ExtReal b) noexcept { return !(b < a); }
    friend constexpr bool operator>(ExtReal a, ExtReal b) noexcept { return b < a; }
    friend constexpr bool operator>=(ExtReal a, ExtReal b) noexcept { return !(a < b); }

private:
    struct Inf {};
    constexpr explicit ExtReal(Inf) : inf_(true) {}

    double value_ = 0.0;
    bool inf_ = false;
};

ExtReal operator+(ExtReal a, ExtReal b);

/// Parses a decimal literal or the exact spelling `inf`.
ExtReal parse_ext_real(std::string_view text);
std::string format_ext_real(ExtReal x);

/// Unvalidated scenario parameters, as read from a file or the command line.
struct RawScenario {
    double power = 0.0;
    std::vector<double> noises;
    double bandwidth = 1.0;
    double source_var = 1.0;
};

/// Power P, noise variances N_1 > ... > N_K > 0, bandwidth factor b = n/m
/// and source variance N_S. Only obtainable through validate_scenario.
class BroadcastScenario {
public:
    std::size_t users() const noexcept { return noises_.size(); }
    double power() const noexcept { return power_; }
    double bandwidth() const noexcept { return bandwidth_; }
    double source_var() const noexcept { return source_var_; }
    std::span<const double> noises() const noexcept { return noises_; }

    /// N_user, 1-based.
    double noise(std::size_t user) const;
    /// N_user - N_{user+1}, or N_K for the last receiver. 1-based.
    double delta_noise(std::size_t user) const;

    /// P + N_1, the right-hand side of the outer-bound inequality.
    double rhs() const noexcept { return power_ + noises_.front(); }

    RawScenario raw() const;

private:
    friend BroadcastScenario validate_scenario(const RawScenario& raw);
    BroadcastScenario() = default;

    double power_ = 0.0;
    std::vector<double> noises_;
    double bandwidth_ = 1.0;
    double source_var_ = 1.0;
};

BroadcastScenario validate_scenario(const RawScenario& raw);

/// Ordered auxiliary parameters: tau_K = 0 and tau_{k+1} <= tau_k.
class TauSchedule {
public:
    explicit TauSchedule(std::vector<ExtReal> taus);

    std::size_t size() const noexcept { return taus_.size(); }
    std::span<const ExtReal> taus() const noexcept { return taus_; }
    ExtReal operator[](std::size_t i) const { return taus_.at(i); }
    bool all_finite() const noexcept;

    /// Every entry zero.
    static TauSchedule zeros(std::size_t users);
    /// Convenience for finite schedules.
    static TauSchedule from_doubles(std::span<const double> taus);

private:
    std::vector<ExtReal> taus_;
};

/// Distortions D_1..D_K, each strictly positive and finite. The upper bound
/// D_k <= N_S depends on the scenario and is checked by check_distortions.
class DistortionTuple {
public:
    explicit DistortionTuple(std::vector<double> d);

    std::size_t size() const noexcept { return d_.size(); }
    std::span<const double> values() const noexcept { return d_; }
    double operator[](std::size_t i) const { return d_.at(i); }

private:
    std::vector<double> d_;
};

/// Throws InvalidDistortion unless D has K entries in (0, N_S].
void check_distortions(const BroadcastScenario& s, const DistortionTuple& d);

/// Point-to-point optimum D_user* = N_S (N_user / (P + N_user))^b.
double trivial_distortion(const BroadcastScenario& s, std::size_t user);

/// (D_1*, ..., D_K*).
DistortionTuple trivial_point(const BroadcastScenario& s);

/// tau_K..tau_user = 0 and tau_{user-1}..tau_1 = +inf.
TauSchedule tau_step_schedule(std::size_t users, std::size_t user);

}  // namespace gsb
