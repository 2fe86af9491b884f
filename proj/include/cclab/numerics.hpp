#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Dense>

namespace cclab {

using Complex = std::complex<double>;

/// Raised when an evaluator produces a value outside its theoretical range
/// by more than the admissible tolerance. Signals a bug, not bad data.
struct internal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// I/O failure while writing a requested artifact.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// log(sum_i exp(a_i)) in natural log, guarded by max subtraction.
/// Safe for exponent magnitudes up to ~1e308; underflowing terms drop out.
inline double log_sum_exp(const Eigen::Ref<const Eigen::ArrayXd>& a) {
    const double m = a.maxCoeff();
    if (!std::isfinite(m)) {
        // All -inf (empty effective support) never happens for our inputs;
        // propagate as internal error rather than returning NaN.
        throw internal_error("log_sum_exp: non-finite maximum");
    }
    return m + std::log((a - m).exp().sum());
}

inline constexpr double kLn2 = 0.6931471805599453094172321214581766;
inline constexpr double kLog2E = 1.4426950408889634073599246810018921;
inline constexpr double kPi = 3.1415926535897932384626433832795029;
inline constexpr double kTwoPi = 2.0 * kPi;

/// SplitMix64 finalizer; the building block of the counter RNG below.
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Stateless counter-based noise stream: sample index -> value, so results
/// are identical no matter how evaluations are scheduled across threads.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream_key)
        : key_(mix64(seed ^ mix64(stream_key ^ 0x9e3779b97f4a7c15ULL))) {}

    /// Uniform in (0,1), open at both ends.
    double uniform(std::uint64_t index) const {
        const std::uint64_t bits = mix64(key_ ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    /// One draw of circularly symmetric complex Gaussian noise CN(0, sigma_sq).
    /// Polar Box-Muller: |N|^2 ~ Exp(sigma_sq), phase uniform.
    Complex complex_normal(std::uint64_t index, double sigma_sq) const {
        const double u1 = uniform(2 * index);
        const double u2 = uniform(2 * index + 1);
        const double r = std::sqrt(-sigma_sq * std::log(u1));
        return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
    }

  private:
    std::uint64_t key_;
};

}  // namespace cclab
