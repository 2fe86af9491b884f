#pragma once

#include <optional>
#include <string>

#include "cclab/numerics.hpp"

namespace cclab {

/// Full problem statement for the two-user Gaussian interference channel.
/// Direct gains are fixed to 1; h12 and h21 are the cross gains. Without
/// bandwidth_w the receivers see explicit noise variances sigma1_sq and
/// sigma2_sq (rates in bits per channel use). With bandwidth_w present both
/// effective noise variances are W (N0 = 1) and rates scale to bits/s.
struct ChannelInstance {
    double p1 = 1.0;
    double p2 = 1.0;
    Complex h12{1.0, 0.0};
    Complex h21{1.0, 0.0};
    double sigma1_sq = 1.0;
    double sigma2_sq = 1.0;
    std::optional<double> bandwidth_w;

    static ChannelInstance baseband(double p1, double p2, Complex h12, Complex h21, double sigma1_sq,
                                    double sigma2_sq);
    static ChannelInstance with_bandwidth(double p1, double p2, Complex h12, Complex h21, double w);

    double noise_var_r1() const { return bandwidth_w ? *bandwidth_w : sigma1_sq; }
    double noise_var_r2() const { return bandwidth_w ? *bandwidth_w : sigma2_sq; }

    double snr1() const { return p1 / noise_var_r1(); }
    double snr2() const { return p2 / noise_var_r2(); }
    double inr1() const { return std::norm(h21) * p2 / noise_var_r1(); }
    double inr2() const { return std::norm(h12) * p1 / noise_var_r2(); }

    /// Positivity and finiteness of powers, variances, gains and the derived
    /// SNR/INR ratios. Throws std::invalid_argument.
    void validate() const;
};

enum class Regime { Weak, Strong, VeryStrong };

std::string to_string(Regime r);

struct RegimeReport {
    Regime regime;
    double snr1, snr2, inr1, inr2;
};

/// Weak when SNR1 > INR2 or SNR2 > INR1. Otherwise strong when the
/// interference is not overwhelming (SNR1 > INR2/(1+SNR2) or
/// SNR2 > INR1/(1+SNR1)); otherwise very strong.
RegimeReport classify_regime(const ChannelInstance& instance);

}  // namespace cclab
