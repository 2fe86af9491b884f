#pragma once

#include "cclab/channel.hpp"
#include "cclab/constellation.hpp"
#include "cclab/numerics.hpp"
#include "cclab/quadrature.hpp"

namespace cclab {

/// A mutual-information value in bits with its evaluation pedigree.
/// std_error is 0 for deterministic quadrature.
struct MIEstimate {
    double value = 0.0;
    double std_error = 0.0;
    NoiseMethod method = NoiseMethod::GaussHermite;
    long node_or_sample_count = 0;
};

enum class Receiver { R1, R2 };

/// Single-user conditional mutual information of a finite constellation over
/// a complex AWGN link:
///   log2 M - (1/M) sum_k E_N[ log2 sum_i exp(-(|N + sqrt(P)(x_k - x_i)|^2 - |N|^2) / sigma^2) ].
/// Clamped to [0, log2 M]; violations beyond 3*std_error + 1e-9 raise
/// internal_error.
MIEstimate conditional_mi(const Constellation& c, double power, double noise_var, const NoiseRule& rule);

/// Joint mutual information of both users' symbols at one receiver. The
/// composite difference is
///   R1:  sqrt(P1) d1 + cross_gain e^{j theta} sqrt(P2) d2   (cross_gain = h21)
///   R2:  cross_gain sqrt(P1) d1 + e^{j theta} sqrt(P2) d2   (cross_gain = h12)
/// Clamped to [0, log2(M1 M2)].
MIEstimate joint_mi(const Constellation& c1, const Constellation& c2, Complex cross_gain, double theta,
                    double power1, double power2, double noise_var, Receiver receiver, const NoiseRule& rule);

/// Deterministic closed-form lower bound on joint_mi (Jensen on the noise
/// expectation):
///   log2(M1 M2) - log2 e - (1/(M1 M2)) sum_{k} log2( (1/2) sum_{i} exp(-|mu|^2 / (2 sigma^2)) ).
/// May be negative; not clamped.
double jensen_lower_bound(const Constellation& c1, const Constellation& c2, Complex cross_gain, double theta,
                          double power1, double power2, double noise_var, Receiver receiver);

/// min{ joint MI at receiver 1, joint MI at receiver 2 } in bits per channel
/// use, using the instance's cross gains and effective noise variances.
double cc_sum_bound(const Constellation& c1, const Constellation& c2, const ChannelInstance& instance,
                    double theta, const NoiseRule& rule);

/// sum_k ln( sum_i exp(-|mu_ki|^2 / (2 sigma^2)) ) over all composite symbol
/// pairs k. Deterministic kernel shared by the Jensen bound and the rotation
/// metric; natural log.
double log_proximity_sum(const Constellation& c1, const Constellation& c2, Complex cross_gain, double theta,
                         double power1, double power2, double noise_var, Receiver receiver);

/// Default evaluator choice: 24-node-per-dim quadrature while the composite
/// alphabet stays small, seeded Monte Carlo beyond that.
NoiseRule default_noise_rule(Eigen::Index m1, Eigen::Index m2, std::uint64_t seed = 0);

}  // namespace cclab
