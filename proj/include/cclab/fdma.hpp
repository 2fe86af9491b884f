#pragma once

#include <optional>

#include "cclab/channel.hpp"
#include "cclab/constellation.hpp"
#include "cclab/mi_engine.hpp"

namespace cclab {

enum class Alphabet { Gaussian, Finite };

struct RatePair {
    double r1 = 0.0;  // bits/s
    double r2 = 0.0;
};

/// Sweep grid for the bandwidth split; endpoints excluded to keep
/// W_i log(1 + P/W_i) away from the 0 * log(inf) indeterminacy (R -> 0 there).
struct AlphaGrid {
    double lo = 1e-4;
    double hi = 1.0 - 1e-4;
    double step = 1e-3;
};

/// FDMA rate sweep. r1 rises and r2 falls with alpha; alpha_opt maximizes
/// their sum (closed form P1/(P1+P2) when valid, numerical argmax otherwise)
/// and sum_at_opt is the sum evaluated there.
struct FdmaCurve {
    Eigen::VectorXd alphas;
    Eigen::VectorXd r1;  // bits/s
    Eigen::VectorXd r2;  // bits/s
    Alphabet alphabet = Alphabet::Gaussian;
    double alpha_opt = 0.5;
    double sum_at_opt = 0.0;
    bool closed_form_alpha = true;  // false when c1 != c2 forces a numerical argmax
};

/// Gaussian-alphabet FDMA rates at bandwidth split alpha:
///   R1 = alpha W log2(1 + P1/(alpha W)),  R2 = (1-alpha) W log2(1 + P2/((1-alpha) W)).
RatePair fdma_gaussian_point(const ChannelInstance& instance, double alpha);

/// Constellation-constrained FDMA rates: each user sees an interference-free
/// AWGN link of bandwidth W_i and noise variance W_i.
RatePair fdma_cc_point(const Constellation& c1, const Constellation& c2, const ChannelInstance& instance,
                       double alpha, const NoiseRule& rule);

/// The sum-rate-optimal bandwidth split P1/(P1+P2). Exact for Gaussian
/// alphabets always and for finite alphabets when both users share one
/// constellation.
double alpha_opt(const ChannelInstance& instance);

/// Full sweep over the alpha grid. For Alphabet::Finite both constellations
/// and a rule are required.
FdmaCurve fdma_curve(const std::optional<Constellation>& c1, const std::optional<Constellation>& c2,
                     const ChannelInstance& instance, Alphabet alphabet, const AlphaGrid& grid,
                     const std::optional<NoiseRule>& rule);

/// True iff the Gaussian FDMA sum at alpha_opt meets the Gaussian sum
/// capacity (1e-9 relative); analytically that happens exactly when the
/// smaller cross-gain modulus is 1 and the other is >= 1.
bool touch_check(const ChannelInstance& instance);

/// (simultaneous-decoding CC sum bound at theta) - (CC FDMA sum at alpha_opt),
/// both in bits/s. Positive means joint decoding beats FDMA at the optimal
/// sum-rate point.
double fdma_vs_simdec_gap(const Constellation& c1, const Constellation& c2, const ChannelInstance& instance,
                          double theta, const NoiseRule& rule);

}  // namespace cclab
