#pragma once

#include "cclab/channel.hpp"
#include "cclab/constellation.hpp"
#include "cclab/mi_engine.hpp"

namespace cclab {

enum class RateUnits { BitsPerChannelUse, BitsPerSecond };
enum class RegionKind { GaussianCapacity, CCCapacity, GaussianInner, CCInner };

std::string to_string(RateUnits u);
std::string to_string(RegionKind k);

/// Pentagon region {R1 <= r1_max, R2 <= r2_max, R1 + R2 <= sum_max}. The kind
/// records whether the bounds are capacity (strong/very strong interference)
/// or only an achievable inner bound (weak interference).
struct RateRegion {
    double r1_max = 0.0;
    double r2_max = 0.0;
    double sum_max = 0.0;
    RateUnits units = RateUnits::BitsPerChannelUse;
    RegionKind kind = RegionKind::GaussianCapacity;
};

/// Gaussian-alphabet region: individual bounds log2(1 + SNR_i), sum bound the
/// smaller of the two receivers' full-decode capacities. In bandwidth mode
/// every bound is multiplied by W and the noise variance is W (bits/s).
RateRegion gaussian_region(const ChannelInstance& instance);

/// Constellation-constrained region at relative rotation theta: conditional
/// MIs as individual bounds, cc_sum_bound as the sum bound. Bandwidth mode as
/// in gaussian_region.
RateRegion cc_region(const Constellation& c1, const Constellation& c2, const ChannelInstance& instance,
                     double theta, const NoiseRule& rule);

/// n points tracing the achievable frontier from (0, r2_max-ish) to
/// (r1_max-ish, 0); every pentagon corner appears exactly. With n below the
/// corner count only the endpoints are guaranteed.
Eigen::MatrixX2d region_boundary_points(const RateRegion& region, int n);

}  // namespace cclab
