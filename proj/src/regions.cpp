#include "cclab/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cclab {

std::string to_string(RateUnits u) {
    return u == RateUnits::BitsPerChannelUse ? "bits/channel-use" : "bits/s";
}

std::string to_string(RegionKind k) {
    switch (k) {
        case RegionKind::GaussianCapacity: return "GaussianCapacity";
        case RegionKind::CCCapacity: return "CCCapacity";
        case RegionKind::GaussianInner: return "GaussianInner";
        case RegionKind::CCInner: return "CCInner";
    }
    return "?";
}

RateRegion gaussian_region(const ChannelInstance& instance) {
    const RegimeReport regime = classify_regime(instance);

    RateRegion reg;
    const double nv1 = instance.noise_var_r1();
    const double nv2 = instance.noise_var_r2();
    reg.r1_max = std::log2(1.0 + instance.p1 / nv1);
    reg.r2_max = std::log2(1.0 + instance.p2 / nv2);
    reg.sum_max = std::min(std::log2(1.0 + (instance.p1 + std::norm(instance.h21) * instance.p2) / nv1),
                           std::log2(1.0 + (std::norm(instance.h12) * instance.p1 + instance.p2) / nv2));
    if (instance.bandwidth_w) {
        const double w = *instance.bandwidth_w;
        reg.r1_max *= w;
        reg.r2_max *= w;
        reg.sum_max *= w;
        reg.units = RateUnits::BitsPerSecond;
    }
    reg.kind = (regime.regime == Regime::Weak) ? RegionKind::GaussianInner : RegionKind::GaussianCapacity;
    return reg;
}

RateRegion cc_region(const Constellation& c1, const Constellation& c2, const ChannelInstance& instance,
                     double theta, const NoiseRule& rule) {
    const RegimeReport regime = classify_regime(instance);

    RateRegion reg;
    reg.r1_max = conditional_mi(c1, instance.p1, instance.noise_var_r1(), rule).value;
    reg.r2_max = conditional_mi(c2, instance.p2, instance.noise_var_r2(), rule).value;
    reg.sum_max = cc_sum_bound(c1, c2, instance, theta, rule);
    if (instance.bandwidth_w) {
        const double w = *instance.bandwidth_w;
        reg.r1_max *= w;
        reg.r2_max *= w;
        reg.sum_max *= w;
        reg.units = RateUnits::BitsPerSecond;
    }
    reg.kind = (regime.regime == Regime::Weak) ? RegionKind::CCInner : RegionKind::CCCapacity;
    return reg;
}

Eigen::MatrixX2d region_boundary_points(const RateRegion& region, int n) {
    if (n < 2) throw std::invalid_argument("region_boundary_points: n must be >= 2");
    if (region.r1_max < 0.0 || region.r2_max < 0.0 || region.sum_max < 0.0) {
        throw std::invalid_argument("region_boundary_points: negative bound");
    }

    const double r1 = region.r1_max;
    const double r2 = region.r2_max;
    const double s = region.sum_max;
    const double y_top = std::min(r2, s);
    const double x_right = std::min(r1, s);

    // Frontier corners, left to right.
    std::vector<Eigen::Vector2d> corners;
    corners.emplace_back(0.0, y_top);
    if (s < r1 + r2) {
        const double d_lo = std::max(0.0, s - r2);
        corners.emplace_back(d_lo, s - d_lo);
        corners.emplace_back(x_right, s - x_right);
    } else {
        corners.emplace_back(r1, r2);
    }
    corners.emplace_back(x_right, 0.0);

    std::vector<Eigen::Vector2d> path;
    for (const auto& c : corners) {
        if (path.empty() || (c - path.back()).norm() > 1e-15 * (1.0 + c.norm())) path.push_back(c);
    }

    double total = 0.0;
    std::vector<double> seg_len(path.size() > 1 ? path.size() - 1 : 0);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        seg_len[i] = (path[i + 1] - path[i]).norm();
        total += seg_len[i];
    }

    Eigen::MatrixX2d out(n, 2);
    if (total <= 0.0) {  // degenerate region collapses to a point
        for (int i = 0; i < n; ++i) out.row(i) = path.front().transpose();
        return out;
    }

    const int k = static_cast<int>(path.size());
    if (n < k) {  // endpoints plus the first interior corners
        out.row(0) = path.front().transpose();
        for (int i = 1; i < n - 1; ++i) out.row(i) = path[i].transpose();
        out.row(n - 1) = path.back().transpose();
        return out;
    }

    // Distribute the n - k interpolated points over segments by length
    // (largest remainder), then walk the polyline.
    const int extra = n - k;
    std::vector<int> per_seg(seg_len.size(), 0);
    std::vector<std::pair<double, std::size_t>> rema;
    int assigned = 0;
    for (std::size_t i = 0; i < seg_len.size(); ++i) {
        const double quota = extra * seg_len[i] / total;
        per_seg[i] = static_cast<int>(std::floor(quota));
        assigned += per_seg[i];
        rema.emplace_back(quota - per_seg[i], i);
    }
    std::stable_sort(rema.begin(), rema.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int i = 0; i < extra - assigned; ++i) per_seg[rema[i].second] += 1;

    int row = 0;
    for (std::size_t seg = 0; seg < seg_len.size(); ++seg) {
        out.row(row++) = path[seg].transpose();
        for (int j = 1; j <= per_seg[seg]; ++j) {
            const double t = static_cast<double>(j) / (per_seg[seg] + 1);
            out.row(row++) = ((1.0 - t) * path[seg] + t * path[seg + 1]).transpose();
        }
    }
    out.row(row++) = path.back().transpose();
    return out;
}

}  // namespace cclab
