#include "cclab/fdma.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cclab/parallel.hpp"
#include "cclab/regions.hpp"

namespace cclab {

namespace {

void require_bandwidth(const ChannelInstance& instance, const char* op) {
    if (!instance.bandwidth_w) {
        throw std::invalid_argument(std::string(op) + ": instance must carry a bandwidth");
    }
}

void require_open_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie strictly inside (0, 1)");
    }
}

// Golden-section maximization of the FDMA sum over one grid cell.
double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
    constexpr double kInvPhi = 0.6180339887498948482045868343656381;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

RatePair fdma_gaussian_point(const ChannelInstance& instance, double alpha) {
    instance.validate();
    require_bandwidth(instance, "fdma_gaussian_point");
    require_open_alpha(alpha);
    const double w = *instance.bandwidth_w;
    const double w1 = alpha * w;
    const double w2 = (1.0 - alpha) * w;
    return {w1 * std::log2(1.0 + instance.p1 / w1), w2 * std::log2(1.0 + instance.p2 / w2)};
}

RatePair fdma_cc_point(const Constellation& c1, const Constellation& c2, const ChannelInstance& instance,
                       double alpha, const NoiseRule& rule) {
    instance.validate();
    require_bandwidth(instance, "fdma_cc_point");
    require_open_alpha(alpha);
    const double w = *instance.bandwidth_w;
    const double w1 = alpha * w;
    const double w2 = (1.0 - alpha) * w;
    return {w1 * conditional_mi(c1, instance.p1, w1, rule).value,
            w2 * conditional_mi(c2, instance.p2, w2, rule).value};
}

double alpha_opt(const ChannelInstance& instance) {
    instance.validate();
    return instance.p1 / (instance.p1 + instance.p2);
}

FdmaCurve fdma_curve(const std::optional<Constellation>& c1, const std::optional<Constellation>& c2,
                     const ChannelInstance& instance, Alphabet alphabet, const AlphaGrid& grid,
                     const std::optional<NoiseRule>& rule) {
    instance.validate();
    require_bandwidth(instance, "fdma_curve");
    if (!(grid.step > 0.0) || !(grid.lo >= 1e-4) || !(grid.hi <= 1.0 - 1e-4) || !(grid.lo < grid.hi)) {
        throw std::invalid_argument("fdma_curve: alpha grid must lie inside (1e-4, 1 - 1e-4)");
    }
    if (alphabet == Alphabet::Finite && (!c1 || !c2 || !rule)) {
        throw std::invalid_argument("fdma_curve: finite alphabet requires both constellations and a rule");
    }

    const auto point = [&](double alpha) -> RatePair {
        return alphabet == Alphabet::Gaussian ? fdma_gaussian_point(instance, alpha)
                                              : fdma_cc_point(*c1, *c2, instance, alpha, *rule);
    };

    const Eigen::Index n = static_cast<Eigen::Index>(std::floor((grid.hi - grid.lo) / grid.step + 1e-12)) + 1;
    FdmaCurve curve;
    curve.alphabet = alphabet;
    curve.alphas.resize(n);
    curve.r1.resize(n);
    curve.r2.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) curve.alphas(i) = std::min(grid.lo + i * grid.step, grid.hi);
    parallel_for(n, [&](Eigen::Index i) {
        const RatePair rp = point(curve.alphas(i));
        curve.r1(i) = rp.r1;
        curve.r2(i) = rp.r2;
    });

    curve.closed_form_alpha =
        alphabet == Alphabet::Gaussian || same_points(*c1, *c2);
    if (curve.closed_form_alpha) {
        curve.alpha_opt = alpha_opt(instance);
    } else {
        // Theorem-style closed form only covers identical constellations;
        // otherwise locate the argmax on the grid and polish it.
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i < n; ++i) {
            if (curve.r1(i) + curve.r2(i) > curve.r1(best) + curve.r2(best)) best = i;
        }
        const double lo = std::max(grid.lo, curve.alphas(best) - grid.step);
        const double hi = std::min(grid.hi, curve.alphas(best) + grid.step);
        curve.alpha_opt = golden_max([&](double a) { const RatePair rp = point(a); return rp.r1 + rp.r2; },
                                     lo, hi, 1e-6);
    }
    const RatePair at_opt = point(curve.alpha_opt);
    curve.sum_at_opt = at_opt.r1 + at_opt.r2;
    return curve;
}

bool touch_check(const ChannelInstance& instance) {
    instance.validate();
    require_bandwidth(instance, "touch_check");
    const double w = *instance.bandwidth_w;
    // Two evaluations of the same closed form, not a curve intersection:
    // FDMA sum at alpha_opt collapses to W log2(1 + (P1+P2)/W).
    const double fdma_sum = w * std::log2(1.0 + (instance.p1 + instance.p2) / w);
    const double sum_capacity = gaussian_region(instance).sum_max;
    return std::abs(fdma_sum - sum_capacity) <= 1e-9 * std::max(1.0, std::abs(sum_capacity));
}

double fdma_vs_simdec_gap(const Constellation& c1, const Constellation& c2, const ChannelInstance& instance,
                          double theta, const NoiseRule& rule) {
    instance.validate();
    require_bandwidth(instance, "fdma_vs_simdec_gap");
    const double w = *instance.bandwidth_w;
    const double simdec_sum = w * cc_sum_bound(c1, c2, instance, theta, rule);

    double split = alpha_opt(instance);
    if (!same_points(c1, c2)) {
        AlphaGrid grid;
        const FdmaCurve curve = fdma_curve(c1, c2, instance, Alphabet::Finite, grid, rule);
        split = curve.alpha_opt;
    }
    const RatePair fdma = fdma_cc_point(c1, c2, instance, split, rule);
    return simdec_sum - (fdma.r1 + fdma.r2);
}

}  // namespace cclab
