#include "cclab/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cclab/parallel.hpp"

namespace cclab {

namespace {

constexpr double kRefineTol = 1e-4;  // radians

double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t;
}

// Golden-section minimization on [a, b]. The objective is smooth inside one
// grid cell, so this converges cleanly; tracks the best evaluated point.
std::pair<double, double> golden_min(const std::function<double(double)>& f, double a, double b, double tol) {
    constexpr double kInvPhi = 0.6180339887498948482045868343656381;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    double best_x = fc <= fd ? c : d;
    double best_f = std::min(fc, fd);
    while (b - a > tol) {
        if (fc < fd) {
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
        if (fc < best_f) {
            best_f = fc;
            best_x = c;
        }
        if (fd < best_f) {
            best_f = fd;
            best_x = d;
        }
    }
    return {best_x, best_f};
}

// Shared grid-then-refine driver; `objective` is minimized. Tie-breaking
// treats values within 1e-9 relative as equal and keeps the smaller angle
// (symmetric constellations produce exact periodic copies of the optimum
// separated only by floating-point noise).
RotationResult search_min(const std::function<double(double)>& objective, const AngleGrid& grid,
                          RotationMethod method) {
    if (!(grid.step > 0.0) || !(grid.stop > grid.start)) {
        throw std::invalid_argument("AngleGrid: need step > 0 and stop > start");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(std::ceil((grid.stop - grid.start) / grid.step - 1e-12));

    std::vector<double> angles(n), values(n);
    for (Eigen::Index i = 0; i < n; ++i) angles[i] = grid.start + static_cast<double>(i) * grid.step;
    parallel_for(n, [&](Eigen::Index i) { values[i] = objective(angles[i]); });

    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
        const double tie = 1e-9 * (1.0 + std::abs(values[best]));
        if (values[i] < values[best] - tie) best = i;
    }

    auto [angle, value] = golden_min(objective, angles[best] - grid.step, angles[best] + grid.step, kRefineTol);
    const double tie = 1e-9 * (1.0 + std::abs(values[best]));
    if (value >= values[best] - tie) {  // not genuinely better: keep the (smaller) grid angle
        angle = angles[best];
        value = values[best];
    }
    angle = wrap_angle(angle);

    RotationResult res;
    res.angle = angle;
    res.method = method;
    res.grid_step = grid.step;
    res.objective_trace.reserve(n + 1);
    for (Eigen::Index i = 0; i < n; ++i) res.objective_trace.emplace_back(angles[i], values[i]);
    res.objective_trace.emplace_back(angle, value);
    return res;
}

}  // namespace

AngleGrid AngleGrid::full(double step_rad) {
    AngleGrid g;
    g.step = step_rad;
    return g;
}

AngleGrid AngleGrid::folded(int symmetry, double step_rad) {
    if (symmetry < 1) throw std::invalid_argument("AngleGrid::folded: symmetry must be >= 1");
    AngleGrid g;
    g.stop = kTwoPi / symmetry;
    g.step = step_rad;
    return g;
}

double metric_objective(const Constellation& c1, const Constellation& c2, const ChannelInstance& instance,
                        double theta) {
    instance.validate();
    const double f1 = log_proximity_sum(c1, c2, instance.h21, theta, instance.p1, instance.p2,
                                        instance.noise_var_r1(), Receiver::R1);
    const double f2 = log_proximity_sum(c1, c2, instance.h12, theta, instance.p1, instance.p2,
                                        instance.noise_var_r2(), Receiver::R2);
    return std::max(f1, f2);
}

RotationResult metric_theta_opt(const Constellation& c1, const Constellation& c2,
                                const ChannelInstance& instance, const AngleGrid& grid) {
    if (grid.step > kPi / 360.0 + 1e-15) {
        throw std::invalid_argument("metric_theta_opt: grid step must be <= 0.5 degrees");
    }
    RotationResult res = search_min([&](double t) { return metric_objective(c1, c2, instance, t); }, grid,
                                    RotationMethod::Metric);
    const NoiseRule rule = default_noise_rule(c1.size(), c2.size());
    res.achieved_sum_bound = cc_sum_bound(c1, c2, instance, res.angle, rule);
    return res;
}

RotationResult numerical_theta_opt(const Constellation& c1, const Constellation& c2,
                                   const ChannelInstance& instance, const AngleGrid& grid,
                                   const NoiseRule& rule) {
    if (grid.step > kPi / 180.0 + 1e-15) {
        throw std::invalid_argument("numerical_theta_opt: grid step must be <= 1 degree");
    }
    if (rule.method != NoiseMethod::GaussHermite) {
        throw std::invalid_argument("numerical_theta_opt: requires a deterministic quadrature rule");
    }
    RotationResult res = search_min([&](double t) { return -cc_sum_bound(c1, c2, instance, t, rule); }, grid,
                                    RotationMethod::Numerical);
    // The trace stores the objective as maximized.
    for (auto& entry : res.objective_trace) entry.second = -entry.second;
    res.achieved_sum_bound = cc_sum_bound(c1, c2, instance, res.angle, rule);
    return res;
}

}  // namespace cclab
