#pragma once

#include <utility>
#include <vector>

#include "cclab/channel.hpp"
#include "cclab/constellation.hpp"
#include "cclab/mi_engine.hpp"

namespace cclab {

/// Search grid over the relative rotation angle, in radians. The default
/// covers a full turn; folded() restricts to (0, 2*pi/n) when the caller
/// asserts n-fold constellation symmetry.
struct AngleGrid {
    double start = 0.0;
    double stop = kTwoPi;  // exclusive
    double step = kPi / 720.0;  // 0.25 degrees

    static AngleGrid full(double step_rad = kPi / 720.0);
    static AngleGrid folded(int symmetry, double step_rad = kPi / 720.0);
};

enum class RotationMethod { Metric, Numerical };

/// Outcome of a rotation search. The trace holds every grid evaluation plus
/// the refined optimum as its final entry, so `angle` is the arg-optimum of
/// the trace (argmin for Metric, argmax for Numerical).
struct RotationResult {
    double angle = 0.0;  // radians in [0, 2*pi)
    std::vector<std::pair<double, double>> objective_trace;
    RotationMethod method = RotationMethod::Metric;
    double achieved_sum_bound = 0.0;  // bits per channel use
    double grid_step = 0.0;           // radians
};

/// Closed-form rotation metric: the larger of the two per-receiver
/// log-proximity sums
///   sum_k ln( sum_i exp(-|mu_r|^2 / (2 sigma_r^2)) ),  r = 1, 2.
/// Minimizing this over theta pushes the composite constellations apart at
/// whichever receiver is currently the bottleneck. Natural log (the argmin is
/// invariant to the log base). Derived under equal receiver noise variances;
/// evaluated as written when they differ.
double metric_objective(const Constellation& c1, const Constellation& c2, const ChannelInstance& instance,
                        double theta);

/// Grid argmin of metric_objective followed by golden-section refinement in
/// the winning cell (to 1e-4 rad). Ties break toward smaller theta. Grid step
/// must be <= 0.5 degrees.
RotationResult metric_theta_opt(const Constellation& c1, const Constellation& c2,
                                const ChannelInstance& instance, const AngleGrid& grid);

/// Direct numerical maximization of cc_sum_bound over the grid, refined like
/// metric_theta_opt. Requires a deterministic (GaussHermite) rule so the
/// trace is reproducible. Grid step must be <= 1 degree.
RotationResult numerical_theta_opt(const Constellation& c1, const Constellation& c2,
                                   const ChannelInstance& instance, const AngleGrid& grid,
                                   const NoiseRule& rule);

}  // namespace cclab
