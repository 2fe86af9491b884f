#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace cclab {

enum class NoiseMethod { GaussHermite, MonteCarlo };

/// How an expectation over complex Gaussian noise is evaluated.
/// GaussHermite: deterministic tensor-product quadrature, nodes_per_dim per
/// real dimension. MonteCarlo: seeded counter-based sampling.
struct NoiseRule {
    NoiseMethod method = NoiseMethod::GaussHermite;
    int nodes_per_dim = 24;
    long samples = 100000;
    std::uint64_t seed = 0;

    static NoiseRule gauss_hermite(int nodes_per_dim = 24) {
        NoiseRule r;
        r.method = NoiseMethod::GaussHermite;
        r.nodes_per_dim = nodes_per_dim;
        return r;
    }

    static NoiseRule monte_carlo(long samples, std::uint64_t seed) {
        NoiseRule r;
        r.method = NoiseMethod::MonteCarlo;
        r.samples = samples;
        r.seed = seed;
        return r;
    }

    /// nodes_per_dim >= 4 (GaussHermite) or samples >= 1000 (MonteCarlo).
    void validate() const;
};

/// Nodes and weights for the physicists' weight: integral of e^{-t^2} f(t) dt
/// over the real line, approximated by sum_i w_i f(t_i). Exact for
/// polynomials up to degree 2n-1. Nodes ascending, exactly antisymmetric.
struct GaussHermiteRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

GaussHermiteRule gauss_hermite_rule(int n);

}  // namespace cclab
