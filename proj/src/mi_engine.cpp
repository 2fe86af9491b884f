#include "cclab/mi_engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace cclab {

namespace {

constexpr std::uint64_t kStreamConditional = 0xA1;
constexpr std::uint64_t kStreamJointR1 = 0xB1;
constexpr std::uint64_t kStreamJointR2 = 0xB2;

// The exact noise expectation is invariant under a common rotation of one
// row's differences (circular symmetry), but a tensor-product node grid is
// not. Aligning each row to a canonical phase makes the quadrature output
// itself invariant under constellation rotation. The reference must rotate
// with the row: the plain sum does; the |d|-weighted sum covers rows whose
// plain sum cancels.
void canonical_align(Eigen::VectorXcd& row) {
    const double scale = row.cwiseAbs().maxCoeff();
    if (!(scale > 0.0)) return;

    Complex ref = row.sum();
    if (std::abs(ref) <= 1e-9 * scale) {
        ref = Complex{0.0, 0.0};
        for (Eigen::Index i = 0; i < row.size(); ++i) ref += std::abs(row(i)) * row(i);
        if (std::abs(ref) <= 1e-9 * scale * scale) return;
    }
    row *= std::conj(ref) / std::abs(ref);
}

using RowFiller = std::function<void(Eigen::Index k, Eigen::VectorXcd& row)>;

struct ExpectationResult {
    double mean_bits = 0.0;  // (1/nrows) sum_k E[log2 sum_i exp(...)]
    double se_bits = 0.0;
    long count = 0;
};

// Rowwise log-sum-exp of an exponent matrix, natural log.
Eigen::ArrayXd rowwise_lse(const Eigen::ArrayXXd& e) {
    const Eigen::ArrayXd m = e.rowwise().maxCoeff();
    return m + (e.colwise() - m).exp().rowwise().sum().log();
}

ExpectationResult expectation_gauss_hermite(Eigen::Index nrows, Eigen::Index ncols, const RowFiller& fill,
                                            double noise_var, int nodes_per_dim) {
    const GaussHermiteRule gh = gauss_hermite_rule(nodes_per_dim);
    const double sigma = std::sqrt(noise_var);
    const Eigen::Index nn = static_cast<Eigen::Index>(nodes_per_dim) * nodes_per_dim;

    // Flattened 2-D node grid: N = sigma * (t_a + j t_b), weight w_a w_b / pi.
    Eigen::ArrayXd nre(nn), nim(nn), wt(nn);
    for (int a = 0; a < nodes_per_dim; ++a) {
        for (int b = 0; b < nodes_per_dim; ++b) {
            const Eigen::Index q = static_cast<Eigen::Index>(a) * nodes_per_dim + b;
            nre(q) = sigma * gh.nodes(a);
            nim(q) = sigma * gh.nodes(b);
            wt(q) = gh.weights(a) * gh.weights(b) / kPi;
        }
    }

    Eigen::VectorXcd row(ncols);
    Eigen::ArrayXXd expo(nn, ncols);
    double total = 0.0;
    for (Eigen::Index k = 0; k < nrows; ++k) {
        fill(k, row);
        canonical_align(row);
        const Eigen::ArrayXd dre = row.real().array();
        const Eigen::ArrayXd dim = row.imag().array();
        const Eigen::ArrayXd d2 = row.cwiseAbs2().array();

        // exponent(q, i) = -(|d_i|^2 + 2 (nR_q dR_i + nI_q dI_i)) / sigma^2
        expo = (-2.0 / noise_var) * (nre.matrix() * dre.matrix().transpose() +
                                     nim.matrix() * dim.matrix().transpose())
                   .array();
        expo.rowwise() -= (d2 / noise_var).transpose();

        total += (wt * rowwise_lse(expo)).sum();
    }

    ExpectationResult res;
    res.mean_bits = total / (static_cast<double>(nrows) * kLn2);
    res.se_bits = 0.0;
    res.count = static_cast<long>(nn);
    return res;
}

ExpectationResult expectation_monte_carlo(Eigen::Index nrows, Eigen::Index ncols, const RowFiller& fill,
                                          double noise_var, long samples, std::uint64_t seed,
                                          std::uint64_t stream_key) {
    const CounterRng rng(seed, stream_key);

    // One shared noise draw per sample across all rows; per-sample totals are
    // accumulated so the variance estimate sees i.i.d. values.
    Eigen::ArrayXd nre(samples), nim(samples);
    for (long s = 0; s < samples; ++s) {
        const Complex n = rng.complex_normal(static_cast<std::uint64_t>(s), noise_var);
        nre(s) = n.real();
        nim(s) = n.imag();
    }

    Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(samples);
    Eigen::VectorXcd row(ncols);
    const long chunk = 8192;
    for (Eigen::Index k = 0; k < nrows; ++k) {
        fill(k, row);
        const Eigen::ArrayXd dre = row.real().array();
        const Eigen::ArrayXd dim = row.imag().array();
        const Eigen::ArrayXd d2t = (row.cwiseAbs2().array() / noise_var);

        for (long s0 = 0; s0 < samples; s0 += chunk) {
            const long len = std::min(chunk, samples - s0);
            Eigen::ArrayXXd expo = (-2.0 / noise_var) * (nre.segment(s0, len).matrix() * dre.matrix().transpose() +
                                                         nim.segment(s0, len).matrix() * dim.matrix().transpose())
                                       .array();
            expo.rowwise() -= d2t.transpose();
            acc.segment(s0, len) += rowwise_lse(expo);
        }
    }
    acc /= static_cast<double>(nrows) * kLn2;

    ExpectationResult res;
    res.mean_bits = acc.mean();
    const double var = (acc - res.mean_bits).square().sum() / (static_cast<double>(samples) - 1.0);
    res.se_bits = std::sqrt(var / static_cast<double>(samples));
    res.count = samples;
    return res;
}

ExpectationResult lse_expectation(Eigen::Index nrows, Eigen::Index ncols, const RowFiller& fill,
                                  double noise_var, const NoiseRule& rule, std::uint64_t stream_key) {
    rule.validate();
    if (rule.method == NoiseMethod::GaussHermite) {
        return expectation_gauss_hermite(nrows, ncols, fill, noise_var, rule.nodes_per_dim);
    }
    return expectation_monte_carlo(nrows, ncols, fill, noise_var, rule.samples, rule.seed, stream_key);
}

MIEstimate finalize(double raw_value, double cap, const ExpectationResult& res, NoiseMethod method) {
    const double tol = 3.0 * res.se_bits + 1e-9;
    if (!std::isfinite(raw_value) || raw_value < -tol || raw_value > cap + tol) {
        throw internal_error("mutual information " + std::to_string(raw_value) +
                             " outside theoretical range [0, " + std::to_string(cap) + "] beyond tolerance");
    }
    MIEstimate est;
    est.value = std::clamp(raw_value, 0.0, cap);
    est.std_error = res.se_bits;
    est.method = method;
    est.node_or_sample_count = res.count;
    return est;
}

void check_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
    }
}

Eigen::MatrixXcd pairwise_differences(const Constellation& c) {
    const Eigen::Index m = c.size();
    Eigen::MatrixXcd d(m, m);
    for (Eigen::Index k = 0; k < m; ++k) {
        for (Eigen::Index i = 0; i < m; ++i) d(k, i) = c.point(k) - c.point(i);
    }
    return d;
}

}  // namespace

MIEstimate conditional_mi(const Constellation& c, double power, double noise_var, const NoiseRule& rule) {
    check_positive(power, "power");
    check_positive(noise_var, "noise_var");

    const Eigen::Index m = c.size();
    const double amp = std::sqrt(power);
    const Eigen::MatrixXcd diffs = pairwise_differences(c);

    const RowFiller fill = [&](Eigen::Index k, Eigen::VectorXcd& row) { row = amp * diffs.row(k).transpose(); };
    const ExpectationResult res = lse_expectation(m, m, fill, noise_var, rule, kStreamConditional);

    const double cap = std::log2(static_cast<double>(m));
    return finalize(cap - res.mean_bits, cap, res, rule.method);
}

MIEstimate joint_mi(const Constellation& c1, const Constellation& c2, Complex cross_gain, double theta,
                    double power1, double power2, double noise_var, Receiver receiver, const NoiseRule& rule) {
    check_positive(power1, "power1");
    check_positive(power2, "power2");
    check_positive(noise_var, "noise_var");
    if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
    if (!std::isfinite(cross_gain.real()) || !std::isfinite(cross_gain.imag())) {
        throw std::invalid_argument("cross_gain must be finite");
    }

    const double phase = std::fmod(theta, kTwoPi);
    const Complex rot{std::cos(phase), std::sin(phase)};
    const Complex a = (receiver == Receiver::R1) ? Complex{std::sqrt(power1), 0.0} : cross_gain * std::sqrt(power1);
    const Complex b = (receiver == Receiver::R1) ? cross_gain * rot * std::sqrt(power2) : rot * std::sqrt(power2);

    const Eigen::Index m1 = c1.size();
    const Eigen::Index m2 = c2.size();
    const Eigen::MatrixXcd d1 = pairwise_differences(c1);
    const Eigen::MatrixXcd d2 = pairwise_differences(c2);

    const RowFiller fill = [&](Eigen::Index k, Eigen::VectorXcd& row) {
        const Eigen::Index k1 = k / m2;
        const Eigen::Index k2 = k % m2;
        for (Eigen::Index i1 = 0; i1 < m1; ++i1) {
            for (Eigen::Index i2 = 0; i2 < m2; ++i2) {
                row(i1 * m2 + i2) = a * d1(k1, i1) + b * d2(k2, i2);
            }
        }
    };

    const std::uint64_t stream = (receiver == Receiver::R1) ? kStreamJointR1 : kStreamJointR2;
    const ExpectationResult res = lse_expectation(m1 * m2, m1 * m2, fill, noise_var, rule, stream);

    const double cap = std::log2(static_cast<double>(m1 * m2));
    return finalize(cap - res.mean_bits, cap, res, rule.method);
}

double log_proximity_sum(const Constellation& c1, const Constellation& c2, Complex cross_gain, double theta,
                         double power1, double power2, double noise_var, Receiver receiver) {
    check_positive(power1, "power1");
    check_positive(power2, "power2");
    check_positive(noise_var, "noise_var");
    if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");

    const double phase = std::fmod(theta, kTwoPi);
    const Complex rot{std::cos(phase), std::sin(phase)};
    const Complex a = (receiver == Receiver::R1) ? Complex{std::sqrt(power1), 0.0} : cross_gain * std::sqrt(power1);
    const Complex b = (receiver == Receiver::R1) ? cross_gain * rot * std::sqrt(power2) : rot * std::sqrt(power2);

    const Eigen::Index m1 = c1.size();
    const Eigen::Index m2 = c2.size();
    const Eigen::MatrixXcd d1 = pairwise_differences(c1);
    const Eigen::MatrixXcd d2 = pairwise_differences(c2);

    Eigen::ArrayXd expo(m1 * m2);
    double acc = 0.0;
    for (Eigen::Index k1 = 0; k1 < m1; ++k1) {
        for (Eigen::Index k2 = 0; k2 < m2; ++k2) {
            for (Eigen::Index i1 = 0; i1 < m1; ++i1) {
                for (Eigen::Index i2 = 0; i2 < m2; ++i2) {
                    const Complex mu = a * d1(k1, i1) + b * d2(k2, i2);
                    expo(i1 * m2 + i2) = -std::norm(mu) / (2.0 * noise_var);
                }
            }
            acc += log_sum_exp(expo);
        }
    }
    return acc;
}

double jensen_lower_bound(const Constellation& c1, const Constellation& c2, Complex cross_gain, double theta,
                          double power1, double power2, double noise_var, Receiver receiver) {
    const double mm = static_cast<double>(c1.size() * c2.size());
    const double f = log_proximity_sum(c1, c2, cross_gain, theta, power1, power2, noise_var, receiver);
    // (1/MM) sum_k log2((1/2) S_k) = f/(MM ln2) - 1
    return std::log2(mm) - kLog2E - f / (mm * kLn2) + 1.0;
}

double cc_sum_bound(const Constellation& c1, const Constellation& c2, const ChannelInstance& instance,
                    double theta, const NoiseRule& rule) {
    instance.validate();
    const MIEstimate i1 = joint_mi(c1, c2, instance.h21, theta, instance.p1, instance.p2,
                                   instance.noise_var_r1(), Receiver::R1, rule);
    const MIEstimate i2 = joint_mi(c1, c2, instance.h12, theta, instance.p1, instance.p2,
                                   instance.noise_var_r2(), Receiver::R2, rule);
    return std::min(i1.value, i2.value);
}

NoiseRule default_noise_rule(Eigen::Index m1, Eigen::Index m2, std::uint64_t seed) {
    if (m1 * m2 > 256) return NoiseRule::monte_carlo(200000, seed);
    return NoiseRule::gauss_hermite(24);
}

}  // namespace cclab
