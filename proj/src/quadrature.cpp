#include "cclab/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cclab/numerics.hpp"

namespace cclab {

void NoiseRule::validate() const {
    if (method == NoiseMethod::GaussHermite) {
        if (nodes_per_dim < 4) {
            throw std::invalid_argument("NoiseRule: nodes_per_dim must be >= 4, got " +
                                        std::to_string(nodes_per_dim));
        }
    } else {
        if (samples < 1000) {
            throw std::invalid_argument("NoiseRule: samples must be >= 1000, got " +
                                        std::to_string(samples));
        }
    }
}

// Newton iteration on the normalized Hermite recurrence, largest root first.
// Initial guesses follow the usual asymptotic estimates; ~5 iterations each.
GaussHermiteRule gauss_hermite_rule(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite_rule: n must be >= 1");

    const double pim4 = 0.7511255444649424828587030047762277;  // pi^(-1/4)
    Eigen::VectorXd x(n), w(n);

    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * x(n - 1);
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * x(n - 2);
        } else {
            z = 2.0 * z - x(n - i + 1);
        }

        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-15 * (1.0 + std::abs(z))) break;
        }

        x(n - 1 - i) = z;   // largest roots at the top
        x(i) = -z;
        w(i) = 2.0 / (pp * pp);
        w(n - 1 - i) = w(i);
    }
    if (n % 2 == 1) x(m - 1) = 0.0;  // center node is exactly zero

    return {std::move(x), std::move(w)};
}

}  // namespace cclab
