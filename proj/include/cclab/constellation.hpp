#pragma once

#include <string>

#include <Eigen/Dense>

#include "cclab/numerics.hpp"

namespace cclab {

enum class Family { Psk, Qam };

/// Ordered finite set of complex signal points, normalized to unit average
/// power: (1/M) * sum |x_i|^2 = 1 within 1e-12. Transmit power enters as a
/// sqrt(P) scale factor at use sites. Immutable after construction.
class Constellation {
  public:
    /// Validates cardinality >= 1, finiteness and the unit-power invariant.
    Constellation(Eigen::VectorXcd points, std::string label);

    const Eigen::VectorXcd& points() const { return points_; }
    const std::string& label() const { return label_; }
    Eigen::Index size() const { return points_.size(); }
    Complex point(Eigen::Index i) const { return points_(i); }

    double average_power() const { return points_.squaredNorm() / static_cast<double>(points_.size()); }

  private:
    Eigen::VectorXcd points_;
    std::string label_;
};

/// Standard families. PSK points are e^{j2*pi*k/M} in increasing angle from 0;
/// QAM is the square grid (even side) scaled to unit average power, row-major
/// from the most negative corner.
Constellation make_standard(Family family, int order);

/// Short-name lookup used by the CLI and file loader: "psk2", "psk4", "psk8",
/// "qam16", "qam64", ...
Constellation make_standard(const std::string& name);

/// Every point multiplied by e^{j*theta}; ordering and power preserved.
Constellation rotate(const Constellation& c, double theta);

/// All M^2 ordered differences x_k - x_i (k-major), zeros on the diagonal.
Eigen::VectorXcd difference_multiset(const Constellation& c);

/// Custom constellation from arbitrary points. With normalize=true the set is
/// scaled to unit average power; otherwise it must already satisfy the
/// invariant within 1e-12.
Constellation make_custom(const Eigen::VectorXcd& points, const std::string& label, bool normalize);

/// Loads a JSON array of [re, im] pairs. Validates finiteness and nonzero
/// cardinality; normalizes unless the caller asserts unit power already.
Constellation load_constellation(const std::string& path, bool normalize = true);

/// Pointwise equality within 1e-12 (same cardinality, same order).
bool same_points(const Constellation& a, const Constellation& b, double tol = 1e-12);

}  // namespace cclab
