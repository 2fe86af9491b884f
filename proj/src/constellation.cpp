#include "cclab/constellation.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace cclab {

Constellation::Constellation(Eigen::VectorXcd points, std::string label)
    : points_(std::move(points)), label_(std::move(label)) {
    if (points_.size() < 1) {
        throw std::invalid_argument("Constellation: cardinality must be >= 1");
    }
    for (Eigen::Index i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_(i).real()) || !std::isfinite(points_(i).imag())) {
            throw std::invalid_argument("Constellation: non-finite point at index " + std::to_string(i));
        }
    }
    const double p = average_power();
    if (std::abs(p - 1.0) > 1e-12) {
        throw std::invalid_argument("Constellation '" + label_ + "': average power " + std::to_string(p) +
                                    " violates the unit-power convention");
    }
}

Constellation make_standard(Family family, int order) {
    if (family == Family::Psk) {
        if (order < 2) throw std::invalid_argument("PSK: order must be >= 2");
        Eigen::VectorXcd pts(order);
        for (int k = 0; k < order; ++k) {
            const double phi = kTwoPi * k / order;
            pts(k) = Complex{std::cos(phi), std::sin(phi)};
        }
        return {std::move(pts), "PSK" + std::to_string(order)};
    }

    // Square QAM with even side: order must be 4, 16, 36, 64, ...
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
    if (order < 4 || side * side != order || side % 2 != 0) {
        throw std::invalid_argument("QAM: order must be a perfect square with even side, got " +
                                    std::to_string(order));
    }
    Eigen::VectorXcd pts(order);
    double power_sum = 0.0;
    int idx = 0;
    for (int row = 0; row < side; ++row) {
        for (int col = 0; col < side; ++col) {
            const double re = -(side - 1) + 2.0 * col;
            const double im = -(side - 1) + 2.0 * row;
            pts(idx++) = Complex{re, im};
            power_sum += re * re + im * im;
        }
    }
    pts /= std::sqrt(power_sum / order);
    return {std::move(pts), "QAM" + std::to_string(order)};
}

Constellation make_standard(const std::string& name) {
    auto parse_order = [&](std::size_t prefix_len) {
        try {
            return std::stoi(name.substr(prefix_len));
        } catch (const std::exception&) {
            throw std::invalid_argument("unknown constellation name: " + name);
        }
    };
    if (name.rfind("psk", 0) == 0) return make_standard(Family::Psk, parse_order(3));
    if (name.rfind("qam", 0) == 0) return make_standard(Family::Qam, parse_order(3));
    throw std::invalid_argument("unknown constellation name: " + name);
}

Constellation rotate(const Constellation& c, double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("rotate: theta must be finite");
    const Complex phase{std::cos(theta), std::sin(theta)};
    Eigen::VectorXcd pts = c.points() * phase;
    // Rotation can push |power - 1| to a few ulp; renormalize the residue so
    // the constructor invariant stays airtight.
    pts /= std::sqrt(pts.squaredNorm() / static_cast<double>(pts.size()));
    return {std::move(pts), c.label()};
}

Eigen::VectorXcd difference_multiset(const Constellation& c) {
    const Eigen::Index m = c.size();
    Eigen::VectorXcd d(m * m);
    for (Eigen::Index k = 0; k < m; ++k) {
        for (Eigen::Index i = 0; i < m; ++i) {
            d(k * m + i) = c.point(k) - c.point(i);
        }
    }
    return d;
}

Constellation make_custom(const Eigen::VectorXcd& points, const std::string& label, bool normalize) {
    if (points.size() < 1) throw std::invalid_argument("custom constellation: empty point set");
    if (!normalize) return {points, label};
    const double p = points.squaredNorm() / static_cast<double>(points.size());
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw std::invalid_argument("custom constellation: cannot normalize zero/non-finite power");
    }
    return {points / std::sqrt(p), label};
}

Constellation load_constellation(const std::string& path, bool normalize) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open constellation file: " + path);

    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("constellation file " + path + ": " + e.what());
    }
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("constellation file " + path + ": expected nonempty array of [re, im] pairs");
    }

    Eigen::VectorXcd pts(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& e = j[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw std::invalid_argument("constellation file " + path + ": entry " + std::to_string(i) +
                                        " is not an [re, im] pair");
        }
        const double re = e[0].get<double>();
        const double im = e[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw std::invalid_argument("constellation file " + path + ": non-finite point at index " +
                                        std::to_string(i));
        }
        pts(i) = Complex{re, im};
    }
    return make_custom(pts, "custom", normalize);
}

bool same_points(const Constellation& a, const Constellation& b, double tol) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (std::abs(a.point(i) - b.point(i)) > tol) return false;
    }
    return true;
}

}  // namespace cclab
