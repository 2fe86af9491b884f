#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cclab/rotation.hpp"

using cclab::AngleGrid;
using cclab::ChannelInstance;
using cclab::Complex;
using cclab::Constellation;
using cclab::NoiseRule;

namespace {

constexpr double kDeg = cclab::kPi / 180.0;

Complex polar_deg(double mag, double deg) { return std::polar(mag, deg * kDeg); }

const Constellation& qpsk() {
    static const Constellation c = cclab::make_standard(cclab::Family::Psk, 4);
    return c;
}

// First row of the bundled sum-capacity scenarios: P1=3.5, P2=6, unit-modulus
// gains at 10 and 20 degrees, sigma^2 = 1.
ChannelInstance row1() {
    return ChannelInstance::baseband(3.5, 6.0, polar_deg(1.0, 10), polar_deg(1.0, 20), 1.0, 1.0);
}

}  // namespace

TEST_CASE("metric objective loses all theta dependence without cross gains") {
    ChannelInstance inst = row1();
    inst.h12 = {0.0, 0.0};
    inst.h21 = {0.0, 0.0};
    const double ref = cclab::metric_objective(qpsk(), qpsk(), inst, 0.0);
    for (double t : {0.3, 1.1, 2.9, 5.5}) {
        CHECK(std::abs(cclab::metric_objective(qpsk(), qpsk(), inst, t) - ref) <=
              1e-9 * (1.0 + std::abs(ref)));
    }
}

TEST_CASE("metric objective is quarter-turn periodic for a qpsk pair") {
    const ChannelInstance inst = row1();
    for (double t : {0.17, 0.9, 2.0}) {
        const double a = cclab::metric_objective(qpsk(), qpsk(), inst, t);
        const double b = cclab::metric_objective(qpsk(), qpsk(), inst, t + cclab::kPi / 2.0);
        CHECK(std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("metric objective is full-turn periodic") {
    const ChannelInstance inst = row1();
    for (double t : {0.0, 0.7, 3.3}) {
        const double a = cclab::metric_objective(qpsk(), qpsk(), inst, t);
        const double b = cclab::metric_objective(qpsk(), qpsk(), inst, t + cclab::kTwoPi);
        CHECK(std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("metric argmin reproduces the row-1 angle") {
    const auto res = cclab::metric_theta_opt(qpsk(), qpsk(), row1(), AngleGrid::full(0.25 * kDeg));
    CHECK(std::abs(res.angle / kDeg - 39.53) <= 0.1);
    CHECK(res.method == cclab::RotationMethod::Metric);
    CHECK(res.grid_step == doctest::Approx(0.25 * kDeg));
}

TEST_CASE("metric argmin reproduces the row-3 angle") {
    const ChannelInstance inst =
        ChannelInstance::baseband(5.0, 5.0, polar_deg(1.2, 15), polar_deg(1.5, 5), 1.0, 1.0);
    const auto res = cclab::metric_theta_opt(qpsk(), qpsk(), inst, AngleGrid::full(0.25 * kDeg));
    CHECK(std::abs(res.angle / kDeg - 73.91) <= 0.1);
}

TEST_CASE("metric argmin reproduces the arbitrary-gain example angle") {
    const ChannelInstance inst =
        ChannelInstance::baseband(9.92, 10.3, polar_deg(1.03, -112), polar_deg(1.07, -44), 1.0, 1.0);
    const auto res = cclab::metric_theta_opt(qpsk(), qpsk(), inst, AngleGrid::full(0.25 * kDeg));
    CHECK(std::abs(res.angle / kDeg - 77.3493) <= 0.1);
}

TEST_CASE("numerical search reproduces the row-1 angle and beats the unrotated sum") {
    const NoiseRule rule = NoiseRule::gauss_hermite(24);
    const auto res = cclab::numerical_theta_opt(qpsk(), qpsk(), row1(), AngleGrid::full(0.25 * kDeg), rule);
    CHECK(std::abs(res.angle / kDeg - 41.25) <= 0.5);
    const double at_zero = cclab::cc_sum_bound(qpsk(), qpsk(), row1(), 0.0, rule);
    CHECK(res.achieved_sum_bound >= at_zero);
    // metric and numerical optima land on nearly the same sum bound
    const auto metric = cclab::metric_theta_opt(qpsk(), qpsk(), row1(), AngleGrid::full(0.25 * kDeg));
    CHECK(std::abs(metric.achieved_sum_bound - res.achieved_sum_bound) <= 0.005);
}

TEST_CASE("without interference the numerical objective is flat and theta defaults to the grid start") {
    ChannelInstance inst = row1();
    inst.h12 = {0.0, 0.0};
    inst.h21 = {0.0, 0.0};
    const NoiseRule rule = NoiseRule::gauss_hermite(12);
    const auto res =
        cclab::numerical_theta_opt(qpsk(), qpsk(), inst, AngleGrid::full(1.0 * kDeg), rule);
    CHECK(res.angle == 0.0);
    double lo = res.objective_trace.front().second, hi = lo;
    for (const auto& [t, v] : res.objective_trace) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi - lo <= 1e-9);
}

TEST_CASE("metric argmin is invariant to a common power/noise rescale") {
    const ChannelInstance base = row1();
    const ChannelInstance scaled =
        ChannelInstance::baseband(base.p1 * 7.0, base.p2 * 7.0, base.h12, base.h21, 7.0, 7.0);
    const AngleGrid grid = AngleGrid::full(0.25 * kDeg);
    const auto a = cclab::metric_theta_opt(qpsk(), qpsk(), base, grid);
    const auto b = cclab::metric_theta_opt(qpsk(), qpsk(), scaled, grid);
    CHECK(std::abs(a.angle - b.angle) <= grid.step);
}

TEST_CASE("the reported angle is the arg-optimum of the reported trace") {
    const auto res = cclab::metric_theta_opt(qpsk(), qpsk(), row1(), AngleGrid::full(0.5 * kDeg));
    double best_angle = res.objective_trace.front().first;
    double best_value = res.objective_trace.front().second;
    for (const auto& [t, v] : res.objective_trace) {
        if (v < best_value) {
            best_value = v;
            best_angle = t;
        }
    }
    CHECK(res.angle == doctest::Approx(best_angle));
    // grid coverage: every configured grid angle appears
    const Eigen::Index expected = static_cast<Eigen::Index>(std::ceil(cclab::kTwoPi / (0.5 * kDeg) - 1e-12));
    CHECK(static_cast<Eigen::Index>(res.objective_trace.size()) == expected + 1);
}

TEST_CASE("folded grids restrict the search range") {
    const auto res = cclab::metric_theta_opt(qpsk(), qpsk(), row1(),
                                             AngleGrid::folded(4, 0.25 * kDeg));
    CHECK(res.angle < cclab::kPi / 2.0 + 0.01);
    CHECK(std::abs(res.angle / kDeg - 39.53) <= 0.1);
}

TEST_CASE("grid preconditions are enforced") {
    CHECK_THROWS_AS(cclab::metric_theta_opt(qpsk(), qpsk(), row1(), AngleGrid::full(0.6 * kDeg)),
                    std::invalid_argument);
    CHECK_THROWS_AS(cclab::numerical_theta_opt(qpsk(), qpsk(), row1(), AngleGrid::full(1.5 * kDeg),
                                               NoiseRule::gauss_hermite(12)),
                    std::invalid_argument);
    CHECK_THROWS_AS(cclab::numerical_theta_opt(qpsk(), qpsk(), row1(), AngleGrid::full(0.5 * kDeg),
                                               NoiseRule::monte_carlo(10000, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(AngleGrid::folded(0, 0.25 * kDeg), std::invalid_argument);
}
