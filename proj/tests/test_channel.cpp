#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cclab/channel.hpp"

using cclab::ChannelInstance;
using cclab::Complex;
using cclab::Regime;

namespace {

Complex polar_deg(double mag, double deg) { return std::polar(mag, deg * cclab::kPi / 180.0); }

}  // namespace

TEST_CASE("equal snr and inr at 10 is strong interference") {
    // SNR1=SNR2=INR1=INR2=10; the side conditions 10 > 10/11 hold
    const ChannelInstance inst = ChannelInstance::baseband(10, 10, {1, 0}, {1, 0}, 1, 1);
    const auto rep = cclab::classify_regime(inst);
    CHECK(rep.regime == Regime::Strong);
    CHECK(rep.snr1 == doctest::Approx(10.0));
    CHECK(rep.inr2 == doctest::Approx(10.0));
}

TEST_CASE("cross gain below one puts the bandwidth instance in weak interference") {
    // P1=7, P2=12, W=2, h21=0.9: INR1 = 0.81 * SNR2 < SNR2
    const ChannelInstance inst =
        ChannelInstance::with_bandwidth(7, 12, polar_deg(1.0, 10), polar_deg(0.9, 20), 2.0);
    const auto rep = cclab::classify_regime(inst);
    CHECK(rep.regime == Regime::Weak);
    CHECK(rep.snr1 == doctest::Approx(3.5));
    CHECK(rep.snr2 == doctest::Approx(6.0));
    CHECK(rep.inr1 == doctest::Approx(0.81 * 6.0));
    CHECK(rep.inr2 == doctest::Approx(3.5));
}

TEST_CASE("overwhelming interference is classified very strong") {
    // SNR1=SNR2=1, INR1=INR2=10: both side conditions fail (1 <= 10/2)
    const ChannelInstance inst = ChannelInstance::baseband(1, 1, polar_deg(std::sqrt(10.0), 0),
                                                           polar_deg(std::sqrt(10.0), 0), 1, 1);
    CHECK(cclab::classify_regime(inst).regime == Regime::VeryStrong);
}

TEST_CASE("regime boundaries follow the definitions") {
    // SNR1 slightly above INR2 flips to weak
    const ChannelInstance weak = ChannelInstance::baseband(10.0, 10, polar_deg(0.999, 0), {1, 0}, 1, 1);
    CHECK(cclab::classify_regime(weak).regime == Regime::Weak);
    // equality stays strong (definition uses <=)
    const ChannelInstance strong = ChannelInstance::baseband(10.0, 10, {1, 0}, {1, 0}, 1, 1);
    CHECK(cclab::classify_regime(strong).regime == Regime::Strong);
}

TEST_CASE("classification is scale invariant") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> power(0.2, 20.0);
    std::uniform_real_distribution<double> mag(0.3, 2.5);
    std::uniform_real_distribution<double> phase(0.0, 360.0);
    std::uniform_real_distribution<double> scale(1e-3, 1e3);
    for (int trial = 0; trial < 50; ++trial) {
        const double s = scale(gen);
        const ChannelInstance a = ChannelInstance::baseband(
            power(gen), power(gen), polar_deg(mag(gen), phase(gen)), polar_deg(mag(gen), phase(gen)),
            power(gen), power(gen));
        const ChannelInstance b =
            ChannelInstance::baseband(a.p1 * s, a.p2 * s, a.h12, a.h21, a.sigma1_sq * s, a.sigma2_sq * s);
        CHECK(cclab::classify_regime(a).regime == cclab::classify_regime(b).regime);
    }
}

TEST_CASE("regime report ratios are recomputable from the instance") {
    const ChannelInstance inst =
        ChannelInstance::baseband(3.5, 6.0, polar_deg(1.2, 10), polar_deg(1.1, 20), 0.7, 1.3);
    const auto rep = cclab::classify_regime(inst);
    CHECK(rep.snr1 == doctest::Approx(inst.p1 / inst.sigma1_sq));
    CHECK(rep.snr2 == doctest::Approx(inst.p2 / inst.sigma2_sq));
    CHECK(rep.inr1 == doctest::Approx(std::norm(inst.h21) * inst.p2 / inst.sigma1_sq));
    CHECK(rep.inr2 == doctest::Approx(std::norm(inst.h12) * inst.p1 / inst.sigma2_sq));
}

TEST_CASE("bandwidth mode uses W as both noise variances") {
    const ChannelInstance inst = ChannelInstance::with_bandwidth(7, 12, {1, 0}, {1, 0}, 2.0);
    CHECK(inst.noise_var_r1() == doctest::Approx(2.0));
    CHECK(inst.noise_var_r2() == doctest::Approx(2.0));
    CHECK(inst.snr1() == doctest::Approx(3.5));
}

TEST_CASE("invalid instances are rejected") {
    CHECK_THROWS_AS(ChannelInstance::baseband(-1, 1, {1, 0}, {1, 0}, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(ChannelInstance::baseband(1, 1, {1, 0}, {1, 0}, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ChannelInstance::with_bandwidth(1, 1, {1, 0}, {1, 0}, -2), std::invalid_argument);
    ChannelInstance nan_gain = ChannelInstance::baseband(1, 1, {1, 0}, {1, 0}, 1, 1);
    nan_gain.h12 = Complex{std::nan(""), 0};
    CHECK_THROWS_AS(nan_gain.validate(), std::invalid_argument);
}
