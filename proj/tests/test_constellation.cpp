#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <complex>
#include <cstdio>
#include <fstream>
#include <random>
#include <vector>

#include "cclab/constellation.hpp"

using cclab::Complex;
using cclab::Constellation;
using cclab::Family;

namespace {

std::vector<double> sorted_abs(const Eigen::VectorXcd& v) {
    std::vector<double> out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = std::abs(v(i));
    std::sort(out.begin(), out.end());
    return out;
}

std::string write_temp_json(const std::string& name, const std::string& content) {
    const std::string path = std::string("/tmp/cclab_test_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("psk4 is the unit circle at multiples of 90 degrees") {
    const Constellation c = cclab::make_standard(Family::Psk, 4);
    REQUIRE(c.size() == 4);
    CHECK(std::abs(c.point(0) - Complex{1, 0}) < 1e-15);
    CHECK(std::abs(c.point(1) - Complex{0, 1}) < 1e-15);
    CHECK(std::abs(c.point(2) - Complex{-1, 0}) < 1e-15);
    CHECK(std::abs(c.point(3) - Complex{0, -1}) < 1e-15);
}

TEST_CASE("psk2 is {1, -1}") {
    const Constellation c = cclab::make_standard(Family::Psk, 2);
    CHECK(std::abs(c.point(0) - Complex{1, 0}) < 1e-15);
    CHECK(std::abs(c.point(1) - Complex{-1, 0}) < 1e-15);
}

TEST_CASE("qam16 is the {-3,-1,1,3} grid scaled by the enumerated average power") {
    // oracle: enumerate the raw grid and compute its average power directly
    std::vector<Complex> raw;
    double psum = 0.0;
    for (int im : {-3, -1, 1, 3}) {
        for (int re : {-3, -1, 1, 3}) {
            raw.emplace_back(re, im);
            psum += re * re + im * im;
        }
    }
    const double avg = psum / 16.0;
    CHECK(avg == doctest::Approx(10.0));

    const Constellation c = cclab::make_standard(Family::Qam, 16);
    REQUIRE(c.size() == 16);
    for (int i = 0; i < 16; ++i) {
        CHECK(std::abs(c.point(i) - raw[i] / std::sqrt(avg)) < 1e-14);
    }
}

TEST_CASE("standard families have unit average power") {
    for (int m : {2, 4, 8, 16}) {
        CHECK(std::abs(cclab::make_standard(Family::Psk, m).average_power() - 1.0) <= 1e-12);
    }
    for (int m : {4, 16, 36, 64}) {
        CHECK(std::abs(cclab::make_standard(Family::Qam, m).average_power() - 1.0) <= 1e-12);
    }
}

TEST_CASE("unsupported orders are rejected") {
    CHECK_THROWS_AS(cclab::make_standard(Family::Psk, 1), std::invalid_argument);
    CHECK_THROWS_AS(cclab::make_standard(Family::Qam, 8), std::invalid_argument);
    CHECK_THROWS_AS(cclab::make_standard(Family::Qam, 9), std::invalid_argument);  // odd side
    CHECK_THROWS_AS(cclab::make_standard("dpsk4"), std::invalid_argument);
    CHECK_THROWS_AS(cclab::make_standard("pskx"), std::invalid_argument);
}

TEST_CASE("rotation by zero is the identity") {
    const Constellation c = cclab::make_standard(Family::Psk, 4);
    const Constellation r = cclab::rotate(c, 0.0);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(c.point(i) - r.point(i)) == 0.0);
}

TEST_CASE("qpsk rotated by 90 degrees permutes its own points") {
    const Constellation c = cclab::make_standard(Family::Psk, 4);
    const Constellation r = cclab::rotate(c, cclab::kPi / 2.0);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(r.point(i) - c.point((i + 1) % 4)) < 1e-12);
}

TEST_CASE("bpsk rotated by 90 degrees lands on the imaginary axis") {
    const Constellation r = cclab::rotate(cclab::make_standard(Family::Psk, 2), cclab::kPi / 2.0);
    CHECK(std::abs(r.point(0) - Complex{0, 1}) < 1e-12);
    CHECK(std::abs(r.point(1) - Complex{0, -1}) < 1e-12);
}

TEST_CASE("rotation composes additively") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    const Constellation c = cclab::make_standard(Family::Qam, 16);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = angle(gen);
        const double b = angle(gen);
        const Constellation lhs = cclab::rotate(cclab::rotate(c, a), b);
        const Constellation rhs = cclab::rotate(c, a + b);
        for (Eigen::Index i = 0; i < c.size(); ++i) {
            CHECK(std::abs(lhs.point(i) - rhs.point(i)) <= 1e-12);
        }
    }
}

TEST_CASE("rotation preserves the pairwise distance multiset") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> angle(0.0, cclab::kTwoPi);
    for (const auto& c : {cclab::make_standard(Family::Psk, 8), cclab::make_standard(Family::Qam, 16)}) {
        const auto base = sorted_abs(cclab::difference_multiset(c));
        for (int trial = 0; trial < 10; ++trial) {
            const auto rotated = sorted_abs(cclab::difference_multiset(cclab::rotate(c, angle(gen))));
            REQUIRE(rotated.size() == base.size());
            for (std::size_t i = 0; i < base.size(); ++i) CHECK(rotated[i] == doctest::Approx(base[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("difference multiset of bpsk in index order") {
    const Eigen::VectorXcd d = cclab::difference_multiset(cclab::make_standard(Family::Psk, 2));
    REQUIRE(d.size() == 4);
    CHECK(std::abs(d(0) - Complex{0, 0}) < 1e-15);
    CHECK(std::abs(d(1) - Complex{2, 0}) < 1e-15);
    CHECK(std::abs(d(2) - Complex{-2, 0}) < 1e-15);
    CHECK(std::abs(d(3) - Complex{0, 0}) < 1e-15);
}

TEST_CASE("difference multiset of a single point is {0}") {
    Eigen::VectorXcd one(1);
    one << Complex{1.0, 0.0};
    const Constellation c = cclab::make_custom(one, "point", false);
    const Eigen::VectorXcd d = cclab::difference_multiset(c);
    REQUIRE(d.size() == 1);
    CHECK(std::abs(d(0)) == 0.0);
}

TEST_CASE("qpsk difference magnitudes are {0 x4, sqrt2 x8, 2 x4}") {
    const auto mags = sorted_abs(cclab::difference_multiset(cclab::make_standard(Family::Psk, 4)));
    REQUIRE(mags.size() == 16);
    for (int i = 0; i < 4; ++i) CHECK(mags[i] == doctest::Approx(0.0).epsilon(1e-12));
    for (int i = 4; i < 12; ++i) CHECK(mags[i] == doctest::Approx(std::sqrt(2.0)));
    for (int i = 12; i < 16; ++i) CHECK(mags[i] == doctest::Approx(2.0));
}

TEST_CASE("custom loader normalizes and validates") {
    const std::string path = write_temp_json("points.json", "[[3,0],[-3,0],[0,3],[0,-3]]");
    const Constellation c = cclab::load_constellation(path);
    CHECK(std::abs(c.average_power() - 1.0) <= 1e-12);
    CHECK(std::abs(c.point(0) - Complex{1, 0}) < 1e-12);

    // --no-normalize path insists the file is already unit power
    CHECK_THROWS_AS(cclab::load_constellation(path, false), std::invalid_argument);
    const std::string unit = write_temp_json("unit.json", "[[1,0],[-1,0]]");
    CHECK(cclab::load_constellation(unit, false).size() == 2);
}

TEST_CASE("loader error paths") {
    CHECK_THROWS_AS(cclab::load_constellation("/tmp/definitely_missing_cclab.json"), cclab::io_error);
    CHECK_THROWS_AS(cclab::load_constellation(write_temp_json("empty.json", "[]")),
                    std::invalid_argument);
    CHECK_THROWS_AS(cclab::load_constellation(write_temp_json("bad_entry.json", "[[1,0],[2]]")),
                    std::invalid_argument);
    CHECK_THROWS_AS(cclab::load_constellation(write_temp_json("not_json.json", "hello")),
                    std::invalid_argument);
}

TEST_CASE("same_points compares pointwise in order") {
    const Constellation a = cclab::make_standard(Family::Psk, 4);
    CHECK(cclab::same_points(a, cclab::make_standard(Family::Psk, 4)));
    CHECK_FALSE(cclab::same_points(a, cclab::make_standard(Family::Psk, 8)));
    CHECK_FALSE(cclab::same_points(a, cclab::rotate(a, 0.3)));
}
