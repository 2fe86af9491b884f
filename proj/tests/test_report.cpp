#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cclab/jobspec.hpp"
#include "cclab/report.hpp"

using cclab::Complex;
using cclab::CsvRow;
using cclab::JobSpec;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

cclab::RateRegion make_region(double r1, double r2, double s,
                              cclab::RateUnits u = cclab::RateUnits::BitsPerSecond) {
    return {r1, r2, s, u, cclab::RegionKind::CCCapacity};
}

cclab::FdmaCurve make_curve() {
    cclab::FdmaCurve c;
    c.alphas.resize(3);
    c.alphas << 0.25, 0.5, 0.75;
    c.r1.resize(3);
    c.r1 << 0.5, 1.0, 1.4;
    c.r2.resize(3);
    c.r2 << 1.4, 1.0, 0.5;
    c.alpha_opt = 0.5;
    c.sum_at_opt = 2.0;
    return c;
}

}  // namespace

TEST_CASE("format_number keeps nine significant digits and maps nan to empty") {
    CHECK(cclab::format_number(3.14159265358979) == "3.14159265");
    CHECK(cclab::format_number(0.5) == "0.5");
    CHECK(cclab::format_number(std::nan("")) == "");
}

TEST_CASE("csv schema and determinism") {
    std::vector<CsvRow> rows(2);
    rows[0] = {0.25, 1.9, 0.5, 1.4, "GaussHermite", 0.0};
    rows[1].param = 0.5;
    rows[1].objective = 2.0;
    rows[1].method = "Metric";  // R1/R2 stay NaN -> empty cells

    const std::string a = cclab::render_csv(rows, "{\"seed\":0}");
    const std::string b = cclab::render_csv(rows, "{\"seed\":0}");
    CHECK(a == b);
    CHECK(a.find("# jobspec: {\"seed\":0}") != std::string::npos);
    CHECK(a.find("param,objective,R1,R2,method,std_error") != std::string::npos);
    CHECK(a.find("0.25,1.9,0.5,1.4,GaussHermite,0") != std::string::npos);
    CHECK(a.find("0.5,2,,,Metric,0") != std::string::npos);
}

TEST_CASE("svg embeds provenance and one legend entry per input") {
    const std::vector<cclab::LabeledRegion> regions = {{make_region(2, 2, 3), "CC region"},
                                                       {make_region(3, 3, 5), "Gaussian region"}};
    const std::vector<cclab::LabeledCurve> curves = {{make_curve(), "FDMA (finite)"}};
    const std::string svg = cclab::render_region_svg(regions, curves, "{\"cmd\":\"compare\"}");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("&quot;cmd&quot;") != std::string::npos);   // escaped provenance in <desc>
    CHECK(svg.find("CC region") != std::string::npos);
    CHECK(svg.find("Gaussian region") != std::string::npos);
    CHECK(svg.find("FDMA (finite)") != std::string::npos);
    // legend order follows input order
    CHECK(svg.find("CC region") < svg.find("Gaussian region"));
    CHECK(svg.find("Gaussian region") < svg.find("FDMA (finite)"));
    // deterministic bytes
    CHECK(svg == cclab::render_region_svg(regions, curves, "{\"cmd\":\"compare\"}"));
}

TEST_CASE("svg rejects mixed units") {
    const std::vector<cclab::LabeledRegion> mixed = {
        {make_region(1, 1, 1.5, cclab::RateUnits::BitsPerChannelUse), "a"},
        {make_region(1, 1, 1.5, cclab::RateUnits::BitsPerSecond), "b"}};
    CHECK_THROWS_AS(cclab::render_region_svg(mixed, {}, ""), std::invalid_argument);

    const std::vector<cclab::LabeledRegion> per_use = {
        {make_region(1, 1, 1.5, cclab::RateUnits::BitsPerChannelUse), "a"}};
    const std::vector<cclab::LabeledCurve> curves = {{make_curve(), "c"}};
    CHECK_THROWS_AS(cclab::render_region_svg(per_use, curves, ""), std::invalid_argument);
}

TEST_CASE("gain strings parse in all three forms") {
    const Complex polar = cclab::parse_gain("1.2\xE2\x88\xA0" "15");
    CHECK(std::abs(polar - std::polar(1.2, 15.0 * cclab::kPi / 180.0)) < 1e-12);
    const Complex ascii = cclab::parse_gain("1.2@15");
    CHECK(std::abs(ascii - polar) < 1e-15);
    const Complex pair = cclab::parse_gain("[0.3,-0.4]");
    CHECK(pair.real() == doctest::Approx(0.3));
    CHECK(pair.imag() == doctest::Approx(-0.4));
    const Complex real = cclab::parse_gain("0.9");
    CHECK(real.real() == doctest::Approx(0.9));
    CHECK(real.imag() == 0.0);
    CHECK_THROWS_AS(cclab::parse_gain("abc"), std::invalid_argument);
    CHECK_THROWS_AS(cclab::parse_gain("[1]"), std::invalid_argument);
    CHECK_THROWS_AS(cclab::parse_gain(""), std::invalid_argument);
}

TEST_CASE("jobspec json round trip") {
    JobSpec spec;
    spec.command = cclab::Command::Compare;
    spec.instance = cclab::ChannelInstance::with_bandwidth(7, 12, cclab::parse_gain("1@10"),
                                                           cclab::parse_gain("0.9@20"), 2.0);
    spec.constellation1 = "psk4";
    spec.constellation2 = "psk8";
    spec.theta_policy = cclab::ThetaPolicy::Fixed;
    spec.theta_fixed_deg = 41.3;
    spec.nodes = 20;
    spec.seed = 77;
    spec.format = cclab::OutputFormat::Csv;
    spec.out_path = "/tmp/x.csv";

    const nlohmann::json j = cclab::jobspec_to_json(spec);
    JobSpec back;
    cclab::jobspec_apply_json(back, j);
    CHECK(back.command == spec.command);
    CHECK(back.instance.p1 == doctest::Approx(7.0));
    CHECK(back.instance.bandwidth_w.has_value());
    CHECK(std::abs(back.instance.h21 - spec.instance.h21) < 1e-9);
    CHECK(back.constellation1 == "psk4");
    CHECK(back.constellation2 == "psk8");
    CHECK(back.theta_policy == cclab::ThetaPolicy::Fixed);
    CHECK(back.theta_fixed_deg == doctest::Approx(41.3));
    CHECK(back.nodes.has_value());
    CHECK(*back.nodes == 20);
    CHECK(back.seed == 77);
    CHECK(back.format == cclab::OutputFormat::Csv);
    CHECK(back.out_path == "/tmp/x.csv");

    nlohmann::json bad;
    bad["p3"] = 1.0;
    CHECK_THROWS_AS(cclab::jobspec_apply_json(back, bad), std::invalid_argument);
}

TEST_CASE("resolve_rule picks quadrature for small products and monte carlo beyond") {
    JobSpec spec;
    CHECK(spec.resolve_rule(16, 16).method == cclab::NoiseMethod::GaussHermite);
    CHECK(spec.resolve_rule(64, 16).method == cclab::NoiseMethod::MonteCarlo);
    spec.nodes = 16;
    CHECK(spec.resolve_rule(64, 16).method == cclab::NoiseMethod::GaussHermite);
    spec.samples = 5000;
    CHECK_THROWS_AS(spec.resolve_rule(4, 4), std::invalid_argument);
}

TEST_CASE("run_job writes deterministic artifacts with embedded provenance") {
    JobSpec spec;
    spec.command = cclab::Command::Compare;
    spec.instance = cclab::ChannelInstance::with_bandwidth(7, 12, cclab::parse_gain("1@10"),
                                                           cclab::parse_gain("1@20"), 2.0);
    spec.theta_policy = cclab::ThetaPolicy::Fixed;
    spec.theta_fixed_deg = 40.0;
    spec.alpha_step = 0.02;  // keep the sweep small
    spec.nodes = 12;
    spec.format = cclab::OutputFormat::Csv;
    spec.out_path = "/tmp/cclab_cmp_a.csv";
    REQUIRE(cclab::run_job(spec) == 0);
    spec.out_path = "/tmp/cclab_cmp_b.csv";
    REQUIRE(cclab::run_job(spec) == 0);
    const std::string a = slurp("/tmp/cclab_cmp_a.csv");
    CHECK(a == slurp("/tmp/cclab_cmp_b.csv"));
    CHECK(a.find("# jobspec: ") != std::string::npos);
    CHECK(a.find("param,objective,R1,R2,method,std_error") != std::string::npos);

    spec.format = cclab::OutputFormat::Svg;
    spec.out_path = "/tmp/cclab_cmp.svg";
    REQUIRE(cclab::run_job(spec) == 0);
    const std::string svg = slurp("/tmp/cclab_cmp.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("&quot;command&quot;:&quot;compare&quot;") != std::string::npos);
}

TEST_CASE("format restrictions are enforced per command") {
    JobSpec spec;
    spec.command = cclab::Command::Classify;
    spec.instance = cclab::ChannelInstance::baseband(1, 1, {1, 0}, {1, 0}, 1, 1);
    spec.format = cclab::OutputFormat::Svg;
    CHECK_THROWS_AS(cclab::run_job(spec), std::invalid_argument);

    spec.command = cclab::Command::Reproduce;
    spec.experiment = "fig99";
    spec.format = cclab::OutputFormat::Table;
    CHECK_THROWS_AS(cclab::run_job(spec), std::invalid_argument);
}

TEST_CASE("write_artifact reports io failures") {
    CHECK_THROWS_AS(cclab::write_artifact("/nonexistent_dir_cclab/x.txt", "content"), cclab::io_error);
}
