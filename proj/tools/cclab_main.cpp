// cclab: constellation-constrained capacity tool for the two-user Gaussian
// interference channel. See README.md for usage.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cclab/jobspec.hpp"
#include "cclab/numerics.hpp"

namespace {

// Exit codes: 2 parse/validation, 3 numeric engine, 4 I/O.
constexpr int kExitParse = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

void print_error(const char* kind, const std::string& message) {
    nlohmann::json err;
    err["error"] = {{"kind", kind}, {"message", message}};
    std::cerr << err.dump() << "\n";
}

struct RawFlags {
    std::optional<double> p1, p2, sigma1_sq, sigma2_sq, bandwidth;
    std::optional<std::string> h12, h21, constellation, theta, format, out;
    std::optional<double> grid_step, alpha_step;
    std::optional<int> fold_symmetry, nodes;
    std::optional<long> samples;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> alphabet;
    bool no_normalize = false;
    bool verify = false;
};

void add_common_flags(CLI::App* cmd, RawFlags& raw) {
    cmd->add_option("--p1", raw.p1, "transmit power of user 1 (watts)");
    cmd->add_option("--p2", raw.p2, "transmit power of user 2 (watts)");
    cmd->add_option("--h12", raw.h12, "cross gain user1->rx2: mag\xE2\x88\xA0""deg, mag@deg or [re,im]");
    cmd->add_option("--h21", raw.h21, "cross gain user2->rx1 (same forms)");
    cmd->add_option("--sigma1-sq", raw.sigma1_sq, "noise variance at receiver 1 (watts)");
    cmd->add_option("--sigma2-sq", raw.sigma2_sq, "noise variance at receiver 2 (watts)");
    cmd->add_option("--bandwidth", raw.bandwidth, "bandwidth W in Hz; noise variance becomes W, rates bits/s");
    cmd->add_option("--constellation", raw.constellation,
                    "psk4|psk8|qam16|file:PATH, or two comma-separated specs for distinct users");
    cmd->add_flag("--no-normalize", raw.no_normalize, "assert custom constellation already has unit power");
    cmd->add_option("--theta", raw.theta, "zero|metric|numerical|DEG (relative rotation of user 2)");
    cmd->add_option("--grid-step", raw.grid_step, "rotation search grid step in degrees (default 0.25)");
    cmd->add_option("--fold-symmetry", raw.fold_symmetry,
                    "fold the rotation search to (0, 2*pi/N) for N-fold symmetric constellations");
    cmd->add_option("--nodes", raw.nodes, "Gauss-Hermite nodes per dimension");
    cmd->add_option("--samples", raw.samples, "Monte Carlo sample count (switches evaluator)");
    cmd->add_option("--seed", raw.seed, "Monte Carlo seed");
    cmd->add_option("--alphabet", raw.alphabet, "fdma alphabet: gaussian|finite");
    cmd->add_option("--alpha-step", raw.alpha_step, "FDMA bandwidth-split sweep step (default 1e-3)");
    cmd->add_flag("--verify", raw.verify, "also report the numerical argmax of the FDMA sum over alpha");
    cmd->add_option("--out", raw.out, "output path (default stdout)");
    cmd->add_option("--format", raw.format, "table|csv|json|svg");
}

// Flags override config-file values, which override defaults.
void merge(cclab::JobSpec& spec, const RawFlags& raw) {
    using cclab::parse_gain;
    if (raw.p1) spec.instance.p1 = *raw.p1;
    if (raw.p2) spec.instance.p2 = *raw.p2;
    if (raw.h12) spec.instance.h12 = parse_gain(*raw.h12);
    if (raw.h21) spec.instance.h21 = parse_gain(*raw.h21);
    if (raw.sigma1_sq) spec.instance.sigma1_sq = *raw.sigma1_sq;
    if (raw.sigma2_sq) spec.instance.sigma2_sq = *raw.sigma2_sq;
    if (raw.bandwidth) {
        spec.instance.bandwidth_w = *raw.bandwidth;
        spec.instance.sigma1_sq = *raw.bandwidth;
        spec.instance.sigma2_sq = *raw.bandwidth;
    }
    if (raw.constellation) {
        const std::string& s = *raw.constellation;
        const auto comma = s.find(',');
        spec.constellation1 = comma == std::string::npos ? s : s.substr(0, comma);
        spec.constellation2 = comma == std::string::npos ? s : s.substr(comma + 1);
    }
    if (raw.no_normalize) spec.no_normalize = true;
    if (raw.theta) {
        nlohmann::json j;
        j["theta"] = *raw.theta;
        cclab::jobspec_apply_json(spec, j);
    }
    if (raw.grid_step) spec.grid_step_deg = *raw.grid_step;
    if (raw.fold_symmetry) spec.fold_symmetry = *raw.fold_symmetry;
    if (raw.nodes) spec.nodes = *raw.nodes;
    if (raw.samples) spec.samples = *raw.samples;
    if (raw.seed) spec.seed = *raw.seed;
    if (raw.alphabet) {
        if (*raw.alphabet == "gaussian") spec.fdma_alphabet = cclab::Alphabet::Gaussian;
        else if (*raw.alphabet == "finite") spec.fdma_alphabet = cclab::Alphabet::Finite;
        else throw std::invalid_argument("unknown alphabet: " + *raw.alphabet);
    }
    if (raw.alpha_step) spec.alpha_step = *raw.alpha_step;
    if (raw.verify) spec.verify_alpha = true;
    if (raw.format) spec.format = cclab::parse_format(*raw.format);
    if (raw.out) spec.out_path = *raw.out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constellation-constrained capacity regions, rotation optimization and FDMA bounds "
                 "for the two-user Gaussian interference channel"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file mirroring the flags; flags override it");

    RawFlags raw;
    std::string experiment;
    CLI::App* classify = app.add_subcommand("classify", "interference regime and SNR/INR ratios");
    CLI::App* region = app.add_subcommand("region", "CC and Gaussian rate regions");
    CLI::App* rotate = app.add_subcommand("rotate-opt", "optimal relative rotation angle");
    CLI::App* fdma = app.add_subcommand("fdma", "FDMA rate curve over the bandwidth split");
    CLI::App* compare = app.add_subcommand("compare", "regions, FDMA curves and their gaps in one run");
    CLI::App* reproduce = app.add_subcommand("reproduce", "bundled reference scenarios");
    for (CLI::App* cmd : {classify, region, rotate, fdma, compare, reproduce}) {
        add_common_flags(cmd, raw);
    }
    reproduce->add_option("name", experiment,
                          "table1|fig2|fig7a|fig7b|fig8|fig9|fig10|fig11")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        print_error("parse", e.what());
        return kExitParse;
    }

    try {
        cclab::JobSpec spec;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                print_error("io", "cannot open config file: " + config_path);
                return kExitIo;
            }
            nlohmann::json config;
            in >> config;
            // The command comes from the CLI; ignore one stored in a replayed
            // provenance block only if a subcommand was given (it always is).
            config.erase("command");
            config.erase("experiment");
            cclab::jobspec_apply_json(spec, config);
        }

        if (classify->parsed()) spec.command = cclab::Command::Classify;
        if (region->parsed()) spec.command = cclab::Command::Region;
        if (rotate->parsed()) spec.command = cclab::Command::RotateOpt;
        if (fdma->parsed()) spec.command = cclab::Command::Fdma;
        if (compare->parsed()) spec.command = cclab::Command::Compare;
        if (reproduce->parsed()) {
            spec.command = cclab::Command::Reproduce;
            spec.experiment = experiment;
        }
        if (rotate->parsed() && spec.theta_policy == cclab::ThetaPolicy::Zero && !raw.theta) {
            spec.theta_policy = cclab::ThetaPolicy::Metric;  // rotate-opt default
        }
        merge(spec, raw);
        spec.instance.validate();

        return cclab::run_job(spec);
    } catch (const nlohmann::json::exception& e) {
        print_error("parse", e.what());
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        print_error("parse", e.what());
        return kExitParse;
    } catch (const cclab::io_error& e) {
        print_error("io", e.what());
        return kExitIo;
    } catch (const cclab::internal_error& e) {
        print_error("numeric", e.what());
        return kExitNumeric;
    } catch (const std::exception& e) {
        print_error("numeric", e.what());
        return kExitNumeric;
    }
}
