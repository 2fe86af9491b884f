#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "cclab/channel.hpp"
#include "cclab/constellation.hpp"
#include "cclab/fdma.hpp"
#include "cclab/quadrature.hpp"

namespace cclab {

enum class Command { Classify, Region, RotateOpt, Fdma, Compare, Reproduce };
enum class ThetaPolicy { Zero, Metric, Numerical, Fixed };
enum class OutputFormat { Table, Csv, Json, Svg };

/// Fully resolved description of one CLI invocation. Serializes to the same
/// key set the flags use, so any emitted provenance block is a valid config
/// file for replaying the job.
struct JobSpec {
    Command command = Command::Classify;
    ChannelInstance instance;
    std::string constellation1 = "psk4";  // "pskN" | "qamN" | "file:PATH"
    std::string constellation2 = "psk4";
    bool no_normalize = false;
    ThetaPolicy theta_policy = ThetaPolicy::Zero;
    double theta_fixed_deg = 0.0;
    std::optional<int> nodes;      // forces Gauss-Hermite
    std::optional<long> samples;   // forces Monte Carlo
    std::uint64_t seed = 0;
    double grid_step_deg = 0.25;
    int fold_symmetry = 1;
    Alphabet fdma_alphabet = Alphabet::Finite;
    double alpha_step = 1e-3;
    bool verify_alpha = false;
    OutputFormat format = OutputFormat::Table;
    std::string out_path;     // empty -> stdout
    std::string experiment;   // reproduce preset name

    /// Explicit --nodes/--samples win; otherwise quadrature while the
    /// composite alphabet is small, seeded Monte Carlo beyond that.
    NoiseRule resolve_rule(Eigen::Index m1, Eigen::Index m2) const;
};

/// "pskN" / "qamN" / "file:PATH" -> constellation (file loads honor
/// no_normalize).
Constellation resolve_constellation(const std::string& spec, bool no_normalize);

/// Accepts "mag∠deg" (or the ASCII alias "mag@deg"), "[re,im]", or a bare
/// real number.
Complex parse_gain(const std::string& text);
std::string gain_to_string(Complex g);

nlohmann::json jobspec_to_json(const JobSpec& spec);
void jobspec_apply_json(JobSpec& spec, const nlohmann::json& config);

std::string to_string(Command c);
std::string to_string(OutputFormat f);

Command parse_command(const std::string& name);
OutputFormat parse_format(const std::string& name);

/// Executes the job and writes the requested artifact (file or stdout).
/// Returns 0; failures surface as exceptions which the CLI maps to exit
/// codes (invalid_argument -> 2, internal_error -> 3, io_error -> 4).
int run_job(const JobSpec& spec);

}  // namespace cclab
