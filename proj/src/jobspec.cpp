#include "cclab/jobspec.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cclab/mi_engine.hpp"
#include "cclab/report.hpp"
#include "cclab/rotation.hpp"

namespace cclab {

namespace {

double deg2rad(double d) { return d * kPi / 180.0; }
double rad2deg(double r) { return r * 180.0 / kPi; }

Complex polar_deg(double mag, double deg) { return std::polar(mag, deg2rad(deg)); }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse " + what + ": '" + s + "'");
    }
}

}  // namespace

Complex parse_gain(const std::string& text) {
    const std::string s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty gain");

    if (s.front() == '[') {  // [re, im]
        try {
            const nlohmann::json j = nlohmann::json::parse(s);
            if (!j.is_array() || j.size() != 2) throw std::invalid_argument("bad pair");
            return {j[0].get<double>(), j[1].get<double>()};
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse gain '" + s + "' as [re, im]");
        }
    }

    // polar forms: "mag∠deg" (U+2220) or ASCII "mag@deg"
    const std::string angle_utf8 = "\xE2\x88\xA0";
    std::size_t split = s.find(angle_utf8);
    std::size_t skip = angle_utf8.size();
    if (split == std::string::npos) {
        split = s.find('@');
        skip = 1;
    }
    if (split != std::string::npos) {
        const double mag = parse_double(trim(s.substr(0, split)), "gain magnitude");
        const double deg = parse_double(trim(s.substr(split + skip)), "gain angle");
        return polar_deg(mag, deg);
    }
    return {parse_double(s, "gain"), 0.0};
}

std::string gain_to_string(Complex g) {
    const double mag = std::abs(g);
    const double deg = mag > 0.0 ? rad2deg(std::arg(g)) : 0.0;
    return format_number(mag) + "\xE2\x88\xA0" + format_number(deg);
}

Constellation resolve_constellation(const std::string& spec, bool no_normalize) {
    if (spec.rfind("file:", 0) == 0) return load_constellation(spec.substr(5), !no_normalize);
    return make_standard(spec);
}

NoiseRule JobSpec::resolve_rule(Eigen::Index m1, Eigen::Index m2) const {
    if (nodes && samples) {
        throw std::invalid_argument("--nodes and --samples are mutually exclusive");
    }
    if (samples) return NoiseRule::monte_carlo(*samples, seed);
    if (nodes) return NoiseRule::gauss_hermite(*nodes);
    return default_noise_rule(m1, m2, seed);
}

std::string to_string(Command c) {
    switch (c) {
        case Command::Classify: return "classify";
        case Command::Region: return "region";
        case Command::RotateOpt: return "rotate-opt";
        case Command::Fdma: return "fdma";
        case Command::Compare: return "compare";
        case Command::Reproduce: return "reproduce";
    }
    return "?";
}

std::string to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Table: return "table";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
        case OutputFormat::Svg: return "svg";
    }
    return "?";
}

Command parse_command(const std::string& name) {
    if (name == "classify") return Command::Classify;
    if (name == "region") return Command::Region;
    if (name == "rotate-opt") return Command::RotateOpt;
    if (name == "fdma") return Command::Fdma;
    if (name == "compare") return Command::Compare;
    if (name == "reproduce") return Command::Reproduce;
    throw std::invalid_argument("unknown command: " + name);
}

OutputFormat parse_format(const std::string& name) {
    if (name == "table") return OutputFormat::Table;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    if (name == "svg") return OutputFormat::Svg;
    throw std::invalid_argument("unknown format: " + name);
}

namespace {

std::string theta_policy_string(const JobSpec& spec) {
    switch (spec.theta_policy) {
        case ThetaPolicy::Zero: return "zero";
        case ThetaPolicy::Metric: return "metric";
        case ThetaPolicy::Numerical: return "numerical";
        case ThetaPolicy::Fixed: return format_number(spec.theta_fixed_deg);
    }
    return "?";
}

void apply_theta_string(JobSpec& spec, const std::string& s) {
    if (s == "zero") {
        spec.theta_policy = ThetaPolicy::Zero;
    } else if (s == "metric") {
        spec.theta_policy = ThetaPolicy::Metric;
    } else if (s == "numerical") {
        spec.theta_policy = ThetaPolicy::Numerical;
    } else {
        spec.theta_policy = ThetaPolicy::Fixed;
        spec.theta_fixed_deg = parse_double(s, "theta (degrees)");
    }
}

}  // namespace

nlohmann::json jobspec_to_json(const JobSpec& spec) {
    nlohmann::json j;
    j["command"] = to_string(spec.command);
    j["p1"] = spec.instance.p1;
    j["p2"] = spec.instance.p2;
    j["h12"] = gain_to_string(spec.instance.h12);
    j["h21"] = gain_to_string(spec.instance.h21);
    if (spec.instance.bandwidth_w) {
        j["bandwidth"] = *spec.instance.bandwidth_w;
    } else {
        j["sigma1-sq"] = spec.instance.sigma1_sq;
        j["sigma2-sq"] = spec.instance.sigma2_sq;
    }
    j["constellation"] = spec.constellation1 == spec.constellation2
                             ? spec.constellation1
                             : spec.constellation1 + "," + spec.constellation2;
    if (spec.no_normalize) j["no-normalize"] = true;
    j["theta"] = theta_policy_string(spec);
    j["grid-step"] = spec.grid_step_deg;
    if (spec.fold_symmetry != 1) j["fold-symmetry"] = spec.fold_symmetry;
    if (spec.nodes) j["nodes"] = *spec.nodes;
    if (spec.samples) j["samples"] = static_cast<std::int64_t>(*spec.samples);
    j["seed"] = spec.seed;
    if (spec.command == Command::Fdma || spec.command == Command::Compare) {
        j["alphabet"] = spec.fdma_alphabet == Alphabet::Gaussian ? "gaussian" : "finite";
        j["alpha-step"] = spec.alpha_step;
        if (spec.verify_alpha) j["verify"] = true;
    }
    j["format"] = to_string(spec.format);
    if (!spec.out_path.empty()) j["out"] = spec.out_path;
    if (!spec.experiment.empty()) j["experiment"] = spec.experiment;
    return j;
}

void jobspec_apply_json(JobSpec& spec, const nlohmann::json& config) {
    if (!config.is_object()) throw std::invalid_argument("config: expected a JSON object");
    for (const auto& [key, value] : config.items()) {
        if (key == "command") {
            spec.command = parse_command(value.get<std::string>());
        } else if (key == "p1") {
            spec.instance.p1 = value.get<double>();
        } else if (key == "p2") {
            spec.instance.p2 = value.get<double>();
        } else if (key == "h12") {
            spec.instance.h12 = value.is_string() ? parse_gain(value.get<std::string>())
                                                  : Complex{value.get<double>(), 0.0};
        } else if (key == "h21") {
            spec.instance.h21 = value.is_string() ? parse_gain(value.get<std::string>())
                                                  : Complex{value.get<double>(), 0.0};
        } else if (key == "sigma1-sq") {
            spec.instance.sigma1_sq = value.get<double>();
        } else if (key == "sigma2-sq") {
            spec.instance.sigma2_sq = value.get<double>();
        } else if (key == "bandwidth") {
            const double w = value.get<double>();
            spec.instance.bandwidth_w = w;
            spec.instance.sigma1_sq = w;
            spec.instance.sigma2_sq = w;
        } else if (key == "constellation") {
            const std::string s = value.get<std::string>();
            const auto comma = s.find(',');
            spec.constellation1 = comma == std::string::npos ? s : trim(s.substr(0, comma));
            spec.constellation2 = comma == std::string::npos ? s : trim(s.substr(comma + 1));
        } else if (key == "no-normalize") {
            spec.no_normalize = value.get<bool>();
        } else if (key == "theta") {
            apply_theta_string(spec, value.is_string() ? value.get<std::string>()
                                                       : format_number(value.get<double>()));
        } else if (key == "grid-step") {
            spec.grid_step_deg = value.get<double>();
        } else if (key == "fold-symmetry") {
            spec.fold_symmetry = value.get<int>();
        } else if (key == "nodes") {
            spec.nodes = value.get<int>();
        } else if (key == "samples") {
            spec.samples = value.get<long>();
        } else if (key == "seed") {
            spec.seed = value.get<std::uint64_t>();
        } else if (key == "alphabet") {
            const std::string s = value.get<std::string>();
            if (s == "gaussian") spec.fdma_alphabet = Alphabet::Gaussian;
            else if (s == "finite") spec.fdma_alphabet = Alphabet::Finite;
            else throw std::invalid_argument("config: unknown alphabet '" + s + "'");
        } else if (key == "alpha-step") {
            spec.alpha_step = value.get<double>();
        } else if (key == "verify") {
            spec.verify_alpha = value.get<bool>();
        } else if (key == "format") {
            spec.format = parse_format(value.get<std::string>());
        } else if (key == "out") {
            spec.out_path = value.get<std::string>();
        } else if (key == "experiment") {
            spec.experiment = value.get<std::string>();
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
}

namespace {

// ---------------------------------------------------------------------------
// run_job machinery
// ---------------------------------------------------------------------------

struct Inputs {
    Constellation c1;
    Constellation c2;
    NoiseRule rule;
};

Inputs resolve_inputs(const JobSpec& spec) {
    Constellation c1 = resolve_constellation(spec.constellation1, spec.no_normalize);
    Constellation c2 = resolve_constellation(spec.constellation2, spec.no_normalize);
    const NoiseRule rule = spec.resolve_rule(c1.size(), c2.size());
    return {std::move(c1), std::move(c2), rule};
}

AngleGrid make_angle_grid(const JobSpec& spec) {
    const double step = deg2rad(spec.grid_step_deg);
    return spec.fold_symmetry > 1 ? AngleGrid::folded(spec.fold_symmetry, step) : AngleGrid::full(step);
}

struct ThetaResolution {
    double rad = 0.0;
    std::string description = "zero";
};

ThetaResolution resolve_theta(const JobSpec& spec, const Inputs& in) {
    switch (spec.theta_policy) {
        case ThetaPolicy::Zero:
            return {0.0, "zero"};
        case ThetaPolicy::Fixed:
            return {deg2rad(spec.theta_fixed_deg), format_number(spec.theta_fixed_deg) + " deg (fixed)"};
        case ThetaPolicy::Metric: {
            const RotationResult r = metric_theta_opt(in.c1, in.c2, spec.instance, make_angle_grid(spec));
            return {r.angle, "metric (" + format_number(rad2deg(r.angle)) + " deg)"};
        }
        case ThetaPolicy::Numerical: {
            const NoiseRule rule = (in.rule.method == NoiseMethod::GaussHermite)
                                       ? in.rule
                                       : NoiseRule::gauss_hermite(24);
            const RotationResult r =
                numerical_theta_opt(in.c1, in.c2, spec.instance, make_angle_grid(spec), rule);
            return {r.angle, "numerical (" + format_number(rad2deg(r.angle)) + " deg)"};
        }
    }
    return {};
}

std::string provenance(const JobSpec& spec) { return jobspec_to_json(spec).dump(); }

std::string method_name(const NoiseRule& rule) {
    return rule.method == NoiseMethod::GaussHermite ? "GaussHermite" : "MonteCarlo";
}

nlohmann::json region_to_json(const RateRegion& r) {
    return {{"r1_max", r.r1_max}, {"r2_max", r.r2_max}, {"sum_max", r.sum_max},
            {"units", to_string(r.units)}, {"kind", to_string(r.kind)}};
}

nlohmann::json regime_to_json(const RegimeReport& rep) {
    return {{"regime", to_string(rep.regime)}, {"snr1", rep.snr1}, {"snr2", rep.snr2},
            {"inr1", rep.inr1}, {"inr2", rep.inr2}};
}

void emit_json(const JobSpec& spec, nlohmann::json result) {
    nlohmann::json doc;
    doc["jobspec"] = jobspec_to_json(spec);
    doc["result"] = std::move(result);
    write_artifact(spec.out_path, doc.dump(2) + "\n");
}

std::string table_header(const JobSpec& spec) {
    return "# jobspec: " + provenance(spec) + "\n";
}

const char* kVeryStrongWarning =
    "warning: very strong interference regime; the capacity expressions shown are "
    "stated for strong interference and are reused here without that guarantee\n";

// --- classify ---------------------------------------------------------------

void run_classify(const JobSpec& spec) {
    const RegimeReport rep = classify_regime(spec.instance);
    if (spec.format == OutputFormat::Table) {
        std::ostringstream out;
        out << table_header(spec);
        out << "regime: " << to_string(rep.regime) << "\n";
        out << "SNR1: " << format_number(rep.snr1) << "\nSNR2: " << format_number(rep.snr2)
            << "\nINR1: " << format_number(rep.inr1) << "\nINR2: " << format_number(rep.inr2) << "\n";
        if (rep.regime == Regime::VeryStrong) out << kVeryStrongWarning;
        write_artifact(spec.out_path, out.str());
    } else if (spec.format == OutputFormat::Json) {
        emit_json(spec, regime_to_json(rep));
    } else {
        throw std::invalid_argument("classify supports table or json output");
    }
}

// --- region ------------------------------------------------------------------

void run_region(const JobSpec& spec) {
    const Inputs in = resolve_inputs(spec);
    const ThetaResolution theta = resolve_theta(spec, in);
    const RegimeReport rep = classify_regime(spec.instance);
    const RateRegion cc = cc_region(in.c1, in.c2, spec.instance, theta.rad, in.rule);
    const RateRegion gauss = gaussian_region(spec.instance);

    if (spec.format == OutputFormat::Table) {
        std::ostringstream out;
        out << table_header(spec);
        out << "regime: " << to_string(rep.regime) << "\n";
        if (rep.regime == Regime::VeryStrong) out << kVeryStrongWarning;
        out << "theta: " << theta.description << "\n";
        for (const auto& [name, r] : {std::pair<const char*, const RateRegion&>{"cc", cc},
                                      {"gaussian", gauss}}) {
            out << name << ": R1<=" << format_number(r.r1_max) << " R2<=" << format_number(r.r2_max)
                << " R1+R2<=" << format_number(r.sum_max) << " [" << to_string(r.units) << ", "
                << to_string(r.kind) << "]\n";
        }
        write_artifact(spec.out_path, out.str());
    } else if (spec.format == OutputFormat::Json) {
        nlohmann::json res;
        res["regime"] = regime_to_json(rep);
        res["theta_rad"] = theta.rad;
        res["theta"] = theta.description;
        res["cc_region"] = region_to_json(cc);
        res["gaussian_region"] = region_to_json(gauss);
        if (rep.regime == Regime::VeryStrong) res["warning"] = "very strong interference";
        emit_json(spec, std::move(res));
    } else if (spec.format == OutputFormat::Svg) {
        const std::vector<LabeledRegion> regions = {{cc, "CC region (" + theta.description + ")"},
                                                    {gauss, "Gaussian region"}};
        write_artifact(spec.out_path, render_region_svg(regions, {}, provenance(spec)));
    } else {
        throw std::invalid_argument("region supports table, json or svg output");
    }
}

// --- rotate-opt ---------------------------------------------------------------

void run_rotate_opt(const JobSpec& spec) {
    const Inputs in = resolve_inputs(spec);
    if (spec.theta_policy != ThetaPolicy::Metric && spec.theta_policy != ThetaPolicy::Numerical) {
        throw std::invalid_argument("rotate-opt requires --theta metric or --theta numerical");
    }
    const AngleGrid grid = make_angle_grid(spec);
    const NoiseRule gh_rule =
        (in.rule.method == NoiseMethod::GaussHermite) ? in.rule : NoiseRule::gauss_hermite(24);
    const RotationResult result =
        (spec.theta_policy == ThetaPolicy::Metric)
            ? metric_theta_opt(in.c1, in.c2, spec.instance, grid)
            : numerical_theta_opt(in.c1, in.c2, spec.instance, grid, gh_rule);
    const double baseline = cc_sum_bound(in.c1, in.c2, spec.instance, 0.0, gh_rule);

    const std::string method = result.method == RotationMethod::Metric ? "Metric" : "Numerical";
    if (spec.format == OutputFormat::Table) {
        std::ostringstream out;
        out << table_header(spec);
        out << "method: " << method << "\n";
        out << "theta_opt_deg: " << format_number(rad2deg(result.angle)) << "\n";
        out << "sum_bound_at_theta_opt: " << format_number(result.achieved_sum_bound) << " bits\n";
        out << "sum_bound_at_zero: " << format_number(baseline) << " bits\n";
        out << "improvement: " << format_number(result.achieved_sum_bound - baseline) << " bits\n";
        write_artifact(spec.out_path, out.str());
    } else if (spec.format == OutputFormat::Csv) {
        std::vector<CsvRow> rows;
        rows.reserve(result.objective_trace.size());
        for (const auto& [t, v] : result.objective_trace) {
            CsvRow row;
            row.param = rad2deg(t);
            row.objective = v;
            row.method = method;
            rows.push_back(row);
        }
        write_artifact(spec.out_path, render_csv(rows, provenance(spec)));
    } else if (spec.format == OutputFormat::Json) {
        nlohmann::json res;
        res["method"] = method;
        res["theta_opt_deg"] = rad2deg(result.angle);
        res["theta_opt_rad"] = result.angle;
        res["grid_step_rad"] = result.grid_step;
        res["sum_bound_at_theta_opt"] = result.achieved_sum_bound;
        res["sum_bound_at_zero"] = baseline;
        res["improvement"] = result.achieved_sum_bound - baseline;
        nlohmann::json trace = nlohmann::json::array();
        for (const auto& [t, v] : result.objective_trace) trace.push_back({t, v});
        res["objective_trace"] = std::move(trace);
        emit_json(spec, std::move(res));
    } else {
        throw std::invalid_argument("rotate-opt supports table, csv or json output");
    }
}

// --- fdma ---------------------------------------------------------------------

AlphaGrid make_alpha_grid(const JobSpec& spec) {
    AlphaGrid g;
    g.step = spec.alpha_step;
    return g;
}

// Grid argmax of the sweep sum, for --verify.
double numerical_alpha_argmax(const FdmaCurve& curve) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < curve.alphas.size(); ++i) {
        if (curve.r1(i) + curve.r2(i) > curve.r1(best) + curve.r2(best)) best = i;
    }
    return curve.alphas(best);
}

void run_fdma(const JobSpec& spec) {
    const Inputs in = resolve_inputs(spec);
    const FdmaCurve curve = fdma_curve(in.c1, in.c2, spec.instance, spec.fdma_alphabet,
                                       make_alpha_grid(spec), in.rule);
    const std::string method =
        spec.fdma_alphabet == Alphabet::Gaussian ? "closed-form" : method_name(in.rule);

    if (spec.format == OutputFormat::Table) {
        std::ostringstream out;
        out << table_header(spec);
        out << "alphabet: " << (spec.fdma_alphabet == Alphabet::Gaussian ? "gaussian" : "finite") << "\n";
        out << "alpha_opt: " << format_number(curve.alpha_opt)
            << (curve.closed_form_alpha ? " (closed form P1/(P1+P2))" : " (numerical argmax)") << "\n";
        out << "sum_at_alpha_opt: " << format_number(curve.sum_at_opt) << " bits/s\n";
        if (spec.verify_alpha) {
            const double num = numerical_alpha_argmax(curve);
            out << "alpha_opt_numerical: " << format_number(num) << "\n";
            out << "alpha_opt_delta: " << format_number(std::abs(num - curve.alpha_opt)) << "\n";
        }
        write_artifact(spec.out_path, out.str());
    } else if (spec.format == OutputFormat::Csv) {
        std::vector<CsvRow> rows;
        rows.reserve(curve.alphas.size());
        for (Eigen::Index i = 0; i < curve.alphas.size(); ++i) {
            CsvRow row;
            row.param = curve.alphas(i);
            row.objective = curve.r1(i) + curve.r2(i);
            row.r1 = curve.r1(i);
            row.r2 = curve.r2(i);
            row.method = method;
            rows.push_back(row);
        }
        write_artifact(spec.out_path, render_csv(rows, provenance(spec)));
    } else if (spec.format == OutputFormat::Json) {
        nlohmann::json res;
        res["alphabet"] = spec.fdma_alphabet == Alphabet::Gaussian ? "gaussian" : "finite";
        res["alpha_opt"] = curve.alpha_opt;
        res["closed_form_alpha"] = curve.closed_form_alpha;
        res["sum_at_alpha_opt"] = curve.sum_at_opt;
        res["alphas"] = std::vector<double>(curve.alphas.data(), curve.alphas.data() + curve.alphas.size());
        res["r1"] = std::vector<double>(curve.r1.data(), curve.r1.data() + curve.r1.size());
        res["r2"] = std::vector<double>(curve.r2.data(), curve.r2.data() + curve.r2.size());
        if (spec.verify_alpha) res["alpha_opt_numerical"] = numerical_alpha_argmax(curve);
        emit_json(spec, std::move(res));
    } else if (spec.format == OutputFormat::Svg) {
        const std::string label =
            spec.fdma_alphabet == Alphabet::Gaussian ? "FDMA (Gaussian)" : "FDMA (finite)";
        write_artifact(spec.out_path, render_region_svg({}, {{curve, label}}, provenance(spec)));
    } else {
        throw std::invalid_argument("fdma supports table, csv, json or svg output");
    }
}

// --- compare ------------------------------------------------------------------

struct Comparison {
    RegimeReport regime;
    ThetaResolution theta;
    RateRegion cc;
    RateRegion gauss;
    FdmaCurve fdma_finite;
    FdmaCurve fdma_gauss;
    double gap = 0.0;       // simultaneous decoding minus FDMA, bits/s
    bool gauss_touch = false;
};

Comparison build_comparison(const JobSpec& spec, const Inputs& in) {
    Comparison cmp{classify_regime(spec.instance), resolve_theta(spec, in), {}, {}, {}, {}};
    cmp.cc = cc_region(in.c1, in.c2, spec.instance, cmp.theta.rad, in.rule);
    cmp.gauss = gaussian_region(spec.instance);
    const AlphaGrid grid = make_alpha_grid(spec);
    cmp.fdma_finite = fdma_curve(in.c1, in.c2, spec.instance, Alphabet::Finite, grid, in.rule);
    cmp.fdma_gauss = fdma_curve(std::nullopt, std::nullopt, spec.instance, Alphabet::Gaussian, grid,
                                std::nullopt);
    cmp.gap = fdma_vs_simdec_gap(in.c1, in.c2, spec.instance, cmp.theta.rad, in.rule);
    cmp.gauss_touch = touch_check(spec.instance);
    return cmp;
}

std::string comparison_table(const JobSpec& spec, const Comparison& cmp) {
    std::ostringstream out;
    out << table_header(spec);
    out << "regime: " << to_string(cmp.regime.regime) << "\n";
    if (cmp.regime.regime == Regime::VeryStrong) out << kVeryStrongWarning;
    out << "theta: " << cmp.theta.description << "\n";
    out << "cc_sum_max: " << format_number(cmp.cc.sum_max) << " " << to_string(cmp.cc.units) << " ["
        << to_string(cmp.cc.kind) << "]\n";
    out << "gaussian_sum_max: " << format_number(cmp.gauss.sum_max) << " " << to_string(cmp.gauss.units)
        << " [" << to_string(cmp.gauss.kind) << "]\n";
    out << "fdma_finite_sum_at_alpha_opt: " << format_number(cmp.fdma_finite.sum_at_opt) << " bits/s\n";
    out << "fdma_gaussian_sum_at_alpha_opt: " << format_number(cmp.fdma_gauss.sum_at_opt) << " bits/s\n";
    out << "alpha_opt: " << format_number(cmp.fdma_finite.alpha_opt) << "\n";
    out << "simdec_minus_fdma: " << format_number(cmp.gap) << " bits/s\n";
    out << "gaussian_fdma_touches_capacity: " << (cmp.gauss_touch ? "true" : "false") << "\n";
    return out.str();
}

nlohmann::json comparison_json(const Comparison& cmp) {
    nlohmann::json res;
    res["regime"] = regime_to_json(cmp.regime);
    res["theta"] = cmp.theta.description;
    res["theta_rad"] = cmp.theta.rad;
    res["cc_region"] = region_to_json(cmp.cc);
    res["gaussian_region"] = region_to_json(cmp.gauss);
    res["fdma_finite"] = {{"alpha_opt", cmp.fdma_finite.alpha_opt},
                          {"sum_at_alpha_opt", cmp.fdma_finite.sum_at_opt}};
    res["fdma_gaussian"] = {{"alpha_opt", cmp.fdma_gauss.alpha_opt},
                            {"sum_at_alpha_opt", cmp.fdma_gauss.sum_at_opt}};
    res["simdec_minus_fdma"] = cmp.gap;
    res["gaussian_fdma_touches_capacity"] = cmp.gauss_touch;
    return res;
}

std::string comparison_svg(const JobSpec& spec, const Comparison& cmp) {
    const std::vector<LabeledRegion> regions = {{cmp.cc, "CC region (" + cmp.theta.description + ")"},
                                                {cmp.gauss, "Gaussian region"}};
    const std::vector<LabeledCurve> curves = {{cmp.fdma_finite, "FDMA (finite)"},
                                              {cmp.fdma_gauss, "FDMA (Gaussian)"}};
    return render_region_svg(regions, curves, provenance(spec));
}

void run_compare(const JobSpec& spec) {
    if (!spec.instance.bandwidth_w) {
        throw std::invalid_argument("compare requires --bandwidth (FDMA needs a bandwidth)");
    }
    const Inputs in = resolve_inputs(spec);
    const Comparison cmp = build_comparison(spec, in);
    if (spec.format == OutputFormat::Table) {
        write_artifact(spec.out_path, comparison_table(spec, cmp));
    } else if (spec.format == OutputFormat::Json) {
        emit_json(spec, comparison_json(cmp));
    } else if (spec.format == OutputFormat::Svg) {
        write_artifact(spec.out_path, comparison_svg(spec, cmp));
    } else if (spec.format == OutputFormat::Csv) {
        std::vector<CsvRow> rows;
        for (Eigen::Index i = 0; i < cmp.fdma_finite.alphas.size(); ++i) {
            CsvRow row;
            row.param = cmp.fdma_finite.alphas(i);
            row.objective = cmp.fdma_finite.r1(i) + cmp.fdma_finite.r2(i);
            row.r1 = cmp.fdma_finite.r1(i);
            row.r2 = cmp.fdma_finite.r2(i);
            row.method = method_name(in.rule);
            rows.push_back(row);
        }
        write_artifact(spec.out_path, render_csv(rows, provenance(spec)));
    } else {
        throw std::invalid_argument("compare supports table, csv, json or svg output");
    }
}

// --- reproduce ------------------------------------------------------------------

struct SumCapacityRow {
    double p1, p2;
    Complex h12, h21;
    double theta_metric_deg, theta_numerical_deg;
    double sum_unrotated, sum_metric, sum_numerical;
};

// QPSK pair, sigma1^2 = sigma2^2 = 1.
const std::array<SumCapacityRow, 4>& table1_rows() {
    static const std::array<SumCapacityRow, 4> rows = {{
        {3.5, 6.0, polar_deg(1.0, 10), polar_deg(1.0, 20), 39.53, 41.25, 3.006, 3.107, 3.108},
        {3.5, 6.0, polar_deg(1.2, 10), polar_deg(1.1, 20), 46.41, 44.69, 2.994, 3.22, 3.221},
        {5.0, 5.0, polar_deg(1.2, 15), polar_deg(1.5, 5), 73.91, 72.19, 3.178, 3.319, 3.32},
        {8.0, 6.0, polar_deg(1.8, 40), polar_deg(1.3, 70), 49.85, 51.57, 3.459, 3.577, 3.58},
    }};
    return rows;
}

void run_reproduce_table1(const JobSpec& spec) {
    const Constellation qpsk = make_standard(Family::Psk, 4);
    const NoiseRule rule = NoiseRule::gauss_hermite(24);
    const AngleGrid grid = AngleGrid::full(deg2rad(0.25));

    std::ostringstream out;
    nlohmann::json jrows = nlohmann::json::array();
    out << table_header(spec);
    out << "preset table1: QPSK pair, sigma^2 = 1; tolerances: theta_metric +/-0.5 deg, "
           "theta_numerical +/-1.0 deg, sum bounds +/-0.02 bits\n";
    out << "P1,P2,h12,h21 | theta_metric (exp) | theta_numerical (exp) | sum@0 (exp) | sum@metric (exp) "
           "| sum@numerical (exp)\n";
    for (const SumCapacityRow& row : table1_rows()) {
        const ChannelInstance inst =
            ChannelInstance::baseband(row.p1, row.p2, row.h12, row.h21, 1.0, 1.0);
        const RotationResult m = metric_theta_opt(qpsk, qpsk, inst, grid);
        const RotationResult nopt = numerical_theta_opt(qpsk, qpsk, inst, grid, rule);
        const double sum0 = cc_sum_bound(qpsk, qpsk, inst, 0.0, rule);

        out << format_number(row.p1) << "," << format_number(row.p2) << "," << gain_to_string(row.h12)
            << "," << gain_to_string(row.h21) << " | " << format_number(rad2deg(m.angle)) << " ("
            << format_number(row.theta_metric_deg) << ") | " << format_number(rad2deg(nopt.angle)) << " ("
            << format_number(row.theta_numerical_deg) << ") | " << format_number(sum0) << " ("
            << format_number(row.sum_unrotated) << ") | " << format_number(m.achieved_sum_bound) << " ("
            << format_number(row.sum_metric) << ") | " << format_number(nopt.achieved_sum_bound) << " ("
            << format_number(row.sum_numerical) << ")\n";

        jrows.push_back({{"p1", row.p1},
                         {"p2", row.p2},
                         {"h12", gain_to_string(row.h12)},
                         {"h21", gain_to_string(row.h21)},
                         {"theta_metric_deg", rad2deg(m.angle)},
                         {"theta_metric_expected_deg", row.theta_metric_deg},
                         {"theta_numerical_deg", rad2deg(nopt.angle)},
                         {"theta_numerical_expected_deg", row.theta_numerical_deg},
                         {"sum_unrotated", sum0},
                         {"sum_unrotated_expected", row.sum_unrotated},
                         {"sum_metric", m.achieved_sum_bound},
                         {"sum_metric_expected", row.sum_metric},
                         {"sum_numerical", nopt.achieved_sum_bound},
                         {"sum_numerical_expected", row.sum_numerical}});
    }
    if (spec.format == OutputFormat::Json) {
        emit_json(spec, {{"preset", "table1"},
                         {"tolerances",
                          {{"theta_metric_deg", 0.5}, {"theta_numerical_deg", 1.0}, {"sums_bits", 0.02}}},
                         {"rows", std::move(jrows)}});
    } else {
        write_artifact(spec.out_path, out.str());
    }
}

void run_reproduce_fig2(const JobSpec& spec) {
    const Constellation qpsk = make_standard(Family::Psk, 4);
    const ChannelInstance inst = ChannelInstance::baseband(9.92, 10.3, polar_deg(1.03, -112),
                                                           polar_deg(1.07, -44), 1.0, 1.0);
    const NoiseRule rule = NoiseRule::gauss_hermite(24);
    const AngleGrid grid = AngleGrid::full(deg2rad(0.25));
    const RotationResult m = metric_theta_opt(qpsk, qpsk, inst, grid);
    const RotationResult n = numerical_theta_opt(qpsk, qpsk, inst, grid, rule);

    if (spec.format == OutputFormat::Svg) {
        const RateRegion unrot = cc_region(qpsk, qpsk, inst, 0.0, rule);
        const RateRegion rot_m = cc_region(qpsk, qpsk, inst, m.angle, rule);
        const RateRegion rot_n = cc_region(qpsk, qpsk, inst, n.angle, rule);
        const std::vector<LabeledRegion> regions = {{unrot, "CC region, unrotated"},
                                                    {rot_m, "CC region, metric rotation"},
                                                    {rot_n, "CC region, numerical rotation"}};
        write_artifact(spec.out_path, render_region_svg(regions, {}, provenance(spec)));
        return;
    }
    if (spec.format == OutputFormat::Json) {
        emit_json(spec, {{"preset", "fig2"},
                         {"theta_metric_deg", rad2deg(m.angle)},
                         {"theta_metric_expected_deg", 77.3493},
                         {"theta_numerical_deg", rad2deg(n.angle)},
                         {"theta_numerical_expected_deg", 79.0682},
                         {"tolerances", {{"theta_metric_deg", 0.5}, {"theta_numerical_deg", 1.0}}}});
        return;
    }
    std::ostringstream out;
    out << table_header(spec);
    out << "preset fig2: QPSK pair, P1=9.92, P2=10.3, sigma^2=1; tolerances: metric +/-0.5 deg, "
           "numerical +/-1.0 deg\n";
    out << "theta_metric_deg: " << format_number(rad2deg(m.angle)) << " (expected 77.3493)\n";
    out << "theta_numerical_deg: " << format_number(rad2deg(n.angle)) << " (expected 79.0682)\n";
    write_artifact(spec.out_path, out.str());
}

struct FigPreset {
    const char* name;
    double p1, p2, w;
    Complex h12, h21;
    const char* expectation;
};

const FigPreset* find_fig_preset(const std::string& name) {
    static const std::array<FigPreset, 6> presets = {{
        {"fig7a", 7.0, 12.0, 6.0, polar_deg(1.0, 10), polar_deg(1.0, 20),
         "strong interference, |h12|=|h21|=1: finite-alphabet FDMA stays strictly inside the CC "
         "region; gap > 0"},
        {"fig7b", 7.0, 12.0, 2.0, polar_deg(1.0, 10), polar_deg(1.0, 20),
         "as fig7a with W=2: the W-normalized gap grows as W shrinks"},
        {"fig8", 7.0, 12.0, 2.0, polar_deg(1.0, 10), polar_deg(0.9, 20),
         "weak interference, gains near 1: simultaneous decoding beats FDMA (gap > 0)"},
        {"fig9", 7.0, 12.0, 6.0, polar_deg(1.0, 10), polar_deg(0.7, 20),
         "weak interference, |h21|=0.7: FDMA beats simultaneous decoding (gap < 0)"},
        {"fig10", 7.0, 12.0, 2.0, polar_deg(1.0, 10), polar_deg(1.1, 20),
         "strong interference, |h12|=1 < |h21|: Gaussian FDMA touches capacity, finite does not"},
        {"fig11", 7.0, 12.0, 2.0, polar_deg(1.2, 10), polar_deg(1.2, 20),
         "strong interference, both gains > 1: neither FDMA curve touches"},
    }};
    for (const FigPreset& p : presets) {
        if (name == p.name) return &p;
    }
    return nullptr;
}

void run_reproduce_fig(const JobSpec& spec, const FigPreset& preset) {
    JobSpec job = spec;
    job.instance = ChannelInstance::with_bandwidth(preset.p1, preset.p2, preset.h12, preset.h21, preset.w);
    job.constellation1 = job.constellation2 = "psk4";
    job.theta_policy = ThetaPolicy::Metric;
    const Inputs in = resolve_inputs(job);
    const Comparison cmp = build_comparison(job, in);

    if (spec.format == OutputFormat::Svg) {
        write_artifact(spec.out_path, comparison_svg(job, cmp));
    } else if (spec.format == OutputFormat::Json) {
        nlohmann::json res = comparison_json(cmp);
        res["preset"] = preset.name;
        res["expectation"] = preset.expectation;
        res["normalized_gap"] = cmp.gap / preset.w;
        emit_json(spec, std::move(res));
    } else if (spec.format == OutputFormat::Table) {
        std::ostringstream out;
        out << "# preset " << preset.name << ": " << preset.expectation << "\n";
        out << comparison_table(job, cmp);
        out << "normalized_gap: " << format_number(cmp.gap / preset.w) << " bits/s/Hz\n";
        write_artifact(spec.out_path, out.str());
    } else {
        throw std::invalid_argument("reproduce supports table, json or svg output");
    }
}

void run_reproduce(const JobSpec& spec) {
    if (spec.experiment == "table1") {
        run_reproduce_table1(spec);
    } else if (spec.experiment == "fig2") {
        run_reproduce_fig2(spec);
    } else if (const FigPreset* p = find_fig_preset(spec.experiment)) {
        run_reproduce_fig(spec, *p);
    } else {
        throw std::invalid_argument(
            "unknown experiment '" + spec.experiment +
            "' (expected table1, fig2, fig7a, fig7b, fig8, fig9, fig10 or fig11)");
    }
}

}  // namespace

int run_job(const JobSpec& spec) {
    switch (spec.command) {
        case Command::Classify: run_classify(spec); break;
        case Command::Region: run_region(spec); break;
        case Command::RotateOpt: run_rotate_opt(spec); break;
        case Command::Fdma: run_fdma(spec); break;
        case Command::Compare: run_compare(spec); break;
        case Command::Reproduce: run_reproduce(spec); break;
    }
    return 0;
}

}  // namespace cclab
