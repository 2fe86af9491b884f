#pragma once

#include <limits>
#include <string>
#include <vector>

#include "cclab/fdma.hpp"
#include "cclab/regions.hpp"

namespace cclab {

/// 9-significant-digit formatting shared by all text artifacts.
std::string format_number(double v);

struct LabeledRegion {
    RateRegion region;
    std::string label;
};

struct LabeledCurve {
    FdmaCurve curve;
    std::string label;
};

/// One sweep row of the CSV schema
/// (param, objective, R1, R2, method, std_error); R1/R2 may be NaN for
/// sweeps that do not produce per-point rate pairs and render as empty cells.
struct CsvRow {
    double param = 0.0;
    double objective = 0.0;
    double r1 = std::numeric_limits<double>::quiet_NaN();
    double r2 = std::numeric_limits<double>::quiet_NaN();
    std::string method;
    double std_error = 0.0;
};

/// Header comments carry the full resolved job description (provenance);
/// identical inputs yield identical bytes.
std::string render_csv(const std::vector<CsvRow>& rows, const std::string& provenance_json);

/// Single SVG with the region boundaries and FDMA rate curves, one legend
/// entry per input in order. All inputs must share rate units (curves are
/// always bits/s). Deterministic byte output; provenance goes into <desc>.
std::string render_region_svg(const std::vector<LabeledRegion>& regions,
                              const std::vector<LabeledCurve>& curves, const std::string& provenance_json);

/// Writes content to path ("" or "-" means stdout). Throws io_error.
void write_artifact(const std::string& path, const std::string& content);

}  // namespace cclab
