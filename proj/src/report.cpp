#include "cclab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace cclab {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#e377c2"};
constexpr int kPaletteSize = 8;

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

// Tick spacing from the 1-2-5 ladder giving at most ~7 ticks.
double nice_step(double span) {
    if (!(span > 0.0)) return 1.0;
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) return m * mag;
    }
    return 10.0 * mag;
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "";
    return fmt("%.9g", v);
}

std::string render_csv(const std::vector<CsvRow>& rows, const std::string& provenance_json) {
    std::ostringstream out;
    out << "# cclab sweep\n";
    if (!provenance_json.empty()) out << "# jobspec: " << provenance_json << "\n";
    out << "param,objective,R1,R2,method,std_error\n";
    for (const CsvRow& r : rows) {
        out << format_number(r.param) << ',' << format_number(r.objective) << ',' << format_number(r.r1)
            << ',' << format_number(r.r2) << ',' << r.method << ',' << format_number(r.std_error) << '\n';
    }
    return out.str();
}

std::string render_region_svg(const std::vector<LabeledRegion>& regions,
                              const std::vector<LabeledCurve>& curves, const std::string& provenance_json) {
    if (!regions.empty()) {
        const RateUnits u = regions.front().region.units;
        for (const auto& r : regions) {
            if (r.region.units != u) throw std::invalid_argument("render_region_svg: mixed rate units");
        }
        if (!curves.empty() && u != RateUnits::BitsPerSecond) {
            throw std::invalid_argument("render_region_svg: FDMA curves are bits/s but regions are not");
        }
    }

    double xmax = 0.0, ymax = 0.0;
    for (const auto& r : regions) {
        xmax = std::max(xmax, std::min(r.region.r1_max, r.region.sum_max));
        ymax = std::max(ymax, std::min(r.region.r2_max, r.region.sum_max));
    }
    for (const auto& c : curves) {
        if (c.curve.r1.size() > 0) {
            xmax = std::max(xmax, c.curve.r1.maxCoeff());
            ymax = std::max(ymax, c.curve.r2.maxCoeff());
        }
    }
    if (!(xmax > 0.0)) xmax = 1.0;
    if (!(ymax > 0.0)) ymax = 1.0;
    xmax *= 1.05;
    ymax *= 1.05;

    const double px0 = 70.0, px1 = 690.0, py0 = 480.0, py1 = 20.0;
    const auto X = [&](double x) { return px0 + x / xmax * (px1 - px0); };
    const auto Y = [&](double y) { return py0 + y / ymax * (py1 - py0); };

    const std::string units_label =
        (!regions.empty() && regions.front().region.units == RateUnits::BitsPerChannelUse)
            ? "bits/channel-use"
            : "bits/s";

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"540\" "
         "viewBox=\"0 0 720 540\">\n";
    s << "<desc>" << xml_escape(provenance_json) << "</desc>\n";
    s << "<rect width=\"720\" height=\"540\" fill=\"white\"/>\n";

    // axes and ticks
    s << "<g stroke=\"black\" stroke-width=\"1\">\n";
    s << "<line x1=\"" << fmt("%.2f", px0) << "\" y1=\"" << fmt("%.2f", py0) << "\" x2=\"" << fmt("%.2f", px1)
      << "\" y2=\"" << fmt("%.2f", py0) << "\"/>\n";
    s << "<line x1=\"" << fmt("%.2f", px0) << "\" y1=\"" << fmt("%.2f", py0) << "\" x2=\"" << fmt("%.2f", px0)
      << "\" y2=\"" << fmt("%.2f", py1) << "\"/>\n";
    s << "</g>\n";
    s << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
    const double dx = nice_step(xmax);
    for (double t = 0.0; t <= xmax + 1e-12 * xmax; t += dx) {
        s << "<line stroke=\"black\" x1=\"" << fmt("%.2f", X(t)) << "\" y1=\"" << fmt("%.2f", py0)
          << "\" x2=\"" << fmt("%.2f", X(t)) << "\" y2=\"" << fmt("%.2f", py0 + 5) << "\"/>\n";
        s << "<text text-anchor=\"middle\" x=\"" << fmt("%.2f", X(t)) << "\" y=\"" << fmt("%.2f", py0 + 18)
          << "\">" << fmt("%.6g", t) << "</text>\n";
    }
    const double dy = nice_step(ymax);
    for (double t = 0.0; t <= ymax + 1e-12 * ymax; t += dy) {
        s << "<line stroke=\"black\" x1=\"" << fmt("%.2f", px0 - 5) << "\" y1=\"" << fmt("%.2f", Y(t))
          << "\" x2=\"" << fmt("%.2f", px0) << "\" y2=\"" << fmt("%.2f", Y(t)) << "\"/>\n";
        s << "<text text-anchor=\"end\" x=\"" << fmt("%.2f", px0 - 8) << "\" y=\"" << fmt("%.2f", Y(t) + 4)
          << "\">" << fmt("%.6g", t) << "</text>\n";
    }
    s << "<text text-anchor=\"middle\" x=\"" << fmt("%.2f", 0.5 * (px0 + px1)) << "\" y=\"520\">R1 ["
      << units_label << "]</text>\n";
    s << "<text text-anchor=\"middle\" transform=\"rotate(-90 16 250)\" x=\"16\" y=\"250\">R2 ["
      << units_label << "]</text>\n";
    s << "</g>\n";

    // one legend entry per input, regions first
    int color = 0;
    std::ostringstream legend;
    int legend_row = 0;
    const auto legend_entry = [&](const std::string& label, const char* col, bool dashed) {
        const double ly = py1 + 16.0 + 18.0 * legend_row++;
        legend << "<line x1=\"" << fmt("%.2f", px1 - 180) << "\" y1=\"" << fmt("%.2f", ly) << "\" x2=\""
               << fmt("%.2f", px1 - 150) << "\" y2=\"" << fmt("%.2f", ly) << "\" stroke=\"" << col
               << "\" stroke-width=\"2\"" << (dashed ? " stroke-dasharray=\"6,3\"" : "") << "/>\n";
        legend << "<text font-family=\"sans-serif\" font-size=\"12\" x=\"" << fmt("%.2f", px1 - 144)
               << "\" y=\"" << fmt("%.2f", ly + 4) << "\">" << xml_escape(label) << "</text>\n";
    };

    for (const auto& r : regions) {
        const char* col = kPalette[color % kPaletteSize];
        ++color;
        const Eigen::MatrixX2d pts = region_boundary_points(r.region, 129);
        s << "<path fill=\"none\" stroke=\"" << col << "\" stroke-width=\"2\" d=\"M " << fmt("%.2f", X(0.0))
          << ' ' << fmt("%.2f", Y(0.0));
        for (Eigen::Index i = 0; i < pts.rows(); ++i) {
            s << " L " << fmt("%.2f", X(pts(i, 0))) << ' ' << fmt("%.2f", Y(pts(i, 1)));
        }
        s << " Z\"/>\n";
        legend_entry(r.label, col, false);
    }
    for (const auto& c : curves) {
        const char* col = kPalette[color % kPaletteSize];
        ++color;
        s << "<path fill=\"none\" stroke=\"" << col << "\" stroke-width=\"2\" stroke-dasharray=\"6,3\" d=\"";
        for (Eigen::Index i = 0; i < c.curve.alphas.size(); ++i) {
            s << (i == 0 ? "M " : " L ") << fmt("%.2f", X(c.curve.r1(i))) << ' '
              << fmt("%.2f", Y(c.curve.r2(i)));
        }
        s << "\"/>\n";
        legend_entry(c.label, col, true);
    }
    s << legend.str();
    s << "</svg>\n";
    return s.str();
}

void write_artifact(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open output file: " + path);
    out << content;
    if (!out) throw io_error("failed writing output file: " + path);
}

}  // namespace cclab
