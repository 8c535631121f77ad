#pragma once

#include <algorithm>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "qcosym/core.hpp"
#include "qcosym/csv.hpp"

namespace qcosym::io {

// Self-contained polyline plot: shared x-axis, one colored line per
// series, min/max tick labels. Convenience output only, not a data
// surface.
inline void write_line_plot(const std::string& path, const std::string& title,
                            const std::vector<double>& x,
                            const std::vector<std::pair<std::string, std::vector<double>>>& series,
                            int width = 800, int height = 480) {
    if (x.size() < 2) throw std::invalid_argument("write_line_plot: need at least two samples");
    for (const auto& s : series)
        if (s.second.size() != x.size())
            throw std::invalid_argument("write_line_plot: series/x length mismatch");

    double xmin = x.front(), xmax = x.front();
    for (double v : x) {
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    double ymin = series.empty() ? 0.0 : series.front().second.front();
    double ymax = ymin;
    for (const auto& s : series)
        for (double v : s.second) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    if (xmax - xmin <= 0.0) xmax = xmin + 1.0;
    if (ymax - ymin <= 0.0) {
        ymin -= 1.0;
        ymax += 1.0;
    } else {
        const double pad = 0.05 * (ymax - ymin);
        ymin -= pad;
        ymax += pad;
    }

    const double ml = 70, mr = 20, mt = 40, mb = 45;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto px = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double v) { return mt + (ymax - v) / (ymax - ymin) * ph; };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    constexpr int palette_size = 6;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#333\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\""
        << " text-anchor=\"middle\">" << title << "</text>\n";
    auto tick = [&](double xpix, double ypix, const std::string& label, const char* anchor) {
        out << "<text x=\"" << xpix << "\" y=\"" << ypix
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"" << anchor << "\">" << label
            << "</text>\n";
    };
    tick(ml, height - mb + 16, format_double(xmin, 6), "middle");
    tick(width - mr, height - mb + 16, format_double(xmax, 6), "middle");
    tick(ml - 6, height - mb + 4, format_double(ymin, 6), "end");
    tick(ml - 6, mt + 4, format_double(ymax, 6), "end");

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = palette[s % palette_size];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t k = 0; k < x.size(); ++k)
            out << format_double(px(x[k]), 8) << "," << format_double(py(series[s].second[k]), 8)
                << (k + 1 < x.size() ? " " : "");
        out << "\"/>\n";
        out << "<text x=\"" << width - mr - 8 << "\" y=\"" << mt + 16 + 16 * static_cast<double>(s)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\" fill=\"" << color
            << "\">" << series[s].first << "</text>\n";
    }
    out << "</svg>\n";
    out.flush();
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace qcosym::io
