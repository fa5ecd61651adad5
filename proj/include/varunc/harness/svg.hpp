#pragma once

// Minimal self-contained SVG emission for curves and bar charts.

#include "varunc/format.hpp"

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace varunc::harness::svg {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct Bar {
    std::string label;
    double value = 0.0;
};

namespace detail {

inline const char* color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
    return palette[i % 6];
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

constexpr double kWidth = 480.0;
constexpr double kHeight = 320.0;
constexpr double kMargin = 48.0;

inline void header(std::ostringstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << escape(title) << "</text>\n";
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin / 2 << "\" y2=\""
        << kHeight - kMargin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin / 2 << "\" x2=\"" << kMargin << "\" y2=\""
        << kHeight - kMargin << "\" stroke=\"black\"/>\n";
}

inline void axis_labels(std::ostringstream& out, double xlo, double xhi, double ylo, double yhi) {
    auto txt = [&](double x, double y, const std::string& s, const char* anchor) {
        out << "<text x=\"" << format_fixed(x, 1) << "\" y=\"" << format_fixed(y, 1) << "\" text-anchor=\"" << anchor
            << "\" font-family=\"sans-serif\" font-size=\"10\">" << escape(s) << "</text>\n";
    };
    txt(kMargin, kHeight - kMargin + 14, format_fixed(xlo, 2), "middle");
    txt(kWidth - kMargin / 2, kHeight - kMargin + 14, format_fixed(xhi, 2), "middle");
    txt(kMargin - 4, kHeight - kMargin, format_fixed(ylo, 3), "end");
    txt(kMargin - 4, kMargin / 2 + 4, format_fixed(yhi, 3), "end");
}

}  // namespace detail

inline std::string line_plot(const std::string& title, const std::vector<Series>& series) {
    double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
    bool first = true;
    for (const Series& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (first) {
                xlo = xhi = s.x[i];
                ylo = yhi = s.y[i];
                first = false;
            }
            xlo = std::min(xlo, s.x[i]);
            xhi = std::max(xhi, s.x[i]);
            ylo = std::min(ylo, s.y[i]);
            yhi = std::max(yhi, s.y[i]);
        }
    }
    if (xhi == xlo) xhi = xlo + 1.0;
    if (yhi == ylo) yhi = ylo + 1.0;
    const double pw = detail::kWidth - 1.5 * detail::kMargin;
    const double ph = detail::kHeight - 1.5 * detail::kMargin;
    std::ostringstream out;
    detail::header(out, title);
    detail::axis_labels(out, xlo, xhi, ylo, yhi);
    for (std::size_t s = 0; s < series.size(); ++s) {
        out << "<polyline fill=\"none\" stroke=\"" << detail::color(s) << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            const double px = detail::kMargin + (series[s].x[i] - xlo) / (xhi - xlo) * pw;
            const double py = detail::kHeight - detail::kMargin - (series[s].y[i] - ylo) / (yhi - ylo) * ph;
            out << (i ? " " : "") << format_fixed(px, 2) << ',' << format_fixed(py, 2);
        }
        out << "\"/>\n";
        out << "<text x=\"" << detail::kWidth - detail::kMargin << "\" y=\"" << 40 + 14 * s << "\" text-anchor=\"end\" "
            << "font-family=\"sans-serif\" font-size=\"11\" fill=\"" << detail::color(s) << "\">"
            << detail::escape(series[s].name) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

inline std::string bar_chart(const std::string& title, const std::vector<Bar>& bars, double ymax = 0.0) {
    for (const Bar& b : bars) ymax = std::max(ymax, b.value);
    if (ymax <= 0.0) ymax = 1.0;
    const double pw = detail::kWidth - 1.5 * detail::kMargin;
    const double ph = detail::kHeight - 1.5 * detail::kMargin;
    const double slot = bars.empty() ? pw : pw / static_cast<double>(bars.size());
    std::ostringstream out;
    detail::header(out, title);
    detail::axis_labels(out, 0.0, static_cast<double>(bars.size()), 0.0, ymax);
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const double h = std::max(0.0, bars[i].value) / ymax * ph;
        const double x = detail::kMargin + slot * static_cast<double>(i) + slot * 0.1;
        out << "<rect x=\"" << format_fixed(x, 2) << "\" y=\"" << format_fixed(detail::kHeight - detail::kMargin - h, 2)
            << "\" width=\"" << format_fixed(slot * 0.8, 2) << "\" height=\"" << format_fixed(h, 2) << "\" fill=\""
            << detail::color(i / 3) << "\"/>\n";
        if (!bars[i].label.empty()) {
            out << "<text x=\"" << format_fixed(x + slot * 0.4, 2) << "\" y=\"" << detail::kHeight - detail::kMargin + 26
                << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"9\">" << detail::escape(bars[i].label)
                << "</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace varunc::harness::svg
