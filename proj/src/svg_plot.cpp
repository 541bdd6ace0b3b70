#include "paretolab/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace paretolab {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr std::array<const char*, 6> kColors{"#1f77b4", "#d62728", "#2ca02c",
                                             "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double v, int digits = 4) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void emit_plot(const std::vector<PlotSeries>& series, PlotStyle style,
               const std::filesystem::path& path, const std::string& title) {
    if (series.empty()) throw std::invalid_argument("emit_plot: no series");
    const bool logs = style == PlotStyle::loglog;
    auto tx = [&](double v) { return logs ? std::log10(v) : v; };

    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    for (const auto& s : series) {
        if (s.xs.empty() || s.xs.size() != s.ys.size()) {
            throw std::invalid_argument("emit_plot: series '" + s.label + "' is empty or ragged");
        }
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (logs && (s.xs[i] <= 0.0 || s.ys[i] <= 0.0)) continue;
            xmin = std::min(xmin, tx(s.xs[i]));
            xmax = std::max(xmax, tx(s.xs[i]));
            ymin = std::min(ymin, tx(s.ys[i]));
            ymax = std::max(ymax, tx(s.ys[i]));
        }
    }
    if (!std::isfinite(xmin)) throw std::invalid_argument("emit_plot: no plottable points");
    if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
    if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }
    const double padx = 0.05 * (xmax - xmin);
    const double pady = 0.05 * (ymax - ymin);
    xmin -= padx; xmax += padx; ymin -= pady; ymax += pady;

    auto px = [&](double v) { return kLeft + (v - xmin) / (xmax - xmin) * (kWidth - kLeft - kRight); };
    auto py = [&](double v) { return kHeight - kBottom - (v - ymin) / (ymax - ymin) * (kHeight - kTop - kBottom); };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_plot: cannot write " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) {
        out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
            << escape(title) << "</text>\n";
    }
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight
        << "\" height=\"" << kHeight - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double xv = xmin + (xmax - xmin) * t / 4.0;
        const double yv = ymin + (ymax - ymin) * t / 4.0;
        const std::string xl = logs ? num(std::pow(10.0, xv), 3) : num(xv, 3);
        const std::string yl = logs ? num(std::pow(10.0, yv), 3) : num(yv, 3);
        out << "<text x=\"" << px(xv) << "\" y=\"" << kHeight - kBottom + 18
            << "\" text-anchor=\"middle\">" << xl << "</text>\n";
        out << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << yl
            << "</text>\n";
    }
    if (logs) {
        out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 8
            << "\" text-anchor=\"middle\">log-log axes</text>\n";
    }

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kColors[k % kColors.size()];
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (logs && (s.xs[i] <= 0.0 || s.ys[i] <= 0.0)) continue;
            lx.push_back(tx(s.xs[i]));
            ly.push_back(tx(s.ys[i]));
            out << "<circle cx=\"" << px(lx.back()) << "\" cy=\"" << py(ly.back())
                << "\" r=\"4\" fill=\"" << color << "\"/>\n";
        }
        std::string legend = escape(s.label);
        if (lx.size() >= 2) {
            double mx = 0.0, my = 0.0;
            for (std::size_t i = 0; i < lx.size(); ++i) { mx += lx[i]; my += ly[i]; }
            mx /= static_cast<double>(lx.size());
            my /= static_cast<double>(ly.size());
            double sxx = 0.0, sxy = 0.0;
            for (std::size_t i = 0; i < lx.size(); ++i) {
                sxx += (lx[i] - mx) * (lx[i] - mx);
                sxy += (lx[i] - mx) * (ly[i] - my);
            }
            if (sxx > 0.0) {
                const double slope = sxy / sxx;
                const double x0 = *std::min_element(lx.begin(), lx.end());
                const double x1 = *std::max_element(lx.begin(), lx.end());
                out << "<line x1=\"" << px(x0) << "\" y1=\"" << py(my + slope * (x0 - mx)) << "\" x2=\""
                    << px(x1) << "\" y2=\"" << py(my + slope * (x1 - mx)) << "\" stroke=\"" << color
                    << "\" stroke-dasharray=\"5,3\"/>\n";
                legend += " (slope " + num(slope, 3) + ")";
            }
        }
        const double ly0 = kTop + 16.0 + 18.0 * static_cast<double>(k);
        out << "<circle cx=\"" << kLeft + 14 << "\" cy=\"" << ly0 - 4 << "\" r=\"4\" fill=\"" << color
            << "\"/>\n";
        out << "<text class=\"legend\" x=\"" << kLeft + 24 << "\" y=\"" << ly0 << "\">" << legend
            << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("emit_plot: write failed for " + path.string());
}

}  // namespace paretolab
