// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#include "fracsim/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

namespace fracsim {

PlotAxis plot_axis_from_string(const std::string& s) {
    if (s == "snr") return PlotAxis::snr;
    if (s == "iafo") return PlotAxis::iafo;
    if (s == "nf") return PlotAxis::nf;
    throw std::invalid_argument("plot axis must be one of snr|iafo|nf");
}

namespace {

constexpr int kWidth = 760;
constexpr int kHeight = 520;
constexpr int kMarginL = 70;
constexpr int kMarginR = 170;
constexpr int kMarginT = 40;
constexpr int kMarginB = 55;
constexpr double kBerFloor = 1e-7;  // plotted value for zero-error points

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

double x_coord(const BerRecord& r, PlotAxis ax) {
    switch (ax) {
        case PlotAxis::snr: return r.snr_db;
        case PlotAxis::iafo: return r.iafo_norm;
        case PlotAxis::nf: return r.nf_half;
    }
    return 0.0;
}

std::string series_key(const BerRecord& r, PlotAxis ax) {
    char buf[96];
    switch (ax) {
        case PlotAxis::snr:
            std::snprintf(buf, sizeof(buf), "%s iafo=%.3g", to_string(r.scheme).c_str(),
                          r.iafo_norm);
            break;
        case PlotAxis::iafo:
            std::snprintf(buf, sizeof(buf), "%s snr=%.3g", to_string(r.scheme).c_str(), r.snr_db);
            break;
        case PlotAxis::nf:
            std::snprintf(buf, sizeof(buf), "%s iafo=%.3g snr=%.3g", to_string(r.scheme).c_str(),
                          r.iafo_norm, r.snr_db);
            break;
    }
    return buf;
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void render_ber_svg(std::ostream& os, const std::vector<BerRecord>& records, PlotAxis x_axis,
                    const std::string& title) {
    if (records.empty()) throw std::invalid_argument("render_ber_svg: no records");

    std::map<std::string, std::vector<const BerRecord*>> series;
    double x_min = 1e300, x_max = -1e300, y_min_log = 0.0, y_max_log = -300.0;
    for (const auto& r : records) {
        series[series_key(r, x_axis)].push_back(&r);
        const double x = x_coord(r, x_axis);
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        const double b = std::max(r.ber > 0.0 ? r.ber : kBerFloor, kBerFloor);
        y_min_log = std::min(y_min_log, std::floor(std::log10(b)));
        y_max_log = std::max(y_max_log, std::ceil(std::log10(std::min(1.0, b * 2.0))));
    }
    if (x_max <= x_min) x_max = x_min + 1.0;
    y_max_log = std::min(y_max_log, 0.0);
    if (y_min_log >= y_max_log) y_min_log = y_max_log - 1.0;

    const double plot_w = kWidth - kMarginL - kMarginR;
    const double plot_h = kHeight - kMarginT - kMarginB;
    auto px = [&](double x) { return kMarginL + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double ber) {
        const double lg = std::log10(std::max(ber, kBerFloor));
        return kMarginT + (y_max_log - lg) / (y_max_log - y_min_log) * plot_h;
    };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty())
        os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
           << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

    // grid and y ticks, one decade apart
    for (int d = static_cast<int>(y_max_log); d >= static_cast<int>(y_min_log); --d) {
        const double y = py(std::pow(10.0, d));
        os << "<line x1=\"" << kMarginL << "\" y1=\"" << fmt(y) << "\" x2=\""
           << kWidth - kMarginR << "\" y2=\"" << fmt(y)
           << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << kMarginL - 8 << "\" y=\"" << fmt(y + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << d
           << "</text>\n";
    }
    // x ticks
    const int n_ticks = 6;
    for (int i = 0; i <= n_ticks; ++i) {
        const double x = x_min + (x_max - x_min) * i / n_ticks;
        os << "<line x1=\"" << fmt(px(x)) << "\" y1=\"" << kMarginT + plot_h << "\" x2=\""
           << fmt(px(x)) << "\" y2=\"" << kMarginT + plot_h + 5
           << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << fmt(px(x)) << "\" y=\"" << kMarginT + plot_h + 20
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(x)
           << "</text>\n";
    }
    const char* x_label = x_axis == PlotAxis::snr    ? "Eb/N0 (dB)"
                          : x_axis == PlotAxis::iafo ? "IAFO (subcarrier spacings)"
                                                     : "half-subblock size N_F/2";
    os << "<text x=\"" << kMarginL + plot_w / 2 << "\" y=\"" << kHeight - 12
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
       << "</text>\n";
    os << "<text x=\"18\" y=\"" << kMarginT + plot_h / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
       << "transform=\"rotate(-90 18 " << kMarginT + plot_h / 2 << ")\">BER</text>\n";
    os << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\"" << fmt(plot_w)
       << "\" height=\"" << fmt(plot_h)
       << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    int color_idx = 0;
    int legend_y = kMarginT + 10;
    for (auto& [key, pts] : series) {
        std::vector<const BerRecord*> sorted = pts;
        std::sort(sorted.begin(), sorted.end(), [&](const BerRecord* a, const BerRecord* b) {
            return x_coord(*a, x_axis) < x_coord(*b, x_axis);
        });
        const char* color = kPalette[color_idx % 10];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto* r : sorted) os << fmt(px(x_coord(*r, x_axis))) << "," << fmt(py(r->ber)) << " ";
        os << "\"/>\n";
        for (const auto* r : sorted) {
            const double x = px(x_coord(*r, x_axis));
            os << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(py(r->ber)) << "\" r=\"2.5\" fill=\""
               << color << "\"/>\n";
            if (r->ci95 > 0.0) {
                const double y_hi = py(r->ber + r->ci95);
                const double y_lo = py(std::max(r->ber - r->ci95, kBerFloor));
                os << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(y_hi) << "\" x2=\"" << fmt(x)
                   << "\" y2=\"" << fmt(y_lo) << "\" stroke=\"" << color
                   << "\" stroke-width=\"1\"/>\n";
            }
        }
        os << "<line x1=\"" << kWidth - kMarginR + 10 << "\" y1=\"" << legend_y - 4 << "\" x2=\""
           << kWidth - kMarginR + 28 << "\" y2=\"" << legend_y - 4 << "\" stroke=\"" << color
           << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << kWidth - kMarginR + 33 << "\" y=\"" << legend_y
           << "\" font-family=\"sans-serif\" font-size=\"11\">" << key << "</text>\n";
        legend_y += 16;
        ++color_idx;
    }
    os << "</svg>\n";
}

}  // namespace fracsim
