// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#include "fracsim/transmux.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace fracsim {

cplx transmux_integral(const PrototypeFilter& p, int l, int m, double delta_f_norm) {
    const int n_sym = p.samples_per_symbol;
    const int len = p.length();
    const int shift = m * n_sym / 2;
    // pulses overlap only for |m| < 2*lambda
    const int lo = std::max(0, shift);
    const int hi = std::min(len, len + shift);
    if (lo >= hi) return {0.0, 0.0};

    const double c = p.center();
    const double wl = 2.0 * std::numbers::pi * static_cast<double>(l) / n_sym;
    const double wd = 2.0 * std::numbers::pi * delta_f_norm / n_sym;
    cplx acc = 0.0;
    for (int v = lo; v < hi; ++v) {
        const double ang = wl * (static_cast<double>(v) - c) + wd * static_cast<double>(v);
        acc += p.taps[v - shift] * p.taps[v] * cplx(std::cos(ang), std::sin(ang));
    }
    return acc;
}

TransmuxResponse transmux_response(const PrototypeFilter& p, int l, int m, int n,
                                   double delta_f_norm) {
    const double ang = std::numbers::pi * n * (static_cast<double>(l) + delta_f_norm);
    TransmuxResponse r;
    r.value = cplx(std::cos(ang), std::sin(ang)) * transmux_integral(p, l, m, delta_f_norm);
    r.l = l;
    r.m = m;
    r.n = n;
    r.delta_f_norm = delta_f_norm;
    return r;
}

TransmuxTable::TransmuxTable(const PrototypeFilter& p, double delta_f_norm, int l_max)
    : l_max_(l_max), m_max_(2 * p.overlap_factor - 1), delta_f_norm_(delta_f_norm) {
    values_.resize(static_cast<size_t>(2 * l_max_ + 1) * (2 * m_max_ + 1));
    for (int l = -l_max_; l <= l_max_; ++l)
        for (int m = -m_max_; m <= m_max_; ++m)
            values_[static_cast<size_t>(l + l_max_) * (2 * m_max_ + 1) + (m + m_max_)] =
                transmux_integral(p, l, m, delta_f_norm);
}

cplx TransmuxTable::integral(int l, int m) const {
    if (std::abs(m) > m_max_) return {0.0, 0.0};
    if (std::abs(l) > l_max_)
        throw std::out_of_range("TransmuxTable: |l| beyond cached range");
    return values_[static_cast<size_t>(l + l_max_) * (2 * m_max_ + 1) + (m + m_max_)];
}

cplx TransmuxTable::value(int l, int m, int n) const {
    const double ang = std::numbers::pi * n * (static_cast<double>(l) + delta_f_norm_);
    return cplx(std::cos(ang), std::sin(ang)) * integral(l, m);
}

std::pair<int, int> localization_bounds(const PrototypeFilter& p, double threshold) {
    if (threshold <= 0.0 || threshold >= 1.0)
        throw std::invalid_argument("localization_bounds: threshold must be in (0, 1)");
    const int lw = 8;
    const int mw = 4 * p.overlap_factor;
    std::vector<double> sq(static_cast<size_t>(2 * lw + 1) * (2 * mw + 1));
    for (int l = -lw; l <= lw; ++l)
        for (int m = -mw; m <= mw; ++m)
            sq[static_cast<size_t>(l + lw) * (2 * mw + 1) + (m + mw)] =
                std::norm(transmux_integral(p, l, m, 0.0));

    auto rms_outside = [&](int bound, bool freq_axis) {
        double s = 0.0;
        for (int l = -lw; l <= lw; ++l)
            for (int m = -mw; m <= mw; ++m) {
                const int coord = freq_axis ? l : m;
                if (std::abs(coord) > bound)
                    s += sq[static_cast<size_t>(l + lw) * (2 * mw + 1) + (m + mw)];
            }
        return std::sqrt(s);
    };

    int loc_l = lw;
    for (int b = 0; b <= lw; ++b)
        if (rms_outside(b, true) < threshold) {
            loc_l = b;
            break;
        }
    int loc_m = mw;
    for (int b = 0; b <= mw; ++b)
        if (rms_outside(b, false) < threshold) {
            loc_m = b;
            break;
        }
    return {loc_l, loc_m};
}

void write_transmux_csv(std::ostream& os, const PrototypeFilter& p, double delta_f_norm,
                        int l_max) {
    os << "l,m,delta_f_norm,re,im,abs\n";
    const int m_max = 2 * p.overlap_factor - 1;
    char buf[160];
    for (int l = -l_max; l <= l_max; ++l)
        for (int m = -m_max; m <= m_max; ++m) {
            const cplx v = transmux_integral(p, l, m, delta_f_norm);
            std::snprintf(buf, sizeof(buf), "%d,%d,%.6g,%.12e,%.12e,%.12e\n", l, m, delta_f_norm,
                          v.real(), v.imag(), std::abs(v));
            os << buf;
        }
}

}  // namespace fracsim
