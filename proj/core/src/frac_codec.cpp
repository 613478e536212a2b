// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#include "fracsim/frac_codec.hpp"

#include <cmath>

namespace fracsim {

namespace {
const double kInvSqrt5 = 1.0 / std::sqrt(5.0);
constexpr double kErasureFloor = 1e-12;
}  // namespace

std::vector<double> pam_map(std::span<const uint8_t> bits, int levels) {
    if (levels == 2) {
        std::vector<double> out(bits.size());
        for (size_t i = 0; i < bits.size(); ++i) out[i] = bits[i] ? -1.0 : 1.0;
        return out;
    }
    if (levels == 4) {
        if (bits.size() % 2 != 0)
            throw std::invalid_argument("pam_map: bit count must be divisible by 2 for 4-PAM");
        std::vector<double> out(bits.size() / 2);
        for (size_t i = 0; i < out.size(); ++i) {
            const int b1 = bits[2 * i], b0 = bits[2 * i + 1];
            // Gray order 00,01,11,10 -> +3,+1,-1,-3
            double v;
            if (!b1) v = b0 ? 1.0 : 3.0;
            else v = b0 ? -1.0 : -3.0;
            out[i] = v * kInvSqrt5;
        }
        return out;
    }
    throw std::invalid_argument("pam_map: levels must be 2 or 4");
}

std::vector<uint8_t> pam_demap(std::span<const double> values, int levels) {
    if (levels == 2) {
        std::vector<uint8_t> out(values.size());
        for (size_t i = 0; i < values.size(); ++i) out[i] = values[i] < 0.0 ? 1 : 0;
        return out;
    }
    if (levels == 4) {
        std::vector<uint8_t> out(2 * values.size());
        for (size_t i = 0; i < values.size(); ++i) {
            const double v = values[i] / kInvSqrt5;
            uint8_t b1, b0;
            if (v >= 2.0) { b1 = 0; b0 = 0; }
            else if (v >= 0.0) { b1 = 0; b0 = 1; }
            else if (v >= -2.0) { b1 = 1; b0 = 1; }
            else { b1 = 1; b0 = 0; }
            out[2 * i] = b1;
            out[2 * i + 1] = b0;
        }
        return out;
    }
    throw std::invalid_argument("pam_demap: levels must be 2 or 4");
}

std::pair<OqamGrid, OqamGrid> frac_encode(const PayloadGrid& payload, const FracConfig& cfg) {
    const int rows = cfg.payload_rows();
    if (payload.x.rows() != rows || payload.y.rows() != rows ||
        payload.x.cols() != cfg.m_half || payload.y.cols() != cfg.m_half)
        throw std::invalid_argument("frac_encode: payload dimensions do not match config");

    OqamGrid a{RealGrid(cfg.n, cfg.m_half), cfg.eps_hz};
    OqamGrid b{RealGrid(cfg.n, cfg.m_half), cfg.eps_hz};
    const int nf = cfg.nf;
    const int per_half = cfg.payload_per_half();
    for (int m = 0; m < cfg.m_half; ++m) {
        for (int q = 0; q < cfg.num_subblocks(); ++q) {
            for (int idx = 0; idx < per_half; ++idx) {
                const int k = cfg.guard + 1 + idx;       // local payload index
                const int lo = q * nf + k;               // 1-based global
                const int up = (q + 1) * nf - k + 1 + cfg.guard;
                const double x = payload.x(q * per_half + idx, m);
                const double y = payload.y(q * per_half + idx, m);
                a.symbols(lo - 1, m) = x;
                a.symbols(up - 1, m) = -y;
                b.symbols(lo - 1, m) = y;
                b.symbols(up - 1, m) = x;
            }
        }
    }
    return {std::move(a), std::move(b)};
}

DecisionGrids combine_decide(const CplxGrid& r_a, const CplxGrid& r_b,
                             std::span<const cplx> h_a, std::span<const cplx> h_b,
                             const FracConfig& cfg) {
    if (r_a.rows() != cfg.n || !r_a.same_shape(r_b))
        throw std::invalid_argument("combine_decide: received matrices do not match config");
    if (static_cast<int>(h_a.size()) != cfg.num_subblocks() || h_a.size() != h_b.size())
        throw std::invalid_argument("combine_decide: channel arrays must have one entry per subblock");

    const int m_half = r_a.cols();
    const int nf = cfg.nf;
    const int per_half = cfg.payload_per_half();
    DecisionGrids d{RealGrid(cfg.payload_rows(), m_half), RealGrid(cfg.payload_rows(), m_half)};
    for (int q = 0; q < cfg.num_subblocks(); ++q) {
        const cplx ha = h_a[q];
        const cplx hb = h_b[q];
        const bool erased = std::norm(ha) + std::norm(hb) < kErasureFloor;
        for (int n = 0; n < m_half; ++n) {
            for (int idx = 0; idx < per_half; ++idx) {
                const int k = cfg.guard + 1 + idx;
                const int lo = q * nf + k;
                const int up = (q + 1) * nf - k + 1 + cfg.guard;
                const int row = q * per_half + idx;
                if (erased) {
                    d.x(row, n) = 0.0;
                    d.y(row, n) = 0.0;
                    continue;
                }
                d.x(row, n) =
                    (std::conj(ha) * r_a(lo - 1, n) + hb * std::conj(r_b(up - 1, n))).real();
                d.y(row, n) =
                    (std::conj(hb) * r_b(lo - 1, n) - ha * std::conj(r_a(up - 1, n))).real();
            }
        }
    }
    return d;
}

Fraction bandwidth_efficiency(const FracConfig& cfg) {
    return {cfg.nf - 2 * cfg.guard, cfg.nf};
}

}  // namespace fracsim
