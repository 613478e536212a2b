// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#include "fracsim/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "fracsim/harness.hpp"

namespace fracsim {

IciAnalyzer::IciAnalyzer(const FracConfig& config, const PrototypeFilter& p,
                         const PhaseGridPair& grids, double delta_f_norm, bool full_tables)
    : cfg_(config),
      grids_(grids),
      delta_f_norm_(delta_f_norm),
      f_zero_(p, 0.0, full_tables ? config.n / 2 : 8),
      f_plus_(p, delta_f_norm, full_tables ? config.n / 2 : 8),
      f_minus_(p, -delta_f_norm, full_tables ? config.n / 2 : 8) {
    cfg_.validate();
    if (grids.zeta_a.rows() != cfg_.n)
        throw std::invalid_argument("IciAnalyzer: phase grids do not match config");
}

cplx IciAnalyzer::interference_coeff(Antenna src, Antenna dst, int l, int m, int k, int n) const {
    const int kl = k + l;
    if (k < 1 || k > cfg_.n || kl < 1 || kl > cfg_.n)
        throw std::out_of_range("interference_coeff: subcarrier index outside the lattice");
    const int nm = n + m;
    if (n < 0 || n >= cfg_.m_half || nm < 0 || nm >= cfg_.m_half)
        throw std::out_of_range("interference_coeff: half-symbol index outside the lattice");

    const CplxGrid& zs = (src == Antenna::a) ? grids_.zeta_a : grids_.zeta_b;
    const CplxGrid& zd = (dst == Antenna::a) ? grids_.zeta_a : grids_.zeta_b;
    const TransmuxTable* tab = &f_zero_;
    if (src != dst) tab = (dst == Antenna::a) ? &f_plus_ : &f_minus_;
    return zs(kl - 1, nm) * std::conj(zd(k - 1, n)) * tab->value(l, m, n);
}

// Sums a-symbol and b-symbol contributions around `center` into out_a/out_b,
// seen through the dst phases and the per-source transmux tables. Window is
// (l_win, m_win) in lattice offsets; neighbors wrap circularly, and every
// wrap flips the kernel sign because the pulse center sits on a half-sample.
void IciAnalyzer::sum_window(const OqamGrid& a_grid, const OqamGrid& b_grid, int center, int n,
                             const CplxGrid& zeta_dst, const TransmuxTable& tab_a,
                             const TransmuxTable& tab_b, int l_lo, int l_hi, int m_win,
                             cplx& out_a, cplx& out_b) const {
    const cplx zdc = std::conj(zeta_dst(center - 1, n));
    for (int l = l_lo; l <= l_hi; ++l) {
        int g = center + l;
        double sign = 1.0;
        while (g < 1) { g += cfg_.n; sign = -sign; }
        while (g > cfg_.n) { g -= cfg_.n; sign = -sign; }
        for (int m = -m_win; m <= m_win; ++m) {
            const int nm = n + m;
            if (nm < 0 || nm >= cfg_.m_half) continue;
            const double sa = a_grid.symbols(g - 1, nm);
            const double sb = b_grid.symbols(g - 1, nm);
            if (sa != 0.0)
                out_a += sign * sa * grids_.zeta_a(g - 1, nm) * zdc * tab_a.value(l, m, n);
            if (sb != 0.0)
                out_b += sign * sb * grids_.zeta_b(g - 1, nm) * zdc * tab_b.value(l, m, n);
        }
    }
}

UvwzDecomposition IciAnalyzer::decompose_at(const OqamGrid& a_grid, const OqamGrid& b_grid,
                                            int k_global, int partner_global, int n) const {
    if (a_grid.symbols.rows() != cfg_.n || !a_grid.symbols.same_shape(b_grid.symbols))
        throw std::invalid_argument("decompose_at: symbol grids do not match config");
    if (k_global < 1 || k_global > cfg_.n || partner_global < 1 || partner_global > cfg_.n)
        throw std::out_of_range("decompose_at: subcarrier index outside the lattice");
    if (n < 0 || n >= cfg_.m_half)
        throw std::out_of_range("decompose_at: half-symbol index outside the burst");

    UvwzDecomposition d;
    d.k = k_global;
    d.n = n;
    d.q = (k_global - 1) / cfg_.nf;

    // r_a(k) = H_a U + H_b V;  r_b(partner) = H_a W + H_b Z
    cplx u = 0.0, v = 0.0, w = 0.0, z = 0.0;
    sum_window(a_grid, b_grid, k_global, n, grids_.zeta_a, f_zero_, f_plus_, -kWindowL, kWindowL,
               kWindowM, u, v);
    sum_window(a_grid, b_grid, partner_global, n, grids_.zeta_b, f_minus_, f_zero_, -kWindowL,
               kWindowL, kWindowM, w, z);
    d.u = u;
    d.v = v;
    d.w = w;
    d.z = z;
    d.residual_wv = std::abs(std::conj(w) + v);
    return d;
}

UvwzDecomposition IciAnalyzer::decompose(const OqamGrid& a_grid, const OqamGrid& b_grid,
                                         int k_local, int n, int q) const {
    if (q < 0 || q >= cfg_.num_subblocks())
        throw std::out_of_range("decompose: subblock index out of range");
    if (k_local < cfg_.guard + 1 || k_local > cfg_.nf / 2)
        throw std::out_of_range("decompose: k outside the payload range");
    const int k_global = q * cfg_.nf + k_local;
    const int partner = (q + 1) * cfg_.nf - k_local + 1 + cfg_.guard;
    return decompose_at(a_grid, b_grid, k_global, partner, n);
}

cplx IciAnalyzer::reconstruct(const OqamGrid& a_grid, const OqamGrid& b_grid, Antenna branch,
                              int k_global, int n, cplx h_a, cplx h_b) const {
    if (f_zero_.l_max() < cfg_.n / 2)
        throw std::logic_error("reconstruct: analyzer built without full_tables");
    const CplxGrid& zeta_dst = (branch == Antenna::a) ? grids_.zeta_a : grids_.zeta_b;
    const TransmuxTable& tab_a = (branch == Antenna::a) ? f_zero_ : f_minus_;
    const TransmuxTable& tab_b = (branch == Antenna::a) ? f_plus_ : f_zero_;

    // one offset per residue class: -N/2 .. N/2-1 covers every subcarrier
    // exactly once after wrapping
    cplx from_a = 0.0, from_b = 0.0;
    sum_window(a_grid, b_grid, k_global, n, zeta_dst, tab_a, tab_b, -cfg_.n / 2, cfg_.n / 2 - 1,
               2 * cfg_.overlap - 1, from_a, from_b);
    return h_a * from_a + h_b * from_b;
}

std::vector<ResidualRow> self_cancellation_report(const IciAnalyzer& analyzer,
                                                  const OqamGrid& a_grid, const OqamGrid& b_grid,
                                                  const std::vector<int>& instants) {
    const FracConfig& cfg = analyzer.config();
    std::vector<ResidualRow> rows;
    for (int q = 0; q < cfg.num_subblocks(); ++q) {
        for (int k = cfg.guard + 1; k <= cfg.nf / 2; ++k) {
            for (int n : instants) {
                const UvwzDecomposition d = analyzer.decompose(a_grid, b_grid, k, n, q);
                ResidualRow row;
                row.k = d.k;
                row.n = n;
                row.delta_f_norm = analyzer.delta_f_norm();
                row.abs_v = std::abs(d.v);
                row.abs_w = std::abs(d.w);
                row.residual = d.residual_wv / std::max(std::abs(d.v), 1e-12);
                rows.push_back(row);
            }
        }
    }
    return rows;
}

void write_residual_csv(std::ostream& os, const std::vector<ResidualRow>& rows) {
    os << "k,n,delta_f_norm,abs_V,abs_W,residual\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.6g,%.9e,%.9e,%.9e\n", r.k, r.n, r.delta_f_norm,
                      r.abs_v, r.abs_w, r.residual);
        os << buf;
    }
}

double measure_sir(Scheme scheme, const TapDelayProfile& profile, double delta_f_norm,
                   const FracConfig& config, int trials, uint64_t seed) {
    if (trials < 100) throw std::invalid_argument("measure_sir: need at least 100 trials");
    const LinkContext link = make_link_context(config);
    const int rows = scheme_payload_rows(scheme, config);
    const int bits_per_sym = config.pam_levels == 2 ? 1 : 2;
    const int n_lo = kEdgeExclude;
    const int n_hi = config.m_half - kEdgeExclude;
    if (n_lo >= n_hi)
        throw std::invalid_argument("measure_sir: m_half too small for edge exclusion");

    double sig_pow = 0.0, err_pow = 0.0;
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, 0, static_cast<uint64_t>(t)));
        PayloadGrid payload;
        const size_t nbits = static_cast<size_t>(rows) * config.m_half * bits_per_sym;
        std::vector<uint8_t> bits(nbits);
        for (auto* g : {&payload.x, &payload.y}) {
            for (auto& b : bits) b = rng.coin() ? 1 : 0;
            const auto syms = pam_map(bits, config.pam_levels);
            *g = RealGrid(rows, config.m_half);
            std::copy(syms.begin(), syms.end(), g->data().begin());
        }
        const BurstDecisions burst =
            run_burst(scheme, link, profile, delta_f_norm, 0.0, payload, rng);
        for (int n = n_lo; n < n_hi; ++n) {
            for (int row = 0; row < rows; ++row) {
                const int q = scheme == Scheme::naive_alamouti ? (2 * row) / config.nf
                                                               : row / config.payload_per_half();
                const double g = burst.gain[q] * burst.amp;
                const double dx = burst.d.x(row, n) - g * payload.x(row, n);
                const double dy = burst.d.y(row, n) - g * payload.y(row, n);
                sig_pow += g * g * (payload.x(row, n) * payload.x(row, n) +
                                    payload.y(row, n) * payload.y(row, n));
                err_pow += dx * dx + dy * dy;
            }
        }
    }
    if (err_pow <= 0.0) return 300.0;  // numerically interference-free
    return 10.0 * std::log10(sig_pow / err_pow);
}

}  // namespace fracsim
