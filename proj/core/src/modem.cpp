// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#include "fracsim/modem.hpp"

#include <cmath>
#include <numbers>

#include "fracsim/fft.hpp"

namespace fracsim {

namespace {

// e^{j ang} for ang = 2 pi x
cplx cis(double ang) { return {std::cos(ang), std::sin(ang)}; }

}  // namespace

BasebandSignal synthesize(const OqamGrid& grid, const CplxGrid& zeta, const PrototypeFilter& p) {
    const int n = p.samples_per_symbol;
    const int lam = p.overlap_factor;
    if (grid.symbols.rows() != n)
        throw std::invalid_argument("synthesize: grid rows must equal samples_per_symbol");
    if (!grid.symbols.same_shape(zeta))
        throw std::invalid_argument("synthesize: grid and zeta dimensions differ");

    const int m_half = grid.symbols.cols();
    const int stride = n / 2;
    const int plen = lam * n;
    const double c = p.center();
    const double two_pi = 2.0 * std::numbers::pi;

    BasebandSignal out;
    out.sample_rate_hz = n * grid.subcarrier_spacing_hz;
    out.samples.assign(static_cast<size_t>((m_half - 1) * stride + plen), cplx{0.0, 0.0});

    std::vector<cplx> bins(n);
    for (int m = 0; m < m_half; ++m) {
        bool any = false;
        for (int l = 1; l <= n; ++l) {
            const double sym = grid.symbols(l - 1, m);
            if (sym == 0.0) {
                bins[l % n] = cplx{0.0, 0.0};
                continue;
            }
            any = true;
            // fold the half-symbol position and pulse-center reference into
            // the bin so the IFFT output is the periodic carrier block
            const double ang = two_pi * l * (m * stride - c) / n;
            bins[l % n] = sym * zeta(l - 1, m) * cis(ang);
        }
        if (!any) continue;
        ifft(bins);
        cplx* dst = out.samples.data() + static_cast<size_t>(m) * stride;
        for (int v = 0; v < plen; ++v) dst[v] += p.taps[v] * bins[v % n];
    }
    return out;
}

CplxGrid analyze(const BasebandSignal& signal, double f_offset_hz, const CplxGrid& zeta,
                 const PrototypeFilter& p, const FracConfig& config) {
    const int n = p.samples_per_symbol;
    const int lam = p.overlap_factor;
    if (n != config.n)
        throw std::invalid_argument("analyze: filter and config disagree on N");
    if (zeta.rows() != n)
        throw std::invalid_argument("analyze: zeta rows must equal N");
    const int m_half = zeta.cols();
    const int stride = n / 2;
    const int plen = lam * n;
    if (static_cast<int>(signal.samples.size()) < (m_half - 1) * stride + plen)
        throw std::invalid_argument("analyze: signal too short for the requested lattice");
    if (std::abs(f_offset_hz) >= config.eps_hz)
        throw std::invalid_argument("analyze: only fractional frequency offsets are supported");

    const double c = p.center();
    const double two_pi = 2.0 * std::numbers::pi;
    const double dfn = f_offset_hz / config.eps_hz;  // offset in subcarrier spacings

    // de-rotate the whole burst once
    std::vector<cplx> derot(signal.samples.size());
    if (dfn != 0.0) {
        for (size_t u = 0; u < signal.samples.size(); ++u)
            derot[u] = signal.samples[u] * cis(-two_pi * dfn * static_cast<double>(u) / n);
    } else {
        derot = signal.samples;
    }

    CplxGrid out(n, m_half);
    std::vector<cplx> fold(n);
    for (int inst = 0; inst < m_half; ++inst) {
        const cplx* src = derot.data() + static_cast<size_t>(inst) * stride;
        std::fill(fold.begin(), fold.end(), cplx{0.0, 0.0});
        for (int v = 0; v < plen; ++v) fold[v % n] += src[v] * p.taps[v];
        fft(fold);
        for (int k = 1; k <= n; ++k) {
            const double ang = -two_pi * k * (inst * stride - c) / n;
            out(k - 1, inst) = fold[k % n] * cis(ang) * std::conj(zeta(k - 1, inst));
        }
    }
    return out;
}

}  // namespace fracsim
