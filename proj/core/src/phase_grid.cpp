// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#include "fracsim/phase_grid.hpp"

#include <array>
#include <cmath>
#include <cstdio>

namespace fracsim {

namespace {

const cplx kJ{0.0, 1.0};

cplx j_pow(int e) {
    switch (((e % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

PhaseGridPair build_with_chi(const FracConfig& cfg, cplx chi) {
    PhaseGridPair g;
    g.chi = chi;
    g.zeta_a = CplxGrid(cfg.n, cfg.m_half);
    g.zeta_b = CplxGrid(cfg.n, cfg.m_half);
    const int nf = cfg.nf;
    for (int m = 0; m < cfg.m_half; ++m) {
        for (int gsc = 1; gsc <= cfg.n; ++gsc) {
            const int i = (gsc - 1) / nf;
            const int l = gsc - i * nf;  // local 1..nf
            if (l <= nf / 2) {
                const cplx v = j_pow(gsc + m);
                g.zeta_a(gsc - 1, m) = v;
                g.zeta_b(gsc - 1, m) = v;
            } else if (l <= nf / 2 + cfg.guard) {
                g.zeta_a(gsc - 1, m) = g.zeta_a(gsc - 2, m) * kJ;
                g.zeta_b(gsc - 1, m) = g.zeta_b(gsc - 2, m) * kJ;
            } else {
                const int l_src = nf + 1 + cfg.guard - l;  // in 1+guard .. nf/2
                const int g_src = i * nf + l_src;
                g.zeta_a(gsc - 1, m) = chi * std::conj(g.zeta_b(g_src - 1, m));
                g.zeta_b(gsc - 1, m) = chi * std::conj(g.zeta_a(g_src - 1, m));
            }
        }
    }
    return g;
}

bool is_imag_unit(cplx r) {
    return std::abs(r.real()) < 1e-9 && std::abs(std::abs(r.imag()) - 1.0) < 1e-9;
}

}  // namespace

bool validate_phase_grids(const PhaseGridPair& grids, const FracConfig& cfg,
                          std::string* diagnostic) {
    auto fail = [&](const std::string& msg) {
        if (diagnostic) *diagnostic = msg;
        return false;
    };
    if (grids.zeta_a.rows() != cfg.n || grids.zeta_a.cols() != cfg.m_half ||
        !grids.zeta_a.same_shape(grids.zeta_b))
        return fail("grid dimensions do not match config");

    char buf[96];
    for (const auto* z : {&grids.zeta_a, &grids.zeta_b}) {
        const char* name = (z == &grids.zeta_a) ? "zeta_a" : "zeta_b";
        for (int m = 0; m < cfg.m_half; ++m) {
            for (int r = 0; r < cfg.n; ++r) {
                if (std::abs(std::abs((*z)(r, m)) - 1.0) > 1e-9) {
                    std::snprintf(buf, sizeof(buf), "%s not unit modulus at (%d,%d)", name, r + 1, m);
                    return fail(buf);
                }
                if (r + 1 < cfg.n && !is_imag_unit((*z)(r + 1, m) / (*z)(r, m))) {
                    std::snprintf(buf, sizeof(buf), "%s frequency alternation broken at (%d,%d)",
                                  name, r + 1, m);
                    return fail(buf);
                }
                if (m + 1 < cfg.m_half && !is_imag_unit((*z)(r, m + 1) / (*z)(r, m))) {
                    std::snprintf(buf, sizeof(buf), "%s time alternation broken at (%d,%d)", name,
                                  r + 1, m);
                    return fail(buf);
                }
            }
        }
    }

    const int nf = cfg.nf;
    for (int m = 0; m < cfg.m_half; ++m) {
        for (int i = 0; i < cfg.num_subblocks(); ++i) {
            for (int l = 1 + cfg.guard; l <= nf / 2; ++l) {
                const int up = (i + 1) * nf - l + cfg.guard + 1;
                const int lo = l + i * nf;
                const cplx ea =
                    grids.zeta_a(up - 1, m) - grids.chi * std::conj(grids.zeta_b(lo - 1, m));
                const cplx eb =
                    grids.zeta_b(up - 1, m) - grids.chi * std::conj(grids.zeta_a(lo - 1, m));
                if (std::abs(ea) > 1e-9 || std::abs(eb) > 1e-9) {
                    std::snprintf(buf, sizeof(buf),
                                  "reversal constraint broken at subblock %d, l=%d, m=%d", i, l, m);
                    return fail(buf);
                }
            }
        }
    }
    return true;
}

PhaseGridPair build_phase_grids(const FracConfig& cfg) {
    cfg.validate();
    const std::array<cplx, 4> candidates{cplx{1, 0}, cplx{-1, 0}, cplx{0, 1}, cplx{0, -1}};
    std::string why;
    for (cplx chi : candidates) {
        PhaseGridPair g = build_with_chi(cfg, chi);
        if (validate_phase_grids(g, cfg, &why)) return g;
    }
    throw std::invalid_argument("build_phase_grids: no chi yields a valid grid (last failure: " +
                                why + ")");
}

}  // namespace fracsim
