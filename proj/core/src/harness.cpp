// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#include "fracsim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "fracsim/modem.hpp"

namespace fracsim {

LinkContext make_link_context(const FracConfig& cfg) {
    cfg.validate();
    LinkContext link;
    link.cfg = cfg;
    link.filter = design_phydyas(cfg.n, cfg.overlap);
    link.grids = build_phase_grids(cfg);
    return link;
}

int scheme_payload_rows(Scheme scheme, const FracConfig& cfg) {
    switch (scheme) {
        case Scheme::frac:
        case Scheme::single_antenna: return cfg.payload_rows();
        case Scheme::naive_alamouti: return cfg.n / 2;
    }
    throw std::logic_error("unknown scheme");
}

std::pair<OqamGrid, OqamGrid> encode_scheme(Scheme scheme, const PayloadGrid& payload,
                                            const FracConfig& cfg) {
    if (scheme == Scheme::frac) return frac_encode(payload, cfg);

    const int rows = scheme_payload_rows(scheme, cfg);
    if (payload.x.rows() != rows || payload.y.rows() != rows ||
        payload.x.cols() != cfg.m_half || payload.y.cols() != cfg.m_half)
        throw std::invalid_argument("encode_scheme: payload dimensions do not match config");

    OqamGrid a{RealGrid(cfg.n, cfg.m_half), cfg.eps_hz};
    OqamGrid b{RealGrid(cfg.n, cfg.m_half), cfg.eps_hz};

    if (scheme == Scheme::naive_alamouti) {
        // Alamouti over adjacent subcarriers (2p+1, 2p+2), both antennas on
        // the plain OQAM phase pattern, no reversal, no guards.
        for (int m = 0; m < cfg.m_half; ++m) {
            for (int p = 0; p < cfg.n / 2; ++p) {
                const double x = payload.x(p, m);
                const double y = payload.y(p, m);
                a.symbols(2 * p, m) = x;
                a.symbols(2 * p + 1, m) = -y;
                b.symbols(2 * p, m) = y;
                b.symbols(2 * p + 1, m) = x;
            }
        }
        return {std::move(a), std::move(b)};
    }

    // single antenna: x on the lower payload positions, y on their mirrors
    const int per_half = cfg.payload_per_half();
    for (int m = 0; m < cfg.m_half; ++m) {
        for (int q = 0; q < cfg.num_subblocks(); ++q) {
            for (int idx = 0; idx < per_half; ++idx) {
                const int k = cfg.guard + 1 + idx;
                const int lo = q * cfg.nf + k;
                const int up = (q + 1) * cfg.nf - k + 1 + cfg.guard;
                a.symbols(lo - 1, m) = payload.x(q * per_half + idx, m);
                a.symbols(up - 1, m) = payload.y(q * per_half + idx, m);
            }
        }
    }
    return {std::move(a), std::move(b)};
}

DecisionGrids combine_scheme(Scheme scheme, const CplxGrid& r_a, const CplxGrid& r_b,
                             std::span<const cplx> h_a, std::span<const cplx> h_b,
                             const FracConfig& cfg) {
    if (scheme == Scheme::frac) return combine_decide(r_a, r_b, h_a, h_b, cfg);

    const int m_half = r_a.cols();
    const int rows = scheme_payload_rows(scheme, cfg);
    DecisionGrids d{RealGrid(rows, m_half), RealGrid(rows, m_half)};

    if (scheme == Scheme::naive_alamouti) {
        for (int p = 0; p < cfg.n / 2; ++p) {
            const int q = (2 * p) / cfg.nf;
            const cplx ha = h_a[q];
            const cplx hb = h_b[q];
            if (std::norm(ha) + std::norm(hb) < 1e-12) continue;
            for (int n = 0; n < m_half; ++n) {
                d.x(p, n) = (std::conj(ha) * r_a(2 * p, n) + hb * std::conj(r_b(2 * p + 1, n))).real();
                d.y(p, n) = (std::conj(hb) * r_b(2 * p, n) - ha * std::conj(r_a(2 * p + 1, n))).real();
            }
        }
        return d;
    }

    // single antenna: plain matched combining on branch a
    const int per_half = cfg.payload_per_half();
    for (int q = 0; q < cfg.num_subblocks(); ++q) {
        const cplx h = h_a[q];
        if (std::norm(h) < 1e-12) continue;
        for (int n = 0; n < m_half; ++n) {
            for (int idx = 0; idx < per_half; ++idx) {
                const int k = cfg.guard + 1 + idx;
                const int lo = q * cfg.nf + k;
                const int up = (q + 1) * cfg.nf - k + 1 + cfg.guard;
                const int row = q * per_half + idx;
                d.x(row, n) = (std::conj(h) * r_a(lo - 1, n)).real();
                d.y(row, n) = (std::conj(h) * r_a(up - 1, n)).real();
            }
        }
    }
    return d;
}

BurstDecisions run_burst(Scheme scheme, const LinkContext& link, const TapDelayProfile& profile,
                         double iafo_norm, double noise_variance, const PayloadGrid& payload,
                         Rng& rng) {
    const FracConfig& cfg = link.cfg;
    const bool dual = scheme != Scheme::single_antenna;
    const double amp = dual ? 1.0 / std::numbers::sqrt2 : 1.0;

    auto [grid_a, grid_b] = encode_scheme(scheme, payload, cfg);
    if (amp != 1.0) {
        for (double& v : grid_a.symbols.data()) v *= amp;
        for (double& v : grid_b.symbols.data()) v *= amp;
    }

    // the baseline runs both antennas on the a-grid phases
    const CplxGrid& zeta_a = link.grids.zeta_a;
    const CplxGrid& zeta_b =
        (scheme == Scheme::naive_alamouti) ? link.grids.zeta_a : link.grids.zeta_b;

    const ChannelRealization ch_a =
        realize(profile, 0.0, cfg.eps_hz, cfg.sample_rate_hz(), rng);
    BasebandSignal rx = apply_channel(synthesize(grid_a, zeta_a, link.filter), ch_a);

    ChannelRealization ch_b;
    if (dual) {
        ch_b = realize(profile, iafo_norm, cfg.eps_hz, cfg.sample_rate_hz(), rng);
        const BasebandSignal sb = apply_channel(synthesize(grid_b, zeta_b, link.filter), ch_b);
        if (sb.samples.size() > rx.samples.size()) {
            rx.samples.resize(sb.samples.size(), cplx{0.0, 0.0});
        }
        for (size_t t = 0; t < sb.samples.size(); ++t) rx.samples[t] += sb.samples[t];
    }
    if (noise_variance > 0.0) rx = add_awgn(rx, noise_variance, rng);

    // the proposed scheme runs one offset-compensated branch per antenna;
    // the adjacent-pair baseline is a standard Alamouti receiver with a
    // single downconversion, so antenna b's offset stays uncompensated
    const CplxGrid r_a = analyze(rx, 0.0, zeta_a, link.filter, cfg);
    CplxGrid r_b;
    if (scheme == Scheme::frac) r_b = analyze(rx, iafo_norm * cfg.eps_hz, zeta_b, link.filter, cfg);
    else if (scheme == Scheme::naive_alamouti) r_b = r_a;
    else r_b = CplxGrid(cfg.n, cfg.m_half);

    // channel known at the receiver: per-subblock scalar at the center subcarrier
    const int kq = cfg.num_subblocks();
    std::vector<cplx> h_a(kq), h_b(kq, cplx{0.0, 0.0});
    for (int q = 0; q < kq; ++q) {
        h_a[q] = subblock_response(ch_a, q, cfg.nf / 2, cfg);
        if (dual) h_b[q] = subblock_response(ch_b, q, cfg.nf / 2, cfg);
    }

    BurstDecisions out;
    out.d = combine_scheme(scheme, r_a, r_b, h_a, h_b, cfg);
    out.amp = amp;
    out.gain.resize(kq);
    for (int q = 0; q < kq; ++q) out.gain[q] = std::norm(h_a[q]) + std::norm(h_b[q]);
    return out;
}

namespace {

PayloadGrid random_payload(Scheme scheme, const FracConfig& cfg, Rng& rng,
                           std::vector<uint8_t>* bits_x, std::vector<uint8_t>* bits_y) {
    const int rows = scheme_payload_rows(scheme, cfg);
    const int bits_per_sym = cfg.pam_levels == 2 ? 1 : 2;
    const size_t nbits = static_cast<size_t>(rows) * cfg.m_half * bits_per_sym;

    auto draw = [&](std::vector<uint8_t>* keep) {
        std::vector<uint8_t> bits(nbits);
        for (auto& b : bits) b = rng.coin() ? 1 : 0;
        auto syms = pam_map(bits, cfg.pam_levels);
        if (keep) *keep = std::move(bits);
        RealGrid g(rows, cfg.m_half);
        std::copy(syms.begin(), syms.end(), g.data().begin());
        return g;
    };
    PayloadGrid p;
    p.x = draw(bits_x);
    p.y = draw(bits_y);
    return p;
}

int trial_subblock_of_row(Scheme scheme, const FracConfig& cfg, int row) {
    if (scheme == Scheme::naive_alamouti) return (2 * row) / cfg.nf;
    return row / cfg.payload_per_half();
}

}  // namespace

TrialCounts run_trial(Scheme scheme, const TapDelayProfile& profile, double snr_db,
                      double iafo_norm, const LinkContext& link, Rng& rng) {
    const FracConfig& cfg = link.cfg;
    const int bits_per_sym = cfg.pam_levels == 2 ? 1 : 2;

    std::vector<uint8_t> bits_x, bits_y;
    PayloadGrid payload = random_payload(scheme, cfg, rng, &bits_x, &bits_y);

    double noise_var;
    bool signal_off = false;
    if (std::isinf(snr_db)) {
        if (snr_db > 0) {
            noise_var = 0.0;  // noise off
        } else {
            signal_off = true;  // receiver sees pure noise
            noise_var = 1.0;
        }
    } else {
        // Eb/N0 with Eb the total transmit energy per information bit
        // (unit-energy PAM, both antennas together at unit power)
        const double eb = 1.0 / bits_per_sym;
        noise_var = eb / std::pow(10.0, snr_db / 10.0);
    }
    if (signal_off) {
        for (double& v : payload.x.data()) v = 0.0;
        for (double& v : payload.y.data()) v = 0.0;
    }

    BurstDecisions burst = run_burst(scheme, link, profile, iafo_norm, noise_var, payload, rng);

    const int rows = scheme_payload_rows(scheme, cfg);
    const int n_lo = kEdgeExclude;
    const int n_hi = cfg.m_half - kEdgeExclude;
    if (n_lo >= n_hi)
        throw std::invalid_argument("run_trial: m_half too small for edge exclusion");

    TrialCounts counts;
    std::vector<double> vals;
    vals.reserve(static_cast<size_t>(rows) * (n_hi - n_lo));
    auto count_stream = [&](const RealGrid& d, const std::vector<uint8_t>& sent) {
        vals.clear();
        for (int n = n_lo; n < n_hi; ++n) {
            for (int row = 0; row < rows; ++row) {
                const int q = trial_subblock_of_row(scheme, cfg, row);
                const double g = burst.gain[q] * burst.amp;
                vals.push_back(g > 1e-12 ? d(row, n) / g : 0.0);
            }
        }
        const auto got = pam_demap(vals, cfg.pam_levels);
        for (int n = n_lo; n < n_hi; ++n) {
            for (int row = 0; row < rows; ++row) {
                const size_t pos = (static_cast<size_t>(n - n_lo) * rows + row);
                for (int bb = 0; bb < bits_per_sym; ++bb) {
                    // payload grids are column-major: bit order follows (n, row)
                    const size_t sent_idx =
                        (static_cast<size_t>(n) * rows + row) * bits_per_sym + bb;
                    counts.bits++;
                    if (got[pos * bits_per_sym + bb] != sent[sent_idx]) counts.errors++;
                }
            }
        }
    };
    count_stream(burst.d.x, bits_x);
    count_stream(burst.d.y, bits_y);
    return counts;
}

void SweepConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("SweepConfig: trials must be >= 1");
    if (snr_db.empty() || iafo_norm.empty() || nf_half.empty())
        throw std::invalid_argument("SweepConfig: snr_db, iafo_norm and nf_half must be non-empty");
    for (double v : iafo_norm)
        if (v < 0.0 || v >= 0.5)
            throw std::invalid_argument("SweepConfig: iafo_norm values must be in [0, 0.5)");
    for (int h : nf_half) {
        if (h < 1 || (n / 2) % h != 0)
            throw std::invalid_argument("SweepConfig: nf_half must divide n/2");
        link_config(h).validate();
    }
    if (m_half <= 2 * kEdgeExclude)
        throw std::invalid_argument("SweepConfig: m_half must exceed twice the edge exclusion");
}

FracConfig SweepConfig::link_config(int nf_half_value) const {
    FracConfig cfg;
    cfg.n = n;
    cfg.nf = 2 * nf_half_value;
    cfg.guard = guard;
    cfg.eps_hz = eps_hz;
    cfg.m_half = m_half;
    cfg.pam_levels = pam_levels;
    return cfg;
}

double wilson_halfwidth(int64_t errors, int64_t bits) {
    if (bits <= 0) return 0.0;
    const double z = 1.959963984540054;
    const double nn = static_cast<double>(bits);
    const double p = static_cast<double>(errors) / nn;
    const double z2 = z * z;
    return (z / (1.0 + z2 / nn)) * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
}

std::vector<BerRecord> run_sweep(const SweepConfig& cfg, int workers,
                                 const std::function<bool(const BerRecord&)>& on_point) {
    cfg.validate();
    if (workers < 1) workers = 1;
    const TapDelayProfile profile =
        cfg.channel.find('=') == std::string::npos && cfg.channel.find('/') == std::string::npos &&
                cfg.channel.find(".txt") == std::string::npos
            ? load_profile(cfg.channel)
            : load_profile_file(cfg.channel);

    std::vector<BerRecord> records;
    uint64_t point = 0;
    for (int nfh : cfg.nf_half) {
        const LinkContext link = make_link_context(cfg.link_config(nfh));
        for (double iafo : cfg.iafo_norm) {
            for (double snr : cfg.snr_db) {
                std::vector<TrialCounts> acc(workers);
                auto work = [&](int w) {
                    TrialCounts local;
                    for (int t = w; t < cfg.trials; t += workers) {
                        Rng rng(derive_seed(cfg.seed, point, static_cast<uint64_t>(t)));
                        const TrialCounts c =
                            run_trial(cfg.scheme, profile, snr, iafo, link, rng);
                        local.bits += c.bits;
                        local.errors += c.errors;
                    }
                    acc[w] = local;
                };
                if (workers == 1) {
                    work(0);
                } else {
                    std::vector<std::thread> pool;
                    pool.reserve(workers);
                    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
                    for (auto& th : pool) th.join();
                }
                TrialCounts total;
                for (const auto& c : acc) {
                    total.bits += c.bits;
                    total.errors += c.errors;
                }
                BerRecord rec;
                rec.scheme = cfg.scheme;
                rec.channel = cfg.channel;
                rec.snr_db = snr;
                rec.iafo_norm = iafo;
                rec.nf_half = nfh;
                rec.trials = cfg.trials;
                rec.bits = total.bits;
                rec.bit_errors = total.errors;
                rec.ber = total.bits ? static_cast<double>(total.errors) / total.bits : 0.0;
                rec.ci95 = wilson_halfwidth(total.errors, total.bits);
                records.push_back(rec);
                ++point;
                if (on_point && !on_point(records.back())) return records;
            }
        }
    }
    return records;
}

double theoretical_alamouti_ber(double snr_db) {
    if (std::isinf(snr_db)) return snr_db > 0 ? 0.0 : 0.5;
    const double gc = 0.5 * std::pow(10.0, snr_db / 10.0);  // per-branch SNR, half power each
    const double mu = std::sqrt(gc / (1.0 + gc));
    return 0.25 * (1.0 - mu) * (1.0 - mu) * (2.0 + mu);
}

double theoretical_rayleigh_ber(double snr_db) {
    if (std::isinf(snr_db)) return snr_db > 0 ? 0.0 : 0.5;
    const double g = std::pow(10.0, snr_db / 10.0);
    return 0.5 * (1.0 - std::sqrt(g / (1.0 + g)));
}

}  // namespace fracsim
