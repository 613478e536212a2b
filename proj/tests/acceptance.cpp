// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: certifies the headline properties of the FRAC-FBMC link
// at the reference operating point (N = 256, L_n = 1, 15 kHz spacing,
// PHYDYAS overlap 4). Prints one PASS/FAIL line per criterion and exits nonzero if
// any fails. Desk-scale Monte Carlo points use 2000 bursts.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fracsim/analysis.hpp"
#include "fracsim/harness.hpp"
#include "fracsim/sweep_io.hpp"

using namespace fracsim;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail, double seconds) {
    std::printf("[%s] %d. %-28s %s (%.1f s)\n", pass ? "PASS" : "FAIL", idx, name, detail.c_str(),
                seconds);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

FracConfig reference_config(int nf, int m_half = 16) {
    FracConfig cfg;
    cfg.n = 256;
    cfg.nf = nf;
    cfg.guard = 1;
    cfg.eps_hz = 15e3;
    cfg.m_half = m_half;
    return cfg;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

// Monte Carlo point with burst-level statistics (block fading makes bursts,
// not bits, the independent unit).
struct PointStats {
    double ber = 0.0;
    double ci95_bits = 0.0;   // Wilson interval on bits
    double sigma_burst = 0.0; // std error of the mean from per-burst BERs
    int64_t bits = 0;
    int64_t errors = 0;
};

PointStats run_point(Scheme scheme, const std::string& channel, double snr_db, double iafo,
                     int nf_half, int trials, uint64_t seed, uint64_t point_index) {
    const auto profile = load_profile(channel);
    FracConfig cfg = reference_config(2 * nf_half, 28);
    const LinkContext link = make_link_context(cfg);

    const int workers = 2;
    std::vector<int64_t> bits_w(workers, 0), errs_w(workers, 0);
    std::vector<double> sum_w(workers, 0.0), sumsq_w(workers, 0.0);
    auto work = [&](int w) {
        for (int t = w; t < trials; t += workers) {
            Rng rng(derive_seed(seed, point_index, static_cast<uint64_t>(t)));
            const auto c = run_trial(scheme, profile, snr_db, iafo, link, rng);
            bits_w[w] += c.bits;
            errs_w[w] += c.errors;
            const double p = static_cast<double>(c.errors) / c.bits;
            sum_w[w] += p;
            sumsq_w[w] += p * p;
        }
    };
    std::thread th(work, 1);
    work(0);
    th.join();

    PointStats s;
    double sum = 0.0, sumsq = 0.0;
    for (int w = 0; w < workers; ++w) {
        s.bits += bits_w[w];
        s.errors += errs_w[w];
        sum += sum_w[w];
        sumsq += sumsq_w[w];
    }
    s.ber = static_cast<double>(s.errors) / s.bits;
    s.ci95_bits = wilson_halfwidth(s.errors, s.bits);
    const double mean = sum / trials;
    const double var = std::max(0.0, sumsq / trials - mean * mean);
    s.sigma_burst = std::sqrt(var / trials);
    return s;
}

void criterion_orthogonality() {
    Timer timer;
    const auto cfg = reference_config(16);
    const auto link = make_link_context(cfg);
    const IciAnalyzer analyzer(cfg, link.filter, link.grids, 0.0);

    Rng rng(1001);
    double worst = 0.0;
    for (int pos = 0; pos < 64; ++pos) {
        const int k = 2 + static_cast<int>(rng.bits() % (cfg.n - 2));  // keep k+l inside 1..N
        const int n = kEdgeExclude + static_cast<int>(rng.bits() % (cfg.m_half - 2 * kEdgeExclude));
        for (int l = -1; l <= 1; ++l) {
            for (int m = -4; m <= 4; ++m) {
                const double want = (l == 0 && m == 0) ? 1.0 : 0.0;
                const cplx ca = analyzer.interference_coeff(Antenna::a, Antenna::a, l, m, k, n);
                const cplx cb = analyzer.interference_coeff(Antenna::b, Antenna::b, l, m, k, n);
                worst = std::max({worst, std::abs(ca.real() - want), std::abs(cb.real() - want)});
            }
        }
    }
    report(1, "orthogonality (Re F = dd)", worst <= 1e-3,
           fmt("max |Re F - delta| = %.2e (bound 1e-3)", worst), timer.seconds());
}

void criterion_self_cancellation() {
    Timer timer;
    double worst = 0.0;
    for (int nf : {8, 16, 256}) {
        const auto cfg = reference_config(nf);
        const auto link = make_link_context(cfg);
        Rng rng(1002);
        PayloadGrid payload{RealGrid(cfg.payload_rows(), cfg.m_half),
                            RealGrid(cfg.payload_rows(), cfg.m_half)};
        for (auto& v : payload.x.data()) v = rng.coin() ? 1.0 : -1.0;
        for (auto& v : payload.y.data()) v = rng.coin() ? 1.0 : -1.0;
        const auto [ga, gb] = frac_encode(payload, cfg);

        std::vector<int> instants;
        for (int n = kEdgeExclude; n < cfg.m_half - kEdgeExclude; ++n) instants.push_back(n);
        for (double dfn : {0.0, 0.1, 0.2, 0.3}) {
            const IciAnalyzer analyzer(cfg, link.filter, link.grids, dfn);
            for (const auto& row : self_cancellation_report(analyzer, ga, gb, instants))
                worst = std::max(worst, row.residual);
        }
    }
    report(2, "self-cancellation (W* = -V)", worst <= 1e-5,
           fmt("max |W*+V|/max(|V|,1e-12) = %.2e (bound 1e-5)", worst), timer.seconds());
}

void criterion_diversity_contract() {
    Timer timer;
    const auto cfg = reference_config(16);
    const double sir = measure_sir(Scheme::frac, load_profile("flat"), 0.3, cfg, 150, 1003);
    report(3, "diversity contract at 0.3 IAFO", sir >= 50.0, fmt("SIR = %.1f dB (bound 50 dB)", sir),
           timer.seconds());
}

void criterion_iafo_invariance() {
    Timer timer;
    bool pass = true;
    std::string detail;
    for (double snr : {10.0, 20.0}) {
        // same seed and point index: paired draws isolate the IAFO effect
        const auto p0 = run_point(Scheme::frac, "flat", snr, 0.0, 128, 2000, 1004, 0);
        const auto p3 = run_point(Scheme::frac, "flat", snr, 0.3, 128, 2000, 1004, 0);
        const double diff = std::abs(p3.ber - p0.ber);
        const double bound = p0.ci95_bits + p3.ci95_bits;
        if (diff > bound) pass = false;
        detail += fmt("%ddB: |dBER|=%.2e<=%.2e  ", static_cast<int>(snr), diff, bound);
    }
    report(4, "IAFO invariance of BER", pass, detail, timer.seconds());
}

void criterion_baseline_degradation() {
    Timer timer;
    const auto p0 = run_point(Scheme::naive_alamouti, "flat", 20.0, 0.0, 128, 2000, 1005, 0);
    const auto p3 = run_point(Scheme::naive_alamouti, "flat", 20.0, 0.3, 128, 2000, 1005, 0);
    const bool pass = p3.ber > p0.ber + p0.ci95_bits + p3.ci95_bits;
    report(5, "baseline degrades under IAFO", pass,
           fmt("BER 0->0.3: %.3e -> %.3e (ci sum %.1e)", p0.ber, p3.ber,
               p0.ci95_bits + p3.ci95_bits),
           timer.seconds());
}

double invert_theory(const std::function<double(double)>& theory, double ber, double lo,
                     double hi) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (theory(mid) > ber) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

void criterion_theory_match() {
    Timer timer;
    struct Curve {
        Scheme scheme;
        std::function<double(double)> theory;
        std::vector<double> snrs;
        const char* name;
    };
    const std::vector<Curve> curves{
        {Scheme::single_antenna, theoretical_rayleigh_ber, {4, 8, 12, 16, 20}, "single"},
        {Scheme::frac, theoretical_alamouti_ber, {2, 4, 6, 8, 10, 12}, "frac"},
    };
    bool pass = true;
    double worst_margin = -1e9;
    std::string worst_detail = "no point in the BER band";
    int checked = 0;
    uint64_t point = 0;
    for (const auto& curve : curves) {
        for (double snr : curve.snrs) {
            const auto p =
                run_point(curve.scheme, "flat", snr, 0.0, 128, 2000, 1006, point++);
            if (p.ber < 1e-3 || p.ber > 1e-1) continue;
            ++checked;
            const double snr_star = invert_theory(curve.theory, p.ber, snr - 6.0, snr + 6.0);
            const double shift = std::abs(snr - snr_star);
            // statistical allowance: burst-level 95% CI mapped through the
            // local slope of the reference curve
            const double slope =
                std::abs(curve.theory(snr + 0.1) - curve.theory(snr - 0.1)) / 0.2;
            const double stat_db = 1.96 * p.sigma_burst / std::max(slope, 1e-12);
            const double tol = std::max(0.5, stat_db);
            if (shift - tol > worst_margin) {
                worst_margin = shift - tol;
                worst_detail = fmt("worst %s @%gdB: shift %.2f dB (tol %.2f)", curve.name, snr,
                                   shift, tol);
            }
            if (shift > tol) pass = false;
        }
    }
    if (checked == 0) pass = false;
    report(6, "closed-form BER cross-check", pass,
           fmt("%d points in band; %s", checked, worst_detail.c_str()), timer.seconds());
}

void criterion_frequency_selectivity() {
    Timer timer;
    // large subblocks break the quasi-static assumption on ITU-VA
    const auto va4 = run_point(Scheme::frac, "itu_va", 25.0, 0.1, 4, 2000, 1007, 0);
    const auto va64 = run_point(Scheme::frac, "itu_va", 25.0, 0.1, 64, 2000, 1007, 1);
    const bool va_pass = va64.ber > va4.ber + va4.ci95_bits + va64.ci95_bits;

    // on flat fading the subblock size must not matter
    bool flat_pass = true;
    std::vector<int> sizes{4, 8, 64, 128};
    std::vector<PointStats> flat_pts;
    for (size_t i = 0; i < sizes.size(); ++i)
        flat_pts.push_back(
            run_point(Scheme::frac, "flat", 20.0, 0.1, sizes[i], 2000, 1007, 10 + i));
    double worst_z = 0.0;
    for (size_t i = 1; i < flat_pts.size(); ++i) {
        const double diff = std::abs(flat_pts[i].ber - flat_pts[0].ber);
        const double bound =
            1.96 * (flat_pts[i].sigma_burst + flat_pts[0].sigma_burst);
        worst_z = std::max(worst_z, diff / bound);
        if (diff > bound) flat_pass = false;
    }
    report(7, "subblock-size behavior", va_pass && flat_pass,
           fmt("VA: %.2e (nf/2=64) vs %.2e (nf/2=4); flat spread worst z=%.2f", va64.ber, va4.ber,
               worst_z),
           timer.seconds());
}

void criterion_reproducibility() {
    Timer timer;
    const char* cli = std::getenv("FRACSIM_CLI");
    if (!cli) {
        report(8, "reproducibility across workers", false, "FRACSIM_CLI not set", timer.seconds());
        return;
    }
    const std::string cfg_path = "/tmp/fracsim_accept_sweep.cfg";
    {
        std::ofstream f(cfg_path);
        f << "scheme = frac\nchannel = flat\nsnr_db = 10, 15\niafo_norm = 0, 0.3\n"
          << "nf_half = 16\ntrials = 25\nseed = 99\nn = 64\nm_half = 12\n";
    }
    auto run_cli = [&](int workers, const std::string& out) {
        const std::string cmd = std::string(cli) + " ber-sweep --config " + cfg_path + " --out " +
                                out + " --workers " + std::to_string(workers) + " >/dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    const int rc1 = run_cli(1, "/tmp/fracsim_accept_w1.csv");
    const int rc8 = run_cli(8, "/tmp/fracsim_accept_w8.csv");
    auto slurp = [](const char* p) {
        std::ifstream f(p);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    const std::string a = slurp("/tmp/fracsim_accept_w1.csv");
    const std::string b = slurp("/tmp/fracsim_accept_w8.csv");
    const bool pass = rc1 == 0 && rc8 == 0 && !a.empty() && a == b;
    report(8, "reproducibility across workers", pass,
           fmt("workers 1 vs 8: %s", pass ? "byte-identical CSV" : "MISMATCH"), timer.seconds());
}

}  // namespace

int main() {
    std::printf("fracsim acceptance suite\n");
    criterion_orthogonality();
    criterion_self_cancellation();
    criterion_diversity_contract();
    criterion_iafo_invariance();
    criterion_baseline_degradation();
    criterion_theory_match();
    criterion_frequency_selectivity();
    criterion_reproducibility();
    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
