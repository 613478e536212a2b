// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fracsim/channel.hpp"
#include "fracsim/frac_codec.hpp"
#include "fracsim/phase_grid.hpp"
#include "fracsim/prototype_filter.hpp"
#include "fracsim/rng.hpp"
#include "fracsim/types.hpp"

namespace fracsim {

/// Half-symbols dropped from each end of the burst when counting bit errors,
/// so filter ramp-up never biases the estimate. Equals the time localization
/// bound M of the PHYDYAS pulse.
inline constexpr int kEdgeExclude = 4;

/// Everything that is fixed across the trials of one grid point.
struct LinkContext {
    FracConfig cfg;
    PrototypeFilter filter;
    PhaseGridPair grids;
};

LinkContext make_link_context(const FracConfig& cfg);

/// Payload rows (per real symbol stream x or y) used by a scheme:
/// frac and single_antenna keep the guard-null structure, the adjacent-pair
/// baseline fills all N subcarriers in pairs.
int scheme_payload_rows(Scheme scheme, const FracConfig& cfg);

/// Scheme symbol mapping onto the two antenna grids (antenna b stays zero
/// for single_antenna).
std::pair<OqamGrid, OqamGrid> encode_scheme(Scheme scheme, const PayloadGrid& payload,
                                            const FracConfig& cfg);

/// Per-scheme combining. h_a/h_b hold one channel scalar per subblock.
/// Returns raw (un-normalized) decision variables.
DecisionGrids combine_scheme(Scheme scheme, const CplxGrid& r_a, const CplxGrid& r_b,
                             std::span<const cplx> h_a, std::span<const cplx> h_b,
                             const FracConfig& cfg);

struct BurstDecisions {
    DecisionGrids d;
    std::vector<double> gain;  // |h_a|^2 + |h_b|^2 per subblock (|h|^2 single-antenna)
    double amp = 1.0;          // per-antenna amplitude applied at transmit
};

/// One burst through the full chain (encode, synthesize, per-antenna channel
/// with f_a = 0 and f_b = iafo * eps, AWGN, offset-compensated analysis,
/// combining). noise_variance <= 0 runs noiseless.
BurstDecisions run_burst(Scheme scheme, const LinkContext& link, const TapDelayProfile& profile,
                         double iafo_norm, double noise_variance, const PayloadGrid& payload,
                         Rng& rng);

struct TrialCounts {
    int64_t bits = 0;
    int64_t errors = 0;
};

/// One Monte Carlo burst: random bits -> PAM -> chain -> decisions -> bit
/// errors, counted on the interior half-symbols only. snr_db may be +inf
/// (noise off) or -inf (signal off).
TrialCounts run_trial(Scheme scheme, const TapDelayProfile& profile, double snr_db,
                      double iafo_norm, const LinkContext& link, Rng& rng);

struct SweepConfig {
    Scheme scheme = Scheme::frac;
    std::string channel = "flat";
    std::vector<double> snr_db;
    std::vector<double> iafo_norm;
    std::vector<int> nf_half;
    int trials = 2000;
    uint64_t seed = 1;
    int n = 256;
    int guard = 1;
    int pam_levels = 2;
    int m_half = 28;
    double eps_hz = 15e3;

    void validate() const;
    FracConfig link_config(int nf_half_value) const;
};

struct BerRecord {
    Scheme scheme = Scheme::frac;
    std::string channel;
    double snr_db = 0.0;
    double iafo_norm = 0.0;
    int nf_half = 0;
    int trials = 0;
    int64_t bits = 0;
    int64_t bit_errors = 0;
    double ber = 0.0;
    double ci95 = 0.0;  // Wilson score interval halfwidth
};

/// 95% Wilson score interval halfwidth for bit_errors/bits.
double wilson_halfwidth(int64_t errors, int64_t bits);

/// Runs the nf_half x iafo x snr grid. Trials are distributed across workers
/// with per-trial derived seeds, so the records are identical for any worker
/// count. An optional callback sees each finished record; returning false
/// aborts the sweep and run_sweep returns the records finished so far.
std::vector<BerRecord> run_sweep(const SweepConfig& cfg, int workers = 1,
                                 const std::function<bool(const BerRecord&)>& on_point = {});

/// Closed-form BER of 2x1 Alamouti 2-PAM over i.i.d. flat Rayleigh fading
/// with half transmit power per antenna; snr_db is total Eb/N0.
double theoretical_alamouti_ber(double snr_db);

/// Closed-form BER of coherent 2-PAM over flat Rayleigh fading.
double theoretical_rayleigh_ber(double snr_db);

}  // namespace fracsim
