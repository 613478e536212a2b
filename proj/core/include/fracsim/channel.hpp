// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "fracsim/rng.hpp"
#include "fracsim/types.hpp"

namespace fracsim {

struct TapDelayProfile {
    std::string name;
    std::vector<double> delays_s;   // nonnegative, ascending
    std::vector<double> powers_db;  // mean tap powers, normalized at realize time
};

/// Built-in profiles: "flat" (single tap), "itu_pa" and "itu_va"
/// (ITU-R M.1225 Pedestrian A / Vehicular A tapped delay lines).
TapDelayProfile load_profile(std::string_view name);

/// Reads a profile from a key=value stream:
///   name = my_channel
///   delays_ns = 0, 110, 190, 410
///   powers_db = 0, -9.7, -19.2, -22.8
TapDelayProfile load_profile_stream(std::istream& is);
TapDelayProfile load_profile_file(const std::string& path);

/// One block-fading draw: i.i.d. circularly-symmetric complex Gaussian tap
/// gains with variances from the normalized profile (Rayleigh magnitudes,
/// unit total mean power), delays quantized to the nearest sample.
struct ChannelRealization {
    std::vector<cplx> taps;
    std::vector<int> tap_samples;
    double f_offset_hz = 0.0;
};

ChannelRealization realize(const TapDelayProfile& profile, double f_offset_norm, double eps_hz,
                           double sample_rate_hz, Rng& rng);

/// out[t] = e^{j 2 pi f_off t / f_s} * sum_i g_i s[t - d_i]; the carrier
/// offset multiplies the convolved signal. Output grows by the max delay.
BasebandSignal apply_channel(const BasebandSignal& signal, const ChannelRealization& ch);

/// Adds i.i.d. circularly-symmetric complex Gaussian noise with the given
/// total variance per complex sample.
BasebandSignal add_awgn(const BasebandSignal& signal, double noise_variance_per_sample, Rng& rng);

/// Exact subcarrier-domain response at local subcarrier k (1..N_F) of
/// subblock q: H = sum_i g_i e^{-j 2 pi (k + q N_F) d_i / N}.
cplx subblock_response(const ChannelRealization& ch, int q, int k, const FracConfig& config);

/// Worst relative deviation of H(q,k) from the subblock-center response,
/// max over q and k. Diagnostic for the quasi-static fading assumption;
/// shrinks as N_F shrinks.
double quasi_static_deviation(const ChannelRealization& ch, const FracConfig& config);

}  // namespace fracsim
