// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#pragma once

#include <vector>

namespace fracsim {

/// Real, even-symmetric pulse sampled at f_s = N * eps, one tap per sample.
/// Length is overlap_factor * samples_per_symbol; symmetry is about the
/// half-sample center (len-1)/2 and the taps are normalized to unit energy.
struct PrototypeFilter {
    std::vector<double> taps;
    int overlap_factor = 0;      // lambda
    int samples_per_symbol = 0;  // N

    int length() const { return static_cast<int>(taps.size()); }
    /// Time origin of the subcarrier phase reference, in samples.
    double center() const { return 0.5 * (static_cast<double>(taps.size()) - 1.0); }
};

/// PHYDYAS frequency-sampling design (overlap 4 only), built from the
/// coefficients H0=1, H1=0.971960, H2=sqrt(2)/2, H3=0.235147 and sampled on
/// the half-sample grid so the even symmetry taps[k] == taps[len-1-k] is
/// exact. Throws std::invalid_argument for unsupported parameters.
PrototypeFilter design_phydyas(int samples_per_symbol, int overlap);

}  // namespace fracsim
