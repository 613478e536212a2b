// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#include "fracsim/prototype_filter.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracsim {

namespace {
constexpr double kH1 = 0.971960;
constexpr double kH2 = std::numbers::sqrt2 / 2.0;
constexpr double kH3 = 0.235147;
}  // namespace

PrototypeFilter design_phydyas(int samples_per_symbol, int overlap) {
    if (overlap != 4)
        throw std::invalid_argument("design_phydyas: unsupported overlap factor (only 4)");
    if (samples_per_symbol < 16 || (samples_per_symbol & (samples_per_symbol - 1)) != 0)
        throw std::invalid_argument(
            "design_phydyas: samples_per_symbol must be a power of two >= 16");

    // Frequency-sampling coefficients must sit on the Nyquist curve; this is
    // what makes the filter bank near perfect-reconstruction.
    if (std::abs(kH1 * kH1 + kH3 * kH3 - 1.0) > 1e-3)
        throw std::logic_error("design_phydyas: H1^2 + H3^2 deviates from 1");

    const int len = overlap * samples_per_symbol;
    PrototypeFilter p;
    p.overlap_factor = overlap;
    p.samples_per_symbol = samples_per_symbol;
    p.taps.resize(len);

    // sample on the half-sample grid and mirror, so the even symmetry about
    // (len-1)/2 is exact rather than up to cos() rounding
    const double w = 2.0 * std::numbers::pi / static_cast<double>(len);
    double energy = 0.0;
    for (int u = 0; u < len / 2; ++u) {
        const double t = static_cast<double>(u) + 0.5;
        const double v = 1.0 - 2.0 * kH1 * std::cos(w * t) + 2.0 * kH2 * std::cos(2.0 * w * t) -
                         2.0 * kH3 * std::cos(3.0 * w * t);
        p.taps[u] = v;
        p.taps[len - 1 - u] = v;
        energy += 2.0 * v * v;
    }
    const double scale = 1.0 / std::sqrt(energy);
    for (double& v : p.taps) v *= scale;
    return p;
}

}  // namespace fracsim
