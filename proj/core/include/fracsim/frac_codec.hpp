// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fracsim/types.hpp"

namespace fracsim {

/// Gray-mapped unit-average-energy PAM. Convention: bit 0 -> +1 for 2-PAM;
/// for 4-PAM the Gray pairs map 00,01,11,10 -> {+3,+1,-1,-3}/sqrt(5).
std::vector<double> pam_map(std::span<const uint8_t> bits, int levels);
std::vector<uint8_t> pam_demap(std::span<const double> values, int levels);

/// Real information symbols x^{(i)}_{k,n}, y^{(i)}_{k,n}: one row per payload
/// subcarrier (K * (N_F/2 - L_n) rows), one column per half-symbol.
struct PayloadGrid {
    RealGrid x;
    RealGrid y;
};

/// Per-subblock frequency-reversal Alamouti mapping: for local payload index
/// k = L_n+1 .. N_F/2 of subblock i,
///   a[k + i N_F]               = x_k     b[k + i N_F]               = y_k
///   a[(i+1) N_F - k + 1 + L_n] = -y_k    b[(i+1) N_F - k + 1 + L_n] = x_k
/// and zeros on the L_n guard subcarriers left of each half-subblock.
std::pair<OqamGrid, OqamGrid> frac_encode(const PayloadGrid& payload, const FracConfig& config);

struct DecisionGrids {
    RealGrid x;  // d_x, payload rows x counted columns (same layout as PayloadGrid)
    RealGrid y;  // d_y
};

/// Alamouti combining per subblock q with channel scalars h_a[q], h_b[q]:
///   d_x(k,n) = Re[conj(h_a) r_a(k) + h_b conj(r_b(mirror k))]
///   d_y(k,n) = Re[conj(h_b) r_b(k) - h_a conj(r_a(mirror k))]
/// r_a, r_b are analyze() outputs demodulated against (f_a, zeta_a) and
/// (f_b, zeta_b). Subblocks with |h_a|^2 + |h_b|^2 below 1e-12 are erased
/// (decisions forced to 0; the nearest-PAM tie then resolves to the positive
/// level, so on random data those bits are wrong about half the time).
DecisionGrids combine_decide(const CplxGrid& r_a, const CplxGrid& r_b,
                             std::span<const cplx> h_a, std::span<const cplx> h_b,
                             const FracConfig& config);

struct Fraction {
    int num = 0;
    int den = 1;
    double value() const { return static_cast<double>(num) / den; }
};

/// Payload subcarriers over total: (N_F - 2 L_n) / N_F.
Fraction bandwidth_efficiency(const FracConfig& config);

}  // namespace fracsim
