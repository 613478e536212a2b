// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#pragma once

#include <string>

#include "fracsim/types.hpp"

namespace fracsim {

/// Unit-modulus phase factors for the two antennas. Entries are in
/// {1, -1, j, -j}; the ratio between lattice neighbors (either axis) is
/// always +-j, and within each subblock the upper half mirrors the lower
/// half of the other grid through zeta_up = chi * conj(zeta_lo).
struct PhaseGridPair {
    CplxGrid zeta_a;  // N x M_half
    CplxGrid zeta_b;
    cplx chi;
};

/// Builds a conformant pair: j^(g+m) on the lower half of every subblock
/// (global 1-based subcarrier g), upper halves derived from the reversal
/// constraint, upper guard entries interpolated to keep the alternation.
/// chi is searched over {1, -1, j, -j}; throws std::invalid_argument with
/// the first violated invariant if no choice validates.
PhaseGridPair build_phase_grids(const FracConfig& config);

/// True iff both alternation invariants and the reversal constraint hold for
/// every (i, l, m). On failure *diagnostic (if given) names the first
/// violated constraint.
bool validate_phase_grids(const PhaseGridPair& grids, const FracConfig& config,
                          std::string* diagnostic = nullptr);

}  // namespace fracsim
