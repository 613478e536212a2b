// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#pragma once

#include "fracsim/prototype_filter.hpp"
#include "fracsim/types.hpp"

namespace fracsim {

/// FBMC-OQAM synthesis:
///   s[u] = sum_l sum_m grid(l,m) zeta(l,m) p[u - m N/2] e^{j 2 pi l (u - c) / N}
/// with l = 1..N, c the pulse center and half-symbol stride N/2. Implemented
/// as one IFFT per half-symbol plus overlap-add of the windowed block.
/// Output length is (M_half + 2 lambda - 1) N / 2.
BasebandSignal synthesize(const OqamGrid& grid, const CplxGrid& zeta, const PrototypeFilter& p);

/// Offset-compensated analysis; entry (k, n), k = 1..N stored at row k-1:
///   r(k,n) = conj(zeta(k,n)) sum_u e^{-j 2 pi f_off u / f_s} s[u] p[u - n N/2]
///            e^{-j 2 pi k (u - c) / N}
/// One windowed fold + FFT per half-symbol instant.
CplxGrid analyze(const BasebandSignal& signal, double f_offset_hz, const CplxGrid& zeta,
                 const PrototypeFilter& p, const FracConfig& config);

}  // namespace fracsim
