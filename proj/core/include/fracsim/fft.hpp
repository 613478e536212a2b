// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#pragma once

#include <span>

#include "fracsim/types.hpp"

namespace fracsim {

/// In-place radix-2 DIT transform, length must be a power of two.
/// fft:  X[k] = sum_v x[v] e^{-j 2 pi k v / N}
/// ifft: x[v] = sum_k X[k] e^{+j 2 pi k v / N}   (unnormalized)
void fft(std::span<cplx> data);
void ifft(std::span<cplx> data);

}  // namespace fracsim
