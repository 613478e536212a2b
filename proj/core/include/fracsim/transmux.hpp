// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "fracsim/prototype_filter.hpp"
#include "fracsim/types.hpp"

namespace fracsim {

/// One sample of the transmultiplexer response F_{l,m,n}^{(df)}: the
/// cross-ambiguity of the prototype at frequency lag l (subcarriers), time
/// lag m (half-symbols) and residual carrier offset df (normalized to the
/// subcarrier spacing), evaluated at half-symbol index n.
struct TransmuxResponse {
    cplx value;
    int l = 0;
    int m = 0;
    int n = 0;
    double delta_f_norm = 0.0;
};

/// The n-independent part of F:
///   I(l, m, df) = sum_v p[v - m N/2] p[v] e^{j 2 pi l (v - c) / N} e^{j 2 pi df v / N}
/// with c the pulse center. The half-symbol index enters only through the
/// leading phase e^{j pi n (l + df)}, applied in transmux_response. The offset
/// phase reference is the absolute sample index (v, not v - c), matching how
/// a carrier offset rotates the time-domain signal in the channel.
cplx transmux_integral(const PrototypeFilter& p, int l, int m, double delta_f_norm);

TransmuxResponse transmux_response(const PrototypeFilter& p, int l, int m, int n,
                                   double delta_f_norm);

/// Precomputed F values over |l| <= l_max, |m| <= 2*lambda for one offset.
/// Immutable after construction; safe to share across threads.
class TransmuxTable {
  public:
    TransmuxTable(const PrototypeFilter& p, double delta_f_norm, int l_max = 8);

    /// n-independent integral; exact zero beyond the pulse time support.
    cplx integral(int l, int m) const;
    /// Full response with the e^{j pi n (l + df)} phase applied.
    cplx value(int l, int m, int n) const;

    int l_max() const { return l_max_; }
    int m_max() const { return m_max_; }
    double delta_f_norm() const { return delta_f_norm_; }

  private:
    int l_max_;
    int m_max_;  // 2 * lambda - 1 (support edge; |m| >= 2*lambda is zero)
    double delta_f_norm_;
    std::vector<cplx> values_;  // (2*l_max+1) x (2*m_max+1)
};

/// Smallest (L, M) such that the RMS of all table entries with |l| > L
/// (respectively |m| > M) inside the search window |l| <= 8, |m| <= 4*lambda
/// falls below the threshold. This is the out-of-window leakage measure that
/// reproduces the PHYDYAS localization factors (1, 4) at threshold 1e-2.
std::pair<int, int> localization_bounds(const PrototypeFilter& p, double threshold);

/// CSV dump, columns: l,m,delta_f_norm,re,im,abs
void write_transmux_csv(std::ostream& os, const PrototypeFilter& p, double delta_f_norm,
                        int l_max = 8);

}  // namespace fracsim
