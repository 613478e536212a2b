// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracsim {

using cplx = std::complex<double>;

/// Dense matrix over the subcarrier x half-symbol lattice, column-major so
/// that one half-symbol instant (all subcarriers) is contiguous.
template <typename T>
class Grid {
  public:
    Grid() = default;
    Grid(int rows, int cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {
        if (rows < 0 || cols < 0)
            throw std::invalid_argument("Grid: negative dimensions");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int r, int c) { return data_[static_cast<size_t>(c) * rows_ + r]; }
    const T& operator()(int r, int c) const { return data_[static_cast<size_t>(c) * rows_ + r]; }

    T* col_data(int c) { return data_.data() + static_cast<size_t>(c) * rows_; }
    const T* col_data(int c) const { return data_.data() + static_cast<size_t>(c) * rows_; }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    template <typename U>
    bool same_shape(const Grid<U>& other) const {
        return rows_ == other.rows() && cols_ == other.cols();
    }

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

using RealGrid = Grid<double>;
using CplxGrid = Grid<cplx>;

/// Real-valued OQAM symbols on an N x M_half lattice. Subcarriers are indexed
/// 1..N in the public API (matching the usual multicarrier convention) and
/// 0..N-1 in Grid storage; operations document which they take.
struct OqamGrid {
    RealGrid symbols;                  // N rows (subcarriers) x M_half columns
    double subcarrier_spacing_hz = 0;  // epsilon
};

struct BasebandSignal {
    std::vector<cplx> samples;
    double sample_rate_hz = 0;  // N * epsilon
};

enum class Scheme { frac, naive_alamouti, single_antenna };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

/// Static configuration of the FRAC-FBMC link.
struct FracConfig {
    int n = 256;           // subcarrier count N (power of two)
    int nf = 16;           // subblock size N_F (even, divides n)
    int guard = 1;         // L_n, null subcarriers per half-subblock
    int overlap = 4;       // prototype filter overlap factor lambda
    double eps_hz = 15e3;  // subcarrier spacing
    int m_half = 28;       // half-symbol instants per burst
    int pam_levels = 2;    // 2 or 4

    int num_subblocks() const { return n / nf; }
    int payload_per_half() const { return nf / 2 - guard; }
    int payload_rows() const { return num_subblocks() * payload_per_half(); }
    double sample_rate_hz() const { return n * eps_hz; }
    int burst_samples() const { return (m_half + 2 * overlap - 1) * n / 2; }

    /// Throws std::invalid_argument when a structural invariant is violated.
    /// min_loc_l is the frequency localization bound L of the active filter;
    /// the guard band must satisfy guard >= L for the reversal cancellation.
    void validate(int min_loc_l = 1) const;
};

inline void FracConfig::validate(int min_loc_l) const {
    if (n < 16 || (n & (n - 1)) != 0)
        throw std::invalid_argument("FracConfig: n must be a power of two >= 16");
    if (nf <= 0 || nf % 2 != 0)
        throw std::invalid_argument("FracConfig: nf must be positive and even");
    if (n % nf != 0)
        throw std::invalid_argument("FracConfig: n must be divisible by nf");
    if (guard < 1)
        throw std::invalid_argument("FracConfig: guard must be >= 1");
    if (guard < min_loc_l)
        throw std::invalid_argument("FracConfig: guard must be >= filter localization bound L");
    if (nf / 2 - guard <= 0)
        throw std::invalid_argument("FracConfig: no payload subcarriers (nf/2 - guard <= 0)");
    if (overlap != 4)
        throw std::invalid_argument("FracConfig: only overlap factor 4 is supported");
    if (eps_hz <= 0)
        throw std::invalid_argument("FracConfig: eps_hz must be positive");
    if (m_half < 1)
        throw std::invalid_argument("FracConfig: m_half must be >= 1");
    if (pam_levels != 2 && pam_levels != 4)
        throw std::invalid_argument("FracConfig: pam_levels must be 2 or 4");
}

inline std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::frac: return "frac";
        case Scheme::naive_alamouti: return "naive_alamouti";
        case Scheme::single_antenna: return "single_antenna";
    }
    throw std::logic_error("unknown scheme");
}

inline Scheme scheme_from_string(const std::string& s) {
    if (s == "frac") return Scheme::frac;
    if (s == "naive_alamouti" || s == "naive") return Scheme::naive_alamouti;
    if (s == "single_antenna" || s == "single") return Scheme::single_antenna;
    throw std::invalid_argument("unknown scheme '" + s + "'");
}

}  // namespace fracsim
