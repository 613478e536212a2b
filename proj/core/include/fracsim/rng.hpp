// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#pragma once

#include <cstdint>
#include <random>

namespace fracsim {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Child seed for one Monte Carlo trial. Derived from (master seed, grid
/// point index, trial index) so that results do not depend on how trials are
/// scheduled across workers.
inline uint64_t derive_seed(uint64_t master, uint64_t point, uint64_t trial) {
    uint64_t s = splitmix64(master ^ splitmix64(point));
    return splitmix64(s ^ splitmix64(trial + 0x1F123BB5ull));
}

class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    double uniform() { return unif_(eng_); }
    double gaussian() { return norm_(eng_); }
    uint64_t bits() { return eng_(); }
    bool coin() { return (eng_() & 1ull) != 0; }

    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
    std::normal_distribution<double> norm_{0.0, 1.0};
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

}  // namespace fracsim
