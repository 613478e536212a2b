// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fracsim/harness.hpp"

namespace fracsim {

/// key = value sweep description, lists comma-separated, '#' comments:
///   scheme = frac
///   channel = flat
///   snr_db = 0, 5, 10, 15, 20
///   iafo_norm = 0, 0.3
///   nf_half = 128
///   trials = 2000
///   seed = 1
SweepConfig parse_sweep_config(std::istream& is);
SweepConfig load_sweep_config(const std::string& path);

/// Header is bit-exact:
/// scheme,channel,snr_db,iafo_norm,nf_half,trials,bits,bit_errors,ber,ci95
void write_ber_csv(std::ostream& os, const std::vector<BerRecord>& records,
                   bool incomplete = false);

struct CsvError : std::runtime_error {
    explicit CsvError(int line_number, const std::string& what)
        : std::runtime_error(what), line(line_number) {}
    int line;
};

/// Parses a file produced by write_ber_csv; throws CsvError with the
/// offending line number on malformed input.
std::vector<BerRecord> read_ber_csv(std::istream& is);

}  // namespace fracsim
