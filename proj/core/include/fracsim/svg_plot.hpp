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

enum class PlotAxis { snr, iafo, nf };

PlotAxis plot_axis_from_string(const std::string& s);

/// Self-contained SVG: log-scale BER on y, the chosen sweep coordinate on x,
/// one polyline per (scheme, other-coordinate) group with ci95 error bars.
void render_ber_svg(std::ostream& os, const std::vector<BerRecord>& records, PlotAxis x_axis,
                    const std::string& title = "");

}  // namespace fracsim
