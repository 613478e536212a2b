// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#include "fracsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace fracsim {

TapDelayProfile load_profile(std::string_view name) {
    if (name == "flat") return {"flat", {0.0}, {0.0}};
    if (name == "itu_pa")
        return {"itu_pa",
                {0.0, 110e-9, 190e-9, 410e-9},
                {0.0, -9.7, -19.2, -22.8}};
    if (name == "itu_va")
        return {"itu_va",
                {0.0, 310e-9, 710e-9, 1090e-9, 1730e-9, 2510e-9},
                {0.0, -1.0, -9.0, -10.0, -15.0, -20.0}};
    throw std::invalid_argument("load_profile: unknown profile '" + std::string(name) + "'");
}

namespace {

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        double v = std::stod(tok, &pos);
        out.push_back(v);
    }
    return out;
}

}  // namespace

TapDelayProfile load_profile_stream(std::istream& is) {
    TapDelayProfile p;
    std::string line;
    while (std::getline(is, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "name") p.name = val;
        else if (key == "delays_ns") {
            p.delays_s = parse_list(val);
            for (double& d : p.delays_s) d *= 1e-9;
        } else if (key == "powers_db") p.powers_db = parse_list(val);
        else throw std::invalid_argument("channel profile: unknown key '" + key + "'");
    }
    if (p.name.empty() || p.delays_s.empty() || p.delays_s.size() != p.powers_db.size())
        throw std::invalid_argument("channel profile: need name and equal-length delay/power lists");
    if (!std::is_sorted(p.delays_s.begin(), p.delays_s.end()) || p.delays_s.front() < 0.0)
        throw std::invalid_argument("channel profile: delays must be nonnegative ascending");
    return p;
}

TapDelayProfile load_profile_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("channel profile: cannot open '" + path + "'");
    return load_profile_stream(f);
}

ChannelRealization realize(const TapDelayProfile& profile, double f_offset_norm, double eps_hz,
                           double sample_rate_hz, Rng& rng) {
    if (std::abs(f_offset_norm) > 0.5)
        throw std::invalid_argument("realize: |f_offset_norm| must be <= 0.5");
    const size_t nt = profile.delays_s.size();
    double total = 0.0;
    std::vector<double> lin(nt);
    for (size_t i = 0; i < nt; ++i) {
        lin[i] = std::pow(10.0, profile.powers_db[i] / 10.0);
        total += lin[i];
    }
    ChannelRealization ch;
    ch.f_offset_hz = f_offset_norm * eps_hz;
    ch.taps.resize(nt);
    ch.tap_samples.resize(nt);
    for (size_t i = 0; i < nt; ++i) {
        const double sigma = std::sqrt(lin[i] / total / 2.0);
        ch.taps[i] = cplx(sigma * rng.gaussian(), sigma * rng.gaussian());
        ch.tap_samples[i] = static_cast<int>(std::lround(profile.delays_s[i] * sample_rate_hz));
    }
    return ch;
}

BasebandSignal apply_channel(const BasebandSignal& signal, const ChannelRealization& ch) {
    if (ch.taps.empty() || ch.taps.size() != ch.tap_samples.size())
        throw std::invalid_argument("apply_channel: malformed realization");
    const int max_d = *std::max_element(ch.tap_samples.begin(), ch.tap_samples.end());
    BasebandSignal out;
    out.sample_rate_hz = signal.sample_rate_hz;
    out.samples.assign(signal.samples.size() + max_d, cplx{0.0, 0.0});
    for (size_t i = 0; i < ch.taps.size(); ++i) {
        const int d = ch.tap_samples[i];
        const cplx g = ch.taps[i];
        for (size_t t = 0; t < signal.samples.size(); ++t) out.samples[t + d] += g * signal.samples[t];
    }
    if (ch.f_offset_hz != 0.0) {
        const double w = 2.0 * std::numbers::pi * ch.f_offset_hz / signal.sample_rate_hz;
        for (size_t t = 0; t < out.samples.size(); ++t)
            out.samples[t] *= cplx(std::cos(w * t), std::sin(w * t));
    }
    return out;
}

BasebandSignal add_awgn(const BasebandSignal& signal, double noise_variance_per_sample, Rng& rng) {
    if (noise_variance_per_sample < 0.0)
        throw std::invalid_argument("add_awgn: variance must be nonnegative");
    BasebandSignal out = signal;
    if (noise_variance_per_sample == 0.0) return out;
    const double sigma = std::sqrt(noise_variance_per_sample / 2.0);
    for (cplx& s : out.samples) s += cplx(sigma * rng.gaussian(), sigma * rng.gaussian());
    return out;
}

cplx subblock_response(const ChannelRealization& ch, int q, int k, const FracConfig& cfg) {
    if (q < 0 || q >= cfg.num_subblocks() || k < 1 || k > cfg.nf)
        throw std::invalid_argument("subblock_response: index out of range");
    const double w = -2.0 * std::numbers::pi * static_cast<double>(k + q * cfg.nf) / cfg.n;
    cplx h = 0.0;
    for (size_t i = 0; i < ch.taps.size(); ++i)
        h += ch.taps[i] * cplx(std::cos(w * ch.tap_samples[i]), std::sin(w * ch.tap_samples[i]));
    return h;
}

double quasi_static_deviation(const ChannelRealization& ch, const FracConfig& cfg) {
    double worst = 0.0;
    for (int q = 0; q < cfg.num_subblocks(); ++q) {
        const cplx hc = subblock_response(ch, q, cfg.nf / 2, cfg);
        const double ref = std::abs(hc);
        for (int k = 1; k <= cfg.nf; ++k) {
            const double dev = std::abs(subblock_response(ch, q, k, cfg) - hc) / ref;
            worst = std::max(worst, dev);
        }
    }
    return worst;
}

}  // namespace fracsim
