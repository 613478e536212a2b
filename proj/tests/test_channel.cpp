// SPDX-License-Identifier: Apache-2.0
//
// Tap-delay profiles, Rayleigh realizations, the channel operator and the
// exact subcarrier response.

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "fracsim/channel.hpp"

using namespace fracsim;

namespace {

FracConfig config256() {
    FracConfig cfg;
    cfg.n = 256;
    cfg.nf = 16;
    cfg.guard = 1;
    cfg.m_half = 12;
    return cfg;
}

}  // namespace

TEST_CASE("built-in profiles carry the published tap tables") {
    const auto flat = load_profile("flat");
    CHECK(flat.delays_s.size() == 1);
    CHECK(flat.powers_db[0] == 0.0);

    const auto pa = load_profile("itu_pa");
    CHECK(pa.delays_s.size() == 4);
    CHECK(pa.delays_s.back() == doctest::Approx(410e-9));
    CHECK(pa.powers_db == std::vector<double>{0.0, -9.7, -19.2, -22.8});

    const auto va = load_profile("itu_va");
    CHECK(va.delays_s.size() == 6);
    CHECK(va.delays_s.back() == doctest::Approx(2510e-9));
    CHECK(va.powers_db == std::vector<double>{0.0, -1.0, -9.0, -10.0, -15.0, -20.0});

    CHECK_THROWS_AS(load_profile("itu_px"), std::invalid_argument);
}

TEST_CASE("profile file loading") {
    std::istringstream good("name = custom2\ndelays_ns = 0, 500\npowers_db = 0, -3\n");
    const auto p = load_profile_stream(good);
    CHECK(p.name == "custom2");
    CHECK(p.delays_s[1] == doctest::Approx(500e-9));
    CHECK(p.powers_db[1] == -3.0);

    std::istringstream missing("name = x\ndelays_ns = 0\n");
    CHECK_THROWS_AS(load_profile_stream(missing), std::invalid_argument);
    std::istringstream unsorted("name = x\ndelays_ns = 10, 0\npowers_db = 0, 0\n");
    CHECK_THROWS_AS(load_profile_stream(unsorted), std::invalid_argument);
    CHECK_THROWS_AS(load_profile_file("/nonexistent/profile.txt"), std::invalid_argument);
}

TEST_CASE("realization statistics") {
    const double eps = 15e3, fs = 256 * eps;
    Rng rng(100);

    SUBCASE("flat: single Rayleigh tap with unit mean power") {
        double acc = 0.0;
        const int n = 20000;
        const auto profile = load_profile("flat");
        for (int i = 0; i < n; ++i) {
            const auto ch = realize(profile, 0.0, eps, fs, rng);
            CHECK(ch.taps.size() == 1);
            CHECK(ch.tap_samples[0] == 0);
            acc += std::norm(ch.taps[0]);
        }
        CHECK(acc / n == doctest::Approx(1.0).epsilon(0.03));
    }
    SUBCASE("itu_pa: total mean power is one") {
        double acc = 0.0;
        const int n = 100000;
        const auto profile = load_profile("itu_pa");
        for (int i = 0; i < n; ++i) {
            const auto ch = realize(profile, 0.0, eps, fs, rng);
            for (const auto& t : ch.taps) acc += std::norm(t);
        }
        CHECK(acc / n == doctest::Approx(1.0).epsilon(0.02));
    }
    SUBCASE("offset scaling and delay quantization at 3.84 MHz") {
        const auto ch = realize(load_profile("itu_pa"), 0.3, eps, fs, rng);
        CHECK(ch.f_offset_hz == doctest::Approx(4500.0));
        CHECK(ch.tap_samples == std::vector<int>{0, 0, 1, 2});
        const auto va = realize(load_profile("itu_va"), 0.0, eps, fs, rng);
        CHECK(va.tap_samples == std::vector<int>{0, 1, 3, 4, 7, 10});
        CHECK_THROWS_AS(realize(load_profile("flat"), 0.7, eps, fs, rng), std::invalid_argument);
    }
}

TEST_CASE("apply_channel") {
    const double fs = 256 * 15e3;
    BasebandSignal sig;
    sig.sample_rate_hz = fs;
    for (int i = 0; i < 300; ++i)
        sig.samples.push_back(cplx(std::sin(0.1 * i), std::cos(0.23 * i)));

    SUBCASE("identity channel") {
        ChannelRealization id{{cplx{1.0, 0.0}}, {0}, 0.0};
        const auto out = apply_channel(sig, id);
        REQUIRE(out.samples.size() == sig.samples.size());
        for (size_t i = 0; i < out.samples.size(); ++i) CHECK(out.samples[i] == sig.samples[i]);
    }
    SUBCASE("pure half-spacing offset rotates by pi t / N") {
        const int n = 256;
        ChannelRealization ch{{cplx{1.0, 0.0}}, {0}, 0.5 * 15e3};
        const auto out = apply_channel(sig, ch);
        for (size_t t = 0; t < out.samples.size(); ++t) {
            const cplx want =
                sig.samples[t] * std::polar(1.0, std::numbers::pi * static_cast<double>(t) / n);
            CHECK(std::abs(out.samples[t] - want) < 1e-12);
        }
    }
    SUBCASE("two taps match a direct convolution") {
        ChannelRealization ch{{cplx{0.6, 0.3}, cplx{-0.2, 0.7}}, {0, 5}, 0.0};
        const auto out = apply_channel(sig, ch);
        REQUIRE(out.samples.size() == sig.samples.size() + 5);
        for (size_t t = 0; t < out.samples.size(); ++t) {
            cplx want = 0.0;
            if (t < sig.samples.size()) want += ch.taps[0] * sig.samples[t];
            if (t >= 5 && t - 5 < sig.samples.size()) want += ch.taps[1] * sig.samples[t - 5];
            CHECK(std::abs(out.samples[t] - want) < 1e-12);
        }
    }
    SUBCASE("linearity is exact") {
        ChannelRealization ch{{cplx{0.6, 0.3}, cplx{-0.2, 0.7}}, {0, 3}, 0.2 * 15e3};
        BasebandSignal a = sig, b = sig;
        for (size_t i = 0; i < b.samples.size(); ++i) b.samples[i] = cplx(0.1 * i, -0.05 * i);
        const cplx ca{1.3, -0.4}, cb{-2.0, 0.6};
        BasebandSignal mix = a;
        for (size_t i = 0; i < mix.samples.size(); ++i)
            mix.samples[i] = ca * a.samples[i] + cb * b.samples[i];
        const auto out_mix = apply_channel(mix, ch);
        const auto out_a = apply_channel(a, ch);
        const auto out_b = apply_channel(b, ch);
        for (size_t i = 0; i < out_mix.samples.size(); ++i)
            CHECK(std::abs(out_mix.samples[i] - (ca * out_a.samples[i] + cb * out_b.samples[i])) <
                  1e-9);
    }
}

TEST_CASE("awgn statistics") {
    BasebandSignal sig;
    sig.sample_rate_hz = 1.0;
    sig.samples.assign(1000000, cplx{0.0, 0.0});
    Rng rng(7);

    SUBCASE("zero variance is the identity") {
        const auto out = add_awgn(sig, 0.0, rng);
        for (const auto& s : out.samples) CHECK(s == cplx{0.0, 0.0});
        CHECK_THROWS_AS(add_awgn(sig, -1.0, rng), std::invalid_argument);
    }
    SUBCASE("unit variance and whiteness") {
        const auto out = add_awgn(sig, 1.0, rng);
        double var = 0.0;
        cplx lag1 = 0.0;
        for (size_t i = 0; i < out.samples.size(); ++i) {
            var += std::norm(out.samples[i]);
            if (i + 1 < out.samples.size()) lag1 += out.samples[i] * std::conj(out.samples[i + 1]);
        }
        var /= out.samples.size();
        CHECK(var == doctest::Approx(1.0).epsilon(0.01));
        CHECK(std::abs(lag1) / out.samples.size() < 3.0 / std::sqrt(1e6));
    }
}

TEST_CASE("subblock response") {
    const auto cfg = config256();

    SUBCASE("single zero-delay tap is flat") {
        ChannelRealization ch{{cplx{0.3, -1.1}}, {0}, 0.0};
        for (int q : {0, 7, 15})
            for (int k : {1, 8, 16})
                CHECK(std::abs(subblock_response(ch, q, k, cfg) - ch.taps[0]) < 1e-15);
    }
    SUBCASE("two-point half-period channel alternates 0 and sqrt(2)") {
        const double g = 1.0 / std::sqrt(2.0);
        ChannelRealization ch{{cplx{g, 0.0}, cplx{g, 0.0}}, {0, cfg.n / 2}, 0.0};
        for (int k = 1; k <= cfg.nf; ++k) {
            const double mag = std::abs(subblock_response(ch, 0, k, cfg));
            if (k % 2 == 0) CHECK(mag == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
            else CHECK(mag < 1e-12);
        }
    }
    SUBCASE("random four-tap channel equals a DFT of the impulse response") {
        Rng rng(3);
        ChannelRealization ch;
        ch.taps = {cplx(rng.gaussian(), rng.gaussian()), cplx(rng.gaussian(), rng.gaussian()),
                   cplx(rng.gaussian(), rng.gaussian()), cplx(rng.gaussian(), rng.gaussian())};
        ch.tap_samples = {0, 2, 5, 9};
        std::vector<cplx> impulse(cfg.n, cplx{0.0, 0.0});
        for (size_t i = 0; i < ch.taps.size(); ++i) impulse[ch.tap_samples[i]] += ch.taps[i];
        for (int q : {0, 5}) {
            for (int k : {1, 7, 16}) {
                cplx dft = 0.0;
                const int bin = (k + q * cfg.nf) % cfg.n;
                for (int t = 0; t < cfg.n; ++t)
                    dft += impulse[t] *
                           std::polar(1.0, -2.0 * std::numbers::pi * bin * t / double(cfg.n));
                CHECK(std::abs(subblock_response(ch, q, k, cfg) - dft) < 1e-12);
            }
        }
    }
    SUBCASE("index validation") {
        ChannelRealization ch{{cplx{1.0, 0.0}}, {0}, 0.0};
        CHECK_THROWS_AS(subblock_response(ch, -1, 1, cfg), std::invalid_argument);
        CHECK_THROWS_AS(subblock_response(ch, 0, 0, cfg), std::invalid_argument);
        CHECK_THROWS_AS(subblock_response(ch, 0, cfg.nf + 1, cfg), std::invalid_argument);
    }
}

TEST_CASE("quasi-static deviation shrinks with the subblock size") {
    Rng rng(42);
    const double eps = 15e3;
    const auto profile = load_profile("itu_pa");
    const auto ch = realize(profile, 0.0, eps, 256 * eps, rng);
    auto cfg_for = [&](int nf) {
        FracConfig cfg;
        cfg.n = 256;
        cfg.nf = nf;
        cfg.guard = 1;
        return cfg;
    };
    const double d64 = quasi_static_deviation(ch, cfg_for(64));
    const double d16 = quasi_static_deviation(ch, cfg_for(16));
    const double d8 = quasi_static_deviation(ch, cfg_for(8));
    CHECK(d16 < d64);
    CHECK(d8 < d16);
}
