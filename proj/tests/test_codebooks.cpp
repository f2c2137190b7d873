// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <set>
#include <vector>

#include "doctest.h"
#include "risim/codebooks.hpp"
#include "risim/errors.hpp"
#include "test_support.hpp"

using namespace risim;
using testsup::wrapped_angle_diff;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// LoS bundle with hand-picked phases, away from quantization boundaries.
LosComponents phase_los(std::size_t n, double hr_phase, double hd_phase, double g_phase) {
    LosComponents los;
    los.h_d = cvec{std::polar(1.0, hd_phase)};
    los.h_r.assign(n, cd{0.0, 0.0});
    los.g = cmat(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        los.h_r[i] = std::polar(1.0, hr_phase);
        los.g(i, 0) = std::polar(1.0, g_phase);
    }
    return los;
}

std::set<std::vector<std::uint32_t>> word_set(const Codebook& cb) {
    return {cb.words.begin(), cb.words.end()};
}

}  // namespace

TEST_SUITE("codebooks") {

TEST_CASE("alphabet enumerates the roots of unity in index order") {
    const PhaseAlphabet one = build_alphabet(1);
    REQUIRE(one.values.size() == 2);
    CHECK(std::abs(one.values[0] - cd{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(one.values[1] - cd{-1.0, 0.0}) < 1e-15);

    const PhaseAlphabet two = build_alphabet(2);
    REQUIRE(two.values.size() == 4);
    CHECK(std::abs(two.values[0] - cd{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(two.values[1] - cd{0.0, 1.0}) < 1e-15);
    CHECK(std::abs(two.values[2] - cd{-1.0, 0.0}) < 1e-15);
    CHECK(std::abs(two.values[3] - cd{0.0, -1.0}) < 1e-15);

    CHECK_THROWS_AS(build_alphabet(0), std::invalid_argument);
    CHECK_THROWS_AS(build_alphabet(17), std::invalid_argument);
}

TEST_CASE("quantization picks the nearest value, breaking ties downward") {
    const PhaseAlphabet one = build_alphabet(1);
    CHECK(quantize(std::polar(1.0, 0.3 * M_PI), one) == 0);
    CHECK(quantize(std::polar(1.0, 0.7 * M_PI), one) == 1);
    // Exactly between 1 and -1: the tie goes to the lower index.
    CHECK(quantize(cd{0.0, 1.0}, one) == 0);

    // Each alphabet value quantizes to itself.
    const PhaseAlphabet three = build_alphabet(3);
    for (std::uint32_t k = 0; k < three.values.size(); ++k)
        CHECK(quantize(three.values[k], three) == k);

    CHECK_THROWS_AS(quantize(cd{0.5, 0.0}, one), std::invalid_argument);

    CHECK(quantize_angle(0.3 * M_PI, one) == 0);
    CHECK(quantize_angle(-0.3 * M_PI, one) == 0);
    CHECK(quantize_angle(M_PI, one) == 1);
}

TEST_CASE("alignment phase fixtures in the deterministic limit") {
    SUBCASE("all-zero phases give the zero word") {
        const LosComponents los = phase_los(4, 0.0, 0.0, 0.0);
        Rng rng = Rng::substream(21, stream::codebook, 0);
        const std::vector<double> psi = env_aware_phases(los, kInf, kInf, kInf, 0, rng);
        REQUIRE(psi.size() == 4);
        for (double v : psi) CHECK(wrapped_angle_diff(v, 0.0) < 1e-14);
    }
    SUBCASE("phase bookkeeping: reflect minus direct minus incident") {
        const LosComponents los = phase_los(1, 0.6 * M_PI, 0.0, 0.2 * M_PI);
        Rng rng = Rng::substream(21, stream::codebook, 1);
        const std::vector<double> psi = env_aware_phases(los, kInf, kInf, kInf, 0, rng);
        CHECK(wrapped_angle_diff(psi[0], 0.4 * M_PI) < 1e-13);

        const PhaseAlphabet one = build_alphabet(1);
        CHECK(quantize_angle(psi[0], one) == 0);
    }
}

TEST_CASE("deterministic-limit codebook word aligns the cascade to the direct path") {
    // With infinite K factors the generated phases equal (up to quantization)
    // the values that give every cascade summand the direct path's phase.
    const std::size_t n = 6;
    LosComponents los;
    Rng rng = Rng::substream(22, stream::codebook, 2);
    los.h_d = cvec{std::polar(1.0, 0.77)};
    los.h_r.resize(n);
    los.g = cmat(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        los.h_r[i] = std::polar(1.0, 2.0 * M_PI * rng.uniform());
        los.g(i, 0) = std::polar(1.0, 2.0 * M_PI * rng.uniform());
    }
    const std::vector<double> psi = env_aware_phases(los, kInf, kInf, kInf, 0, rng);
    for (std::size_t i = 0; i < n; ++i) {
        const cd summand = std::polar(1.0, psi[i]) * std::conj(los.h_r[i]) * los.g(i, 0);
        CHECK(wrapped_angle_diff(std::arg(summand), std::arg(std::conj(los.h_d[0]))) < 1e-12);
    }
}

TEST_CASE("codebook words are distinct and prefix-stable") {
    SystemGeometry g;
    g.n_x = 16;  // one RIS row, so any element count is valid here
    const LosComponents los = los_from_angles(angles_from_geometry(g), g, 2, 16);
    const PhaseAlphabet one = build_alphabet(1);

    Rng rng_a = Rng::substream(23, stream::codebook, 3);
    Rng rng_b = Rng::substream(23, stream::codebook, 3);
    const Codebook small = env_aware_codebook(los, 0.5, 2.0, 2.5, 8, 0, one, rng_a);
    const Codebook large = env_aware_codebook(los, 0.5, 2.0, 2.5, 20, 0, one, rng_b);

    REQUIRE(small.words.size() == 8);
    REQUIRE(large.words.size() == 20);
    CHECK(word_set(small).size() == 8);
    CHECK(word_set(large).size() == 20);
    // Same stream, larger request: the first words match exactly.
    for (std::size_t t = 0; t < 8; ++t) CHECK(small.words[t] == large.words[t]);
}

TEST_CASE("capacity overflow is a configuration error") {
    const LosComponents los = phase_los(2, 0.1, 0.2, 0.3);
    const PhaseAlphabet one = build_alphabet(1);
    Rng rng = Rng::substream(24, stream::codebook, 4);
    // 2 elements at 1 bit: capacity 4 < 5 requested.
    CHECK_THROWS_AS(env_aware_codebook(los, 1.0, 1.0, 1.0, 5, 0, one, rng), ConfigError);
    Rng rng2 = Rng::substream(24, stream::codebook, 5);
    CHECK_THROWS_AS(random_codebook(5, 2, one, rng2), ConfigError);
}

TEST_CASE("near-deterministic draws stall and fall back to uniform fill") {
    // K = 1000 (30 dB): nearly every draw quantizes to the same word.
    SystemGeometry g;
    g.n_x = 12;  // one RIS row, so any element count is valid here
    const LosComponents los = los_from_angles(angles_from_geometry(g), g, 2, 12);
    const PhaseAlphabet one = build_alphabet(1);

    Rng rng = Rng::substream(25, stream::codebook, 6);
    const Codebook cb = env_aware_codebook(los, 1000.0, 1000.0, 1000.0, 10, 0, one, rng);
    REQUIRE(cb.words.size() == 10);
    CHECK(word_set(cb).size() == 10);

    EnvCodebookOptions hard;
    hard.random_fill = false;
    hard.attempt_cap = 2000;
    Rng rng2 = Rng::substream(25, stream::codebook, 7);
    CHECK_THROWS_AS(env_aware_codebook(los, 1000.0, 1000.0, 1000.0, 10, 0, one, rng2, hard),
                    ConvergenceError);
}

TEST_CASE("common phase rotation of the RIS-UE link rotates the words uniformly") {
    for (int bits = 1; bits <= 2; ++bits) {
        const PhaseAlphabet alpha = build_alphabet(bits);
        const std::size_t size = alpha.values.size();
        const double delta = 2.0 * M_PI / static_cast<double>(size);

        LosComponents los = phase_los(5, 0.0, 0.31, 0.0);
        Rng rng = Rng::substream(26, stream::codebook, 10 + static_cast<std::uint64_t>(bits));
        for (std::size_t i = 0; i < 5; ++i) {
            los.h_r[i] = std::polar(1.0, 2.0 * M_PI * rng.uniform());
            los.g(i, 0) = std::polar(1.0, 2.0 * M_PI * rng.uniform());
        }
        Rng mk = Rng::substream(27, stream::codebook, static_cast<std::uint64_t>(bits));
        const std::vector<double> base = env_aware_phases(los, kInf, kInf, kInf, 0, mk);

        LosComponents rotated = los;
        for (std::size_t i = 0; i < 5; ++i) rotated.h_r[i] *= std::polar(1.0, delta);
        Rng mk2 = Rng::substream(27, stream::codebook, static_cast<std::uint64_t>(bits));
        const std::vector<double> shifted = env_aware_phases(rotated, kInf, kInf, kInf, 0, mk2);

        for (std::size_t i = 0; i < 5; ++i) {
            const std::uint32_t q0 = quantize_angle(base[i], alpha);
            const std::uint32_t q1 = quantize_angle(shifted[i], alpha);
            CHECK(q1 == (q0 + 1) % size);
        }
    }
}

TEST_CASE("random codebook is uniform and can enumerate the whole space") {
    const PhaseAlphabet one = build_alphabet(1);

    SUBCASE("full enumeration at the capacity limit") {
        Rng rng = Rng::substream(28, stream::codebook, 20);
        const Codebook cb = random_codebook(16, 4, one, rng);
        REQUIRE(cb.words.size() == 16);
        CHECK(word_set(cb).size() == 16);  // all 2^4 words, each exactly once
    }
    SUBCASE("two-element space") {
        Rng rng = Rng::substream(28, stream::codebook, 21);
        const Codebook cb = random_codebook(2, 1, one, rng);
        std::set<std::vector<std::uint32_t>> got = word_set(cb);
        CHECK(got.count({0}) == 1);
        CHECK(got.count({1}) == 1);
    }
    SUBCASE("index frequencies are balanced") {
        const PhaseAlphabet two = build_alphabet(2);
        Rng rng = Rng::substream(28, stream::codebook, 22);
        std::size_t counts[4] = {0, 0, 0, 0};
        const std::size_t trials = 25000;
        for (std::size_t s = 0; s < trials; ++s)
            for (std::uint32_t idx : rps_vector(4, two, rng)) ++counts[idx];
        const double total = 4.0 * static_cast<double>(trials);
        for (std::size_t k = 0; k < 4; ++k) {
            const double p = static_cast<double>(counts[k]) / total;
            // 3 sigma of a Bernoulli(1/4) over 1e5 draws
            CHECK(std::abs(p - 0.25) < 3.0 * std::sqrt(0.25 * 0.75 / total));
        }
    }
}

TEST_CASE("DFT codebook columns") {
    const std::vector<cvec> cb = dft_codebook(3, 4);
    REQUIRE(cb.size() == 3);
    for (const cd& v : cb[0]) CHECK(std::abs(v - cd{1.0, 0.0}) < 1e-14);
    // Second column: phase steps of 2 pi / 4.
    for (std::size_t n = 0; n < 4; ++n) {
        CHECK(std::abs(cb[1][n] - std::polar(1.0, M_PI / 2.0 * static_cast<double>(n))) < 1e-13);
        CHECK(std::abs(std::abs(cb[2][n]) - 1.0) < 1e-14);
    }
    CHECK_THROWS_AS(dft_codebook(5, 4), ConfigError);
}

TEST_CASE("single random phase configuration is reproducible and two-valued") {
    const PhaseAlphabet one = build_alphabet(1);
    Rng rng_a = Rng::substream(29, stream::rps, 0);
    Rng rng_b = Rng::substream(29, stream::rps, 0);
    const std::vector<std::uint32_t> wa = rps_vector(64, one, rng_a);
    const std::vector<std::uint32_t> wb = rps_vector(64, one, rng_b);
    CHECK(wa == wb);

    std::size_t ones = 0;
    Rng rng = Rng::substream(29, stream::rps, 1);
    const std::size_t trials = 10000;
    for (std::size_t s = 0; s < trials; ++s) ones += rps_vector(1, one, rng)[0];
    const double p = static_cast<double>(ones) / static_cast<double>(trials);
    CHECK(std::abs(p - 0.5) < 3.0 * std::sqrt(0.25 / static_cast<double>(trials)));
}

TEST_CASE("materialize maps indices through the alphabet") {
    const PhaseAlphabet two = build_alphabet(2);
    Codebook cb;
    cb.alphabet = two;
    cb.words = {{0, 1, 2, 3}, {3, 3, 0, 0}};
    const std::vector<cvec> mats = materialize(cb);
    REQUIRE(mats.size() == 2);
    for (std::size_t t = 0; t < 2; ++t)
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(mats[t][i] == two.values[cb.words[t][i]]);
    CHECK(materialize_word(cb.words[1], two) == mats[1]);
}

TEST_CASE("codebook CSV round-trips") {
    SystemGeometry g;
    g.n_x = 8;  // one RIS row, so any element count is valid here
    const LosComponents los = los_from_angles(angles_from_geometry(g), g, 2, 8);
    const PhaseAlphabet two = build_alphabet(2);
    Rng rng = Rng::substream(30, stream::codebook, 30);
    const Codebook cb = env_aware_codebook(los, 0.5, 2.0, 2.5, 6, 0, two, rng);

    const std::string path = "codebook_roundtrip_test.csv";
    write_codebook_csv(cb, "proposed", 30, path);
    const CodebookFile file = read_codebook_csv(path);
    std::remove(path.c_str());

    CHECK(file.scheme == "proposed");
    CHECK(file.seed == 30);
    CHECK(file.codebook.alphabet.bits == 2);
    REQUIRE(file.codebook.words.size() == cb.words.size());
    for (std::size_t t = 0; t < cb.words.size(); ++t) CHECK(file.codebook.words[t] == cb.words[t]);
}

}  // TEST_SUITE
