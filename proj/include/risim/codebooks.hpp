// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "risim/channels.hpp"
#include "risim/linalg.hpp"
#include "risim/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace risim {

// Discrete reflection-coefficient alphabet: 2^bits unit-modulus values
// exp(j 2 pi k / 2^bits), k = 0 .. 2^bits - 1.
struct PhaseAlphabet {
    int bits = 1;
    cvec values;
};

PhaseAlphabet build_alphabet(int bits);  // 1 <= bits <= 16

// Index of the alphabet value nearest (in Euclidean distance, equivalently in
// circular angle distance) to the unit-modulus input. Ties break toward the
// lowest index. Throws std::invalid_argument if | |z| - 1 | > 1e-9.
std::uint32_t quantize(cd z, const PhaseAlphabet& alphabet);

// Same, for a raw phase in radians (no modulus check).
std::uint32_t quantize_angle(double theta, const PhaseAlphabet& alphabet);

// A reflection codebook over a discrete alphabet. Words are index vectors of
// length n_elements; pairwise distinct by construction.
struct Codebook {
    PhaseAlphabet alphabet;
    std::vector<std::vector<std::uint32_t>> words;
};

// Alphabet index vectors -> complex reflection vectors.
std::vector<cvec> materialize(const Codebook& cb);
cvec materialize_word(const std::vector<std::uint32_t>& word, const PhaseAlphabet& alphabet);

struct EnvCodebookOptions {
    // Total word-draw attempts allowed before giving up; 0 means 1000 * t_words.
    std::size_t attempt_cap = 0;
    // Consecutive duplicate draws tolerated before the generator concludes the
    // draw distribution is exhausted. Only meaningful with random_fill.
    std::size_t stall_limit = 200;
    // When the draw distribution stalls (near-deterministic virtual channels
    // after quantization), fill the remaining slots with dedup-checked uniform
    // words instead of failing. Keeps high-K runs feasible while preserving
    // distinctness; disable to get a hard ConvergenceError instead.
    bool random_fill = true;
};

// One set of alignment phases from the statistical-CSI generator: for each
// element n, psi_n = ang_r(n) - ang_d - ang_g(n), where each ang term is the
// phase of sqrt(K) * los + CN(0,1) for its link (the draw is skipped when K is
// infinite). los entries must be unit-modulus; m_ref is the 0-based reference
// antenna.
std::vector<double> env_aware_phases(const LosComponents& los, double k_d, double k_r,
                                     double k_g, std::size_t m_ref, Rng& rng);

// Environment-aware codebook: t_words distinct quantized words drawn from
// env_aware_phases. Duplicates are regenerated; see EnvCodebookOptions for the
// stall/fill/abort behavior. Throws ConfigError when t_words exceeds the
// alphabet capacity 2^(bits * n), ConvergenceError when the attempt cap is
// exhausted.
Codebook env_aware_codebook(const LosComponents& los, double k_d, double k_r, double k_g,
                            std::size_t t_words, std::size_t m_ref,
                            const PhaseAlphabet& alphabet, Rng& rng,
                            const EnvCodebookOptions& opts = {});

// t_words distinct uniform words over the alphabet. Same capacity and attempt
// cap semantics (cap 0 means 1000 * t_words).
Codebook random_codebook(std::size_t t_words, std::size_t n_elements,
                         const PhaseAlphabet& alphabet, Rng& rng, std::size_t attempt_cap = 0);

// A single uniform word (random phase-shift configuration), no dedup.
std::vector<std::uint32_t> rps_vector(std::size_t n_elements, const PhaseAlphabet& alphabet,
                                      Rng& rng);

// First t_words columns of the n-point DFT matrix as continuous reflection
// vectors (exempt from the discrete alphabet). Requires t_words <= n_elements.
std::vector<cvec> dft_codebook(std::size_t t_words, std::size_t n_elements);

// CSV audit dump: one comment header recording scheme/bits/n/t/seed, then one
// row of alphabet indices per word. read_codebook_csv round-trips it.
void write_codebook_csv(const Codebook& cb, const std::string& scheme, std::uint64_t seed,
                        const std::string& path);
struct CodebookFile {
    Codebook codebook;
    std::string scheme;
    std::uint64_t seed = 0;
};
CodebookFile read_codebook_csv(const std::string& path);

}  // namespace risim
