// SPDX-License-Identifier: Apache-2.0
#include "risim/codebooks.hpp"

#include "risim/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace risim {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// True when t_words exceeds the 2^(bits * n) distinct-word capacity. Widths
// of 64 bits or more cannot be exceeded by any representable t_words.
bool over_capacity(std::size_t t_words, int bits, std::size_t n_elements) {
    const std::size_t width = static_cast<std::size_t>(bits) * n_elements;
    if (width >= 64) return false;
    return t_words > (std::uint64_t{1} << width);
}

double link_phase(cd los_entry, double k, Rng& rng) {
    if (std::isinf(k)) return std::arg(los_entry);
    return std::arg(std::sqrt(k) * los_entry + rng.cgaussian());
}

std::vector<std::uint32_t> draw_env_word(const LosComponents& los, double k_d, double k_r,
                                         double k_g, std::size_t m_ref,
                                         const PhaseAlphabet& alphabet, Rng& rng) {
    const std::vector<double> psi = env_aware_phases(los, k_d, k_r, k_g, m_ref, rng);
    std::vector<std::uint32_t> word(psi.size());
    for (std::size_t n = 0; n < psi.size(); ++n) word[n] = quantize_angle(psi[n], alphabet);
    return word;
}

std::vector<std::uint32_t> draw_uniform_word(std::size_t n_elements, const PhaseAlphabet& alphabet,
                                             Rng& rng) {
    std::vector<std::uint32_t> word(n_elements);
    const std::uint64_t size = alphabet.values.size();
    for (std::size_t n = 0; n < n_elements; ++n)
        word[n] = static_cast<std::uint32_t>(rng.integer(size));
    return word;
}

}  // namespace

PhaseAlphabet build_alphabet(int bits) {
    if (bits < 1 || bits > 16) throw std::invalid_argument("alphabet: bits must be in [1, 16]");
    PhaseAlphabet a;
    a.bits = bits;
    const std::size_t size = std::size_t{1} << bits;
    a.values.resize(size);
    const double step = two_pi / static_cast<double>(size);
    for (std::size_t k = 0; k < size; ++k)
        a.values[k] = std::polar(1.0, step * static_cast<double>(k));
    return a;
}

std::uint32_t quantize_angle(double theta, const PhaseAlphabet& alphabet) {
    const auto size = static_cast<std::int64_t>(alphabet.values.size());
    const double step = two_pi / static_cast<double>(size);
    const double t = theta / step;
    const auto k0 = static_cast<std::int64_t>(std::floor(t));
    // Candidates below and above; equal distances break toward the lower
    // wrapped index, not the lower angle.
    const double d0 = std::abs(theta - static_cast<double>(k0) * step);
    const double d1 = std::abs(static_cast<double>(k0 + 1) * step - theta);
    const auto wrap = [size](std::int64_t k) {
        return static_cast<std::uint32_t>(((k % size) + size) % size);
    };
    const std::uint32_t i0 = wrap(k0);
    const std::uint32_t i1 = wrap(k0 + 1);
    if (d0 < d1) return i0;
    if (d1 < d0) return i1;
    return std::min(i0, i1);
}

std::uint32_t quantize(cd z, const PhaseAlphabet& alphabet) {
    if (std::abs(std::abs(z) - 1.0) > 1e-9)
        throw std::invalid_argument("quantize: input must be unit-modulus");
    return quantize_angle(std::arg(z), alphabet);
}

std::vector<cvec> materialize(const Codebook& cb) {
    std::vector<cvec> out;
    out.reserve(cb.words.size());
    for (const auto& w : cb.words) out.push_back(materialize_word(w, cb.alphabet));
    return out;
}

cvec materialize_word(const std::vector<std::uint32_t>& word, const PhaseAlphabet& alphabet) {
    cvec v(word.size());
    for (std::size_t n = 0; n < word.size(); ++n) v[n] = alphabet.values.at(word[n]);
    return v;
}

std::vector<double> env_aware_phases(const LosComponents& los, double k_d, double k_r,
                                     double k_g, std::size_t m_ref, Rng& rng) {
    const std::size_t n_elements = los.h_r.size();
    if (m_ref >= los.h_d.size()) throw std::invalid_argument("env_aware_phases: m_ref out of range");
    if (los.g.rows != n_elements || los.g.cols != los.h_d.size())
        throw std::invalid_argument("env_aware_phases: LoS shape mismatch");
    // Draw order is part of the reproducibility contract: direct term first,
    // then per element the RIS-UE term followed by the BS-RIS term.
    const double ang_d = link_phase(los.h_d[m_ref], k_d, rng);
    std::vector<double> psi(n_elements);
    for (std::size_t n = 0; n < n_elements; ++n) {
        const double ang_r = link_phase(los.h_r[n], k_r, rng);
        const double ang_g = link_phase(los.g(n, m_ref), k_g, rng);
        psi[n] = ang_r - ang_d - ang_g;
    }
    return psi;
}

Codebook env_aware_codebook(const LosComponents& los, double k_d, double k_r, double k_g,
                            std::size_t t_words, std::size_t m_ref,
                            const PhaseAlphabet& alphabet, Rng& rng,
                            const EnvCodebookOptions& opts) {
    if (t_words == 0) throw std::invalid_argument("env_aware_codebook: t_words must be positive");
    const std::size_t n_elements = los.h_r.size();
    if (over_capacity(t_words, alphabet.bits, n_elements))
        throw ConfigError("env_aware_codebook: t_words exceeds alphabet capacity 2^(bits*n)");

    const std::size_t cap = opts.attempt_cap ? opts.attempt_cap : 1000 * t_words;
    Codebook cb;
    cb.alphabet = alphabet;
    std::set<std::vector<std::uint32_t>> seen;
    std::size_t attempts = 0;
    std::size_t consecutive_dups = 0;
    bool fill_mode = false;

    while (cb.words.size() < t_words) {
        if (attempts >= cap)
            throw ConvergenceError("env_aware_codebook: attempt cap exhausted before " +
                                   std::to_string(t_words) + " distinct words");
        ++attempts;
        std::vector<std::uint32_t> word =
            fill_mode ? draw_uniform_word(n_elements, alphabet, rng)
                      : draw_env_word(los, k_d, k_r, k_g, m_ref, alphabet, rng);
        if (seen.insert(word).second) {
            cb.words.push_back(std::move(word));
            consecutive_dups = 0;
        } else {
            ++consecutive_dups;
            if (!fill_mode && opts.random_fill && consecutive_dups >= opts.stall_limit)
                fill_mode = true;
        }
    }
    return cb;
}

Codebook random_codebook(std::size_t t_words, std::size_t n_elements,
                         const PhaseAlphabet& alphabet, Rng& rng, std::size_t attempt_cap) {
    if (t_words == 0) throw std::invalid_argument("random_codebook: t_words must be positive");
    if (n_elements == 0) throw std::invalid_argument("random_codebook: n_elements must be positive");
    if (over_capacity(t_words, alphabet.bits, n_elements))
        throw ConfigError("random_codebook: t_words exceeds alphabet capacity 2^(bits*n)");

    const std::size_t cap = attempt_cap ? attempt_cap : 1000 * t_words;
    Codebook cb;
    cb.alphabet = alphabet;
    std::set<std::vector<std::uint32_t>> seen;
    std::size_t attempts = 0;
    while (cb.words.size() < t_words) {
        if (attempts >= cap)
            throw ConvergenceError("random_codebook: attempt cap exhausted before " +
                                   std::to_string(t_words) + " distinct words");
        ++attempts;
        std::vector<std::uint32_t> word = draw_uniform_word(n_elements, alphabet, rng);
        if (seen.insert(word).second) cb.words.push_back(std::move(word));
    }
    return cb;
}

std::vector<std::uint32_t> rps_vector(std::size_t n_elements, const PhaseAlphabet& alphabet,
                                      Rng& rng) {
    if (n_elements == 0) throw std::invalid_argument("rps_vector: n_elements must be positive");
    return draw_uniform_word(n_elements, alphabet, rng);
}

std::vector<cvec> dft_codebook(std::size_t t_words, std::size_t n_elements) {
    if (t_words == 0 || n_elements == 0)
        throw std::invalid_argument("dft_codebook: empty codebook or array");
    if (t_words > n_elements)
        throw ConfigError("dft_codebook: t_words must not exceed n_elements");
    std::vector<cvec> words(t_words, cvec(n_elements));
    const double step = two_pi / static_cast<double>(n_elements);
    for (std::size_t t = 0; t < t_words; ++t)
        for (std::size_t n = 0; n < n_elements; ++n)
            words[t][n] = std::polar(1.0, step * static_cast<double>(t) * static_cast<double>(n));
    return words;
}

void write_codebook_csv(const Codebook& cb, const std::string& scheme, std::uint64_t seed,
                        const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write codebook CSV: " + path);
    const std::size_t n = cb.words.empty() ? 0 : cb.words.front().size();
    out << "# scheme=" << scheme << " bits=" << cb.alphabet.bits << " n_elements=" << n
        << " t_words=" << cb.words.size() << " seed=" << seed << "\n";
    for (const auto& word : cb.words) {
        for (std::size_t i = 0; i < word.size(); ++i) {
            if (i) out << ',';
            out << word[i];
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failure on codebook CSV: " + path);
}

CodebookFile read_codebook_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read codebook CSV: " + path);
    std::string header;
    if (!std::getline(in, header) || header.rfind("# ", 0) != 0)
        throw std::runtime_error("malformed codebook CSV header: " + path);

    CodebookFile file;
    int bits = 0;
    std::size_t n_elements = 0;
    std::size_t t_words = 0;
    std::istringstream hs(header.substr(2));
    std::string tok;
    while (hs >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "scheme") file.scheme = val;
        else if (key == "bits") bits = std::stoi(val);
        else if (key == "n_elements") n_elements = std::stoul(val);
        else if (key == "t_words") t_words = std::stoul(val);
        else if (key == "seed") file.seed = std::stoull(val);
    }
    file.codebook.alphabet = build_alphabet(bits);
    const auto size = static_cast<std::uint32_t>(file.codebook.alphabet.values.size());

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::uint32_t> word;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            const unsigned long v = std::stoul(cell);
            if (v >= size) throw std::runtime_error("codebook CSV index out of range: " + path);
            word.push_back(static_cast<std::uint32_t>(v));
        }
        if (word.size() != n_elements)
            throw std::runtime_error("codebook CSV row length mismatch: " + path);
        file.codebook.words.push_back(std::move(word));
    }
    if (file.codebook.words.size() != t_words)
        throw std::runtime_error("codebook CSV row count mismatch: " + path);
    return file;
}

}  // namespace risim
