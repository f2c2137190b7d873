// SPDX-License-Identifier: Apache-2.0
#include "risim/theory.hpp"

#include "risim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

namespace risim {

namespace {

constexpr double euler_mascheroni = 0.57721566490153286;
constexpr double two_pi = 2.0 * std::numbers::pi;

struct RicianWeights {
    double k1;  // sqrt(k/(1+k)), LoS weight
    double k2;  // sqrt(1/(1+k)), NLoS weight
};

RicianWeights weights(double k_r) {
    if (std::isinf(k_r)) return {1.0, 0.0};
    return {std::sqrt(k_r / (1.0 + k_r)), std::sqrt(1.0 / (1.0 + k_r))};
}

// One trial of the M = 1, blocked-direct-path training sweep: returns the
// running best |phi^T d|^2 at each requested prefix length.
std::vector<double> trial_prefix_power(const TheoryParams& p,
                                       const std::vector<std::size_t>& t_grid,
                                       const PhaseAlphabet& alphabet, const TheoryMcOptions& opts,
                                       std::uint64_t seed, std::size_t trial) {
    const std::size_t n = p.n_elements;
    const std::size_t t_max = t_grid.back();
    Rng rng = Rng::substream(seed, stream::theory, trial);

    LosComponents los;
    los.h_d = cvec{cd{1.0, 0.0}};
    los.h_r.resize(n);
    los.g = cmat(n, 1);
    if (opts.fixture) {
        for (std::size_t i = 0; i < n; ++i) {
            los.h_r[i] = std::polar(1.0, opts.fixture->theta_r[i]);
            los.g(i, 0) = std::polar(1.0, opts.fixture->theta_g[i]);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) los.h_r[i] = std::polar(1.0, two_pi * rng.uniform());
        for (std::size_t i = 0; i < n; ++i) los.g(i, 0) = std::polar(1.0, two_pi * rng.uniform());
    }

    const Codebook cb = env_aware_codebook(los, std::numeric_limits<double>::infinity(), p.k_r,
                                           std::numeric_limits<double>::infinity(), t_max,
                                           /*m_ref=*/0, alphabet, rng, opts.codebook);

    // Unit-power Rician fade on the RIS-UE link; the BS-RIS link stays LoS.
    const RicianWeights w = weights(p.k_r);
    cvec d(n);
    for (std::size_t i = 0; i < n; ++i) {
        const cd h_r = std::isinf(p.k_r) ? los.h_r[i]
                                         : w.k1 * los.h_r[i] + w.k2 * rng.cgaussian();
        d[i] = std::conj(h_r) * los.g(i, 0);
    }

    std::vector<double> out(t_grid.size());
    double best = 0.0;
    std::size_t grid_pos = 0;
    for (std::size_t t = 0; t < t_max; ++t) {
        cd s{0.0, 0.0};
        const auto& word = cb.words[t];
        for (std::size_t i = 0; i < n; ++i) s += alphabet.values[word[i]] * d[i];
        best = std::max(best, std::norm(s));
        while (grid_pos < t_grid.size() && t_grid[grid_pos] == t + 1) out[grid_pos++] = best;
    }
    return out;
}

}  // namespace

void TheoryParams::validate() const {
    if (!(p_d > 0.0) || !(beta_r > 0.0) || !(beta_g > 0.0))
        throw std::invalid_argument("theory params: powers and gains must be positive");
    if (n_elements == 0 || t_words == 0)
        throw std::invalid_argument("theory params: n_elements and t_words must be positive");
    if (!(k_r >= 0.0)) throw std::invalid_argument("theory params: k_r must be >= 0");
    if (bits < 1 || bits > 16) throw std::invalid_argument("theory params: bits must be in [1, 16]");
}

double received_power_bound(const TheoryParams& p) {
    p.validate();
    const RicianWeights w = weights(p.k_r);
    const double n = static_cast<double>(p.n_elements);
    const double log_t = std::log2(static_cast<double>(p.t_words));
    const double term_los = n * n * w.k1 * w.k1;
    const double term_sel = n * w.k2 * w.k2 * (log_t + euler_mascheroni);
    const double term_mix = n * n * w.k1 * w.k2 * std::sqrt(std::numbers::pi);
    return p.p_d * p.beta_r * p.beta_g * (term_los + term_sel + term_mix);
}

PowerBoundLimits received_power_limits(const TheoryParams& p, int a_bits) {
    p.validate();
    if (a_bits < 1 || a_bits > 16)
        throw std::invalid_argument("received_power_limits: a_bits must be in [1, 16]");
    const RicianWeights w = weights(p.k_r);
    const double n = static_cast<double>(p.n_elements);
    const double scale = p.p_d * p.beta_r * p.beta_g;
    PowerBoundLimits lim;
    lim.pure_los = scale * n * n;
    lim.pure_nlos = scale * n * (std::log2(static_cast<double>(p.t_words)) + euler_mascheroni);
    TheoryParams one = p;
    one.t_words = 1;
    lim.t_one = received_power_bound(one);
    lim.t_max = static_cast<double>(a_bits) * scale * n * n * w.k2 * w.k2;
    return lim;
}

std::vector<double> simulated_received_power(const TheoryParams& p,
                                             const std::vector<std::size_t>& t_grid,
                                             std::size_t trials, std::uint64_t seed,
                                             const TheoryMcOptions& opts) {
    p.validate();
    if (trials == 0) throw std::invalid_argument("simulated_received_power: trials must be >= 1");
    if (t_grid.empty()) throw std::invalid_argument("simulated_received_power: empty T grid");
    if (!std::is_sorted(t_grid.begin(), t_grid.end()) ||
        std::adjacent_find(t_grid.begin(), t_grid.end()) != t_grid.end() || t_grid.front() == 0)
        throw std::invalid_argument("simulated_received_power: T grid must be strictly increasing and positive");
    if (opts.fixture && (opts.fixture->theta_r.size() != p.n_elements ||
                         opts.fixture->theta_g.size() != p.n_elements))
        throw std::invalid_argument("simulated_received_power: fixture length mismatch");

    const PhaseAlphabet alphabet = build_alphabet(p.bits);
    std::vector<std::vector<double>> per_trial(trials);
    std::exception_ptr failure;

    if (opts.parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(trials); ++k) {
            try {
                per_trial[k] = trial_prefix_power(p, t_grid, alphabet, opts, seed,
                                                  static_cast<std::size_t>(k));
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
    } else {
        for (std::size_t k = 0; k < trials; ++k)
            per_trial[k] = trial_prefix_power(p, t_grid, alphabet, opts, seed, k);
    }
    if (failure) std::rethrow_exception(failure);

    // In-order reduction: identical result for serial and parallel execution.
    const double scale = p.p_d * p.beta_r * p.beta_g / static_cast<double>(trials);
    std::vector<double> means(t_grid.size(), 0.0);
    for (std::size_t k = 0; k < trials; ++k)
        for (std::size_t j = 0; j < t_grid.size(); ++j) means[j] += per_trial[k][j];
    for (double& v : means) v *= scale;
    return means;
}

double simulated_received_power(const TheoryParams& p, std::size_t trials, std::uint64_t seed,
                                const TheoryMcOptions& opts) {
    return simulated_received_power(p, {p.t_words}, trials, seed, opts).front();
}

}  // namespace risim
