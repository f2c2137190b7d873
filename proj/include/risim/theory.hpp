// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "risim/codebooks.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace risim {

// Parameters of the single-antenna, blocked-direct-path power-scaling study:
// the RIS-UE link is Rician with unit-power LoS entries and factor k_r, the
// BS-RIS link is pure LoS, and received power is scaled by p_d beta_r beta_g.
struct TheoryParams {
    double p_d = 1.0;
    double beta_r = 1.0;
    double beta_g = 1.0;
    std::size_t n_elements = 100;
    std::size_t t_words = 1;
    double k_r = 1.0;  // linear, may be +inf
    int bits = 1;

    void validate() const;
};

// Closed-form upper bound on the expected best received power over a T-word
// training sweep: p_d beta_r beta_g (N^2 K1^2 + N K2^2 (log2 T + C)
// + N^2 K1 K2 sqrt(pi)), K1^2 = k_r/(1+k_r), K2^2 = 1/(1+k_r), C the
// Euler-Mascheroni constant.
double received_power_bound(const TheoryParams& p);

// Asymptotic corner values of the bound: pure LoS (k_r -> inf) and pure NLoS
// (k_r = 0) channels, the single-word case, and the exhaustive-codebook case
// T = 2^(a N).
struct PowerBoundLimits {
    double pure_los = 0.0;
    double pure_nlos = 0.0;
    double t_one = 0.0;
    double t_max = 0.0;
};

PowerBoundLimits received_power_limits(const TheoryParams& p, int a_bits);

// Optional fixed LoS phases for simulated_received_power; when absent, phases
// are drawn i.i.d. uniform per trial (the ensemble the bound addresses).
struct LosPhaseFixture {
    std::vector<double> theta_r;
    std::vector<double> theta_g;
};

struct TheoryMcOptions {
    std::optional<LosPhaseFixture> fixture;
    EnvCodebookOptions codebook;
    bool parallel = true;
};

// Monte Carlo mean over trials of p_d beta_r beta_g max_t |phi_t^T d|^2 where
// d_n = conj(h_r[n]) g[n] and the words come from the statistical-CSI
// codebook generator. Evaluated at every T in t_grid using prefix codebooks
// of one length-max(t_grid) book per trial, so the result is non-decreasing
// in T trial by trial.
std::vector<double> simulated_received_power(const TheoryParams& p,
                                             const std::vector<std::size_t>& t_grid,
                                             std::size_t trials, std::uint64_t seed,
                                             const TheoryMcOptions& opts = {});

// Single-T convenience wrapper.
double simulated_received_power(const TheoryParams& p, std::size_t trials, std::uint64_t seed,
                                const TheoryMcOptions& opts = {});

}  // namespace risim
