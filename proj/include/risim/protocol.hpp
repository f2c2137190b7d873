// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "risim/channels.hpp"
#include "risim/estimation.hpp"
#include "risim/linalg.hpp"
#include "risim/rng.hpp"

#include <cstddef>
#include <vector>

namespace risim {

// Downlink data-phase parameters.
struct LinkBudget {
    double p_d = 1.0;
    double sigma2_d = 1.0;

    void validate() const;
};

enum class CsiMode { genie, ls, mmse };

// Channel-knowledge policy for the training sweep. MMSE needs a covariance:
// either one per codeword (parallel to the word list) or a single shared one.
struct Estimator {
    CsiMode mode = CsiMode::genie;
    const std::vector<ChannelCovariance>* per_word = nullptr;
    const ChannelCovariance* shared = nullptr;
};

struct TrialResult {
    std::size_t selected_index = 0;          // 0-based position in the codebook
    std::vector<double> training_metrics;    // one per codeword, in sweep order
    double realized_rate = 0.0;              // genie rate of the final beamformer
};

// log2(1 + p_d ||y||^2 / (sigma2_d * p_u)): achievable-rate proxy computed
// directly from the received pilot block (noise energy included).
double training_metric(const cvec& y, const LinkBudget& budget, const PilotConfig& pilot);

// log2(1 + p_d ||h||^2 / sigma2_d) for an explicit channel (estimate or truth).
double rate_from_channel(const cvec& h, const LinkBudget& budget);

// First index attaining the maximum metric.
std::size_t select_codeword(const std::vector<double>& metrics);

// Maximum-ratio transmission: h / ||h||. Throws std::invalid_argument on a
// zero vector.
cvec mrt_beamformer(const cvec& h);

// log2(1 + p_d |h^H w|^2 / sigma2_d) on the true channel.
double realized_rate(const cvec& h_true, const cvec& w, const LinkBudget& budget);

// One coherence block: sweep the codebook (one uplink pilot slot per word
// unless the estimator is genie), select the best word by training metric,
// beamform on the selected estimate, and score on the true channel.
TrialResult run_coherence_block(const ChannelRealization& ch, const std::vector<cvec>& words,
                                const LinkBudget& budget, const PilotConfig& pilot,
                                const Estimator& est, Rng& pilot_rng);

}  // namespace risim
