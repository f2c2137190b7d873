// SPDX-License-Identifier: Apache-2.0
#include "risim/protocol.hpp"

#include <cmath>

namespace risim {

void LinkBudget::validate() const {
    if (!(p_d > 0.0)) throw std::invalid_argument("budget: p_d must be positive");
    if (!(sigma2_d > 0.0)) throw std::invalid_argument("budget: sigma2_d must be positive");
}

double training_metric(const cvec& y, const LinkBudget& budget, const PilotConfig& pilot) {
    budget.validate();
    pilot.validate();
    return std::log2(1.0 + budget.p_d * norm2(y) / (budget.sigma2_d * pilot.p_u));
}

double rate_from_channel(const cvec& h, const LinkBudget& budget) {
    budget.validate();
    return std::log2(1.0 + budget.p_d * norm2(h) / budget.sigma2_d);
}

std::size_t select_codeword(const std::vector<double>& metrics) {
    if (metrics.empty()) throw std::invalid_argument("select_codeword: empty metric list");
    std::size_t best = 0;
    for (std::size_t i = 1; i < metrics.size(); ++i)
        if (metrics[i] > metrics[best]) best = i;
    return best;
}

cvec mrt_beamformer(const cvec& h) {
    const double n = std::sqrt(norm2(h));
    if (!(n > 0.0)) throw std::invalid_argument("mrt_beamformer: zero channel estimate");
    cvec w(h);
    for (cd& v : w) v /= n;
    return w;
}

double realized_rate(const cvec& h_true, const cvec& w, const LinkBudget& budget) {
    budget.validate();
    const cd gain = dot_conj(h_true, w);
    return std::log2(1.0 + budget.p_d * std::norm(gain) / budget.sigma2_d);
}

TrialResult run_coherence_block(const ChannelRealization& ch, const std::vector<cvec>& words,
                                const LinkBudget& budget, const PilotConfig& pilot,
                                const Estimator& est, Rng& pilot_rng) {
    if (words.empty()) throw std::invalid_argument("run_coherence_block: empty codebook");
    if (est.mode == CsiMode::mmse && est.per_word == nullptr && est.shared == nullptr)
        throw std::invalid_argument("run_coherence_block: MMSE estimator without covariance");
    if (est.mode == CsiMode::mmse && est.per_word != nullptr && est.per_word->size() != words.size())
        throw std::invalid_argument("run_coherence_block: per-word covariance count mismatch");

    TrialResult result;
    result.training_metrics.resize(words.size());
    std::vector<cvec> estimates(words.size());
    std::vector<cvec> truths(words.size());

    for (std::size_t t = 0; t < words.size(); ++t) {
        truths[t] = composite_channel(ch.h_d, ch.d_cascade, words[t]);
        switch (est.mode) {
            case CsiMode::genie:
                estimates[t] = truths[t];
                result.training_metrics[t] = rate_from_channel(truths[t], budget);
                break;
            case CsiMode::ls: {
                const cvec y = uplink_receive(truths[t], pilot, pilot_rng);
                estimates[t] = ls_estimate(y, pilot);
                result.training_metrics[t] = training_metric(y, budget, pilot);
                break;
            }
            case CsiMode::mmse: {
                const cvec y = uplink_receive(truths[t], pilot, pilot_rng);
                const ChannelCovariance& cov =
                    est.per_word ? (*est.per_word)[t] : *est.shared;
                estimates[t] = mmse_estimate(ls_estimate(y, pilot), cov, pilot);
                result.training_metrics[t] = rate_from_channel(estimates[t], budget);
                break;
            }
        }
    }

    result.selected_index = select_codeword(result.training_metrics);
    const cvec w = mrt_beamformer(estimates[result.selected_index]);
    result.realized_rate = realized_rate(truths[result.selected_index], w, budget);
    return result;
}

}  // namespace risim
