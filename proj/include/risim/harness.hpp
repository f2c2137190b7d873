// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "risim/baselines.hpp"
#include "risim/config.hpp"
#include "risim/theory.hpp"

#include <memory>
#include <string>
#include <vector>

namespace risim {

// Physical scene derived from a config: channel sampler, designer-side CSI,
// alphabet, and link budgets in linear units.
struct SceneParams {
    ChannelModel model;
    LosComponents csi_los;  // what the codebook designer believes; equals
                            // model.los unless csi_angle_perturb is set
    PhaseAlphabet alphabet;
    LinkBudget budget;
    PilotConfig pilot;
    std::size_t m_ref0 = 0;  // 0-based reference antenna
};

SceneParams derive_scene(const ExperimentConfig& cfg);

struct TrialOutcome {
    double metric_rate = 0.0;
    double realized_rate = 0.0;
};

// Per-sweep-point state of one scheme: codebook, covariances, estimators.
// Built once per sweep point from trial-independent substreams so that the
// word list is identical across sweep points (prefix-nested in T).
struct SchemeContext {
    Scheme scheme = Scheme::proposed;
    CsiMode mode = CsiMode::genie;
    std::vector<cvec> words;
    std::vector<ChannelCovariance> covariances;
    ChannelCovariance shared_cov;
    bool use_shared_cov = false;
    std::shared_ptr<const CascadedLsEstimator> cascaded;
    AoConfig ao;
};

SchemeContext prepare_scheme(const SceneParams& scene, const ExperimentConfig& cfg,
                             Scheme scheme);

TrialOutcome run_scheme_trial(const SceneParams& scene, const SchemeContext& ctx,
                              const ExperimentConfig& cfg, std::size_t trial);

// All trials of one scheme at the current config point; the OpenMP and serial
// paths fill the same trial-indexed slots and reduce in order, so they are
// bitwise identical.
std::vector<TrialOutcome> run_scheme_trials(const SceneParams& scene, const SchemeContext& ctx,
                                            const ExperimentConfig& cfg);

struct ResultRow {
    std::string scheme;
    std::string sweep_var;
    double sweep_value = 0.0;
    double mean_metric_rate = 0.0;
    double mean_realized_rate = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

// Full sweep: every sweep value x scheme, averaged over trials. Emits one
// stderr log line per (scheme, sweep point).
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

// Returns cfg with the sweep variable forced to the given value.
ExperimentConfig apply_sweep_value(const ExperimentConfig& cfg, const std::string& var,
                                   double value);

struct TheoryRow {
    std::size_t t_words = 0;
    double k_r_db = 0.0;
    double simulated_power = 0.0;
    double bound_power = 0.0;
};

std::vector<TheoryRow> run_theory(const ExperimentConfig& cfg);

struct ComplexityRow {
    std::size_t n_elements = 0;
    ComplexityReport report;
};

std::vector<ComplexityRow> run_complexity(const ExperimentConfig& cfg);

// Bundled experiment presets: fig3a/fig3b (rate vs training overhead, genie /
// estimated CSI), fig4a/fig4b (rate vs RIS-UE Rician factor, pure-LoS other
// links), fig5a (simulated power vs closed-form bound), fig5b (complexity
// counts vs N). ConfigError on unknown names.
ExperimentConfig figure_preset(const std::string& name);

void write_results_csv(const std::vector<ResultRow>& rows, const std::string& path);
std::vector<ResultRow> read_results_csv(const std::string& path);
void write_theory_csv(const std::vector<TheoryRow>& rows, const std::string& path);
void write_complexity_csv(const std::vector<ComplexityRow>& rows, const std::string& path);

}  // namespace risim
