// SPDX-License-Identifier: Apache-2.0
#include "risim/harness.hpp"

#include "risim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>

namespace risim {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Substream index for everything a scheme owns (codebook, covariances).
// proposed_mmse shares the proposed codebook so the LS/MMSE comparison is
// paired word for word.
std::uint64_t scheme_stream_index(Scheme s) {
    if (s == Scheme::proposed_mmse) return static_cast<std::uint64_t>(Scheme::proposed);
    return static_cast<std::uint64_t>(s);
}

CsiMode effective_mode(Scheme s, const ExperimentConfig& cfg) {
    switch (s) {
        case Scheme::proposed_mmse: return CsiMode::mmse;
        case Scheme::ao:
        case Scheme::no_ris: return CsiMode::genie;
        case Scheme::ao_est: return CsiMode::ls;  // slot estimates are LS by design
        default: return cfg.estimator;
    }
}

bool is_codebook_scheme(Scheme s) {
    return s == Scheme::proposed || s == Scheme::proposed_mmse || s == Scheme::rand_cb ||
           s == Scheme::dft || s == Scheme::scsi || s == Scheme::rps;
}

AngleSet perturb_angles(const AngleSet& a, double sigma, Rng& rng) {
    AngleSet out = a;
    out.phi_d_a += sigma * rng.gaussian();
    out.phi_g_d += sigma * rng.gaussian();
    out.alpha_g_a += sigma * rng.gaussian();
    out.gamma_g_a += sigma * rng.gaussian();
    out.alpha_r_a += sigma * rng.gaussian();
    out.gamma_r_a += sigma * rng.gaussian();
    return out;
}

double sample_std_error(const std::vector<TrialOutcome>& outs) {
    const std::size_t n = outs.size();
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (const auto& o : outs) mean += o.realized_rate;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (const auto& o : outs) {
        const double d = o.realized_rate - mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

ChannelCovariance average_covariance(const std::vector<ChannelCovariance>& covs) {
    ChannelCovariance avg;
    avg.r = cmat(covs.front().r.rows, covs.front().r.cols);
    for (const auto& c : covs)
        for (std::size_t i = 0; i < avg.r.a.size(); ++i) avg.r.a[i] += c.r.a[i];
    const double inv = 1.0 / static_cast<double>(covs.size());
    for (cd& v : avg.r.a) v *= inv;
    return avg;
}

}  // namespace

SceneParams derive_scene(const ExperimentConfig& cfg) {
    cfg.validate();
    SceneParams scene;
    const AngleSet angles = angles_from_geometry(cfg.geometry);
    const LinkDistances dist = link_distances(cfg.geometry, cfg.planar_distances);

    scene.model.m_antennas = cfg.m_antennas;
    scene.model.n_elements = cfg.n_elements;
    scene.model.los = los_from_angles(angles, cfg.geometry, cfg.m_antennas, cfg.n_elements);
    scene.model.direct = {db_to_linear(cfg.k_d_db), path_loss(dist.d_bu, cfg.path_loss.alpha_d, cfg.path_loss)};
    scene.model.ris_ue = {db_to_linear(cfg.k_r_db), path_loss(dist.d_ru, cfg.path_loss.alpha_r, cfg.path_loss)};
    scene.model.bs_ris = {db_to_linear(cfg.k_g_db), path_loss(dist.d_br, cfg.path_loss.alpha_g, cfg.path_loss)};

    if (cfg.csi_angle_perturb > 0.0) {
        Rng rng = Rng::substream(cfg.seed, stream::csi_perturb, 0);
        const AngleSet noisy = perturb_angles(angles, cfg.csi_angle_perturb, rng);
        scene.csi_los = los_from_angles(noisy, cfg.geometry, cfg.m_antennas, cfg.n_elements);
    } else {
        scene.csi_los = scene.model.los;
    }

    scene.alphabet = build_alphabet(cfg.bits);
    scene.budget = {dbm_to_watts(cfg.p_d_dbm), dbm_to_watts(cfg.sigma2_d_dbm)};
    scene.pilot.p_u = dbm_to_watts(cfg.p_u_dbm);
    scene.pilot.sigma2_u = dbm_to_watts(cfg.sigma2_u_dbm);
    scene.m_ref0 = cfg.m_ref - 1;
    return scene;
}

SchemeContext prepare_scheme(const SceneParams& scene, const ExperimentConfig& cfg,
                             Scheme scheme) {
    SchemeContext ctx;
    ctx.scheme = scheme;
    ctx.mode = effective_mode(scheme, cfg);
    const std::uint64_t key = scheme_stream_index(scheme);

    switch (scheme) {
        case Scheme::proposed:
        case Scheme::proposed_mmse: {
            Rng rng = Rng::substream(cfg.seed, stream::codebook, key);
            const Codebook cb = env_aware_codebook(
                scene.csi_los, db_to_linear(cfg.k_d_db), db_to_linear(cfg.k_r_db),
                db_to_linear(cfg.k_g_db), cfg.t_words, scene.m_ref0, scene.alphabet, rng,
                cfg.codebook_opts);
            ctx.words = materialize(cb);
            break;
        }
        case Scheme::rand_cb:
            break;  // one fresh codebook per trial, like RPS draws fresh words

        case Scheme::dft:
            ctx.words = dft_codebook(cfg.t_words, cfg.n_elements);
            break;
        case Scheme::scsi:
            ctx.words = {materialize_word(scsi_codeword(scene.csi_los, scene.alphabet),
                                          scene.alphabet)};
            break;
        case Scheme::rps:
            break;  // one fresh word per trial
        case Scheme::ao:
        case Scheme::ao_est:
            ctx.ao.n_iter = cfg.ao_iters;
            ctx.ao.alphabet = scene.alphabet;
            ctx.ao.continuous = cfg.ao_continuous;
            if (scheme == Scheme::ao_est)
                ctx.cascaded = std::make_shared<const CascadedLsEstimator>(cfg.n_elements,
                                                                           cfg.m_antennas);
            break;
        case Scheme::no_ris:
            break;
    }

    if (ctx.mode == CsiMode::mmse && is_codebook_scheme(scheme)) {
        // Offline statistics: one sample covariance per codeword. RPS and the
        // per-trial random codebook have no fixed words, so their covariance
        // averages over random words instead.
        if (scheme == Scheme::rps || scheme == Scheme::rand_cb) {
            Rng rng = Rng::substream(cfg.seed, stream::covariance, key);
            ChannelCovariance cov;
            cov.r = cmat(cfg.m_antennas, cfg.m_antennas);
            std::vector<ChannelCovariance> parts;
            for (std::size_t s = 0; s < 16; ++s) {
                const cvec word =
                    materialize_word(rps_vector(cfg.n_elements, scene.alphabet, rng),
                                     scene.alphabet);
                parts.push_back(sample_covariance(word, scene.model,
                                                  std::max<std::size_t>(cfg.covariance_samples / 16, 1),
                                                  rng));
            }
            ctx.shared_cov = average_covariance(parts);
            ctx.use_shared_cov = true;
        } else {
            ctx.covariances.resize(ctx.words.size());
            std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
            for (std::int64_t t = 0; t < static_cast<std::int64_t>(ctx.words.size()); ++t) {
                try {
                    Rng rng = Rng::substream(cfg.seed, stream::covariance,
                                             (key << 32) | static_cast<std::uint64_t>(t));
                    ctx.covariances[t] = sample_covariance(ctx.words[t], scene.model,
                                                           cfg.covariance_samples, rng);
                } catch (...) {
#pragma omp critical
                    if (!failure) failure = std::current_exception();
                }
            }
            if (failure) std::rethrow_exception(failure);
            if (cfg.shared_covariance) {
                ctx.shared_cov = average_covariance(ctx.covariances);
                ctx.use_shared_cov = true;
                ctx.covariances.clear();
            }
        }
    }
    return ctx;
}

TrialOutcome run_scheme_trial(const SceneParams& scene, const SchemeContext& ctx,
                              const ExperimentConfig& cfg, std::size_t trial) {
    Rng channel_rng = Rng::substream(cfg.seed, stream::channel, trial);
    const ChannelRealization ch = scene.model.draw(channel_rng);
    Rng pilot_rng = Rng::substream(cfg.seed, stream::pilot, trial);
    TrialOutcome out;

    switch (ctx.scheme) {
        case Scheme::proposed:
        case Scheme::proposed_mmse:
        case Scheme::rand_cb:
        case Scheme::dft:
        case Scheme::scsi:
        case Scheme::rps: {
            const std::vector<cvec>* words = &ctx.words;
            std::vector<cvec> trial_words;
            if (ctx.scheme == Scheme::rps) {
                Rng rps_rng = Rng::substream(cfg.seed, stream::rps, trial);
                trial_words.push_back(materialize_word(
                    rps_vector(scene.model.n_elements, scene.alphabet, rps_rng), scene.alphabet));
                words = &trial_words;
            } else if (ctx.scheme == Scheme::rand_cb) {
                const std::uint64_t key = scheme_stream_index(ctx.scheme);
                Rng cb_rng = Rng::substream(cfg.seed, stream::codebook,
                                            (key << 32) | static_cast<std::uint64_t>(trial));
                trial_words = materialize(
                    random_codebook(cfg.t_words, cfg.n_elements, scene.alphabet, cb_rng));
                words = &trial_words;
            }
            Estimator est;
            est.mode = ctx.mode;
            if (ctx.mode == CsiMode::mmse) {
                if (ctx.use_shared_cov) est.shared = &ctx.shared_cov;
                else est.per_word = &ctx.covariances;
            }
            const TrialResult r =
                run_coherence_block(ch, *words, scene.budget, scene.pilot, est, pilot_rng);
            out.metric_rate = r.training_metrics[r.selected_index];
            out.realized_rate = r.realized_rate;
            break;
        }
        case Scheme::ao: {
            const AoResult r = ao_optimize(ch.h_d, ch.d_cascade, ctx.ao);
            out.realized_rate = std::log2(1.0 + scene.budget.p_d * r.objective / scene.budget.sigma2_d);
            out.metric_rate = out.realized_rate;
            break;
        }
        case Scheme::ao_est: {
            const auto& patterns = ctx.cascaded->patterns();
            std::vector<cvec> slot_ls(patterns.size());
            for (std::size_t i = 0; i < patterns.size(); ++i) {
                const cvec truth = composite_channel(ch.h_d, ch.d_cascade, patterns[i]);
                const cvec y = uplink_receive(truth, scene.pilot, pilot_rng);
                slot_ls[i] = ls_estimate(y, scene.pilot);
            }
            const CascadedEstimate est = ctx.cascaded->estimate(slot_ls);
            const AoResult r = ao_optimize(est.h_d_hat, est.d_hat, ctx.ao);
            const cvec h_true = composite_channel(ch.h_d, ch.d_cascade, r.rc);
            out.realized_rate = realized_rate(h_true, r.w, scene.budget);
            out.metric_rate = std::log2(1.0 + scene.budget.p_d * r.objective / scene.budget.sigma2_d);
            break;
        }
        case Scheme::no_ris:
            out.realized_rate = no_ris_rate(ch.h_d, scene.budget);
            out.metric_rate = out.realized_rate;
            break;
    }
    return out;
}

std::vector<TrialOutcome> run_scheme_trials(const SceneParams& scene, const SchemeContext& ctx,
                                            const ExperimentConfig& cfg) {
    std::vector<TrialOutcome> outs(cfg.trials);
    std::exception_ptr failure;
    if (cfg.parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(cfg.trials); ++k) {
            try {
                outs[k] = run_scheme_trial(scene, ctx, cfg, static_cast<std::size_t>(k));
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else {
        for (std::size_t k = 0; k < cfg.trials; ++k)
            outs[k] = run_scheme_trial(scene, ctx, cfg, k);
    }
    return outs;
}

ExperimentConfig apply_sweep_value(const ExperimentConfig& cfg, const std::string& var,
                                   double value) {
    ExperimentConfig out = cfg;
    if (var == "none") return out;
    if (var == "t_words" || var == "n_elements") {
        if (!(value >= 1.0) || value != std::floor(value))
            throw ConfigError("config: sweep value for " + var + " must be a positive integer");
        if (var == "t_words") out.t_words = static_cast<std::size_t>(value);
        else out.n_elements = static_cast<std::size_t>(value);
    } else if (var == "k_r_db") {
        out.k_r_db = value;
    } else if (var == "p_u_dbm") {
        out.p_u_dbm = value;
    } else {
        throw ConfigError("config: unknown sweep variable '" + var + "'");
    }
    return out;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.mode != RunMode::standard)
        throw ConfigError("run_experiment: config mode is not 'standard'");

    std::vector<double> grid = cfg.sweep_values;
    if (cfg.sweep_var == "none") grid = {0.0};

    std::vector<ResultRow> rows;
    for (const double value : grid) {
        const ExperimentConfig point = apply_sweep_value(cfg, cfg.sweep_var, value);
        const SceneParams scene = derive_scene(point);
        for (const Scheme scheme : point.schemes) {
            const SchemeContext ctx = prepare_scheme(scene, point, scheme);
            const std::vector<TrialOutcome> outs = run_scheme_trials(scene, ctx, point);
            ResultRow row;
            row.scheme = scheme_label(scheme);
            row.sweep_var = cfg.sweep_var;
            row.sweep_value = value;
            double metric = 0.0;
            double realized = 0.0;
            for (const auto& o : outs) {
                metric += o.metric_rate;
                realized += o.realized_rate;
            }
            row.mean_metric_rate = metric / static_cast<double>(outs.size());
            row.mean_realized_rate = realized / static_cast<double>(outs.size());
            row.std_error = sample_std_error(outs);
            row.trials = point.trials;
            row.seed = point.seed;
            std::fprintf(stderr, "[%s %s=%s] metric=%.6f realized=%.6f se=%.3g\n",
                         row.scheme.c_str(), cfg.sweep_var.c_str(),
                         format_double(value).c_str(), row.mean_metric_rate,
                         row.mean_realized_rate, row.std_error);
            rows.push_back(std::move(row));
        }
    }
    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        if (a.scheme != b.scheme) return a.scheme < b.scheme;
        return a.sweep_value < b.sweep_value;
    });
    return rows;
}

std::vector<TheoryRow> run_theory(const ExperimentConfig& cfg) {
    cfg.validate();
    const LinkDistances dist = link_distances(cfg.geometry, cfg.planar_distances);
    TheoryParams base;
    base.p_d = dbm_to_watts(cfg.p_d_dbm);
    base.beta_r = path_loss(dist.d_ru, cfg.path_loss.alpha_r, cfg.path_loss);
    base.beta_g = path_loss(dist.d_br, cfg.path_loss.alpha_g, cfg.path_loss);
    base.n_elements = cfg.n_elements;
    base.bits = cfg.bits;

    TheoryMcOptions opts;
    opts.codebook = cfg.codebook_opts;
    opts.parallel = cfg.parallel;

    std::vector<TheoryRow> rows;
    for (const double kr_db : cfg.theory_kr_db) {
        TheoryParams p = base;
        p.k_r = db_to_linear(kr_db);
        p.t_words = cfg.theory_t_grid.back();
        const std::vector<double> sims =
            simulated_received_power(p, cfg.theory_t_grid, cfg.trials, cfg.seed, opts);
        for (std::size_t j = 0; j < cfg.theory_t_grid.size(); ++j) {
            TheoryRow row;
            row.t_words = cfg.theory_t_grid[j];
            row.k_r_db = kr_db;
            row.simulated_power = sims[j];
            TheoryParams pb = p;
            pb.t_words = row.t_words;
            row.bound_power = received_power_bound(pb);
            std::fprintf(stderr, "[theory k_r_db=%s t=%zu] sim=%.6g bound=%.6g\n",
                         format_double(kr_db).c_str(), row.t_words, row.simulated_power,
                         row.bound_power);
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<ComplexityRow> run_complexity(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<ComplexityRow> rows;
    for (const std::size_t n : cfg.comp_n_grid) {
        ComplexityRow row;
        row.n_elements = n;
        row.report = complexity_model(cfg.m_antennas, n, cfg.comp_t_words, cfg.comp_a_bits,
                                      cfg.comp_n_iter);
        rows.push_back(row);
    }
    return rows;
}

ExperimentConfig figure_preset(const std::string& name) {
    ExperimentConfig cfg;  // defaults already carry the reference scene
    if (name == "fig3a") {
        return cfg;
    }
    if (name == "fig3b") {
        cfg.estimator = CsiMode::ls;
        cfg.p_u_dbm = 0.0;
        cfg.schemes = {Scheme::proposed, Scheme::proposed_mmse, Scheme::ao_est, Scheme::rand_cb,
                       Scheme::dft,      Scheme::rps,           Scheme::scsi,   Scheme::no_ris};
        return cfg;
    }
    if (name == "fig4a" || name == "fig4b") {
        cfg.sweep_var = "k_r_db";
        cfg.sweep_values = {-30, -20, -10, -3, 0, 3, 10, 20, 30};
        cfg.t_words = 50;
        cfg.k_g_db = inf;
        cfg.k_d_db = inf;
        if (name == "fig4b") {
            cfg.p_u_dbm = -20.0;
            cfg.estimator = CsiMode::ls;
            cfg.schemes = {Scheme::proposed, Scheme::ao,  Scheme::ao_est, Scheme::rand_cb,
                           Scheme::dft,      Scheme::rps, Scheme::scsi,   Scheme::no_ris};
        }
        return cfg;
    }
    if (name == "fig5a") {
        cfg.mode = RunMode::theory;
        cfg.m_antennas = 1;
        cfg.m_ref = 1;
        return cfg;
    }
    if (name == "fig5b") {
        cfg.mode = RunMode::complexity;
        cfg.comp_n_iter = 4;
        cfg.comp_t_words = 50;
        cfg.comp_a_bits = 1;
        return cfg;
    }
    throw ConfigError("unknown preset '" + name +
                      "' (fig3a|fig3b|fig4a|fig4b|fig5a|fig5b)");
}

void write_results_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write results CSV: " + path);
    out << "scheme,sweep_var,sweep_value,mean_metric_rate,mean_realized_rate,std_error,trials,seed\n";
    for (const auto& r : rows) {
        out << r.scheme << ',' << r.sweep_var << ',' << format_double(r.sweep_value) << ','
            << format_double(r.mean_metric_rate) << ',' << format_double(r.mean_realized_rate)
            << ',' << format_double(r.std_error) << ',' << r.trials << ',' << r.seed << '\n';
    }
    if (!out) throw std::runtime_error("write failure on results CSV: " + path);
}

std::vector<ResultRow> read_results_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read results CSV: " + path);
    std::string line;
    if (!std::getline(in, line) ||
        line != "scheme,sweep_var,sweep_value,mean_metric_rate,mean_realized_rate,std_error,trials,seed")
        throw std::runtime_error("malformed results CSV header: " + path);
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != 8) throw std::runtime_error("malformed results CSV row: " + path);
        ResultRow r;
        r.scheme = cells[0];
        r.sweep_var = cells[1];
        r.sweep_value = std::stod(cells[2]);
        r.mean_metric_rate = std::stod(cells[3]);
        r.mean_realized_rate = std::stod(cells[4]);
        r.std_error = std::stod(cells[5]);
        r.trials = std::stoul(cells[6]);
        r.seed = std::stoull(cells[7]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_theory_csv(const std::vector<TheoryRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write theory CSV: " + path);
    out << "t,k_r_db,simulated_power,bound_power\n";
    for (const auto& r : rows)
        out << r.t_words << ',' << format_double(r.k_r_db) << ','
            << format_double(r.simulated_power) << ',' << format_double(r.bound_power) << '\n';
    if (!out) throw std::runtime_error("write failure on theory CSV: " + path);
}

void write_complexity_csv(const std::vector<ComplexityRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write complexity CSV: " + path);
    out << "n,ao_estimation,ao_optimization,proposed_estimation,proposed_optimization\n";
    for (const auto& r : rows)
        out << r.n_elements << ',' << r.report.ao_estimation << ',' << r.report.ao_optimization
            << ',' << r.report.proposed_estimation << ',' << r.report.proposed_optimization
            << '\n';
    if (!out) throw std::runtime_error("write failure on complexity CSV: " + path);
}

}  // namespace risim
