// SPDX-License-Identifier: Apache-2.0
// Command-line front end: experiment sweeps, closed-form-vs-simulation power
// curves, complexity counts, and codebook audit dumps, all emitted as CSV.
#include "risim/errors.hpp"
#include "risim/harness.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

namespace {

using namespace risim;

int dispatch(const ExperimentConfig& cfg, const std::string& out_path) {
    switch (cfg.mode) {
        case RunMode::standard:
            write_results_csv(run_experiment(cfg), out_path);
            break;
        case RunMode::theory:
            write_theory_csv(run_theory(cfg), out_path);
            break;
        case RunMode::complexity:
            write_complexity_csv(run_complexity(cfg), out_path);
            break;
    }
    std::fprintf(stderr, "wrote %s\n", out_path.c_str());
    return 0;
}

int cmd_codebook(const std::string& scheme, const ExperimentConfig& cfg,
                 const std::string& out_path) {
    const SceneParams scene = derive_scene(cfg);
    const Scheme s = scheme_from_label(scheme);
    Codebook cb;
    cb.alphabet = scene.alphabet;
    Rng rng = Rng::substream(cfg.seed, stream::codebook, static_cast<std::uint64_t>(s));
    switch (s) {
        case Scheme::proposed:
        case Scheme::proposed_mmse:
            cb = env_aware_codebook(scene.csi_los, db_to_linear(cfg.k_d_db),
                                    db_to_linear(cfg.k_r_db), db_to_linear(cfg.k_g_db),
                                    cfg.t_words, scene.m_ref0, scene.alphabet, rng,
                                    cfg.codebook_opts);
            break;
        case Scheme::rand_cb:
            cb = random_codebook(cfg.t_words, cfg.n_elements, scene.alphabet, rng);
            break;
        case Scheme::rps:
            cb.words.push_back(rps_vector(cfg.n_elements, scene.alphabet, rng));
            break;
        case Scheme::scsi:
            cb.words.push_back(scsi_codeword(scene.csi_los, scene.alphabet));
            break;
        default:
            throw ConfigError("codebook dump supports index-based schemes only "
                              "(proposed|rand|rps|scsi), not '" + scheme + "'");
    }
    write_codebook_csv(cb, scheme, cfg.seed, out_path);
    std::fprintf(stderr, "wrote %s (%zu words)\n", out_path.c_str(), cb.words.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted MISO link simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    auto* run = app.add_subcommand("run", "run the experiment described by a config file");
    run->add_option("--config", config_path, "config file (key = value sections)")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--out", out_path, "output CSV path")->required();

    std::string preset_name;
    std::size_t preset_trials = 0;
    std::uint64_t preset_seed = 0;
    bool preset_has_seed = false;
    auto* preset = app.add_subcommand("preset", "run a bundled figure preset");
    preset->add_option("name", preset_name, "fig3a|fig3b|fig4a|fig4b|fig5a|fig5b")->required();
    preset->add_option("--out", out_path, "output CSV path")->required();
    preset->add_option("--trials", preset_trials, "override trial count");
    preset->add_option("--seed", preset_seed, "override RNG seed")
        ->each([&](const std::string&) { preset_has_seed = true; });

    std::size_t theory_n = 100;
    std::size_t theory_trials = 1000;
    std::uint64_t theory_seed = 1;
    std::vector<std::size_t> t_grid{1, 2, 5, 10, 20, 50, 100};
    std::vector<double> kr_list{-30.0, 3.0, 30.0};
    auto* theory = app.add_subcommand("theory",
                                      "simulated best received power vs the closed-form bound");
    theory->add_option("--n", theory_n, "number of RIS elements");
    theory->add_option("--t-grid", t_grid, "codebook sizes to evaluate")->delimiter(',');
    theory->add_option("--kr-list", kr_list, "RIS-UE Rician factors in dB")->delimiter(',');
    theory->add_option("--trials", theory_trials, "Monte Carlo trials");
    theory->add_option("--seed", theory_seed, "RNG seed");
    theory->add_option("--out", out_path, "output CSV path")->required();

    std::size_t comp_m = 8;
    std::vector<std::size_t> n_grid{20, 40, 60, 80, 100, 120, 140, 160, 180, 200};
    std::size_t comp_t = 50;
    int comp_a = 1;
    int comp_iters = 4;
    auto* complexity = app.add_subcommand("complexity",
                                          "training and arithmetic cost model vs N");
    complexity->add_option("--m", comp_m, "BS antennas");
    complexity->add_option("--n-grid", n_grid, "RIS element counts")->delimiter(',');
    complexity->add_option("--t", comp_t, "codebook size");
    complexity->add_option("--a", comp_a, "phase quantization bits");
    complexity->add_option("--n-iter", comp_iters, "alternating-optimization iterations");
    complexity->add_option("--out", out_path, "output CSV path")->required();

    std::string cb_scheme = "proposed";
    std::string cb_config;
    std::size_t cb_t = 0;
    std::uint64_t cb_seed = 0;
    bool cb_has_seed = false;
    auto* codebook = app.add_subcommand("codebook", "dump a codebook's alphabet indices");
    codebook->add_option("--scheme", cb_scheme, "proposed|rand|rps|scsi")->required();
    codebook->add_option("--out", out_path, "output CSV path")->required();
    codebook->add_option("--config", cb_config, "optional config file")
        ->check(CLI::ExistingFile);
    codebook->add_option("--t", cb_t, "override codebook size");
    codebook->add_option("--seed", cb_seed, "override RNG seed")
        ->each([&](const std::string&) { cb_has_seed = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed()) {
            return dispatch(parse_config_file(config_path), out_path);
        }
        if (preset->parsed()) {
            ExperimentConfig cfg = figure_preset(preset_name);
            if (preset_trials > 0) cfg.trials = preset_trials;
            if (preset_has_seed) cfg.seed = preset_seed;
            return dispatch(cfg, out_path);
        }
        if (theory->parsed()) {
            ExperimentConfig cfg;
            cfg.mode = RunMode::theory;
            cfg.m_antennas = 1;
            cfg.n_elements = theory_n;
            cfg.theory_t_grid = t_grid;
            cfg.theory_kr_db = kr_list;
            cfg.trials = theory_trials;
            cfg.seed = theory_seed;
            return dispatch(cfg, out_path);
        }
        if (complexity->parsed()) {
            ExperimentConfig cfg;
            cfg.mode = RunMode::complexity;
            cfg.m_antennas = comp_m;
            cfg.comp_n_grid = n_grid;
            cfg.comp_t_words = comp_t;
            cfg.comp_a_bits = comp_a;
            cfg.comp_n_iter = comp_iters;
            return dispatch(cfg, out_path);
        }
        if (codebook->parsed()) {
            ExperimentConfig cfg =
                cb_config.empty() ? ExperimentConfig{} : parse_config_file(cb_config);
            if (cb_t > 0) cfg.t_words = cb_t;
            if (cb_has_seed) cfg.seed = cb_seed;
            return cmd_codebook(cb_scheme, cfg, out_path);
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const ConvergenceError& e) {
        std::fprintf(stderr, "convergence error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
