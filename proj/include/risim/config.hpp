// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "risim/codebooks.hpp"
#include "risim/geometry.hpp"
#include "risim/protocol.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace risim {

enum class Scheme { proposed, proposed_mmse, ao, ao_est, rand_cb, dft, rps, scsi, no_ris };

std::string scheme_label(Scheme s);
Scheme scheme_from_label(const std::string& label);  // ConfigError on unknown

enum class RunMode { standard, theory, complexity };

// Full experiment description. Defaults reproduce the reference urban-canyon
// scene: BS at the origin area, RIS near the UE, 10-element RIS rows,
// sub-wavelength spacings, Rician factors of a few dB, and 1000 trials.
// dB/dBm fields are converted to linear units when the scene is derived;
// Rician factors accept "inf" for pure-LoS links.
struct ExperimentConfig {
    SystemGeometry geometry;
    PathLossModel path_loss;
    bool planar_distances = false;

    double k_d_db = -3.0;
    double k_r_db = 3.0;
    double k_g_db = 4.0;

    double p_d_dbm = 40.0;
    double p_u_dbm = 0.0;
    double sigma2_u_dbm = -110.0;
    double sigma2_d_dbm = -90.0;

    std::size_t m_antennas = 8;
    std::size_t n_elements = 100;
    int bits = 1;
    std::size_t m_ref = 1;  // 1-based reference antenna

    std::vector<Scheme> schemes{Scheme::proposed, Scheme::ao,  Scheme::rand_cb, Scheme::dft,
                                Scheme::rps,      Scheme::scsi, Scheme::no_ris};
    std::string sweep_var = "t_words";  // t_words | k_r_db | p_u_dbm | n_elements | none
    std::vector<double> sweep_values{1, 2, 5, 10, 20, 30, 40, 50, 75, 100};
    std::size_t t_words = 50;
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    CsiMode estimator = CsiMode::genie;
    bool parallel = true;

    int ao_iters = 3;
    bool ao_continuous = false;

    std::size_t covariance_samples = 10000;
    bool shared_covariance = false;

    EnvCodebookOptions codebook_opts;
    double csi_angle_perturb = 0.0;  // std (radians) of the designer's angle error

    RunMode mode = RunMode::standard;

    // mode == theory
    std::vector<std::size_t> theory_t_grid{1, 2, 5, 10, 20, 50, 100};
    std::vector<double> theory_kr_db{-30.0, 3.0, 30.0};

    // mode == complexity
    std::vector<std::size_t> comp_n_grid{20, 40, 60, 80, 100, 120, 140, 160, 180, 200};
    std::size_t comp_t_words = 50;
    int comp_a_bits = 1;
    int comp_n_iter = 4;

    void validate() const;  // ConfigError on inconsistency
};

// Parses the INI-style config format ([section], key = value, # comments)
// over the defaults above. Unknown sections or keys are ConfigErrors.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

double dbm_to_watts(double dbm);
double db_to_linear(double db);  // passes +inf through

}  // namespace risim
