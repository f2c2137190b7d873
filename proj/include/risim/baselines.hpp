// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "risim/codebooks.hpp"
#include "risim/linalg.hpp"
#include "risim/protocol.hpp"

#include <cstdint>
#include <vector>

namespace risim {

struct AoConfig {
    int n_iter = 3;
    PhaseAlphabet alphabet;
    bool continuous = false;  // skip quantization of the per-element phases
    cvec init_rc;             // empty means the all-zero-phase word
};

struct AoResult {
    cvec w;          // unit-norm beamformer
    cvec rc;         // reflection vector actually applied
    double objective = 0.0;  // |h(rc)^H w|^2
};

// Alternating optimization on explicit CSI: per iteration, (i) MRT beamformer
// refresh, (ii) per-element phase alignment of the reflection vector to the
// direct term, quantized unless continuous. Both half-steps keep their
// previous iterate unless the candidate does not decrease |h^H w|^2, so the
// objective is non-decreasing in computed arithmetic. A closing beamformer
// refresh pins w to the MRT of the final reflection vector, so the returned
// objective is ||h(rc)||^2 for the returned rc. objective_trace, when given,
// receives one value per iteration (before the closing refresh).
AoResult ao_optimize(const cvec& h_d, const cmat& d_cascade, const AoConfig& cfg,
                     std::vector<double>* objective_trace = nullptr);

struct CascadedEstimate {
    cvec h_d_hat;
    cmat d_hat;
};

// Direct + cascaded channel recovery from N+1 pilot slots, one per probing
// pattern. The default patterns are the columns of the (N+1)-point DFT
// (pattern i, element n: exp(j 2 pi i (n+1) / (N+1))), which make the slot
// system unitary up to scale; custom patterns are accepted if the system is
// invertible, otherwise ConfigError.
class CascadedLsEstimator {
  public:
    CascadedLsEstimator(std::size_t n_elements, std::size_t m_antennas);
    CascadedLsEstimator(std::vector<cvec> patterns, std::size_t m_antennas);

    const std::vector<cvec>& patterns() const { return patterns_; }
    std::size_t n_slots() const { return patterns_.size(); }

    // per_slot_ls: one LS composite-channel estimate per pattern slot.
    CascadedEstimate estimate(const std::vector<cvec>& per_slot_ls) const;

  private:
    void factor();

    std::size_t n_elements_ = 0;
    std::size_t m_antennas_ = 0;
    std::vector<cvec> patterns_;
    LuFactors factors_;
};

// Statistical-CSI reflection word: element phases align the RIS-UE LoS
// response against the LoS direct-path mixture seen through the BS-RIS link,
// psi_n = arg(h_r[n]) - arg(sum_m g(n, m) h_d[m]), then quantize.
std::vector<std::uint32_t> scsi_codeword(const LosComponents& los, const PhaseAlphabet& alphabet);

// MRT on the direct channel only.
double no_ris_rate(const cvec& h_d, const LinkBudget& budget);

// Closed-form training-symbol and arithmetic-operation counts used for the
// overhead comparison: reconstruction-based AO versus codebook sweeping.
struct ComplexityReport {
    std::uint64_t ao_estimation = 0;
    std::uint64_t ao_optimization = 0;
    std::uint64_t proposed_estimation = 0;
    std::uint64_t proposed_optimization = 0;
};

ComplexityReport complexity_model(std::size_t m_antennas, std::size_t n_elements,
                                  std::size_t t_words, int a_bits, int n_iter);

}  // namespace risim
