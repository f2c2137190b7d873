// SPDX-License-Identifier: Apache-2.0
#include "risim/baselines.hpp"

#include "risim/errors.hpp"

#include <cmath>
#include <numbers>

namespace risim {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double gain2(const cvec& h, const cvec& w) { return std::norm(dot_conj(h, w)); }

}  // namespace

AoResult ao_optimize(const cvec& h_d, const cmat& d_cascade, const AoConfig& cfg,
                     std::vector<double>* objective_trace) {
    if (h_d.size() != d_cascade.cols)
        throw std::invalid_argument("ao_optimize: shape mismatch");
    if (cfg.n_iter < 1) throw std::invalid_argument("ao_optimize: n_iter must be >= 1");
    if (!cfg.continuous && cfg.alphabet.values.empty())
        throw std::invalid_argument("ao_optimize: missing alphabet");

    const std::size_t n = d_cascade.rows;
    cvec rc;
    if (cfg.init_rc.empty()) {
        rc.assign(n, cfg.continuous ? cd{1.0, 0.0} : cfg.alphabet.values[0]);
    } else {
        if (cfg.init_rc.size() != n)
            throw std::invalid_argument("ao_optimize: init_rc length mismatch");
        rc = cfg.init_rc;
    }
    cvec h = composite_channel(h_d, d_cascade, rc);
    if (!(norm2(h) > 0.0) && !(norm2(h_d) > 0.0)) {
        // Fully blocked scene with a zero cascade: no beamformer exists.
        bool all_zero = true;
        for (const cd& v : d_cascade.a)
            if (v != cd{0.0, 0.0}) all_zero = false;
        if (all_zero) throw std::invalid_argument("ao_optimize: zero effective channel");
    }
    cvec w = mrt_beamformer(h);
    double obj = gain2(h, w);

    for (int iter = 0; iter < cfg.n_iter; ++iter) {
        // (i) Beamformer half-step.
        {
            const cvec w_cand = mrt_beamformer(h);
            const double cand = gain2(h, w_cand);
            if (cand >= obj) {
                w = w_cand;
                obj = cand;
            }
        }
        // (ii) Reflection half-step: align every element's summand with the
        // direct term h_d^H w (or with phase zero if that term vanishes).
        {
            const cd direct = dot_conj(h_d, w);
            const double ref = (std::abs(direct) > 0.0) ? std::arg(direct) : 0.0;
            const cvec v = matvec(d_cascade, w);
            cvec rc_cand(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double phase = ref - std::arg(v[i]);
                rc_cand[i] = cfg.continuous
                                 ? std::polar(1.0, phase)
                                 : cfg.alphabet.values[quantize_angle(phase, cfg.alphabet)];
            }
            const cvec h_cand = composite_channel(h_d, d_cascade, rc_cand);
            const double cand = gain2(h_cand, w);
            if (cand >= obj) {
                rc = std::move(rc_cand);
                h = h_cand;
                obj = cand;
            }
        }
        if (objective_trace) objective_trace->push_back(obj);
    }

    // Closing refresh: w ends as the MRT of the final rc, so the objective is
    // ||h(rc)||^2 (|h^H w|^2 <= ||h||^2 makes this a keep-if-better step too).
    {
        const cvec w_cand = mrt_beamformer(h);
        const double cand = gain2(h, w_cand);
        if (cand >= obj) {
            w = w_cand;
            obj = cand;
        }
    }

    AoResult out;
    out.w = std::move(w);
    out.rc = std::move(rc);
    out.objective = obj;
    return out;
}

CascadedLsEstimator::CascadedLsEstimator(std::size_t n_elements, std::size_t m_antennas)
    : n_elements_(n_elements), m_antennas_(m_antennas) {
    if (n_elements == 0 || m_antennas == 0)
        throw std::invalid_argument("cascaded estimator: empty array");
    const std::size_t slots = n_elements + 1;
    patterns_.assign(slots, cvec(n_elements));
    const double step = two_pi / static_cast<double>(slots);
    for (std::size_t i = 0; i < slots; ++i)
        for (std::size_t n = 0; n < n_elements; ++n)
            patterns_[i][n] =
                std::polar(1.0, step * static_cast<double>(i) * static_cast<double>(n + 1));
    factor();
}

CascadedLsEstimator::CascadedLsEstimator(std::vector<cvec> patterns, std::size_t m_antennas)
    : m_antennas_(m_antennas), patterns_(std::move(patterns)) {
    if (patterns_.empty() || m_antennas == 0)
        throw std::invalid_argument("cascaded estimator: empty input");
    n_elements_ = patterns_.front().size();
    if (patterns_.size() != n_elements_ + 1)
        throw std::invalid_argument("cascaded estimator: need n_elements + 1 patterns");
    for (const cvec& p : patterns_)
        if (p.size() != n_elements_)
            throw std::invalid_argument("cascaded estimator: ragged pattern list");
    factor();
}

void CascadedLsEstimator::factor() {
    const std::size_t slots = patterns_.size();
    cmat b(slots, slots);
    for (std::size_t i = 0; i < slots; ++i) {
        b(i, 0) = cd{1.0, 0.0};
        for (std::size_t n = 0; n < n_elements_; ++n) b(i, n + 1) = std::conj(patterns_[i][n]);
    }
    factors_ = lu_factor(std::move(b));
    if (!factors_.ok) throw ConfigError("cascaded estimator: probing pattern matrix is singular");
}

CascadedEstimate CascadedLsEstimator::estimate(const std::vector<cvec>& per_slot_ls) const {
    const std::size_t slots = patterns_.size();
    if (per_slot_ls.size() != slots)
        throw std::invalid_argument("cascaded estimator: slot count mismatch");
    for (const cvec& v : per_slot_ls)
        if (v.size() != m_antennas_)
            throw std::invalid_argument("cascaded estimator: antenna count mismatch");

    CascadedEstimate out;
    out.h_d_hat.resize(m_antennas_);
    out.d_hat = cmat(n_elements_, m_antennas_);
    cvec rhs(slots);
    for (std::size_t m = 0; m < m_antennas_; ++m) {
        for (std::size_t i = 0; i < slots; ++i) rhs[i] = per_slot_ls[i][m];
        const cvec x = lu_apply(factors_, rhs);
        out.h_d_hat[m] = x[0];
        for (std::size_t n = 0; n < n_elements_; ++n) out.d_hat(n, m) = std::conj(x[n + 1]);
    }
    return out;
}

std::vector<std::uint32_t> scsi_codeword(const LosComponents& los, const PhaseAlphabet& alphabet) {
    const std::size_t n_elements = los.h_r.size();
    if (los.g.rows != n_elements || los.g.cols != los.h_d.size() || los.h_d.empty())
        throw std::invalid_argument("scsi_codeword: LoS shape mismatch");
    std::vector<std::uint32_t> word(n_elements);
    for (std::size_t n = 0; n < n_elements; ++n) {
        cd mix{0.0, 0.0};
        for (std::size_t m = 0; m < los.h_d.size(); ++m) mix += los.g(n, m) * los.h_d[m];
        word[n] = quantize_angle(std::arg(los.h_r[n]) - std::arg(mix), alphabet);
    }
    return word;
}

double no_ris_rate(const cvec& h_d, const LinkBudget& budget) {
    return rate_from_channel(h_d, budget);
}

ComplexityReport complexity_model(std::size_t m_antennas, std::size_t n_elements,
                                  std::size_t t_words, int a_bits, int n_iter) {
    if (m_antennas == 0 || n_elements == 0 || t_words == 0)
        throw std::invalid_argument("complexity_model: counts must be positive");
    if (a_bits < 1 || a_bits > 16 || n_iter < 1)
        throw std::invalid_argument("complexity_model: invalid a_bits or n_iter");
    const std::uint64_t m = m_antennas;
    const std::uint64_t n = n_elements;
    const std::uint64_t t = t_words;
    const std::uint64_t levels = std::uint64_t{1} << a_bits;
    ComplexityReport r;
    r.ao_estimation = 2 * m * (n + 1);
    r.ao_optimization = static_cast<std::uint64_t>(n_iter) * (levels * n + 4 * m * n + 4 * m);
    r.proposed_estimation = 4 * m * t;
    r.proposed_optimization = (6 * m + 8) * t;
    return r;
}

}  // namespace risim
