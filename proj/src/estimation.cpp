// SPDX-License-Identifier: Apache-2.0
#include "risim/estimation.hpp"

#include <cmath>

namespace risim {

void PilotConfig::validate() const {
    if (!(p_u > 0.0)) throw std::invalid_argument("pilot: p_u must be positive");
    if (!(sigma2_u >= 0.0)) throw std::invalid_argument("pilot: sigma2_u must be >= 0");
    if (std::abs(std::abs(pilot) - 1.0) > 1e-9)
        throw std::invalid_argument("pilot: symbol must be unit-modulus");
}

cvec uplink_receive(const cvec& h, const PilotConfig& cfg, Rng& rng) {
    cfg.validate();
    const double a = std::sqrt(cfg.p_u);
    const double s = std::sqrt(cfg.sigma2_u);
    cvec y(h.size());
    for (std::size_t m = 0; m < h.size(); ++m) y[m] = a * cfg.pilot * h[m] + s * rng.cgaussian();
    return y;
}

cvec ls_estimate(const cvec& y, const PilotConfig& cfg) {
    cfg.validate();
    const cd scale = std::conj(cfg.pilot) / std::sqrt(cfg.p_u);
    cvec h(y.size());
    for (std::size_t m = 0; m < y.size(); ++m) h[m] = scale * y[m];
    return h;
}

cvec mmse_estimate(const cvec& h_ls, const ChannelCovariance& cov, const PilotConfig& cfg) {
    cfg.validate();
    const std::size_t m = h_ls.size();
    if (cov.r.rows != m || cov.r.cols != m)
        throw std::invalid_argument("mmse_estimate: covariance shape mismatch");
    const double c = cfg.sigma2_u / cfg.p_u;
    cmat a = cov.r;
    for (std::size_t i = 0; i < m; ++i) a(i, i) += c;
    LuFactors f = lu_factor(std::move(a));
    if (!f.ok) {
        // Noiseless rank-deficient system: nothing to regularize, keep LS.
        return h_ls;
    }
    const cvec z = lu_apply(f, h_ls);
    return matvec(cov.r, z);
}

ChannelCovariance sample_covariance(const cvec& rc, const ChannelModel& model,
                                    std::size_t n_samples, Rng& rng) {
    model.validate();
    if (n_samples == 0) throw std::invalid_argument("sample_covariance: n_samples must be positive");
    if (rc.size() != model.n_elements)
        throw std::invalid_argument("sample_covariance: word length mismatch");
    const std::size_t m = model.m_antennas;
    ChannelCovariance cov;
    cov.r = cmat(m, m);
    for (std::size_t s = 0; s < n_samples; ++s) {
        const ChannelRealization ch = model.draw(rng);
        const cvec h = composite_channel(ch.h_d, ch.d_cascade, rc);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) cov.r(i, j) += h[i] * std::conj(h[j]);
    }
    const double inv = 1.0 / static_cast<double>(n_samples);
    for (cd& v : cov.r.a) v *= inv;
    // Exact Hermitian symmetry, so downstream solvers see a clean input.
    for (std::size_t i = 0; i < m; ++i) {
        cov.r(i, i) = cd{cov.r(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < m; ++j) {
            const cd avg = 0.5 * (cov.r(i, j) + std::conj(cov.r(j, i)));
            cov.r(i, j) = avg;
            cov.r(j, i) = std::conj(avg);
        }
    }
    return cov;
}

}  // namespace risim
