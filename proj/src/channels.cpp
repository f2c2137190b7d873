// SPDX-License-Identifier: Apache-2.0
#include "risim/channels.hpp"

#include <cmath>

namespace risim {

void RicianLinkParams::validate() const {
    if (!(k_factor >= 0.0)) throw std::invalid_argument("rician: k_factor must be >= 0");
    if (!(beta >= 0.0) || std::isinf(beta)) throw std::invalid_argument("rician: beta must be finite and >= 0");
}

void ChannelModel::validate() const {
    if (m_antennas == 0 || n_elements == 0)
        throw std::invalid_argument("channel model: empty array");
    if (los.h_d.size() != m_antennas || los.h_r.size() != n_elements ||
        los.g.rows != n_elements || los.g.cols != m_antennas)
        throw std::invalid_argument("channel model: LoS component shape mismatch");
    direct.validate();
    ris_ue.validate();
    bs_ris.validate();
}

cvec rician_draw(const cvec& los, const RicianLinkParams& p, Rng& rng) {
    p.validate();
    cvec h(los.size());
    if (std::isinf(p.k_factor)) {
        const double a = std::sqrt(p.beta);
        for (std::size_t i = 0; i < los.size(); ++i) h[i] = a * los[i];
        return h;
    }
    const double s = std::sqrt(p.beta / (p.k_factor + 1.0));
    const double a = std::sqrt(p.k_factor);
    for (std::size_t i = 0; i < los.size(); ++i) h[i] = s * (a * los[i] + rng.cgaussian());
    return h;
}

cmat rician_draw(const cmat& los, const RicianLinkParams& p, Rng& rng) {
    p.validate();
    cmat h(los.rows, los.cols);
    if (std::isinf(p.k_factor)) {
        const double a = std::sqrt(p.beta);
        for (std::size_t i = 0; i < los.a.size(); ++i) h.a[i] = a * los.a[i];
        return h;
    }
    const double s = std::sqrt(p.beta / (p.k_factor + 1.0));
    const double a = std::sqrt(p.k_factor);
    for (std::size_t i = 0; i < los.a.size(); ++i) h.a[i] = s * (a * los.a[i] + rng.cgaussian());
    return h;
}

cmat cascade(const cvec& h_r, const cmat& g) {
    if (h_r.size() != g.rows) throw std::invalid_argument("cascade: size mismatch");
    cmat d(g.rows, g.cols);
    for (std::size_t n = 0; n < g.rows; ++n) {
        const cd c = std::conj(h_r[n]);
        for (std::size_t m = 0; m < g.cols; ++m) d(n, m) = c * g(n, m);
    }
    return d;
}

cvec composite_channel(const cvec& h_d, const cmat& d_cascade, const cvec& rc) {
    if (h_d.size() != d_cascade.cols || rc.size() != d_cascade.rows)
        throw std::invalid_argument("composite_channel: size mismatch");
    cvec h(h_d);
    for (std::size_t n = 0; n < d_cascade.rows; ++n) {
        const cd c = std::conj(rc[n]);
        for (std::size_t m = 0; m < h.size(); ++m) h[m] += std::conj(d_cascade(n, m)) * c;
    }
    return h;
}

ChannelRealization ChannelModel::draw(Rng& rng) const {
    validate();
    ChannelRealization r;
    if (direct_blocked) {
        r.h_d.assign(m_antennas, cd{0.0, 0.0});
    } else {
        r.h_d = rician_draw(los.h_d, direct, rng);
    }
    r.h_r = rician_draw(los.h_r, ris_ue, rng);
    r.g = rician_draw(los.g, bs_ris, rng);
    r.d_cascade = cascade(r.h_r, r.g);
    return r;
}

LosComponents los_from_angles(const AngleSet& a, const SystemGeometry& g, std::size_t m_antennas,
                              std::size_t n_elements) {
    LosComponents los;
    los.h_d = ula_steering(m_antennas, g.bs_spacing, a.phi_d_a);
    los.h_r = upa_steering(n_elements, g.n_x, g.ris_spacing, a.alpha_r_a, a.gamma_r_a);
    const cvec ris_side = upa_steering(n_elements, g.n_x, g.ris_spacing, a.alpha_g_a, a.gamma_g_a);
    const cvec bs_side = ula_steering(m_antennas, g.bs_spacing, a.phi_g_d);
    los.g = cmat(n_elements, m_antennas);
    for (std::size_t n = 0; n < n_elements; ++n)
        for (std::size_t m = 0; m < m_antennas; ++m)
            los.g(n, m) = ris_side[n] * std::conj(bs_side[m]);
    return los;
}

}  // namespace risim
