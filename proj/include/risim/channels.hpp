// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "risim/geometry.hpp"
#include "risim/linalg.hpp"
#include "risim/rng.hpp"

#include <cstddef>

namespace risim {

// One Rician link: k_factor is linear (not dB) and may be +infinity for a
// pure line-of-sight link; beta is the large-scale power gain.
struct RicianLinkParams {
    double k_factor = 1.0;
    double beta = 1.0;

    void validate() const;
};

// Unit-modulus line-of-sight responses. h_d: BS-UE (length M); h_r: RIS-UE
// (length N); g: BS-RIS (N x M, rank one for an ideal planar wavefront).
struct LosComponents {
    cvec h_d;
    cvec h_r;
    cmat g;
};

// Uplink-oriented small-scale realization. d_cascade row n equals
// conj(h_r[n]) * g(n, :), so the composite channel seen at the BS for a
// reflection word rc is h_d + d_cascade^H conj(rc).
struct ChannelRealization {
    cvec h_d;
    cvec h_r;
    cmat g;
    cmat d_cascade;
};

// Full statistical description of the scene; the sampler for everything the
// simulator draws per trial.
struct ChannelModel {
    std::size_t m_antennas = 0;
    std::size_t n_elements = 0;
    LosComponents los;
    RicianLinkParams direct;   // h_d
    RicianLinkParams ris_ue;   // h_r
    RicianLinkParams bs_ris;   // g
    bool direct_blocked = false;

    void validate() const;
    ChannelRealization draw(Rng& rng) const;
};

// sqrt(beta/(K+1)) (sqrt(K) los + nlos), nlos ~ CN(0, I). K = +inf yields
// sqrt(beta) * los exactly and consumes no draws.
cvec rician_draw(const cvec& los, const RicianLinkParams& p, Rng& rng);
cmat rician_draw(const cmat& los, const RicianLinkParams& p, Rng& rng);

// diag(h_r^H) g.
cmat cascade(const cvec& h_r, const cmat& g);

// h_d + d_cascade^H conj(rc); rc entries must be unit-modulus reflection
// coefficients.
cvec composite_channel(const cvec& h_d, const cmat& d_cascade, const cvec& rc);

// LoS responses for a scene: h_d and g from the BS array angles, h_r and the
// RIS side of g from the RIS array angles.
LosComponents los_from_angles(const AngleSet& a, const SystemGeometry& g, std::size_t m_antennas,
                              std::size_t n_elements);

}  // namespace risim
