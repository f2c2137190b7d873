// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "risim/channels.hpp"
#include "risim/linalg.hpp"
#include "risim/rng.hpp"

#include <cstddef>

namespace risim {

// Uplink pilot slot parameters. The pilot symbol must be unit-modulus; power
// is carried by p_u.
struct PilotConfig {
    double p_u = 1.0;
    double sigma2_u = 0.0;
    cd pilot{1.0, 0.0};

    void validate() const;
};

// y = sqrt(p_u) * pilot * h + n, n ~ CN(0, sigma2_u I).
cvec uplink_receive(const cvec& h, const PilotConfig& cfg, Rng& rng);

// Least-squares inversion of one pilot slot: conj(pilot) * y / sqrt(p_u).
cvec ls_estimate(const cvec& y, const PilotConfig& cfg);

struct ChannelCovariance {
    cmat r;  // E[h h^H], Hermitian PSD
};

// Linear MMSE refinement of the LS estimate: R (R + (sigma2_u / p_u) I)^{-1} h_ls.
// At sigma2_u = 0 with full-rank R this is exactly the identity filter; if the
// noiseless system is singular the LS estimate is returned unchanged.
cvec mmse_estimate(const cvec& h_ls, const ChannelCovariance& cov, const PilotConfig& cfg);

// Sample covariance of the composite channel under a fixed reflection word:
// mean of h h^H over n_samples model draws, Hermitian-symmetrized.
ChannelCovariance sample_covariance(const cvec& rc, const ChannelModel& model,
                                    std::size_t n_samples, Rng& rng);

}  // namespace risim
