// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "risim/linalg.hpp"
#include "risim/rng.hpp"

namespace testsup {

using risim::cd;
using risim::cmat;
using risim::cvec;

inline cvec random_cvec(risim::Rng& rng, std::size_t n) {
    cvec v(n);
    for (auto& x : v) x = rng.cgaussian();
    return v;
}

inline cmat random_cmat(risim::Rng& rng, std::size_t r, std::size_t c) {
    cmat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.cgaussian();
    return m;
}

// Max elementwise modulus difference.
inline double max_abs_diff(const cvec& a, const cvec& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

// Smallest absolute difference between two angles on the circle.
inline double wrapped_angle_diff(double a, double b) {
    double d = std::remainder(a - b, 2.0 * M_PI);
    return std::abs(d);
}

inline double norm2(const cvec& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return s;
}

}  // namespace testsup
