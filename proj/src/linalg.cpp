// SPDX-License-Identifier: Apache-2.0
#include "risim/linalg.hpp"

#include <cmath>

namespace risim {

LuFactors lu_factor(cmat m) {
    if (m.rows != m.cols) throw std::invalid_argument("lu_factor: matrix not square");
    const std::size_t n = m.rows;
    LuFactors f;
    f.piv.resize(n);

    double scale = 0.0;
    for (const cd& v : m.a) scale = std::max(scale, std::abs(v));
    const double tol = scale * 1e-13;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double cand = std::abs(m(i, k));
            if (cand > best) {
                best = cand;
                p = i;
            }
        }
        if (best <= tol) {
            f.ok = false;
            f.lu = std::move(m);
            return f;
        }
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
        f.piv[k] = p;
        const cd inv = 1.0 / m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cd l = m(i, k) * inv;
            m(i, k) = l;
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
        }
    }
    f.ok = true;
    f.lu = std::move(m);
    return f;
}

cvec lu_apply(const LuFactors& f, cvec b) {
    if (!f.ok) throw std::runtime_error("lu_apply: singular factorization");
    const std::size_t n = f.lu.rows;
    if (b.size() != n) throw std::invalid_argument("lu_apply: size mismatch");
    // The multipliers are stored in final (fully pivoted) row order, so the
    // permutation must be applied in full before the forward sweep.
    for (std::size_t k = 0; k < n; ++k)
        if (f.piv[k] != k) std::swap(b[k], b[f.piv[k]]);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = k + 1; i < n; ++i) b[i] -= f.lu(i, k) * b[k];
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t j = k + 1; j < n; ++j) b[k] -= f.lu(k, j) * b[j];
        b[k] /= f.lu(k, k);
    }
    return b;
}

cvec lu_solve(cmat m, cvec b) {
    LuFactors f = lu_factor(std::move(m));
    if (!f.ok) throw std::runtime_error("lu_solve: singular system");
    return lu_apply(f, std::move(b));
}

}  // namespace risim
