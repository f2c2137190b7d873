// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace risim {

using cd = std::complex<double>;
using cvec = std::vector<cd>;

// Dense row-major complex matrix. Sized once, never reshaped.
struct cmat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    cvec a;

    cmat() = default;
    cmat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    cd& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const cd& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

inline double norm2(const cvec& x) {
    double s = 0.0;
    for (const cd& v : x) s += std::norm(v);
    return s;
}

// x^H y
inline cd dot_conj(const cvec& x, const cvec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot_conj: size mismatch");
    cd s{0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

// A x
inline cvec matvec(const cmat& m, const cvec& x) {
    if (m.cols != x.size()) throw std::invalid_argument("matvec: size mismatch");
    cvec y(m.rows, cd{0.0, 0.0});
    for (std::size_t i = 0; i < m.rows; ++i) {
        cd s{0.0, 0.0};
        for (std::size_t j = 0; j < m.cols; ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

// A^H x
inline cvec adjoint_apply(const cmat& m, const cvec& x) {
    if (m.rows != x.size()) throw std::invalid_argument("adjoint_apply: size mismatch");
    cvec y(m.cols, cd{0.0, 0.0});
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) y[j] += std::conj(m(i, j)) * x[i];
    return y;
}

// LU factorization with partial pivoting. ok = false means a pivot fell below
// the singularity tolerance relative to the largest element.
struct LuFactors {
    cmat lu;
    std::vector<std::size_t> piv;
    bool ok = false;
};

LuFactors lu_factor(cmat m);
cvec lu_apply(const LuFactors& f, cvec b);

// Solves A x = b once; throws std::runtime_error on a singular system.
cvec lu_solve(cmat m, cvec b);

}  // namespace risim
