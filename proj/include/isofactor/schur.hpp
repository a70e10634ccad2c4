#pragma once

// Complex Schur decomposition A = Q T Q^* with Q unitary and T upper
// triangular. Householder reduction to Hessenberg form, then single-shift
// QR iteration with Wilkinson shifts, Givens rotations and the usual
// small-subdiagonal deflation test. An exceptional shift is injected when
// an eigenvalue stalls; the total step budget is 50 * dim^2 and running
// past it raises NumericalError.

#include <cmath>
#include <complex>

#include "errors.hpp"
#include "matrix.hpp"

namespace isofactor {

struct Givens {
    double c;
    cplx s; // rotation [[c, s], [-conj(s), c]]
};

inline Givens make_givens(cplx f, cplx g) {
    const double af = std::abs(f), ag = std::abs(g);
    if (ag == 0.0) return {1.0, cplx(0.0)};
    if (af == 0.0) return {0.0, std::conj(g) / ag};
    const double d = std::hypot(af, ag);
    return {af / d, (f / af) * std::conj(g) / d};
}

namespace detail {

// rows i and i+1: (r_i, r_{i+1}) <- G (r_i, r_{i+1})
inline void rotate_rows(Mat& a, int i, const Givens& g) {
    for (int j = 0; j < a.cols(); ++j) {
        const cplx x = a(i, j), y = a(i + 1, j);
        a(i, j) = g.c * x + g.s * y;
        a(i + 1, j) = -std::conj(g.s) * x + g.c * y;
    }
}

// columns j and j+1: (c_j, c_{j+1}) <- (c_j, c_{j+1}) G^*
inline void rotate_cols(Mat& a, int j, const Givens& g) {
    for (int i = 0; i < a.rows(); ++i) {
        const cplx x = a(i, j), y = a(i, j + 1);
        a(i, j) = g.c * x + std::conj(g.s) * y;
        a(i, j + 1) = -g.s * x + g.c * y;
    }
}

inline cplx wilkinson_shift(const Mat& h, int hi) {
    const cplx a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
    const cplx c = h(hi, hi - 1), d = h(hi, hi);
    const cplx tr2 = 0.5 * (a + d);
    const cplx disc = std::sqrt(tr2 * tr2 - (a * d - b * c));
    const cplx e1 = tr2 + disc, e2 = tr2 - disc;
    return (std::abs(e1 - d) < std::abs(e2 - d)) ? e1 : e2;
}

} // namespace detail

struct SchurResult {
    Mat Q, T;
    int steps = 0;
};

inline SchurResult schur_decompose(Mat a) {
    const int n = a.rows();
    if (n != a.cols()) throw DomainError("schur_decompose: matrix must be square");
    if (!a.is_finite()) throw DomainError("schur_decompose: non-finite entries");
    Mat q = Mat::identity(n);

    // Householder reduction to upper Hessenberg form
    for (int k = 0; k + 2 < n; ++k) {
        Vec v(n - k - 1);
        double xnorm = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i - k - 1] = a(i, k);
            xnorm += std::norm(a(i, k));
        }
        xnorm = std::sqrt(xnorm);
        if (xnorm <= 1e-300) continue;
        const cplx x0 = v[0];
        const cplx alpha = (std::abs(x0) == 0.0) ? cplx(-xnorm)
                                                 : -(x0 / std::abs(x0)) * xnorm;
        v[0] -= alpha;
        double beta = 0.0;
        for (const auto& z : v) beta += std::norm(z);
        if (beta <= 1e-300) continue;
        const double scale = 2.0 / beta;
        // A <- P A, rows k+1..n-1
        for (int j = k; j < n; ++j) {
            cplx w = 0.0;
            for (int i = k + 1; i < n; ++i) w += std::conj(v[i - k - 1]) * a(i, j);
            w *= scale;
            for (int i = k + 1; i < n; ++i) a(i, j) -= v[i - k - 1] * w;
        }
        // A <- A P, columns k+1..n-1
        for (int i = 0; i < n; ++i) {
            cplx w = 0.0;
            for (int j = k + 1; j < n; ++j) w += a(i, j) * v[j - k - 1];
            w *= scale;
            for (int j = k + 1; j < n; ++j) a(i, j) -= w * std::conj(v[j - k - 1]);
        }
        // Q <- Q P
        for (int i = 0; i < n; ++i) {
            cplx w = 0.0;
            for (int j = k + 1; j < n; ++j) w += q(i, j) * v[j - k - 1];
            w *= scale;
            for (int j = k + 1; j < n; ++j) q(i, j) -= w * std::conj(v[j - k - 1]);
        }
    }
    for (int j = 0; j + 2 < n; ++j)
        for (int i = j + 2; i < n; ++i) a(i, j) = 0.0;

    // shifted QR on the Hessenberg form
    const double eps = 2.2204460492503131e-16;
    const double tiny = eps * std::max(1.0, a.frob_norm());
    const int budget = 50 * n * n;
    int steps = 0, stall = 0;
    int active = n;
    while (active > 1) {
        for (int k = active - 1; k > 0; --k) {
            const double bound = eps * (std::abs(a(k - 1, k - 1)) + std::abs(a(k, k)));
            if (std::abs(a(k, k - 1)) <= std::max(bound, tiny)) a(k, k - 1) = 0.0;
        }
        if (a(active - 1, active - 2) == cplx(0.0)) {
            --active;
            stall = 0;
            continue;
        }
        int lo = active - 1;
        while (lo > 0 && a(lo, lo - 1) != cplx(0.0)) --lo;
        const int hi = active - 1;

        if (++steps > budget)
            throw NumericalError("schur_decompose: QR iteration exceeded its budget");
        ++stall;
        cplx shift;
        if (stall % 12 == 0) // stalled; kick with an ad-hoc real displacement
            shift = a(hi, hi) + 0.75 * std::abs(a(hi, hi - 1));
        else
            shift = detail::wilkinson_shift(a, hi);

        cplx x = a(lo, lo) - shift;
        cplx z = a(lo + 1, lo);
        for (int k = lo; k < hi; ++k) {
            const Givens g = make_givens(x, z);
            detail::rotate_rows(a, k, g);
            detail::rotate_cols(a, k, g);
            detail::rotate_cols(q, k, g);
            if (k + 1 < hi) {
                x = a(k + 1, k);
                z = a(k + 2, k);
            }
        }
    }

    for (int j = 0; j < n; ++j)
        for (int i = j + 1; i < n; ++i) a(i, j) = 0.0;
    return {std::move(q), std::move(a), steps};
}

inline std::vector<cplx> eigenvalues(const Mat& a) {
    SchurResult s = schur_decompose(a);
    std::vector<cplx> e(a.rows());
    for (int i = 0; i < a.rows(); ++i) e[i] = s.T(i, i);
    return e;
}

} // namespace isofactor
