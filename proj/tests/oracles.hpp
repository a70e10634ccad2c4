#pragma once

// Test-only reference computations, deliberately independent of the library
// code paths they are used to check.
//  - characteristic polynomial via the Faddeev-LeVerrier trace recursion
//  - polynomial roots via Durand-Kerner simultaneous iteration
// Together these give eigenvalues without touching the Schur machinery.

#include <complex>
#include <vector>

#include "isofactor/matrix.hpp"

namespace oracle {

using isofactor::cplx;
using isofactor::Mat;

// coefficients c of p(x) = x^n + c[n-1] x^{n-1} + ... + c[0]
inline std::vector<cplx> char_poly(const Mat& a) {
    const int n = a.rows();
    std::vector<cplx> c(n);
    Mat m = a;
    for (int k = 1; k <= n; ++k) {
        const cplx ck = -m.trace() / static_cast<double>(k);
        c[n - k] = ck;
        if (k < n) {
            Mat shifted = m;
            for (int i = 0; i < n; ++i) shifted(i, i) += ck;
            m = a * shifted;
        }
    }
    return c;
}

inline cplx eval_monic(const std::vector<cplx>& c, cplx x) {
    cplx v = 1.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) v = v * x + c[k];
    return v;
}

inline std::vector<cplx> durand_kerner(const std::vector<cplx>& c, int iters = 2000) {
    const int n = static_cast<int>(c.size());
    std::vector<cplx> z(n);
    const cplx seed(0.4, 0.9); // standard non-real, non-root-of-unity seed
    z[0] = 1.0;
    for (int i = 1; i < n; ++i) z[i] = z[i - 1] * seed;
    for (int it = 0; it < iters; ++it) {
        double moved = 0.0;
        for (int i = 0; i < n; ++i) {
            cplx denom = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= (z[i] - z[j]);
            if (std::abs(denom) == 0.0) continue;
            const cplx step = eval_monic(c, z[i]) / denom;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14) break;
    }
    return z;
}

inline std::vector<cplx> eigenvalues(const Mat& a) { return durand_kerner(char_poly(a)); }

// Greedy multiset match; returns the largest pairing distance, or a huge
// value when the sizes differ.
inline double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
    if (a.size() != b.size()) return 1e30;
    double worst = 0.0;
    for (const cplx& x : a) {
        size_t best = 0;
        double bestd = 1e300;
        for (size_t j = 0; j < b.size(); ++j) {
            const double d = std::abs(x - b[j]);
            if (d < bestd) {
                bestd = d;
                best = j;
            }
        }
        worst = std::max(worst, bestd);
        b.erase(b.begin() + static_cast<long>(best));
    }
    return worst;
}

} // namespace oracle
