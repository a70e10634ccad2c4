#pragma once

// Singular value decomposition by one-sided complex Jacobi rotations, a
// Hermitian eigensolver by two-sided Jacobi, and the rank/kernel decisions
// built on top of them. Kernel thresholds are relative to the largest
// singular value; a singular value within a factor of ten of the threshold
// makes the rank decision ambiguous and raises NumericalError instead of
// silently picking a side.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "errors.hpp"
#include "matrix.hpp"

namespace isofactor {

namespace detail {

// tangent of the Jacobi angle for the 2x2 Hermitian section [[a, g],[~g, b]]
inline double jacobi_tangent(double a, double b, double absg) {
    const double tau = (b - a) / (2.0 * absg);
    if (tau == 0.0) return 1.0;
    const double t = 1.0 / (std::abs(tau) + std::hypot(1.0, tau));
    return tau > 0 ? t : -t;
}

} // namespace detail

struct SvdResult {
    Mat U;                     // m x min(m,n), orthonormal columns
    std::vector<double> sigma; // descending, length min(m,n)
    Mat V;                     // n x n unitary; A = U diag(sigma) V_thin^*
                               // where V_thin is the first min(m,n) columns
};

// Extend the orthonormal columns already in u (those marked used) to a full
// orthonormal set, writing into the unmarked columns.
inline void complete_orthonormal(Mat& u, const std::vector<bool>& good) {
    const int m = u.rows(), n = u.cols();
    std::vector<Vec> have;
    for (int j = 0; j < n; ++j)
        if (good[j]) have.push_back(col(u, j));
    for (int j = 0; j < n; ++j) {
        if (good[j]) continue;
        Vec best;
        double best_norm = -1.0;
        for (int e = 0; e < m; ++e) {
            Vec cand(m, cplx(0.0));
            cand[e] = 1.0;
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& h : have) cand = cand - dot(h, cand) * h;
            const double nn = norm2(cand);
            if (nn > best_norm) {
                best_norm = nn;
                best = std::move(cand);
            }
        }
        if (best_norm <= 1e-8)
            throw NumericalError("complete_orthonormal: no direction left");
        best = (1.0 / best_norm) * best;
        set_col(u, j, best);
        have.push_back(std::move(best));
    }
}

inline SvdResult svd_decompose(const Mat& a_in) {
    if (a_in.rows() < a_in.cols()) {
        // factor the adjoint; the U of A^* provides the leading columns of
        // V and the rest is an orthonormal completion (the kernel of A)
        SvdResult s = svd_decompose(a_in.adjoint());
        const int m = a_in.rows(), n = a_in.cols();
        Mat vfull(n, n);
        std::vector<bool> good(n, false);
        for (int j = 0; j < m; ++j) {
            set_col(vfull, j, col(s.U, j));
            good[j] = true;
        }
        complete_orthonormal(vfull, good);
        return {std::move(s.V), std::move(s.sigma), std::move(vfull)};
    }
    const int m = a_in.rows(), n = a_in.cols();
    Mat w = a_in;
    Mat v = Mat::identity(n);
    const double eps = 2.2204460492503131e-16;

    bool converged = (n <= 1);
    for (int sweep = 0; sweep < 64 && !converged; ++sweep) {
        converged = true;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                cplx g = 0.0;
                double alpha = 0.0, beta = 0.0;
                for (int i = 0; i < m; ++i) {
                    g += std::conj(w(i, p)) * w(i, q);
                    alpha += std::norm(w(i, p));
                    beta += std::norm(w(i, q));
                }
                const double absg = std::abs(g);
                if (absg <= 8.0 * eps * std::sqrt(alpha * beta) || absg == 0.0) continue;
                converged = false;
                const cplx u = g / absg;
                const double t = detail::jacobi_tangent(alpha, beta, absg);
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = c * t;
                const cplx ubar = std::conj(u);
                for (int i = 0; i < m; ++i) {
                    const cplx xp = w(i, p), xq = w(i, q);
                    w(i, p) = c * xp - s * ubar * xq;
                    w(i, q) = s * u * xp + c * xq;
                }
                for (int i = 0; i < n; ++i) {
                    const cplx xp = v(i, p), xq = v(i, q);
                    v(i, p) = c * xp - s * ubar * xq;
                    v(i, q) = s * u * xp + c * xq;
                }
            }
        }
    }
    if (!converged) throw NumericalError("svd_decompose: Jacobi sweeps did not converge");

    std::vector<double> sig(n);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += std::norm(w(i, j));
        sig[j] = std::sqrt(s);
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return sig[i] > sig[j]; });

    SvdResult r;
    r.sigma.resize(n);
    r.U = Mat(m, n);
    r.V = Mat(n, n);
    const double smax = sig[order[0]];
    std::vector<bool> unit_col(n, false);
    for (int j = 0; j < n; ++j) {
        const int src = order[j];
        r.sigma[j] = sig[src];
        set_col(r.V, j, col(v, src));
        if (sig[src] > smax * 1e-13 && sig[src] > 0.0) {
            set_col(r.U, j, (1.0 / sig[src]) * col(w, src));
            unit_col[j] = true;
        }
    }
    bool all = true;
    for (bool b : unit_col) all = all && b;
    if (!all) complete_orthonormal(r.U, unit_col);
    return r;
}

// --- rank and kernel decisions ---

// scale_floor guards matrices whose own largest singular value has already
// collapsed to roundoff (high powers of nilpotent operators): the threshold
// never drops below rank_tol * scale_floor.
inline int guarded_nullity(const std::vector<double>& sigma, double rank_tol,
                           const std::string& what, double scale_floor = 0.0) {
    const int n = static_cast<int>(sigma.size());
    if (n == 0) return 0;
    const double smax = std::max(sigma[0], scale_floor);
    if (smax == 0.0) return n;
    const double thr = rank_tol * smax;
    int nul = 0;
    for (double s : sigma) {
        if (s >= 0.1 * thr && s < 10.0 * thr)
            throw NumericalError("ambiguous rank decision in " + what +
                                 ": singular value within a factor 10 of the threshold");
        if (s < thr) ++nul;
    }
    return nul;
}

inline int nullity(const Mat& a, double rank_tol, const std::string& what = "nullity",
                   double scale_floor = 0.0) {
    std::vector<double> sigma = svd_decompose(a).sigma;
    sigma.resize(a.cols(), 0.0); // wide input: structural null directions
    return guarded_nullity(sigma, rank_tol, what, scale_floor);
}

// Euclidean-orthonormal basis of the (right) kernel, one column per null
// direction; empty matrix when the kernel is trivial.
inline Mat kernel_basis(const Mat& a, double rank_tol, const std::string& what = "kernel",
                        double scale_floor = 0.0) {
    SvdResult s = svd_decompose(a);
    s.sigma.resize(a.cols(), 0.0);
    const int k = guarded_nullity(s.sigma, rank_tol, what, scale_floor);
    const int n = a.cols();
    if (k == 0) return Mat(n, 0);
    Mat b(n, k);
    for (int j = 0; j < k; ++j) set_col(b, j, col(s.V, n - k + j));
    return b;
}

// Right singular directions with singular value below an absolute
// threshold. The caller supplies the threshold as a semantic boundary
// (e.g. a clustering radius), so there is no ambiguity guard.
inline Mat kernel_basis_below(const Mat& a, double thr) {
    SvdResult s = svd_decompose(a);
    s.sigma.resize(a.cols(), 0.0);
    const int n = a.cols();
    int k = 0;
    for (double sig : s.sigma)
        if (sig < thr) ++k;
    if (k == 0) return Mat(n, 0);
    Mat b(n, k);
    for (int j = 0; j < k; ++j) set_col(b, j, col(s.V, n - k + j));
    return b;
}

// Kernel basis when theory pins the nullity to the window [lo, hi] (for
// powers of a shifted matrix the kernel grows strictly until it reaches the
// algebraic multiplicity). The cut goes at the widest singular value gap
// inside the window, which stays decisive when an unrelated direction drifts
// into an absolute threshold band: the true null directions sit at roundoff
// level, far below anything structurally nonzero. rank_tol * scale_floor
// gives the expected size of a fully collapsed matrix for the all-null cut.
inline std::pair<int, Mat> kernel_basis_in_range(const Mat& a, int lo, int hi,
                                                 double rank_tol,
                                                 double scale_floor,
                                                 const std::string& what) {
    SvdResult s = svd_decompose(a);
    s.sigma.resize(a.cols(), 0.0);
    const int n = a.cols();
    lo = std::max(lo, 0);
    hi = std::min(hi, n);
    if (lo > hi)
        throw DomainError("kernel_basis_in_range: empty nullity window");
    const double smax = std::max(s.sigma.empty() ? 0.0 : s.sigma[0], scale_floor);
    int best = -1;
    double best_score = -1.0;
    for (int j = lo; j <= hi; ++j) {
        const double kept = j == n ? rank_tol * scale_floor : s.sigma[n - j - 1];
        const double dropped = j == 0 ? rank_tol * smax : s.sigma[n - j];
        const double score =
            dropped > 0.0
                ? kept / dropped
                : (kept > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        if (score > best_score) {
            best_score = score;
            best = j;
        }
    }
    if (best_score < 1e2)
        throw NumericalError("ambiguous rank decision in " + what +
                             ": no decisive singular value gap in the "
                             "admissible window");
    Mat b(n, best);
    for (int j = 0; j < best; ++j) set_col(b, j, col(s.V, n - best + j));
    return {best, b};
}

// Minimum-norm least-squares solve via the pseudoinverse.
inline Vec pinv_solve(const Mat& a, const Vec& b, double rank_tol) {
    SvdResult s = svd_decompose(a);
    const double smax = s.sigma.empty() ? 0.0 : s.sigma[0];
    Vec x(a.cols(), cplx(0.0));
    for (int j = 0; j < static_cast<int>(s.sigma.size()); ++j) {
        if (s.sigma[j] <= rank_tol * smax || s.sigma[j] == 0.0) continue;
        const cplx coef = dot(col(s.U, j), b) / s.sigma[j];
        const Vec vj = col(s.V, j);
        for (int i = 0; i < a.cols(); ++i) x[i] += coef * vj[i];
    }
    return x;
}

// --- Hermitian eigendecomposition (two-sided Jacobi) ---

struct HermEig {
    std::vector<double> lambda; // descending
    Mat vectors;                // unitary; H = V diag(lambda) V^*
};

inline HermEig hermitian_eigen(Mat h) {
    const int n = h.rows();
    if (n != h.cols()) throw DomainError("hermitian_eigen: matrix must be square");
    Mat v = Mat::identity(n);
    const double eps = 2.2204460492503131e-16;
    const double scale = std::max(1.0, h.frob_norm());

    bool converged = (n <= 1);
    for (int sweep = 0; sweep < 64 && !converged; ++sweep) {
        converged = true;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx g = h(p, q);
                const double absg = std::abs(g);
                if (absg <= 4.0 * eps * scale) continue;
                converged = false;
                const cplx u = g / absg;
                const cplx ubar = std::conj(u);
                const double t = detail::jacobi_tangent(h(p, p).real(), h(q, q).real(), absg);
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = c * t;
                for (int i = 0; i < n; ++i) { // H <- H R
                    const cplx xp = h(i, p), xq = h(i, q);
                    h(i, p) = c * xp - s * ubar * xq;
                    h(i, q) = s * u * xp + c * xq;
                }
                for (int j = 0; j < n; ++j) { // H <- R^* H
                    const cplx xp = h(p, j), xq = h(q, j);
                    h(p, j) = c * xp - s * u * xq;
                    h(q, j) = s * ubar * xp + c * xq;
                }
                for (int i = 0; i < n; ++i) { // V <- V R
                    const cplx xp = v(i, p), xq = v(i, q);
                    v(i, p) = c * xp - s * ubar * xq;
                    v(i, q) = s * u * xp + c * xq;
                }
            }
        }
    }
    if (!converged) throw NumericalError("hermitian_eigen: Jacobi sweeps did not converge");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return h(i, i).real() > h(j, j).real(); });
    HermEig r;
    r.lambda.resize(n);
    r.vectors = Mat(n, n);
    for (int j = 0; j < n; ++j) {
        r.lambda[j] = h(order[j], order[j]).real();
        set_col(r.vectors, j, col(v, order[j]));
    }
    return r;
}

// Re-orthonormalize nearly-orthonormal columns (two passes of modified
// Gram-Schmidt); used to polish eigenvector bases to working precision.
inline Mat orthonormalize_columns(const Mat& a) {
    Mat q = a;
    for (int j = 0; j < q.cols(); ++j) {
        Vec vj = col(q, j);
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i < j; ++i) {
                const Vec vi = col(q, i);
                vj = vj - dot(vi, vj) * vi;
            }
        const double nn = norm2(vj);
        if (nn <= 1e-12)
            throw NumericalError("orthonormalize_columns: rank-deficient input");
        set_col(q, j, (1.0 / nn) * vj);
    }
    return q;
}

} // namespace isofactor
