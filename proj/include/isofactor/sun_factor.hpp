#pragma once

// Factorizations inside SU(n) with the Euclidean Hermitian form: reversibility
// detection via conjugation-closed spectra, splits of reversible elements into
// two or three unitary involutions, the split of any special unitary matrix
// into two reversible ones, reversible square roots, and single commutators.

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "factorization.hpp"
#include "matrix.hpp"
#include "schur.hpp"
#include "spectrum.hpp"
#include "tolerances.hpp"

namespace isofactor {

// Orthonormal eigensystem of a (Euclidean-)unitary matrix together with a
// matching of the spectrum against its conjugate. Column i of `vectors` is an
// eigenvector for lambda[i]. `pairs` holds (a, b) with lambda[b] = conj
// lambda[a], both non-real; `fixed` holds the indices with lambda = +1 or -1.
struct EigenPairing {
    std::vector<cplx> lambda;
    Mat vectors;
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> fixed;

    std::vector<int> fixed_plus() const {
        std::vector<int> out;
        for (int i : fixed)
            if (lambda[i].real() > 0.0) out.push_back(i);
        return out;
    }
    std::vector<int> fixed_minus() const {
        std::vector<int> out;
        for (int i : fixed)
            if (lambda[i].real() <= 0.0) out.push_back(i);
        return out;
    }
};

namespace detail {

inline cplx unit_normalize(cplx z) {
    const double m = std::abs(z);
    return m > 0.0 ? z / m : cplx(1.0);
}

inline double euclid_unitarity_defect(const Mat& a) {
    const Mat g = a.adjoint() * a - Mat::identity(a.cols());
    const double s = a.frob_norm();
    return g.frob_norm() / std::max(1.0, s * s);
}

inline void require_unitary(const Mat& a, const Tols& tols, const char* who) {
    if (a.rows() != a.cols())
        throw DomainError(std::string(who) + ": matrix must be square");
    if (!a.is_finite())
        throw DomainError(std::string(who) + ": non-finite entries");
    const double defect = euclid_unitarity_defect(a);
    if (defect > verification_tols(tols).residual)
        throw DomainError(std::string(who) + ": input is not unitary (defect " +
                          std::to_string(defect) + ")");
}

// Unitary matrices are normal, so the Schur triangle is diagonal and the
// Schur basis is an orthonormal eigenbasis. Eigenvalues come out sorted by
// phase in [0, 2pi) and normalized to unit modulus.
struct UnitaryEigen {
    std::vector<cplx> lambda;
    Mat vectors;
};

inline UnitaryEigen unitary_eigensystem(const Mat& a, const Tols& tols) {
    const int n = a.rows();
    const double scale = std::max(1.0, a.frob_norm());
    SchurResult s = schur_decompose(a);
    double off = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) off = std::max(off, std::abs(s.T(i, j)));
    if (off > 1e-7 * scale)
        throw NumericalError("unitary_eigensystem: Schur form is not diagonal; "
                             "input is not normal");

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::vector<double> phase(n);
    for (int i = 0; i < n; ++i) {
        const cplx d = s.T(i, i);
        if (std::abs(std::abs(d) - 1.0) > tols.unit_band())
            throw NumericalError("unitary_eigensystem: eigenvalue modulus "
                                 "departs from 1");
        phase[i] = phase_02pi(d);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return phase[x] < phase[y]; });

    UnitaryEigen out;
    out.lambda.resize(n);
    out.vectors = Mat::zero(n, n);
    for (int c = 0; c < n; ++c) {
        out.lambda[c] = unit_normalize(s.T(order[c], order[c]));
        for (int r = 0; r < n; ++r) out.vectors(r, c) = s.Q(r, order[c]);
    }
    return out;
}

inline Mat frame(const Mat& v, const Mat& b) { return v * b * v.adjoint(); }

inline cplx snap_sign(cplx d, const char* who) {
    const double dp = std::abs(d - 1.0), dm = std::abs(d + 1.0);
    if (std::min(dp, dm) > 1e-6)
        throw NumericalError(std::string(who) + ": determinant is not +-1");
    return dp <= dm ? cplx(1.0) : cplx(-1.0);
}

inline void require_pairing_covers(const EigenPairing& p, const char* who) {
    const int n = static_cast<int>(p.lambda.size());
    std::vector<int> seen(n, 0);
    for (auto [a, b] : p.pairs) {
        if (a < 0 || b < 0 || a >= n || b >= n || a == b)
            throw DomainError(std::string(who) + ": malformed pairing");
        ++seen[a];
        ++seen[b];
    }
    for (int i : p.fixed) {
        if (i < 0 || i >= n)
            throw DomainError(std::string(who) + ": malformed pairing");
        ++seen[i];
    }
    for (int i = 0; i < n; ++i)
        if (seen[i] != 1)
            throw DomainError(std::string(who) +
                              ": pairing does not cover the spectrum (element "
                              "is not reversible)");
}

// Block scaffolding shared by the involution splits. In the eigenbasis, a
// conjugate pair (a, b) supports two kinds of unitary involution blocks:
//   kind 1:  w_a -> lambda w_b, w_b -> conj(lambda) w_a
//   kind 2:  w_a <-> w_b  (plain swap)
// whose product (kind 2 applied after kind 1) restores diag(lambda,
// conj(lambda)). Both blocks have determinant -1.
inline void put_pair_block(Mat& b, int a, int bb, cplx lambda, int kind) {
    if (kind == 1) {
        b(bb, a) = lambda;
        b(a, bb) = std::conj(lambda);
    } else {
        b(bb, a) = 1.0;
        b(a, bb) = 1.0;
    }
}

struct TwoInvolutions {
    Mat left, right; // target = left * right
    cplx det_left = 1.0, det_right = 1.0;
};

inline TwoInvolutions two_involutions_from_pairing(const EigenPairing& p) {
    require_pairing_covers(p, "two_involutions_from_pairing");
    const int n = static_cast<int>(p.lambda.size());
    const int m = static_cast<int>(p.pairs.size());
    const std::vector<int> plus = p.fixed_plus();
    const std::vector<int> minus = p.fixed_minus();

    // Diagonal entries on the fixed part, with invariant
    // s_left[i] * s_right[i] = sign(lambda_i). Baseline: the right factor
    // carries the -1 eigenvalues, the left factor fixes everything.
    std::vector<cplx> s_left(n, 1.0), s_right(n, 1.0);
    for (int i : minus) s_right[i] = -1.0;

    // Each pair block contributes det -1 to both factors, each -1 sign
    // contributes det -1 to its factor. When both factors sit at det -1 a
    // sign flip on the fixed part restores det +1 without changing the
    // product; with no fixed indices at all the -1 determinants stand.
    int det_left_sign = (m % 2 == 0) ? 1 : -1;
    int det_right_sign = ((m + static_cast<int>(minus.size())) % 2 == 0) ? 1 : -1;
    if (det_left_sign < 0 && det_right_sign < 0) {
        if (!plus.empty()) {
            s_left[plus[0]] = -1.0;
            s_right[plus[0]] = -1.0;
            det_left_sign = det_right_sign = 1;
        } else if (minus.size() >= 2) {
            s_left[minus[0]] = -1.0;
            s_right[minus[0]] = 1.0;
            det_left_sign = det_right_sign = 1;
        }
    }

    Mat b_left = Mat::zero(n, n), b_right = Mat::zero(n, n);
    for (auto [a, b] : p.pairs) {
        put_pair_block(b_right, a, b, unit_normalize(p.lambda[a]), 1);
        put_pair_block(b_left, a, b, 0.0, 2);
    }
    for (int i : p.fixed) {
        b_left(i, i) = s_left[i];
        b_right(i, i) = s_right[i];
    }

    TwoInvolutions out;
    out.left = frame(p.vectors, b_left);
    out.right = frame(p.vectors, b_right);
    out.det_left = det_left_sign;
    out.det_right = det_right_sign;
    return out;
}

inline std::array<Mat, 3> three_involutions_from_pairing(const EigenPairing& p) {
    require_pairing_covers(p, "three_involutions_from_pairing");
    const int n = static_cast<int>(p.lambda.size());
    const int m = static_cast<int>(p.pairs.size());
    if (!p.fixed.empty())
        throw DomainError("three_involutions_from_pairing: spectrum has a +-1 "
                          "eigenvalue; use the two-involution split");
    if (m % 2 == 0 || m < 3)
        throw DomainError("three_involutions_from_pairing: needs an odd number "
                          "(>= 3) of conjugate pairs");

    Mat b1 = Mat::zero(n, n), b2 = Mat::zero(n, n), b3 = Mat::zero(n, n);
    auto ident_block = [](Mat& b, int a, int bb) {
        b(a, a) = 1.0;
        b(bb, bb) = 1.0;
    };
    for (int t = 0; t < m; ++t) {
        auto [a, b] = p.pairs[t];
        const cplx lam = detail::unit_normalize(p.lambda[a]);
        if (t == 0) {
            put_pair_block(b1, a, b, lam, 1);
            ident_block(b2, a, b);
            put_pair_block(b3, a, b, 0.0, 2);
        } else if (t == 1) {
            ident_block(b1, a, b);
            put_pair_block(b2, a, b, lam, 1);
            put_pair_block(b3, a, b, 0.0, 2);
        } else {
            put_pair_block(b1, a, b, lam, 1);
            put_pair_block(b2, a, b, 0.0, 2);
            ident_block(b3, a, b);
        }
    }
    // product b3 * b2 * b1 restores the diagonal on every pair block, and
    // every factor carries an even number of det -1 blocks
    return {frame(p.vectors, b3), frame(p.vectors, b2), frame(p.vectors, b1)};
}

} // namespace detail

// True iff the eigenvalue multiset is closed under conjugation; the returned
// pairing is maximal (greedy nearest-conjugate matching in phase order) even
// when the answer is false.
inline std::pair<bool, EigenPairing> is_reversible_su(const Mat& t,
                                                      const Tols& tols = {}) {
    detail::require_unitary(t, tols, "is_reversible_su");
    detail::UnitaryEigen eig = detail::unitary_eigensystem(t, tols);
    const int n = t.rows();
    const double ptol = tols.pairing;

    EigenPairing p;
    p.lambda = eig.lambda;
    p.vectors = eig.vectors;
    std::vector<char> matched(n, 0);
    for (int i = 0; i < n; ++i) {
        if (std::abs(p.lambda[i] - 1.0) <= ptol ||
            std::abs(p.lambda[i] + 1.0) <= ptol) {
            p.fixed.push_back(i);
            matched[i] = 1;
        }
    }
    bool ok = true;
    for (int i = 0; i < n; ++i) {
        if (matched[i]) continue;
        const cplx want = std::conj(p.lambda[i]);
        int best = -1;
        double best_dist = 0.0;
        for (int j = 0; j < n; ++j) {
            if (matched[j] || j == i) continue;
            const double d = std::abs(p.lambda[j] - want);
            if (best < 0 || d < best_dist) {
                best = j;
                best_dist = d;
            }
        }
        if (best < 0 || best_dist > ptol) {
            ok = false;
            continue;
        }
        matched[i] = matched[best] = 1;
        if (phase_02pi(p.lambda[i]) <= phase_02pi(p.lambda[best]))
            p.pairs.emplace_back(i, best);
        else
            p.pairs.emplace_back(best, i);
    }
    return {ok, p};
}

inline Factorization reversible_to_two_involutions(const Mat& t,
                                                   const EigenPairing& pairing,
                                                   const Tols& tols = {}) {
    detail::require_unitary(t, tols, "reversible_to_two_involutions");
    detail::TwoInvolutions inv = detail::two_involutions_from_pairing(pairing);

    Factorization f;
    f.factors.push_back(
        {FactorTag::involution, inv.left, inv.det_left, -1, 1.0});
    f.factors.push_back(
        {FactorTag::involution, inv.right, inv.det_right, -1, 1.0});
    f.residual = rel_dist(inv.left * inv.right, t);
    if (f.residual > verification_tols(tols).residual)
        throw NumericalError("reversible_to_two_involutions: reconstruction "
                             "residual " + std::to_string(f.residual));
    return f;
}

inline Factorization reversible_to_three_involutions(const Mat& t,
                                                     const Tols& tols = {}) {
    auto [ok, pairing] = is_reversible_su(t, tols);
    if (!ok)
        throw DomainError("reversible_to_three_involutions: element is not "
                          "reversible");
    if (t.rows() <= 2)
        throw DomainError("reversible_to_three_involutions: needs dimension "
                          "> 2");
    std::array<Mat, 3> inv = detail::three_involutions_from_pairing(pairing);

    Factorization f;
    for (const Mat& m : inv)
        f.factors.push_back({FactorTag::involution, m,
                             detail::snap_sign(determinant(m),
                                               "reversible_to_three_involutions"),
                             -1, 1.0});
    f.residual = rel_dist(inv[0] * (inv[1] * inv[2]), t);
    if (f.residual > verification_tols(tols).residual)
        throw NumericalError("reversible_to_three_involutions: reconstruction "
                             "residual " + std::to_string(f.residual));
    return f;
}

// Splits special unitary T, with eigenvalues sorted by phase, into two
// commuting-with-T reversible factors given in the shared eigenbasis by
//   R1 = diag(mu_1, conj mu_1, mu_3, conj mu_3, ...)
//   R2 = diag(1, mu_2, conj mu_2, mu_4, conj mu_4, ...)
// where mu_j is the product of the first j eigenvalues; the trailing lone
// entry (mu_n = det T = 1) closes whichever diagonal has odd length.
struct TwoReversibleSplit {
    Mat r1, r2;
    EigenPairing pairing1, pairing2;
    double residual = 0.0;
};

inline TwoReversibleSplit two_reversible_split(const Mat& t,
                                               const Tols& tols = {}) {
    detail::require_unitary(t, tols, "two_reversible_split");
    const cplx det = determinant(t);
    if (std::abs(det - 1.0) > 1e2 * tols.residual)
        throw DomainError("two_reversible_split: determinant must be 1");
    detail::UnitaryEigen eig = detail::unitary_eigensystem(t, tols);
    const int n = t.rows();

    std::vector<cplx> mu(n + 1);
    mu[0] = 1.0;
    for (int j = 1; j <= n; ++j)
        mu[j] = detail::unit_normalize(mu[j - 1] * eig.lambda[j - 1]);

    std::vector<cplx> d1(n), d2(n);
    for (int p = 0; p < n; ++p) {
        d1[p] = (p % 2 == 0) ? mu[p + 1] : std::conj(mu[p]);
        d2[p] = (p == 0) ? cplx(1.0)
                         : ((p % 2 == 1) ? mu[p + 1] : std::conj(mu[p]));
    }

    // The pair layout of each diagonal is known in closed form; entries
    // within the residual tolerance of +-1 are snapped and recorded as fixed
    // so that downstream involution splits see exact signs.
    auto build = [&](std::vector<cplx>& d, int start) {
        EigenPairing p;
        p.vectors = eig.vectors;
        for (int i = 0; i < start; ++i) {
            d[i] = 1.0;
            p.fixed.push_back(i);
        }
        int s = start;
        for (; s + 1 < n; s += 2) {
            const cplx val = d[s];
            if (std::abs(val - 1.0) <= tols.residual) {
                d[s] = d[s + 1] = 1.0;
                p.fixed.push_back(s);
                p.fixed.push_back(s + 1);
            } else if (std::abs(val + 1.0) <= tols.residual) {
                d[s] = d[s + 1] = -1.0;
                p.fixed.push_back(s);
                p.fixed.push_back(s + 1);
            } else if (phase_02pi(val) <= phase_02pi(d[s + 1])) {
                p.pairs.emplace_back(s, s + 1);
            } else {
                p.pairs.emplace_back(s + 1, s);
            }
        }
        if (s < n) {
            // lone trailing entry carries mu_n = det
            d[s] = detail::snap_sign(d[s], "two_reversible_split");
            p.fixed.push_back(s);
        }
        p.lambda = d;
        return p;
    };

    TwoReversibleSplit out;
    out.pairing1 = build(d1, 0);
    out.pairing2 = build(d2, 1);
    out.r1 = detail::frame(eig.vectors, Mat::diagonal(d1));
    out.r2 = detail::frame(eig.vectors, Mat::diagonal(d2));
    out.residual = rel_dist(out.r1 * out.r2, t);
    if (out.residual > verification_tols(tols).residual)
        throw NumericalError("two_reversible_split: reconstruction residual " +
                             std::to_string(out.residual));
    return out;
}

// Reversible square root: paired eigenvalues take coherent principal roots
// (mu, conj mu), +1 lifts to 1, and -1 eigenvalues lift pairwise to (i, -i),
// which keeps the root both reversible and special unitary.
struct SqrtReversible {
    Mat s;
    EigenPairing pairing;
};

inline SqrtReversible unitary_sqrt_reversible(const Mat& t,
                                              const Tols& tols = {}) {
    auto [ok, p] = is_reversible_su(t, tols);
    if (!ok)
        throw DomainError("unitary_sqrt_reversible: element is not reversible");

    const int n = t.rows();
    std::vector<cplx> root(n, 1.0);
    EigenPairing sp;
    sp.vectors = p.vectors;
    sp.pairs = p.pairs;
    for (auto [a, b] : p.pairs) {
        const cplx mu = std::sqrt(detail::unit_normalize(p.lambda[a]));
        root[a] = detail::unit_normalize(mu);
        root[b] = std::conj(root[a]);
    }
    const std::vector<int> minus = p.fixed_minus();
    if (minus.size() % 2 != 0)
        throw DomainError("unitary_sqrt_reversible: -1 eigenvalue has odd "
                          "multiplicity; no special unitary reversible root "
                          "within the pairing");
    for (std::size_t k = 0; k + 1 < minus.size(); k += 2) {
        root[minus[k]] = cplx(0.0, 1.0);
        root[minus[k + 1]] = cplx(0.0, -1.0);
        sp.pairs.emplace_back(minus[k], minus[k + 1]);
    }
    for (int i : p.fixed_plus()) {
        root[i] = 1.0;
        sp.fixed.push_back(i);
    }
    sp.lambda = root;

    SqrtReversible out;
    out.pairing = sp;
    out.s = detail::frame(p.vectors, Mat::diagonal(root));
    if (rel_dist(out.s * out.s, t) > verification_tols(tols).residual)
        throw NumericalError("unitary_sqrt_reversible: squared root does not "
                             "reproduce the input");
    return out;
}

// T = X Y X^{-1} Y^{-1} for reversible special unitary T, through a
// reversible square root S: if S splits as two involutions (j1, j2) then
// T = S^2 = [j1, j2]; if S needs three involutions (i1, i2, i3, product in
// that order) then T = [i1 i3, i3 i2].
struct CommutatorSplit {
    Mat x, y;
    double residual = 0.0;
};

inline CommutatorSplit commutator_split(const Mat& t, const Tols& tols = {}) {
    SqrtReversible root = unitary_sqrt_reversible(t, tols);
    const EigenPairing& sp = root.pairing;

    CommutatorSplit out;
    if (sp.pairs.size() % 2 == 1 && sp.fixed.empty() && t.rows() > 2) {
        std::array<Mat, 3> inv = detail::three_involutions_from_pairing(sp);
        out.x = inv[0] * inv[2];
        out.y = inv[2] * inv[1];
    } else {
        detail::TwoInvolutions inv = detail::two_involutions_from_pairing(sp);
        out.x = inv.left;
        out.y = inv.right;
    }
    out.residual =
        rel_dist(out.x * out.y * out.x.adjoint() * out.y.adjoint(), t);
    if (out.residual > verification_tols(tols).residual)
        throw NumericalError("commutator_split: commutator residual " +
                             std::to_string(out.residual));
    return out;
}

// Involution factorization of a special unitary matrix: at most four factors,
// five when n = 2 mod 4 forces a three-involution split of the first
// reversible part. Involutions of determinant -1 only appear for n = 2, where
// no room for redistribution exists.
inline Factorization factor_su(const Mat& t, const Tols& tols = {}) {
    detail::require_unitary(t, tols, "factor_su");
    if (t.rows() < 2) throw DomainError("factor_su: needs dimension >= 2");
    const cplx det = determinant(t);
    if (std::abs(det - 1.0) > 1e2 * tols.residual)
        throw DomainError("factor_su: determinant must be 1");

    Factorization f;
    if (rel_dist(t, Mat::identity(t.rows())) <= tols.residual) {
        f.residual = rel_dist(t, Mat::identity(t.rows()));
        return f;
    }

    TwoReversibleSplit split = two_reversible_split(t, tols);
    auto emit = [&](const Mat& r, const EigenPairing& p) {
        if (rel_dist(r, Mat::identity(r.rows())) <= tols.residual) return;
        if (p.pairs.size() % 2 == 1 && p.fixed.empty() && r.rows() > 2) {
            for (const Mat& m : detail::three_involutions_from_pairing(p))
                f.factors.push_back(
                    {FactorTag::involution, m,
                     detail::snap_sign(determinant(m), "factor_su"), -1, 1.0});
        } else {
            detail::TwoInvolutions inv = detail::two_involutions_from_pairing(p);
            f.factors.push_back(
                {FactorTag::involution, inv.left, inv.det_left, -1, 1.0});
            f.factors.push_back(
                {FactorTag::involution, inv.right, inv.det_right, -1, 1.0});
        }
    };
    emit(split.r1, split.pairing1);
    emit(split.r2, split.pairing2);

    const std::size_t bound = (t.rows() % 4 == 2) ? 5 : 4;
    if (f.factors.size() > bound)
        throw NumericalError("factor_su: factor count exceeds the bound");
    f.residual = rel_dist(compose_factors(f.factors, t.rows()), t);
    if (f.residual > verification_tols(tols).residual)
        throw NumericalError("factor_su: reconstruction residual " +
                             std::to_string(f.residual));
    return f;
}

} // namespace isofactor
