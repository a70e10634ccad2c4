#pragma once

// Constructive involution factorizations for form-unitary matrices on the
// (n,1) form. Each conjugacy class gets its own pipeline:
//   elliptic             one 0-reflection times at most four involutions
//   hyperbolic           one 1-reflection times at most four involutions
//   vertical translation four involutions
//   non-vertical         two involutions
//   ellipto-translation  one 1-reflection times four involutions
//   ellipto-parabolic    one 2-reflection times at most four involutions
// plus the class-agnostic strongly_reversible_split_un1 (T = tau sigma with
// both factors involutions) and the Hermitian witness that certifies a
// form-unitary matrix as an involution. decompose() classifies and dispatches.
//
// All pipelines return target = lift_scalar * F1 * F2 * ... with unit-modulus
// lift_scalar, so the factored map agrees with the input projectively and the
// reflection factor carries the class invariant (k, lambda).

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "classify.hpp"
#include "factorization.hpp"
#include "sun_factor.hpp"

namespace isofactor {

// --- Hermitian witness -----------------------------------------------------
//
// For form-unitary A the matrix H = J A^* satisfies
//   H - H^* = A^{-1} (I - A^2) J,
// so H is Hermitian exactly when A is an involution. The defect is the
// relative anti-Hermitian part of H.

struct HermitianWitness {
    bool ok = false;
    Mat h;
    double defect = 0.0;
};

inline HermitianWitness hermitian_witness(const HermitianSpace& sp, const Mat& a,
                                          const Tols& tols = {}) {
    if (a.rows() != sp.dim() || a.cols() != sp.dim())
        throw DomainError("hermitian_witness: matrix does not match the space");
    HermitianWitness w;
    w.h = sp.form() * a.adjoint();
    w.defect = (w.h - w.h.adjoint()).frob_norm() / std::max(1.0, w.h.frob_norm());
    w.ok = w.defect <= verification_tols(tols).residual;
    return w;
}

namespace detail {

// Coordinates of t restricted to the span of form-orthonormal space-like
// columns w: the (i,j) entry is <t w_j, w_i>.
inline Mat positive_restriction(const HermitianSpace& sp, const Mat& t, const Mat& w) {
    const int m = w.cols();
    Mat out(m, m);
    for (int j = 0; j < m; ++j) {
        const Vec tw = t * col(w, j);
        for (int i = 0; i < m; ++i) out(i, j) = sp.inner(tw, col(w, i));
    }
    return out;
}

// Change of basis carrying block matrices written in the columns' coordinates
// back to the standard ones.
struct Frame {
    Mat b, b_inv;
    Mat embed(const Mat& block) const { return b * block * b_inv; }
};

inline Frame make_frame(const Mat& basis_cols) {
    if (basis_cols.rows() != basis_cols.cols())
        throw NumericalError("make_frame: basis does not span the space");
    return Frame{basis_cols, inverse(basis_cols)};
}

// Given light-like u and any x with h = <u,x> != 0, returns v in span{u,x}
// with <v,v> = 0 and <u,v> = 1.
inline Vec complete_null_pair(const HermitianSpace& sp, const Vec& u, const Vec& x) {
    const cplx h = sp.inner(u, x);
    if (std::abs(h) <= 1e-10 * std::max(1.0, norm2(u) * norm2(x)))
        throw NumericalError("complete_null_pair: vectors do not pair");
    Vec v = std::conj(1.0 / h) * x;
    v = v - (sp.self_product(v) / 2.0) * u;
    return v;
}

// The 2x2 coordinate factorization of a unipotent shear M = [[1,a],[0,1]],
// a purely imaginary and nonzero, into four involutions that are unitary for
// the null-pair Gram [[0,1],[1,0]]:
//   M = tau1 sigma1 tau2 sigma2
// with tau1 sigma1 = diag(2, 1/2) and tau2 sigma2 = diag(1/2, 2) M. The
// second pair swaps the eigenvectors (1,0) and (a,3) of its product, which
// form another null pair for the Gram.
inline std::array<Mat, 4> shear_involutions(cplx a) {
    const Mat sigma1(2, 2, {0.0, 1.0, 1.0, 0.0});
    const Mat tau1(2, 2, {0.0, 2.0, 0.5, 0.0});
    const Mat e(2, 2, {1.0 / 3.0, a, 0.0, 3.0});
    const Mat sigma2 = e * (sigma1 * inverse(e));
    const Mat b(2, 2, {0.5, 0.5 * a, 0.0, 2.0});
    const Mat tau2 = b * sigma2;
    return {tau1, sigma1, tau2, sigma2};
}

// Basis (u, e, v) of the degenerate 3-dim invariant block with Gram
//   [[0,0,1],[0,1,0],[1,0,0]]
// built from a Jordan chain {u, x2, x3}. Coordinates come from the dual
// pairing: y = a u + b e + c v has a = <y,v>, b = <y,e>, c = <y,u>.
struct HeisenbergBasis {
    Vec u, e, v;
};

inline Vec heisenberg_coords(const HermitianSpace& sp, const HeisenbergBasis& hb,
                             const Vec& y) {
    return Vec{sp.inner(y, hb.v), sp.inner(y, hb.e), sp.inner(y, hb.u)};
}

inline HeisenbergBasis heisenberg_basis(const HermitianSpace& sp, const Mat& chain,
                                        const Tols& tols) {
    HeisenbergBasis hb;
    hb.u = col(chain, 0);
    hb.v = complete_null_pair(sp, hb.u, col(chain, 2));
    const Vec x2 = col(chain, 1);
    const Vec e1 = x2 - sp.inner(x2, hb.v) * hb.u - sp.inner(x2, hb.u) * hb.v;
    const double p = sp.self_product(e1);
    if (p <= tols.rank * norm2(e1) * norm2(e1))
        throw NumericalError("heisenberg_basis: middle chain vector is not space-like");
    hb.e = (1.0 / std::sqrt(p)) * e1;
    return hb;
}

// Shears and rotates the basis so the coordinate matrix of the unipotent
// action t1 becomes [[1,b,-b^2/2],[0,1,-b],[0,0,1]] with b real positive.
// The shift e -> e + w u (with the null pair corrected to keep the Gram)
// moves Im <t1 v, v> to zero without touching b; the phase on e then makes
// b real.
inline void realign_heisenberg(const HermitianSpace& sp, const Mat& t1,
                               HeisenbergBasis& hb, const Tols& tols) {
    const cplx beta = sp.inner(t1 * hb.e, hb.v);
    if (std::abs(beta) <= 1e3 * tols.residual)
        throw NumericalError("realign_heisenberg: horizontal part is numerically zero");
    const cplx delta = sp.inner(t1 * hb.v, hb.v);
    const cplx w = cplx(0.0, -std::imag(delta) / (2.0 * std::norm(beta))) * beta;
    hb.v = hb.v - (std::norm(w) / 2.0) * hb.u - std::conj(w) * hb.e;
    hb.e = hb.e + w * hb.u;
    hb.e = (std::conj(beta) / std::abs(beta)) * hb.e;
}

// Two coordinate involutions for a unipotent Heisenberg action with nonzero
// horizontal part. With the aligned coordinate matrix
//   N = [[1,b,-b^2/2],[0,1,-b],[0,0,1]],  b > 0,
// the Gram-unitary S = diag(-1,1,-1) conjugates N to N^{-1}, so N = (N S) S.
struct ShearBlocks {
    Mat basis; // dim x 3 columns (u, e, v)
    Mat i1, i2;
};

inline ShearBlocks heisenberg_involutions(const HermitianSpace& sp, const Mat& t1,
                                          const Mat& chain, const Tols& tols) {
    HeisenbergBasis hb = heisenberg_basis(sp, chain, tols);
    realign_heisenberg(sp, t1, hb, tols);
    Mat m(3, 3);
    const Vec* cols[3] = {&hb.u, &hb.e, &hb.v};
    for (int j = 0; j < 3; ++j) {
        const Vec cc = heisenberg_coords(sp, hb, t1 * *cols[j]);
        for (int i = 0; i < 3; ++i) m(i, j) = cc[i];
    }
    const cplx bm = m(0, 1);
    double dev = std::max({std::abs(m(0, 0) - 1.0), std::abs(m(1, 1) - 1.0),
                           std::abs(m(2, 2) - 1.0), std::abs(m(1, 0)),
                           std::abs(m(2, 0)), std::abs(m(2, 1)),
                           std::abs(std::imag(bm)), std::abs(m(1, 2) + std::conj(bm)),
                           std::abs(m(0, 2) + std::norm(bm) / 2.0)});
    if (dev > 1e-6 * std::max(1.0, m.max_abs()))
        throw NumericalError("heisenberg_involutions: action is not an aligned "
                             "unipotent Heisenberg shear");
    const double b = bm.real();
    const Mat n(3, 3, {1.0, b, -b * b / 2.0, 0.0, 1.0, -b, 0.0, 0.0, 1.0});
    const Mat s = Mat::diagonal({-1.0, 1.0, -1.0});
    ShearBlocks out;
    out.basis = from_cols({hb.u, hb.e, hb.v});
    out.i1 = n * s;
    out.i2 = s;
    return out;
}

// Splits a (near) special unitary block into four unitary involutions whose
// ordered product is the block; unused slots stay identity.
inline std::array<Mat, 4> unitary_involution_quad(const Mat& m, const Tols& tols) {
    const int k = m.rows();
    std::array<Mat, 4> out{Mat::identity(k), Mat::identity(k), Mat::identity(k),
                           Mat::identity(k)};
    if (k == 0 || dist_to_identity(m) <= tols.residual) return out;
    const TwoReversibleSplit s = two_reversible_split(m, tols);
    const std::pair<const Mat*, const EigenPairing*> parts[2] = {
        {&s.r1, &s.pairing1}, {&s.r2, &s.pairing2}};
    for (int i = 0; i < 2; ++i) {
        if (dist_to_identity(*parts[i].first) <= tols.residual) continue;
        const TwoInvolutions ti = two_involutions_from_pairing(*parts[i].second);
        out[2 * i] = ti.left;
        out[2 * i + 1] = ti.right;
    }
    return out;
}

inline void require_involution_factor(const HermitianSpace& sp, const Mat& f,
                                      double tol, const char* who) {
    if (!is_form_unitary(sp, f, tol))
        throw NumericalError(std::string(who) + ": factor is not form-unitary");
    const double d2 = dist_to_identity(f * f) /
                      std::max(1.0, f.frob_norm() * f.frob_norm());
    if (d2 > tol)
        throw NumericalError(std::string(who) + ": factor is not an involution");
}

inline Factor involution_factor(const HermitianSpace& sp, const Mat& f, double tol,
                                const char* who) {
    require_involution_factor(sp, f, tol, who);
    return Factor{FactorTag::involution, f, snap_sign(determinant(f), who), -1, 1.0};
}

inline void finish(const HermitianSpace& sp, Factorization& out, const Mat& t,
                   double tol, const char* who) {
    out.residual = rel_dist(reconstruct(out, sp.dim()), t);
    if (out.residual > tol)
        throw NumericalError(std::string(who) + ": reconstruction residual " +
                             std::to_string(out.residual) + " exceeds tolerance");
}

} // namespace detail

// --- strongly reversible elements ------------------------------------------
//
// Writes a semisimple form-unitary T as tau * sigma with both factors
// form-unitary involutions. sigma swaps each eigenvalue pair (lambda, 1/lambda
// up to conjugation) eigenspace-to-eigenspace and fixes the real-eigenvalue
// spaces pointwise, which forces sigma T sigma = T^{-1}. Throws DomainError
// when the spectrum is not symmetric under inversion or when a non-real
// eigenvalue carries the time-like direction (no such splitting exists).

inline Factorization strongly_reversible_split_un1(const HermitianSpace& sp,
                                                   const Mat& t, const Tols& tols = {}) {
    const double vres = verification_tols(tols).residual;
    if (!is_form_unitary(sp, t, vres))
        throw DomainError("strongly_reversible_split_un1: input is not form-unitary");
    const Spectrum spec = eigen_structure(t, tols);
    if (!is_semisimple(spec))
        throw DomainError("strongly_reversible_split_un1: defective input; use the "
                          "translation pipelines");
    const double band = tols.unit_band();
    const double match = tols.cluster * spec.scale;
    const int nc = static_cast<int>(spec.clusters.size());

    std::vector<Mat> bases;
    std::vector<Mat> blocks;
    std::vector<bool> used(nc, false);
    for (int i = 0; i < nc; ++i) {
        if (used[i]) continue;
        used[i] = true;
        const EigenCluster& ci = spec.clusters[i];
        const double r = std::abs(ci.lambda);
        const cplx lu = ci.lambda / r;
        if (std::abs(r - 1.0) <= band) {
            if (std::abs(lu.imag()) <= band) {
                bases.push_back(orthonormalize_indefinite(sp, ci.eigvecs, tols.rank));
                blocks.push_back(Mat::identity(ci.geo));
                continue;
            }
            int j = -1;
            for (int q = 0; q < nc; ++q)
                if (!used[q] && std::abs(spec.clusters[q].lambda - std::conj(ci.lambda)) <= match)
                    j = q;
            if (j < 0 || spec.clusters[j].geo != ci.geo)
                throw DomainError("strongly_reversible_split_un1: spectrum is not "
                                  "closed under conjugation");
            used[j] = true;
            const Signature sa = gram_signature(sp, ci.eigvecs, tols.rank);
            const Signature sb = gram_signature(sp, spec.clusters[j].eigvecs, tols.rank);
            if (sa.negative + sa.null + sb.negative + sb.null > 0)
                throw DomainError("strongly_reversible_split_un1: non-real unit "
                                  "eigenvalue carries a time-like or degenerate "
                                  "direction");
            const Mat a_on = orthonormalize_indefinite(sp, ci.eigvecs, tols.rank);
            const Mat b_on = orthonormalize_indefinite(sp, spec.clusters[j].eigvecs, tols.rank);
            const int g = ci.geo;
            Mat swap = Mat::zero(2 * g, 2 * g);
            for (int q = 0; q < g; ++q) {
                swap(q, g + q) = 1.0;
                swap(g + q, q) = 1.0;
            }
            bases.push_back(hcat(a_on, b_on));
            blocks.push_back(swap);
        } else {
            if (std::abs(lu.imag()) > band)
                throw DomainError("strongly_reversible_split_un1: non-real non-unit "
                                  "eigenvalue; no involutive reverser exists");
            if (ci.alg != 1)
                throw DomainError("strongly_reversible_split_un1: repeated non-unit "
                                  "eigenvalue is incompatible with the form");
            int j = -1;
            for (int q = 0; q < nc; ++q)
                if (!used[q] && std::abs(spec.clusters[q].lambda - 1.0 / ci.lambda) <= match)
                    j = q;
            if (j < 0)
                throw DomainError("strongly_reversible_split_un1: spectrum is not "
                                  "closed under inversion");
            used[j] = true;
            const bool i_big = r > 1.0;
            Vec u = col(spec.clusters[i_big ? i : j].eigvecs, 0);
            const Vec v = col(spec.clusters[i_big ? j : i].eigvecs, 0);
            const cplx g = sp.inner(u, v);
            if (std::abs(g) <= 1e-10)
                throw NumericalError("strongly_reversible_split_un1: eigenvector "
                                     "pair does not pair under the form");
            u = (1.0 / g) * u;
            bases.push_back(from_cols({u, v}));
            blocks.push_back(Mat(2, 2, {0.0, 1.0, 1.0, 0.0}));
        }
    }

    Mat b = bases[0];
    Mat s = blocks[0];
    for (size_t q = 1; q < bases.size(); ++q) {
        b = hcat(b, bases[q]);
        s = block_diag(s, blocks[q]);
    }
    if (b.cols() != sp.dim())
        throw NumericalError("strongly_reversible_split_un1: eigenspaces do not "
                             "span the space");
    const detail::Frame fr = detail::make_frame(b);
    const Mat sigma = fr.embed(s);
    const Mat tau = t * sigma;
    Factorization out;
    out.factors.push_back(detail::involution_factor(sp, tau, vres,
                                                    "strongly_reversible_split_un1"));
    out.factors.push_back(detail::involution_factor(sp, sigma, vres,
                                                    "strongly_reversible_split_un1"));
    detail::finish(sp, out, t, vres, "strongly_reversible_split_un1");
    return out;
}

// --- elliptic ---------------------------------------------------------------
//
// Splits off the time-like eigenvector t0: on its form-complement W the
// action is a unitary U0 = c U1 with det U1 = 1. The factorization is the
// 0-reflection diag(mu conj(c), 1, ..., 1) in an adapted basis times the
// bordered involutions of U1, all pulled back through [t0 | W].

inline Factorization factor_elliptic(const HermitianSpace& sp, const Mat& t,
                                     const Tols& tols = {}) {
    const Classification cl = classify_isometry(sp, t, tols);
    if (cl.cls != IsoClass::elliptic)
        throw DomainError("factor_elliptic: input is not elliptic");
    const double vres = verification_tols(tols).residual;
    const Spectrum spec = eigen_structure(t, tols);
    int it = -1;
    for (size_t i = 0; i < cl.eigenvalues.size(); ++i)
        if (cl.eigenvalues[i].type == EigType::negative ||
            cl.eigenvalues[i].type == EigType::indefinite)
            it = static_cast<int>(i);
    if (it < 0)
        throw NumericalError("factor_elliptic: no time-like eigenvector found");
    const cplx mu = detail::unit_normalize(spec.clusters[it].lambda);
    const Mat tl_on = orthonormalize_indefinite(sp, spec.clusters[it].eigvecs, tols.rank);
    const Mat t0 = from_cols({col(tl_on, 0)});

    const Mat w = form_complement(sp, t0, tols.rank);
    const Mat w_on = orthonormalize_indefinite(sp, w, tols.rank);
    const Mat u0 = detail::positive_restriction(sp, t, w_on);
    if (detail::euclid_unitarity_defect(u0) > vres)
        throw NumericalError("factor_elliptic: restriction to the complement is "
                             "not unitary");
    const int n = sp.n;
    const cplx c = std::exp(cplx(0.0, std::arg(determinant(u0)) / n));
    const Mat u1 = std::conj(c) * u0;

    const detail::Frame fr = detail::make_frame(hcat(t0, w_on));
    const cplx lam = mu * std::conj(c);
    Factorization out;
    out.lift_scalar = c;
    {
        Vec d(sp.dim(), 1.0);
        d[0] = lam;
        const Mat refl = fr.embed(Mat::diagonal(d));
        out.factors.push_back(Factor{FactorTag::k_reflection, refl,
                                     determinant(refl), 0, lam});
    }
    for (const Mat& j : detail::unitary_involution_quad(u1, tols)) {
        const cplx d = detail::snap_sign(determinant(j), "factor_elliptic");
        const Mat blk = block_diag(Mat::diagonal({d}), j);
        if (dist_to_identity(blk) <= tols.residual) continue;
        out.factors.push_back(detail::involution_factor(sp, fr.embed(blk), vres,
                                                        "factor_elliptic"));
    }
    detail::finish(sp, out, t, vres, "factor_elliptic");
    return out;
}

// --- hyperbolic -------------------------------------------------------------
//
// The expanding/contracting eigenvectors u, v (normalized to <u,v> = 1) carry
// the signature (1,1) plane H; t0 = (u-v)/sqrt2, s0 = (u+v)/sqrt2 is a
// form-orthonormal basis of it. After the unit rescale c0 that makes the
// complement restriction special unitary, the action is the 1-reflection
// e^{i theta'} on H times the real boost [[a,b],[b,a]] on H times a special
// unitary part on W. The boost splits against the reflection diag(-1,1)
// (which swaps its null eigendirections), the W part through its reversible
// pairings; the two pair up block-diagonally into at most four involutions.

inline Factorization factor_hyperbolic(const HermitianSpace& sp, const Mat& t,
                                       const Tols& tols = {}) {
    const Classification cl = classify_isometry(sp, t, tols);
    if (cl.cls != IsoClass::hyperbolic)
        throw DomainError("factor_hyperbolic: input is not hyperbolic");
    const double vres = verification_tols(tols).residual;
    const Spectrum spec = eigen_structure(t, tols);
    int ib = 0, is = 0;
    for (size_t i = 0; i < spec.clusters.size(); ++i) {
        if (std::abs(spec.clusters[i].lambda) > std::abs(spec.clusters[ib].lambda))
            ib = static_cast<int>(i);
        if (std::abs(spec.clusters[i].lambda) < std::abs(spec.clusters[is].lambda))
            is = static_cast<int>(i);
    }
    Vec u = col(spec.clusters[ib].eigvecs, 0);
    const Vec v = col(spec.clusters[is].eigvecs, 0);
    const cplx g = sp.inner(u, v);
    if (std::abs(g) <= 1e-10)
        throw NumericalError("factor_hyperbolic: null eigenvectors do not pair");
    u = (1.0 / g) * u;
    const double r = std::abs(spec.clusters[ib].lambda);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Vec t0 = inv_sqrt2 * (u - v);
    const Vec s0 = inv_sqrt2 * (u + v);
    const Mat w = form_complement(sp, from_cols({u, v}), tols.rank);
    const Mat w_on = w.empty() ? w : orthonormalize_indefinite(sp, w, tols.rank);
    const Mat m_w = detail::positive_restriction(sp, t, w_on);
    cplx c0 = 1.0;
    if (m_w.rows() > 0) {
        if (detail::euclid_unitarity_defect(m_w) > vres)
            throw NumericalError("factor_hyperbolic: restriction to the complement "
                                 "is not unitary");
        c0 = std::exp(cplx(0.0, -std::arg(determinant(m_w)) / m_w.rows()));
    }
    const cplx theta = detail::unit_normalize(c0 * spec.clusters[ib].lambda);

    const detail::Frame fr = detail::make_frame(hcat(from_cols({t0, s0}), w_on));
    Factorization out;
    out.lift_scalar = std::conj(c0);
    out.extended_range = sp.n <= 2;
    {
        Vec d(sp.dim(), 1.0);
        d[0] = d[1] = theta;
        const Mat refl = fr.embed(Mat::diagonal(d));
        out.factors.push_back(Factor{FactorTag::k_reflection, refl,
                                     determinant(refl), 1, theta});
    }
    const double a = (r + 1.0 / r) / 2.0;
    const double bb = (r - 1.0 / r) / 2.0;
    const Mat boost(2, 2, {a, bb, bb, a});
    const Mat sig = Mat::diagonal({-1.0, 1.0});
    const std::array<Mat, 4> quad = detail::unitary_involution_quad(c0 * m_w, tols);
    const Mat eye2 = Mat::identity(2);
    const Mat heads[4] = {eye2, eye2, boost * sig, sig};
    for (int i = 0; i < 4; ++i) {
        const Mat blk = block_diag(heads[i], quad[i]);
        if (dist_to_identity(blk) <= tols.residual) continue;
        out.factors.push_back(detail::involution_factor(sp, fr.embed(blk), vres,
                                                        "factor_hyperbolic"));
    }
    detail::finish(sp, out, t, vres, "factor_hyperbolic");
    return out;
}

// --- unipotent translations ---------------------------------------------------

inline Factorization factor_translation(const HermitianSpace& sp, const Mat& t,
                                        const Tols& tols = {}) {
    Factorization out;
    if (dist_to_identity(t) <= tols.residual * std::max(1.0, t.frob_norm())) {
        out.residual = dist_to_identity(t);
        return out;
    }
    const Classification cl = classify_isometry(sp, t, tols);
    if (cl.cls != IsoClass::vertical_translation &&
        cl.cls != IsoClass::non_vertical_translation)
        throw DomainError("factor_translation: input is not a unipotent translation");
    const double vres = verification_tols(tols).residual;
    const InvariantSplit split = parabolic_split(sp, t, tols);
    const Mat w_on = split.w_basis.empty()
                         ? split.w_basis
                         : orthonormalize_indefinite(sp, split.w_basis, tols.rank);
    if (!w_on.empty() &&
        rel_dist(detail::positive_restriction(sp, t, w_on), Mat::identity(w_on.cols())) > vres)
        throw NumericalError("factor_translation: action off the degenerate block "
                             "is not the identity");
    const int wn = w_on.cols();

    if (cl.cls == IsoClass::vertical_translation) {
        const Vec u = col(split.u_basis, 0);
        const Vec v = detail::complete_null_pair(sp, u, col(split.u_basis, 1));
        const Vec tv = t * v;
        const cplx a = sp.inner(tv, v) / sp.inner(tv, u);
        if (std::abs(a.real()) > 1e-6 * std::max(1.0, std::abs(a)))
            throw NumericalError("factor_translation: translation part is not "
                                 "purely imaginary");
        if (std::abs(a) <= 1e3 * tols.residual)
            throw NumericalError("factor_translation: translation part is "
                                 "numerically zero");
        const detail::Frame fr = detail::make_frame(hcat(from_cols({u, v}), w_on));
        for (const Mat& m : detail::shear_involutions(cplx(0.0, a.imag())))
            out.factors.push_back(detail::involution_factor(
                sp, fr.embed(block_diag(m, Mat::identity(wn))), vres,
                "factor_translation"));
        out.extended_range = sp.n < 2;
    } else {
        const detail::ShearBlocks sb =
            detail::heisenberg_involutions(sp, t, split.u_basis, tols);
        const detail::Frame fr = detail::make_frame(hcat(sb.basis, w_on));
        const Mat sigma = fr.embed(block_diag(sb.i2, Mat::identity(wn)));
        out.factors.push_back(
            detail::involution_factor(sp, t * sigma, vres, "factor_translation"));
        out.factors.push_back(
            detail::involution_factor(sp, sigma, vres, "factor_translation"));
    }
    detail::finish(sp, out, t, vres, "factor_translation");
    return out;
}

// --- ellipto-translation ------------------------------------------------------
//
// On the degenerate 2-dim block the action is mu times a vertical shear; on
// the complement it is unitary. The 1-reflection carries c0 mu on the block,
// the four shear involutions pair up block-diagonally with the involutions of
// the rescaled complement restriction.

inline Factorization factor_ellipto_translation(const HermitianSpace& sp, const Mat& t,
                                                const Tols& tols = {}) {
    const Classification cl = classify_isometry(sp, t, tols);
    if (cl.cls != IsoClass::ellipto_translation)
        throw DomainError("factor_ellipto_translation: input is not an "
                          "ellipto-translation");
    const double vres = verification_tols(tols).residual;
    const InvariantSplit split = parabolic_split(sp, t, tols);
    const cplx mu = split.lambda_null;
    const Vec u = col(split.u_basis, 0);
    const Vec v = detail::complete_null_pair(sp, u, col(split.u_basis, 1));
    const Mat t1 = std::conj(mu) * t;
    const Vec tv = t1 * v;
    const cplx a = sp.inner(tv, v) / sp.inner(tv, u);
    if (std::abs(a.real()) > 1e-6 * std::max(1.0, std::abs(a)))
        throw NumericalError("factor_ellipto_translation: translation part is not "
                             "purely imaginary");
    if (std::abs(a) <= 1e3 * tols.residual)
        throw NumericalError("factor_ellipto_translation: translation part is "
                             "numerically zero");
    const std::array<Mat, 4> shear = detail::shear_involutions(cplx(0.0, a.imag()));

    const Mat w_on = split.w_basis.empty()
                         ? split.w_basis
                         : orthonormalize_indefinite(sp, split.w_basis, tols.rank);
    const int wn = w_on.cols();
    const Mat m_w = detail::positive_restriction(sp, t, w_on);
    cplx c0 = 1.0;
    if (wn > 0) {
        if (detail::euclid_unitarity_defect(m_w) > vres)
            throw NumericalError("factor_ellipto_translation: restriction to the "
                                 "complement is not unitary");
        c0 = std::exp(cplx(0.0, -std::arg(determinant(m_w)) / wn));
    }
    const std::array<Mat, 4> quad = detail::unitary_involution_quad(c0 * m_w, tols);

    const detail::Frame fr = detail::make_frame(hcat(from_cols({u, v}), w_on));
    const cplx lam = detail::unit_normalize(c0 * mu);
    Factorization out;
    out.lift_scalar = std::conj(c0);
    out.extended_range = sp.n < 2;
    {
        Vec d(sp.dim(), lam);
        for (int i = 2; i < sp.dim(); ++i) d[i] = 1.0;
        const Mat refl = fr.embed(Mat::diagonal(d));
        out.factors.push_back(Factor{FactorTag::k_reflection, refl,
                                     determinant(refl), 1, lam});
    }
    for (int i = 0; i < 4; ++i)
        out.factors.push_back(detail::involution_factor(
            sp, fr.embed(block_diag(shear[i], quad[i])), vres,
            "factor_ellipto_translation"));
    detail::finish(sp, out, t, vres, "factor_ellipto_translation");
    return out;
}

// --- ellipto-parabolic --------------------------------------------------------
//
// Same pattern one level up: the degenerate block is 3-dim, the reflection is
// a 2-reflection, and the block involutions come from the aligned Heisenberg
// shear of conj(mu) T. Needs n > 2 so the complement can absorb the
// determinant rescale.

inline Factorization factor_ellipto_parabolic(const HermitianSpace& sp, const Mat& t,
                                              const Tols& tols = {}) {
    const Classification cl = classify_isometry(sp, t, tols);
    if (cl.cls != IsoClass::ellipto_parabolic)
        throw DomainError("factor_ellipto_parabolic: input is not ellipto-parabolic");
    if (sp.n <= 2)
        throw DomainError("factor_ellipto_parabolic: the reflection split needs "
                          "n > 2");
    const double vres = verification_tols(tols).residual;
    const InvariantSplit split = parabolic_split(sp, t, tols);
    const cplx mu = split.lambda_null;
    const Mat t1 = std::conj(mu) * t;
    const detail::ShearBlocks sb =
        detail::heisenberg_involutions(sp, t1, split.u_basis, tols);

    const Mat w_on = orthonormalize_indefinite(sp, split.w_basis, tols.rank);
    const int wn = w_on.cols();
    const Mat m_w = detail::positive_restriction(sp, t, w_on);
    if (detail::euclid_unitarity_defect(m_w) > vres)
        throw NumericalError("factor_ellipto_parabolic: restriction to the "
                             "complement is not unitary");
    const cplx c0 = std::exp(cplx(0.0, -std::arg(determinant(m_w)) / wn));
    const std::array<Mat, 4> quad = detail::unitary_involution_quad(c0 * m_w, tols);

    const detail::Frame fr = detail::make_frame(hcat(sb.basis, w_on));
    const cplx lam = detail::unit_normalize(c0 * mu);
    Factorization out;
    out.lift_scalar = std::conj(c0);
    {
        Vec d(sp.dim(), lam);
        for (int i = 3; i < sp.dim(); ++i) d[i] = 1.0;
        const Mat refl = fr.embed(Mat::diagonal(d));
        out.factors.push_back(Factor{FactorTag::k_reflection, refl,
                                     determinant(refl), 2, lam});
    }
    const Mat eye3 = Mat::identity(3);
    const Mat heads[4] = {sb.i1, sb.i2, eye3, eye3};
    for (int i = 0; i < 4; ++i) {
        const Mat blk = block_diag(heads[i], quad[i]);
        if (dist_to_identity(blk) <= tols.residual) continue;
        out.factors.push_back(detail::involution_factor(sp, fr.embed(blk), vres,
                                                        "factor_ellipto_parabolic"));
    }
    detail::finish(sp, out, t, vres, "factor_ellipto_parabolic");
    return out;
}

// --- dispatcher ---------------------------------------------------------------

inline Factorization decompose(const HermitianSpace& sp, const Mat& t,
                               const Tols& tols = {}) {
    const double vres = verification_tols(tols).residual;
    if (!is_form_unitary(sp, t, vres))
        throw DomainError("decompose: input is not form-unitary");
    const Classification cl = classify_isometry(sp, t, tols);
    switch (cl.cls) {
        case IsoClass::central: {
            Factorization out;
            out.lift_scalar = t.trace() / static_cast<double>(sp.dim());
            out.residual = rel_dist(out.lift_scalar * Mat::identity(sp.dim()), t);
            return out;
        }
        case IsoClass::elliptic:
            return factor_elliptic(sp, t, tols);
        case IsoClass::hyperbolic:
            return factor_hyperbolic(sp, t, tols);
        case IsoClass::vertical_translation:
        case IsoClass::non_vertical_translation:
            return factor_translation(sp, t, tols);
        case IsoClass::ellipto_translation:
            return factor_ellipto_translation(sp, t, tols);
        case IsoClass::ellipto_parabolic:
            return factor_ellipto_parabolic(sp, t, tols);
    }
    throw DomainError("decompose: unrecognized class");
}

} // namespace isofactor
