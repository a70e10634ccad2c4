#pragma once

// Anti-holomorphic isometries of the indefinite Hermitian space: maps
// v -> A conj(v) with A form-unitary. Composing two of them is holomorphic
// with matrix A conj(B), which makes them the natural alphabet for two more
// normal forms of a holomorphic isometry T:
//   split form:       T = beta . alpha, both anti-holomorphic involutions
//   commutator form:  T = [alpha, beta] with B^2 = T, B = beta' . alpha'
// Every class admits the split through one pattern: choose a basis B of
// invariant subspaces whose Gram matrix is real and a real coordinate
// involution P preserving that Gram, such that
//   alpha(x) = B P conj(B^{-1} x)
// conjugates T to T^{-1}. Then alpha is an anti-holomorphic involution and
// beta = T . alpha automatically is one too.
//   central       B = standard basis,                      P = I
//   elliptic      B = form-orthonormal eigenbasis,         P = I
//   hyperbolic    B = null pair <u,v> = 1 + unit part,     P = swap on {u,v}
//   unipotent k=2 B = null pair with T|_U = [[1,ia],[0,1]] P = I
//   unipotent k=3 B = Heisenberg basis, T|_U real,         P = diag(-1,1,-1)
//   ellipto       unipotent pattern for conj(mu) T, conjugation on the
//                 complement acting per eigenspace of T|_W
// The reversal identity per block: conjugation sends a unit eigenvalue to
// its inverse; the swap exchanges the r and 1/r eigendirections; for shears,
// conj([[1,ia],[0,1]]) and S N S are the coordinate inverses.

#include <cmath>
#include <string>
#include <vector>

#include "classify.hpp"
#include "factorization.hpp"
#include "un1_factor.hpp"

namespace isofactor {

struct AntiholoMap {
    Mat a; // action v -> a * conj(v)
};

inline Vec antiholo_apply(const AntiholoMap& f, const Vec& v) {
    return f.a * conj_vec(v);
}

// Composition f . g applies g first. Two anti-holomorphic maps compose to a
// holomorphic matrix; mixed compositions stay anti-holomorphic.
inline Mat antiholo_compose(const AntiholoMap& f, const AntiholoMap& g) {
    return f.a * g.a.conjugate();
}
inline AntiholoMap antiholo_compose(const Mat& f, const AntiholoMap& g) {
    return {f * g.a};
}
inline AntiholoMap antiholo_compose(const AntiholoMap& f, const Mat& g) {
    return {f.a * g.conjugate()};
}

inline double antiholo_involution_defect(const AntiholoMap& f) {
    const double s = f.a.frob_norm();
    return dist_to_identity(f.a * f.a.conjugate()) / std::max(1.0, s * s);
}

namespace detail {

// Concatenates per-cluster eigenvector bases of a Euclidean-unitary matrix.
inline Mat unitary_eigenbasis(const Mat& m, const Tols& tols, const char* who) {
    const Spectrum spec = eigen_structure(m, tols);
    Mat e;
    for (const auto& c : spec.clusters) {
        if (c.geo != c.alg)
            throw NumericalError(std::string(who) + ": defective eigenvalue in a "
                                                    "unitary restriction");
        e = hcat(e, c.eigvecs);
    }
    if (e.cols() != m.rows())
        throw NumericalError(std::string(who) + ": eigenbasis is incomplete");
    return e;
}

inline Mat antiholo_reverser(const HermitianSpace& sp, const Mat& t,
                             const Classification& cl, const Tols& tols) {
    const int dim = sp.dim();
    if (cl.cls == IsoClass::central) return Mat::identity(dim);

    if (cl.cls == IsoClass::elliptic || cl.cls == IsoClass::hyperbolic) {
        const Spectrum spec = eigen_structure(t, tols);
        Mat b;
        Mat p;
        if (cl.cls == IsoClass::hyperbolic) {
            int ib = 0, is = 0;
            for (size_t i = 0; i < spec.clusters.size(); ++i) {
                const double m = std::abs(spec.clusters[i].lambda);
                if (m > std::abs(spec.clusters[ib].lambda)) ib = static_cast<int>(i);
                if (m < std::abs(spec.clusters[is].lambda)) is = static_cast<int>(i);
            }
            Vec u = col(spec.clusters[ib].eigvecs, 0);
            const Vec v = col(spec.clusters[is].eigvecs, 0);
            u = (1.0 / sp.inner(u, v)) * u;
            b = from_cols({u, v});
            p = Mat(2, 2, {0.0, 1.0, 1.0, 0.0});
            for (size_t i = 0; i < spec.clusters.size(); ++i) {
                if (static_cast<int>(i) == ib || static_cast<int>(i) == is) continue;
                const Mat on =
                    orthonormalize_indefinite(sp, spec.clusters[i].eigvecs, tols.rank);
                b = hcat(b, on);
                p = block_diag(p, Mat::identity(on.cols()));
            }
        } else {
            for (const auto& c : spec.clusters)
                b = hcat(b, orthonormalize_indefinite(sp, c.eigvecs, tols.rank));
            p = Mat::identity(dim);
        }
        const Frame fr = make_frame(b);
        return fr.b * (p * fr.b_inv.conjugate());
    }

    const InvariantSplit split = parabolic_split(sp, t, tols);
    const Mat t1 = std::conj(split.lambda_null) * t;
    Mat b, p;
    if (split.k == 2) {
        const Vec u0 = col(split.u_basis, 0);
        const Vec v0 = complete_null_pair(sp, u0, col(split.u_basis, 1));
        const cplx a = sp.inner(t1 * v0, v0);
        if (std::abs(a.real()) > 1e-6 * std::max(1.0, std::abs(a)))
            throw NumericalError("antiholo_split: shear coefficient is not purely "
                                 "imaginary");
        if (std::abs(a) <= 1e3 * tols.residual)
            throw NumericalError("antiholo_split: shear coefficient is numerically "
                                 "zero");
        // scale the pair so the off-diagonal entry has unit modulus
        const double s = std::sqrt(std::abs(a.imag()));
        b = from_cols({s * u0, (1.0 / s) * v0});
        p = Mat::identity(2);
    } else {
        const ShearBlocks sb = heisenberg_involutions(sp, t1, split.u_basis, tols);
        b = sb.basis;
        p = sb.i2; // diag(-1,1,-1)
    }
    if (!split.w_basis.empty()) {
        const Mat w_on = orthonormalize_indefinite(sp, split.w_basis, tols.rank);
        const Mat m_w = positive_restriction(sp, t, w_on);
        if (euclid_unitarity_defect(m_w) > verification_tols(tols).residual)
            throw NumericalError("antiholo_split: complement restriction is not "
                                 "unitary");
        const Mat ew = unitary_eigenbasis(m_w, tols, "antiholo_split");
        b = hcat(b, w_on * ew);
        p = block_diag(p, Mat::identity(ew.cols()));
    }
    const Frame fr = make_frame(b);
    return fr.b * (p * fr.b_inv.conjugate());
}

// Exact square root of a (numerically) unipotent block: the series for
// sqrt(I + M) ends at the nilpotency degree <= 3.
inline Mat unipotent_sqrt(const Mat& c) {
    const Mat m = c - Mat::identity(c.rows());
    return Mat::identity(c.rows()) + 0.5 * m - 0.125 * (m * m);
}

inline Mat semisimple_sqrt(const Mat& m, const Tols& tols) {
    const Spectrum spec = eigen_structure(m, tols);
    Mat e;
    Vec d;
    for (const auto& c : spec.clusters) {
        if (c.geo != c.alg)
            throw NumericalError("isometry_sqrt: defective eigenvalue in a "
                                 "semisimple class");
        e = hcat(e, c.eigvecs);
        const cplx r = std::sqrt(c.lambda);
        for (int j = 0; j < c.geo; ++j) d.push_back(r);
    }
    const Frame fr = make_frame(e);
    return fr.embed(Mat::diagonal(d));
}

} // namespace detail

// A square root within the same conjugacy class: principal square roots of
// the eigenvalues on the shared eigenbasis for the semisimple classes, the
// terminating series on the unipotent part times sqrt of the null eigenvalue
// for the parabolic ones.
inline Mat isometry_sqrt(const HermitianSpace& sp, const Mat& t,
                         const Tols& tols = {}) {
    const Classification cl = classify_isometry(sp, t, tols);
    const double vres = verification_tols(tols).residual;
    const int dim = sp.dim();
    Mat b;
    if (cl.cls == IsoClass::central) {
        const cplx omega =
            detail::unit_normalize(t.trace() / static_cast<double>(dim));
        b = std::sqrt(omega) * Mat::identity(dim);
    } else if (cl.cls == IsoClass::elliptic || cl.cls == IsoClass::hyperbolic) {
        b = detail::semisimple_sqrt(t, tols);
    } else {
        const InvariantSplit split = parabolic_split(sp, t, tols);
        const cplx mu = split.lambda_null;
        const int k = split.k;
        const Mat w_on = split.w_basis.empty()
                             ? split.w_basis
                             : orthonormalize_indefinite(sp, split.w_basis, tols.rank);
        const detail::Frame fr = detail::make_frame(hcat(split.u_basis, w_on));
        const Mat c = fr.b_inv * (t * fr.b);
        Mat c_u(k, k), c_w(dim - k, dim - k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) c_u(i, j) = c(i, j);
        for (int i = k; i < dim; ++i)
            for (int j = k; j < dim; ++j) c_w(i - k, j - k) = c(i, j);
        const Mat root_u =
            std::sqrt(mu) * detail::unipotent_sqrt(std::conj(mu) * c_u);
        const Mat root_w =
            c_w.rows() > 0 ? detail::semisimple_sqrt(c_w, tols) : c_w;
        b = fr.embed(block_diag(root_u, root_w));
    }
    if (rel_dist(b * b, t) > vres)
        throw NumericalError("isometry_sqrt: square residual exceeds tolerance");
    return b;
}

// T = beta . alpha with both factors anti-holomorphic involutions; the
// factor list is ordered [beta, alpha].
inline Factorization antiholo_split(const HermitianSpace& sp, const Mat& t,
                                    const Tols& tols = {}) {
    const Classification cl = classify_isometry(sp, t, tols);
    const double vres = verification_tols(tols).residual;
    const Mat a_alpha = detail::antiholo_reverser(sp, t, cl, tols);
    const Mat a_beta = t * a_alpha;
    for (const Mat* m : {&a_beta, &a_alpha}) {
        if (!is_form_unitary(sp, *m, vres))
            throw NumericalError("antiholo_split: factor is not form-unitary");
        if (antiholo_involution_defect({*m}) > vres)
            throw NumericalError("antiholo_split: factor is not an involution");
    }
    Factorization out;
    out.factors.push_back(
        Factor{FactorTag::antiholo_involution, a_beta, determinant(a_beta), -1, 1.0});
    out.factors.push_back(Factor{FactorTag::antiholo_involution, a_alpha,
                                 determinant(a_alpha), -1, 1.0});
    detail::finish(sp, out, t, vres, "antiholo_split");
    return out;
}

// T = [alpha, beta] for anti-holomorphic involutions: with B^2 = T and
// B = beta' . alpha', the pair (beta', alpha') satisfies
// (beta' . alpha')^2 = T, which is the commutator of two involutions.
inline Factorization commutator_antiholo(const HermitianSpace& sp, const Mat& t,
                                         const Tols& tols = {}) {
    const double vres = verification_tols(tols).residual;
    const Mat root = isometry_sqrt(sp, t, tols);
    const Factorization half = antiholo_split(sp, root, tols);
    Factorization out;
    out.mode = FactorizationMode::commutator;
    out.factors = half.factors;
    out.residual = rel_dist(reconstruct(out, sp.dim()), t);
    if (out.residual > vres)
        throw NumericalError("commutator_antiholo: reconstruction residual " +
                             std::to_string(out.residual) + " exceeds tolerance");
    return out;
}

} // namespace isofactor
