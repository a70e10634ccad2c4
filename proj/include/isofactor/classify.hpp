#pragma once

// Conjugacy classification of form-unitary matrices. The taxonomy:
//   central                   scalar matrices e^{it} I
//   elliptic                  semisimple, all eigenvalues unit modulus
//   hyperbolic                a modulus pair r, 1/r (r > 1) with equal phases
//   vertical_translation      unipotent, minimal polynomial (x-1)^2
//   non_vertical_translation  unipotent, minimal polynomial (x-1)^3
//   ellipto_translation       non-unipotent, defective unit eigenvalue, local
//                             exponent 2
//   ellipto_parabolic         same with local exponent 3
// Each eigenvalue cluster is typed by the inertia of its eigenspace:
// negative (time-like line), positive, indefinite, or null (degenerate).
// The unipotency test runs on T itself: is the whole spectrum one cluster
// at 1. Non-unipotent parabolics expose conj(lambda_null) as lift_scalar;
// hyperbolics expose e^{-i theta}, which makes the modulus pair real.

#include <string>

#include "hermitian_space.hpp"
#include "spectrum.hpp"

namespace isofactor {

enum class IsoClass {
    central,
    elliptic,
    hyperbolic,
    vertical_translation,
    non_vertical_translation,
    ellipto_translation,
    ellipto_parabolic,
};

inline const char* to_string(IsoClass c) {
    switch (c) {
        case IsoClass::central: return "central";
        case IsoClass::elliptic: return "elliptic";
        case IsoClass::hyperbolic: return "hyperbolic";
        case IsoClass::vertical_translation: return "vertical_translation";
        case IsoClass::non_vertical_translation: return "non_vertical_translation";
        case IsoClass::ellipto_translation: return "ellipto_translation";
        case IsoClass::ellipto_parabolic: return "ellipto_parabolic";
    }
    return "?";
}

enum class EigType { negative, positive, null_type, indefinite };

inline const char* to_string(EigType t) {
    switch (t) {
        case EigType::negative: return "negative";
        case EigType::positive: return "positive";
        case EigType::null_type: return "null";
        case EigType::indefinite: return "indefinite";
    }
    return "?";
}

struct EigenInfo {
    cplx lambda;
    int alg = 0;
    int geo = 0;
    EigType type = EigType::positive;
};

struct Classification {
    IsoClass cls = IsoClass::elliptic;
    std::vector<EigenInfo> eigenvalues; // phase order, matching eigen_structure
    int k = 0;                          // local exponent for parabolic classes
    bool has_k = false;
    cplx lift_scalar = 1.0; // scalar making the interesting eigenvalue real/unit
    bool has_lift = false;
};

namespace detail {

inline EigType eigenspace_type(const HermitianSpace& sp, const Mat& eigvecs,
                               const Tols& tols) {
    const Signature s = gram_signature(sp, eigvecs, tols.rank);
    if (s.negative > 1)
        throw DomainError("eigenspace carries more than one time-like direction; "
                          "input is not an isometry of the (n,1) form");
    if (s.null > 0) return EigType::null_type;
    if (s.negative == 0) return EigType::positive;
    return s.positive == 0 ? EigType::negative : EigType::indefinite;
}

} // namespace detail

inline Classification classify_isometry(const HermitianSpace& sp, const Mat& t,
                                        const Tols& tols) {
    if (!is_form_unitary(sp, t, verification_tols(tols).residual))
        throw DomainError("classify_isometry: input is not form-unitary");
    const int dim = sp.dim();
    const double scale = std::max(1.0, t.frob_norm());

    Classification out;

    // central: T is a scalar matrix
    const cplx mean = t.trace() / static_cast<double>(dim);
    if ((t - mean * Mat::identity(dim)).frob_norm() <= tols.cluster * scale) {
        const cplx unit = mean / std::abs(mean);
        out.cls = IsoClass::central;
        out.eigenvalues.push_back({unit, dim, dim, dim > 1 ? EigType::indefinite
                                                           : EigType::negative});
        out.lift_scalar = std::conj(unit);
        out.has_lift = true;
        return out;
    }

    const Spectrum spec = eigen_structure(t, tols);
    const double band = tols.unit_band();

    std::vector<const EigenCluster*> nonunit;
    for (const auto& c : spec.clusters)
        if (std::abs(std::abs(c.lambda) - 1.0) > band) nonunit.push_back(&c);

    for (const auto& c : spec.clusters)
        out.eigenvalues.push_back(
            {c.lambda, c.alg, c.geo, detail::eigenspace_type(sp, c.eigvecs, tols)});

    if (!nonunit.empty()) {
        if (nonunit.size() != 2)
            throw NumericalError("classify_isometry: non-unit moduli do not form a pair");
        const EigenCluster* big = nonunit[0];
        const EigenCluster* small = nonunit[1];
        if (std::abs(big->lambda) < std::abs(small->lambda)) std::swap(big, small);
        if (big->alg != 1 || small->alg != 1)
            throw NumericalError("classify_isometry: non-unit eigenvalue is not simple");
        if (std::abs(std::abs(big->lambda) * std::abs(small->lambda) - 1.0) > 100.0 * band ||
            std::abs(big->lambda * std::conj(small->lambda)) -
                    (big->lambda * std::conj(small->lambda)).real() >
                1e-6)
            throw NumericalError("classify_isometry: non-unit pair is not (r e^{it}, e^{it}/r)");
        for (const auto& c : spec.clusters)
            if (c.geo != c.alg)
                throw NumericalError("classify_isometry: hyperbolic input with a defective "
                                     "unit eigenvalue");
        out.cls = IsoClass::hyperbolic;
        out.lift_scalar = std::conj(big->lambda / std::abs(big->lambda));
        out.has_lift = true;
        return out;
    }

    // all unit moduli
    if (is_semisimple(spec)) {
        out.cls = IsoClass::elliptic;
        int timelike = 0;
        for (const auto& e : out.eigenvalues)
            if (e.type == EigType::negative || e.type == EigType::indefinite) ++timelike;
        if (timelike != 1)
            throw NumericalError("classify_isometry: elliptic input lacks a unique "
                                 "time-like eigenvalue");
        return out;
    }

    const EigenCluster* defective = nullptr;
    for (const auto& c : spec.clusters) {
        if (c.geo == c.alg) continue;
        if (defective)
            throw NumericalError("classify_isometry: several defective eigenvalues");
        defective = &c;
    }
    const int k = defective->minexp;
    if (k != 2 && k != 3)
        throw NumericalError("classify_isometry: defect exponent outside {2,3}");
    out.k = k;
    out.has_k = true;

    const bool unipotent = spec.clusters.size() == 1 &&
                           std::abs(defective->lambda - 1.0) <= 10.0 * tols.cluster * scale;
    if (unipotent) {
        out.cls = (k == 2) ? IsoClass::vertical_translation
                           : IsoClass::non_vertical_translation;
        return out;
    }
    out.cls = (k == 2) ? IsoClass::ellipto_translation : IsoClass::ellipto_parabolic;
    const cplx unit = defective->lambda / std::abs(defective->lambda);
    out.lift_scalar = std::conj(unit);
    out.has_lift = true;
    return out;
}

// --- complex k-reflections ---

// A k-reflection fixes the form-orthocomplement of a non-degenerate
// (k+1)-dimensional subspace containing a time-like direction and multiplies
// that subspace by lambda != 1. Spectrally: semisimple, eigenvalue lambda
// with multiplicity k+1 on a subspace of signature (k,1), eigenvalue 1 with
// multiplicity n-k on a positive subspace.
struct ReflectionInfo {
    bool is_reflection = false;
    int k = 0;
    cplx lambda = 1.0;
};

inline ReflectionInfo reflection_kind(const HermitianSpace& sp, const Mat& t,
                                      const Tols& tols) {
    if (!is_form_unitary(sp, t, verification_tols(tols).residual))
        throw DomainError("reflection_kind: input is not form-unitary");
    const Spectrum spec = eigen_structure(t, tols);
    if (!is_semisimple(spec)) return {};

    if (spec.clusters.size() == 1) {
        // scalar matrix: a degenerate n-reflection when lambda != 1
        const cplx l = spec.clusters[0].lambda / std::abs(spec.clusters[0].lambda);
        if (std::abs(l - 1.0) <= tols.pairing) return {};
        return {true, sp.n, l};
    }
    if (spec.clusters.size() != 2) return {};

    const EigenCluster* one = nullptr;
    const EigenCluster* other = nullptr;
    for (const auto& c : spec.clusters)
        (std::abs(c.lambda - 1.0) <= 100.0 * tols.pairing ? one : other) = &c;
    if (!one || !other) return {};

    const Signature sl = gram_signature(sp, other->eigvecs, tols.rank);
    const Signature s1 = gram_signature(sp, one->eigvecs, tols.rank);
    if (sl.negative != 1 || sl.null != 0) return {};
    if (s1.negative != 0 || s1.null != 0) return {};
    const int k = sl.positive;
    if (other->alg != k + 1 || one->alg != sp.n - k) return {};
    return {true, k, other->lambda / std::abs(other->lambda)};
}

// --- rescaling to put the null eigenvalue at 1 (or the pair on the real axis) ---

struct Rescale {
    cplx scalar = 1.0;
    Mat rescaled;
};

inline Rescale rescale_to_unit_null_eigenvalue(const HermitianSpace& sp, const Mat& t,
                                               const Tols& tols) {
    const Classification c = classify_isometry(sp, t, tols);
    switch (c.cls) {
        case IsoClass::hyperbolic:
        case IsoClass::ellipto_translation:
        case IsoClass::ellipto_parabolic:
            return {c.lift_scalar, c.lift_scalar * t};
        case IsoClass::vertical_translation:
        case IsoClass::non_vertical_translation:
            return {cplx(1.0), t};
        default:
            throw DomainError("rescale_to_unit_null_eigenvalue: input has no null "
                              "eigenvalue");
    }
}

// --- the invariant splitting C^{n+1} = U + W for parabolic classes ---

struct InvariantSplit {
    Mat u_basis;      // dim x k Jordan chain {u, x2(, x3)}; u spans range N^{k-1}
    Mat w_basis;      // dim x (dim-k), Euclidean-orthonormal, form-orthogonal to U
    cplx lambda_null; // unit-normalized defective eigenvalue
    int k = 0;
};

inline InvariantSplit parabolic_split(const HermitianSpace& sp, const Mat& t,
                                      const Tols& tols) {
    const Classification cls = classify_isometry(sp, t, tols);
    switch (cls.cls) {
        case IsoClass::vertical_translation:
        case IsoClass::non_vertical_translation:
        case IsoClass::ellipto_translation:
        case IsoClass::ellipto_parabolic:
            break;
        default:
            throw DomainError("parabolic_split: input is not parabolic");
    }

    const Spectrum spec = eigen_structure(t, tols);
    const EigenCluster* defective = nullptr;
    for (const auto& c : spec.clusters)
        if (c.geo != c.alg) defective = &c;
    const int k = defective->minexp;
    const Mat& g = defective->genvecs; // Euclidean-orthonormal columns

    Mat shifted = t;
    for (int i = 0; i < sp.dim(); ++i) shifted(i, i) -= defective->lambda;
    const Mat ng = g.adjoint() * (shifted * g); // N restricted to the chain space

    Mat nk = ng;
    for (int p = 1; p < k - 1; ++p) nk = nk * ng;
    const SvdResult sv = svd_decompose(nk);
    if (sv.sigma.size() > 1 && sv.sigma[1] > 1e-6 * sv.sigma[0])
        throw NumericalError("parabolic_split: range of N^{k-1} is not a line");
    const Vec u_c = col(sv.U, 0);

    const double chain_tol = verification_tols(tols).residual;
    const Vec x2_c = pinv_solve(ng, u_c, tols.rank);
    {
        Vec r = ng * x2_c;
        for (size_t i = 0; i < r.size(); ++i) r[i] -= u_c[i];
        if (norm2(r) > chain_tol * std::max(1.0, norm2(u_c)))
            throw NumericalError("parabolic_split: chain solve N x2 = u failed");
    }
    std::vector<Vec> chain = {g * u_c, g * x2_c};
    if (k == 3) {
        const Vec x3_c = pinv_solve(ng, x2_c, tols.rank);
        Vec r = ng * x3_c;
        for (size_t i = 0; i < r.size(); ++i) r[i] -= x2_c[i];
        if (norm2(r) > chain_tol * std::max(1.0, norm2(x2_c)))
            throw NumericalError("parabolic_split: chain solve N x3 = x2 failed");
        chain.push_back(g * x3_c);
    }

    InvariantSplit out;
    out.k = k;
    out.lambda_null = defective->lambda / std::abs(defective->lambda);
    out.u_basis = from_cols(chain);

    // U must be non-degenerate with exactly one time-like direction
    const Signature su = gram_signature(sp, out.u_basis, tols.rank);
    if (su.null != 0 || su.negative != 1)
        throw NumericalError("parabolic_split: chain subspace is degenerate");

    out.w_basis = form_complement(sp, out.u_basis, tols.rank);
    if (out.w_basis.cols() != sp.dim() - k)
        throw NumericalError("parabolic_split: complement has wrong dimension");
    const Signature sw = gram_signature(sp, out.w_basis, tols.rank);
    if (sw.negative != 0 || sw.null != 0)
        throw NumericalError("parabolic_split: complement is not positive definite");

    // T-invariance of both summands, measured with Euclidean projectors
    {
        const Mat pu = out.u_basis * inverse(out.u_basis.adjoint() * out.u_basis) *
                       out.u_basis.adjoint();
        const Mat tu = t * out.u_basis;
        if ((tu - pu * tu).frob_norm() > chain_tol * t.frob_norm())
            throw NumericalError("parabolic_split: chain subspace is not invariant");
        const Mat pw = out.w_basis * out.w_basis.adjoint();
        const Mat tw = t * out.w_basis;
        if ((tw - pw * tw).frob_norm() > chain_tol * t.frob_norm())
            throw NumericalError("parabolic_split: complement is not invariant");
    }
    // the complement restriction must be semisimple (it inherits unit
    // eigenvalues with full eigenspaces)
    if (out.w_basis.cols() > 0 &&
        !is_semisimple(eigen_structure(out.w_basis.adjoint() * (t * out.w_basis), tols)))
        throw NumericalError("parabolic_split: complement restriction is defective");
    return out;
}

} // namespace isofactor
