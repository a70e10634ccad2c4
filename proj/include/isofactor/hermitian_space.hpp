#pragma once

// The ambient Hermitian form of signature (n, 1). Vectors live in C^{n+1},
// the form matrix is J = diag(-1, 1, ..., 1), and the pairing is
//     <z, w> = w^* J z,
// linear in the first slot and conjugate-linear in the second. Everything
// downstream (vector kinds, form-unitarity, Gram signatures, indefinite
// orthonormalization) is defined relative to this pairing.

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "matrix.hpp"
#include "svd.hpp"
#include "tolerances.hpp"

namespace isofactor {

struct HermitianSpace {
    int n = 0; // complex hyperbolic dimension; matrices act on C^{n+1}

    int dim() const { return n + 1; }

    Mat form() const {
        Mat j = Mat::identity(n + 1);
        j(0, 0) = -1.0;
        return j;
    }

    cplx inner(const Vec& z, const Vec& w) const {
        cplx s = -std::conj(w[0]) * z[0];
        for (int i = 1; i <= n; ++i) s += std::conj(w[i]) * z[i];
        return s;
    }

    double self_product(const Vec& z) const { return inner(z, z).real(); }
};

enum class VectorKind { time_like, space_like, light_like, zero_vector };

inline const char* to_string(VectorKind k) {
    switch (k) {
        case VectorKind::time_like: return "time_like";
        case VectorKind::space_like: return "space_like";
        case VectorKind::light_like: return "light_like";
        case VectorKind::zero_vector: return "zero_vector";
    }
    return "?";
}

// Kind decision is relative: <z,z> is compared against tol times the
// squared Euclidean norm, so scaling z never flips the answer.
inline VectorKind classify_vector(const HermitianSpace& sp, const Vec& z, double tol) {
    double e2 = 0.0;
    for (const auto& x : z) e2 += std::norm(x);
    if (e2 == 0.0) return VectorKind::zero_vector;
    const double q = sp.self_product(z);
    if (std::abs(q) <= tol * e2) return VectorKind::light_like;
    return q < 0.0 ? VectorKind::time_like : VectorKind::space_like;
}

// ||A^* J A - J|| measured against the natural scale of A^* J A.
inline double form_unitarity_defect(const HermitianSpace& sp, const Mat& a) {
    const Mat j = sp.form();
    return (a.adjoint() * j * a - j).frob_norm() / std::max(1.0, a.frob_norm() * a.frob_norm());
}

inline bool is_form_unitary(const HermitianSpace& sp, const Mat& a, double tol) {
    if (a.rows() != sp.dim() || a.cols() != sp.dim()) return false;
    if (!a.is_finite()) return false;
    return form_unitarity_defect(sp, a) <= tol;
}

// For A form-unitary, A^{-1} = J A^* J exactly; cheaper and more stable
// than elimination.
inline Mat form_inverse(const HermitianSpace& sp, const Mat& a) {
    const Mat j = sp.form();
    return j * a.adjoint() * j;
}

struct Signature {
    int positive = 0;
    int negative = 0;
    int null = 0;
};

// Gram matrix of the columns of `basis`: G(i,k) = <b_k, b_i>, which is
// exactly basis^* J basis.
inline Mat gram_matrix(const HermitianSpace& sp, const Mat& basis) {
    return basis.adjoint() * sp.form() * basis;
}

// Inertia of the restriction of the form to span(columns). Eigenvalues of
// the Gram within rank_tol of zero (relative to the largest) count as null,
// with the same factor-10 ambiguity guard as rank decisions.
inline Signature gram_signature(const HermitianSpace& sp, const Mat& basis, double rank_tol) {
    if (basis.empty()) return {};
    const HermEig e = hermitian_eigen(gram_matrix(sp, basis));
    // the decision scale must not collapse when the form restricted to the
    // span is (numerically) zero, e.g. on an isotropic line; the squared
    // column norms provide the natural floor
    double amax = 0.0;
    for (double l : e.lambda) amax = std::max(amax, std::abs(l));
    for (int j = 0; j < basis.cols(); ++j) {
        double c2 = 0.0;
        for (int i = 0; i < basis.rows(); ++i) c2 += std::norm(basis(i, j));
        amax = std::max(amax, c2);
    }
    Signature s;
    if (amax == 0.0) {
        s.null = static_cast<int>(e.lambda.size());
        return s;
    }
    const double thr = rank_tol * amax;
    for (double l : e.lambda) {
        const double a = std::abs(l);
        if (a >= 0.1 * thr && a < 10.0 * thr)
            throw NumericalError("ambiguous inertia decision: Gram eigenvalue within "
                                 "a factor 10 of the null threshold");
        if (a < thr)
            ++s.null;
        else if (l > 0.0)
            ++s.positive;
        else
            ++s.negative;
    }
    return s;
}

// Pivoted Gram-Schmidt for the indefinite pairing. Input columns must span
// a subspace on which the form is non-degenerate; the output columns have
// Gram diag(-1,...,-1, +1,...,+1) with the time-like directions first.
// A light-like pivot (no remaining vector with a usable self-product)
// raises DomainError.
inline Mat orthonormalize_indefinite(const HermitianSpace& sp, const Mat& basis,
                                     double rank_tol) {
    const int k = basis.cols();
    std::vector<Vec> work(k);
    for (int j = 0; j < k; ++j) work[j] = col(basis, j);

    std::vector<Vec> neg, pos;
    std::vector<bool> used(k, false);
    for (int step = 0; step < k; ++step) {
        int pick = -1;
        double best = 0.0;
        for (int j = 0; j < k; ++j) {
            if (used[j]) continue;
            const double e2 = dot(work[j], work[j]).real(); // Euclidean norm^2
            if (e2 <= 1e-300) continue;
            const double rel = std::abs(sp.self_product(work[j])) / e2;
            if (pick < 0 || rel > best) {
                best = rel;
                pick = j;
            }
        }
        if (pick < 0 || best <= rank_tol)
            throw DomainError("orthonormalize_indefinite: degenerate or light-like pivot");
        used[pick] = true;
        const double q = sp.self_product(work[pick]);
        const double sgn = q < 0.0 ? -1.0 : 1.0;
        Vec u = (1.0 / std::sqrt(std::abs(q))) * work[pick];
        for (int j = 0; j < k; ++j) {
            if (used[j]) continue;
            work[j] = work[j] - (sgn * sp.inner(work[j], u)) * u;
        }
        (sgn < 0.0 ? neg : pos).push_back(std::move(u));
    }
    std::vector<Vec> out;
    out.reserve(k);
    for (auto& v : neg) out.push_back(std::move(v));
    for (auto& v : pos) out.push_back(std::move(v));
    return from_cols(out);
}

// Basis of the form-orthogonal complement of span(columns of u):
// z is in the complement iff <z, u_i> = 0 for all i, i.e. (u^* J) z = 0.
inline Mat form_complement(const HermitianSpace& sp, const Mat& u, double rank_tol) {
    return kernel_basis(u.adjoint() * sp.form(), rank_tol, "form_complement");
}

} // namespace isofactor
