#pragma once

// Independent acceptance checks for factorization claims. Every quantity is
// recomputed from (target, factorization, tolerances): the product is
// re-multiplied, involutions are re-squared, reflection kinds re-derived from
// the spectrum, and the count table re-applied to the re-classified target.
// None of the construction pipelines are consulted, so a bug there cannot
// vouch for itself here.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "classify.hpp"
#include "factorization.hpp"
#include "rng.hpp"

namespace isofactor {

// Raw distance of F^2 from the identity.
inline double check_involution(const Mat& f) {
    return dist_to_identity(f * f);
}

namespace detail {

// Square defect measured against the natural scale of the square. For an
// anti-holomorphic factor, applying the map twice multiplies by A conj(A).
inline double square_defect(const Factor& f) {
    const Mat sq = f.tag == FactorTag::antiholo_involution
                       ? Mat(f.matrix * f.matrix.conjugate())
                       : Mat(f.matrix * f.matrix);
    const double s = f.matrix.frob_norm();
    return dist_to_identity(sq) / std::max(1.0, s * s);
}

// Greedy nearest matching between two eigenvalue multisets.
inline bool spectra_match(const std::vector<cplx>& a, std::vector<cplx> b,
                          double tol) {
    if (a.size() != b.size()) return false;
    for (const cplx& x : a) {
        std::size_t best = b.size();
        double dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double d = std::abs(x - b[j]);
            if (d < dist) {
                dist = d;
                best = j;
            }
        }
        if (best == b.size() || dist > tol * std::max(1.0, std::abs(x)))
            return false;
        b.erase(b.begin() + best);
    }
    return true;
}

inline bool spectrum_reversible(const Mat& m, double tol) {
    return spectra_match(eigenvalues(m), eigenvalues(inverse(m)), tol);
}

} // namespace detail

// Spectral witness for reversibility: the eigenvalue multiset must be closed
// under inversion. Each trial conjugates by a fresh random unitary, which
// re-rolls the rounding, so a borderline multiset has to survive every one.
inline bool brute_reversibility(const Mat& t, int trials, uint64_t seed,
                                double tol = 1e-7) {
    if (t.rows() != t.cols() || t.rows() == 0)
        throw DomainError("brute_reversibility: square matrix required");
    if (!detail::spectrum_reversible(t, tol)) return false;
    RngStream rng(seed, "brute_reversibility");
    const Mat eye = Mat::identity(t.rows());
    for (int trial = 0; trial < trials; ++trial) {
        const Mat u = unitary_log_sample(eye, rng, 1.0);
        if (!detail::spectrum_reversible(u * t * u.adjoint(), tol)) return false;
    }
    return true;
}

struct PerFactorCheck {
    FactorTag tag = FactorTag::involution;
    double involution_residual = 0.0; // relative distance of the square from I
    double unitarity_residual = 0.0;  // form (or Euclidean) unitarity defect
    cplx det = 1.0;
};

struct VerificationReport {
    double reconstruction_residual = 0.0;
    std::vector<PerFactorCheck> per_factor;
    bool count_ok = false;
    bool class_claim_ok = false;
    bool beyond_paper = false; // (class, n) lies outside the stated range
    bool accepted = false;
    std::vector<std::string> failures;
};

namespace detail {

struct FactorCounts {
    int involutions = 0;
    int reflections = 0;
    int antiholo = 0;
    int reversible = 0;
    std::vector<int> reflection_ks;
};

inline FactorCounts tally(const Factorization& f) {
    FactorCounts c;
    for (const Factor& x : f.factors) {
        switch (x.tag) {
            case FactorTag::involution: ++c.involutions; break;
            case FactorTag::k_reflection:
                ++c.reflections;
                c.reflection_ks.push_back(x.k);
                break;
            case FactorTag::reversible: ++c.reversible; break;
            case FactorTag::antiholo_involution: ++c.antiholo; break;
        }
    }
    return c;
}

// Count table for a product of involutions and at most one complex
// k-reflection. A reversible factor counts as two involutions.
inline bool product_counts_ok(IsoClass cls, const FactorCounts& c,
                              std::string* why) {
    const int inv = c.involutions + 2 * c.reversible;
    int refl_limit = 1;
    int expected_k = -1;
    switch (cls) {
        case IsoClass::central:
        case IsoClass::vertical_translation: refl_limit = 0; break;
        case IsoClass::non_vertical_translation:
            refl_limit = 0;
            if (inv > 2) {
                *why = "non-vertical translation needs at most two involutions";
                return false;
            }
            break;
        case IsoClass::elliptic: expected_k = 0; break;
        case IsoClass::hyperbolic:
        case IsoClass::ellipto_translation: expected_k = 1; break;
        case IsoClass::ellipto_parabolic: expected_k = 2; break;
    }
    if (inv > 4) {
        *why = "more than four involutions";
        return false;
    }
    if (c.reflections > refl_limit) {
        *why = "too many reflection factors for the class";
        return false;
    }
    for (int k : c.reflection_ks)
        if (k != expected_k) {
            *why = "reflection exponent does not match the class";
            return false;
        }
    return true;
}

// Classes whose factorization is constructed outside the stated range of
// validity for the given n.
inline bool outside_stated_range(IsoClass cls, int n) {
    switch (cls) {
        case IsoClass::hyperbolic: return n <= 2;
        case IsoClass::vertical_translation:
        case IsoClass::ellipto_translation: return n < 2;
        default: return false;
    }
}

} // namespace detail

// Re-derives everything the factorization claims about `target` and reports
// each check separately; `accepted` is the conjunction. Failures never throw
// (they are report entries), except for dimension mismatches, which break the
// arithmetic itself.
inline VerificationReport check_factorization(const HermitianSpace& sp,
                                              const Mat& target,
                                              const Factorization& f,
                                              const Tols& tols = {}) {
    const int dim = sp.dim();
    if (target.rows() != dim || target.cols() != dim)
        throw DomainError("check_factorization: target dimension mismatch");
    for (const Factor& x : f.factors)
        if (x.matrix.rows() != dim || x.matrix.cols() != dim)
            throw DomainError("check_factorization: factor dimension mismatch");

    const Tols vtols = verification_tols(tols);
    const double vres = vtols.residual;
    VerificationReport rep;
    auto fail = [&rep](std::string msg) { rep.failures.push_back(std::move(msg)); };

    // the product
    try {
        rep.reconstruction_residual = rel_dist(reconstruct(f, dim), target);
    } catch (const Error& e) {
        rep.reconstruction_residual = std::numeric_limits<double>::infinity();
        fail(std::string("reconstruction failed: ") + e.what());
    }
    if (rep.reconstruction_residual > vres)
        fail("reconstruction residual above tolerance");

    if (std::abs(std::abs(f.lift_scalar) - 1.0) > 1e-6)
        fail("lift scalar is not unit modulus");

    // the factors
    for (const Factor& x : f.factors) {
        PerFactorCheck pc;
        pc.tag = x.tag;
        pc.unitarity_residual = form_unitarity_defect(sp, x.matrix);
        pc.involution_residual = detail::square_defect(x);
        pc.det = determinant(x.matrix);
        const bool unitary_ok = pc.unitarity_residual <= vres;
        if (!unitary_ok)
            fail(std::string(to_string(x.tag)) + " factor is not form-unitary");
        switch (x.tag) {
            case FactorTag::involution:
            case FactorTag::antiholo_involution:
                if (pc.involution_residual > vres)
                    fail(std::string(to_string(x.tag)) +
                         " factor does not square to identity");
                break;
            case FactorTag::k_reflection: {
                if (std::abs(std::abs(x.lambda) - 1.0) > 1e-6)
                    fail("reflection eigenvalue is not unit modulus");
                // below the clustering radius the spectrum cannot resolve
                // the claimed eigenvalue from 1, and a near-identity factor
                // cannot hide anything the product check would miss
                const bool trivial =
                    dist_to_identity(x.matrix) <=
                    4.0 * vtols.cluster * std::max(1.0, x.matrix.frob_norm());
                if (unitary_ok && !trivial) {
                    bool kind_ok = false;
                    try {
                        const ReflectionInfo ri =
                            reflection_kind(sp, x.matrix, tols);
                        kind_ok = ri.is_reflection && ri.k == x.k &&
                                  std::abs(ri.lambda - x.lambda) <= 1e-6;
                    } catch (const Error&) {
                        kind_ok = false;
                    }
                    if (!kind_ok)
                        fail("reflection factor does not act as the claimed "
                             "k-reflection");
                }
                break;
            }
            case FactorTag::reversible:
                if (unitary_ok && !detail::spectrum_reversible(x.matrix, 1e-7))
                    fail("reversible factor has a non-reversible spectrum");
                break;
        }
        rep.per_factor.push_back(pc);
    }

    // the class claim and the count table
    const detail::FactorCounts counts = detail::tally(f);
    if (form_unitarity_defect(sp, target) > vres) {
        fail("target is not form-unitary");
    } else {
        try {
            const Classification cl = classify_isometry(sp, target, tols);
            rep.beyond_paper = f.mode == FactorizationMode::product &&
                               counts.antiholo == 0 &&
                               detail::outside_stated_range(cl.cls, sp.n);
            if (f.mode == FactorizationMode::commutator) {
                rep.count_ok =
                    f.factors.size() == 2 &&
                    (counts.antiholo == 2 || counts.involutions == 2);
                rep.class_claim_ok = counts.reflections == 0;
            } else if (counts.antiholo > 0) {
                rep.count_ok =
                    f.factors.size() == 2 && counts.antiholo == 2;
                rep.class_claim_ok = counts.reflections == 0;
            } else {
                std::string why;
                rep.count_ok = detail::product_counts_ok(cl.cls, counts, &why);
                if (!rep.count_ok) fail(why);
                rep.class_claim_ok = true;
            }
        } catch (const Error& e) {
            fail(std::string("target classification failed: ") + e.what());
        }
    }
    if (!rep.count_ok) fail("factor counts violate the class table");
    if (f.extended_range != rep.beyond_paper)
        fail("stated-range flag does not match the class and dimension");

    rep.accepted = rep.failures.empty() && rep.count_ok && rep.class_claim_ok;
    // duplicate messages are harmless; keep the list short for the common case
    std::sort(rep.failures.begin(), rep.failures.end());
    rep.failures.erase(std::unique(rep.failures.begin(), rep.failures.end()),
                       rep.failures.end());
    return rep;
}

// The definite-form counterpart: a special unitary target against a product
// of plain unitary involutions, at most four of them, or five when the
// dimension is 2 mod 4.
inline VerificationReport check_su_factorization(const Mat& target,
                                                 const Factorization& f,
                                                 const Tols& tols = {}) {
    const int dim = target.rows();
    if (target.cols() != dim || dim < 1)
        throw DomainError("check_su_factorization: square target required");
    for (const Factor& x : f.factors)
        if (x.matrix.rows() != dim || x.matrix.cols() != dim)
            throw DomainError("check_su_factorization: factor dimension mismatch");

    const Tols vtols = verification_tols(tols);
    const double vres = vtols.residual;
    VerificationReport rep;
    auto fail = [&rep](std::string msg) { rep.failures.push_back(std::move(msg)); };
    auto euclid_defect = [](const Mat& m) {
        const double s = m.frob_norm();
        return dist_to_identity(m.adjoint() * m) / std::max(1.0, s * s);
    };

    try {
        rep.reconstruction_residual = rel_dist(reconstruct(f, dim), target);
    } catch (const Error& e) {
        rep.reconstruction_residual = std::numeric_limits<double>::infinity();
        fail(std::string("reconstruction failed: ") + e.what());
    }
    if (rep.reconstruction_residual > vres)
        fail("reconstruction residual above tolerance");
    if (std::abs(f.lift_scalar - cplx(1.0)) > 1e-6)
        fail("special unitary products carry no lift scalar");
    if (f.mode != FactorizationMode::product) fail("product mode required");

    for (const Factor& x : f.factors) {
        PerFactorCheck pc;
        pc.tag = x.tag;
        pc.unitarity_residual = euclid_defect(x.matrix);
        pc.involution_residual = detail::square_defect(x);
        pc.det = determinant(x.matrix);
        if (x.tag != FactorTag::involution) fail("only involutions are allowed");
        if (pc.unitarity_residual > vres) fail("factor is not unitary");
        if (pc.involution_residual > vres)
            fail("factor does not square to identity");
        rep.per_factor.push_back(pc);
    }

    rep.class_claim_ok = euclid_defect(target) <= vres &&
                         std::abs(determinant(target) - cplx(1.0)) <= 1e-6;
    if (!rep.class_claim_ok) fail("target is not special unitary");

    const std::size_t limit = dim % 4 == 2 ? 5 : 4;
    rep.count_ok = f.factors.size() <= limit;
    if (!rep.count_ok) fail("factor count exceeds the dimension bound");

    rep.beyond_paper = false;
    if (f.extended_range) fail("stated-range flag set on a unitary product");

    rep.accepted = rep.failures.empty() && rep.count_ok && rep.class_claim_ok;
    std::sort(rep.failures.begin(), rep.failures.end());
    rep.failures.erase(std::unique(rep.failures.begin(), rep.failures.end()),
                       rep.failures.end());
    return rep;
}

} // namespace isofactor
