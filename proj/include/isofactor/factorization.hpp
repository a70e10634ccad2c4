#pragma once

// Result types shared by every factor pipeline, plus the one reconstruction
// rule they all obey: in product mode,
//     target = lift_scalar * F1 * F2 * ... * Fm   (maps composed left to right)
// where an antiholomorphic factor with matrix A acts as v -> A conj(v), so
// composing it conjugates everything to its right. In commutator mode the
// factor list is a pair (alpha, beta) of antiholomorphic involutions and
//     target = [alpha, beta] = (alpha . beta)^2 = (A conj(B))^2.

#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace isofactor {

enum class FactorTag { involution, k_reflection, reversible, antiholo_involution };

inline const char* to_string(FactorTag t) {
    switch (t) {
        case FactorTag::involution: return "involution";
        case FactorTag::k_reflection: return "k_reflection";
        case FactorTag::reversible: return "reversible";
        case FactorTag::antiholo_involution: return "antiholo_involution";
    }
    return "?";
}

struct Factor {
    FactorTag tag = FactorTag::involution;
    Mat matrix;
    cplx det = 1.0;
    int k = -1;        // k_reflection only
    cplx lambda = 1.0; // k_reflection only
};

enum class FactorizationMode { product, commutator };

struct Factorization {
    cplx lift_scalar = 1.0;
    FactorizationMode mode = FactorizationMode::product;
    std::vector<Factor> factors;
    double residual = 0.0;
    // set when a construction is applied below the dimension range it is
    // normally stated for (and is instead certified by the self-check)
    bool extended_range = false;
};

inline Mat compose_factors(const std::vector<Factor>& fs, int dim) {
    Mat m = Mat::identity(dim);
    bool conjugated = false;
    for (const Factor& f : fs) {
        m = m * (conjugated ? f.matrix.conjugate() : f.matrix);
        if (f.tag == FactorTag::antiholo_involution) conjugated = !conjugated;
    }
    if (conjugated)
        throw DomainError("compose_factors: odd number of antiholomorphic factors");
    return m;
}

inline Mat reconstruct(const Factorization& f, int dim) {
    if (f.mode == FactorizationMode::commutator) {
        if (f.factors.size() != 2)
            throw DomainError("reconstruct: commutator mode expects two factors");
        const bool a0 = f.factors[0].tag == FactorTag::antiholo_involution;
        const bool a1 = f.factors[1].tag == FactorTag::antiholo_involution;
        if (a0 != a1)
            throw DomainError("reconstruct: commutator factors must both be "
                              "holomorphic or both antiholomorphic");
        if (a0) {
            // [alpha, beta] for involutions alpha, beta is (alpha . beta)^2
            const Mat c = f.factors[0].matrix * f.factors[1].matrix.conjugate();
            return c * c;
        }
        const Mat& x = f.factors[0].matrix;
        const Mat& y = f.factors[1].matrix;
        return x * y * inverse(x) * inverse(y);
    }
    return f.lift_scalar * compose_factors(f.factors, dim);
}

} // namespace isofactor
