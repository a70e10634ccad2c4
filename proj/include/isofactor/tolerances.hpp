#pragma once

// Central tolerance bundle. Construction code takes a Tols; verification
// derives its own (looser) copy via verification_tols() so that a factor
// built right at the construction margin still verifies.

namespace isofactor {

struct Tols {
    // target for construction residuals, relative Frobenius
    double residual = 1e-9;
    // rank / signature / kernel thresholds, relative to the largest
    // singular value (or Gram eigenvalue) of the matrix being examined
    double rank = 1e-7;
    // eigenvalue clustering radius, times max(1, ||A||_F); single linkage
    double cluster = 5e-5;
    // matching unit eigenvalues with their conjugates
    double pairing = 1e-7;

    // moduli farther than this from 1 mark non-unit eigenvalues
    double unit_band() const { return 10.0 * rank; }
};

inline Tols verification_tols(const Tols& t) {
    Tols v = t;
    v.residual *= 10.0;
    return v;
}

} // namespace isofactor
