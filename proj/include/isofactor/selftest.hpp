#pragma once

// Seeded end-to-end sweep over every pipeline: factor, verify, compare
// against closed forms, and fuzz. Each check returns a pass flag plus a
// deterministic one-line detail, so a fixed configuration renders a byte
// identical report on every run. Isometry checks read n as the space
// dimension (matrices are (n+1) x (n+1)); special unitary checks take the
// matrix dimension directly.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "antiholo.hpp"
#include "generate.hpp"
#include "un1_factor.hpp"
#include "verify.hpp"

namespace isofactor {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline std::string fmt_res(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

inline std::string range_note(int lo, int hi, int trials) {
    return std::to_string(lo) + ".." + std::to_string(hi) + ", " +
           std::to_string(trials) + " trials";
}

struct Worst {
    double value = 0.0;
    void feed(double x) {
        if (x > value) value = x;
    }
};

inline void note_failure(CheckResult& r, const std::string& what) {
    r.pass = false;
    if (r.detail.size() < 160) r.detail += "; " + what;
}

// classes swept by the isometry checks, in a fixed report order
inline const std::vector<GenClass>& iso_sweep() {
    static const std::vector<GenClass> sweep{
        GenClass::central,          GenClass::elliptic,
        GenClass::hyperbolic,       GenClass::vertical_translation,
        GenClass::non_vertical_translation,
        GenClass::ellipto_translation,
        GenClass::ellipto_parabolic};
    return sweep;
}

inline bool class_fits(GenClass c, int n) {
    if (c == GenClass::ellipto_parabolic) return n >= 3;
    if (c == GenClass::non_vertical_translation) return n >= 2;
    return true;
}

// uniformly mixed per-trial seed so cells never share generator streams
inline uint64_t trial_seed(uint64_t seed, uint64_t cell, uint64_t trial) {
    uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (cell * 1000003ULL + trial + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    return x;
}

inline Mat random_su(int dim, RngStream& rng) {
    return unitary_log_sample(Mat::identity(dim), rng, 1.0, true);
}

// apply the factor list as maps, rightmost first, with the antiholomorphic
// factors conjugating their argument
inline Vec apply_factors(const Factorization& f, Vec v) {
    for (auto it = f.factors.rbegin(); it != f.factors.rend(); ++it) {
        if (it->tag == FactorTag::antiholo_involution)
            for (auto& x : v) x = std::conj(x);
        v = it->matrix * v;
    }
    for (auto& x : v) x *= f.lift_scalar;
    return v;
}

} // namespace detail

// product of random special unitary matrices into involutions, within the
// dimension-dependent count bound, re-checked by the independent verifier
inline CheckResult check_su_involution_length(int dim_lo, int dim_hi,
                                              int trials, uint64_t seed,
                                              const Tols& tols = {}) {
    CheckResult r{"su_involution_length", true,
                  "dims " + detail::range_note(dim_lo, dim_hi, trials)};
    detail::Worst recon, factor_res;
    for (int d = dim_lo; d <= dim_hi; ++d) {
        RngStream rng(seed, "selftest/su_len/" + std::to_string(d));
        const int limit = d % 4 == 2 ? 5 : 4;
        for (int t = 0; t < trials; ++t) {
            const Mat m = detail::random_su(d, rng);
            try {
                const Factorization f = factor_su(m, tols);
                const VerificationReport rep = check_su_factorization(m, f, tols);
                recon.feed(rep.reconstruction_residual);
                for (const PerFactorCheck& p : rep.per_factor) {
                    factor_res.feed(p.involution_residual);
                    factor_res.feed(p.unitarity_residual);
                }
                if (!rep.accepted)
                    detail::note_failure(r, "rejected at dim " + std::to_string(d));
                if (static_cast<int>(f.factors.size()) > limit)
                    detail::note_failure(r, "count over bound at dim " +
                                                std::to_string(d));
            } catch (const Error& e) {
                detail::note_failure(r, e.what());
            }
        }
    }
    if (recon.value > 1e-8) detail::note_failure(r, "reconstruction over 1e-8");
    if (factor_res.value > 1e-9) detail::note_failure(r, "factor residual over 1e-9");
    r.detail += ", max recon " + detail::fmt_res(recon.value) +
                ", max factor residual " + detail::fmt_res(factor_res.value);
    return r;
}

// two_reversible_split of a diagonal special unitary against the closed-form
// partial-product diagonals; samples keep the partial products away from the
// +-1 snapping band so the comparison is exact to rounding
inline CheckResult check_reversible_diagonal_split(int dim_lo, int dim_hi,
                                                   int trials, uint64_t seed,
                                                   const Tols& tols = {}) {
    CheckResult r{"reversible_diagonal_split", true,
                  "dims " + detail::range_note(dim_lo, dim_hi, trials)};
    detail::Worst entry_err, eig_one;
    for (int d = dim_lo; d <= dim_hi; ++d) {
        RngStream rng(seed, "selftest/rev_diag/" + std::to_string(d));
        for (int t = 0; t < trials; ++t) {
            // diagonal with unit determinant, distinct phases, and all
            // partial products at least 1e-4 from +-1
            Vec lam;
            for (int attempt = 0; attempt < 256; ++attempt) {
                lam.assign(d, cplx(1.0));
                cplx prod = 1.0;
                for (int i = 0; i + 1 < d; ++i) {
                    lam[i] = std::polar(1.0, rng.uniform(0.0, detail::gen_two_pi));
                    prod *= lam[i];
                }
                lam[d - 1] = std::conj(prod);
                bool ok = true;
                for (int i = 0; i < d && ok; ++i)
                    for (int j = i + 1; j < d; ++j)
                        if (std::abs(lam[i] - lam[j]) < 1e-3) {
                            ok = false;
                            break;
                        }
                cplx mu = 1.0;
                for (int i = 0; i + 1 < d && ok; ++i) {
                    mu *= lam[i];
                    mu /= std::abs(mu);
                    if (std::abs(mu - 1.0) < 1e-4 || std::abs(mu + 1.0) < 1e-4)
                        ok = false;
                }
                if (ok) break;
                if (attempt == 255)
                    detail::note_failure(r, "no admissible sample");
            }

            // closed form on the phase-sorted entries
            std::vector<int> order(d);
            for (int i = 0; i < d; ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                return phase_02pi(lam[a]) < phase_02pi(lam[b]);
            });
            Vec mu(d + 1);
            mu[0] = 1.0;
            for (int j = 1; j <= d; ++j) {
                mu[j] = mu[j - 1] * lam[order[j - 1]];
                mu[j] /= std::abs(mu[j]);
            }
            mu[d] = 1.0; // determinant, snapped
            Vec d1(d), d2(d);
            for (int p = 0; p < d; ++p) {
                d1[p] = p % 2 == 0 ? mu[p + 1] : std::conj(mu[p]);
                d2[p] = p == 0 ? cplx(1.0)
                               : (p % 2 == 1 ? mu[p + 1] : std::conj(mu[p]));
            }
            Vec want1(d), want2(d);
            for (int p = 0; p < d; ++p) {
                want1[order[p]] = d1[p];
                want2[order[p]] = d2[p];
            }

            try {
                const TwoReversibleSplit s =
                    two_reversible_split(Mat::diagonal(lam), tols);
                const Mat m1 = Mat::diagonal(want1), m2 = Mat::diagonal(want2);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) {
                        entry_err.feed(std::abs(s.r1(i, j) - m1(i, j)));
                        entry_err.feed(std::abs(s.r2(i, j) - m2(i, j)));
                    }
                double best = 2.0;
                for (cplx e : eigenvalues(s.r2))
                    best = std::min(best, std::abs(e - 1.0));
                eig_one.feed(best);
            } catch (const Error& e) {
                detail::note_failure(r, e.what());
            }
        }
    }
    if (entry_err.value > 1e-12)
        detail::note_failure(r, "entrywise mismatch over 1e-12");
    if (eig_one.value > 1e-9)
        detail::note_failure(r, "second factor misses eigenvalue 1");
    r.detail += ", max entry diff " + detail::fmt_res(entry_err.value);
    return r;
}

// decompose for every class: at most four involutions plus exactly the
// mandated reflection, reconstruction within 1e-7, verifier acceptance
inline CheckResult check_isometry_reflection_table(int n_lo, int n_hi,
                                                   int trials, uint64_t seed,
                                                   const Tols& tols = {}) {
    CheckResult r{"isometry_reflection_table", true,
                  "n " + detail::range_note(n_lo, n_hi, trials)};
    detail::Worst recon;
    int runs = 0;
    uint64_t cell = 0;
    for (GenClass cls : detail::iso_sweep())
        for (int n = n_lo; n <= n_hi; ++n) {
            ++cell;
            if (!detail::class_fits(cls, n)) continue;
            const HermitianSpace sp{n};
            int expected_refl = 0, expected_k = -1;
            switch (iso_class_of(cls)) {
                case IsoClass::elliptic: expected_refl = 1; expected_k = 0; break;
                case IsoClass::hyperbolic:
                case IsoClass::ellipto_translation:
                    expected_refl = 1;
                    expected_k = 1;
                    break;
                case IsoClass::ellipto_parabolic:
                    expected_refl = 1;
                    expected_k = 2;
                    break;
                default: break;
            }
            for (int t = 0; t < trials; ++t) {
                ++runs;
                GenSpec spec;
                spec.cls = cls;
                spec.n = n;
                spec.seed = detail::trial_seed(seed, cell, t);
                try {
                    const GeneratedElement g = generate(spec);
                    const Factorization f = decompose(sp, g.matrix, tols);
                    int invs = 0, refls = 0;
                    for (const Factor& x : f.factors) {
                        if (x.tag == FactorTag::involution) ++invs;
                        if (x.tag == FactorTag::k_reflection) {
                            ++refls;
                            if (x.k != expected_k)
                                detail::note_failure(
                                    r, "wrong k for " + std::string(to_string(cls)));
                        }
                    }
                    if (invs > 4 || refls != expected_refl)
                        detail::note_failure(
                            r, "count off for " + std::string(to_string(cls)) +
                                   " n " + std::to_string(n));
                    const VerificationReport rep =
                        check_factorization(sp, g.matrix, f, tols);
                    recon.feed(rep.reconstruction_residual);
                    if (!rep.accepted)
                        detail::note_failure(
                            r, "rejected " + std::string(to_string(cls)) + " n " +
                                   std::to_string(n));
                } catch (const Error& e) {
                    detail::note_failure(r, e.what());
                }
            }
        }
    if (recon.value > 1e-7) detail::note_failure(r, "reconstruction over 1e-7");
    r.detail += ", " + std::to_string(runs) + " runs, max recon " +
                detail::fmt_res(recon.value);
    return r;
}

// the Hermitian witness separates involutions from non-involutions with no
// false calls at the 1e-8 / 1e-4 thresholds
inline CheckResult check_involution_witness(int n_lo, int n_hi, int trials,
                                            uint64_t seed,
                                            const Tols& tols = {}) {
    CheckResult r{"involution_witness", true,
                  "n " + detail::range_note(n_lo, n_hi, trials)};
    detail::Worst pos_defect;
    double neg_margin = 1.0;
    for (int n = n_lo; n <= n_hi; ++n) {
        const HermitianSpace sp{n};
        const int dim = sp.dim();
        RngStream rng(seed, "selftest/witness/" + std::to_string(n));
        for (int t = 0; t < trials; ++t) {
            const Mat c = unitary_log_sample(sp.form(), rng, 1.0);
            Vec signs(dim);
            for (auto& s : signs) s = rng.below(2) == 0 ? 1.0 : -1.0;
            // numerical inversion, so the sample carries honest rounding
            // noise instead of cancelling exactly
            const Mat inv = c * Mat::diagonal(signs) * inverse(c);
            const HermitianWitness wp = hermitian_witness(sp, inv, tols);
            pos_defect.feed(wp.defect);
            if (!wp.ok || wp.defect > 1e-8)
                detail::note_failure(r, "involution missed at n " +
                                            std::to_string(n));

            Mat other;
            bool found = false;
            for (int attempt = 0; attempt < 64 && !found; ++attempt) {
                other = unitary_log_sample(sp.form(), rng, 1.0);
                found = rel_dist(other * other, Mat::identity(dim)) > 1e-3;
            }
            if (!found) {
                detail::note_failure(r, "no non-involution sample");
                continue;
            }
            const HermitianWitness wn = hermitian_witness(sp, other, tols);
            neg_margin = std::min(neg_margin, wn.defect);
            if (wn.ok || wn.defect < 1e-4)
                detail::note_failure(r, "false positive at n " +
                                            std::to_string(n));
        }
    }
    r.detail += ", max involution defect " + detail::fmt_res(pos_defect.value) +
                ", min other defect " + detail::fmt_res(neg_margin);
    return r;
}

// both anti-holomorphic factors square to the identity and reproduce the
// target pointwise on random vector panels
inline CheckResult check_antiholo_split(int n_lo, int n_hi, int trials,
                                        uint64_t seed, const Tols& tols = {}) {
    CheckResult r{"antiholo_split_pointwise", true,
                  "n " + detail::range_note(n_lo, n_hi, trials)};
    detail::Worst square, pointwise;
    uint64_t cell = 0;
    for (GenClass cls : detail::iso_sweep())
        for (int n = n_lo; n <= n_hi; ++n) {
            ++cell;
            if (!detail::class_fits(cls, n)) continue;
            const HermitianSpace sp{n};
            RngStream panel_rng(seed, "selftest/antiholo_panel/" +
                                          std::to_string(cell));
            for (int t = 0; t < trials; ++t) {
                GenSpec spec;
                spec.cls = cls;
                spec.n = n;
                spec.seed = detail::trial_seed(seed, cell, t);
                try {
                    const GeneratedElement g = generate(spec);
                    const Factorization f = antiholo_split(sp, g.matrix, tols);
                    if (f.factors.size() != 2) {
                        detail::note_failure(r, "factor count");
                        continue;
                    }
                    for (const Factor& x : f.factors) {
                        const Mat sq = x.matrix * x.matrix.conjugate();
                        const double n2 = x.matrix.frob_norm();
                        square.feed(dist_to_identity(sq) /
                                    std::max(1.0, n2 * n2));
                    }
                    for (int p = 0; p < 20; ++p) {
                        Vec v(sp.dim());
                        for (auto& x : v)
                            x = cplx(panel_rng.gaussian(), panel_rng.gaussian());
                        const Vec got = detail::apply_factors(f, v);
                        const Vec want = g.matrix * v;
                        Vec diff = got;
                        for (int i = 0; i < sp.dim(); ++i) diff[i] -= want[i];
                        pointwise.feed(norm2(diff) /
                                       std::max(1.0, norm2(want)));
                    }
                } catch (const Error& e) {
                    detail::note_failure(r, e.what());
                }
            }
        }
    if (square.value > 1e-9) detail::note_failure(r, "square over 1e-9");
    if (pointwise.value > 1e-8) detail::note_failure(r, "pointwise over 1e-8");
    r.detail += ", max square " + detail::fmt_res(square.value) +
                ", max pointwise " + detail::fmt_res(pointwise.value);
    return r;
}

// every isometry is a commutator of two anti-holomorphic involutions
inline CheckResult check_antiholo_commutator(int n_lo, int n_hi, int trials,
                                             uint64_t seed,
                                             const Tols& tols = {}) {
    CheckResult r{"antiholo_commutator", true,
                  "n " + detail::range_note(n_lo, n_hi, trials)};
    detail::Worst recon;
    uint64_t cell = 0;
    for (GenClass cls : detail::iso_sweep())
        for (int n = n_lo; n <= n_hi; ++n) {
            ++cell;
            if (!detail::class_fits(cls, n)) continue;
            const HermitianSpace sp{n};
            for (int t = 0; t < trials; ++t) {
                GenSpec spec;
                spec.cls = cls;
                spec.n = n;
                spec.seed = detail::trial_seed(seed, cell, t);
                try {
                    const GeneratedElement g = generate(spec);
                    const Factorization f =
                        commutator_antiholo(sp, g.matrix, tols);
                    recon.feed(rel_dist(reconstruct(f, sp.dim()), g.matrix));
                    if (!check_factorization(sp, g.matrix, f, tols).accepted)
                        detail::note_failure(
                            r, "rejected " + std::string(to_string(cls)));
                } catch (const Error& e) {
                    detail::note_failure(r, e.what());
                }
            }
        }
    if (recon.value > 1e-8) detail::note_failure(r, "residual over 1e-8");
    r.detail += ", max residual " + detail::fmt_res(recon.value);
    return r;
}

// commutator_split on random reversible special unitary elements
inline CheckResult check_su_commutator(int dim_lo, int dim_hi, int trials,
                                       uint64_t seed, const Tols& tols = {}) {
    CheckResult r{"su_commutator_split", true,
                  "dims " + detail::range_note(dim_lo, dim_hi, trials)};
    detail::Worst recon;
    for (int d = dim_lo; d <= dim_hi; ++d) {
        RngStream rng(seed, "selftest/su_comm/" + std::to_string(d));
        for (int t = 0; t < trials; ++t) {
            // reversible spectrum: conjugate phase pairs, a fixed 1 when the
            // dimension is odd, phases kept off the real axis
            Vec lam(d, cplx(1.0));
            for (int i = 0; i + 1 < d; i += 2) {
                const double th = rng.uniform(0.15, 3.0);
                lam[i] = std::polar(1.0, th);
                lam[i + 1] = std::conj(lam[i]);
            }
            const Mat q = unitary_log_sample(Mat::identity(d), rng, 1.0);
            const Mat m = q * Mat::diagonal(lam) * q.adjoint();
            try {
                const CommutatorSplit s = commutator_split(m, tols);
                recon.feed(s.residual);
            } catch (const Error& e) {
                detail::note_failure(r, e.what());
            }
        }
    }
    if (recon.value > 1e-8) detail::note_failure(r, "residual over 1e-8");
    r.detail += ", max residual " + detail::fmt_res(recon.value);
    return r;
}

// a single 1e-3 entry perturbation in any factor must be rejected
inline CheckResult check_fuzzed_rejection(int n_lo, int n_hi, int trials,
                                          uint64_t seed,
                                          const Tols& tols = {}) {
    CheckResult r{"fuzzed_rejection", true,
                  "n " + detail::range_note(n_lo, n_hi, trials)};
    int runs = 0, rejected = 0;
    uint64_t cell = 0;
    for (GenClass cls : detail::iso_sweep())
        for (int n = n_lo; n <= n_hi; ++n) {
            ++cell;
            if (!detail::class_fits(cls, n)) continue;
            const HermitianSpace sp{n};
            RngStream rng(seed, "selftest/fuzz/" + std::to_string(cell));
            for (int t = 0; t < trials; ++t) {
                GenSpec spec;
                spec.cls = cls;
                spec.n = n;
                spec.seed = detail::trial_seed(seed, cell, t);
                try {
                    const GeneratedElement g = generate(spec);
                    Factorization f;
                    switch (t % 3) {
                        case 0: f = decompose(sp, g.matrix, tols); break;
                        case 1: f = antiholo_split(sp, g.matrix, tols); break;
                        default:
                            f = commutator_antiholo(sp, g.matrix, tols);
                            break;
                    }
                    if (f.factors.empty()) f = antiholo_split(sp, g.matrix, tols);
                    ++runs;
                    Factor& x = f.factors[rng.below(f.factors.size())];
                    const int i = static_cast<int>(rng.below(x.matrix.rows()));
                    const int j = static_cast<int>(rng.below(x.matrix.cols()));
                    x.matrix(i, j) += 1e-3;
                    if (!check_factorization(sp, g.matrix, f, tols).accepted)
                        ++rejected;
                } catch (const Error& e) {
                    detail::note_failure(r, e.what());
                }
            }
        }
    if (rejected != runs) detail::note_failure(r, "a fuzzed claim slipped through");
    r.detail += ", rejected " + std::to_string(rejected) + "/" +
                std::to_string(runs);
    return r;
}

// classify(generate(spec)) returns the requested label for every class
inline CheckResult check_classify_roundtrip(int n_lo, int n_hi, int trials,
                                            uint64_t seed,
                                            const Tols& tols = {}) {
    CheckResult r{"classify_roundtrip", true,
                  "n " + detail::range_note(n_lo, n_hi, trials)};
    int runs = 0, good = 0;
    uint64_t cell = 0;
    for (GenClass cls : detail::iso_sweep())
        for (int n = n_lo; n <= n_hi; ++n) {
            ++cell;
            if (!detail::class_fits(cls, n)) continue;
            const HermitianSpace sp{n};
            for (int t = 0; t < trials; ++t) {
                GenSpec spec;
                spec.cls = cls;
                spec.n = n;
                spec.seed = detail::trial_seed(seed, cell, t);
                ++runs;
                try {
                    const GeneratedElement g = generate(spec);
                    if (classify_isometry(sp, g.matrix, tols).cls ==
                        iso_class_of(cls))
                        ++good;
                    else
                        detail::note_failure(
                            r, std::string(to_string(cls)) + " n " +
                                   std::to_string(n) + " misclassified");
                } catch (const Error& e) {
                    detail::note_failure(r, e.what());
                }
            }
        }
    if (good != runs) r.pass = false;
    r.detail += ", " + std::to_string(good) + "/" + std::to_string(runs);
    return r;
}

// identical seeds must reproduce matrices bit for bit and reports byte for byte
inline CheckResult check_determinism(int n_lo, int n_hi, uint64_t seed,
                                     const Tols& tols = {}) {
    CheckResult r{"determinism", true,
                  "n " + std::to_string(n_lo) + ".." + std::to_string(n_hi)};
    uint64_t cell = 0;
    int cells = 0;
    for (GenClass cls : detail::iso_sweep())
        for (int n = n_lo; n <= n_hi; ++n) {
            ++cell;
            if (!detail::class_fits(cls, n)) continue;
            ++cells;
            GenSpec spec;
            spec.cls = cls;
            spec.n = n;
            spec.seed = detail::trial_seed(seed, cell, 0);
            const GeneratedElement a = generate(spec);
            const GeneratedElement b = generate(spec);
            bool same = true;
            for (int i = 0; i < a.matrix.rows() && same; ++i)
                for (int j = 0; j < a.matrix.cols(); ++j)
                    if (a.matrix(i, j).real() != b.matrix(i, j).real() ||
                        a.matrix(i, j).imag() != b.matrix(i, j).imag()) {
                        same = false;
                        break;
                    }
            if (!same)
                detail::note_failure(r, "regeneration differs for " +
                                            std::string(to_string(cls)));
            const HermitianSpace sp{n};
            const Classification c1 = classify_isometry(sp, a.matrix, tols);
            const Classification c2 = classify_isometry(sp, b.matrix, tols);
            if (to_string(c1.cls) != std::string(to_string(c2.cls)))
                detail::note_failure(r, "classification differs");
        }
    r.detail += ", " + std::to_string(cells) + " cells bitwise stable";
    return r;
}

struct SelftestConfig {
    int n_lo = 2;
    int n_hi = 4;
    int trials = 20;
    uint64_t seed = 1;
    Tols tols{};
};

inline std::vector<CheckResult> run_selftest(const SelftestConfig& cfg) {
    const int dlo = cfg.n_lo + 1, dhi = cfg.n_hi + 1;
    std::vector<CheckResult> out;
    out.push_back(check_su_involution_length(dlo, dhi, cfg.trials, cfg.seed,
                                             cfg.tols));
    out.push_back(check_reversible_diagonal_split(dlo, dhi, cfg.trials,
                                                  cfg.seed, cfg.tols));
    out.push_back(check_isometry_reflection_table(cfg.n_lo, cfg.n_hi,
                                                  cfg.trials, cfg.seed,
                                                  cfg.tols));
    out.push_back(check_involution_witness(cfg.n_lo, cfg.n_hi, cfg.trials,
                                           cfg.seed, cfg.tols));
    out.push_back(check_antiholo_split(cfg.n_lo, cfg.n_hi, cfg.trials,
                                       cfg.seed, cfg.tols));
    out.push_back(check_antiholo_commutator(cfg.n_lo, cfg.n_hi, cfg.trials,
                                            cfg.seed, cfg.tols));
    out.push_back(check_su_commutator(dlo, dhi, cfg.trials, cfg.seed,
                                      cfg.tols));
    out.push_back(check_fuzzed_rejection(cfg.n_lo, cfg.n_hi, cfg.trials,
                                         cfg.seed, cfg.tols));
    out.push_back(check_classify_roundtrip(cfg.n_lo, cfg.n_hi, cfg.trials,
                                           cfg.seed, cfg.tols));
    out.push_back(check_determinism(cfg.n_lo, cfg.n_hi, cfg.seed, cfg.tols));
    return out;
}

inline std::string render_report(const std::vector<CheckResult>& results,
                                 const SelftestConfig& cfg) {
    std::string out = "isofactor selftest: n " + std::to_string(cfg.n_lo) +
                      ".." + std::to_string(cfg.n_hi) + ", trials " +
                      std::to_string(cfg.trials) + ", seed " +
                      std::to_string(cfg.seed) + "\n";
    std::size_t width = 0;
    for (const CheckResult& r : results) width = std::max(width, r.name.size());
    int failed = 0;
    for (const CheckResult& r : results) {
        if (!r.pass) ++failed;
        out += "  " + r.name + std::string(width - r.name.size(), ' ') +
               (r.pass ? "  PASS  " : "  FAIL  ") + r.detail + "\n";
    }
    if (failed == 0)
        out += "all " + std::to_string(results.size()) + " checks passed\n";
    else
        out += std::to_string(failed) + " of " +
               std::to_string(results.size()) + " checks failed\n";
    return out;
}

} // namespace isofactor
