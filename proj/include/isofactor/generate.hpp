#pragma once

// Seeded generators for ground-truth elements of every isometry class and of
// SU(n). A GenSpec fully determines the output: all randomness comes from one
// counter-based stream keyed by (seed, class, n), so identical specs give
// bitwise-identical matrices and distinct purposes never share draws.
//
// Optional parameters by class (anything else must stay unset):
//   central                   theta: eigenvalue phase
//   elliptic                  phases: all dim = n+1 eigenvalue phases
//   hyperbolic                r > 1 and theta for the pair (r e^{i theta},
//                             r^{-1} e^{i theta}); phases: dim-2 unit phases
//   vertical_translation      r: nonzero vertical translation coordinate
//   non_vertical_translation  r > 0 and theta: polar form of the horizontal
//                             component
//   ellipto_translation       theta: lift phase (not a multiple of 2 pi);
//                             r: vertical coordinate; phases: dim-2 unit
//                             phases relative to the lift
//   ellipto_parabolic         theta: lift phase; r > 0: horizontal modulus;
//                             phases: dim-3 relative unit phases
//   su_n                      none

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "classify.hpp"
#include "rng.hpp"

namespace isofactor {

enum class GenClass {
    central,
    elliptic,
    hyperbolic,
    vertical_translation,
    non_vertical_translation,
    ellipto_translation,
    ellipto_parabolic,
    su_n,
};

inline const char* to_string(GenClass c) {
    switch (c) {
        case GenClass::central: return "central";
        case GenClass::elliptic: return "elliptic";
        case GenClass::hyperbolic: return "hyperbolic";
        case GenClass::vertical_translation: return "vertical_translation";
        case GenClass::non_vertical_translation:
            return "non_vertical_translation";
        case GenClass::ellipto_translation: return "ellipto_translation";
        case GenClass::ellipto_parabolic: return "ellipto_parabolic";
        case GenClass::su_n: return "su_n";
    }
    return "?";
}

inline GenClass gen_class_from_string(const std::string& s) {
    for (GenClass c :
         {GenClass::central, GenClass::elliptic, GenClass::hyperbolic,
          GenClass::vertical_translation, GenClass::non_vertical_translation,
          GenClass::ellipto_translation, GenClass::ellipto_parabolic,
          GenClass::su_n})
        if (s == to_string(c)) return c;
    throw DomainError("unknown class name: " + s);
}

inline GenClass gen_class_of(IsoClass c) {
    switch (c) {
        case IsoClass::central: return GenClass::central;
        case IsoClass::elliptic: return GenClass::elliptic;
        case IsoClass::hyperbolic: return GenClass::hyperbolic;
        case IsoClass::vertical_translation:
            return GenClass::vertical_translation;
        case IsoClass::non_vertical_translation:
            return GenClass::non_vertical_translation;
        case IsoClass::ellipto_translation:
            return GenClass::ellipto_translation;
        case IsoClass::ellipto_parabolic: return GenClass::ellipto_parabolic;
    }
    throw DomainError("gen_class_of: unrecognized class");
}

// The isometry class a generated element must classify as; su_n has none.
inline IsoClass iso_class_of(GenClass c) {
    switch (c) {
        case GenClass::central: return IsoClass::central;
        case GenClass::elliptic: return IsoClass::elliptic;
        case GenClass::hyperbolic: return IsoClass::hyperbolic;
        case GenClass::vertical_translation:
            return IsoClass::vertical_translation;
        case GenClass::non_vertical_translation:
            return IsoClass::non_vertical_translation;
        case GenClass::ellipto_translation:
            return IsoClass::ellipto_translation;
        case GenClass::ellipto_parabolic: return IsoClass::ellipto_parabolic;
        case GenClass::su_n: break;
    }
    throw DomainError("iso_class_of: su_n elements have no isometry class");
}

struct GenSpec {
    GenClass cls = GenClass::elliptic;
    int n = 2;
    uint64_t seed = 0;
    std::optional<double> r;
    std::optional<double> theta;
    std::optional<std::vector<double>> phases;
    bool conjugate = true; // apply a random form-unitary change of basis
};

struct GeneratedElement {
    Mat matrix;
    GenClass label = GenClass::elliptic;
    int n = 0;
};

namespace detail {

inline constexpr double gen_two_pi = 6.28318530717958648;

inline Vec gen_null_u(int dim) {
    Vec u(dim, cplx(0.0));
    u[0] = u[1] = 1.0 / std::sqrt(2.0);
    return u;
}

inline Vec gen_null_v(int dim) {
    Vec v(dim, cplx(0.0));
    v[0] = -1.0 / std::sqrt(2.0);
    v[1] = 1.0 / std::sqrt(2.0);
    return v;
}

// (u, e2, v | e3, ...) change of basis carrying upper-triangular Heisenberg
// blocks to the standard form; (u, v | e2, ...) when the block is 2x2.
inline Mat gen_null_frame(int dim, int block) {
    std::vector<Vec> cols{gen_null_u(dim)};
    if (block == 3) {
        Vec e2(dim, cplx(0.0));
        e2[2] = 1.0;
        cols.push_back(e2);
    }
    cols.push_back(gen_null_v(dim));
    for (int i = block; i < dim; ++i) {
        Vec e(dim, cplx(0.0));
        e[i] = 1.0;
        cols.push_back(e);
    }
    return from_cols(cols);
}

inline Mat gen_heisenberg(cplx beta, double im_delta) {
    Mat b = Mat::identity(3);
    b(0, 1) = beta;
    b(0, 2) = cplx(-std::norm(beta) / 2.0, im_delta);
    b(1, 2) = -std::conj(beta);
    return b;
}

// v -> v + i c <v,u> u on the standard null direction u = e0 + e1
inline Mat gen_vertical(int dim, double c) {
    Mat t = Mat::identity(dim);
    t(0, 0) -= cplx(0.0, c);
    t(0, 1) += cplx(0.0, c);
    t(1, 0) -= cplx(0.0, c);
    t(1, 1) += cplx(0.0, c);
    return t;
}

// phases with pairwise circular gaps above `gap`; with avoid_zero they also
// stay away from phase 0, so a relative phase never crowds the eigenvalue it
// is measured against. Near-coincidences (inside the clustering radius but
// not exact) are the one zone where rank decisions go ambiguous.
inline std::vector<double> separated_phases(RngStream& rng, int count,
                                            double gap, bool avoid_zero) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::vector<double> ph(count);
        for (double& p : ph) p = rng.uniform(0.0, detail::gen_two_pi);
        std::vector<double> all = ph;
        if (avoid_zero) all.push_back(0.0);
        bool ok = true;
        for (std::size_t i = 0; i < all.size() && ok; ++i)
            for (std::size_t j = i + 1; j < all.size() && ok; ++j) {
                const double d = std::abs(
                    std::exp(cplx(0.0, all[i])) - std::exp(cplx(0.0, all[j])));
                ok = d > gap;
            }
        if (ok) return ph;
    }
    throw NumericalError("separated_phases: no separated draw found");
}

inline void reject_param(bool present, const char* cls, const char* what) {
    if (present)
        throw DomainError(std::string(cls) + " takes no " + what +
                          " parameter");
}

inline std::vector<double> take_phases(const GenSpec& spec, RngStream& rng,
                                       int count, bool avoid_zero = false) {
    if (spec.phases) {
        if (static_cast<int>(spec.phases->size()) != count)
            throw DomainError("generate: expected " + std::to_string(count) +
                              " phases for " + to_string(spec.cls));
        return *spec.phases;
    }
    return count > 0 ? separated_phases(rng, count, 1e-2, avoid_zero)
                     : std::vector<double>{};
}

} // namespace detail

inline GeneratedElement generate(const GenSpec& spec) {
    if (spec.n < 1) throw DomainError("generate: n must be at least 1");
    const bool needs_chain3 = spec.cls == GenClass::non_vertical_translation ||
                              spec.cls == GenClass::ellipto_parabolic;
    if (needs_chain3 && spec.n < 2)
        throw DomainError(std::string("generate: ") + to_string(spec.cls) +
                          " needs n >= 2");

    RngStream rng(spec.seed, std::string("gen/") + to_string(spec.cls) + "/" +
                                 std::to_string(spec.n));
    const int dim = spec.n + 1;
    const auto phase = [](double a) { return std::exp(cplx(0.0, a)); };
    Mat t;

    switch (spec.cls) {
        case GenClass::su_n:
            detail::reject_param(spec.r.has_value(), "su_n", "r");
            detail::reject_param(spec.theta.has_value(), "su_n", "theta");
            detail::reject_param(spec.phases.has_value(), "su_n", "phases");
            return {unitary_log_sample(Mat::identity(spec.n), rng, 1.0, true),
                    spec.cls, spec.n};
        case GenClass::central: {
            detail::reject_param(spec.r.has_value(), "central", "r");
            detail::reject_param(spec.phases.has_value(), "central", "phases");
            const double a =
                spec.theta ? *spec.theta
                           : rng.uniform(0.0, detail::gen_two_pi);
            t = phase(a) * Mat::identity(dim);
            break;
        }
        case GenClass::elliptic: {
            detail::reject_param(spec.r.has_value(), "elliptic", "r");
            detail::reject_param(spec.theta.has_value(), "elliptic", "theta");
            const std::vector<double> ph = detail::take_phases(spec, rng, dim);
            bool all_equal = true;
            for (double p : ph)
                all_equal = all_equal && std::abs(phase(p) - phase(ph[0])) < 1e-6;
            if (all_equal)
                throw DomainError("generate: coinciding phases give a central "
                                  "element, not an elliptic one");
            Vec d(dim);
            for (int i = 0; i < dim; ++i) d[i] = phase(ph[i]);
            t = Mat::diagonal(d);
            break;
        }
        case GenClass::hyperbolic: {
            const double r = spec.r ? *spec.r : std::exp(rng.uniform(0.3, 1.2));
            if (r <= 1.0)
                throw DomainError("generate: hyperbolic needs r > 1");
            const double th =
                spec.theta ? *spec.theta
                           : rng.uniform(0.0, detail::gen_two_pi);
            const std::vector<double> ph =
                detail::take_phases(spec, rng, dim - 2);
            Vec d(dim);
            d[0] = r * phase(th);
            d[1] = phase(th) / r;
            for (int i = 2; i < dim; ++i) d[i] = phase(ph[i - 2]);
            const Mat b = detail::gen_null_frame(dim, 2);
            t = b * Mat::diagonal(d) * inverse(b);
            break;
        }
        case GenClass::vertical_translation: {
            detail::reject_param(spec.theta.has_value(), "vertical_translation",
                                 "theta");
            detail::reject_param(spec.phases.has_value(),
                                 "vertical_translation", "phases");
            double c = spec.r ? *spec.r
                              : (rng.uniform() < 0.5 ? -1.0 : 1.0) *
                                    rng.uniform(0.5, 1.5);
            if (c == 0.0)
                throw DomainError("generate: vertical translation needs a "
                                  "nonzero coordinate");
            t = detail::gen_vertical(dim, c);
            break;
        }
        case GenClass::non_vertical_translation: {
            detail::reject_param(spec.phases.has_value(),
                                 "non_vertical_translation", "phases");
            const double m = spec.r ? *spec.r : rng.uniform(0.5, 1.5);
            if (m <= 0.0)
                throw DomainError("generate: horizontal modulus must be "
                                  "positive");
            const double a =
                spec.theta ? *spec.theta
                           : rng.uniform(0.0, detail::gen_two_pi);
            const double delta =
                (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.2, 1.0);
            const Mat b = detail::gen_null_frame(dim, 3);
            t = b *
                block_diag(detail::gen_heisenberg(m * phase(a), delta),
                           Mat::identity(dim - 3)) *
                inverse(b);
            break;
        }
        case GenClass::ellipto_translation: {
            const double lift =
                spec.theta ? *spec.theta : rng.uniform(0.3, 5.9);
            if (std::abs(phase(lift) - 1.0) < 1e-6)
                throw DomainError("generate: an ellipto-translation needs a "
                                  "nontrivial lift phase");
            double c = spec.r ? *spec.r
                              : (rng.uniform() < 0.5 ? -1.0 : 1.0) *
                                    rng.uniform(0.5, 1.5);
            if (c == 0.0)
                throw DomainError("generate: ellipto-translation needs a "
                                  "nonzero coordinate");
            const std::vector<double> ph =
                detail::take_phases(spec, rng, dim - 2, true);
            Vec w(dim - 2);
            for (int i = 0; i < dim - 2; ++i) w[i] = phase(ph[i]);
            t = phase(lift) *
                (block_diag(detail::gen_vertical(2, c), Mat::diagonal(w)));
            break;
        }
        case GenClass::ellipto_parabolic: {
            const double lift =
                spec.theta ? *spec.theta : rng.uniform(0.3, 5.9);
            if (std::abs(phase(lift) - 1.0) < 1e-6)
                throw DomainError("generate: an ellipto-parabolic element "
                                  "needs a nontrivial lift phase");
            const double m = spec.r ? *spec.r : rng.uniform(0.5, 1.5);
            if (m <= 0.0)
                throw DomainError("generate: horizontal modulus must be "
                                  "positive");
            const double a = rng.uniform(0.0, detail::gen_two_pi);
            const double delta =
                (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.2, 1.0);
            const std::vector<double> ph =
                detail::take_phases(spec, rng, dim - 3, true);
            Vec w(dim - 3);
            for (int i = 0; i < dim - 3; ++i) w[i] = phase(ph[i]);
            const Mat b = detail::gen_null_frame(dim, 3);
            t = phase(lift) * b *
                block_diag(detail::gen_heisenberg(m * phase(a), delta),
                           Mat::diagonal(w)) *
                inverse(b);
            break;
        }
    }

    if (spec.conjugate) {
        const HermitianSpace sp{spec.n};
        const Mat c = unitary_log_sample(sp.form(), rng, 1.0);
        t = c * t * form_inverse(sp, c);
    }
    return {t, spec.cls, spec.n};
}

} // namespace isofactor
