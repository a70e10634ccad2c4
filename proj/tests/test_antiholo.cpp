#include <catch2/catch_amalgamated.hpp>

#include "isofactor/antiholo.hpp"
#include "isofactor/rng.hpp"

using namespace isofactor;
using namespace std::complex_literals;

namespace {

const Tols tols{};

Mat conjugator(const HermitianSpace& sp, RngStream& rng) {
    return unitary_log_sample(sp.form(), rng, 1.0);
}

Vec null_u(int dim) {
    Vec u(dim, cplx(0.0));
    u[0] = u[1] = 1.0 / std::sqrt(2.0);
    return u;
}
Vec null_v(int dim) {
    Vec v(dim, cplx(0.0));
    v[0] = -1.0 / std::sqrt(2.0);
    v[1] = 1.0 / std::sqrt(2.0);
    return v;
}
Vec unit_e(int dim, int i) {
    Vec e(dim, cplx(0.0));
    e[i] = 1.0;
    return e;
}

Mat vertical_t(const HermitianSpace& sp, double c) {
    const int dim = sp.dim();
    Mat t = Mat::identity(dim);
    Vec u(dim, cplx(0.0));
    u[0] = u[1] = 1.0;
    const Mat j = sp.form();
    for (int r = 0; r < dim; ++r)
        for (int q = 0; q < dim; ++q)
            t(r, q) += cplx(0.0, c) * u[r] * std::conj(u[q]) * j(q, q);
    return t;
}

Mat heisenberg_block(cplx beta, double im_delta) {
    Mat b = Mat::identity(3);
    b(0, 1) = beta;
    b(0, 2) = cplx(-std::norm(beta) / 2.0, im_delta);
    b(1, 2) = -std::conj(beta);
    return b;
}

Vec random_vec(int dim, RngStream& rng) {
    Vec v(dim);
    for (auto& x : v) x = cplx(rng.gaussian(), rng.gaussian());
    return v;
}

double vec_dist(const Vec& a, const Vec& b) {
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) d += std::norm(a[i] - b[i]);
    return std::sqrt(d);
}

// independent verification: both factors are anti-holomorphic involutions
// pointwise and in matrix form, obey the conjugated form law, and compose
// back to t
void check_antiholo_split(const HermitianSpace& sp, const Factorization& f,
                          const Mat& t, RngStream& rng) {
    REQUIRE(f.mode == FactorizationMode::product);
    REQUIRE(f.factors.size() == 2);
    const double ts = std::max(1.0, t.frob_norm());
    for (const auto& fac : f.factors) {
        REQUIRE(fac.tag == FactorTag::antiholo_involution);
        CHECK(is_form_unitary(sp, fac.matrix, 1e-8));
        CHECK(std::abs(std::abs(fac.det) - 1.0) < 1e-10);
        const AntiholoMap m{fac.matrix};
        CHECK(antiholo_involution_defect(m) < 1e-9);
        for (int i = 0; i < 20; ++i) {
            const Vec v = random_vec(sp.dim(), rng);
            CHECK(vec_dist(antiholo_apply(m, antiholo_apply(m, v)), v) <
                  1e-9 * (1.0 + norm2(v)) * std::max(1.0, ts * ts));
        }
        const Vec v = random_vec(sp.dim(), rng);
        const Vec w = random_vec(sp.dim(), rng);
        CHECK(std::abs(sp.inner(antiholo_apply(m, v), antiholo_apply(m, w)) -
                       sp.inner(w, v)) <
              1e-8 * (1.0 + norm2(v) * norm2(w)) * ts * ts);
    }
    const AntiholoMap beta{f.factors[0].matrix};
    const AntiholoMap alpha{f.factors[1].matrix};
    for (int i = 0; i < 20; ++i) {
        const Vec v = random_vec(sp.dim(), rng);
        CHECK(vec_dist(t * v, antiholo_apply(beta, antiholo_apply(alpha, v))) <
              1e-8 * (1.0 + norm2(v)) * ts);
    }
    CHECK(rel_dist(antiholo_compose(beta, alpha), t) < 1e-8);
    CHECK(f.residual < 1e-8);
}

} // namespace

TEST_CASE("anti-holomorphic composition calculus") {
    HermitianSpace sp{2};
    RngStream rng(211, "test/antiholo-compose");
    const int dim = sp.dim();

    SECTION("plain conjugation squares to the identity") {
        const AntiholoMap c{Mat::identity(dim)};
        CHECK(dist_to_identity(antiholo_compose(c, c)) == 0.0);
        const AntiholoMap jc{sp.form()};
        CHECK(dist_to_identity(antiholo_compose(jc, jc)) < 1e-15);
    }
    SECTION("anti compose anti is holomorphic, checked pointwise") {
        const AntiholoMap f{conjugator(sp, rng)};
        const AntiholoMap g{conjugator(sp, rng)};
        const Mat h = antiholo_compose(f, g);
        for (int i = 0; i < 10; ++i) {
            const Vec v = random_vec(dim, rng);
            CHECK(vec_dist(h * v, antiholo_apply(f, antiholo_apply(g, v))) <
                  1e-12 * (1.0 + norm2(v)));
        }
    }
    SECTION("mixed compositions stay anti-holomorphic") {
        const Mat t = conjugator(sp, rng);
        const AntiholoMap g{conjugator(sp, rng)};
        const AntiholoMap tg = antiholo_compose(t, g);
        const AntiholoMap gt = antiholo_compose(g, t);
        for (int i = 0; i < 10; ++i) {
            const Vec v = random_vec(dim, rng);
            CHECK(vec_dist(antiholo_apply(tg, v), t * antiholo_apply(g, v)) <
                  1e-12 * (1.0 + norm2(v)));
            CHECK(vec_dist(antiholo_apply(gt, v), antiholo_apply(g, t * v)) <
                  1e-12 * (1.0 + norm2(v)));
        }
    }
    SECTION("associativity") {
        const AntiholoMap f{conjugator(sp, rng)};
        const AntiholoMap g{conjugator(sp, rng)};
        const AntiholoMap h{conjugator(sp, rng)};
        const AntiholoMap left = antiholo_compose(antiholo_compose(f, g), h);
        const AntiholoMap right = antiholo_compose(f, antiholo_compose(g, h));
        CHECK(rel_dist(left.a, right.a) < 1e-14);
    }
}

TEST_CASE("anti-holomorphic involution defect") {
    HermitianSpace sp{2};
    // any symmetric form-unitary matrix gives an involution
    CHECK(antiholo_involution_defect({sp.form()}) < 1e-15);
    CHECK(antiholo_involution_defect({Mat::diagonal(
              {std::exp(0.4i), std::exp(-1.2i), std::exp(2.9i)})}) < 1e-15);
    // a real rotation is its own conjugate, so the defect sees the square
    Mat rot = Mat::identity(3);
    rot(1, 1) = rot(2, 2) = std::cos(0.7);
    rot(1, 2) = -std::sin(0.7);
    rot(2, 1) = std::sin(0.7);
    CHECK(antiholo_involution_defect({rot}) > 0.1);
}

TEST_CASE("anti-holomorphic split by class") {
    SECTION("identity and central") {
        HermitianSpace sp{2};
        RngStream rng(223, "test/antiholo-central");
        Factorization f = antiholo_split(sp, Mat::identity(3), tols);
        CHECK(dist_to_identity(f.factors[0].matrix) < 1e-15);
        CHECK(dist_to_identity(f.factors[1].matrix) < 1e-15);
        const Mat t = std::exp(1.1i) * Mat::identity(3);
        f = antiholo_split(sp, t, tols);
        check_antiholo_split(sp, f, t, rng);
        CHECK(dist_to_identity(f.factors[1].matrix) < 1e-15);
    }
    SECTION("single-phase elliptic uses plain conjugation") {
        HermitianSpace sp{2};
        RngStream rng(227, "test/antiholo-diag");
        const Mat t = Mat::diagonal({std::exp(0.9i), 1.0, 1.0});
        const Factorization f = antiholo_split(sp, t, tols);
        check_antiholo_split(sp, f, t, rng);
        CHECK(rel_dist(f.factors[0].matrix, t) < 1e-12);
        CHECK(dist_to_identity(f.factors[1].matrix) < 1e-12);
    }
    SECTION("general elliptic") {
        HermitianSpace sp{3};
        RngStream rng(229, "test/antiholo-elliptic");
        Mat t = Mat::diagonal({std::exp(0.3i), std::exp(1.4i), std::exp(2.8i),
                               std::exp(4.9i)});
        const Mat g = conjugator(sp, rng);
        t = g * t * form_inverse(sp, g);
        check_antiholo_split(sp, antiholo_split(sp, t, tols), t, rng);
    }
    SECTION("elliptic with repeated eigenvalues") {
        HermitianSpace sp{3};
        RngStream rng(233, "test/antiholo-repeated");
        Mat t = Mat::diagonal({std::exp(0.8i), std::exp(0.8i), std::exp(2.1i),
                               std::exp(2.1i)});
        const Mat g = conjugator(sp, rng);
        t = g * t * form_inverse(sp, g);
        check_antiholo_split(sp, antiholo_split(sp, t, tols), t, rng);
    }
    SECTION("hyperbolic down to the smallest space") {
        for (int n : {1, 2, 3}) {
            HermitianSpace sp{n};
            RngStream rng(239 + n, "test/antiholo-hyper");
            const double r = 1.7;
            const cplx ph = std::exp(0.6i);
            Mat d = Mat::identity(n + 1);
            Mat blk(2, 2, {0.0, 0.0, 0.0, 0.0});
            blk(0, 0) = r * ph;
            blk(1, 1) = ph / r;
            const Mat b = [&] {
                std::vector<Vec> cols = {null_u(n + 1), null_v(n + 1)};
                for (int i = 2; i <= n; ++i) cols.push_back(unit_e(n + 1, i));
                return from_cols(cols);
            }();
            for (int i = 2; i <= n; ++i) d(i, i) = std::exp(cplx(0.0, 1.1 * i));
            d(0, 0) = blk(0, 0);
            d(1, 1) = blk(1, 1);
            Mat t = b * d * inverse(b);
            const Mat g = conjugator(sp, rng);
            t = g * t * form_inverse(sp, g);
            check_antiholo_split(sp, antiholo_split(sp, t, tols), t, rng);
        }
    }
    SECTION("vertical translations, both orientations") {
        for (int n : {1, 2, 3}) {
            HermitianSpace sp{n};
            RngStream rng(251 + n, "test/antiholo-vertical");
            for (double c : {0.9, -1.3}) {
                Mat t = vertical_t(sp, c);
                const Mat g = conjugator(sp, rng);
                t = g * t * form_inverse(sp, g);
                check_antiholo_split(sp, antiholo_split(sp, t, tols), t, rng);
            }
        }
    }
    SECTION("non-vertical translations") {
        for (int n : {2, 3}) {
            HermitianSpace sp{n};
            RngStream rng(257 + n, "test/antiholo-nonvertical");
            const int dim = n + 1;
            std::vector<Vec> cols = {null_u(dim), unit_e(dim, 2), null_v(dim)};
            for (int i = 3; i < dim; ++i) cols.push_back(unit_e(dim, i));
            const Mat b = from_cols(cols);
            Mat t = b *
                    block_diag(heisenberg_block(1.1 + 0.4i, 0.7),
                               Mat::identity(dim - 3)) *
                    inverse(b);
            const Mat g = conjugator(sp, rng);
            t = g * t * form_inverse(sp, g);
            check_antiholo_split(sp, antiholo_split(sp, t, tols), t, rng);
        }
    }
    SECTION("ellipto-translations") {
        for (int n : {1, 2, 3}) {
            HermitianSpace sp{n};
            RngStream rng(263 + n, "test/antiholo-ellipto-tr");
            const int dim = n + 1;
            const Mat shear(2, 2, {1.0, 1.3i, 0.0, 1.0});
            std::vector<Vec> cols = {null_u(dim), null_v(dim)};
            for (int i = 2; i < dim; ++i) cols.push_back(unit_e(dim, i));
            const Mat b = from_cols(cols);
            Mat w = Mat::identity(dim - 2);
            for (int i = 0; i < dim - 2; ++i) w(i, i) = std::exp(cplx(0.0, 2.0 + i));
            Mat t = b * block_diag(std::exp(0.9i) * shear, w) * inverse(b);
            const Mat g = conjugator(sp, rng);
            t = g * t * form_inverse(sp, g);
            REQUIRE(classify_isometry(sp, t, tols).cls ==
                    IsoClass::ellipto_translation);
            check_antiholo_split(sp, antiholo_split(sp, t, tols), t, rng);
        }
    }
    SECTION("ellipto-parabolic, including the n=2 space") {
        for (int n : {2, 3, 4}) {
            HermitianSpace sp{n};
            RngStream rng(271 + n, "test/antiholo-ellipto-par");
            const int dim = n + 1;
            std::vector<Vec> cols = {null_u(dim), unit_e(dim, 2), null_v(dim)};
            for (int i = 3; i < dim; ++i) cols.push_back(unit_e(dim, i));
            const Mat b = from_cols(cols);
            Mat w = Mat::identity(dim - 3);
            for (int i = 0; i < dim - 3; ++i) w(i, i) = std::exp(cplx(0.0, 0.4 + i));
            Mat t = b *
                    block_diag(std::exp(1.7i) * heisenberg_block(0.8, -0.4), w) *
                    inverse(b);
            const Mat g = conjugator(sp, rng);
            t = g * t * form_inverse(sp, g);
            REQUIRE(classify_isometry(sp, t, tols).cls ==
                    IsoClass::ellipto_parabolic);
            check_antiholo_split(sp, antiholo_split(sp, t, tols), t, rng);
        }
    }
    SECTION("rejects non-isometries") {
        HermitianSpace sp{2};
        CHECK_THROWS_AS(antiholo_split(sp, Mat::diagonal({2.0, 1.0, 1.0}), tols),
                        DomainError);
    }
}

TEST_CASE("class-respecting square root") {
    SECTION("scalar phase halves") {
        HermitianSpace sp{2};
        const Mat t = Mat::diagonal({std::exp(2.0i * 0.8), 1.0, 1.0});
        const Mat b = isometry_sqrt(sp, t, tols);
        CHECK(rel_dist(b, Mat::diagonal({std::exp(0.8i), 1.0, 1.0})) < 1e-10);
    }
    SECTION("every class squares back and keeps its class") {
        HermitianSpace sp{3};
        RngStream rng(281, "test/sqrt-classes");
        const int dim = 4;
        const Mat g = conjugator(sp, rng);
        std::vector<Mat> cases;
        cases.push_back(std::exp(2.3i) * Mat::identity(dim));
        cases.push_back(Mat::diagonal({std::exp(0.4i), std::exp(1.5i),
                                       std::exp(2.6i), std::exp(4.0i)}));
        {
            const Mat b = from_cols({null_u(dim), null_v(dim), unit_e(dim, 2),
                                     unit_e(dim, 3)});
            Mat d = Mat::diagonal({2.0 * std::exp(0.5i), 0.5 * std::exp(0.5i),
                                   std::exp(1.2i), std::exp(2.4i)});
            cases.push_back(b * d * inverse(b));
        }
        cases.push_back(vertical_t(sp, 1.1));
        {
            const Mat b = from_cols({null_u(dim), unit_e(dim, 2), null_v(dim),
                                     unit_e(dim, 3)});
            cases.push_back(b *
                            block_diag(heisenberg_block(0.9, 0.3), Mat::identity(1)) *
                            inverse(b));
            const Mat shear(2, 2, {1.0, -0.7i, 0.0, 1.0});
            const Mat b2 = from_cols({null_u(dim), null_v(dim), unit_e(dim, 2),
                                      unit_e(dim, 3)});
            cases.push_back(b2 *
                            block_diag(std::exp(0.9i) * shear,
                                       Mat::diagonal({std::exp(2.2i), 1.0})) *
                            inverse(b2));
            cases.push_back(b *
                            block_diag(std::exp(2.8i) * heisenberg_block(-0.6, 0.2),
                                       Mat::identity(1)) *
                            inverse(b));
        }
        for (Mat t : cases) {
            t = g * t * form_inverse(sp, g);
            const IsoClass cls = classify_isometry(sp, t, tols).cls;
            const Mat root = isometry_sqrt(sp, t, tols);
            CHECK(rel_dist(root * root, t) < 1e-9);
            CHECK(classify_isometry(sp, root, tols).cls == cls);
        }
    }
}

TEST_CASE("commutator of two anti-holomorphic involutions") {
    SECTION("identity") {
        HermitianSpace sp{2};
        const Factorization f = commutator_antiholo(sp, Mat::identity(3), tols);
        REQUIRE(f.mode == FactorizationMode::commutator);
        REQUIRE(f.factors.size() == 2);
        CHECK(rel_dist(reconstruct(f, 3), Mat::identity(3)) < 1e-12);
    }
    SECTION("doubled phase") {
        HermitianSpace sp{2};
        RngStream rng(293, "test/comm-phase");
        const Mat t = Mat::diagonal({std::exp(1.6i), 1.0, 1.0});
        const Factorization f = commutator_antiholo(sp, t, tols);
        const Mat m = f.factors[0].matrix * f.factors[1].matrix.conjugate();
        CHECK(rel_dist(m * m, t) < 1e-9);
    }
    SECTION("per-class panel") {
        HermitianSpace sp{2};
        RngStream rng(307, "test/comm-classes");
        const int dim = 3;
        const Mat g = conjugator(sp, rng);
        std::vector<Mat> cases;
        cases.push_back(Mat::diagonal({std::exp(0.7i), std::exp(1.9i),
                                       std::exp(3.4i)}));
        {
            const Mat b = from_cols({null_u(dim), null_v(dim), unit_e(dim, 2)});
            cases.push_back(b *
                            Mat::diagonal({3.0 * std::exp(1.0i),
                                           std::exp(1.0i) / 3.0, std::exp(2.2i)}) *
                            inverse(b));
            const Mat shear(2, 2, {1.0, 0.8i, 0.0, 1.0});
            cases.push_back(b * block_diag(std::exp(1.3i) * shear, Mat::identity(1)) *
                            inverse(b));
        }
        cases.push_back(vertical_t(sp, -0.8));
        {
            const Mat b = from_cols({null_u(dim), unit_e(dim, 2), null_v(dim)});
            cases.push_back(b * heisenberg_block(1.2, -0.5) * inverse(b));
            cases.push_back(b * (std::exp(0.6i) * heisenberg_block(0.7, 0.4)) *
                            inverse(b));
        }
        for (Mat t : cases) {
            t = g * t * form_inverse(sp, g);
            const Factorization f = commutator_antiholo(sp, t, tols);
            REQUIRE(f.mode == FactorizationMode::commutator);
            REQUIRE(f.factors.size() == 2);
            for (const auto& fac : f.factors) {
                REQUIRE(fac.tag == FactorTag::antiholo_involution);
                CHECK(is_form_unitary(sp, fac.matrix, 1e-8));
                CHECK(antiholo_involution_defect({fac.matrix}) < 1e-9);
            }
            const AntiholoMap al{f.factors[0].matrix};
            const AntiholoMap be{f.factors[1].matrix};
            const Mat m = antiholo_compose(al, be);
            CHECK(rel_dist(m * m, t) < 1e-8);
            CHECK(f.residual < 1e-8);
            for (int i = 0; i < 10; ++i) {
                const Vec v = random_vec(dim, rng);
                const Vec w = antiholo_apply(
                    al, antiholo_apply(be, antiholo_apply(al, antiholo_apply(be, v))));
                CHECK(vec_dist(t * v, w) <
                      1e-8 * (1.0 + norm2(v)) * std::max(1.0, t.frob_norm()));
            }
        }
    }
}
