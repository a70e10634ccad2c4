#include <catch2/catch_amalgamated.hpp>

#include "isofactor/un1_factor.hpp"
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

// rank-one vertical translation v -> v + i c <v,u> u on the standard null
// direction u = e0 + e1
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

// Heisenberg block [[1,beta,delta],[0,1,-conj beta],[0,0,1]] with the real
// part of delta forced by form-unitarity
Mat heisenberg_block(cplx beta, double im_delta) {
    Mat b = Mat::identity(3);
    b(0, 1) = beta;
    b(0, 2) = cplx(-std::norm(beta) / 2.0, im_delta);
    b(1, 2) = -std::conj(beta);
    return b;
}

struct SplitChecks {
    int involutions = 0;
    int reflections = 0;
};

// independent verification: every factor is form-unitary, involutions square
// to the identity and pass the Hermitian witness, reflection factors carry
// the advertised (k, lambda), and the accumulated product reproduces t
SplitChecks check_split(const HermitianSpace& sp, const Factorization& f,
                        const Mat& t, int max_involutions, int expect_k) {
    SplitChecks out;
    REQUIRE(std::abs(std::abs(f.lift_scalar) - 1.0) < 1e-12);
    Mat prod = f.lift_scalar * Mat::identity(sp.dim());
    for (const auto& fac : f.factors) {
        prod = prod * fac.matrix;
        REQUIRE(is_form_unitary(sp, fac.matrix, 1e-8));
        if (fac.tag == FactorTag::involution) {
            ++out.involutions;
            const double scale =
                std::max(1.0, fac.matrix.frob_norm() * fac.matrix.frob_norm());
            CHECK(dist_to_identity(fac.matrix * fac.matrix) < 1e-8 * scale);
            CHECK(std::abs(fac.det.imag()) < 1e-12);
            CHECK(std::abs(std::abs(fac.det) - 1.0) < 1e-12);
            CHECK(hermitian_witness(sp, fac.matrix, tols).ok);
        } else if (fac.tag == FactorTag::k_reflection) {
            ++out.reflections;
            CHECK(fac.k == expect_k);
            CHECK(std::abs(std::abs(fac.lambda) - 1.0) < 1e-12);
            if (dist_to_identity(fac.matrix) > 1e-6) {
                const ReflectionInfo ri = reflection_kind(sp, fac.matrix, tols);
                CHECK(ri.is_reflection);
                CHECK(ri.k == expect_k);
                CHECK(std::abs(ri.lambda - fac.lambda) < 1e-8);
            }
        }
    }
    CHECK(out.involutions <= max_involutions);
    CHECK(rel_dist(prod, t) < 1e-8);
    CHECK(f.residual < 1e-8);
    return out;
}

} // namespace

TEST_CASE("hermitian witness certifies involutions") {
    HermitianSpace sp{2};
    RngStream rng(101, "test/witness");
    for (int trial = 0; trial < 20; ++trial) {
        const Mat c = conjugator(sp, rng);
        const Mat cinv = form_inverse(sp, c);
        const Mat inv = c * Mat::diagonal({1.0, -1.0, 1.0}) * cinv;
        const HermitianWitness w = hermitian_witness(sp, inv, tols);
        CHECK(w.ok);
        CHECK(w.defect < 1e-10);

        const Mat rot = c * Mat::diagonal({1.0, std::exp(0.7i), 1.0}) * cinv;
        const HermitianWitness wr = hermitian_witness(sp, rot, tols);
        CHECK_FALSE(wr.ok);
        CHECK(wr.defect > 1e-3);

        Mat fuzz = inv;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) fuzz(i, j) += 1e-4 * rng.gaussian();
        CHECK(hermitian_witness(sp, fuzz, tols).defect > 1e-6);
    }
    CHECK(hermitian_witness(sp, Mat::identity(3), tols).ok);
    CHECK(hermitian_witness(sp, sp.form(), tols).ok);
    CHECK_THROWS_AS(hermitian_witness(sp, Mat::identity(2), tols), DomainError);
}

TEST_CASE("strongly reversible split") {
    SECTION("J splits as itself times the identity") {
        HermitianSpace sp{2};
        const Factorization f = strongly_reversible_split_un1(sp, sp.form(), tols);
        REQUIRE(f.factors.size() == 2);
        CHECK(rel_dist(f.factors[0].matrix, sp.form()) < 1e-10);
        CHECK(dist_to_identity(f.factors[1].matrix) < 1e-10);
        CHECK(f.residual < 1e-12);
    }
    SECTION("real boost on the null plane") {
        HermitianSpace sp{1};
        const Mat b = from_cols({null_u(2), null_v(2)});
        const Mat t = b * Mat::diagonal({2.0, 0.5}) * inverse(b);
        const Factorization f = strongly_reversible_split_un1(sp, t, tols);
        REQUIRE(f.factors.size() == 2);
        const Mat& tau = f.factors[0].matrix;
        const Mat& sigma = f.factors[1].matrix;
        CHECK(dist_to_identity(tau * tau) < 1e-10 * tau.frob_norm() * tau.frob_norm());
        CHECK(dist_to_identity(sigma * sigma) < 1e-10);
        CHECK(rel_dist(tau * sigma, t) < 1e-12);
        // sigma conjugates t to its inverse
        CHECK(rel_dist(sigma * t * sigma, form_inverse(sp, t)) < 1e-10);
    }
    SECTION("conjugate unit pairs with fixed points") {
        HermitianSpace sp{3};
        RngStream rng(103, "test/srs-unit");
        const Mat c = conjugator(sp, rng);
        const Mat d = Mat::diagonal({1.0, std::exp(1.3i), std::exp(-1.3i), -1.0});
        const Mat t = c * d * form_inverse(sp, c);
        const Factorization f = strongly_reversible_split_un1(sp, t, tols);
        REQUIRE(f.factors.size() == 2);
        const Mat& sigma = f.factors[1].matrix;
        CHECK(rel_dist(sigma * t * sigma, form_inverse(sp, t)) < 1e-9);
        check_split(sp, f, t, 2, -1);
    }
    SECTION("boost and rotation together") {
        HermitianSpace sp{3};
        RngStream rng(107, "test/srs-mixed");
        const Mat b = from_cols({null_u(4), null_v(4), unit_e(4, 2), unit_e(4, 3)});
        const Mat d = Mat::diagonal({3.0, 1.0 / 3.0, std::exp(0.8i), std::exp(-0.8i)});
        Mat t = b * d * inverse(b);
        const Mat c = conjugator(sp, rng);
        t = c * t * form_inverse(sp, c);
        REQUIRE(is_form_unitary(sp, t, 1e-9));
        const Factorization f = strongly_reversible_split_un1(sp, t, tols);
        check_split(sp, f, t, 2, -1);
        const Mat& sigma = f.factors[1].matrix;
        CHECK(rel_dist(sigma * t * sigma, form_inverse(sp, t)) < 1e-8);
    }
    SECTION("refusals") {
        HermitianSpace sp{2};
        // central with non-real scalar: nothing inverts the spectrum
        CHECK_THROWS_AS(
            strongly_reversible_split_un1(sp, std::exp(0.9i) * Mat::identity(3), tols),
            DomainError);
        // non-real eigenvalue on the time-like line
        CHECK_THROWS_AS(
            strongly_reversible_split_un1(
                sp, Mat::diagonal({std::exp(0.9i), std::exp(-0.9i), 1.0}), tols),
            DomainError);
        // non-real modulus pair
        HermitianSpace sp1{1};
        const Mat b = from_cols({null_u(2), null_v(2)});
        const Mat t =
            b * Mat::diagonal({2.0 * std::exp(0.7i), 0.5 * std::exp(0.7i)}) * inverse(b);
        CHECK_THROWS_AS(strongly_reversible_split_un1(sp1, t, tols), DomainError);
        // defective input
        CHECK_THROWS_AS(strongly_reversible_split_un1(sp1, vertical_t(sp1, 0.9), tols),
                        DomainError);
    }
}

TEST_CASE("elliptic factorization") {
    SECTION("rotation alone stays a single reflection") {
        HermitianSpace sp{2};
        const cplx l = std::exp(1.9i);
        const Mat t = Mat::diagonal({l, 1.0, 1.0});
        const Factorization f = factor_elliptic(sp, t, tols);
        REQUIRE(f.factors.size() == 1);
        CHECK(f.factors[0].tag == FactorTag::k_reflection);
        CHECK(f.factors[0].k == 0);
        CHECK(std::abs(f.factors[0].lambda - l) < 1e-12);
        CHECK(std::abs(f.lift_scalar - 1.0) < 1e-12);
        check_split(sp, f, t, 0, 0);
    }
    SECTION("general spectra") {
        const double phases[7] = {0.3, 1.1, 1.9, 2.7, 3.6, 4.4, 5.2};
        for (int n : {1, 2, 3, 4, 6}) {
            HermitianSpace sp{n};
            RngStream rng(109 + n, "test/elliptic-n");
            Vec d(n + 1);
            for (int i = 0; i <= n; ++i)
                d[i] = std::exp(cplx(0.0, phases[i] + 0.03 * rng.uniform()));
            const Mat c = conjugator(sp, rng);
            const Mat t = c * Mat::diagonal(d) * form_inverse(sp, c);
            const Factorization f = factor_elliptic(sp, t, tols);
            REQUIRE(f.factors[0].tag == FactorTag::k_reflection);
            const SplitChecks sc = check_split(sp, f, t, 4, 0);
            CHECK(sc.reflections == 1);
        }
    }
    SECTION("repeated eigenvalue spanning the time-like direction") {
        HermitianSpace sp{3};
        RngStream rng(127, "test/elliptic-rep");
        const cplx l = std::exp(0.6i);
        const cplx m = std::exp(2.4i);
        const Mat c = conjugator(sp, rng);
        const Mat t = c * Mat::diagonal({l, l, m, m}) * form_inverse(sp, c);
        const Factorization f = factor_elliptic(sp, t, tols);
        const SplitChecks sc = check_split(sp, f, t, 4, 0);
        CHECK(sc.reflections == 1);
        CHECK(std::abs(f.factors[0].lambda - l * std::conj(f.lift_scalar)) < 1e-9);
    }
    SECTION("rejects other classes") {
        HermitianSpace sp{1};
        const Mat b = from_cols({null_u(2), null_v(2)});
        const Mat t = b * Mat::diagonal({2.0, 0.5}) * inverse(b);
        CHECK_THROWS_AS(factor_elliptic(sp, t, tols), DomainError);
    }
}

TEST_CASE("hyperbolic factorization") {
    SECTION("plain boost in the smallest space") {
        HermitianSpace sp{1};
        const Mat b = from_cols({null_u(2), null_v(2)});
        const Mat t = b * Mat::diagonal({2.0, 0.5}) * inverse(b);
        const Factorization f = factor_hyperbolic(sp, t, tols);
        CHECK(f.extended_range);
        const SplitChecks sc = check_split(sp, f, t, 4, 1);
        CHECK(sc.reflections == 1);
        // the reflection is trivial for a real boost
        CHECK(dist_to_identity(f.factors[0].matrix) < 1e-9);
    }
    SECTION("phase pair over an identity complement") {
        HermitianSpace sp{3};
        RngStream rng(131, "test/hyp-phase");
        const double theta = std::acos(-1.0) / 5.0;
        const cplx big = 2.0 * std::exp(cplx(0.0, theta));
        const cplx small = 0.5 * std::exp(cplx(0.0, theta));
        const Mat b = from_cols({null_u(4), null_v(4), unit_e(4, 2), unit_e(4, 3)});
        Mat t = b * Mat::diagonal({big, small, 1.0, 1.0}) * inverse(b);
        const Mat c = conjugator(sp, rng);
        t = c * t * form_inverse(sp, c);
        const Factorization f = factor_hyperbolic(sp, t, tols);
        REQUIRE(f.factors[0].tag == FactorTag::k_reflection);
        CHECK(std::abs(f.factors[0].lambda - std::exp(cplx(0.0, theta))) < 1e-9);
        CHECK(std::abs(f.lift_scalar - 1.0) < 1e-9);
        check_split(sp, f, t, 4, 1);
        CHECK_FALSE(f.extended_range);
    }
    SECTION("n=2 needs the extended range") {
        HermitianSpace sp{2};
        RngStream rng(137, "test/hyp-n2");
        const double theta = 0.9, psi = 2.1;
        const Mat b = from_cols({null_u(3), null_v(3), unit_e(3, 2)});
        Mat t = b *
                Mat::diagonal({3.1 * std::exp(cplx(0.0, theta)),
                               std::exp(cplx(0.0, theta)) / 3.1,
                               std::exp(cplx(0.0, psi))}) *
                inverse(b);
        const Mat c = conjugator(sp, rng);
        t = c * t * form_inverse(sp, c);
        const Factorization f = factor_hyperbolic(sp, t, tols);
        CHECK(f.extended_range);
        CHECK(std::abs(f.lift_scalar - std::exp(cplx(0.0, psi))) < 1e-9);
        CHECK(std::abs(f.factors[0].lambda - std::exp(cplx(0.0, theta - psi))) < 1e-9);
        check_split(sp, f, t, 4, 1);
    }
    SECTION("random sweep") {
        for (int n : {2, 3, 4}) {
            HermitianSpace sp{n};
            RngStream rng(139 + n, "test/hyp-sweep");
            for (int trial = 0; trial < 5; ++trial) {
                const int dim = n + 1;
                const double r = 1.3 + rng.uniform(0.0, 1.7);
                const double theta = rng.uniform(0.0, 6.28);
                Vec d(dim);
                d[0] = r * std::exp(cplx(0.0, theta));
                d[1] = std::exp(cplx(0.0, theta)) / r;
                std::vector<Vec> cols = {null_u(dim), null_v(dim)};
                for (int i = 2; i < dim; ++i) {
                    d[i] = std::exp(cplx(0.0, 0.4 + 1.1 * i + 0.05 * rng.uniform()));
                    cols.push_back(unit_e(dim, i));
                }
                const Mat b = from_cols(cols);
                Mat t = b * Mat::diagonal(d) * inverse(b);
                const Mat c = conjugator(sp, rng);
                t = c * t * form_inverse(sp, c);
                const Factorization f = factor_hyperbolic(sp, t, tols);
                const SplitChecks sc = check_split(sp, f, t, 4, 1);
                CHECK(sc.reflections == 1);
            }
        }
    }
}

TEST_CASE("translation factorizations") {
    SECTION("identity comes back empty") {
        HermitianSpace sp{2};
        const Factorization f = factor_translation(sp, Mat::identity(3), tols);
        CHECK(f.factors.empty());
        CHECK(f.residual < 1e-15);
    }
    SECTION("vertical translations use four involutions") {
        HermitianSpace sp{2};
        RngStream rng(149, "test/vertical");
        for (double c : {0.9, -1.3}) {
            Mat t = vertical_t(sp, c);
            const Mat g = conjugator(sp, rng);
            t = g * t * form_inverse(sp, g);
            const Factorization f = factor_translation(sp, t, tols);
            REQUIRE(f.factors.size() == 4);
            const SplitChecks sc = check_split(sp, f, t, 4, -1);
            CHECK(sc.reflections == 0);
        }
    }
    SECTION("vertical in the smallest space") {
        HermitianSpace sp{1};
        const Mat t = vertical_t(sp, 0.7);
        const Factorization f = factor_translation(sp, t, tols);
        CHECK(f.extended_range);
        REQUIRE(f.factors.size() == 4);
        check_split(sp, f, t, 4, -1);
    }
    SECTION("non-vertical translations use two involutions") {
        HermitianSpace sp{2};
        RngStream rng(151, "test/nonvertical");
        const Mat b = from_cols({null_u(3), unit_e(3, 2), null_v(3)});
        Mat t = b * heisenberg_block(1.1 + 0.4i, 0.7) * inverse(b);
        const Mat g = conjugator(sp, rng);
        t = g * t * form_inverse(sp, g);
        REQUIRE(is_form_unitary(sp, t, 1e-9));
        const Factorization f = factor_translation(sp, t, tols);
        REQUIRE(f.factors.size() == 2);
        const SplitChecks sc = check_split(sp, f, t, 2, -1);
        CHECK(sc.reflections == 0);
        CHECK_FALSE(f.extended_range);
    }
    SECTION("non-vertical with an identity complement") {
        HermitianSpace sp{3};
        RngStream rng(157, "test/nonvertical-w");
        const Mat b =
            from_cols({null_u(4), unit_e(4, 2), null_v(4), unit_e(4, 3)});
        Mat t = b * block_diag(heisenberg_block(0.8 - 0.3i, -0.5), Mat::identity(1)) *
                inverse(b);
        const Mat g = conjugator(sp, rng);
        t = g * t * form_inverse(sp, g);
        const Factorization f = factor_translation(sp, t, tols);
        REQUIRE(f.factors.size() == 2);
        check_split(sp, f, t, 2, -1);
    }
    SECTION("rejects non-translations") {
        HermitianSpace sp{2};
        CHECK_THROWS_AS(factor_translation(sp, Mat::diagonal({std::exp(0.4i), 1.0, 1.0}),
                                           tols),
                        DomainError);
    }
}

TEST_CASE("ellipto-translation factorization") {
    SECTION("frozen instance") {
        HermitianSpace sp{2};
        RngStream rng(163, "test/ellipto-tr");
        const cplx l = std::exp(0.9i);
        const Mat shear(2, 2, {1.0, 1.3i, 0.0, 1.0});
        const Mat b = from_cols({null_u(3), null_v(3), unit_e(3, 2)});
        Mat t = b * block_diag(l * shear, Mat::diagonal({std::exp(2.2i)})) * inverse(b);
        const Mat g = conjugator(sp, rng);
        t = g * t * form_inverse(sp, g);
        const Factorization f = factor_ellipto_translation(sp, t, tols);
        REQUIRE(f.factors.size() == 5);
        REQUIRE(f.factors[0].tag == FactorTag::k_reflection);
        // the complement eigenvalue e^{2.2i} is absorbed into the lift
        CHECK(std::abs(f.lift_scalar - std::exp(2.2i)) < 1e-8);
        CHECK(std::abs(f.factors[0].lambda - std::exp(cplx(0.0, 0.9 - 2.2))) < 1e-8);
        const SplitChecks sc = check_split(sp, f, t, 4, 1);
        CHECK(sc.reflections == 1);
    }
    SECTION("unit defective eigenvalue still lifts") {
        HermitianSpace sp{2};
        RngStream rng(167, "test/ellipto-tr-unit");
        const Mat shear(2, 2, {1.0, 0.8i, 0.0, 1.0});
        const Mat b = from_cols({null_u(3), null_v(3), unit_e(3, 2)});
        Mat t = b * block_diag(shear, Mat::diagonal({std::exp(1.1i)})) * inverse(b);
        const Mat g = conjugator(sp, rng);
        t = g * t * form_inverse(sp, g);
        const Classification cl = classify_isometry(sp, t, tols);
        REQUIRE(cl.cls == IsoClass::ellipto_translation);
        const Factorization f = factor_ellipto_translation(sp, t, tols);
        REQUIRE(f.factors.size() == 5);
        check_split(sp, f, t, 4, 1);
    }
    SECTION("smallest space") {
        HermitianSpace sp{1};
        const cplx l = std::exp(1.7i);
        const Mat shear(2, 2, {1.0, -0.6i, 0.0, 1.0});
        const Mat b = from_cols({null_u(2), null_v(2)});
        const Mat t = b * (l * shear) * inverse(b);
        const Factorization f = factor_ellipto_translation(sp, t, tols);
        CHECK(f.extended_range);
        REQUIRE(f.factors.size() == 5);
        CHECK(std::abs(f.factors[0].lambda - l) < 1e-9);
        check_split(sp, f, t, 4, 1);
    }
    SECTION("rejects plain translations") {
        HermitianSpace sp{2};
        CHECK_THROWS_AS(factor_ellipto_translation(sp, vertical_t(sp, 0.9), tols),
                        DomainError);
    }
}

TEST_CASE("ellipto-parabolic factorization") {
    SECTION("frozen n=3 instance") {
        HermitianSpace sp{3};
        RngStream rng(173, "test/ellipto-par");
        const cplx l = std::exp(1.7i);
        const Mat b =
            from_cols({null_u(4), unit_e(4, 2), null_v(4), unit_e(4, 3)});
        Mat t = b * block_diag(l * heisenberg_block(0.8, -0.4),
                               Mat::diagonal({std::exp(0.2i)})) *
                inverse(b);
        const Mat g = conjugator(sp, rng);
        t = g * t * form_inverse(sp, g);
        const Factorization f = factor_ellipto_parabolic(sp, t, tols);
        REQUIRE(f.factors.size() == 3);
        REQUIRE(f.factors[0].tag == FactorTag::k_reflection);
        CHECK(std::abs(f.lift_scalar - std::exp(0.2i)) < 1e-7);
        CHECK(std::abs(f.factors[0].lambda - std::exp(1.5i)) < 1e-7);
        const SplitChecks sc = check_split(sp, f, t, 4, 2);
        CHECK(sc.reflections == 1);
    }
    SECTION("active complement at n=4") {
        HermitianSpace sp{4};
        RngStream rng(179, "test/ellipto-par4");
        const cplx l = std::exp(2.6i);
        const Mat b = from_cols({null_u(5), unit_e(5, 2), null_v(5), unit_e(5, 3),
                                 unit_e(5, 4)});
        Mat t = b * block_diag(l * heisenberg_block(-0.5 + 0.9i, 0.6),
                               Mat::diagonal({std::exp(0.7i), std::exp(1.9i)})) *
                inverse(b);
        const Mat g = conjugator(sp, rng);
        t = g * t * form_inverse(sp, g);
        const Factorization f = factor_ellipto_parabolic(sp, t, tols);
        const SplitChecks sc = check_split(sp, f, t, 4, 2);
        CHECK(sc.reflections == 1);
    }
    SECTION("n=2 is refused") {
        HermitianSpace sp{2};
        const Mat b = from_cols({null_u(3), unit_e(3, 2), null_v(3)});
        const Mat t =
            b * (std::exp(1.2i) * heisenberg_block(0.9, 0.3)) * inverse(b);
        const Classification cl = classify_isometry(sp, t, tols);
        REQUIRE(cl.cls == IsoClass::ellipto_parabolic);
        CHECK_THROWS_AS(factor_ellipto_parabolic(sp, t, tols), DomainError);
        CHECK_THROWS_AS(decompose(sp, t, tols), DomainError);
    }
}

TEST_CASE("decompose dispatches on class") {
    SECTION("central inputs return only the lift") {
        HermitianSpace sp{2};
        const cplx l = std::exp(2.3i);
        const Factorization f = decompose(sp, l * Mat::identity(3), tols);
        CHECK(f.factors.empty());
        CHECK(std::abs(f.lift_scalar - l) < 1e-12);
        CHECK(f.residual < 1e-12);
    }
    SECTION("rejects non-isometries") {
        HermitianSpace sp{2};
        CHECK_THROWS_AS(decompose(sp, Mat::diagonal({2.0, 1.0, 1.0}), tols),
                        DomainError);
        CHECK_THROWS_AS(decompose(sp, Mat::identity(4), tols), DomainError);
    }
    SECTION("reflection kind and involution count per class") {
        RngStream rng(181, "test/dispatch");
        {
            HermitianSpace sp{3};
            const Mat g = conjugator(sp, rng);
            const Mat t = g *
                          Mat::diagonal({std::exp(0.5i), std::exp(1.4i),
                                         std::exp(2.8i), std::exp(4.0i)}) *
                          form_inverse(sp, g);
            const SplitChecks sc = check_split(sp, decompose(sp, t, tols), t, 4, 0);
            CHECK(sc.reflections == 1);
        }
        {
            HermitianSpace sp{2};
            const Mat b = from_cols({null_u(3), null_v(3), unit_e(3, 2)});
            const Mat t = b *
                          Mat::diagonal({2.0 * std::exp(0.4i),
                                         std::exp(0.4i) / 2.0, std::exp(1.9i)}) *
                          inverse(b);
            const SplitChecks sc = check_split(sp, decompose(sp, t, tols), t, 4, 1);
            CHECK(sc.reflections == 1);
        }
        {
            HermitianSpace sp{2};
            const Mat t = vertical_t(sp, 1.1);
            const SplitChecks sc = check_split(sp, decompose(sp, t, tols), t, 4, -1);
            CHECK(sc.involutions == 4);
            CHECK(sc.reflections == 0);
        }
        {
            HermitianSpace sp{2};
            const Mat b = from_cols({null_u(3), unit_e(3, 2), null_v(3)});
            const Mat t = b * heisenberg_block(0.7 + 0.2i, 0.4) * inverse(b);
            const SplitChecks sc = check_split(sp, decompose(sp, t, tols), t, 2, -1);
            CHECK(sc.involutions == 2);
        }
        {
            HermitianSpace sp{2};
            const Mat shear(2, 2, {1.0, 0.9i, 0.0, 1.0});
            const Mat b = from_cols({null_u(3), null_v(3), unit_e(3, 2)});
            const Mat t = b *
                          block_diag(std::exp(1.3i) * shear,
                                     Mat::diagonal({std::exp(2.9i)})) *
                          inverse(b);
            const SplitChecks sc = check_split(sp, decompose(sp, t, tols), t, 4, 1);
            CHECK(sc.involutions == 4);
            CHECK(sc.reflections == 1);
        }
        {
            HermitianSpace sp{3};
            const Mat b =
                from_cols({null_u(4), unit_e(4, 2), null_v(4), unit_e(4, 3)});
            const Mat t = b *
                          block_diag(std::exp(0.8i) * heisenberg_block(1.2, 0.5),
                                     Mat::diagonal({std::exp(2.4i)})) *
                          inverse(b);
            const SplitChecks sc = check_split(sp, decompose(sp, t, tols), t, 4, 2);
            CHECK(sc.reflections == 1);
        }
    }
    SECTION("random sweep across classes") {
        for (int n : {2, 3}) {
            HermitianSpace sp{n};
            const int dim = n + 1;
            RngStream rng(191 + n, "test/dispatch-sweep");
            for (int trial = 0; trial < 4; ++trial) {
                const Mat g = conjugator(sp, rng);
                const Mat ginv = form_inverse(sp, g);
                // elliptic
                {
                    Vec d(dim);
                    for (int i = 0; i < dim; ++i)
                        d[i] = std::exp(
                            cplx(0.0, 0.2 + 1.15 * i + 0.1 * rng.uniform()));
                    const Mat t = g * Mat::diagonal(d) * ginv;
                    check_split(sp, decompose(sp, t, tols), t, 4, 0);
                }
                // vertical translation
                {
                    const Mat t0 = vertical_t(sp, 0.4 + rng.uniform());
                    const Mat t = g * t0 * ginv;
                    check_split(sp, decompose(sp, t, tols), t, 4, -1);
                }
                // ellipto-translation
                {
                    const double s = 0.5 + rng.uniform();
                    const double phi = rng.uniform(0.3, 3.0);
                    const Mat shear(2, 2, {1.0, cplx(0.0, s), 0.0, 1.0});
                    std::vector<Vec> cols = {null_u(dim), null_v(dim)};
                    Vec d;
                    for (int i = 2; i < dim; ++i) {
                        cols.push_back(unit_e(dim, i));
                        d.push_back(std::exp(
                            cplx(0.0, phi + 1.2 + 0.9 * i + 0.1 * rng.uniform())));
                    }
                    const Mat b = from_cols(cols);
                    const Mat t0 = b *
                                   block_diag(std::exp(cplx(0.0, phi)) * shear,
                                              Mat::diagonal(d)) *
                                   inverse(b);
                    const Mat t = g * t0 * ginv;
                    check_split(sp, decompose(sp, t, tols), t, 4, 1);
                }
            }
        }
    }
}
