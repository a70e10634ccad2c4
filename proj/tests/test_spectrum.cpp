#include <catch2/catch_amalgamated.hpp>

#include "isofactor/hermitian_space.hpp"
#include "isofactor/spectrum.hpp"
#include "oracles.hpp"

using namespace isofactor;
using namespace std::complex_literals;

namespace {

const Tols tols{};

Mat jordan_block(int k, cplx lambda) {
    Mat j(k, k);
    for (int i = 0; i < k; ++i) {
        j(i, i) = lambda;
        if (i + 1 < k) j(i, i + 1) = 1.0;
    }
    return j;
}

} // namespace

TEST_CASE("eigen structure of a diagonal matrix") {
    const Mat d = Mat::diagonal({2.0, 1.0i, 1.0i, -3.0});
    const Spectrum sp = eigen_structure(d, tols);
    REQUIRE(sp.clusters.size() == 3);
    // phase order: 2 (phase 0), 2i (pi/2), -3 (pi)
    CHECK(std::abs(sp.clusters[0].lambda - 2.0) < 1e-12);
    CHECK(std::abs(sp.clusters[1].lambda - 1.0i) < 1e-12);
    CHECK(std::abs(sp.clusters[2].lambda + 3.0) < 1e-12);
    CHECK(sp.clusters[1].alg == 2);
    CHECK(sp.clusters[1].geo == 2);
    CHECK(sp.clusters[1].minexp == 1);
}

TEST_CASE("hyperbolic-style pair sorts by phase then modulus") {
    // equal phases, moduli r and 1/r: larger modulus first
    const cplx big = 3.0 * std::exp(0.7i), small = (1.0 / 3.0) * std::exp(0.7i);
    const Mat d = Mat::diagonal({small, big, 1.0});
    const Spectrum sp = eigen_structure(d, tols);
    REQUIRE(sp.clusters.size() == 3);
    CHECK(std::abs(sp.clusters[0].lambda - 1.0) < 1e-12);
    CHECK(std::abs(sp.clusters[1].lambda - big) < 1e-12);
    CHECK(std::abs(sp.clusters[2].lambda - small) < 1e-12);
}

TEST_CASE("jordan blocks: multiplicities, exponents, generalized spaces") {
    // J3(1) + two simple eigenvalues; conjugate to hide the structure
    Mat a = block_diag(jordan_block(3, 1.0), Mat::diagonal({1.0i, -1.0}));
    RngStream rng(51, "test/jordan");
    Mat g(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) g(i, j) = rng.complex_gaussian();
    Mat k = 0.5 * (g - g.adjoint());
    k *= cplx(0.8 / k.frob_norm());
    const Mat c = expm(k);
    a = c * a * c.adjoint(); // unitary conjugation keeps conditioning tame

    const Spectrum sp = eigen_structure(a, tols);
    REQUIRE(sp.clusters.size() == 3);
    const EigenCluster* j3 = nullptr;
    for (const auto& cl : sp.clusters)
        if (cl.alg == 3) j3 = &cl;
    REQUIRE(j3 != nullptr);
    CHECK(std::abs(j3->lambda - 1.0) < 1e-4); // Jordan splatter is O(eps^{1/3})
    CHECK(j3->geo == 1);
    CHECK(j3->minexp == 3);
    REQUIRE(j3->genvecs.cols() == 3);

    // the generalized eigenspace is invariant: A G stays inside span(G)
    const Mat ag = a * j3->genvecs;
    const Mat proj = j3->genvecs * j3->genvecs.adjoint(); // Euclid projector
    CHECK((ag - proj * ag).frob_norm() < 1e-8);

    // eigenvector residual
    const Vec v = col(j3->eigvecs, 0);
    const Vec av = a * v;
    double r = 0.0;
    for (int i = 0; i < 5; ++i) r = std::max(r, std::abs(av[i] - j3->lambda * v[i]));
    CHECK(r < 1e-8);
}

TEST_CASE("rank-one null rotation: minexp 2") {
    // T = I + i c u (conj(u)^t J) with u null: (T-I)^2 = 0 exactly
    HermitianSpace sp{2};
    const Vec u = {1.0, 1.0, 0.0};
    Mat t = Mat::identity(3);
    const Mat j = sp.form();
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) t(r, c) += 1.5i * u[r] * std::conj(u[c]) * j(c, c);
    REQUIRE(is_form_unitary(sp, t, 1e-12));
    const Spectrum s = eigen_structure(t, tols);
    REQUIRE(s.clusters.size() == 1);
    CHECK(s.clusters[0].alg == 3);
    CHECK(s.clusters[0].geo == 2);
    CHECK(s.clusters[0].minexp == 2);
    CHECK(minimal_poly_exponent(t, 1.0, tols) == 2);
}

TEST_CASE("minimal poly exponent rejects a non-eigenvalue") {
    const Mat d = Mat::diagonal({1.0, 2.0});
    CHECK_THROWS_AS(minimal_poly_exponent(d, 5.0, tols), DomainError);
}

TEST_CASE("cluster means agree with the root oracle on semisimple inputs") {
    RngStream rng(55, "test/spectral-oracle");
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(4));
        Mat a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = rng.complex_gaussian();
        const Spectrum s = eigen_structure(a, tols);
        std::vector<cplx> got;
        for (const auto& c : s.clusters)
            for (int m = 0; m < c.alg; ++m) got.push_back(c.lambda);
        CHECK(oracle::multiset_distance(got, oracle::eigenvalues(a)) < 1e-6);
    }
}

TEST_CASE("unitary log sample lands in the right groups") {
    HermitianSpace hs{3};
    RngStream r1(99, "sample"), r2(99, "sample");
    const Mat a = unitary_log_sample(hs.form(), r1);
    CHECK(is_form_unitary(hs, a, 1e-10));
    // determinism: same stream, same matrix
    const Mat b = unitary_log_sample(hs.form(), r2);
    CHECK((a - b).frob_norm() == 0.0);

    RngStream r3(7, "su");
    const Mat u = unitary_log_sample(Mat::identity(5), r3, 1.0, true);
    CHECK(dist_to_identity(u.adjoint() * u) < 1e-12);
    CHECK(std::abs(determinant(u) - 1.0) < 1e-12);
}
