#pragma once

// Eigenstructure with clustering. Raw Schur eigenvalues of a matrix with a
// Jordan block of size k scatter like eps^(1/k) around the true value, so
// downstream code never consumes raw eigenvalues: it consumes clusters.
// Clustering is single-linkage with radius tols.cluster * max(1, ||A||_F).
// Per cluster we report the mean representative, algebraic and geometric
// multiplicities, an orthonormal eigenbasis, the generalized eigenspace,
// and the local minimal-polynomial exponent (the smallest k with
// dim ker (A - lambda)^k equal to the algebraic multiplicity).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "errors.hpp"
#include "expm.hpp"
#include "matrix.hpp"
#include "rng.hpp"
#include "schur.hpp"
#include "svd.hpp"
#include "tolerances.hpp"

namespace isofactor {

struct EigenCluster {
    cplx lambda;   // cluster mean
    int alg = 0;   // algebraic multiplicity
    int geo = 0;   // geometric multiplicity
    int minexp = 1; // local minimal polynomial exponent
    Mat eigvecs;   // dim x geo, Euclidean-orthonormal
    Mat genvecs;   // dim x alg, Euclidean-orthonormal basis of ker (A-l)^minexp
};

struct Spectrum {
    std::vector<EigenCluster> clusters; // sorted by phase of lambda in [0, 2pi)
    double scale = 1.0;                 // max(1, ||A||_F), the cluster metric
};

inline double phase_02pi(cplx z) {
    double p = std::arg(z);
    if (p < 0.0) p += 6.283185307179586476925286766559;
    if (p >= 6.283185307179586476925286766559 - 1e-9) p = 0.0; // fold the seam
    return p;
}

inline Spectrum eigen_structure(const Mat& a, const Tols& tols) {
    const int n = a.rows();
    if (n != a.cols()) throw DomainError("eigen_structure: matrix must be square");
    const std::vector<cplx> raw = eigenvalues(a);
    const double scale = std::max(1.0, a.frob_norm());
    const double radius = tols.cluster * scale;

    // single-linkage union-find on the raw eigenvalues
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(raw[i] - raw[j]) <= radius) parent[find(i)] = find(j);

    std::vector<std::vector<int>> groups;
    std::vector<int> root_of(n, -1);
    for (int i = 0; i < n; ++i) {
        const int r = find(i);
        if (root_of[r] < 0) {
            root_of[r] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[root_of[r]].push_back(i);
    }

    Spectrum sp;
    sp.scale = scale;
    for (const auto& g : groups) {
        EigenCluster c;
        cplx sum = 0.0;
        for (int idx : g) sum += raw[idx];
        c.lambda = sum / static_cast<double>(g.size());
        c.alg = static_cast<int>(g.size());

        Mat shifted = a;
        for (int i = 0; i < n; ++i) shifted(i, i) -= c.lambda;
        // Cluster members sit within the clustering radius of the mean, so
        // their directions give singular values below it, while everything
        // else is guaranteed to be further away. A relative rank threshold
        // would collapse on near-scalar input where `shifted` is rounding
        // noise. Cap by half the distance to the nearest outside eigenvalue
        // so an accidental merge cannot swallow a neighbour.
        std::vector<char> member(n, 0);
        for (int idx : g) member[idx] = 1;
        double outside = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i)
            if (!member[i]) outside = std::min(outside, std::abs(raw[i] - c.lambda));
        c.eigvecs = kernel_basis_below(shifted, std::min(radius, 0.5 * outside));
        if (c.eigvecs.cols() > c.alg) {
            // the pseudo-kernel of a defective neighbour (singular value
            // about distance^chain_length) can leak below the radius; the
            // geometric multiplicity never exceeds the algebraic one, and
            // the true directions carry the smallest singular values, which
            // sit in the trailing columns
            Mat trimmed(c.eigvecs.rows(), c.alg);
            for (int j = 0; j < c.alg; ++j)
                set_col(trimmed, j, col(c.eigvecs, c.eigvecs.cols() - c.alg + j));
            c.eigvecs = trimmed;
        }
        c.geo = c.eigvecs.cols();
        if (c.geo == 0)
            throw NumericalError("eigen_structure: cluster has no eigenvector; "
                                 "clustering radius is likely too small");

        if (c.geo == c.alg) {
            c.minexp = 1;
            c.genvecs = c.eigvecs;
        } else {
            const double step_scale = shifted.frob_norm();
            Mat power = shifted;
            int k = 1, nil = c.geo;
            Mat ker = c.eigvecs;
            while (nil < c.alg) {
                if (k >= n)
                    throw NumericalError("eigen_structure: generalized eigenspace "
                                         "never reached the algebraic multiplicity");
                power = power * shifted;
                ++k;
                // the kernel strictly grows until it fills the algebraic
                // multiplicity, so the admissible nullities form a window
                // and the cut only needs the widest gap inside it
                auto [now, basis] = kernel_basis_in_range(
                    power, nil + 1, c.alg, tols.rank,
                    std::pow(step_scale, k), "generalized eigenspace");
                nil = now;
                ker = std::move(basis);
            }
            c.minexp = k;
            c.genvecs = ker;
        }
        sp.clusters.push_back(std::move(c));
    }

    int total = 0;
    for (const auto& c : sp.clusters) total += c.alg;
    if (total != n) throw NumericalError("eigen_structure: multiplicities do not sum");

    std::stable_sort(sp.clusters.begin(), sp.clusters.end(),
                     [](const EigenCluster& x, const EigenCluster& y) {
                         const double px = phase_02pi(x.lambda), py = phase_02pi(y.lambda);
                         // equal-phase pairs (moduli r and 1/r): larger first
                         if (std::abs(px - py) <= 1e-9)
                             return std::abs(x.lambda) > std::abs(y.lambda);
                         return px < py;
                     });
    return sp;
}

// Smallest k with ker (A - lambda)^k of full algebraic dimension, for the
// cluster containing lambda.
inline int minimal_poly_exponent(const Mat& a, cplx lambda, const Tols& tols) {
    const Spectrum sp = eigen_structure(a, tols);
    for (const auto& c : sp.clusters)
        if (std::abs(c.lambda - lambda) <= 2.0 * tols.cluster * sp.scale) return c.minexp;
    throw DomainError("minimal_poly_exponent: lambda is not an eigenvalue");
}

inline bool is_semisimple(const Spectrum& sp) {
    for (const auto& c : sp.clusters)
        if (c.geo != c.alg) return false;
    return true;
}

// Seeded sample of the unitary group of the form: exp(J K) with K
// anti-Hermitian, ||K||_F <= scale. M = J K satisfies M^* J + J M = 0, so
// the exponential preserves the form. With J = I this samples U(n); pass
// zero_trace to land in SU(n).
inline Mat unitary_log_sample(const Mat& j, RngStream& rng, double scale = 1.0,
                              bool zero_trace = false) {
    const int n = j.rows();
    Mat g(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) g(r, c) = rng.complex_gaussian();
    Mat k = 0.5 * (g - g.adjoint());
    if (zero_trace) {
        const cplx t = k.trace() / static_cast<double>(n);
        for (int i = 0; i < n; ++i) k(i, i) -= t;
    }
    const double nrm = k.frob_norm();
    if (nrm > scale) k *= cplx(scale / nrm);
    return expm(j * k);
}

} // namespace isofactor
