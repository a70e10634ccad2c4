#pragma once

// Dense complex matrices and the small amount of direct linear algebra the
// rest of the library needs (LU with partial pivoting, determinants,
// inverses, least-norm utilities). Sizes here are tiny (dim <= 20 or so),
// so everything is eager and allocation-happy by design.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include "errors.hpp"

namespace isofactor {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;

class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int r, int c) : rows_(r), cols_(c), a_(static_cast<size_t>(r) * c) {
        assert(r >= 0 && c >= 0);
    }
    Mat(int r, int c, std::initializer_list<cplx> vals) : Mat(r, c) {
        assert(static_cast<int>(vals.size()) == r * c);
        std::copy(vals.begin(), vals.end(), a_.begin());
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static Mat zero(int r, int c) { return Mat(r, c); }
    static Mat diagonal(const Vec& d) {
        Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    cplx& operator()(int i, int j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return a_[static_cast<size_t>(i) * cols_ + j];
    }
    const cplx& operator()(int i, int j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return a_[static_cast<size_t>(i) * cols_ + j];
    }

    Mat operator+(const Mat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Mat r = *this;
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }
    Mat operator-(const Mat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Mat r = *this;
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }
    Mat operator-() const {
        Mat r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }
    Mat operator*(const Mat& o) const {
        assert(cols_ == o.rows_);
        Mat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const cplx aik = (*this)(i, k);
                if (aik == cplx(0.0)) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }
    Vec operator*(const Vec& v) const {
        assert(cols_ == static_cast<int>(v.size()));
        Vec r(rows_, cplx(0.0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    Mat& operator*=(cplx s) {
        for (auto& x : a_) x *= s;
        return *this;
    }

    Mat transpose() const {
        Mat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    Mat conjugate() const {
        Mat r = *this;
        for (auto& x : r.a_) x = std::conj(x);
        return r;
    }
    Mat adjoint() const { return conjugate().transpose(); }

    double frob_norm() const {
        double s = 0.0;
        for (const auto& x : a_) s += std::norm(x);
        return std::sqrt(s);
    }
    double max_abs() const {
        double m = 0.0;
        for (const auto& x : a_) m = std::max(m, std::abs(x));
        return m;
    }
    bool is_finite() const {
        for (const auto& x : a_)
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
        return true;
    }

    cplx trace() const {
        assert(rows_ == cols_);
        cplx t = 0.0;
        for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

  private:
    int rows_, cols_;
    std::vector<cplx> a_;
};

inline Mat operator*(cplx s, Mat m) {
    m *= s;
    return m;
}
inline Mat operator*(double s, Mat m) {
    m *= cplx(s);
    return m;
}

// --- vector helpers (Euclidean) ---

inline cplx dot(const Vec& a, const Vec& b) { // conj(a) . b
    assert(a.size() == b.size());
    cplx s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}
inline double norm2(const Vec& v) { return std::sqrt(std::abs(dot(v, v).real())); }
inline Vec operator*(cplx s, Vec v) {
    for (auto& x : v) x *= s;
    return v;
}
inline Vec operator+(Vec a, const Vec& b) {
    assert(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}
inline Vec operator-(Vec a, const Vec& b) {
    assert(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}
inline Vec conj_vec(Vec v) {
    for (auto& x : v) x = std::conj(x);
    return v;
}

inline Vec col(const Mat& m, int j) {
    Vec v(m.rows());
    for (int i = 0; i < m.rows(); ++i) v[i] = m(i, j);
    return v;
}
inline void set_col(Mat& m, int j, const Vec& v) {
    assert(static_cast<int>(v.size()) == m.rows());
    for (int i = 0; i < m.rows(); ++i) m(i, j) = v[i];
}
inline Mat from_cols(const std::vector<Vec>& cols) {
    if (cols.empty()) return Mat();
    Mat m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) set_col(m, static_cast<int>(j), cols[j]);
    return m;
}
inline Mat hcat(const Mat& a, const Mat& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    assert(a.rows() == b.rows());
    Mat m(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

// Block-diagonal embedding: diag(a, b).
inline Mat block_diag(const Mat& a, const Mat& b) {
    Mat m = Mat::zero(a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

// --- LU with partial pivoting ---

struct LuFactors {
    Mat lu;                // combined L (unit diagonal) and U
    std::vector<int> piv;  // row permutation
    int perm_sign = 1;
    bool singular = false;
};

inline LuFactors lu_factor(Mat a) {
    const int n = a.rows();
    assert(n == a.cols());
    LuFactors f;
    f.piv.resize(n);
    for (int i = 0; i < n; ++i) f.piv[i] = i;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > best) {
                best = std::abs(a(i, k));
                p = i;
            }
        if (best == 0.0) {
            f.singular = true;
            continue;
        }
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(f.piv[k], f.piv[p]);
            f.perm_sign = -f.perm_sign;
        }
        for (int i = k + 1; i < n; ++i) {
            a(i, k) /= a(k, k);
            const cplx lik = a(i, k);
            if (lik == cplx(0.0)) continue;
            for (int j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
        }
    }
    f.lu = std::move(a);
    return f;
}

inline Vec lu_solve(const LuFactors& f, const Vec& b) {
    const int n = f.lu.rows();
    if (f.singular) throw NumericalError("lu_solve: matrix is singular");
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = b[f.piv[i]];
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
        x[i] /= f.lu(i, i);
    }
    return x;
}

inline Mat lu_solve(const LuFactors& f, const Mat& b) {
    Mat x(b.rows(), b.cols());
    for (int j = 0; j < b.cols(); ++j) set_col(x, j, lu_solve(f, col(b, j)));
    return x;
}

inline Mat inverse(const Mat& a) {
    return lu_solve(lu_factor(a), Mat::identity(a.rows()));
}

inline cplx determinant(const Mat& a) {
    LuFactors f = lu_factor(a);
    if (f.singular) return 0.0;
    cplx d = static_cast<double>(f.perm_sign);
    for (int i = 0; i < a.rows(); ++i) d *= f.lu(i, i);
    return d;
}

// Relative distance ||a - b|| / max(1, ||b||).
inline double rel_dist(const Mat& a, const Mat& b) {
    return (a - b).frob_norm() / std::max(1.0, b.frob_norm());
}

inline double dist_to_identity(const Mat& a) {
    return (a - Mat::identity(a.rows())).frob_norm();
}

} // namespace isofactor
