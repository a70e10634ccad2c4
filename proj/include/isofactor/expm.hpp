#pragma once

// Matrix exponential: [7/7] Pade approximant with scaling and squaring.
// The argument is scaled to norm <= 0.5 before the rational evaluation,
// where the [7/7] truncation error is far below double roundoff.

#include <cmath>

#include "matrix.hpp"

namespace isofactor {

inline Mat expm(const Mat& a) {
    const int n = a.rows();
    if (n != a.cols()) throw DomainError("expm: matrix must be square");
    const double nrm = a.frob_norm();
    int squarings = 0;
    if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    const double scale = std::ldexp(1.0, -squarings);

    const Mat x = scale * a;
    const int q = 7;
    Mat num = Mat::identity(n), den = Mat::identity(n);
    Mat power = Mat::identity(n);
    double coef = 1.0;
    double sign = 1.0;
    for (int k = 1; k <= q; ++k) {
        coef *= static_cast<double>(q - k + 1) / (static_cast<double>(k) * (2 * q - k + 1));
        sign = -sign;
        power = power * x;
        num = num + coef * power;
        den = den + (sign * coef) * power;
    }
    Mat r = lu_solve(lu_factor(den), num);
    for (int i = 0; i < squarings; ++i) r = r * r;
    return r;
}

} // namespace isofactor
