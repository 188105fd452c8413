#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rhf {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;
using Ten3 = std::array<std::array<std::array<double, 4>, 4>, 4>;
using Ten4 = std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4>;

struct DegenerateMetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr Mat4 kIdentity4 = {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};

inline Mat4 zero_mat4() { return Mat4{}; }

inline Mat4 mat_mul(const Mat4& a, const Mat4& b) {
    Mat4 c{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const double aik = a[i][k];
            for (int j = 0; j < 4; ++j) c[i][j] += aik * b[k][j];
        }
    return c;
}

inline double mat_norm1(const Mat4& a) {
    double best = 0;
    for (int j = 0; j < 4; ++j) {
        double col = 0;
        for (int i = 0; i < 4; ++i) col += std::abs(a[i][j]);
        best = std::max(best, col);
    }
    return best;
}

inline double mat_max_abs(const Mat4& a) {
    double v = 0;
    for (auto& row : a)
        for (double x : row) v = std::max(v, std::abs(x));
    return v;
}

// Gaussian elimination with partial pivoting; throws on near-singular input.
inline Mat4 mat_inverse(const Mat4& a, double cond_limit = 1e12) {
    double aug[4][8];
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) aug[i][j] = a[i][j];
        for (int j = 0; j < 4; ++j) aug[i][4 + j] = (i == j) ? 1.0 : 0.0;
    }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
        if (std::abs(aug[piv][col]) < 1e-300)
            throw DegenerateMetricError("singular 4x4 matrix in inversion");
        if (piv != col)
            for (int j = 0; j < 8; ++j) std::swap(aug[piv][j], aug[col][j]);
        const double d = aug[col][col];
        for (int j = 0; j < 8; ++j) aug[col][j] /= d;
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = aug[r][col];
            if (f == 0.0) continue;
            for (int j = 0; j < 8; ++j) aug[r][j] -= f * aug[col][j];
        }
    }
    Mat4 inv{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) inv[i][j] = aug[i][4 + j];
    const double cond = mat_norm1(a) * mat_norm1(inv);
    if (!(cond < cond_limit))
        throw DegenerateMetricError("metric condition number " + std::to_string(cond) +
                                    " exceeds limit");
    return inv;
}

inline double mat_det(const Mat4& a) {
    // LU without pivot scaling issues is fine at 4x4 with a pivot search
    double m[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = a[i][j];
    double det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (m[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            for (int j = 0; j < 4; ++j) std::swap(m[piv][j], m[col][j]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < 4; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int j = col; j < 4; ++j) m[r][j] -= f * m[col][j];
        }
    }
    return det;
}

// Cholesky-based SPD test (assumes symmetric input).
inline bool is_spd(const Mat4& a) {
    double l[4][4] = {};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a[i][j];
            for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                if (s <= 0.0 || !std::isfinite(s)) return false;
                l[i][i] = std::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    return true;
}

inline bool is_symmetric(const Mat4& a, double tol = 1e-12) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(a[i][j] - a[j][i]) > tol * (1.0 + std::abs(a[i][j]))) return false;
    return true;
}

}  // namespace rhf
