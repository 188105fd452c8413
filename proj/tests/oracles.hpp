#pragma once

// Test-only oracles, kept independent of the library's contraction helpers:
// raw index-loop contractions, analytic conformal-metric jets, and a
// separately coded Ricci formula. Nothing in here calls into the routines it
// is used to check.

#include <cmath>

#include "rhf/synthetic.hpp"
#include "rhf/tensor.hpp"

namespace oracle {

using rhf::Mat4;
using rhf::Ten3;
using rhf::Ten4;
using rhf::Vec4;

// ---- brute-force contractions (independent of rhf::raise_all et al.) ----

inline double ten4_norm2(const Ten4& t, const Mat4& gi) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    for (int a = 0; a < 4; ++a)
                        for (int b = 0; b < 4; ++b)
                            for (int c = 0; c < 4; ++c)
                                for (int d = 0; d < 4; ++d)
                                    s += t[i][j][k][l] * t[a][b][c][d] * gi[i][a] *
                                         gi[j][b] * gi[k][c] * gi[l][d];
    return s;
}

inline double mat_norm2(const Mat4& t, const Mat4& gi) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    s += t[i][j] * t[a][b] * gi[i][a] * gi[j][b];
    return s;
}

inline double bilinear_vec(const Mat4& t, const Vec4& v, const Mat4& gi) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) s += t[i][j] * gi[i][a] * gi[j][b] * v[a] * v[b];
    return s;
}

inline double ten4_bilinear_mat(const Ten4& t, const Mat4& m, const Mat4& gi) {
    // t_kijl m^kl m^ij
    double s = 0;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int l = 0; l < 4; ++l)
                    for (int a = 0; a < 4; ++a)
                        for (int b = 0; b < 4; ++b)
                            for (int c = 0; c < 4; ++c)
                                for (int d = 0; d < 4; ++d)
                                    s += t[k][i][j][l] * gi[k][a] * gi[l][b] * m[a][b] *
                                         gi[i][c] * gi[j][d] * m[c][d];
    return s;
}

// ---- quartic identity residual, long double, straight 8-index loops --------
//
// Completely self-contained recomputation of the Lemma-level quartic identity:
// its own Gaussian-elimination inverse, its own Ricci trace, no staged index
// raising. Extended precision is required because both sides cancel terms far
// larger than the result at the pinned input ranges.

inline double lemma31_residual_bruteforce(const rhf::SyntheticInput& si) {
    using LD = long double;
    LD gi[4][4];
    {
        LD aug[4][8];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 8; ++j)
                aug[i][j] = j < 4 ? LD(si.g[i][j]) : LD(i == j - 4 ? 1 : 0);
        for (int col = 0; col < 4; ++col) {
            int piv = col;
            for (int r = col + 1; r < 4; ++r)
                if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
            for (int j = 0; j < 8; ++j) std::swap(aug[piv][j], aug[col][j]);
            const LD d = aug[col][col];
            for (int j = 0; j < 8; ++j) aug[col][j] /= d;
            for (int r = 0; r < 4; ++r) {
                if (r == col) continue;
                const LD f = aug[r][col];
                for (int j = 0; j < 8; ++j) aug[r][j] -= f * aug[col][j];
            }
        }
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) gi[i][j] = aug[i][4 + j];
    }
    const LD a = si.alpha;
    LD rm[4][4][4][4], sm[4][4][4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    rm[i][j][k][l] = si.rm[i][j][k][l];
                    sm[i][j][k][l] = rm[i][j][k][l] -
                                     0.5L * a *
                                         (LD(si.g[j][l]) * si.dphi[i] * si.dphi[k] +
                                          LD(si.g[k][l]) * si.dphi[i] * si.dphi[j]);
                }
    LD ric[4][4], sic[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            LD s = 0;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) s += gi[k][l] * rm[i][k][l][j];
            ric[i][j] = s;
            sic[i][j] = s - a * LD(si.dphi[i]) * LD(si.dphi[j]);
        }
    LD r = 0, gn2 = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            r += gi[i][j] * ric[i][j];
            gn2 += gi[i][j] * LD(si.dphi[i]) * LD(si.dphi[j]);
        }
    const LD s_tw = r - a * gn2;

    LD rm2 = 0, sm2 = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    for (int p = 0; p < 4; ++p)
                        for (int q = 0; q < 4; ++q)
                            for (int u = 0; u < 4; ++u)
                                for (int v = 0; v < 4; ++v) {
                                    const LD w =
                                        gi[i][p] * gi[j][q] * gi[k][u] * gi[l][v];
                                    rm2 += rm[i][j][k][l] * rm[p][q][u][v] * w;
                                    sm2 += sm[i][j][k][l] * sm[p][q][u][v] * w;
                                }
    LD ric2 = 0, sic2 = 0, sic_pp = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int p = 0; p < 4; ++p)
                for (int q = 0; q < 4; ++q) {
                    ric2 += ric[i][j] * ric[p][q] * gi[i][p] * gi[j][q];
                    sic2 += sic[i][j] * sic[p][q] * gi[i][p] * gi[j][q];
                    sic_pp += sic[i][j] * gi[i][p] * gi[j][q] * LD(si.dphi[p]) *
                              LD(si.dphi[q]);
                }

    const LD lhs = rm2 - 4.0L * ric2 + r * r;
    const LD rhs = sm2 - 4.0L * sic2 + s_tw * s_tw - 6.5L * a * a * gn2 * gn2 -
                   9.0L * a * sic_pp + 2.0L * a * s_tw * gn2;
    return double(std::abs(lhs - rhs) / (1.0L + std::abs(lhs)));
}

// ---- analytic conformal metric g = exp(2 psi) delta on the flat 4-torus ----

struct ConformalProfile {
    double eps1 = 0.1, eps2 = 0.07, eps12 = 0.03;
    double psi(double x1, double x2) const {
        return eps1 * std::sin(x1) + eps2 * std::sin(2 * x2) +
               eps12 * std::sin(x1) * std::cos(x2);
    }
    double d1(double x1, double x2) const {
        return eps1 * std::cos(x1) + eps12 * std::cos(x1) * std::cos(x2);
    }
    double d2(double x1, double x2) const {
        return 2 * eps2 * std::cos(2 * x2) - eps12 * std::sin(x1) * std::sin(x2);
    }
    double d11(double x1, double x2) const {
        return -eps1 * std::sin(x1) - eps12 * std::sin(x1) * std::cos(x2);
    }
    double d12(double x1, double x2) const {
        return -eps12 * std::cos(x1) * std::sin(x2);
    }
    double d22(double x1, double x2) const {
        return -4 * eps2 * std::sin(2 * x2) - eps12 * std::sin(x1) * std::cos(x2);
    }
};

// Exact metric jets of exp(2 psi) delta at (x1, x2).
inline rhf::MetricPoint conformal_jets(const ConformalProfile& p, double x1, double x2) {
    Vec4 dpsi = {p.d1(x1, x2), p.d2(x1, x2), 0, 0};
    Mat4 d2psi{};
    d2psi[0][0] = p.d11(x1, x2);
    d2psi[0][1] = d2psi[1][0] = p.d12(x1, x2);
    d2psi[1][1] = p.d22(x1, x2);
    const double e = std::exp(2 * p.psi(x1, x2));
    Mat4 g{};
    Ten3 dg{};
    Ten4 d2g{};
    for (int i = 0; i < 4; ++i) {
        g[i][i] = e;
        for (int k = 0; k < 4; ++k) {
            dg[k][i][i] = 2 * dpsi[k] * e;
            for (int l = 0; l < 4; ++l)
                d2g[l][k][i][i] = (2 * d2psi[l][k] + 4 * dpsi[l] * dpsi[k]) * e;
        }
    }
    return rhf::MetricPoint::from_jets(g, dg, d2g);
}

// Scalar curvature of exp(2 psi) delta from the textbook conformal-change
// formula (m = 4): R = exp(-2 psi) (-6 lap0 psi - 6 |grad0 psi|^2).
inline double conformal_scalar_curvature(const ConformalProfile& p, double x1, double x2) {
    const double lap0 = p.d11(x1, x2) + p.d22(x1, x2);
    const double gn0 = p.d1(x1, x2) * p.d1(x1, x2) + p.d2(x1, x2) * p.d2(x1, x2);
    return std::exp(-2 * p.psi(x1, x2)) * (-6 * lap0 - 6 * gn0);
}

// Ricci directly from Christoffels, bypassing the full curvature tensor:
// Ric_jk = d_m Gamma^m_jk - d_j Gamma^m_mk + Gamma^m_ma Gamma^a_jk
//          - Gamma^m_ja Gamma^a_mk
inline Mat4 ricci_direct(const rhf::MetricPoint& mp) {
    const Ten3 gamma = rhf::christoffel(mp);
    const Ten4 dgamma = rhf::christoffel_partials(mp);
    Mat4 ric{};
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            double s = 0;
            for (int m = 0; m < 4; ++m) {
                s += dgamma[m][m][j][k] - dgamma[j][m][m][k];
                for (int a = 0; a < 4; ++a)
                    s += gamma[m][m][a] * gamma[a][j][k] - gamma[m][j][a] * gamma[a][m][k];
            }
            ric[j][k] = s;
        }
    return ric;
}

}  // namespace oracle
