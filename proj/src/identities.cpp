#include "rhf/identities.hpp"

#include <algorithm>
#include <cmath>

namespace rhf {

namespace {

struct Derived {
    Mat4 ric;
    double r;
    Mat4 sic;
    double s;
    Ten4 sm;
    Ten4 weyl;
    double gn2;  // |dphi|^2_g
};

Derived derive(const SyntheticInput& si) {
    Derived d;
    d.ric = ricci_from_rm(si.rm, si.g_inv);
    d.r = scalar_from_ricci(d.ric, si.g_inv);
    d.gn2 = grad_norm2(si.g_inv, si.dphi);
    d.sic = sic_tensor(d.ric, si.alpha, si.dphi);
    d.s = d.r - si.alpha * d.gn2;
    d.sm = sm_tensor(si.rm, si.alpha, si.dphi, si.g);
    d.weyl = weyl_tensor(si.rm, d.ric, d.r, si.g);
    return d;
}

double rel(double lhs, double rhs) { return std::abs(lhs - rhs) / (1.0 + std::abs(lhs)); }

// ---- extended-precision pipeline -------------------------------------------
//
// The quartic identities cancel terms that are orders of magnitude larger than
// the result, so the 1e-12 budget for check_lemma31 / check_sub_identities is
// not reachable with double accumulation at the pinned input ranges. Both
// sides are therefore derived and contracted in long double, starting from the
// exact double inputs (including the metric inverse, which must be consistent
// to better than double rounding for the identities to close).

using LD = long double;
using LVec = std::array<LD, 4>;
using LMat = std::array<std::array<LD, 4>, 4>;
using LTen4 = std::array<std::array<std::array<std::array<LD, 4>, 4>, 4>, 4>;

LMat ld_inverse(const Mat4& a) {
    LD aug[4][8];
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) aug[i][j] = a[i][j];
        for (int j = 0; j < 4; ++j) aug[i][4 + j] = (i == j) ? 1.0L : 0.0L;
    }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
        if (std::abs(aug[piv][col]) < 1e-300L)
            throw DegenerateMetricError("singular metric in identity check");
        if (piv != col)
            for (int j = 0; j < 8; ++j) std::swap(aug[piv][j], aug[col][j]);
        const LD d = aug[col][col];
        for (int j = 0; j < 8; ++j) aug[col][j] /= d;
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const LD f = aug[r][col];
            for (int j = 0; j < 8; ++j) aug[r][j] -= f * aug[col][j];
        }
    }
    LMat inv{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) inv[i][j] = aug[i][4 + j];
    return inv;
}

LTen4 ld_raise_all(const LTen4& t, const LMat& gi) {
    LTen4 a{}, b{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    LD s = 0;
                    for (int p = 0; p < 4; ++p) s += gi[i][p] * t[p][j][k][l];
                    a[i][j][k][l] = s;
                }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    LD s = 0;
                    for (int p = 0; p < 4; ++p) s += gi[j][p] * a[i][p][k][l];
                    b[i][j][k][l] = s;
                }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    LD s = 0;
                    for (int p = 0; p < 4; ++p) s += gi[k][p] * b[i][j][p][l];
                    a[i][j][k][l] = s;
                }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    LD s = 0;
                    for (int p = 0; p < 4; ++p) s += gi[l][p] * a[i][j][k][p];
                    b[i][j][k][l] = s;
                }
    return b;
}

LD ld_ten4_norm2(const LTen4& t, const LMat& gi) {
    const LTen4 tu = ld_raise_all(t, gi);
    LD s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) s += tu[i][j][k][l] * t[i][j][k][l];
    return s;
}

LD ld_mat_norm2(const LMat& t, const LMat& gi) {
    LD s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) s += t[i][j] * t[k][l] * gi[i][k] * gi[j][l];
    return s;
}

struct ScalarsLD {
    LD rm2, ric2, r, sm2, sic2, s, sic_pp, gn2;
};

ScalarsLD derive_ld(const SyntheticInput& si) {
    const LMat gi = ld_inverse(si.g);
    const LD a = si.alpha;

    LTen4 rm{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) rm[i][j][k][l] = si.rm[i][j][k][l];

    LMat ric{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            LD s = 0;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) s += gi[k][l] * rm[i][k][l][j];
            ric[i][j] = s;
        }
    LD r = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r += gi[i][j] * ric[i][j];

    LD gn2 = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) gn2 += gi[i][j] * LD(si.dphi[i]) * LD(si.dphi[j]);

    LMat sic = ric;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) sic[i][j] -= a * LD(si.dphi[i]) * LD(si.dphi[j]);

    LTen4 sm = rm;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    sm[i][j][k][l] -= 0.5L * a *
                                      (LD(si.g[j][l]) * si.dphi[i] * si.dphi[k] +
                                       LD(si.g[k][l]) * si.dphi[i] * si.dphi[j]);

    ScalarsLD out;
    out.rm2 = ld_ten4_norm2(rm, gi);
    out.ric2 = ld_mat_norm2(ric, gi);
    out.r = r;
    out.sm2 = ld_ten4_norm2(sm, gi);
    out.sic2 = ld_mat_norm2(sic, gi);
    out.s = r - a * gn2;
    out.gn2 = gn2;
    LD pp = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    pp += sic[i][j] * gi[i][k] * gi[j][l] * LD(si.dphi[k]) * LD(si.dphi[l]);
    out.sic_pp = pp;
    return out;
}

double rel_ld(LD lhs, LD rhs) {
    return double(std::abs(lhs - rhs) / (1.0L + std::abs(lhs)));
}

}  // namespace

double check_lemma31(const SyntheticInput& si) {
    const ScalarsLD d = derive_ld(si);
    const LD a = si.alpha;
    const int m = 4;
    const LD lhs = d.rm2 - 4.0L * d.ric2 + d.r * d.r;
    const LD rhs = d.sm2 - 4.0L * d.sic2 + d.s * d.s -
                   0.5L * (m + 9) * a * a * d.gn2 * d.gn2 - 9.0L * a * d.sic_pp +
                   2.0L * a * d.s * d.gn2;
    return rel_ld(lhs, rhs);
}

SubIdentityResiduals check_sub_identities(const SyntheticInput& si) {
    const ScalarsLD d = derive_ld(si);
    const LD a = si.alpha;
    const LD p4 = d.gn2 * d.gn2;
    const int m = 4;
    SubIdentityResiduals out;
    out.rm2 = rel_ld(d.rm2, d.sm2 - a * d.sic_pp - 0.5L * (m + 3) * a * a * p4);
    out.ric2 = rel_ld(d.ric2, d.sic2 + 2.0L * a * d.sic_pp + a * a * p4);
    out.r2 = rel_ld(d.r * d.r, d.s * d.s + a * a * p4 + 2.0L * a * d.s * d.gn2);
    return out;
}

double check_eq_2_15(const SyntheticInput& si, double C) {
    const Derived d = derive(si);
    const int m = 4;
    Mat4 sic_p = d.sic;  // Sic' = Sic + (C/m) g
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) sic_p[i][j] += (C / m) * si.g[i][j];
    const double s_p = d.s + C;
    const Ten4& w = d.weyl;
    const Mat4& g = si.g;
    const Vec4& p = si.dphi;
    const double a = si.alpha;
    const double gn2 = d.gn2;

    Ten4 route_b{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    const double gg = g[i][l] * g[j][k] - g[i][k] * g[j][l];
                    double v = w[i][j][k][l];
                    v += (sic_p[i][l] * g[j][k] + sic_p[j][k] * g[i][l] -
                          sic_p[i][k] * g[j][l] - sic_p[j][l] * g[i][k]) / (m - 2);
                    v -= s_p * gg / double((m - 2) * (m - 1));
                    v += C * gg / double(m * (m - 1) * (m - 2));
                    v -= C * (g[j][k] * g[i][l] - g[j][l] * g[i][k]) / double(m * (m - 2));
                    v += a * (g[j][k] * p[i] * p[l] + g[i][l] * p[j] * p[k] -
                              g[j][l] * p[i] * p[k] - g[i][k] * p[j] * p[l]) / (m - 2);
                    v -= a * gn2 * gg / double((m - 2) * (m - 1));
                    v -= 0.5 * a * (g[j][l] * p[i] * p[k] + g[k][l] * p[i] * p[j]);
                    route_b[i][j][k][l] = v;
                }

    double max_abs = 0, max_diff = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    max_abs = std::max(max_abs, std::abs(d.sm[i][j][k][l]));
                    max_diff = std::max(max_diff,
                                        std::abs(d.sm[i][j][k][l] - route_b[i][j][k][l]));
                }
    return max_diff / (1.0 + max_abs);
}

double check_eq_2_16(const SyntheticInput& si, double C) {
    const Derived d = derive(si);
    const int m = 4;
    Mat4 sic_p = d.sic;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) sic_p[i][j] += (C / m) * si.g[i][j];
    const double s_p = d.s + C;
    const double a = si.alpha;

    const double lhs = ten4_bilinear(d.sm, sic_p, si.g_inv);

    const double sicp2 = mat_dot(sic_p, sic_p, si.g_inv);
    const double sicp3 = mat_cubed_trace(sic_p, si.g_inv);
    const double w_bb = ten4_bilinear(d.weyl, sic_p, si.g_inv);
    // <S' Sic' - (m/2) Sic'^2, dphi x dphi>
    const Mat4 sic_up = raise_one(sic_p, si.g_inv);
    Mat4 sic_sq{};  // (Sic'^2)_ij = Sic'_ik Sic'_j^k
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int k = 0; k < 4; ++k) s += sic_p[i][k] * sic_up[j][k];
            sic_sq[i][j] = s;
        }
    Mat4 combo{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            combo[i][j] = s_p * sic_p[i][j] - 0.5 * m * sic_sq[i][j];
    const double combo_pp = vec_bilinear(combo, si.dphi, si.g_inv);

    const double rhs =
        ((2.0 * m - 1.0) / (m - 1.0) * s_p * sicp2 - 2.0 * sicp3 -
         s_p * s_p * s_p / (m - 1.0)) / (m - 2.0) +
        w_bb -
        (C / m + a * d.gn2 / (m - 2.0)) * (s_p * s_p - sicp2) / (m - 1.0) +
        2.0 * a / (m - 2.0) * combo_pp;

    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

double check_trace_identities(const SyntheticInput& si) {
    const Derived d = derive(si);
    const double a = si.alpha;
    double worst = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double t23 = 0, t34 = 0, t24 = 0;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    t23 += si.g_inv[k][l] * d.sm[i][k][l][j];
                    t34 += si.g_inv[k][l] * d.sm[i][j][k][l];
                    t24 += si.g_inv[k][l] * d.sm[i][k][j][l];
                }
            worst = std::max(worst, rel(t23, d.sic[i][j]));
            worst = std::max(worst, rel(t34, -2.5 * a * si.dphi[i] * si.dphi[j]));
            worst = std::max(worst, rel(t24, -d.sic[i][j] - 3.5 * a * si.dphi[i] * si.dphi[j]));
        }
    return worst;
}

std::vector<IdentityReportRow> run_identity_batch(std::uint64_t seed0, std::uint64_t n) {
    double l31 = 0, sub = 0, e215 = 0, e216 = 0, tr = 0;
    const double cs[] = {0.0, 1.0, 7.3};
    for (std::uint64_t s = 0; s < n; ++s) {
        const SyntheticInput si = make_synthetic(seed0 + s);
        l31 = std::max(l31, check_lemma31(si));
        sub = std::max(sub, check_sub_identities(si).max());
        tr = std::max(tr, check_trace_identities(si));
        for (double c : cs) {
            e215 = std::max(e215, check_eq_2_15(si, c));
            e216 = std::max(e216, check_eq_2_16(si, c));
        }
    }
    return {
        {"lemma_3_11", n, l31},
        {"sub_identities", n, sub},
        {"trace_chain", n, tr},
        {"weyl_decomposition_2_15", n, e215},
        {"contraction_expansion_2_16", n, e216},
    };
}

}  // namespace rhf
