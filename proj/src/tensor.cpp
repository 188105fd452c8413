#include "rhf/tensor.hpp"

namespace rhf {

MetricPoint MetricPoint::from_jets(const Mat4& g, const Ten3& dg, const Ten4& d2g) {
    MetricPoint mp;
    mp.g = g;
    mp.g_inv = mat_inverse(g);
    mp.dg = dg;
    mp.d2g = d2g;
    return mp;
}

Ten3 christoffel(const MetricPoint& mp) {
    Ten3 gamma{};
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0;
                for (int l = 0; l < 4; ++l)
                    s += mp.g_inv[k][l] *
                         (mp.dg[i][j][l] + mp.dg[j][i][l] - mp.dg[l][i][j]);
                gamma[k][i][j] = 0.5 * s;
            }
    return gamma;
}

Ten4 christoffel_partials(const MetricPoint& mp) {
    // d_p g^{kl} = -g^{ka} (d_p g_ab) g^{bl}
    Ten3 dginv{};
    for (int p = 0; p < 4; ++p)
        for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) {
                double s = 0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b)
                        s += mp.g_inv[k][a] * mp.dg[p][a][b] * mp.g_inv[b][l];
                dginv[p][k][l] = -s;
            }
    Ten4 dgamma{};
    for (int p = 0; p < 4; ++p)
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    double s = 0;
                    for (int l = 0; l < 4; ++l) {
                        s += dginv[p][k][l] *
                             (mp.dg[i][j][l] + mp.dg[j][i][l] - mp.dg[l][i][j]);
                        s += mp.g_inv[k][l] *
                             (mp.d2g[p][i][j][l] + mp.d2g[p][j][i][l] - mp.d2g[p][l][i][j]);
                    }
                    dgamma[p][k][i][j] = 0.5 * s;
                }
    return dgamma;
}

Ten4 riemann(const MetricPoint& mp) {
    const Ten3 gamma = christoffel(mp);
    const Ten4 dgamma = christoffel_partials(mp);
    Ten4 rm{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                // L^m_ijk = d_i Gamma^m_jk - d_j Gamma^m_ik
                //         + Gamma^m_ia Gamma^a_jk - Gamma^m_ja Gamma^a_ik
                double lm[4];
                for (int m = 0; m < 4; ++m) {
                    double s = dgamma[i][m][j][k] - dgamma[j][m][i][k];
                    for (int a = 0; a < 4; ++a)
                        s += gamma[m][i][a] * gamma[a][j][k] -
                             gamma[m][j][a] * gamma[a][i][k];
                    lm[m] = s;
                }
                for (int l = 0; l < 4; ++l) {
                    double s = 0;
                    for (int m = 0; m < 4; ++m) s += mp.g[l][m] * lm[m];
                    rm[i][j][k][l] = s;
                }
            }
    return rm;
}

Mat4 ricci_from_rm(const Ten4& rm, const Mat4& g_inv) {
    Mat4 ric{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) s += g_inv[k][l] * rm[i][k][l][j];
            ric[i][j] = s;
        }
    // symmetrize away rounding skew
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const double v = 0.5 * (ric[i][j] + ric[j][i]);
            ric[i][j] = ric[j][i] = v;
        }
    return ric;
}

double scalar_from_ricci(const Mat4& ric, const Mat4& g_inv) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += g_inv[i][j] * ric[i][j];
    return s;
}

Mat4 sic_tensor(const Mat4& ric, double alpha, const Vec4& dphi) {
    Mat4 sic = ric;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) sic[i][j] -= alpha * dphi[i] * dphi[j];
    return sic;
}

Ten4 sm_tensor(const Ten4& rm, double alpha, const Vec4& dphi, const Mat4& g) {
    Ten4 sm = rm;
    const double half_alpha = 0.5 * alpha;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    sm[i][j][k][l] -= half_alpha * (g[j][l] * dphi[i] * dphi[k] +
                                                    g[k][l] * dphi[i] * dphi[j]);
    return sm;
}

Ten4 weyl_tensor(const Ten4& rm, const Mat4& ric, double r_scalar, const Mat4& g, int m) {
    const double c1 = 1.0 / (m - 2);
    const double c2 = r_scalar / double((m - 1) * (m - 2));
    Ten4 w = rm;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    w[i][j][k][l] -= c1 * (ric[i][l] * g[j][k] + ric[j][k] * g[i][l] -
                                           ric[i][k] * g[j][l] - ric[j][l] * g[i][k]);
                    w[i][j][k][l] += c2 * (g[i][l] * g[j][k] - g[i][k] * g[j][l]);
                }
    return w;
}

HessianResult hessian_phi(const MetricPoint& mp, const PhiJet& pj) {
    const Ten3 gamma = christoffel(mp);
    HessianResult out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = pj.d2phi_coord[i][j];
            for (int k = 0; k < 4; ++k) s -= gamma[k][i][j] * pj.dphi[k];
            out.hess[i][j] = s;
        }
    out.lap = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out.lap += mp.g_inv[i][j] * out.hess[i][j];
    return out;
}

double grad_norm2(const Mat4& g_inv, const Vec4& dphi) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += g_inv[i][j] * dphi[i] * dphi[j];
    return s;
}

Mat4 sin_tracefree(const Mat4& sic, double s_scalar, const Mat4& g, int m) {
    Mat4 out = sic;
    const double c = s_scalar / m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] -= c * g[i][j];
    return out;
}

CurvatureBundle curvature_bundle(const MetricPoint& mp, const PhiJet& pj, double alpha) {
    CurvatureBundle b;
    b.gamma = christoffel(mp);
    b.rm = riemann(mp);
    b.ric = ricci_from_rm(b.rm, mp.g_inv);
    b.r_scalar = scalar_from_ricci(b.ric, mp.g_inv);
    b.weyl = weyl_tensor(b.rm, b.ric, b.r_scalar, mp.g);
    b.grad_norm2 = grad_norm2(mp.g_inv, pj.dphi);
    b.sic = sic_tensor(b.ric, alpha, pj.dphi);
    b.s_scalar = b.r_scalar - alpha * b.grad_norm2;
    b.sm = sm_tensor(b.rm, alpha, pj.dphi, mp.g);
    b.sin_tf = sin_tracefree(b.sic, b.s_scalar, mp.g);
    const HessianResult h = hessian_phi(mp, pj);
    b.hess_phi = h.hess;
    b.lap_phi = h.lap;
    return b;
}

Mat4 raise_one(const Mat4& t, const Mat4& g_inv) {
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int k = 0; k < 4; ++k) s += t[i][k] * g_inv[k][j];
            out[i][j] = s;
        }
    return out;
}

double mat_dot(const Mat4& a, const Mat4& b, const Mat4& g_inv) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    s += a[i][j] * b[k][l] * g_inv[i][k] * g_inv[j][l];
    return s;
}

double vec_bilinear(const Mat4& t, const Vec4& v, const Mat4& g_inv) {
    Vec4 vu{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) vu[i] += g_inv[i][j] * v[j];
    double s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += t[i][j] * vu[i] * vu[j];
    return s;
}

Ten4 raise_all(const Ten4& t, const Mat4& g_inv) {
    // raise one slot at a time
    Ten4 a{}, b{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0;
                    for (int p = 0; p < 4; ++p) s += g_inv[i][p] * t[p][j][k][l];
                    a[i][j][k][l] = s;
                }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0;
                    for (int p = 0; p < 4; ++p) s += g_inv[j][p] * a[i][p][k][l];
                    b[i][j][k][l] = s;
                }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0;
                    for (int p = 0; p < 4; ++p) s += g_inv[k][p] * b[i][j][p][l];
                    a[i][j][k][l] = s;
                }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0;
                    for (int p = 0; p < 4; ++p) s += g_inv[l][p] * a[i][j][k][p];
                    b[i][j][k][l] = s;
                }
    return b;
}

double ten4_dot(const Ten4& a, const Ten4& b, const Mat4& g_inv) {
    const Ten4 au = raise_all(a, g_inv);
    double s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) s += au[i][j][k][l] * b[i][j][k][l];
    return s;
}

double ten4_bilinear(const Ten4& t, const Mat4& a, const Mat4& g_inv) {
    // T(A, A) = T_kijl A^kl A^ij
    Mat4 au{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int p = 0; p < 4; ++p)
                for (int q = 0; q < 4; ++q) s += g_inv[i][p] * g_inv[j][q] * a[p][q];
            au[i][j] = s;
        }
    double s = 0;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int l = 0; l < 4; ++l)
                    s += t[k][i][j][l] * au[k][l] * au[i][j];
    return s;
}

double mat_trace(const Mat4& t, const Mat4& g_inv) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += g_inv[i][j] * t[i][j];
    return s;
}

double mat_cubed_trace(const Mat4& t, const Mat4& g_inv) {
    const Mat4 tu = raise_one(t, g_inv);  // t_i^j
    const Mat4 t2 = mat_mul(tu, tu);
    const Mat4 t3 = mat_mul(t2, tu);
    double s = 0;
    for (int i = 0; i < 4; ++i) s += t3[i][i];
    return s;
}

Contractions contractions(const CurvatureBundle& b, const Mat4& g, const Mat4& g_inv,
                          const Vec4& dphi, double alpha) {
    (void)g;
    (void)alpha;
    Contractions c;
    c.sic_norm2 = mat_dot(b.sic, b.sic, g_inv);
    c.sin_norm2 = mat_dot(b.sin_tf, b.sin_tf, g_inv);
    c.sm_norm2 = ten4_dot(b.sm, b.sm, g_inv);
    c.rm_norm2 = ten4_dot(b.rm, b.rm, g_inv);
    c.ric_norm2 = mat_dot(b.ric, b.ric, g_inv);
    c.weyl_norm2 = ten4_dot(b.weyl, b.weyl, g_inv);
    c.sm_sic_sic = ten4_bilinear(b.sm, b.sic, g_inv);
    c.sic_cubed = mat_cubed_trace(b.sic, g_inv);
    c.sin_cubed = mat_cubed_trace(b.sin_tf, g_inv);
    c.sic_gradphi = vec_bilinear(b.sic, dphi, g_inv);
    c.w_sin_sin = ten4_bilinear(b.weyl, b.sin_tf, g_inv);
    return c;
}

}  // namespace rhf
