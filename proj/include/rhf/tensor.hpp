#pragma once

// Pointwise curvature algebra for the twisted-curvature flow laboratory.
//
// Convention for the lowered curvature tensor: rm[i][j][k][l] is fixed so that
//   g^{kl} rm_{iklj} = Ric_{ij}
// with positive scalar curvature on the round sphere (verified against a
// symbolic conformal-metric oracle in the tests). Under this convention
//   g^{kl} rm_{ijkl} = 0   and   g^{jl} rm_{ijkl} = -Ric_{ik}.

#include <array>

#include "rhf/linalg.hpp"

namespace rhf {

struct MetricPoint {
    Mat4 g;      // metric components g_ij
    Mat4 g_inv;  // inverse metric g^{ij}
    Ten3 dg;     // dg[k][i][j] = d_k g_ij
    Ten4 d2g;    // d2g[l][k][i][j] = d_l d_k g_ij

    // Builds g_inv with the condition-number guard; throws DegenerateMetricError.
    static MetricPoint from_jets(const Mat4& g, const Ten3& dg, const Ten4& d2g);
};

struct PhiJet {
    double phi = 0.0;
    Vec4 dphi{};        // coordinate partials d_i phi
    Mat4 d2phi_coord{};  // coordinate second partials d_i d_j phi
};

struct CurvatureBundle {
    Ten3 gamma;      // Christoffel symbols Gamma^k_ij, indexed gamma[k][i][j]
    Ten4 rm;         // lowered Riemann tensor
    Mat4 ric;        // Ricci
    double r_scalar; // scalar curvature R
    Ten4 weyl;       // Weyl tensor
    Mat4 sic;        // twisted Ricci: Ric - alpha dphi x dphi
    double s_scalar; // twisted scalar: R - alpha |dphi|^2
    Ten4 sm;         // twisted Riemann-type tensor
    Mat4 sin_tf;     // trace-free part of sic
    Mat4 hess_phi;   // covariant Hessian of phi
    double lap_phi;  // g^{ij} hess_phi_ij
    double grad_norm2;  // |dphi|^2_g
};

// Full contraction scalars used by the identity and monitor layers. All index
// raising goes through g_inv.
struct Contractions {
    double sic_norm2;    // |Sic|^2
    double sin_norm2;    // |Sin|^2
    double sm_norm2;     // |Sm|^2 (plain full contraction)
    double rm_norm2;     // |Rm|^2
    double ric_norm2;    // |Ric|^2
    double weyl_norm2;   // |W|^2
    double sm_sic_sic;   // Sm(Sic, Sic) = S_kijl S^kl S^ij
    double sic_cubed;    // tr_g(Sic^3)
    double sin_cubed;    // tr_g(Sin^3)
    double sic_gradphi;  // Sic(dphi, dphi)
    double w_sin_sin;    // W(Sin, Sin)
};

Ten3 christoffel(const MetricPoint& mp);

// dgamma[l][k][i][j] = d_l Gamma^k_ij, consistent with the metric jets.
Ten4 christoffel_partials(const MetricPoint& mp);

Ten4 riemann(const MetricPoint& mp);

Mat4 ricci_from_rm(const Ten4& rm, const Mat4& g_inv);

double scalar_from_ricci(const Mat4& ric, const Mat4& g_inv);

Mat4 sic_tensor(const Mat4& ric, double alpha, const Vec4& dphi);

Ten4 sm_tensor(const Ten4& rm, double alpha, const Vec4& dphi, const Mat4& g);

Ten4 weyl_tensor(const Ten4& rm, const Mat4& ric, double r_scalar, const Mat4& g, int m = 4);

struct HessianResult {
    Mat4 hess;
    double lap;
};
HessianResult hessian_phi(const MetricPoint& mp, const PhiJet& pj);

double grad_norm2(const Mat4& g_inv, const Vec4& dphi);

Mat4 sin_tracefree(const Mat4& sic, double s_scalar, const Mat4& g, int m = 4);

CurvatureBundle curvature_bundle(const MetricPoint& mp, const PhiJet& pj, double alpha);

Contractions contractions(const CurvatureBundle& b, const Mat4& g, const Mat4& g_inv,
                          const Vec4& dphi, double alpha);

// ---- generic raise/contract helpers (also used by the identity checkers) ----

Mat4 raise_one(const Mat4& t, const Mat4& g_inv);             // t_i^j = t_ik g^{kj}
double mat_dot(const Mat4& a, const Mat4& b, const Mat4& g_inv);     // a_ij b^ij
double vec_bilinear(const Mat4& t, const Vec4& v, const Mat4& g_inv);  // t_ij g^{ia} g^{jb} v_a v_b
Ten4 raise_all(const Ten4& t, const Mat4& g_inv);
double ten4_dot(const Ten4& a, const Ten4& b, const Mat4& g_inv);    // a_ijkl b^ijkl
// bilinear form T(A, A) = T_kijl A^kl A^ij for a 4-tensor and symmetric A
double ten4_bilinear(const Ten4& t, const Mat4& a, const Mat4& g_inv);
double mat_trace(const Mat4& t, const Mat4& g_inv);
double mat_cubed_trace(const Mat4& t, const Mat4& g_inv);  // tr of t raised and cubed

}  // namespace rhf
