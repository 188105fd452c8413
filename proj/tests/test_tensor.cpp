#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rhf/synthetic.hpp"
#include "rhf/tensor.hpp"

#include "conformal_reference.h"
#include "oracles.hpp"

using namespace rhf;

namespace {

MetricPoint flat_point() {
    return MetricPoint::from_jets(kIdentity4, Ten3{}, Ten4{});
}

double max_abs4(const Ten4& t) {
    double v = 0;
    for (auto& a : t)
        for (auto& b : a)
            for (auto& c : b)
                for (double x : c) v = std::max(v, std::abs(x));
    return v;
}

double max_abs3(const Ten3& t) {
    double v = 0;
    for (auto& a : t)
        for (auto& b : a)
            for (double x : b) v = std::max(v, std::abs(x));
    return v;
}

}  // namespace

TEST_CASE("flat metric: all curvature vanishes") {
    const MetricPoint mp = flat_point();
    CHECK(max_abs3(christoffel(mp)) == 0.0);
    const Ten4 rm = riemann(mp);
    CHECK(max_abs4(rm) == 0.0);
    const Mat4 ric = ricci_from_rm(rm, mp.g_inv);
    CHECK(mat_max_abs(ric) == 0.0);
    CHECK(max_abs4(weyl_tensor(rm, ric, 0.0, mp.g)) == 0.0);
}

TEST_CASE("constant non-flat metric: Christoffels vanish") {
    const SyntheticInput si = make_synthetic(7);
    const MetricPoint mp = MetricPoint::from_jets(si.g, Ten3{}, Ten4{});
    CHECK(max_abs3(christoffel(mp)) == 0.0);
    CHECK(max_abs4(riemann(mp)) == 0.0);
}

TEST_CASE("metric inverse invariant and degenerate guard") {
    const SyntheticInput si = make_synthetic(11);
    const MetricPoint mp = MetricPoint::from_jets(si.g, Ten3{}, Ten4{});
    const Mat4 prod = mat_mul(mp.g, mp.g_inv);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(prod[i][j] - (i == j ? 1.0 : 0.0)) < 1e-12);

    Mat4 nearly_singular = kIdentity4;
    nearly_singular[3][3] = 1e-14;
    CHECK_THROWS_AS(MetricPoint::from_jets(nearly_singular, Ten3{}, Ten4{}),
                    DegenerateMetricError);
}

TEST_CASE("conformal metric matches symbolic reference") {
    const oracle::ConformalProfile prof;
    const MetricPoint mp = oracle::conformal_jets(prof, kRefX1, kRefX2);

    const Ten3 gamma = christoffel(mp);
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                CHECK(gamma[k][i][j] == doctest::Approx(kRefGamma[k][i][j]).epsilon(1e-12));

    const Ten4 rm = riemann(mp);
    for (const auto& e : kRefRm)
        CHECK(rm[e.i][e.j][e.k][e.l] == doctest::Approx(e.v).epsilon(1e-11));

    const Mat4 ric = ricci_from_rm(rm, mp.g_inv);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(ric[i][j] == doctest::Approx(kRefRic[i][j]).epsilon(1e-11));

    const double r = scalar_from_ricci(ric, mp.g_inv);
    CHECK(r == doctest::Approx(kRefR).epsilon(1e-12));
    CHECK(r == doctest::Approx(oracle::conformal_scalar_curvature(prof, kRefX1, kRefX2))
                  .epsilon(1e-12));

    PhiJet pj;
    pj.phi = std::sin(kRefX1) + 0.5 * std::cos(kRefX2);
    pj.dphi = {std::cos(kRefX1), -0.5 * std::sin(kRefX2), 0, 0};
    pj.d2phi_coord = Mat4{};
    pj.d2phi_coord[0][0] = -std::sin(kRefX1);
    pj.d2phi_coord[1][1] = -0.5 * std::cos(kRefX2);
    const HessianResult h = hessian_phi(mp, pj);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(h.hess[i][j] == doctest::Approx(kRefHessPhi[i][j]).epsilon(1e-12));
    CHECK(h.lap == doctest::Approx(kRefLapPhi).epsilon(1e-12));
}

TEST_CASE("Riemann symmetries and first Bianchi for metric-derived curvature") {
    const oracle::ConformalProfile prof;
    for (double x1 : {0.3, 1.9, 4.4})
        for (double x2 : {0.0, 2.6}) {
            const MetricPoint mp = oracle::conformal_jets(prof, x1, x2);
            const Ten4 rm = riemann(mp);
            CHECK(curvature_symmetry_violation(rm) < 1e-12);
        }
}

TEST_CASE("conformally flat metric has vanishing Weyl (exact jets)") {
    const oracle::ConformalProfile prof;
    const MetricPoint mp = oracle::conformal_jets(prof, 2.1, 0.8);
    const Ten4 rm = riemann(mp);
    const Mat4 ric = ricci_from_rm(rm, mp.g_inv);
    const double r = scalar_from_ricci(ric, mp.g_inv);
    const Ten4 w = weyl_tensor(rm, ric, r, mp.g);
    CHECK(max_abs4(w) < 1e-13);
}

TEST_CASE("Weyl is totally trace-free and reconstruction is exact") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 42ull}) {
        const SyntheticInput si = make_synthetic(seed);
        const Mat4 ric = ricci_from_rm(si.rm, si.g_inv);
        const double r = scalar_from_ricci(ric, si.g_inv);
        const Ten4 w = weyl_tensor(si.rm, ric, r, si.g);

        // every metric trace vanishes
        double worst = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double t13 = 0, t14 = 0, t23 = 0;
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) {
                        t13 += si.g_inv[k][l] * w[k][i][l][j];
                        t14 += si.g_inv[k][l] * w[k][i][j][l];
                        t23 += si.g_inv[k][l] * w[i][k][l][j];
                    }
                worst = std::max({worst, std::abs(t13), std::abs(t14), std::abs(t23)});
            }
        CHECK(worst < 1e-10);

        // Rm = W + Schouten part, exact rearrangement
        Ten4 rebuilt = w;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) {
                        rebuilt[i][j][k][l] +=
                            (ric[i][l] * si.g[j][k] + ric[j][k] * si.g[i][l] -
                             ric[i][k] * si.g[j][l] - ric[j][l] * si.g[i][k]) / 2.0;
                        rebuilt[i][j][k][l] -= r *
                            (si.g[i][l] * si.g[j][k] - si.g[i][k] * si.g[j][l]) / 6.0;
                    }
        double diff = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l)
                        diff = std::max(diff,
                                        std::abs(rebuilt[i][j][k][l] - si.rm[i][j][k][l]));
        CHECK(diff < 1e-12);
    }
}

TEST_CASE("sic tensor basic cases") {
    SUBCASE("alpha zero decouples") {
        const SyntheticInput si = make_synthetic(5);
        const Mat4 ric = ricci_from_rm(si.rm, si.g_inv);
        const Mat4 sic = sic_tensor(ric, 0.0, si.dphi);
        CHECK(mat_max_abs(sic) == mat_max_abs(ric));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(sic[i][j] == ric[i][j]);
    }
    SUBCASE("direct substitution") {
        const Vec4 dphi = {1, 0, 0, 0};
        const Mat4 sic = sic_tensor(Mat4{}, 1.0, dphi);
        CHECK(sic[0][0] == -1.0);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i || j) CHECK(sic[i][j] == 0.0);
    }
    SUBCASE("trace gives twisted scalar") {
        const SyntheticInput si = make_synthetic(9);
        const Mat4 ric = ricci_from_rm(si.rm, si.g_inv);
        const double r = scalar_from_ricci(ric, si.g_inv);
        const Mat4 sic = sic_tensor(ric, si.alpha, si.dphi);
        const double s = mat_trace(sic, si.g_inv);
        const double expected = r - si.alpha * grad_norm2(si.g_inv, si.dphi);
        CHECK(s == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("sm tensor reduces to rm at alpha zero") {
    const SyntheticInput si = make_synthetic(13);
    const Ten4 sm = sm_tensor(si.rm, 0.0, si.dphi, si.g);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) CHECK(sm[i][j][k][l] == si.rm[i][j][k][l]);
}

TEST_CASE("hessian on flat background") {
    const MetricPoint mp = flat_point();
    SUBCASE("linear phi") {
        PhiJet pj;
        pj.dphi = {1, 0, 0, 0};
        const HessianResult h = hessian_phi(mp, pj);
        CHECK(mat_max_abs(h.hess) == 0.0);
        CHECK(h.lap == 0.0);
    }
    SUBCASE("sinusoid") {
        const double x = 0.9;
        PhiJet pj;
        pj.phi = std::sin(x);
        pj.dphi = {std::cos(x), 0, 0, 0};
        pj.d2phi_coord[0][0] = -std::sin(x);
        const HessianResult h = hessian_phi(mp, pj);
        CHECK(h.lap == doctest::Approx(-std::sin(x)).epsilon(1e-14));
    }
}

TEST_CASE("contraction scalars against brute-force loops") {
    const oracle::ConformalProfile prof;
    const MetricPoint mp = oracle::conformal_jets(prof, 1.1, 3.0);
    PhiJet pj;
    pj.phi = 0.3;
    pj.dphi = {0.4, -0.2, 0.1, 0.0};
    const double alpha = 1.7;
    const CurvatureBundle b = curvature_bundle(mp, pj, alpha);
    const Contractions c = contractions(b, mp.g, mp.g_inv, pj.dphi, alpha);

    CHECK(c.sm_norm2 ==
          doctest::Approx(oracle::ten4_norm2(b.sm, mp.g_inv)).epsilon(1e-12));
    CHECK(c.rm_norm2 ==
          doctest::Approx(oracle::ten4_norm2(b.rm, mp.g_inv)).epsilon(1e-12));
    CHECK(c.sic_norm2 ==
          doctest::Approx(oracle::mat_norm2(b.sic, mp.g_inv)).epsilon(1e-12));
    CHECK(c.sic_gradphi ==
          doctest::Approx(oracle::bilinear_vec(b.sic, pj.dphi, mp.g_inv)).epsilon(1e-12));
    CHECK(c.sm_sic_sic ==
          doctest::Approx(oracle::ten4_bilinear_mat(b.sm, b.sic, mp.g_inv)).epsilon(1e-12));
    CHECK(c.w_sin_sin ==
          doctest::Approx(oracle::ten4_bilinear_mat(b.weyl, b.sin_tf, mp.g_inv))
              .epsilon(1e-10));
}

TEST_CASE("pure-trace sic: trace algebra") {
    // Sic = g on flat background: S = 4, Sin = 0, |Sic|^2 = 4, tr(Sic^3) = 4
    const Mat4 g = kIdentity4;
    const Mat4 sic = g;
    const double s = mat_trace(sic, g);
    CHECK(s == 4.0);
    const Mat4 sin_tf = sin_tracefree(sic, s, g);
    CHECK(mat_max_abs(sin_tf) == 0.0);
    CHECK(mat_dot(sic, sic, g) == 4.0);
    CHECK(mat_cubed_trace(sic, g) == 4.0);
}

TEST_CASE("|Sic|^2 = |Sin|^2 + S^2/4 on random inputs") {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const SyntheticInput si = make_synthetic(seed);
        const Mat4 ric = ricci_from_rm(si.rm, si.g_inv);
        const double r = scalar_from_ricci(ric, si.g_inv);
        const Mat4 sic = sic_tensor(ric, si.alpha, si.dphi);
        const double s = r - si.alpha * grad_norm2(si.g_inv, si.dphi);
        const Mat4 sin_tf = sin_tracefree(sic, s, si.g);
        const double lhs = mat_dot(sic, sic, si.g_inv);
        const double rhs = mat_dot(sin_tf, sin_tf, si.g_inv) + s * s / 4.0;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        CHECK(std::abs(mat_trace(sin_tf, si.g_inv)) < 1e-12 * (1 + std::abs(s)));
    }
}

TEST_CASE("contraction scalars are orthogonal-frame invariant") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        const SyntheticInput si = make_synthetic(300 + trial);

        // random rotation Q; transform all lowered tensors by Q on each slot
        Mat4 q{};
        {
            // Gram-Schmidt on random columns
            for (int c = 0; c < 4; ++c) {
                Vec4 v;
                for (int i = 0; i < 4; ++i) v[i] = uniform(rng, -1, 1);
                for (int p = 0; p < c; ++p) {
                    double dot = 0;
                    for (int i = 0; i < 4; ++i) dot += v[i] * q[i][p];
                    for (int i = 0; i < 4; ++i) v[i] -= dot * q[i][p];
                }
                double n2 = 0;
                for (int i = 0; i < 4; ++i) n2 += v[i] * v[i];
                for (int i = 0; i < 4; ++i) q[i][c] = v[i] / std::sqrt(n2);
            }
        }
        Mat4 g2{};
        Vec4 dphi2{};
        Ten4 rm2{};
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                double s = 0;
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) s += q[i][a] * q[j][b] * si.g[i][j];
                g2[a][b] = s;
            }
            double sv = 0;
            for (int i = 0; i < 4; ++i) sv += q[i][a] * si.dphi[i];
            dphi2[a] = sv;
        }
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    for (int d = 0; d < 4; ++d) {
                        double s = 0;
                        for (int i = 0; i < 4; ++i)
                            for (int j = 0; j < 4; ++j)
                                for (int k = 0; k < 4; ++k)
                                    for (int l = 0; l < 4; ++l)
                                        s += q[i][a] * q[j][b] * q[k][c] * q[l][d] *
                                             si.rm[i][j][k][l];
                        rm2[a][b][c][d] = s;
                    }
        const Mat4 g2i = mat_inverse(g2);

        const Mat4 ric1 = ricci_from_rm(si.rm, si.g_inv);
        const Mat4 ric2m = ricci_from_rm(rm2, g2i);
        const Ten4 sm1 = sm_tensor(si.rm, si.alpha, si.dphi, si.g);
        const Ten4 sm2 = sm_tensor(rm2, si.alpha, dphi2, g2);
        const Mat4 sic1 = sic_tensor(ric1, si.alpha, si.dphi);
        const Mat4 sic2 = sic_tensor(ric2m, si.alpha, dphi2);

        CHECK(ten4_dot(sm1, sm1, si.g_inv) ==
              doctest::Approx(ten4_dot(sm2, sm2, g2i)).epsilon(1e-10));
        CHECK(mat_dot(sic1, sic1, si.g_inv) ==
              doctest::Approx(mat_dot(sic2, sic2, g2i)).epsilon(1e-10));
        CHECK(ten4_bilinear(sm1, sic1, si.g_inv) ==
              doctest::Approx(ten4_bilinear(sm2, sic2, g2i)).epsilon(1e-10));
        CHECK(vec_bilinear(sic1, si.dphi, si.g_inv) ==
              doctest::Approx(vec_bilinear(sic2, dphi2, g2i)).epsilon(1e-10));
        CHECK(mat_cubed_trace(sic1, si.g_inv) ==
              doctest::Approx(mat_cubed_trace(sic2, g2i)).epsilon(1e-10));
    }
}
