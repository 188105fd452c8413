#include "rhf/synthetic.hpp"

#include <cmath>

namespace rhf {

Ten4 kulkarni_nomizu(const Mat4& a, const Mat4& b) {
    Ten4 t{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    t[i][j][k][l] = a[i][l] * b[j][k] + a[j][k] * b[i][l] -
                                    a[i][k] * b[j][l] - a[j][l] * b[i][k];
    return t;
}

namespace {

Mat4 random_symmetric(std::mt19937_64& rng, double scale) {
    Mat4 a{};
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) a[i][j] = a[j][i] = uniform(rng, -scale, scale);
    return a;
}

// Random orthogonal via Gram-Schmidt on random vectors.
Mat4 random_orthogonal(std::mt19937_64& rng) {
    Mat4 q{};
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
        if (n2 < 1e-8) {  // degenerate draw, restart column with a basis vector
            for (int i = 0; i < 4; ++i) v[i] = (i == c) ? 1.0 : uniform(rng, -0.1, 0.1);
            for (int p = 0; p < c; ++p) {
                double dot = 0;
                for (int i = 0; i < 4; ++i) dot += v[i] * q[i][p];
                for (int i = 0; i < 4; ++i) v[i] -= dot * q[i][p];
            }
            n2 = 0;
            for (int i = 0; i < 4; ++i) n2 += v[i] * v[i];
        }
        const double inv = 1.0 / std::sqrt(n2);
        for (int i = 0; i < 4; ++i) q[i][c] = v[i] * inv;
    }
    return q;
}

// Projects a raw 4-tensor onto the curvature symmetry class: antisymmetrize
// both pairs, symmetrize the pair swap, then remove the totally antisymmetric
// (first-Bianchi-violating) component.
Ten4 curvature_project(const Ten4& raw) {
    Ten4 t{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    const double anti =
                        0.25 * (raw[i][j][k][l] - raw[j][i][k][l] - raw[i][j][l][k] +
                                raw[j][i][l][k]);
                    t[i][j][k][l] = anti;
                }
    Ten4 sym{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    sym[i][j][k][l] = 0.5 * (t[i][j][k][l] + t[k][l][i][j]);
    Ten4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    const double bianchi = (sym[i][j][k][l] + sym[j][k][i][l] +
                                            sym[k][i][j][l]) / 3.0;
                    out[i][j][k][l] = sym[i][j][k][l] - bianchi;
                }
    return out;
}

}  // namespace

SyntheticInput make_synthetic(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    SyntheticInput si;
    si.seed = seed;

    // SPD metric with eigenvalues in [0.2, 5]
    const Mat4 q = random_orthogonal(rng);
    Vec4 eig;
    for (int i = 0; i < 4; ++i) eig[i] = uniform(rng, 0.2, 5.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int k = 0; k < 4; ++k) s += q[i][k] * eig[k] * q[j][k];
            si.g[i][j] = s;
        }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) si.g[i][j] = si.g[j][i] = 0.5 * (si.g[i][j] + si.g[j][i]);
    si.g_inv = mat_inverse(si.g);

    // curvature = KN products of random symmetric matrices + projected raw part
    const Mat4 a = random_symmetric(rng, 1.0);
    const Mat4 b = random_symmetric(rng, 1.0);
    const Mat4 c = random_symmetric(rng, 1.0);
    const Ten4 kn1 = kulkarni_nomizu(a, b);
    const Ten4 kn2 = kulkarni_nomizu(c, c);
    Ten4 raw{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) raw[i][j][k][l] = uniform(rng, -1, 1);
    const Ten4 wcand = curvature_project(raw);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    si.rm[i][j][k][l] =
                        0.5 * kn1[i][j][k][l] + 0.25 * kn2[i][j][k][l] + wcand[i][j][k][l];

    // gradient with |dphi|^2_g <= 10
    for (int i = 0; i < 4; ++i) si.dphi[i] = uniform(rng, -1, 1);
    const double n2 = grad_norm2(si.g_inv, si.dphi);
    if (n2 > 0) {
        const double target = uniform(rng, 0.0, 10.0);
        const double scale = std::sqrt(target / n2);
        for (int i = 0; i < 4; ++i) si.dphi[i] *= scale;
    }

    si.alpha = uniform(rng, 0.0, 3.0);
    return si;
}

SyntheticInput make_synthetic(std::uint64_t seed, double alpha) {
    SyntheticInput si = make_synthetic(seed);
    si.alpha = alpha;
    return si;
}

double curvature_symmetry_violation(const Ten4& rm) {
    double scale = 0;
    for (auto& a : rm)
        for (auto& b : a)
            for (auto& c : b)
                for (double v : c) scale = std::max(scale, std::abs(v));
    if (scale == 0) scale = 1;
    double worst = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    worst = std::max(worst, std::abs(rm[i][j][k][l] + rm[j][i][k][l]));
                    worst = std::max(worst, std::abs(rm[i][j][k][l] + rm[i][j][l][k]));
                    worst = std::max(worst, std::abs(rm[i][j][k][l] - rm[k][l][i][j]));
                    worst = std::max(worst, std::abs(rm[i][j][k][l] + rm[j][k][i][l] +
                                                     rm[k][i][j][l]));
                }
    return worst / scale;
}

}  // namespace rhf
