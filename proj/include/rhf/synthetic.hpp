#pragma once

// Seeded random inputs for the pointwise identity checks: a random SPD metric,
// a random algebraic curvature tensor with all Riemann symmetries, a gradient
// vector, and a coupling constant. Everything is generated independently of
// any metric-derived curvature so the identity checks are pure multilinear
// algebra.

#include <cstdint>
#include <random>

#include "rhf/tensor.hpp"

namespace rhf {

struct SyntheticInput {
    Mat4 g;
    Mat4 g_inv;
    Ten4 rm;      // algebraic curvature tensor (all Riemann symmetries + first Bianchi)
    Vec4 dphi;    // |dphi|^2_g <= 10
    double alpha; // >= 0
    std::uint64_t seed;
};

// Deterministic uniform in [0,1) from a PRNG, independent of libstdc++
// distribution internals so identical seeds give bit-identical inputs anywhere.
inline double uniform01(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// Kulkarni-Nomizu-type product of symmetric matrices; satisfies all Riemann
// symmetries including the first Bianchi identity.
Ten4 kulkarni_nomizu(const Mat4& a, const Mat4& b);

SyntheticInput make_synthetic(std::uint64_t seed);

// Overrides alpha after generation (keeps everything else identical).
SyntheticInput make_synthetic(std::uint64_t seed, double alpha);

// Max violation of the Riemann symmetries and first Bianchi identity; the
// generator guarantees < 1e-13 relative.
double curvature_symmetry_violation(const Ten4& rm);

}  // namespace rhf
