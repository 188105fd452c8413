#pragma once

// Discretized flat 4-torus: periodic structured grid, central finite-difference
// jets of order 2 or 4, field containers, volume integration, and binary
// snapshot IO. Dimensions may be "reduced" (N = 1), in which case every
// derivative along them is identically zero and the PDE collapses to fewer
// effective dimensions with identical pointwise tensor algebra.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rhf/tensor.hpp"

namespace rhf {

struct CorruptedFieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TorusGrid {
    std::array<int, 4> dims{};       // N_d >= 1; N_d = 1 marks a reduced dimension
    std::array<double, 4> lengths{}; // period L_d > 0
    int fd_order = 2;                // 2 or 4
    std::array<double, 4> h{};       // L_d / N_d

    TorusGrid() = default;
    TorusGrid(const std::array<int, 4>& dims_, const std::array<double, 4>& lengths_,
              int fd_order_);

    std::size_t npoints() const {
        return std::size_t(dims[0]) * dims[1] * dims[2] * dims[3];
    }
    bool reduced(int d) const { return dims[d] == 1; }

    std::size_t flat(const std::array<int, 4>& idx) const {
        return ((std::size_t(idx[0]) * dims[1] + idx[1]) * dims[2] + idx[2]) * dims[3] +
               idx[3];
    }
    std::array<int, 4> unflat(std::size_t p) const {
        std::array<int, 4> idx;
        idx[3] = int(p % dims[3]);
        p /= dims[3];
        idx[2] = int(p % dims[2]);
        p /= dims[2];
        idx[1] = int(p % dims[1]);
        idx[0] = int(p / dims[1]);
        return idx;
    }
    // coordinate of grid point along dimension d
    double coord(int i, int d) const { return h[d] * i; }

    // neighbor with idx[d] shifted by off (periodic wraparound)
    std::size_t shift(const std::array<int, 4>& idx, int d, int off) const {
        std::array<int, 4> n = idx;
        n[d] = ((idx[d] + off) % dims[d] + dims[d]) % dims[d];
        return flat(n);
    }

    bool same_as(const TorusGrid& o) const {
        return dims == o.dims && lengths == o.lengths && fd_order == o.fd_order;
    }

    // ---- central-difference stencils on per-point component arrays --------
    // data holds ncomp values per point; comp selects the component.
    double deriv1(const std::vector<double>& data, int ncomp, int comp,
                  const std::array<int, 4>& idx, int d) const;
    double deriv2(const std::vector<double>& data, int ncomp, int comp,
                  const std::array<int, 4>& idx, int d1, int d2) const;
};

struct ScalarField {
    TorusGrid grid;
    std::vector<double> data;  // one value per point

    ScalarField() = default;
    explicit ScalarField(const TorusGrid& g) : grid(g), data(g.npoints(), 0.0) {}
    double& at(std::size_t p) { return data[p]; }
    double at(std::size_t p) const { return data[p]; }
};

struct MetricField {
    TorusGrid grid;
    std::vector<double> data;  // 16 values per point, row-major 4x4

    MetricField() = default;
    explicit MetricField(const TorusGrid& g) : grid(g), data(g.npoints() * 16, 0.0) {}
    double& at(std::size_t p, int i, int j) { return data[p * 16 + i * 4 + j]; }
    double at(std::size_t p, int i, int j) const { return data[p * 16 + i * 4 + j]; }
    Mat4 mat(std::size_t p) const {
        Mat4 m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m[i][j] = data[p * 16 + i * 4 + j];
        return m;
    }
    void set(std::size_t p, const Mat4& m) {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) data[p * 16 + i * 4 + j] = m[i][j];
    }
};

// Finite-difference jets of the metric and scalar fields at a grid point.
// Throws CorruptedFieldError on non-finite data touched by the stencil and
// DegenerateMetricError if the metric cannot be inverted.
std::pair<MetricPoint, PhiJet> jets_at(const MetricField& mf, const ScalarField& sf,
                                       const std::array<int, 4>& idx);

// Sum of value * sqrt(det g) * prod(h_d). Throws DegenerateMetricError on
// non-positive determinant.
double integrate(const ScalarField& scalar, const MetricField& mf);

// Riemannian volume of the discrete torus.
double volume(const MetricField& mf);

std::pair<double, double> extrema(const ScalarField& scalar);

// throws CorruptedFieldError if any entry is non-finite
void ensure_finite(const std::vector<double>& data, const std::string& what);

// ---- snapshot files ---------------------------------------------------------
// Text header (magic "RHF1", dims, lengths, fd_order, field kind, time t)
// followed by raw little-endian 64-bit floats in row-major point order,
// components innermost. Round-trips are bit-exact.

struct Snapshot {
    TorusGrid grid;
    std::string kind;  // "metric" or "scalar"
    double time = 0.0;
    std::vector<double> data;
};

void save_snapshot(const std::string& path, const MetricField& mf, double time);
void save_snapshot(const std::string& path, const ScalarField& sf, double time);
Snapshot load_snapshot(const std::string& path);
MetricField metric_from_snapshot(const Snapshot& s);
ScalarField scalar_from_snapshot(const Snapshot& s);

}  // namespace rhf
