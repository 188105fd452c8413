#include "rhf/grid.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

namespace rhf {

TorusGrid::TorusGrid(const std::array<int, 4>& dims_, const std::array<double, 4>& lengths_,
                     int fd_order_)
    : dims(dims_), lengths(lengths_), fd_order(fd_order_) {
    if (fd_order != 2 && fd_order != 4)
        throw GridError("fd_order must be 2 or 4, got " + std::to_string(fd_order));
    const int min_n = fd_order == 2 ? 4 : 6;
    for (int d = 0; d < 4; ++d) {
        if (dims[d] < 1) throw GridError("grid dimension must be positive");
        if (dims[d] != 1 && dims[d] < min_n)
            throw GridError("dimension " + std::to_string(d) + " has N=" +
                            std::to_string(dims[d]) + " < " + std::to_string(min_n) +
                            " required for fd_order " + std::to_string(fd_order));
        if (!(lengths[d] > 0.0)) throw GridError("grid period must be positive");
        h[d] = lengths[d] / dims[d];
    }
}

double TorusGrid::deriv1(const std::vector<double>& data, int ncomp, int comp,
                         const std::array<int, 4>& idx, int d) const {
    if (reduced(d)) return 0.0;
    const auto v = [&](int off) {
        return data[shift(idx, d, off) * ncomp + comp];
    };
    if (fd_order == 2) return (v(1) - v(-1)) / (2.0 * h[d]);
    return (-v(2) + 8.0 * v(1) - 8.0 * v(-1) + v(-2)) / (12.0 * h[d]);
}

double TorusGrid::deriv2(const std::vector<double>& data, int ncomp, int comp,
                         const std::array<int, 4>& idx, int d1, int d2) const {
    if (reduced(d1) || reduced(d2)) return 0.0;
    if (d1 == d2) {
        const int d = d1;
        const auto v = [&](int off) {
            return data[shift(idx, d, off) * ncomp + comp];
        };
        if (fd_order == 2)
            return (v(1) - 2.0 * v(0) + v(-1)) / (h[d] * h[d]);
        return (-v(2) + 16.0 * v(1) - 30.0 * v(0) + 16.0 * v(-1) - v(-2)) /
               (12.0 * h[d] * h[d]);
    }
    // mixed derivative: compose the two first-derivative stencils
    const auto v = [&](int o1, int o2) {
        std::array<int, 4> n = idx;
        n[d1] = ((idx[d1] + o1) % dims[d1] + dims[d1]) % dims[d1];
        n[d2] = ((idx[d2] + o2) % dims[d2] + dims[d2]) % dims[d2];
        return data[flat(n) * ncomp + comp];
    };
    if (fd_order == 2)
        return (v(1, 1) - v(1, -1) - v(-1, 1) + v(-1, -1)) / (4.0 * h[d1] * h[d2]);
    const int offs[4] = {-2, -1, 1, 2};
    const double w[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};
    double s = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) s += w[a] * w[b] * v(offs[a], offs[b]);
    return s / (h[d1] * h[d2]);
}

std::pair<MetricPoint, PhiJet> jets_at(const MetricField& mf, const ScalarField& sf,
                                       const std::array<int, 4>& idx) {
    const TorusGrid& g = mf.grid;
    if (!g.same_as(sf.grid)) throw GridError("metric and scalar fields on different grids");
    const std::size_t p = g.flat(idx);

    Mat4 gm = mf.mat(p);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!std::isfinite(gm[i][j]))
                throw CorruptedFieldError("non-finite metric component at grid point");
    if (!std::isfinite(sf.at(p)))
        throw CorruptedFieldError("non-finite scalar value at grid point");

    Ten3 dg{};
    Ten4 d2g{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const int comp = i * 4 + j;
            for (int k = 0; k < 4; ++k) {
                dg[k][i][j] = g.deriv1(mf.data, 16, comp, idx, k);
                for (int l = k; l < 4; ++l) {
                    const double v = g.deriv2(mf.data, 16, comp, idx, k, l);
                    d2g[l][k][i][j] = v;
                    d2g[k][l][i][j] = v;
                }
            }
        }

    PhiJet pj;
    pj.phi = sf.at(p);
    for (int k = 0; k < 4; ++k) {
        pj.dphi[k] = g.deriv1(sf.data, 1, 0, idx, k);
        for (int l = k; l < 4; ++l) {
            const double v = g.deriv2(sf.data, 1, 0, idx, k, l);
            pj.d2phi_coord[k][l] = v;
            pj.d2phi_coord[l][k] = v;
        }
    }
    return {MetricPoint::from_jets(gm, dg, d2g), pj};
}

double integrate(const ScalarField& scalar, const MetricField& mf) {
    const TorusGrid& g = mf.grid;
    if (!g.same_as(scalar.grid)) throw GridError("fields on different grids");
    const double cell = g.h[0] * g.h[1] * g.h[2] * g.h[3];
    double sum = 0;
    for (std::size_t p = 0; p < g.npoints(); ++p) {
        const double det = mat_det(mf.mat(p));
        if (!(det > 0.0))
            throw DegenerateMetricError("non-positive metric determinant in quadrature");
        sum += scalar.at(p) * std::sqrt(det) * cell;
    }
    return sum;
}

double volume(const MetricField& mf) {
    ScalarField one(mf.grid);
    for (double& v : one.data) v = 1.0;
    return integrate(one, mf);
}

std::pair<double, double> extrema(const ScalarField& scalar) {
    ensure_finite(scalar.data, "scalar field");
    double lo = scalar.data[0], hi = scalar.data[0];
    for (double v : scalar.data) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

void ensure_finite(const std::vector<double>& data, const std::string& what) {
    for (double v : data)
        if (!std::isfinite(v)) throw CorruptedFieldError("non-finite value in " + what);
}

// ---- snapshot IO ------------------------------------------------------------

namespace {

void write_snapshot(const std::string& path, const TorusGrid& g, const std::string& kind,
                    double time, const std::vector<double>& data) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw GridError("cannot open snapshot file for writing: " + path);
    std::fprintf(f, "RHF1\n");
    std::fprintf(f, "dims %d %d %d %d\n", g.dims[0], g.dims[1], g.dims[2], g.dims[3]);
    std::fprintf(f, "lengths %.17g %.17g %.17g %.17g\n", g.lengths[0], g.lengths[1],
                 g.lengths[2], g.lengths[3]);
    std::fprintf(f, "fd_order %d\n", g.fd_order);
    std::fprintf(f, "kind %s\n", kind.c_str());
    std::fprintf(f, "time %.17g\n", time);
    std::fprintf(f, "data\n");
    const std::size_t n = std::fwrite(data.data(), sizeof(double), data.size(), f);
    std::fclose(f);
    if (n != data.size()) throw GridError("short write on snapshot file: " + path);
}

std::string read_line(std::FILE* f, const std::string& path) {
    std::string line;
    int c;
    while ((c = std::fgetc(f)) != EOF && c != '\n') line.push_back(char(c));
    if (c == EOF) throw GridError("truncated snapshot header: " + path);
    return line;
}

}  // namespace

void save_snapshot(const std::string& path, const MetricField& mf, double time) {
    write_snapshot(path, mf.grid, "metric", time, mf.data);
}

void save_snapshot(const std::string& path, const ScalarField& sf, double time) {
    write_snapshot(path, sf.grid, "scalar", time, sf.data);
}

Snapshot load_snapshot(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw GridError("cannot open snapshot file: " + path);
    Snapshot s;
    try {
        if (read_line(f, path) != "RHF1") throw GridError("bad snapshot magic: " + path);
        std::array<int, 4> dims{};
        std::array<double, 4> lengths{};
        int fd_order = 0;
        if (std::sscanf(read_line(f, path).c_str(), "dims %d %d %d %d", &dims[0], &dims[1],
                        &dims[2], &dims[3]) != 4)
            throw GridError("bad dims line: " + path);
        if (std::sscanf(read_line(f, path).c_str(), "lengths %lg %lg %lg %lg", &lengths[0],
                        &lengths[1], &lengths[2], &lengths[3]) != 4)
            throw GridError("bad lengths line: " + path);
        if (std::sscanf(read_line(f, path).c_str(), "fd_order %d", &fd_order) != 1)
            throw GridError("bad fd_order line: " + path);
        char kindbuf[32] = {};
        if (std::sscanf(read_line(f, path).c_str(), "kind %31s", kindbuf) != 1)
            throw GridError("bad kind line: " + path);
        if (std::sscanf(read_line(f, path).c_str(), "time %lg", &s.time) != 1)
            throw GridError("bad time line: " + path);
        if (read_line(f, path) != "data") throw GridError("missing data marker: " + path);
        s.grid = TorusGrid(dims, lengths, fd_order);
        s.kind = kindbuf;
        const std::size_t ncomp = s.kind == "metric" ? 16 : 1;
        if (s.kind != "metric" && s.kind != "scalar")
            throw GridError("unknown snapshot kind '" + s.kind + "': " + path);
        s.data.resize(s.grid.npoints() * ncomp);
        if (std::fread(s.data.data(), sizeof(double), s.data.size(), f) != s.data.size())
            throw GridError("truncated snapshot payload: " + path);
    } catch (...) {
        std::fclose(f);
        throw;
    }
    std::fclose(f);
    return s;
}

MetricField metric_from_snapshot(const Snapshot& s) {
    if (s.kind != "metric") throw GridError("snapshot is not a metric field");
    MetricField mf(s.grid);
    mf.data = s.data;
    return mf;
}

ScalarField scalar_from_snapshot(const Snapshot& s) {
    if (s.kind != "scalar") throw GridError("snapshot is not a scalar field");
    ScalarField sf(s.grid);
    sf.data = s.data;
    return sf;
}

}  // namespace rhf
