#include "rhf/flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rhf {

// ---- alpha schedule ---------------------------------------------------------

AlphaSchedule AlphaSchedule::constant(double a) {
    if (!(a >= 0.0)) throw FlowError("alpha must be nonnegative");
    AlphaSchedule s;
    s.knots = {{0.0, a}};
    return s;
}

AlphaSchedule AlphaSchedule::linear_decreasing(double a0, double a1, double t1) {
    if (!(a0 >= a1) || !(a1 >= 0.0) || !(t1 > 0.0))
        throw FlowError("linear schedule requires a0 >= a1 >= 0 and t1 > 0");
    AlphaSchedule s;
    s.knots = {{0.0, a0}, {t1, a1}};
    return s;
}

double AlphaSchedule::value(double t) const {
    if (knots.empty()) return 0.0;
    if (t <= knots.front().first) return knots.front().second;
    if (t >= knots.back().first) return knots.back().second;
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (t <= knots[i].first) {
            const auto& [t0, a0] = knots[i - 1];
            const auto& [t1, a1] = knots[i];
            return a0 + (a1 - a0) * (t - t0) / (t1 - t0);
        }
    return knots.back().second;
}

double AlphaSchedule::derivative(double t) const {
    if (knots.size() < 2) return 0.0;
    if (t < knots.front().first || t >= knots.back().first) return 0.0;
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (t < knots[i].first) {
            const auto& [t0, a0] = knots[i - 1];
            const auto& [t1, a1] = knots[i];
            return (a1 - a0) / (t1 - t0);
        }
    return 0.0;
}

bool AlphaSchedule::is_constant() const {
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (knots[i].second != knots[0].second) return false;
    return true;
}

// ---- flow right-hand side ---------------------------------------------------

void rhs(const FlowState& state, MetricField& dg, ScalarField& dphi) {
    const TorusGrid& grid = state.g.grid;
    dg = MetricField(grid);
    dphi = ScalarField(grid);
    const double alpha = state.schedule.value(state.t);
    for (std::size_t p = 0; p < grid.npoints(); ++p) {
        const auto idx = grid.unflat(p);
        MetricPoint mp;
        PhiJet pj;
        try {
            std::tie(mp, pj) = jets_at(state.g, state.phi, idx);
        } catch (const DegenerateMetricError& e) {
            throw DegenerateMetricError(std::string(e.what()) + " at grid index (" +
                                        std::to_string(idx[0]) + "," + std::to_string(idx[1]) +
                                        "," + std::to_string(idx[2]) + "," +
                                        std::to_string(idx[3]) + ")");
        }
        const Ten4 rm = riemann(mp);
        const Mat4 ric = ricci_from_rm(rm, mp.g_inv);
        const HessianResult h = hessian_phi(mp, pj);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                dg.at(p, i, j) = -2.0 * ric[i][j] + 2.0 * alpha * pj.dphi[i] * pj.dphi[j];
        dphi.at(p) = h.lap;
    }
}

double dt_max(const FlowState& state, double cfl) {
    const TorusGrid& grid = state.g.grid;
    const double alpha = state.schedule.value(state.t);
    double worst = 0.0;
    for (std::size_t p = 0; p < grid.npoints(); ++p) {
        const auto idx = grid.unflat(p);
        const auto [mp, pj] = jets_at(state.g, state.phi, idx);
        const Ten4 rm = riemann(mp);
        const HessianResult h = hessian_phi(mp, pj);
        const double rm_norm = std::sqrt(std::max(0.0, ten4_dot(rm, rm, mp.g_inv)));
        const double hess_norm = std::sqrt(std::max(0.0, mat_dot(h.hess, h.hess, mp.g_inv)));
        const double gn2 = grad_norm2(mp.g_inv, pj.dphi);
        worst = std::max(worst, rm_norm + alpha * gn2 + hess_norm);
    }
    double h2 = 0.0;
    bool any = false;
    for (int d = 0; d < 4; ++d)
        if (!grid.reduced(d)) {
            const double hd2 = grid.h[d] * grid.h[d];
            h2 = any ? std::min(h2, hd2) : hd2;
            any = true;
        }
    if (!any) h2 = grid.h[0] * grid.h[0];  // fully reduced grid: no stencil constraint
    return cfl * h2 / (1.0 + worst);
}

namespace {

void axpy(FlowState& y, double c, const MetricField& dg, const ScalarField& dphi) {
    for (std::size_t i = 0; i < y.g.data.size(); ++i) y.g.data[i] += c * dg.data[i];
    for (std::size_t i = 0; i < y.phi.data.size(); ++i) y.phi.data[i] += c * dphi.data[i];
}

void verify_spd(const MetricField& mf) {
    for (std::size_t p = 0; p < mf.grid.npoints(); ++p) {
        const Mat4 m = mf.mat(p);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (!std::isfinite(m[i][j]))
                    throw StepRejectedError("non-finite metric after step");
        if (!is_spd(m))
            throw StepRejectedError("metric lost positive definiteness after step");
    }
}

}  // namespace

FlowState step_rk4(const FlowState& state, double dt) {
    if (!(dt > 0.0)) throw FlowError("dt must be positive");
    MetricField k1g, k2g, k3g, k4g;
    ScalarField k1p, k2p, k3p, k4p;
    try {
        rhs(state, k1g, k1p);

        FlowState mid = state;
        mid.t = state.t + 0.5 * dt;
        axpy(mid, 0.5 * dt, k1g, k1p);
        rhs(mid, k2g, k2p);

        FlowState mid2 = state;
        mid2.t = state.t + 0.5 * dt;
        axpy(mid2, 0.5 * dt, k2g, k2p);
        rhs(mid2, k3g, k3p);

        FlowState end = state;
        end.t = state.t + dt;
        axpy(end, dt, k3g, k3p);
        rhs(end, k4g, k4p);
    } catch (const DegenerateMetricError& e) {
        throw StepRejectedError(std::string("stage metric degenerated: ") + e.what());
    }

    FlowState out = state;
    out.t = state.t + dt;
    const double c = dt / 6.0;
    for (std::size_t i = 0; i < out.g.data.size(); ++i)
        out.g.data[i] += c * (k1g.data[i] + 2.0 * k2g.data[i] + 2.0 * k3g.data[i] +
                              k4g.data[i]);
    for (std::size_t i = 0; i < out.phi.data.size(); ++i)
        out.phi.data[i] += c * (k1p.data[i] + 2.0 * k2p.data[i] + 2.0 * k3p.data[i] +
                                k4p.data[i]);
    verify_spd(out.g);
    return out;
}

FlowState advance(const FlowState& state, double dt, double* dt_used, int max_halvings) {
    for (int attempt = 0;; ++attempt) {
        try {
            FlowState next = step_rk4(state, dt);
            if (dt_used) *dt_used = dt;
            return next;
        } catch (const StepRejectedError&) {
            if (attempt >= max_halvings) throw;
            dt *= 0.5;
        }
    }
}

// ---- derived fields ---------------------------------------------------------

DerivedFields compute_derived(const FlowState& state, double C) {
    const TorusGrid& grid = state.g.grid;
    const double alpha = state.schedule.value(state.t);
    DerivedFields d;
    d.s = ScalarField(grid);
    d.u_sic2 = ScalarField(grid);
    d.f = ScalarField(grid);
    d.gradphi2 = ScalarField(grid);
    d.sic.assign(grid.npoints() * 16, 0.0);
    for (std::size_t p = 0; p < grid.npoints(); ++p) {
        const auto idx = grid.unflat(p);
        const auto [mp, pj] = jets_at(state.g, state.phi, idx);
        const Ten4 rm = riemann(mp);
        const Mat4 ric = ricci_from_rm(rm, mp.g_inv);
        const double r = scalar_from_ricci(ric, mp.g_inv);
        const double gn2 = grad_norm2(mp.g_inv, pj.dphi);
        const Mat4 sic = sic_tensor(ric, alpha, pj.dphi);
        const double s = r - alpha * gn2;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) d.sic[p * 16 + i * 4 + j] = sic[i][j];
        d.s.at(p) = s;
        d.u_sic2.at(p) = mat_dot(sic, sic, mp.g_inv);
        d.gradphi2.at(p) = gn2;
        if (C != 0.0 || s > 0.0) {
            if (!(s + C > 0.0))
                throw FlowError("S + C <= 0 at t=" + std::to_string(state.t) +
                                ", grid point " + std::to_string(p));
            d.f.at(p) = d.u_sic2.at(p) / (s + C);
        } else {
            d.f.at(p) = 0.0;
        }
    }
    return d;
}

// ---- covariant finite-difference helpers ------------------------------------

Vec4 fd_grad_scalar(const TorusGrid& grid, const std::vector<double>& arr,
                    const std::array<int, 4>& idx) {
    Vec4 g{};
    for (int d = 0; d < 4; ++d) g[d] = grid.deriv1(arr, 1, 0, idx, d);
    return g;
}

double cov_laplacian_scalar(const TorusGrid& grid, const std::vector<double>& arr,
                            const std::array<int, 4>& idx, const MetricPoint& mp,
                            const Ten3& gamma) {
    Vec4 du = fd_grad_scalar(grid, arr, idx);
    double lap = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double hess_ab = grid.deriv2(arr, 1, 0, idx, a, b);
            for (int c = 0; c < 4; ++c) hess_ab -= gamma[c][a][b] * du[c];
            lap += mp.g_inv[a][b] * hess_ab;
        }
    return lap;
}

Ten3 cov_deriv_tensor(const TorusGrid& grid, const std::vector<double>& tensor,
                      const std::array<int, 4>& idx, const Ten3& gamma) {
    const std::size_t p = grid.flat(idx);
    Ten3 u{};
    for (int b = 0; b < 4; ++b)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double v = grid.deriv1(tensor, 16, i * 4 + j, idx, b);
                for (int k = 0; k < 4; ++k) {
                    v -= gamma[k][b][i] * tensor[p * 16 + k * 4 + j];
                    v -= gamma[k][b][j] * tensor[p * 16 + i * 4 + k];
                }
                u[b][i][j] = v;
            }
    return u;
}

Mat4 cov_laplacian_tensor(const TorusGrid& grid, const std::vector<double>& tensor,
                          const std::array<int, 4>& idx, const MetricPoint& mp,
                          const Ten3& gamma, const Ten4& dgamma) {
    const std::size_t p = grid.flat(idx);
    const Ten3 u = cov_deriv_tensor(grid, tensor, idx, gamma);

    // coordinate first partials of T at this point, dT[a][i][j] = d_a T_ij,
    // needed inside d_a U_bij
    Ten3 dt{};
    for (int a = 0; a < 4; ++a)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) dt[a][i][j] = grid.deriv1(tensor, 16, i * 4 + j, idx, a);

    Mat4 lap{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const double w = mp.g_inv[a][b];
            if (w == 0.0) continue;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    // d_a U_bij
                    double dau = grid.deriv2(tensor, 16, i * 4 + j, idx, a, b);
                    for (int k = 0; k < 4; ++k) {
                        dau -= dgamma[a][k][b][i] * tensor[p * 16 + k * 4 + j];
                        dau -= gamma[k][b][i] * dt[a][k][j];
                        dau -= dgamma[a][k][b][j] * tensor[p * 16 + i * 4 + k];
                        dau -= gamma[k][b][j] * dt[a][i][k];
                    }
                    // connection corrections for the outer derivative
                    double v = dau;
                    for (int c = 0; c < 4; ++c) v -= gamma[c][a][b] * u[c][i][j];
                    for (int k = 0; k < 4; ++k) {
                        v -= gamma[k][a][i] * u[b][k][j];
                        v -= gamma[k][a][j] * u[b][i][k];
                    }
                    lap[i][j] += w * v;
                }
        }
    return lap;
}

// ---- evolution residuals ----------------------------------------------------

namespace {

void check_history(const FlowState& prev, const FlowState& mid, const FlowState& next) {
    if (!prev.g.grid.same_as(mid.g.grid) || !mid.g.grid.same_as(next.g.grid))
        throw FlowError("history states live on different grids");
    const double dt1 = mid.t - prev.t, dt2 = next.t - mid.t;
    if (!(dt1 > 0.0) || std::abs(dt1 - dt2) > 1e-12 * std::max(dt1, dt2))
        throw FlowError("history states are not equally spaced in time");
}

}  // namespace

EvolutionResiduals evolution_residuals(const FlowState& prev, const FlowState& mid,
                                       const FlowState& next, double C) {
    check_history(prev, mid, next);
    const TorusGrid& grid = mid.g.grid;
    const double dt = mid.t - prev.t;
    const double alpha = mid.schedule.value(mid.t);
    const double alpha_dot = mid.schedule.derivative(mid.t);

    const DerivedFields dm = compute_derived(prev, C);
    const DerivedFields d0 = compute_derived(mid, C);
    const DerivedFields dp = compute_derived(next, C);

    EvolutionResiduals res;
    res.s_residual = ScalarField(grid);

    for (std::size_t p = 0; p < grid.npoints(); ++p) {
        const auto idx = grid.unflat(p);
        const auto [mp, pj] = jets_at(mid.g, mid.phi, idx);
        const CurvatureBundle b = curvature_bundle(mp, pj, alpha);
        const Ten4 dgamma = christoffel_partials(mp);

        // --- S evolution (time-derivative minus heat operator right side)
        const double dS_dt = (dp.s.at(p) - dm.s.at(p)) / (2.0 * dt);
        const double lapS = cov_laplacian_scalar(grid, d0.s.data, idx, mp, b.gamma);
        const double rhs_S = lapS + 2.0 * d0.u_sic2.at(p) +
                             2.0 * alpha * b.lap_phi * b.lap_phi -
                             alpha_dot * b.grad_norm2;
        res.s_residual.at(p) = dS_dt - rhs_S;
        res.s_max = std::max(res.s_max, std::abs(res.s_residual.at(p)));

        // --- Sic evolution
        const Mat4 lap_sic = cov_laplacian_tensor(grid, d0.sic, idx, mp, b.gamma, dgamma);
        const Mat4 sic_up = raise_one(b.sic, mp.g_inv);
        Mat4 sm_sic{};  // (Sm(Sic,.))_ij = S_kijl Sic^kl
        {
            Mat4 sic_upup{};
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    double s = 0;
                    for (int a = 0; a < 4; ++a)
                        for (int c = 0; c < 4; ++c)
                            s += mp.g_inv[i][a] * mp.g_inv[j][c] * b.sic[a][c];
                    sic_upup[i][j] = s;
                }
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    double s = 0;
                    for (int k = 0; k < 4; ++k)
                        for (int l = 0; l < 4; ++l) s += b.sm[k][i][j][l] * sic_upup[k][l];
                    sm_sic[i][j] = s;
                }
        }
        Mat4 sic_sq{};  // Sic^2_ij = Sic_ik Sic_j^k
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0;
                for (int k = 0; k < 4; ++k) s += b.sic[i][k] * sic_up[j][k];
                sic_sq[i][j] = s;
            }
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const double dt_sic =
                    (dp.sic[p * 16 + i * 4 + j] - dm.sic[p * 16 + i * 4 + j]) / (2.0 * dt);
                const double rhs_ij = lap_sic[i][j] + 2.0 * sm_sic[i][j] -
                                      2.0 * sic_sq[i][j] +
                                      2.0 * alpha * b.lap_phi * b.hess_phi[i][j] -
                                      alpha_dot * pj.dphi[i] * pj.dphi[j];
                res.sic_max = std::max(res.sic_max, std::abs(dt_sic - rhs_ij));
            }

        // --- |grad phi|^2 evolution
        const double du_dt = (dp.gradphi2.at(p) - dm.gradphi2.at(p)) / (2.0 * dt);
        const double lap_gn2 = cov_laplacian_scalar(grid, d0.gradphi2.data, idx, mp, b.gamma);
        const double hess2 = mat_dot(b.hess_phi, b.hess_phi, mp.g_inv);
        const double rhs_gn2 = lap_gn2 - 2.0 * alpha * b.grad_norm2 * b.grad_norm2 -
                               2.0 * hess2;
        res.gradphi_max = std::max(res.gradphi_max, std::abs(du_dt - rhs_gn2));

        // --- f evolution
        const double v = b.s_scalar + C;
        if (!(v > 0.0))
            throw FlowError("S + C <= 0 in f-residual at grid point " + std::to_string(p));
        const double fval = d0.f.at(p);
        const double df_dt = (dp.f.at(p) - dm.f.at(p)) / (2.0 * dt);
        const double lap_f = cov_laplacian_scalar(grid, d0.f.data, idx, mp, b.gamma);

        // Z_ijk = (S + C) grad_i Sic_jk - Sic_jk grad_i S
        const Ten3 grad_sic = cov_deriv_tensor(grid, d0.sic, idx, b.gamma);
        const Vec4 grad_s = fd_grad_scalar(grid, d0.s.data, idx);
        double z2 = 0;
        {
            double z[4][4][4];
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k)
                        z[i][j][k] = v * grad_sic[i][j][k] - b.sic[j][k] * grad_s[i];
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k)
                        for (int a = 0; a < 4; ++a)
                            for (int bb = 0; bb < 4; ++bb)
                                for (int c = 0; c < 4; ++c)
                                    z2 += z[i][j][k] * z[a][bb][c] * mp.g_inv[i][a] *
                                          mp.g_inv[j][bb] * mp.g_inv[k][c];
        }
        const double sm_sic_sic = ten4_bilinear(b.sm, b.sic, mp.g_inv);
        Mat4 defect{};  // (Lap phi) Sic/(S+C) - hess phi
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                defect[i][j] = b.lap_phi * b.sic[i][j] / v - b.hess_phi[i][j];
        const double defect2 = mat_dot(defect, defect, mp.g_inv);
        const double sic_pp = vec_bilinear(b.sic, pj.dphi, mp.g_inv);
        const double rhs_f = -2.0 * z2 / (v * v * v) - 2.0 * fval * fval +
                             4.0 * sm_sic_sic / v - 2.0 * alpha * defect2 +
                             2.0 * alpha * hess2 +
                             alpha_dot * b.grad_norm2 * fval / v -
                             2.0 * alpha_dot * sic_pp / v;
        res.f_max = std::max(res.f_max, std::abs(df_dt - lap_f - rhs_f));
    }
    return res;
}

ScalarField residual_evolution_S(const FlowState& prev, const FlowState& mid,
                                 const FlowState& next) {
    // C = 1 keeps the shared evaluation well defined when S crosses zero; the
    // S residual itself does not depend on C
    return evolution_residuals(prev, mid, next, 1.0).s_residual;
}

double residual_evolution_Sic(const FlowState& prev, const FlowState& mid,
                              const FlowState& next) {
    return evolution_residuals(prev, mid, next, 1.0).sic_max;
}

double residual_evolution_gradphi(const FlowState& prev, const FlowState& mid,
                                  const FlowState& next) {
    return evolution_residuals(prev, mid, next, 1.0).gradphi_max;
}

double residual_evolution_f(const FlowState& prev, const FlowState& mid,
                            const FlowState& next, double C) {
    return evolution_residuals(prev, mid, next, C).f_max;
}

}  // namespace rhf
