#pragma once

// Method-of-lines integrator for the coupled flow
//   d/dt g_ij = -2 Ric_ij + 2 alpha(t) grad_i phi grad_j phi,
//   d/dt phi  = Lap phi,
// integrated as written in fixed coordinates (no gauge fixing), plus the
// evolution-equation residual checks used by the convergence studies. The time
// derivative in every residual is the plain fixed-coordinate central
// difference over three equally spaced states.

#include <stdexcept>
#include <vector>

#include "rhf/grid.hpp"

namespace rhf {

struct StepRejectedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FlowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// alpha(t) >= 0 with d/dt alpha <= 0: either constant or piecewise linear and
// nonincreasing between knots (constant before the first and after the last).
struct AlphaSchedule {
    std::vector<std::pair<double, double>> knots;  // (t, alpha), t ascending

    static AlphaSchedule constant(double a);
    // linear from (0, a0) down to (t1, a1), constant a1 afterwards
    static AlphaSchedule linear_decreasing(double a0, double a1, double t1);

    double value(double t) const;
    double derivative(double t) const;
    bool is_constant() const;
};

struct FlowState {
    double t = 0.0;
    MetricField g;
    ScalarField phi;
    AlphaSchedule schedule;
};

// Flow right-hand side; throws DegenerateMetricError (with location appended)
// if the metric cannot be inverted anywhere.
void rhs(const FlowState& state, MetricField& dg, ScalarField& dphi);

// Parabolic stability bound: cfl * min(h_d^2) / (1 + max_M(|Rm| + alpha
// |grad phi|^2 + |hess phi|)) over non-reduced dimensions.
double dt_max(const FlowState& state, double cfl = 0.1);

// Classical four-stage explicit step; re-verifies positive definiteness of the
// result and throws StepRejectedError if it is lost (caller halves dt).
FlowState step_rk4(const FlowState& state, double dt);

// step_rk4 with rejection handling: halves dt up to max_halvings times, then
// rethrows. On success *dt_used receives the accepted dt.
FlowState advance(const FlowState& state, double dt, double* dt_used = nullptr,
                  int max_halvings = 20);

// ---- derived per-point fields (inputs to residuals and monitors) -----------

struct DerivedFields {
    ScalarField s;          // twisted scalar S
    ScalarField u_sic2;     // |Sic|^2
    ScalarField f;          // |Sic|^2 / (S + C)
    ScalarField gradphi2;   // |grad phi|^2
    std::vector<double> sic;  // 16 components per point
};

// C only affects the f field; pass C = 0 when f is not needed. Throws
// FlowError if S + C <= 0 somewhere and C != 0 was requested.
DerivedFields compute_derived(const FlowState& state, double C);

// ---- evolution-equation residuals -------------------------------------------
// history = three states at t - dt, t, t + dt with identical grids and equal
// spacing; all residuals are evaluated at the middle state.

struct EvolutionResiduals {
    ScalarField s_residual;  // pointwise residual of the S evolution equation
    double s_max = 0;        // max-norm of s_residual
    double sic_max = 0;      // max-norm over components of the Sic residual
    double gradphi_max = 0;  // max-norm of the |grad phi|^2 residual
    double f_max = 0;        // max-norm of the f-evolution residual
};

EvolutionResiduals evolution_residuals(const FlowState& prev, const FlowState& mid,
                                       const FlowState& next, double C);

// individual accessors matching the combined evaluation
ScalarField residual_evolution_S(const FlowState& prev, const FlowState& mid,
                                 const FlowState& next);
double residual_evolution_Sic(const FlowState& prev, const FlowState& mid,
                              const FlowState& next);
double residual_evolution_gradphi(const FlowState& prev, const FlowState& mid,
                                  const FlowState& next);
double residual_evolution_f(const FlowState& prev, const FlowState& mid,
                            const FlowState& next, double C);

// ---- covariant finite-difference helpers (shared with the monitors) --------

// first covariant derivative of a symmetric 2-tensor component array
// (16 per point): result[b][i][j] = grad_b T_ij
Ten3 cov_deriv_tensor(const TorusGrid& grid, const std::vector<double>& tensor,
                      const std::array<int, 4>& idx, const Ten3& gamma);

// coordinate gradient of a per-point scalar array
Vec4 fd_grad_scalar(const TorusGrid& grid, const std::vector<double>& arr,
                    const std::array<int, 4>& idx);

// covariant Laplacian of a per-point scalar array
double cov_laplacian_scalar(const TorusGrid& grid, const std::vector<double>& arr,
                            const std::array<int, 4>& idx, const MetricPoint& mp,
                            const Ten3& gamma);

// rough (connection) Laplacian of a symmetric 2-tensor component array
Mat4 cov_laplacian_tensor(const TorusGrid& grid, const std::vector<double>& tensor,
                          const std::array<int, 4>& idx, const MetricPoint& mp,
                          const Ten3& gamma, const Ten4& dgamma);

}  // namespace rhf
