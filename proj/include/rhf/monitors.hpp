#pragma once

// Integral monitors, bound calculators, and inequality slack checks evaluated
// along a flow history. Time integrals use trapezoidal accumulation over the
// recorded steps; the -1e-6*|RHS| pass tolerance absorbs quadrature error.

#include <string>
#include <vector>

#include "rhf/flow.hpp"

namespace rhf {

struct MonitorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Z_ijk = (grad_i Sic_jk)(S + C) - Sic_jk (grad_i S) at one grid point,
// computed from the state's derived fields. Vanishes identically whenever
// Sic = c (S + C) g with constant c.
Ten3 z_tensor(const FlowState& state, const DerivedFields& d,
              const std::array<int, 4>& idx, double C);

struct GaussBonnetResult {
    double direct;   // integral of |Rm|^2 - 4|Ric|^2 + R^2
    double twisted;  // same integral via the twisted-curvature expansion
};
GaussBonnetResult gauss_bonnet_residual(const FlowState& state);

// one row of the monitor time series
struct MonitorRecord {
    double t = 0, alpha = 0, alpha_dot = 0;
    double vol = 0, min_s = 0, max_s = 0, max_gradphi2 = 0;
    double int_s = 0;         // integral of S (volume identity: d/dt Vol = -int S)
    double int_gradphi2 = 0;  // integral of |grad phi|^2
    double a2 = 0;            // integral of |hess phi|^2
    double int_f = 0;         // integral of |Sic|^2/(S+C), configured C
    double int_f2 = 0;
    double int_s2 = 0;
    double int_abs_sic = 0;
    double int_sic2 = 0, int_sic3 = 0, int_sic4 = 0;
    double int_sic4_over = 0;  // integral of |Sic|^4/(S+C)^2
    double int_sm2 = 0;
    double int_sc4 = 0;        // integral of (S+C)^4
    double int_f_ba = 0;       // integral of |Sic|^2/(S+2)  (NaN if S+2 <= 0 somewhere)
    double int_f2_ba = 0;
    double int_sic2_over_s = 0;  // integral of |Sic|^2/S (NaN unless S > 0 everywhere)
    double gb_direct = 0, gb_twisted = 0;
    double pinching_lhs = 0;    // max |Sin|/(S+C)
    double pinching_ratio = 0;  // max (|W| + |hess phi|^2)/(S+C)
};

MonitorRecord monitor_record(const FlowState& state, double C);

enum class SlackStatus { Pass, Fail, NotApplicable, Reported };
const char* to_string(SlackStatus s);

struct SlackResult {
    std::string id;  // inequality identifier, e.g. "3.17"
    double s = 0;    // time at which the worst slack occurred
    double lhs = 0, rhs = 0, slack = 0;
    SlackStatus status = SlackStatus::NotApplicable;
};

struct BAReport {
    bool closed4 = true;      // flat-torus builds always satisfy (a)
    bool alpha_constant = false;
    bool t_finite = true;
    bool s_bounded = false;   // max |S| <= 1 over the history
    double max_abs_s = 0;
    bool holds() const { return closed4 && alpha_constant && t_finite && s_bounded; }
};

// Accumulates records plus the running trapezoidal time integrals the theorem
// checks need. chi is the configured Euler characteristic (0 for the torus).
class FlowRecorder {
public:
    FlowRecorder(double C, double chi) : C_(C), chi_(chi) {}

    void add(const FlowState& state);

    double C() const { return C_; }
    double chi() const { return chi_; }
    const std::vector<MonitorRecord>& records() const { return recs_; }

    // initial-data constants, valid once at least one record exists
    double A1() const { return a1_; }
    double vol0() const { return vol0_; }
    double min_s0() const { return min_s0_; }
    double int_f0() const { return int_f0_; }
    double int_sic2_0() const { return int_sic2_0_; }
    double int_f0_over_s0() const { return int_f0_over_s0_; }
    bool alpha_constant() const { return alpha_constant_; }

    // cumulative time integrals aligned with records(): II_x[k] = value at t_k
    const std::vector<double>& II_s2() const { return ii_s2_; }
    const std::vector<double>& II_sic1() const { return ii_sic1_; }
    const std::vector<double>& II_sic2() const { return ii_sic2_; }
    const std::vector<double>& II_sic3() const { return ii_sic3_; }
    const std::vector<double>& II_sic4() const { return ii_sic4_; }
    const std::vector<double>& II_sic4_over() const { return ii_sic4_over_; }
    const std::vector<double>& II_sm2() const { return ii_sm2_; }
    const std::vector<double>& II_vol() const { return ii_vol_; }
    const std::vector<double>& II_a2() const { return ii_a2_; }
    const std::vector<double>& II_f2() const { return ii_f2_; }
    const std::vector<double>& II_f2_ba() const { return ii_f2_ba_; }
    // integral of (-alpha_dot(t)) * int_sc4(t) dt
    const std::vector<double>& II_negadot_sc4() const { return ii_negadot_sc4_; }

private:
    double C_, chi_;
    std::vector<MonitorRecord> recs_;
    double a1_ = 0, vol0_ = 0, min_s0_ = 0, int_f0_ = 0, int_sic2_0_ = 0,
           int_f0_over_s0_ = 0;
    bool alpha_constant_ = true;
    std::vector<double> ii_s2_, ii_sic1_, ii_sic2_, ii_sic3_, ii_sic4_, ii_sic4_over_,
        ii_sm2_, ii_vol_, ii_a2_, ii_f2_, ii_f2_ba_, ii_negadot_sc4_;
};

// ---- bound calculators -------------------------------------------------------
// Each evaluates the printed formula; at s = 0 the closed form is returned
// exactly without evaluating any exponential.

// requires C > 0; the C <= 0 regime is unsupported
double bound_c0(double chi, double C, double alpha, double A1, double vol0,
                double int_f0, double s);
// requires min_M S(0) > 0 mode (caller checks); the C = 0 analog of c0
double bound_a0(double chi, double alpha, double A1, double vol0,
                double int_sic2_over_s0, double s);
double bound_b(double int_sic2_0, double chi, double alpha, double A1, double vol0,
               double s);
double bound_c(double int_sic2_0, double chi, double alpha, double A1, double vol0,
               double T);

// ---- inequality suites -------------------------------------------------------
// Each returns one result per inequality with the worst slack over the history.
// Pass tolerance: slack >= -1e-6 * |RHS|. Hypothesis violations give
// NotApplicable, never Fail.

std::vector<SlackResult> check_energy_38(const FlowRecorder& rec);
std::vector<SlackResult> check_theorem_32(const FlowRecorder& rec);
std::vector<SlackResult> check_theorem_33(const FlowRecorder& rec);
std::vector<SlackResult> check_theorem_34(const FlowRecorder& rec);
std::vector<SlackResult> check_theorem_35(const FlowRecorder& rec);
// the alpha-varying extension estimate; reported without pass/fail thresholds
std::vector<SlackResult> check_section4(const FlowRecorder& rec);

BAReport check_BA(const FlowRecorder& rec);

// max over record intervals of |dVol/dt + avg integral of S dV| (difference
// quotients; the volume identity d/dt Vol = -int S dV)
double vol_identity_max_error(const FlowRecorder& rec);

// ---- CSV emission ------------------------------------------------------------

void write_monitor_csv(const std::string& path, const FlowRecorder& rec);
void write_slack_csv(const std::string& path, const std::vector<SlackResult>& rows);

}  // namespace rhf
