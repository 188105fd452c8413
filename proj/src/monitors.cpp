#include "rhf/monitors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace rhf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSlackTol = 1e-6;  // pass iff slack >= -kSlackTol * |RHS|
const double kNaN = std::numeric_limits<double>::quiet_NaN();

SlackStatus judge(double slack, double rhs) {
    return slack >= -kSlackTol * std::abs(rhs) ? SlackStatus::Pass : SlackStatus::Fail;
}

// tracks the worst (minimum) slack over the history for one inequality
struct WorstSlack {
    std::string id;
    double s = 0, lhs = 0, rhs = 0, slack = std::numeric_limits<double>::infinity();
    bool any = false;
    void consider(double s_, double lhs_, double rhs_) {
        const double sl = rhs_ - lhs_;
        if (!any || sl < slack) {
            s = s_;
            lhs = lhs_;
            rhs = rhs_;
            slack = sl;
            any = true;
        }
    }
    SlackResult result(SlackStatus forced = SlackStatus::NotApplicable,
                       bool use_forced = false) const {
        SlackResult r;
        r.id = id;
        r.s = s;
        r.lhs = lhs;
        r.rhs = rhs;
        r.slack = any ? slack : 0.0;
        r.status = use_forced ? forced : (any ? judge(slack, rhs) : SlackStatus::NotApplicable);
        return r;
    }
};

SlackResult not_applicable(const std::string& id) {
    SlackResult r;
    r.id = id;
    r.status = SlackStatus::NotApplicable;
    return r;
}

}  // namespace

const char* to_string(SlackStatus s) {
    switch (s) {
        case SlackStatus::Pass: return "pass";
        case SlackStatus::Fail: return "fail";
        case SlackStatus::NotApplicable: return "not-applicable";
        case SlackStatus::Reported: return "reported";
    }
    return "?";
}

Ten3 z_tensor(const FlowState& state, const DerivedFields& d,
              const std::array<int, 4>& idx, double C) {
    const auto [mp, pj] = jets_at(state.g, state.phi, idx);
    (void)pj;
    const Ten3 gamma = christoffel(mp);
    const Ten3 grad_sic = cov_deriv_tensor(state.g.grid, d.sic, idx, gamma);
    const Vec4 grad_s = fd_grad_scalar(state.g.grid, d.s.data, idx);
    const std::size_t p = state.g.grid.flat(idx);
    const double v = d.s.at(p) + C;
    Ten3 z{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                z[i][j][k] = v * grad_sic[i][j][k] -
                             d.sic[p * 16 + j * 4 + k] * grad_s[i];
    return z;
}

GaussBonnetResult gauss_bonnet_residual(const FlowState& state) {
    const TorusGrid& grid = state.g.grid;
    const double alpha = state.schedule.value(state.t);
    const double cell = grid.h[0] * grid.h[1] * grid.h[2] * grid.h[3];
    GaussBonnetResult out{0.0, 0.0};
    for (std::size_t p = 0; p < grid.npoints(); ++p) {
        const auto idx = grid.unflat(p);
        const auto [mp, pj] = jets_at(state.g, state.phi, idx);
        const CurvatureBundle b = curvature_bundle(mp, pj, alpha);
        const Contractions c = contractions(b, mp.g, mp.g_inv, pj.dphi, alpha);
        const double det = mat_det(mp.g);
        if (!(det > 0.0)) throw DegenerateMetricError("non-positive det in monitors");
        const double w = std::sqrt(det) * cell;
        const double direct = c.rm_norm2 - 4.0 * c.ric_norm2 + b.r_scalar * b.r_scalar;
        const double twisted = c.sm_norm2 - 4.0 * c.sic_norm2 +
                               b.s_scalar * b.s_scalar -
                               6.5 * alpha * alpha * b.grad_norm2 * b.grad_norm2 -
                               9.0 * alpha * c.sic_gradphi +
                               2.0 * alpha * b.s_scalar * b.grad_norm2;
        out.direct += w * direct;
        out.twisted += w * twisted;
    }
    return out;
}

MonitorRecord monitor_record(const FlowState& state, double C) {
    const TorusGrid& grid = state.g.grid;
    const double alpha = state.schedule.value(state.t);
    const double cell = grid.h[0] * grid.h[1] * grid.h[2] * grid.h[3];

    MonitorRecord r;
    r.t = state.t;
    r.alpha = alpha;
    r.alpha_dot = state.schedule.derivative(state.t);

    bool first = true;
    bool ba_ok = true;      // S + 2 > 0 everywhere
    bool s_positive = true; // S > 0 everywhere
    for (std::size_t p = 0; p < grid.npoints(); ++p) {
        const auto idx = grid.unflat(p);
        const auto [mp, pj] = jets_at(state.g, state.phi, idx);
        const CurvatureBundle b = curvature_bundle(mp, pj, alpha);
        const Contractions c = contractions(b, mp.g, mp.g_inv, pj.dphi, alpha);
        const double det = mat_det(mp.g);
        if (!(det > 0.0)) throw DegenerateMetricError("non-positive det in monitors");
        const double w = std::sqrt(det) * cell;

        const double s = b.s_scalar;
        const double v = s + C;
        if (!(v > 0.0))
            throw MonitorError("S + C <= 0 at t=" + std::to_string(state.t) +
                               ", grid point " + std::to_string(p));
        const double sic2 = c.sic_norm2;
        const double abs_sic = std::sqrt(std::max(0.0, sic2));
        const double hess2 = mat_dot(b.hess_phi, b.hess_phi, mp.g_inv);

        if (first) {
            r.min_s = r.max_s = s;
            first = false;
        } else {
            r.min_s = std::min(r.min_s, s);
            r.max_s = std::max(r.max_s, s);
        }
        r.max_gradphi2 = std::max(r.max_gradphi2, b.grad_norm2);

        r.vol += w;
        r.int_s += w * s;
        r.int_gradphi2 += w * b.grad_norm2;
        r.a2 += w * hess2;
        r.int_f += w * sic2 / v;
        r.int_f2 += w * (sic2 / v) * (sic2 / v);
        r.int_s2 += w * s * s;
        r.int_abs_sic += w * abs_sic;
        r.int_sic2 += w * sic2;
        r.int_sic3 += w * sic2 * abs_sic;
        r.int_sic4 += w * sic2 * sic2;
        r.int_sic4_over += w * sic2 * sic2 / (v * v);
        r.int_sm2 += w * c.sm_norm2;
        r.int_sc4 += w * v * v * v * v;
        if (s + 2.0 > 0.0) {
            r.int_f_ba += w * sic2 / (s + 2.0);
            r.int_f2_ba += w * (sic2 / (s + 2.0)) * (sic2 / (s + 2.0));
        } else {
            ba_ok = false;
        }
        if (s > 0.0)
            r.int_sic2_over_s += w * sic2 / s;
        else
            s_positive = false;

        const double direct = c.rm_norm2 - 4.0 * c.ric_norm2 + b.r_scalar * b.r_scalar;
        const double twisted = c.sm_norm2 - 4.0 * sic2 + s * s -
                               6.5 * alpha * alpha * b.grad_norm2 * b.grad_norm2 -
                               9.0 * alpha * c.sic_gradphi + 2.0 * alpha * s * b.grad_norm2;
        r.gb_direct += w * direct;
        r.gb_twisted += w * twisted;

        const double sin_norm = std::sqrt(std::max(0.0, c.sin_norm2));
        const double w_norm = std::sqrt(std::max(0.0, c.weyl_norm2));
        r.pinching_lhs = std::max(r.pinching_lhs, sin_norm / v);
        r.pinching_ratio = std::max(r.pinching_ratio, (w_norm + hess2) / v);
    }
    if (!ba_ok) r.int_f_ba = r.int_f2_ba = kNaN;
    if (!s_positive) r.int_sic2_over_s = kNaN;
    return r;
}

void FlowRecorder::add(const FlowState& state) {
    const MonitorRecord r = monitor_record(state, C_);
    if (recs_.empty()) {
        a1_ = r.max_gradphi2;
        vol0_ = r.vol;
        min_s0_ = r.min_s;
        int_f0_ = r.int_f;
        int_sic2_0_ = r.int_sic2;
        int_f0_over_s0_ = r.int_sic2_over_s;
        ii_s2_.push_back(0);
        ii_sic1_.push_back(0);
        ii_sic2_.push_back(0);
        ii_sic3_.push_back(0);
        ii_sic4_.push_back(0);
        ii_sic4_over_.push_back(0);
        ii_sm2_.push_back(0);
        ii_vol_.push_back(0);
        ii_a2_.push_back(0);
        ii_f2_.push_back(0);
        ii_f2_ba_.push_back(0);
        ii_negadot_sc4_.push_back(0);
    } else {
        const MonitorRecord& q = recs_.back();
        if (!(r.t > q.t)) throw MonitorError("records must be added in increasing time");
        if (r.alpha != recs_[0].alpha || r.alpha_dot != 0.0) alpha_constant_ = false;
        const double hdt = 0.5 * (r.t - q.t);
        ii_s2_.push_back(ii_s2_.back() + hdt * (r.int_s2 + q.int_s2));
        ii_sic1_.push_back(ii_sic1_.back() + hdt * (r.int_abs_sic + q.int_abs_sic));
        ii_sic2_.push_back(ii_sic2_.back() + hdt * (r.int_sic2 + q.int_sic2));
        ii_sic3_.push_back(ii_sic3_.back() + hdt * (r.int_sic3 + q.int_sic3));
        ii_sic4_.push_back(ii_sic4_.back() + hdt * (r.int_sic4 + q.int_sic4));
        ii_sic4_over_.push_back(ii_sic4_over_.back() +
                                hdt * (r.int_sic4_over + q.int_sic4_over));
        ii_sm2_.push_back(ii_sm2_.back() + hdt * (r.int_sm2 + q.int_sm2));
        ii_vol_.push_back(ii_vol_.back() + hdt * (r.vol + q.vol));
        ii_a2_.push_back(ii_a2_.back() + hdt * (r.a2 + q.a2));
        ii_f2_.push_back(ii_f2_.back() + hdt * (r.int_f2 + q.int_f2));
        ii_f2_ba_.push_back(ii_f2_ba_.back() + hdt * (r.int_f2_ba + q.int_f2_ba));
        ii_negadot_sc4_.push_back(ii_negadot_sc4_.back() +
                                  hdt * ((-r.alpha_dot) * r.int_sc4 +
                                         (-q.alpha_dot) * q.int_sc4));
    }
    recs_.push_back(r);
}

// ---- bound calculators -------------------------------------------------------

double bound_c0(double chi, double C, double alpha, double A1, double vol0,
                double int_f0, double s) {
    if (!(C > 0.0)) throw MonitorError("bound_c0 requires C > 0 (C <= 0 unsupported)");
    if (s == 0.0) return alpha * A1 * vol0 + int_f0;
    return (256.0 * kPi * kPi * chi / (36.0 * C)) * (std::exp(36.0 * C * s) - 1.0) +
           (104.0 * alpha * alpha * A1 * A1 * vol0 / (35.0 * C)) *
               (std::exp(35.0 * C * s) - std::exp(C * s)) +
           std::exp(37.0 * C * s) * alpha * A1 * vol0 +
           std::exp(36.0 * C * s) * int_f0;
}

double bound_a0(double chi, double alpha, double A1, double vol0,
                double int_sic2_over_s0, double s) {
    return 256.0 * kPi * kPi * chi * s + 104.0 * (alpha * A1) * (alpha * A1) * vol0 * s +
           alpha * A1 * vol0 + int_sic2_over_s0;
}

double bound_b(double int_sic2_0, double chi, double alpha, double A1, double vol0,
               double s) {
    if (s == 0.0) return 9.0 * (int_sic2_0 + alpha * A1 * vol0);
    const double aa1 = alpha * A1;
    return 9.0 * std::exp(88.0 * s) * int_sic2_0 +
           (1152.0 / 88.0) * kPi * kPi * chi * (std::exp(88.0 * s) - 1.0) +
           (468.0 / 86.0) * aa1 * aa1 * vol0 * (std::exp(88.0 * s) - std::exp(2.0 * s)) +
           9.0 * aa1 * vol0 * std::exp(90.0 * s);
}

double bound_c(double int_sic2_0, double chi, double alpha, double A1, double vol0,
               double T) {
    const double aa1 = alpha * A1;
    const double core = int_sic2_0 + kPi * kPi * std::abs(chi) +
                        (aa1 * aa1 + aa1) * vol0;
    if (T == 0.0) return 9.0 * core;
    return 9.0 * std::exp(90.0 * T) * core;
}

// ---- inequality suites -------------------------------------------------------

std::vector<SlackResult> check_energy_38(const FlowRecorder& rec) {
    if (rec.records().empty()) throw MonitorError("empty history");
    WorstSlack w;
    w.id = "3.8";
    const auto& rs = rec.records();
    for (std::size_t k = 0; k < rs.size(); ++k) {
        const double t = rs[k].t - rs[0].t;  // elapsed time from the first record
        const double lhs = 2.0 * rec.II_a2()[k] + rs[k].int_gradphi2;
        const double rhs = std::exp(rec.C() * t) * rec.A1() * rec.vol0();
        w.consider(t, lhs, rhs);
    }
    return {w.result()};
}

std::vector<SlackResult> check_theorem_32(const FlowRecorder& rec) {
    const std::vector<std::string> ids = {"3.17", "3.18", "3.19", "3.20"};
    const auto& rs = rec.records();
    if (rs.empty()) throw MonitorError("empty history");
    const double alpha = rs[0].alpha;
    if (!rec.alpha_constant() || !(alpha > 0.0) || !(rec.C() > 0.0)) {
        std::vector<SlackResult> out;
        for (const auto& id : ids) out.push_back(not_applicable(id));
        return out;
    }
    const double C = rec.C(), chi = rec.chi(), A1 = rec.A1(), vol0 = rec.vol0();
    WorstSlack w17, w18, w19, w20;
    w17.id = ids[0];
    w18.id = ids[1];
    w19.id = ids[2];
    w20.id = ids[3];
    for (std::size_t k = 0; k < rs.size(); ++k) {
        const double s = rs[k].t - rs[0].t;
        const double c0 = bound_c0(chi, C, alpha, A1, vol0, rec.int_f0(), s);
        const double e36 = std::exp(36.0 * C * s);
        w17.consider(s, rs[k].int_f + rec.II_sic4_over()[k],
                     c0 + 574.0 * e36 * rec.II_s2()[k]);
        w18.consider(s, rs[k].int_abs_sic,
                     2.0 * c0 + 0.5 * C * rs[k].vol + 1148.0 * e36 * rec.II_s2()[k]);
        w19.consider(s, rec.II_sic2()[k],
                     8.0 * c0 + 0.25 * C * C * rec.II_vol()[k] +
                         4592.0 * e36 * rec.II_s2()[k]);
        w20.consider(s, rec.II_sm2()[k],
                     (131.0 / 50.0) * C * C * rec.II_vol()[k] +
                         13.0 * alpha * alpha * A1 * A1 * vol0 *
                             (std::exp(C * s) - 1.0) / C +
                         (881.0 / 25.0) * c0 + 32.0 * kPi * kPi * chi * s +
                         ((505694.0 / 25.0) * e36 + 81.0 / 50.0) * rec.II_s2()[k]);
    }
    return {w17.result(), w18.result(), w19.result(), w20.result()};
}

std::vector<SlackResult> check_theorem_33(const FlowRecorder& rec) {
    const std::vector<std::string> ids = {"3.23", "3.24", "3.25"};
    const auto& rs = rec.records();
    if (rs.empty()) throw MonitorError("empty history");
    const double alpha = rs[0].alpha;
    if (!rec.alpha_constant() || !(alpha > 0.0) || !(rec.min_s0() > 0.0) ||
        !std::isfinite(rec.int_f0_over_s0())) {
        std::vector<SlackResult> out;
        for (const auto& id : ids) out.push_back(not_applicable(id));
        return out;
    }
    const double chi = rec.chi(), A1 = rec.A1(), vol0 = rec.vol0();
    WorstSlack w23, w24, w25;
    w23.id = ids[0];
    w24.id = ids[1];
    w25.id = ids[2];
    for (std::size_t k = 0; k < rs.size(); ++k) {
        const double s = rs[k].t - rs[0].t;
        const double a0 = bound_a0(chi, alpha, A1, vol0, rec.int_f0_over_s0(), s);
        w23.consider(s, rs[k].int_abs_sic, 2.0 * a0 + 1148.0 * rec.II_s2()[k]);
        w24.consider(s, rec.II_sic2()[k], 8.0 * a0 + 4592.0 * rec.II_s2()[k]);
        w25.consider(s, rec.II_sm2()[k],
                     32.0 * kPi * kPi * chi * s +
                         13.0 * (alpha * A1) * (alpha * A1) * vol0 * s +
                         (881.0 / 25.0) * a0 + (1011469.0 / 50.0) * rec.II_s2()[k]);
    }
    return {w23.result(), w24.result(), w25.result()};
}

std::vector<SlackResult> check_theorem_34(const FlowRecorder& rec) {
    const auto& rs = rec.records();
    if (rs.empty()) throw MonitorError("empty history");
    const BAReport ba = check_BA(rec);
    if (!ba.holds() || rs.size() < 2 || !std::isfinite(rs[0].int_f_ba))
        return {not_applicable("3.27")};
    const double alpha = rs[0].alpha, chi = rec.chi(), A1 = rec.A1(), vol0 = rec.vol0();
    WorstSlack w;
    w.id = "3.27";
    for (std::size_t k = 0; k + 1 < rs.size(); ++k) {
        const double dt = rs[k + 1].t - rs[k].t;
        const double lhs = (rs[k + 1].int_f_ba - rs[k].int_f_ba) / dt;
        const auto rhs_at = [&](const MonitorRecord& r) {
            return -r.int_f2_ba + 88.0 * r.int_f_ba + 128.0 * kPi * kPi * chi +
                   52.0 * (alpha * A1) * (alpha * A1) * vol0 * std::exp(2.0 * (r.t - rs[0].t)) +
                   2.0 * alpha * r.a2;
        };
        const double rhs = 0.5 * (rhs_at(rs[k]) + rhs_at(rs[k + 1]));
        w.consider(0.5 * (rs[k].t + rs[k + 1].t) - rs[0].t, lhs, rhs);
    }
    return {w.result()};
}

std::vector<SlackResult> check_theorem_35(const FlowRecorder& rec) {
    const std::vector<std::string> ids = {"3.28", "3.29",      "3.30",
                                          "3.31(p=1)", "3.31(p=2)", "3.31(p=3)"};
    const auto& rs = rec.records();
    if (rs.empty()) throw MonitorError("empty history");
    const BAReport ba = check_BA(rec);
    if (!ba.holds()) {
        std::vector<SlackResult> out;
        for (const auto& id : ids) out.push_back(not_applicable(id));
        return out;
    }
    const double alpha = rs[0].alpha, chi = rec.chi(), A1 = rec.A1(), vol0 = rec.vol0();
    const double T = rs.back().t - rs[0].t;
    WorstSlack w28, w29, w30;
    w28.id = ids[0];
    w29.id = ids[1];
    w30.id = ids[2];
    std::array<WorstSlack, 3> w31;
    for (int p = 1; p <= 3; ++p) w31[p - 1].id = ids[2 + p];
    const double bT = bound_b(rec.int_sic2_0(), chi, alpha, A1, vol0, T);
    const std::array<const std::vector<double>*, 3> ii_p = {&rec.II_sic1(), &rec.II_sic2(),
                                                            &rec.II_sic3()};
    for (std::size_t k = 0; k < rs.size(); ++k) {
        const double s = rs[k].t - rs[0].t;
        const double bs = bound_b(rec.int_sic2_0(), chi, alpha, A1, vol0, s);
        w28.consider(s, rs[k].int_sic2, bs);
        w29.consider(s, rs[k].int_sm2,
                     32.0 * kPi * kPi * chi +
                         13.0 * (alpha * A1) * (alpha * A1) * vol0 * std::exp(2.0 * s) +
                         (185.0 / 26.0) * bs);
        w30.consider(s, rec.II_sic4()[k], bs);
        if (s < T) {
            for (int p = 1; p <= 3; ++p) {
                const double lhs = ii_p[p - 1]->back() - (*ii_p[p - 1])[k];
                const double rhs = std::pow(std::abs(bT), p / 4.0) *
                                   std::exp(T * (4.0 - p) / 4.0) *
                                   std::pow(vol0, (4.0 - p) / 4.0) *
                                   std::pow(T - s, (4.0 - p) / 4.0);
                w31[p - 1].consider(s, lhs, rhs);
            }
        }
    }
    return {w28.result(),    w29.result(),    w30.result(),
            w31[0].result(), w31[1].result(), w31[2].result()};
}

std::vector<SlackResult> check_section4(const FlowRecorder& rec) {
    const auto& rs = rec.records();
    if (rs.empty()) throw MonitorError("empty history");
    if (rec.alpha_constant()) return {not_applicable("4.5")};
    if (!(rec.C() > 0.0)) return {not_applicable("4.5")};
    const double alpha0 = rs[0].alpha, chi = rec.chi(), A1 = rec.A1(), vol0 = rec.vol0();
    const double C = rec.C();
    WorstSlack w;
    w.id = "4.5";
    for (std::size_t k = 0; k < rs.size(); ++k) {
        const double s = rs[k].t - rs[0].t;
        const double c0 = bound_c0(chi, C, alpha0, A1, vol0, rec.int_f0(), s);
        const double e36 = std::exp(36.0 * C * s);
        w.consider(s, rs[k].int_f + rec.II_sic4_over()[k],
                   c0 + 574.0 * e36 * rec.II_s2()[k] + e36 * rec.II_negadot_sc4()[k]);
    }
    // reported without a pass/fail verdict: the paper states (4.5) without
    // worked constants for the general schedule
    return {w.result(SlackStatus::Reported, true)};
}

BAReport check_BA(const FlowRecorder& rec) {
    BAReport r;
    const auto& rs = rec.records();
    r.alpha_constant = rec.alpha_constant() && !rs.empty() && rs[0].alpha > 0.0;
    for (const auto& q : rs)
        r.max_abs_s = std::max(r.max_abs_s, std::max(std::abs(q.min_s), std::abs(q.max_s)));
    r.s_bounded = !rs.empty() && r.max_abs_s <= 1.0;
    return r;
}

double vol_identity_max_error(const FlowRecorder& rec) {
    const auto& rs = rec.records();
    double worst = 0;
    for (std::size_t k = 0; k + 1 < rs.size(); ++k) {
        const double dt = rs[k + 1].t - rs[k].t;
        const double dvol = (rs[k + 1].vol - rs[k].vol) / dt;
        const double int_s_avg = 0.5 * (rs[k].int_s + rs[k + 1].int_s);
        worst = std::max(worst, std::abs(dvol + int_s_avg));
    }
    return worst;
}

// ---- CSV emission ------------------------------------------------------------

namespace {

void fput(std::FILE* f, double v, bool last = false) {
    std::fprintf(f, "%.17g%c", v, last ? '\n' : ',');
}

}  // namespace

void write_monitor_csv(const std::string& path, const FlowRecorder& rec) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw MonitorError("cannot open for writing: " + path);
    std::fprintf(f,
                 "t,alpha,alpha_dot,vol,min_s,max_s,max_gradphi2,int_s,int_gradphi2,a2,"
                 "int_f,int_f2,int_s2,int_abs_sic,int_sic2,int_sic3,int_sic4,"
                 "int_sic4_over,int_sm2,int_sc4,int_f_ba,int_f2_ba,int_sic2_over_s,"
                 "gb_direct,gb_twisted,pinching_lhs,pinching_ratio\n");
    for (const auto& r : rec.records()) {
        fput(f, r.t);
        fput(f, r.alpha);
        fput(f, r.alpha_dot);
        fput(f, r.vol);
        fput(f, r.min_s);
        fput(f, r.max_s);
        fput(f, r.max_gradphi2);
        fput(f, r.int_s);
        fput(f, r.int_gradphi2);
        fput(f, r.a2);
        fput(f, r.int_f);
        fput(f, r.int_f2);
        fput(f, r.int_s2);
        fput(f, r.int_abs_sic);
        fput(f, r.int_sic2);
        fput(f, r.int_sic3);
        fput(f, r.int_sic4);
        fput(f, r.int_sic4_over);
        fput(f, r.int_sm2);
        fput(f, r.int_sc4);
        fput(f, r.int_f_ba);
        fput(f, r.int_f2_ba);
        fput(f, r.int_sic2_over_s);
        fput(f, r.gb_direct);
        fput(f, r.gb_twisted);
        fput(f, r.pinching_lhs);
        fput(f, r.pinching_ratio, true);
    }
    std::fclose(f);
}

void write_slack_csv(const std::string& path, const std::vector<SlackResult>& rows) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw MonitorError("cannot open for writing: " + path);
    std::fprintf(f, "inequality,s,lhs,rhs,slack,status\n");
    for (const auto& r : rows) {
        std::fprintf(f, "%s,", r.id.c_str());
        fput(f, r.s);
        fput(f, r.lhs);
        fput(f, r.rhs);
        fput(f, r.slack);
        std::fprintf(f, "%s\n", to_string(r.status));
    }
    std::fclose(f);
}

}  // namespace rhf
