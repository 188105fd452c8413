#include "rhf/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>

#include "rhf/identities.hpp"

namespace rhf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void ensure_out_dir(const std::string& out) {
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) throw ConfigError("cannot create output directory '" + out + "': " + ec.message());
}

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

}  // namespace

FlowState make_initial_state(const RunConfig& cfg) {
    FlowState state;
    state.t = 0.0;
    state.schedule = cfg.alpha_final >= 0.0
                         ? AlphaSchedule::linear_decreasing(cfg.alpha, cfg.alpha_final,
                                                            cfg.alpha_t1)
                         : AlphaSchedule::constant(cfg.alpha);

    if (!cfg.metric_snapshot.empty()) {
        const Snapshot ms = load_snapshot(cfg.metric_snapshot);
        state.g = metric_from_snapshot(ms);
        if (!cfg.phi_snapshot.empty()) {
            const Snapshot ps = load_snapshot(cfg.phi_snapshot);
            if (!ps.grid.same_as(ms.grid))
                throw ConfigError("metric and phi snapshots use different grids");
            state.phi = scalar_from_snapshot(ps);
        } else {
            state.phi = ScalarField(state.g.grid);
        }
        state.t = ms.time;
    } else {
        const TorusGrid grid(cfg.dims, cfg.lengths, cfg.fd_order);
        state.g = MetricField(grid);
        state.phi = ScalarField(grid);
        const double eps = cfg.epsilon;
        for (std::size_t p = 0; p < grid.npoints(); ++p) {
            const auto idx = grid.unflat(p);
            const double x0 = grid.coord(idx[0], 0);
            Mat4 gm = kIdentity4;
            if (cfg.profile == "conformal-sine") {
                const double c = std::exp(2.0 * eps * std::sin(kTwoPi * x0 / grid.lengths[0]));
                for (int d = 0; d < 4; ++d) gm[d][d] = c;
            } else if (cfg.profile == "anisotropic-sine") {
                for (int d = 0; d < 4; ++d)
                    gm[d][d] = 1.0 + eps * std::sin(kTwoPi * x0 / grid.lengths[0] +
                                                    0.5 * std::numbers::pi * d);
            }
            state.g.set(p, gm);
        }
        const double a =
            cfg.phi_amplitude >= 0.0 ? cfg.phi_amplitude
                                     : (cfg.profile == "phi-sine" ? cfg.amplitude : 0.0);
        if (a != 0.0) {
            const int k = cfg.phi_axis;
            for (std::size_t p = 0; p < grid.npoints(); ++p) {
                const auto idx = grid.unflat(p);
                state.phi.at(p) = a * std::sin(kTwoPi * grid.coord(idx[k], k) /
                                               grid.lengths[k]);
            }
        }
    }

    for (std::size_t p = 0; p < state.g.grid.npoints(); ++p)
        if (!is_spd(state.g.mat(p)))
            throw ConfigError("initial metric is not positive definite at grid point " +
                              std::to_string(p) + " (reduce the perturbation amplitude)");
    return state;
}

double choose_C(const RunConfig& cfg, const FlowState& initial) {
    if (cfg.C_override > 0.0) return cfg.C_override;
    const DerivedFields d = compute_derived(initial, 0.0);
    const auto [lo, hi] = extrema(d.s);
    (void)hi;
    return std::max(0.0, -lo) + 1.0;
}

// ---- verify-identities --------------------------------------------------------

int run_verify_identities(const RunConfig& cfg, std::ostream& log) {
    ensure_out_dir(cfg.out);
    const auto rows = run_identity_batch(cfg.seed, std::uint64_t(cfg.samples));
    const auto threshold = [](const std::string& name) {
        // the decomposition checks carry a relaxed budget: they are evaluated in
        // plain double precision where the pinned input ranges cost ~1 digit
        return (name == "weyl_decomposition_2_15" || name == "contraction_expansion_2_16")
                   ? 1e-11
                   : 1e-12;
    };
    std::ofstream csv(join(cfg.out, "identities.csv"), std::ios::binary);
    if (!csv) throw ConfigError("cannot write identities.csv");
    csv << "check,seeds,max_residual,threshold,status\n";
    int status = 0;
    char buf[64];
    for (const auto& r : rows) {
        const double tol = threshold(r.name);
        const bool ok = r.max_residual < tol;
        if (!ok) status = 1;
        std::snprintf(buf, sizeof buf, "%.17g", r.max_residual);
        csv << r.name << ',' << r.seeds_run << ',' << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", tol);
        csv << buf << ',' << (ok ? "pass" : "fail") << '\n';
        log << "identity " << r.name << ": max residual " << r.max_residual << " over "
            << r.seeds_run << " seeds -> " << (ok ? "pass" : "FAIL") << "\n";
    }
    return status;
}

// ---- flow ----------------------------------------------------------------------

int run_flow(const RunConfig& cfg, std::ostream& log) {
    ensure_out_dir(cfg.out);
    FlowState state = make_initial_state(cfg);
    const double C = choose_C(cfg, state);
    log << "flow: C = " << C << ", alpha(0) = " << state.schedule.value(state.t)
        << ", t_end = " << cfg.t_end << "\n";

    save_snapshot(join(cfg.out, "metric_initial.rhf1"), state.g, state.t);
    save_snapshot(join(cfg.out, "phi_initial.rhf1"), state.phi, state.t);

    FlowRecorder rec(C, cfg.chi);
    rec.add(state);
    const double t0 = state.t, t_end = state.t + cfg.t_end;
    long steps = 0;
    try {
        double last_recorded = state.t;
        while (state.t < t_end - 1e-14 * (1.0 + std::abs(t_end))) {
            double dt = cfg.dt > 0.0 ? cfg.dt : dt_max(state);
            dt = std::min(dt, t_end - state.t);
            state = advance(state, dt);
            ++steps;
            const bool at_end = state.t >= t_end - 1e-14 * (1.0 + std::abs(t_end));
            if ((steps % cfg.record_every == 0 || at_end) && state.t > last_recorded) {
                rec.add(state);
                last_recorded = state.t;
            }
        }
    } catch (const std::exception& e) {
        // partial artifacts plus a failure record, then propagate for exit 2
        write_monitor_csv(join(cfg.out, "monitor.csv"), rec);
        std::ofstream fail(join(cfg.out, "failure.txt"), std::ios::binary);
        fail << "flow aborted at t = " << state.t << " after " << steps
             << " steps: " << e.what() << "\n";
        throw;
    }
    (void)t0;

    save_snapshot(join(cfg.out, "metric_final.rhf1"), state.g, state.t);
    save_snapshot(join(cfg.out, "phi_final.rhf1"), state.phi, state.t);
    write_monitor_csv(join(cfg.out, "monitor.csv"), rec);

    std::vector<SlackResult> slacks;
    for (auto&& batch : {check_energy_38(rec), check_theorem_32(rec), check_theorem_33(rec),
                         check_theorem_34(rec), check_theorem_35(rec), check_section4(rec)})
        slacks.insert(slacks.end(), batch.begin(), batch.end());
    write_slack_csv(join(cfg.out, "slacks.csv"), slacks);

    const BAReport ba = check_BA(rec);
    log << "flow: " << steps << " steps, " << rec.records().size() << " records\n";
    log << "flow: bounded-assumption regime " << (ba.holds() ? "holds" : "does not hold")
        << " (max |S| = " << ba.max_abs_s << ")\n";
    log << "flow: volume identity max error " << vol_identity_max_error(rec) << "\n";
    const auto& last = rec.records().back();
    log << "flow: Gauss-Bonnet integrand routes " << last.gb_direct << " vs "
        << last.gb_twisted << "\n";

    int status = 0;
    for (const auto& s : slacks) {
        log << "slack " << s.id << ": lhs " << s.lhs << " rhs " << s.rhs << " slack "
            << s.slack << " at s = " << s.s << " -> " << to_string(s.status) << "\n";
        if (s.status == SlackStatus::Fail) status = 1;
    }
    return status;
}

// ---- convergence ----------------------------------------------------------------

double fit_order(const std::vector<double>& h, const std::vector<double>& err) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double x = std::log(h[i]), y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int run_convergence(const RunConfig& cfg, std::ostream& log) {
    ensure_out_dir(cfg.out);
    const std::vector<int> ladder = {16, 32, 64};
    const std::size_t nq = 4;
    const char* names[nq] = {"residual_2_5", "residual_2_6", "residual_3_6", "residual_4_1"};
    // the mixed-curvature equation (2.6) is reported but not gated
    const bool gated[nq] = {true, false, true, true};

    std::vector<double> hs;
    std::vector<std::array<double, nq>> errs;
    double C = 0.0;
    for (int n : ladder) {
        RunConfig level = cfg;
        level.dims = {n, 1, 1, 1};
        const FlowState s0 = make_initial_state(level);
        if (C == 0.0) C = choose_C(cfg, s0);
        const double h = s0.g.grid.h[0];
        const double dt = 0.02 * h * h;
        const FlowState s1 = step_rk4(s0, dt);
        const FlowState s2 = step_rk4(s1, dt);
        const EvolutionResiduals r = evolution_residuals(s0, s1, s2, C);
        hs.push_back(h);
        errs.push_back({r.s_max, r.sic_max, r.gradphi_max, r.f_max});
        log << "convergence: N = " << n << ", h = " << h << ", residuals " << r.s_max
            << " " << r.sic_max << " " << r.gradphi_max << " " << r.f_max << "\n";
    }

    std::ofstream csv(join(cfg.out, "convergence.csv"), std::ios::binary);
    if (!csv) throw ConfigError("cannot write convergence.csv");
    csv << "N,h";
    for (auto* nm : names) csv << ',' << nm;
    csv << '\n';
    char buf[64];
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        csv << ladder[i];
        std::snprintf(buf, sizeof buf, "%.17g", hs[i]);
        csv << ',' << buf;
        for (std::size_t q = 0; q < nq; ++q) {
            std::snprintf(buf, sizeof buf, "%.17g", errs[i][q]);
            csv << ',' << buf;
        }
        csv << '\n';
    }

    std::ofstream ocsv(join(cfg.out, "convergence_orders.csv"), std::ios::binary);
    ocsv << "quantity,fitted_order,threshold,status\n";
    const double min_order = cfg.fd_order - 0.3;
    int status = 0;
    for (std::size_t q = 0; q < nq; ++q) {
        std::vector<double> e;
        double emax = 0;
        for (const auto& row : errs) {
            e.push_back(row[q]);
            emax = std::max(emax, row[q]);
        }
        // a residual that is identically zero (e.g. phi absent) trivially converges
        const bool trivial = emax < 1e-14;
        const double order = trivial ? std::numeric_limits<double>::infinity()
                                     : fit_order(hs, e);
        const bool ok = trivial || order >= min_order;
        const char* st = !gated[q] ? "reported" : (ok ? "pass" : "fail");
        if (gated[q] && !ok) status = 1;
        std::snprintf(buf, sizeof buf, "%.17g", order);
        ocsv << names[q] << ',' << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", min_order);
        ocsv << buf << ',' << st << '\n';
        log << "convergence: " << names[q] << " fitted order " << order << " (need >= "
            << min_order << ") -> " << st << "\n";
    }
    return status;
}

// ---- bounds-only -----------------------------------------------------------------

int run_bounds_only(const RunConfig& cfg, std::ostream& log) {
    ensure_out_dir(cfg.out);
    if (!(cfg.b_C > 0.0)) throw ConfigError("config field 'bounds_C': must be > 0");
    std::ofstream csv(join(cfg.out, "bounds.csv"), std::ios::binary);
    if (!csv) throw ConfigError("cannot write bounds.csv");
    csv << "s,c0,a0,b,c\n";
    char buf[64];
    for (double s : cfg.b_s) {
        if (s < 0.0) throw ConfigError("config field 'bounds_s': entries must be >= 0");
        const double c0 = bound_c0(cfg.chi, cfg.b_C, cfg.b_alpha, cfg.b_A1, cfg.b_vol0,
                                   cfg.b_int_f0, s);
        const double a0 = bound_a0(cfg.chi, cfg.b_alpha, cfg.b_A1, cfg.b_vol0,
                                   cfg.b_int_sic2_over_s0, s);
        const double b = bound_b(cfg.b_int_sic2_0, cfg.chi, cfg.b_alpha, cfg.b_A1,
                                 cfg.b_vol0, s);
        const double c = bound_c(cfg.b_int_sic2_0, cfg.chi, cfg.b_alpha, cfg.b_A1,
                                 cfg.b_vol0, s);
        std::snprintf(buf, sizeof buf, "%.17g", s);
        csv << buf;
        for (double v : {c0, a0, b, c}) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            csv << ',' << buf;
        }
        csv << '\n';
        log << "bounds: s = " << s << ", c0 = " << c0 << ", a0 = " << a0 << ", b = " << b
            << ", c = " << c << "\n";
    }
    return 0;
}

int run(const RunConfig& cfg, std::ostream& log) {
    if (cfg.mode == "verify-identities") return run_verify_identities(cfg, log);
    if (cfg.mode == "flow") return run_flow(cfg, log);
    if (cfg.mode == "convergence") return run_convergence(cfg, log);
    if (cfg.mode == "bounds-only") return run_bounds_only(cfg, log);
    throw ConfigError("unknown mode '" + cfg.mode + "'");
}

}  // namespace rhf
