#pragma once

// Flat key=value run configuration. Lines are "key = value"; '#' starts a
// comment; unknown keys and malformed values raise ConfigError naming the
// field. Command-line overrides reuse the same keys.

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace rhf {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string mode = "flow";  // verify-identities | flow | convergence | bounds-only

    // grid
    std::array<int, 4> dims = {16, 1, 1, 1};
    std::array<double, 4> lengths = {6.283185307179586476925286766559,
                                     6.283185307179586476925286766559,
                                     6.283185307179586476925286766559,
                                     6.283185307179586476925286766559};
    int fd_order = 2;

    // initial data: named profile or snapshot files (snapshots win if set)
    std::string profile = "conformal-sine";  // flat | conformal-sine | anisotropic-sine | phi-sine
    double epsilon = 0.05;        // metric perturbation amplitude
    double amplitude = 0.05;      // phi amplitude for the phi-sine profile
    double phi_amplitude = -1.0;  // phi overlay on any profile; <0 means profile default
    int phi_axis = 0;             // coordinate axis k of the phi sine
    std::string metric_snapshot;  // optional snapshot paths
    std::string phi_snapshot;

    // alpha schedule: constant alpha, or linear decrease to alpha_final by alpha_t1
    double alpha = 1.0;
    double alpha_final = -1.0;  // <0 disables the decreasing schedule
    double alpha_t1 = 0.0;

    // flow controls
    double C_override = -1.0;  // <=0 means "derive from initial data"
    double chi = 0.0;          // Euler characteristic (0 for the torus)
    double t_end = 0.1;
    double dt = 0.0;  // 0 means use the stability bound each step
    int record_every = 10;

    // verify-identities
    std::uint64_t seed = 0;
    int samples = 10000;

    // bounds-only scalar inputs
    double b_alpha = 1.0, b_A1 = 1.0, b_vol0 = 1.0, b_C = 1.0;
    double b_int_f0 = 0.0, b_int_sic2_0 = 0.0, b_int_sic2_over_s0 = 0.0;
    std::vector<double> b_s = {0.0, 0.01, 0.05, 0.1};

    std::string out = "out";
};

// Parses the file if path is non-empty, then applies overrides ("key=value"
// strings) in order. Validates mode/profile names and basic invariants.
RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides);

// applies one "key=value" assignment; throws ConfigError naming the key
void apply_assignment(RunConfig& cfg, const std::string& assignment);

void validate(const RunConfig& cfg);

}  // namespace rhf
