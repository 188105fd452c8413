#include "rhf/config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace rhf {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config field '" + key + "': bad numeric value '" + v + "'");
    }
}

long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config field '" + key + "': bad integer value '" + v + "'");
    }
}

std::vector<std::string> split_commas(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

template <typename T, std::size_t N>
void parse_tuple4(const std::string& key, const std::string& v, std::array<T, N>& dst,
                  bool integer) {
    const auto parts = split_commas(v);
    if (parts.size() != N)
        throw ConfigError("config field '" + key + "': expected " + std::to_string(N) +
                          " comma-separated values");
    for (std::size_t i = 0; i < N; ++i)
        dst[i] = integer ? T(parse_int(key, parts[i])) : T(parse_double(key, parts[i]));
}

}  // namespace

void apply_assignment(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("expected key=value, got '" + assignment + "'");
    const std::string key = trim(assignment.substr(0, eq));
    const std::string val = trim(assignment.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key in '" + assignment + "'");

    if (key == "mode") cfg.mode = val;
    else if (key == "dims") parse_tuple4(key, val, cfg.dims, true);
    else if (key == "lengths") parse_tuple4(key, val, cfg.lengths, false);
    else if (key == "fd_order") cfg.fd_order = int(parse_int(key, val));
    else if (key == "profile") cfg.profile = val;
    else if (key == "epsilon") cfg.epsilon = parse_double(key, val);
    else if (key == "amplitude") cfg.amplitude = parse_double(key, val);
    else if (key == "phi_amplitude") cfg.phi_amplitude = parse_double(key, val);
    else if (key == "phi_axis") cfg.phi_axis = int(parse_int(key, val));
    else if (key == "metric_snapshot") cfg.metric_snapshot = val;
    else if (key == "phi_snapshot") cfg.phi_snapshot = val;
    else if (key == "alpha") cfg.alpha = parse_double(key, val);
    else if (key == "alpha_final") cfg.alpha_final = parse_double(key, val);
    else if (key == "alpha_t1") cfg.alpha_t1 = parse_double(key, val);
    else if (key == "C") cfg.C_override = parse_double(key, val);
    else if (key == "chi") cfg.chi = parse_double(key, val);
    else if (key == "t_end") cfg.t_end = parse_double(key, val);
    else if (key == "dt") cfg.dt = parse_double(key, val);
    else if (key == "record_every") cfg.record_every = int(parse_int(key, val));
    else if (key == "seed") cfg.seed = std::uint64_t(parse_int(key, val));
    else if (key == "samples") cfg.samples = int(parse_int(key, val));
    else if (key == "bounds_alpha") cfg.b_alpha = parse_double(key, val);
    else if (key == "bounds_A1") cfg.b_A1 = parse_double(key, val);
    else if (key == "bounds_vol0") cfg.b_vol0 = parse_double(key, val);
    else if (key == "bounds_C") cfg.b_C = parse_double(key, val);
    else if (key == "bounds_int_f0") cfg.b_int_f0 = parse_double(key, val);
    else if (key == "bounds_int_sic2_0") cfg.b_int_sic2_0 = parse_double(key, val);
    else if (key == "bounds_int_sic2_over_s0") cfg.b_int_sic2_over_s0 = parse_double(key, val);
    else if (key == "bounds_s") {
        cfg.b_s.clear();
        for (const auto& p : split_commas(val)) cfg.b_s.push_back(parse_double(key, p));
    } else if (key == "out") cfg.out = val;
    else throw ConfigError("unknown config field '" + key + "'");
}

void validate(const RunConfig& cfg) {
    if (cfg.mode != "verify-identities" && cfg.mode != "flow" && cfg.mode != "convergence" &&
        cfg.mode != "bounds-only")
        throw ConfigError("config field 'mode': unknown mode '" + cfg.mode + "'");
    if (cfg.profile != "flat" && cfg.profile != "conformal-sine" &&
        cfg.profile != "anisotropic-sine" && cfg.profile != "phi-sine")
        throw ConfigError("config field 'profile': unknown profile '" + cfg.profile + "'");
    if (cfg.fd_order != 2 && cfg.fd_order != 4)
        throw ConfigError("config field 'fd_order': must be 2 or 4");
    for (int d = 0; d < 4; ++d) {
        if (cfg.dims[d] < 1) throw ConfigError("config field 'dims': entries must be >= 1");
        if (!(cfg.lengths[d] > 0.0))
            throw ConfigError("config field 'lengths': entries must be > 0");
    }
    if (cfg.phi_axis < 0 || cfg.phi_axis > 3)
        throw ConfigError("config field 'phi_axis': must be in 0..3");
    if (cfg.alpha < 0.0) throw ConfigError("config field 'alpha': must be >= 0");
    if (cfg.alpha_final >= 0.0) {
        if (cfg.alpha_final > cfg.alpha)
            throw ConfigError("config field 'alpha_final': schedule must be nonincreasing");
        if (!(cfg.alpha_t1 > 0.0))
            throw ConfigError("config field 'alpha_t1': must be > 0 when alpha_final is set");
    }
    if (cfg.mode == "flow" || cfg.mode == "convergence") {
        if (!(cfg.t_end > 0.0)) throw ConfigError("config field 't_end': must be > 0");
    }
    if (cfg.dt < 0.0) throw ConfigError("config field 'dt': must be >= 0");
    if (cfg.record_every < 1) throw ConfigError("config field 'record_every': must be >= 1");
    if (cfg.samples < 1) throw ConfigError("config field 'samples': must be >= 1");
    if (cfg.out.empty()) throw ConfigError("config field 'out': must be non-empty");
}

RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides) {
    RunConfig cfg;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            try {
                apply_assignment(cfg, line);
            } catch (const ConfigError& e) {
                throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
            }
        }
    }
    for (const auto& o : overrides) apply_assignment(cfg, o);
    validate(cfg);
    return cfg;
}

}  // namespace rhf
