#include "sfwm/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sfwm/csv.hpp"

namespace sfwm {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

cplx parse_complex(const std::string& text, const std::string& key) {
    // accepted: "1.5", "1.5+0.3i", "1.5-0.3i", "0.3i"
    std::string s = trim(text);
    if (s.empty()) throw ConfigError("config-parse", "empty value for " + key);
    if (s.back() == 'i' || s.back() == 'j') {
        s.pop_back();
        // split at the last +/- that is not an exponent sign
        std::size_t split = std::string::npos;
        for (std::size_t i = s.size(); i-- > 1;) {
            if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        try {
            if (split == std::string::npos) return cplx(0.0, std::stod(s));
            const double re = std::stod(s.substr(0, split));
            std::string im = s.substr(split);
            if (im == "+" || im == "-") im += "1";
            return cplx(re, std::stod(im));
        } catch (const std::exception&) {
            throw ConfigError("config-parse", "bad complex value for " + key + ": " + text);
        }
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return cplx(v, 0.0);
    } catch (const std::exception&) {
        throw ConfigError("config-parse", "bad value for " + key + ": " + text);
    }
}

}  // namespace

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config-not-found", "cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str(), path);
}

ConfigFile ConfigFile::from_string(const std::string& text, const std::string& origin) {
    ConfigFile f;
    f.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config-parse", origin + ":" + std::to_string(lineno) +
                                                  ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config-parse",
                              origin + ":" + std::to_string(lineno) + ": empty key");
        if (f.kv_.count(key))
            throw ConfigError("config-parse",
                              origin + ":" + std::to_string(lineno) + ": duplicate key " + key);
        f.kv_[key] = val;
    }
    return f;
}

bool ConfigFile::has(const std::string& key) const { return kv_.count(key) != 0; }

std::string ConfigFile::get_string(const std::string& key, const std::string& def) {
    consumed_.insert(key);
    const auto it = kv_.find(key);
    return it == kv_.end() ? def : it->second;
}

double ConfigFile::get_double(const std::string& key, double def) {
    consumed_.insert(key);
    const auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    const cplx v = parse_complex(it->second, key);
    if (v.imag() != 0.0)
        throw ConfigError("config-parse", key + " must be real");
    return v.real();
}

int ConfigFile::get_int(const std::string& key, int def) {
    const double v = get_double(key, static_cast<double>(def));
    const int i = static_cast<int>(std::llround(v));
    if (std::abs(v - i) > 1e-9)
        throw ConfigError("config-parse", key + " must be an integer");
    return i;
}

bool ConfigFile::get_bool(const std::string& key, bool def) {
    consumed_.insert(key);
    const auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    std::string v = it->second;
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config-parse", key + " must be a boolean");
}

cplx ConfigFile::get_complex(const std::string& key, cplx def) {
    consumed_.insert(key);
    const auto it = kv_.find(key);
    return it == kv_.end() ? def : parse_complex(it->second, key);
}

std::vector<double> ConfigFile::get_double_list(const std::string& key) {
    consumed_.insert(key);
    const auto it = kv_.find(key);
    std::vector<double> out;
    if (it == kv_.end()) return out;
    std::istringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        const cplx v = parse_complex(tok, key);
        if (v.imag() != 0.0) throw ConfigError("config-parse", key + " entries must be real");
        out.push_back(v.real());
    }
    return out;
}

void ConfigFile::reject_unconsumed() const {
    for (const auto& [k, v] : kv_)
        if (!consumed_.count(k))
            throw ConfigError("config-unknown-key", origin_ + ": unknown key " + k);
}

RunConfig parse_run_config(ConfigFile& f) {
    RunConfig rc;
    rc.params.od = f.get_double("params.od", rc.params.od);
    rc.params.omega_d = f.get_complex("params.omega_d_gamma", rc.params.omega_d);
    rc.params.omega_c = f.get_complex("params.omega_c_gamma", rc.params.omega_c);
    rc.params.delta_d = f.get_double("params.delta_d_gamma", rc.params.delta_d);
    rc.params.delta_c = f.get_double("params.delta_c_gamma", rc.params.delta_c);
    rc.params.gamma_21 = f.get_double("params.gamma_21_gamma", rc.params.gamma_21);
    if (f.has("params.delta_kl_rad") && f.has("params.delta_kl_pi"))
        throw ConfigError("config-parse",
                          "give params.delta_kl_rad or params.delta_kl_pi, not both");
    if (f.has("params.delta_kl_pi"))
        rc.params.delta_kl = f.get_double("params.delta_kl_pi", 0.0) * kPi;
    else
        rc.params.delta_kl = f.get_double("params.delta_kl_rad", rc.params.delta_kl);
    rc.params.gamma_si = f.get_double("params.gamma_si_rad_per_s", rc.params.gamma_si);
    rc.params.flight_time = f.get_double("params.flight_time_gamma", rc.params.flight_time);
    rc.params.free_space_phase =
        f.get_bool("params.free_space_phase", rc.params.free_space_phase);

    rc.grid.omega_min = f.get_double("grid.omega_min_gamma", rc.grid.omega_min);
    rc.grid.omega_max = f.get_double("grid.omega_max_gamma", rc.grid.omega_max);
    rc.grid.n_omega = f.get_int("grid.n_omega", rc.grid.n_omega);
    rc.grid.n_z = f.get_int("grid.n_z", rc.grid.n_z);
    rc.grid.pad_factor = f.get_int("grid.pad_factor", rc.grid.pad_factor);

    rc.detection.eta_s = f.get_double("detection.eta_s", rc.detection.eta_s);
    rc.detection.eta_as = f.get_double("detection.eta_as", rc.detection.eta_as);
    rc.detection.r_noise_s = f.get_double("detection.r_noise_s_per_s", rc.detection.r_noise_s);
    rc.detection.r_noise_as =
        f.get_double("detection.r_noise_as_per_s", rc.detection.r_noise_as);
    rc.detection.delta_tau =
        f.get_double("detection.delta_tau_ns", rc.detection.delta_tau * 1e9) * 1e-9;
    rc.detection.n_stokes = f.get_double("detection.n_stokes", rc.detection.n_stokes);
    rc.detection.r_env = f.get_double("detection.r_env_per_s", rc.detection.r_env);

    if (f.has("output.tau_window_ns"))
        rc.tau_window = from_si_time(f.get_double("output.tau_window_ns", 0.0) * 1e-9,
                                     rc.params);
    else
        rc.tau_window = f.get_double("output.tau_window_gamma", rc.tau_window);

    rc.sweep.variable = f.get_string("sweep.variable", "");
    rc.sweep.values = f.get_double_list("sweep.values");
    if (rc.sweep.values.empty() && f.has("sweep.start")) {
        const double start = f.get_double("sweep.start", 0.0);
        const double stop = f.get_double("sweep.stop", 0.0);
        const int steps = f.get_int("sweep.steps", 2);
        if (steps < 1) throw ConfigError("config-parse", "sweep.steps must be >= 1");
        for (int i = 0; i < steps; ++i)
            rc.sweep.values.push_back(
                steps == 1 ? start : start + (stop - start) * i / (steps - 1));
    }
    rc.sweep.omega_c_overrides = f.get_double_list("sweep.omega_c_values_gamma");
    rc.sweep.delta_d_overrides = f.get_double_list("sweep.delta_d_values_gamma");
    rc.sweep.write_wavepackets = f.get_bool("sweep.write_wavepackets", false);

    rc.calibrate.target_rb_per_s = f.get_double("calibrate.target_rb_per_s", 0.0);
    rc.calibrate.od_values = f.get_double_list("calibrate.od_values");
    rc.calibrate.omega_c_values = f.get_double_list("calibrate.omega_c_values_gamma");

    rc.pulse.width_1e2 =
        from_si_time(f.get_double("pulse.width_1e2_ns", 400.0) * 1e-9, rc.params);
    rc.pulse.t_min = from_si_time(f.get_double("pulse.t_min_ns", -1200.0) * 1e-9, rc.params);
    rc.pulse.t_max = from_si_time(f.get_double("pulse.t_max_ns", 2400.0) * 1e-9, rc.params);
    rc.pulse.n_t = f.get_int("pulse.n_t", rc.pulse.n_t);
    if (f.has("pulse.carrier_offset_gamma"))
        rc.pulse.carrier_offset = f.get_double("pulse.carrier_offset_gamma", 0.0);

    rc.seed = static_cast<std::uint64_t>(f.get_double("seed", 0.0));
    return rc;
}

std::vector<std::string> RunConfig::echo_lines() const {
    std::vector<std::string> out;
    auto fmt = CsvWriter::format;
    auto add = [&](const std::string& k, const std::string& v) { out.push_back(k + " = " + v); };
    auto addc = [&](const std::string& k, cplx v) {
        add(k, v.imag() == 0.0 ? fmt(v.real()) : fmt(v.real()) + "+" + fmt(v.imag()) + "i");
    };
    add("params.od", fmt(params.od));
    addc("params.omega_d_gamma", params.omega_d);
    addc("params.omega_c_gamma", params.omega_c);
    add("params.delta_d_gamma", fmt(params.delta_d));
    add("params.delta_c_gamma", fmt(params.delta_c));
    add("params.gamma_21_gamma", fmt(params.gamma_21));
    add("params.delta_kl_rad", fmt(params.delta_kl));
    add("params.gamma_si_rad_per_s", fmt(params.gamma_si));
    add("params.flight_time_gamma", fmt(params.flight_time));
    add("params.free_space_phase", params.free_space_phase ? "true" : "false");
    add("grid.omega_min_gamma", fmt(grid.omega_min));
    add("grid.omega_max_gamma", fmt(grid.omega_max));
    add("grid.n_omega", fmt(grid.n_omega));
    add("grid.n_z", fmt(grid.n_z));
    add("grid.pad_factor", fmt(grid.pad_factor));
    add("detection.eta_s", fmt(detection.eta_s));
    add("detection.eta_as", fmt(detection.eta_as));
    add("detection.r_noise_s_per_s", fmt(detection.r_noise_s));
    add("detection.r_noise_as_per_s", fmt(detection.r_noise_as));
    add("detection.delta_tau_ns", fmt(detection.delta_tau * 1e9));
    add("detection.n_stokes", fmt(detection.n_stokes));
    add("detection.r_env_per_s", fmt(detection.r_env));
    add("output.tau_window_gamma", fmt(tau_window));
    auto add_list = [&](const std::string& k, const std::vector<double>& v) {
        if (v.empty()) return;
        std::string vals;
        for (std::size_t i = 0; i < v.size(); ++i) vals += (i ? "," : "") + fmt(v[i]);
        add(k, vals);
    };
    if (!sweep.variable.empty()) {
        add("sweep.variable", sweep.variable);
        add_list("sweep.values", sweep.values);
        add_list("sweep.omega_c_values_gamma", sweep.omega_c_overrides);
        add_list("sweep.delta_d_values_gamma", sweep.delta_d_overrides);
        add("sweep.write_wavepackets", sweep.write_wavepackets ? "true" : "false");
    }
    if (calibrate.target_rb_per_s > 0.0) {
        add("calibrate.target_rb_per_s", fmt(calibrate.target_rb_per_s));
        add_list("calibrate.od_values", calibrate.od_values);
        add_list("calibrate.omega_c_values_gamma", calibrate.omega_c_values);
    }
    add("pulse.width_1e2_gamma", fmt(pulse.width_1e2));
    add("pulse.t_min_gamma", fmt(pulse.t_min));
    add("pulse.t_max_gamma", fmt(pulse.t_max));
    add("pulse.n_t", fmt(pulse.n_t));
    if (pulse.carrier_offset) add("pulse.carrier_offset_gamma", fmt(*pulse.carrier_offset));
    add("seed", fmt(static_cast<double>(seed)));
    return out;
}

}  // namespace sfwm
