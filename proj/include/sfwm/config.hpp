#ifndef SFWM_CONFIG_HPP
#define SFWM_CONFIG_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sfwm/observables.hpp"

namespace sfwm {

/// Flat key = value file with '#' comments and dotted key namespaces.
/// Unknown keys are rejected after parsing (typo protection).
class ConfigFile {
public:
    static ConfigFile load(const std::string& path);
    static ConfigFile from_string(const std::string& text, const std::string& origin);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& def);
    double get_double(const std::string& key, double def);
    int get_int(const std::string& key, int def);
    bool get_bool(const std::string& key, bool def);
    cplx get_complex(const std::string& key, cplx def);
    std::vector<double> get_double_list(const std::string& key);

    /// Throws config-unknown-key if any key was never consumed.
    void reject_unconsumed() const;

private:
    std::string origin_;
    std::map<std::string, std::string> kv_;
    std::set<std::string> consumed_;
};

struct SweepSpec {
    std::string variable; ///< omega_d | omega_c | delta_c | delta_d | od
    std::vector<double> values;
    std::vector<double> omega_c_overrides; ///< optional parallel list
    std::vector<double> delta_d_overrides; ///< optional parallel list
    bool write_wavepackets = false;
};

struct CalibrateSpec {
    double target_rb_per_s = 0.0;
    std::vector<double> od_values;
    std::vector<double> omega_c_values;
};

struct PulseSpec {
    double width_1e2 = 0.0;  ///< 1/e² full width of the input intensity, 1/Γ
    double t_min = 0.0, t_max = 0.0; ///< 1/Γ
    int n_t = 4096;
    std::optional<double> carrier_offset; ///< Γ; defaults to Δ_c
};

/// Fully resolved run configuration; echoed into every output file header.
struct RunConfig {
    SystemParams params;
    GridSpec grid;
    DetectionParams detection;
    double tau_window = 60.0; ///< wavepacket CSV window, 1/Γ
    SweepSpec sweep;
    CalibrateSpec calibrate;
    PulseSpec pulse;
    std::uint64_t seed = 0;
    int threads = 0; ///< not echoed; must not affect output bytes

    std::vector<std::string> echo_lines() const;
};

RunConfig parse_run_config(ConfigFile& file);

}  // namespace sfwm

#endif
