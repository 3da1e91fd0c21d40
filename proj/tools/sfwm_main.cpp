// Command-line front end: config ingestion, subcommand dispatch, CSV output.
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sfwm/analytic.hpp"
#include "sfwm/config.hpp"
#include "sfwm/csv.hpp"
#include "sfwm/observables.hpp"

namespace fs = std::filesystem;
using namespace sfwm;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    int threads = 0;
};

RunConfig load_config(const CommonOpts& o) {
    ConfigFile f = ConfigFile::load(o.config_path);
    RunConfig rc = parse_run_config(f);
    f.reject_unconsumed();
    if (o.seed) rc.seed = *o.seed;
    rc.threads = o.threads;
    validate(rc.params);
    validate(rc.grid);
    validate(rc.detection);
    return rc;
}

fs::path prepare_out(const CommonOpts& o) {
    fs::path dir(o.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw ConfigError("output-unwritable", "cannot create output directory " + o.out_dir);
    return dir;
}

void write_wavepacket_csv(const std::string& path, const RunConfig& rc,
                          const Analysis& a) {
    CsvWriter csv(path);
    csv.comments(rc.echo_lines());
    csv.comment("t0_ns = " + CsvWriter::format(to_si_time(a.area.t0, rc.params) * 1e9));
    csv.comment("tau_peak_ns = " +
                CsvWriter::format(to_si_time(a.wp.tau_peak, rc.params) * 1e9));
    csv.column_names({"tau_ns", "g2_cross", "r_c_per_s", "g2_ss", "g2_asas"});
    const double dt = a.wp.d_tau;
    const int k_lo = static_cast<int>(std::ceil(-rc.tau_window / 8.0 / dt));
    const int k_hi = static_cast<int>(std::floor(rc.tau_window / dt));
    for (int ks = k_lo; ks <= k_hi; ++ks) {
        const int k = ((ks % a.wp.n) + a.wp.n) % a.wp.n;
        csv.row({to_si_time(ks * dt, rc.params) * 1e9, a.wp.g2_cross[k],
                 to_si_rate(a.wp.r_c[k], rc.params), a.wp.g2_ss[k], a.wp.g2_asas[k]});
    }
    csv.close();
}

std::vector<double> scalar_row(const RunConfig& rc, const Analysis& a) {
    BandwidthResult bw;
    try {
        bw = bandwidth_and_brightness(a.wp, a.rates, rc.params);
    } catch (const NumericalError&) {
        bw.bandwidth_mhz = std::nan("");
        bw.brightness_per_s_mhz = std::nan("");
    }
    return {to_si_rate(a.rates.r_s, rc.params),
            to_si_rate(a.rates.r_as, rc.params),
            to_si_rate(a.rates.r_b, rc.params),
            a.pairing.value,
            a.area.r_p_area,
            a.wp.r_sb,
            a.wp.cs_factor,
            bw.bandwidth_mhz,
            bw.brightness_per_s_mhz};
}

const std::vector<std::string> kScalarCols = {
    "r_s_per_s", "r_as_per_s", "r_b_per_s",       "r_p_spectral", "r_p_area",
    "r_sb",      "cs_factor",  "bandwidth_mhz",   "brightness_per_s_mhz"};

int run_wavepacket(const CommonOpts& o) {
    const RunConfig rc = load_config(o);
    const fs::path dir = prepare_out(o);
    const Analysis a = analyze(rc.params, rc.grid, rc.detection, rc.threads);

    write_wavepacket_csv((dir / "wavepacket.csv").string(), rc, a);
    CsvWriter rates((dir / "rates.csv").string());
    rates.comments(rc.echo_lines());
    rates.column_names(kScalarCols);
    rates.row(scalar_row(rc, a));
    rates.close();
    return 0;
}

int run_counts(const CommonOpts& o) {
    const RunConfig rc = load_config(o);
    const fs::path dir = prepare_out(o);
    const Analysis a = analyze(rc.params, rc.grid, rc.detection, rc.threads);
    const CountsHistogram h =
        counts_model(a.wp, a.rates, rc.params, rc.detection, -rc.tau_window / 8.0,
                     rc.tau_window, rc.seed);
    CsvWriter csv((dir / "counts.csv").string());
    csv.comments(rc.echo_lines());
    csv.comment("p_s = " + CsvWriter::format(h.p_s));
    csv.comment("r_env_equivalent_per_s = " + CsvWriter::format(h.r_env_equivalent));
    csv.column_names({"tau_ns", "n_expected", "n_sampled"});
    for (std::size_t b = 0; b < h.expected.size(); ++b)
        csv.row({h.tau_s[b] * 1e9, h.expected[b], static_cast<double>(h.sampled[b])});
    csv.close();
    return 0;
}

int run_sweep(const CommonOpts& o) {
    const RunConfig rc = load_config(o);
    const fs::path dir = prepare_out(o);
    const auto& sw = rc.sweep;
    static const std::set<std::string> kVars = {"omega_d", "omega_c", "delta_c", "delta_d",
                                                "od"};
    if (!kVars.count(sw.variable))
        throw ConfigError("config-parse", "unknown sweep variable '" + sw.variable + "'");
    if (sw.values.empty())
        throw ConfigError("config-parse", "sweep.values (or start/stop/steps) required");
    for (const auto* ov : {&sw.omega_c_overrides, &sw.delta_d_overrides})
        if (!ov->empty() && ov->size() != sw.values.size())
            throw ConfigError("config-parse", "sweep override lists must match sweep.values");

    CsvWriter csv((dir / "sweep.csv").string());
    csv.comments(rc.echo_lines());
    std::vector<std::string> cols = {"sweep_value", "od", "omega_d_gamma", "omega_c_gamma",
                                     "delta_d_gamma", "delta_c_gamma"};
    cols.insert(cols.end(), kScalarCols.begin(), kScalarCols.end());
    cols.push_back("t0_ns");
    csv.column_names(cols);

    for (std::size_t i = 0; i < sw.values.size(); ++i) {
        RunConfig pt = rc;
        const double v = sw.values[i];
        if (sw.variable == "omega_d") pt.params.omega_d = v;
        else if (sw.variable == "omega_c") pt.params.omega_c = v;
        else if (sw.variable == "delta_c") pt.params.delta_c = v;
        else if (sw.variable == "delta_d") pt.params.delta_d = v;
        else pt.params.od = v;
        if (!sw.omega_c_overrides.empty()) pt.params.omega_c = sw.omega_c_overrides[i];
        if (!sw.delta_d_overrides.empty()) pt.params.delta_d = sw.delta_d_overrides[i];

        const Analysis a = analyze(pt.params, pt.grid, pt.detection, pt.threads);
        std::vector<double> row = {v, pt.params.od, pt.params.omega_d.real(),
                                   pt.params.omega_c.real(), pt.params.delta_d,
                                   pt.params.delta_c};
        const auto scal = scalar_row(pt, a);
        row.insert(row.end(), scal.begin(), scal.end());
        row.push_back(to_si_time(a.area.t0, pt.params) * 1e9);
        csv.row(row);

        if (sw.write_wavepackets) {
            char name[64];
            std::snprintf(name, sizeof(name), "wavepacket_%03zu.csv", i);
            write_wavepacket_csv((dir / name).string(), pt, a);
        }
    }
    csv.close();
    return 0;
}

int run_calibrate(const CommonOpts& o) {
    const RunConfig rc = load_config(o);
    const fs::path dir = prepare_out(o);
    const auto& cal = rc.calibrate;
    if (cal.od_values.empty())
        throw ConfigError("config-parse", "calibrate.od_values required");
    if (cal.omega_c_values.size() != cal.od_values.size())
        throw ConfigError("config-parse",
                          "calibrate.omega_c_values_gamma must match calibrate.od_values");

    CsvWriter csv((dir / "calibration.csv").string());
    csv.comments(rc.echo_lines());
    csv.column_names({"od", "omega_c_gamma", "delta_d_gamma", "r_b_per_s", "status"});
    for (std::size_t i = 0; i < cal.od_values.size(); ++i) {
        std::string status = "ok";
        double dd = std::nan("");
        double rb = std::nan("");
        try {
            dd = calibrate_delta_d(rc.params, rc.grid, cal.od_values[i],
                                   cal.omega_c_values[i], rc.params.omega_d,
                                   cal.target_rb_per_s, rc.threads);
            SystemParams p = rc.params;
            p.od = cal.od_values[i];
            p.omega_c = cal.omega_c_values[i];
            p.delta_d = dd;
            rb = to_si_rate(photon_rates(solve_grid(p, rc.grid, rc.threads)).r_b, p);
        } catch (const NumericalError& e) {
            if (e.code() != "calibration-unreachable") throw;
            status = "unreachable";
        }
        csv.raw_row(CsvWriter::format(cal.od_values[i]) + "," +
                    CsvWriter::format(cal.omega_c_values[i]) + "," +
                    CsvWriter::format(dd) + "," + CsvWriter::format(rb) + "," + status);
    }
    csv.close();
    return 0;
}

int run_eit_pulse(const CommonOpts& o) {
    const RunConfig rc = load_config(o);
    const fs::path dir = prepare_out(o);

    CsvWriter delay((dir / "eit_delay.csv").string());
    delay.comments(rc.echo_lines());
    delay.column_names({"omega_gamma", "tau_eit_ns"});
    const int n = 601;
    for (int i = 0; i < n; ++i) {
        const double w =
            rc.grid.omega_min + (rc.grid.omega_max - rc.grid.omega_min) * i / (n - 1);
        delay.row({w, to_si_time(eit_group_delay(rc.params, w), rc.params) * 1e9});
    }
    delay.close();

    const int nt = rc.pulse.n_t;
    std::vector<double> t(nt);
    std::vector<cplx> env(nt);
    const double dt = (rc.pulse.t_max - rc.pulse.t_min) / (nt - 1);
    const double tau0 = rc.pulse.width_1e2 / 2.0; // amplitude e^{-(t/τ0)²}
    for (int i = 0; i < nt; ++i) {
        t[i] = rc.pulse.t_min + i * dt;
        env[i] = std::exp(-(t[i] * t[i]) / (tau0 * tau0));
    }
    const PulseResult pr = propagate_pulse(rc.params, t, env, rc.pulse.carrier_offset);
    CsvWriter pulse((dir / "eit_pulse.csv").string());
    pulse.comments(rc.echo_lines());
    pulse.column_names({"t_ns", "intensity_in", "intensity_out"});
    for (int i = 0; i < nt; ++i)
        pulse.row({to_si_time(t[i], rc.params) * 1e9, pr.intensity_in[i],
                   pr.intensity_out[i]});
    pulse.close();
    return 0;
}

int run_selfcheck(const CommonOpts& o) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    SystemParams p;
    p.od = 10.0;
    p.omega_d = 0.5;
    p.omega_c = 4.0;
    p.delta_d = 10.0;
    p.gamma_21 = 1e-3;
    p.delta_kl = 0.37 * kPi;

    check("unit round trip", std::abs(from_si_time(to_si_time(2.0, p), p) - 2.0) < 1e-12);

    const SteadyState s = solve_zeroth_order(p);
    check("steady-state trace",
          std::abs(s.pop11 + s.pop22 + s.pop33 + s.pop44 - 1.0) < 1e-12);

    const RelaxationTable relax(p.gamma_21);
    SteadyState ground;
    ground.pop11 = 1.0;
    check("diffusion D_{14,41} = Gamma",
          std::abs(diffusion_entry(relax, ground, {1, 4}, {4, 1}) - 1.0) < 1e-12);
    check("diffusion D_{12,21} = gamma_21",
          std::abs(diffusion_entry(relax, ground, {1, 2}, {2, 1}) - p.gamma_21) < 1e-12);

    bool resid_ok = true;
    for (double w : {-7.3, 0.011, 2.5}) {
        const SpectralPoint pt = solve_first_order(p, s, w);
        const Eigen::Matrix4cd A = first_order_matrix(p, w);
        Eigen::Vector4cd x;
        x << 0.0, pt.eps23, pt.eps41, 0.0;
        // solve again to recover all four components for the residual
        const Eigen::Vector4cd xs = A.partialPivLu().solve(stokes_source(s));
        resid_ok = resid_ok && ((A * xs - stokes_source(s)).norm() <
                                1e-10 * std::max(1.0, xs.norm()));
    }
    check("first-order residuals", resid_ok);

    SystemParams p0 = p;
    p0.od = 0.0;
    p0.delta_kl = 0.0;
    p0.free_space_phase = false;
    GridSpec small;
    small.n_omega = 1024;
    const SpectralGrid g0 = solve_grid(p0, small);
    bool identity_ok = true;
    for (const auto& gp : {g0.pts.front(), g0.pts[g0.pts.size() / 2], g0.pts.back()})
        identity_ok = identity_ok && std::abs(gp.tc.a - 1.0) < 1e-12 &&
                      std::abs(gp.tc.d - 1.0) < 1e-12 && std::abs(gp.tc.b) < 1e-12 &&
                      std::abs(gp.tc.c) < 1e-12 && gp.noise_s < 1e-24;
    check("od=0 identity propagation", identity_ok);

    const SpectralGrid g = solve_grid(p, small);
    const RateResult r = photon_rates(g);
    std::vector<double> g2ss, g2asas;
    auto_correlations(g, r, g2ss, g2asas);
    check("thermal g2(0) = 2",
          std::abs(g2ss[0] - 2.0) < 1e-3 && std::abs(g2asas[0] - 2.0) < 1e-3);

    const auto rho = thermal_distribution(0.7, 200);
    double sum = 0.0, mean = 0.0;
    for (std::size_t nn = 0; nn < rho.size(); ++nn) {
        sum += rho[nn];
        mean += nn * rho[nn];
    }
    check("thermal distribution moments",
          std::abs(sum - 1.0) < 1e-8 && std::abs(mean - 0.7) < 1e-6);

    (void)o;
    if (failures) {
        std::cerr << "error: selfcheck: " << failures << " check(s) failed\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"double-lambda SFWM biphoton source simulator"};
    app.require_subcommand(1);

    CommonOpts o;
    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* copt = sub->add_option("--config", o.config_path, "config file path");
        if (config_required) copt->required();
        sub->add_option("--out", o.out_dir, "output directory");
        sub->add_option("--seed", o.seed, "random seed override");
        sub->add_option("--threads", o.threads, "worker threads (0 = hardware)");
    };

    auto* wp = app.add_subcommand("wavepacket", "correlation functions and rate scalars");
    auto* sweep = app.add_subcommand("sweep", "scalar observables across a parameter sweep");
    auto* cal = app.add_subcommand("calibrate", "solve delta_d for a target biphoton rate");
    auto* eit = app.add_subcommand("eit-pulse", "group delay curve and slow-light pulse");
    auto* counts = app.add_subcommand("counts", "expected coincidence counts histogram");
    auto* self = app.add_subcommand("selfcheck", "run the internal invariant suite");
    for (auto* sub : {wp, sweep, cal, eit, counts}) add_common(sub, true);
    add_common(self, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (wp->parsed()) return run_wavepacket(o);
        if (sweep->parsed()) return run_sweep(o);
        if (cal->parsed()) return run_calibrate(o);
        if (eit->parsed()) return run_eit_pulse(o);
        if (counts->parsed()) return run_counts(o);
        if (self->parsed()) return run_selfcheck(o);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
