#include "sfwm/observables.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sfwm {

RateResult photon_rates(const SpectralGrid& grid, bool edge_guard) {
    const int n = static_cast<int>(grid.pts.size());
    RateResult r;
    r.spec_s.resize(n);
    r.spec_as.resize(n);
    const double wq = grid.d_omega / (2.0 * kPi);
    for (int i = 0; i < n; ++i) {
        const GridPoint& gp = grid.pts[i];
        const double bs = std::norm(gp.tc.b);
        const double cs = std::norm(gp.tc.c);
        r.spec_s[i] = bs + gp.noise_s;
        r.spec_as[i] = cs + gp.noise_as;
        r.correlated_s += wq * bs;
        r.correlated_as += wq * cs;
        r.uncorrelated_s += wq * gp.noise_s;
        r.uncorrelated_as += wq * gp.noise_as;
    }
    r.r_s = r.correlated_s + r.uncorrelated_s;
    r.r_as = r.correlated_as + r.uncorrelated_as;
    r.r_b = r.r_as;
    r.zero_rate = (r.r_s <= 0.0 || r.r_as <= 0.0);

    if (!r.zero_rate && edge_guard) {
        for (const auto* spec : {&r.spec_s, &r.spec_as}) {
            const double peak = *std::max_element(spec->begin(), spec->end());
            const double edge = std::max(spec->front(), spec->back());
            if (peak > 0.0 && edge > 1e-4 * peak)
                throw NumericalError("grid-too-narrow",
                                     "spectral density at grid edge exceeds 1e-4 of peak");
        }
    }
    return r;
}

PairingRatio pairing_ratio_spectral(const RateResult& rates) {
    PairingRatio p;
    if (rates.zero_rate) {
        p.degenerate = true;
        return p;
    }
    p.value = rates.correlated_as / rates.r_as;
    p.stokes_side = rates.correlated_s / rates.r_s;
    return p;
}

std::vector<double> cross_correlation(const SpectralGrid& grid, const RateResult& rates,
                                      TauSeries& ft_out) {
    if (rates.zero_rate)
        throw NumericalError("undefined-correlation",
                             "cross correlation undefined at zero rates");
    const int n = static_cast<int>(grid.pts.size());
    std::vector<cplx> kernel(n);
    for (int i = 0; i < n; ++i) {
        const GridPoint& gp = grid.pts[i];
        kernel[i] = std::conj(gp.tc.b) * gp.tc.d + gp.noise_x;
    }
    ft_out = spectral_to_tau(kernel, grid.omega.front(), grid.d_omega,
                             grid.grid.pad_factor);
    std::vector<double> g2(ft_out.n);
    const double norm = rates.r_s * rates.r_as;
    for (int k = 0; k < ft_out.n; ++k)
        g2[k] = 1.0 + std::norm(ft_out.values[k]) / norm;
    return g2;
}

void auto_correlations(const SpectralGrid& grid, const RateResult& rates,
                       std::vector<double>& g2_ss, std::vector<double>& g2_asas) {
    if (rates.zero_rate)
        throw NumericalError("undefined-correlation",
                             "autocorrelation undefined at zero rates");
    const int n = static_cast<int>(grid.pts.size());
    std::vector<cplx> ks(n), kas(n);
    for (int i = 0; i < n; ++i) {
        ks[i] = rates.spec_s[i];
        kas[i] = rates.spec_as[i];
    }
    const TauSeries fs = spectral_to_tau(ks, grid.omega.front(), grid.d_omega,
                                         grid.grid.pad_factor);
    const TauSeries fas = spectral_to_tau(kas, grid.omega.front(), grid.d_omega,
                                          grid.grid.pad_factor);
    g2_ss.resize(fs.n);
    g2_asas.resize(fas.n);
    for (int k = 0; k < fs.n; ++k) {
        g2_ss[k] = 1.0 + std::norm(fs.values[k]) / (rates.r_s * rates.r_s);
        g2_asas[k] = 1.0 + std::norm(fas.values[k]) / (rates.r_as * rates.r_as);
    }
}

SignalToBackground signal_to_background(const std::vector<double>& g2_cross) {
    SignalToBackground out;
    const auto it = std::max_element(g2_cross.begin(), g2_cross.end());
    out.peak_index = static_cast<int>(it - g2_cross.begin());
    out.r_sb = *it - 1.0;
    out.cs_factor = (1.0 + out.r_sb) * (1.0 + out.r_sb) / 4.0;
    return out;
}

std::vector<double> coincidence_rate(const std::vector<double>& g2_cross,
                                     const RateResult& rates) {
    if (rates.zero_rate)
        throw NumericalError("undefined-correlation",
                             "coincidence rate undefined at zero rates");
    std::vector<double> rc(g2_cross.size());
    for (std::size_t k = 0; k < g2_cross.size(); ++k) rc[k] = rates.r_as * g2_cross[k];
    return rc;
}

void validate(const DetectionParams& det) {
    auto fail = [](const std::string& what) { throw invalid_argument_error(what); };
    if (!(det.eta_s > 0.0 && det.eta_s <= 1.0))
        fail("DetectionParams.eta_s must be in (0,1]");
    if (!(det.eta_as > 0.0 && det.eta_as <= 1.0))
        fail("DetectionParams.eta_as must be in (0,1]");
    if (det.r_noise_s < 0.0) fail("DetectionParams.r_noise_s must be >= 0");
    if (det.r_noise_as < 0.0) fail("DetectionParams.r_noise_as must be >= 0");
    if (!(det.delta_tau > 0.0)) fail("DetectionParams.delta_tau must be > 0");
    if (!(det.n_stokes > 0.0)) fail("DetectionParams.n_stokes must be > 0");
    if (det.r_env < 0.0) fail("DetectionParams.r_env must be >= 0");
}

AreaPairing pairing_ratio_area(const Wavepacket& wp, const RateResult& rates,
                               const SpectralGrid& grid) {
    if (rates.zero_rate)
        throw NumericalError("undefined-correlation", "pairing area undefined at zero rates");
    AreaPairing out;

    // t0: earliest delay past the peak after which |g²−1| stays below 0.5% of
    // r_sb (the wavepacket has reached the background for good, not just a
    // damped-Rabi oscillation null); at least ten sub-threshold bins must
    // remain inside the grid.
    const SignalToBackground sb = signal_to_background(wp.g2_cross);
    const int half = wp.n / 2;
    const double thr = 0.005 * sb.r_sb;
    int peak = sb.peak_index;
    if (peak >= half) peak = 0; // peak at negative τ: scan from zero
    int t0_idx = -1;
    for (int k = half - 1; k > peak; --k) {
        if (std::abs(wp.g2_cross[k] - 1.0) >= thr) {
            t0_idx = k + 1;
            break;
        }
    }
    if (t0_idx < 0 || t0_idx + 10 > half)
        throw NumericalError("grid-too-short",
                             "no qualifying t0 inside the delay grid");
    out.t0 = wp.tau[t0_idx];

    // symmetric rule on the negative-delay side; the wavepacket has a small
    // left lobe from the finite Stokes response bandwidth
    int t0_back = wp.n - 1;
    for (int k = half; k < wp.n - 1; ++k) {
        if (std::abs(wp.g2_cross[k] - 1.0) >= thr) {
            t0_back = k - 1;
            break;
        }
    }

    for (int ks = t0_back - wp.n; ks <= t0_idx; ++ks)
        out.raw_area += (wp.r_c[((ks % wp.n) + wp.n) % wp.n] - rates.r_as) * wp.d_tau;

    // thermal-stimulated coincidences are not pair events
    double stim = 0.0;
    for (std::size_t i = 0; i < rates.spec_s.size(); ++i)
        stim += rates.spec_s[i] * rates.spec_as[i];
    stim *= grid.d_omega / (2.0 * kPi) / rates.r_s;
    out.stimulated = stim;

    out.r_p_area = (out.raw_area - stim) * rates.r_s / rates.r_as;
    return out;
}

CountsHistogram counts_model(const Wavepacket& wp, const RateResult& rates,
                             const SystemParams& params, const DetectionParams& det,
                             double window_lo_gamma, double window_hi_gamma,
                             std::optional<std::uint64_t> sample_seed) {
    validate(det);
    CountsHistogram h;
    const double r_s_si = to_si_rate(rates.r_s, params);
    const double r_as_si = to_si_rate(rates.r_as, params);
    h.p_s = (r_s_si * det.eta_s + det.r_noise_s) > 0.0
                ? r_s_si * det.eta_s / (r_s_si * det.eta_s + det.r_noise_s)
                : 0.0;
    h.delta_t_s = r_s_si > 0.0 ? 1.0 / r_s_si : 0.0;
    h.r_env_equivalent =
        det.r_noise_as / det.eta_as +
        (h.p_s > 0.0 ? (1.0 - h.p_s) / h.p_s * (det.r_noise_as / det.eta_as + r_as_si)
                     : 0.0);

    const double lo_si = to_si_time(window_lo_gamma, params);
    const double hi_si = to_si_time(window_hi_gamma, params);
    const int n_bins = std::max(1, static_cast<int>((hi_si - lo_si) / det.delta_tau));
    h.tau_s.resize(n_bins);
    h.expected.resize(n_bins);
    for (int b = 0; b < n_bins; ++b) {
        const double t_si = lo_si + (b + 0.5) * det.delta_tau;
        h.tau_s[b] = t_si;
        // linear interpolation of r_c at the bin center
        const double t_gamma = from_si_time(t_si, params);
        double x = t_gamma / wp.d_tau;
        double rc;
        {
            const double xf = std::floor(x);
            const double frac = x - xf;
            int k0 = static_cast<int>(xf);
            int k1 = k0 + 1;
            k0 = ((k0 % wp.n) + wp.n) % wp.n;
            k1 = ((k1 % wp.n) + wp.n) % wp.n;
            rc = to_si_rate((1.0 - frac) * wp.r_c[k0] + frac * wp.r_c[k1], params);
        }
        double nc = det.n_stokes * h.p_s * rc * det.eta_as * det.delta_tau +
                    det.n_stokes * h.p_s * det.r_noise_as * det.delta_tau +
                    det.n_stokes * (1.0 - h.p_s) *
                        (det.r_noise_as + r_as_si * det.eta_as) * det.delta_tau;
        if (nc < 0.0) {
            nc = 0.0;
            h.clamped = true;
        }
        h.expected[b] = nc;
    }
    if (sample_seed) {
        std::mt19937_64 rng(*sample_seed);
        h.sampled.resize(n_bins);
        for (int b = 0; b < n_bins; ++b) {
            std::poisson_distribution<std::int64_t> po(h.expected[b]);
            h.sampled[b] = h.expected[b] > 0.0 ? po(rng) : 0;
        }
    }
    return h;
}

BandwidthResult bandwidth_and_brightness(const Wavepacket& wp, const RateResult& rates,
                                         const SystemParams& params) {
    std::vector<cplx> w(wp.n);
    double peak = 0.0;
    for (int k = 0; k < wp.n; ++k) {
        const double v = wp.r_c[k] - rates.r_as;
        w[k] = v;
        peak = std::max(peak, std::abs(v));
    }
    if (!(peak > 0.0))
        throw NumericalError("undefined-bandwidth", "flat wavepacket");
    fft_forward(w);
    const double s0 = std::abs(w[0]);
    if (!(s0 > 0.0))
        throw NumericalError("undefined-bandwidth", "flat wavepacket spectrum");
    const double d_nu = 2.0 * kPi / (wp.n * wp.d_tau); // angular, Γ units
    int k_half = -1;
    for (int k = 1; k < wp.n / 2; ++k) {
        if (std::abs(w[k]) < 0.5 * s0) {
            k_half = k;
            break;
        }
    }
    if (k_half < 0)
        throw NumericalError("undefined-bandwidth",
                             "half maximum not reached inside the frequency grid");
    const double a = std::abs(w[k_half - 1]);
    const double b = std::abs(w[k_half]);
    const double frac = (a - 0.5 * s0) / (a - b);
    const double nu_half = (k_half - 1 + frac) * d_nu;

    BandwidthResult out;
    out.bandwidth_mhz = to_linear_mhz(2.0 * nu_half, params);
    out.brightness_per_s_mhz = to_si_rate(rates.r_b, params) / out.bandwidth_mhz;
    return out;
}

std::vector<double> thermal_distribution(double n_mean, int n_max) {
    if (!(n_mean >= 0.0) || !std::isfinite(n_mean))
        throw invalid_argument_error("thermal_distribution: n_mean must be >= 0");
    if (n_max < 0) throw invalid_argument_error("thermal_distribution: n_max must be >= 0");
    std::vector<double> rho(n_max + 1);
    const double ratio = n_mean / (1.0 + n_mean);
    rho[0] = 1.0 / (1.0 + n_mean);
    for (int n = 1; n <= n_max; ++n) rho[n] = rho[n - 1] * ratio;
    return rho;
}

double calibrate_delta_d(SystemParams params, const GridSpec& grid, double od,
                         cplx omega_c, cplx omega_d, double target_rb_si,
                         int n_threads) {
    params.od = od;
    params.omega_c = omega_c;
    params.omega_d = omega_d;
    auto rb_at = [&](double dd) {
        SystemParams p = params;
        p.delta_d = dd;
        const SpectralGrid g = solve_grid(p, grid, n_threads);
        return to_si_rate(photon_rates(g, false).r_b, p);
    };
    double lo = 2.0, hi = 50.0;
    const double r_lo = rb_at(lo);
    const double r_hi = rb_at(hi);
    if (!(target_rb_si > 0.0) || r_lo < target_rb_si || r_hi > target_rb_si)
        throw NumericalError("calibration-unreachable",
                             "target rate not bracketed on delta_d in [2, 50]");
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 80; ++it) {
        mid = 0.5 * (lo + hi);
        const double r = rb_at(mid);
        if (std::abs(r - target_rb_si) / target_rb_si < 1e-3) return mid;
        if (r > target_rb_si)
            lo = mid;
        else
            hi = mid;
    }
    return mid;
}

Analysis analyze(const SystemParams& p, const GridSpec& g, const DetectionParams& det,
                 int n_threads) {
    validate(det); // detection model is part of the run configuration
    Analysis a;
    a.grid = solve_grid(p, g, n_threads);
    a.rates = photon_rates(a.grid);
    a.pairing = pairing_ratio_spectral(a.rates);

    TauSeries ft;
    a.wp.g2_cross = cross_correlation(a.grid, a.rates, ft);
    a.wp.tau = ft.tau;
    a.wp.d_tau = ft.d_tau;
    a.wp.n = ft.n;
    auto_correlations(a.grid, a.rates, a.wp.g2_ss, a.wp.g2_asas);
    a.wp.r_c = coincidence_rate(a.wp.g2_cross, a.rates);

    const SignalToBackground sb = signal_to_background(a.wp.g2_cross);
    a.wp.r_sb = sb.r_sb;
    a.wp.cs_factor = sb.cs_factor;
    a.wp.tau_peak = a.wp.tau[sb.peak_index];

    a.area = pairing_ratio_area(a.wp, a.rates, a.grid);
    a.wp.r_p_area = a.area.r_p_area;
    a.wp.t0 = a.area.t0;
    return a;
}

}  // namespace sfwm
