#ifndef SFWM_OBSERVABLES_HPP
#define SFWM_OBSERVABLES_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "sfwm/fft.hpp"
#include "sfwm/propagation.hpp"

namespace sfwm {

/// Photon generation rates, Γ units. Correlated parts are the |B|²/|C|²
/// integrals, uncorrelated parts the Langevin-diffusion integrals.
struct RateResult {
    double r_s = 0.0;
    double r_as = 0.0;
    double r_b = 0.0; ///< biphoton generation rate; equals r_as by convention
    double correlated_s = 0.0, uncorrelated_s = 0.0;
    double correlated_as = 0.0, uncorrelated_as = 0.0;
    std::vector<double> spec_s;  ///< 2π·R̃_s(ω_j) = |B|² + noise  (occupancy)
    std::vector<double> spec_as; ///< 2π·R̃_as(ω_j)
    bool zero_rate = false;
};

/// Trapezoid/midpoint quadrature of the two rate integrals.
/// Throws grid-too-narrow when the spectral density at either grid edge
/// exceeds 1e-4 of its peak; edge_guard=false skips the check (used for
/// intermediate bracketing probes during calibration).
RateResult photon_rates(const SpectralGrid& grid, bool edge_guard = true);

struct PairingRatio {
    double value = 0.0;      ///< anti-Stokes side: correlated_as / r_as
    double stokes_side = 0.0;
    bool degenerate = false; ///< rates were zero; value reported as 0
};

PairingRatio pairing_ratio_spectral(const RateResult& rates);

/// Delay-domain record, arrays in FFT (wrap-around) τ order.
struct Wavepacket {
    std::vector<double> tau; ///< 1/Γ
    std::vector<double> g2_cross;
    std::vector<double> g2_ss;
    std::vector<double> g2_asas;
    std::vector<double> r_c; ///< Γ units
    double d_tau = 0.0;
    int n = 0;

    double r_sb = 0.0;
    double cs_factor = 0.0;
    double tau_peak = 0.0;
    double r_p_area = 0.0;
    double t0 = 0.0; ///< 1/Γ
};

/// g²_s-as(τ) = 1 + |∫dω/2π e^{−iωτ}(B*D + Σ∫dz P*·D·Q)|² / (R_s R_as).
/// Throws undefined-correlation when either rate is zero.
std::vector<double> cross_correlation(const SpectralGrid& grid, const RateResult& rates,
                                      TauSeries& ft_out);

/// Thermal-form autocorrelations from the rate spectra.
void auto_correlations(const SpectralGrid& grid, const RateResult& rates,
                       std::vector<double>& g2_ss, std::vector<double>& g2_asas);

/// r_sb = max g² − 1 and the Cauchy-Schwarz factor (1+r_sb)²/4.
struct SignalToBackground {
    double r_sb = 0.0;
    double cs_factor = 0.0;
    int peak_index = 0;
};
SignalToBackground signal_to_background(const std::vector<double>& g2_cross);

/// R_C(τ) = R_as·g²(τ) = R_as + (1/R_s)|kernel FT|².
std::vector<double> coincidence_rate(const std::vector<double>& g2_cross,
                                     const RateResult& rates);

/// Detector/accumulation model.
struct DetectionParams {
    double eta_s = 0.02;        ///< Stokes collection efficiency, (0,1]
    double eta_as = 0.01;       ///< anti-Stokes collection efficiency, (0,1]
    double r_noise_s = 0.0;     ///< Stokes channel noise rate, s⁻¹
    double r_noise_as = 0.0;    ///< anti-Stokes channel noise rate, s⁻¹
    double delta_tau = 6.4e-9;  ///< anti-Stokes time bin, s
    double n_stokes = 262144.0; ///< accumulated Stokes receptions (2^18)
    double r_env = 0.0;         ///< environmental background rate, s⁻¹ (reporting)
};
void validate(const DetectionParams& det);

/// Pair-component area of the coincidence wavepacket. t0 is the earliest
/// delay past the peak after which |g²−1| stays below 0.5% of r_sb for the
/// rest of the grid. The raw histogram area additionally contains
/// thermal-stimulated coincidences, (1/R_s)∫n_s n_as dω/2π; that term is
/// subtracted and the per-Stokes area is rescaled to the anti-Stokes side so
/// the result is comparable with pairing_ratio_spectral at any pump power.
struct AreaPairing {
    double r_p_area = 0.0;
    double t0 = 0.0;            ///< 1/Γ
    double raw_area = 0.0;      ///< ∫(r_c − r_as)dτ over [0, t0], per Stokes
    double stimulated = 0.0;    ///< subtracted stimulated-coincidence term
};
AreaPairing pairing_ratio_area(const Wavepacket& wp, const RateResult& rates,
                               const SpectralGrid& grid);

/// Expected (and optionally Poisson-sampled) coincidence counts per bin.
struct CountsHistogram {
    std::vector<double> tau_s;      ///< bin centers, seconds
    std::vector<double> expected;
    std::vector<std::int64_t> sampled; ///< empty unless sampling requested
    double p_s = 0.0;               ///< Stokes detection purity
    double delta_t_s = 0.0;         ///< Stokes post-selection bin 1/R_s, seconds
    double r_env_equivalent = 0.0;  ///< N_C/(n P_s η Δτ) − R_C, s⁻¹
    bool clamped = false;           ///< negative expectations clamped to zero
};
CountsHistogram counts_model(const Wavepacket& wp, const RateResult& rates,
                             const SystemParams& params, const DetectionParams& det,
                             double window_lo_gamma, double window_hi_gamma,
                             std::optional<std::uint64_t> sample_seed);

/// FWHM of the Fourier magnitude of the background-subtracted wavepacket,
/// in MHz, and the spectral brightness r_b / bandwidth.
struct BandwidthResult {
    double bandwidth_mhz = 0.0;
    double brightness_per_s_mhz = 0.0;
};
BandwidthResult bandwidth_and_brightness(const Wavepacket& wp, const RateResult& rates,
                                         const SystemParams& params);

/// ρ_nn = n̄ⁿ/(1+n̄)^{n+1}, n = 0..n_max.
std::vector<double> thermal_distribution(double n_mean, int n_max);

/// Bisection on Δ_d ∈ [2, 50]Γ for R_B(Δ_d) = target (monotone decreasing
/// branch). Throws calibration-unreachable when the target is not bracketed.
double calibrate_delta_d(SystemParams params, const GridSpec& grid, double od,
                         cplx omega_c, cplx omega_d, double target_rb_si,
                         int n_threads = 0);

/// Full pipeline convenience: grid solve, rates, correlations, scalar
/// observables in one pass.
struct Analysis {
    SpectralGrid grid;
    RateResult rates;
    PairingRatio pairing;
    Wavepacket wp;
    AreaPairing area;
};
Analysis analyze(const SystemParams& p, const GridSpec& g, const DetectionParams& det,
                 int n_threads = 0);

}  // namespace sfwm

#endif
