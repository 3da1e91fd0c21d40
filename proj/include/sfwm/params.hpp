#ifndef SFWM_PARAMS_HPP
#define SFWM_PARAMS_HPP

#include <complex>

#include "sfwm/errors.hpp"

namespace sfwm {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Default SI anchor for the natural linewidth Γ (rad/s).
inline constexpr double kDefaultGammaSi = 2.0 * kPi * 6.0666e6;

/// Physical knobs of the double-Λ source. All frequencies and rates are in
/// units of Γ, times in 1/Γ; gamma_si is the single SI anchor. The remaining
/// decoherence constants are fixed by the level scheme:
/// γ31 = γ32 = γ41 = γ42 = Γ, γ43 = 2Γ, Γ31 = Γ32 = Γ41 = Γ42 = Γ/2.
struct SystemParams {
    double od = 0.0;        ///< optical depth, dimensionless
    cplx omega_d{0.0, 0.0}; ///< driving Rabi frequency (Γ)
    cplx omega_c{0.0, 0.0}; ///< coupling Rabi frequency (Γ)
    double delta_d = 0.0;   ///< driving detuning (Γ)
    double delta_c = 0.0;   ///< coupling detuning (Γ)
    double gamma_21 = 0.0;  ///< ground-state decoherence rate (Γ)
    double delta_kl = 0.0;  ///< phase mismatch Δk·L, radians
    double gamma_si = kDefaultGammaSi; ///< Γ in rad/s

    // Medium flight time L/c in units of 1/Γ; sets the ±iω/c free-evolution
    // phase in the propagation matrix. ~1e-3 for a cm-scale cold ensemble.
    double flight_time = 1.0e-3;
    bool free_space_phase = true; ///< keep the ±iω/c terms (toggle for tests)
};

/// Throws invalid-argument naming the offending field; returns its input.
const SystemParams& validate(const SystemParams& p);

/// Frequency grid (midpoint samples) and z quadrature for the spectral solve.
/// n_z counts Simpson intervals over [0, L]; n_z + 1 samples are used.
struct GridSpec {
    double omega_min = -20.0; ///< Γ units
    double omega_max = 20.0;  ///< Γ units
    int n_omega = 4096;       ///< power of two, >= 1024
    int n_z = 64;             ///< even, >= 16
    int pad_factor = 8;       ///< FFT zero padding for the τ grid
};

void validate(const GridSpec& g);

double to_si_time(double t_gamma, const SystemParams& p);   ///< 1/Γ -> s
double from_si_time(double t_si, const SystemParams& p);    ///< s -> 1/Γ
double to_si_rate(double r_gamma, const SystemParams& p);   ///< Γ -> s⁻¹
double to_linear_mhz(double omega_gamma, const SystemParams& p); ///< Γ -> MHz

}  // namespace sfwm

#endif
