#ifndef SFWM_ANALYTIC_HPP
#define SFWM_ANALYTIC_HPP

#include <optional>
#include <vector>

#include "sfwm/fft.hpp"
#include "sfwm/params.hpp"

namespace sfwm {

/// OD-normalized susceptibilities, returned as the dimensionless k·L·χ
/// combinations (the only form entering any observable):
///   k_as·L·χ_as(ω) = (OD·Γ/2)·4(ω−Δ_c+iγ21/2)/[|Ω_c|²−4(ω−Δ_c+iγ21/2)(ω+iΓ/2)]
/// and analogously for the Stokes and third-order responses. The constant is
/// pinned by the resonant intensity transmission e^{−OD} at Ω_c = 0 and by
/// the EIT delay Γ·OD/|Ω_c|².
struct Susceptibilities {
    cplx kl_chi_s;
    cplx kl_chi_as;
    cplx kl_chi3; ///< per unit Δ_d, same bracket as χ_as
};

Susceptibilities susceptibilities(const SystemParams& p, double omega);

/// Damped-Rabi closed-form parameters. omega_e = α + iβ with α ≥ 0.
struct DampedRabiParams {
    cplx gamma_e;  ///< Γ + iΔ_c
    cplx omega_e;  ///< √(|Ω_c|² + Δ_c² − Γ²/4 + iΓΔ_c)
    double alpha = 0.0;
    double beta = 0.0;
    double decay_time = 0.0;           ///< 1/e time of the envelope, 1/Γ
    std::optional<double> period;      ///< 2π/α; absent when overdamped
    bool overdamped = false;
};

DampedRabiParams damped_rabi_params(const SystemParams& p);

/// Closed-form biphoton wavepacket in the damped-Rabi regime (γ21 = 0):
/// W(τ) = |Γ Ω_d Ω_c OD / (8 Ω_e Δ_d) · sinc(ΔkL/2)|² e^{−Γτ/2}|sin(Ω_e τ/2)|²
/// for τ ≥ 0. Units Γ², normalized like wavepacket_chi3.
double damped_rabi_wavepacket(const SystemParams& p, const DampedRabiParams& dr,
                              double tau);

/// Which integrand the biphoton-wavefunction integral uses.
enum class Chi3Form {
    kFull,          ///< Stokes and anti-Stokes dispersion in the phase mismatch
    kAntiStokesOnly,///< |χ_s| ≪ |χ_as| simplification
    kFlatSinc,      ///< damped-Rabi regime: sinc(ΔkL/2), no propagation factor
};

/// τ-domain pair wavepacket from the third-order-susceptibility route,
/// W(τ) = (c²/L²)G²(τ) in Γ² units. Its τ integral equals the correlated
/// pair rate R_B·r_p in Γ units.
struct Chi3Wavepacket {
    std::vector<double> tau; ///< FFT wrap order, 1/Γ
    std::vector<double> w;   ///< W(τ), Γ²
    double d_tau = 0.0;
    int n = 0;
    double integral = 0.0;   ///< ∫W dτ over τ > 0, Γ units
    double form_difference_l2 = 0.0; ///< L2 distance of kFull vs kAntiStokesOnly shapes
};

Chi3Wavepacket wavepacket_chi3(const SystemParams& p, const GridSpec& g,
                               Chi3Form form = Chi3Form::kAntiStokesOnly);

/// EIT group delay (1/Γ) at detuning ω via the Re[√(1+χ)] dispersion with
/// central-difference differentiation. k_as·L sets the split between χ and
/// the geometric factor; any value ≫ OD leaves the result unchanged.
double eit_group_delay(const SystemParams& p, double omega, double diff_step = 1e-3,
                       double kas_l = 8.055e4);

/// Complex envelope through the EIT medium: multiplies the spectrum by
/// e^{i k_as L χ_as(ω0+u)/2} around the carrier offset ω0 (default Δ_c, the
/// two-photon resonance) and transforms back.
struct PulseResult {
    std::vector<double> t;             ///< as input grid, 1/Γ
    std::vector<double> intensity_in;
    std::vector<double> intensity_out;
    double energy_in = 0.0, energy_out = 0.0;
};

PulseResult propagate_pulse(const SystemParams& p, const std::vector<double>& t,
                            const std::vector<cplx>& envelope,
                            std::optional<double> carrier_offset = std::nullopt);

}  // namespace sfwm

#endif
