#ifndef SFWM_FFT_HPP
#define SFWM_FFT_HPP

#include <vector>

#include "sfwm/params.hpp"

namespace sfwm {

/// In-place forward DFT, x_k = Σ_j x_j e^{−2πijk/N}. FFTW backed; plan
/// creation is serialized, execution is thread safe.
void fft_forward(std::vector<cplx>& data);

/// Result of turning a sampled ω-kernel into the delay domain.
struct TauSeries {
    std::vector<double> tau;  ///< τ_k = k·dτ for k < N/2, (k−N)·dτ above (FFT order)
    std::vector<cplx> values; ///< ∫dω/2π e^{−iωτ} K(ω) at τ_k
    double d_tau = 0.0;
    int n = 0;

    double tau_max() const { return 0.5 * n * d_tau; }
};

/// Evaluates ∫dω/2π e^{−iωτ} K(ω) by zero-padded FFT of midpoint samples
/// K(ω_j), ω_j = omega0 + j·d_omega.
TauSeries spectral_to_tau(const std::vector<cplx>& kernel, double omega0,
                          double d_omega, int pad_factor);

}  // namespace sfwm

#endif
