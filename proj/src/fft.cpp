#include "sfwm/fft.hpp"

#include <cmath>
#include <mutex>

#include <fftw3.h>

namespace sfwm {

namespace {
std::mutex plan_mutex;
}

void fft_forward(std::vector<cplx>& data) {
    const int n = static_cast<int>(data.size());
    if (n == 0) return;
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        plan = fftw_plan_dft_1d(n, ptr, ptr, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(plan);
    }
}

TauSeries spectral_to_tau(const std::vector<cplx>& kernel, double omega0,
                          double d_omega, int pad_factor) {
    const int n = static_cast<int>(kernel.size());
    const int np = n * pad_factor;
    std::vector<cplx> buf(np, cplx(0.0, 0.0));
    std::copy(kernel.begin(), kernel.end(), buf.begin());
    fft_forward(buf);

    TauSeries out;
    out.n = np;
    out.d_tau = 2.0 * kPi / (np * d_omega);
    out.tau.resize(np);
    out.values.resize(np);
    const double scale = d_omega / (2.0 * kPi);
    for (int k = 0; k < np; ++k) {
        const double t = (k < np / 2 ? k : k - np) * out.d_tau;
        out.tau[k] = t;
        // restore the grid origin phase: Σ K_j e^{−iω_j τ} = e^{−iω₀τ}·FFT_k
        out.values[k] = scale * std::exp(cplx(0.0, -omega0 * t)) * buf[k];
    }
    return out;
}

}  // namespace sfwm
