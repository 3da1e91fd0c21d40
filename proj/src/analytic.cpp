#include "sfwm/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace sfwm {

namespace {
constexpr double kGamma = 1.0;
constexpr cplx kI{0.0, 1.0};

cplx csinc(cplx x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}
}  // namespace

Susceptibilities susceptibilities(const SystemParams& p, double omega) {
    validate(p);
    const double G = kGamma;
    const cplx two_photon = omega - p.delta_c + kI * p.gamma_21 / 2.0;
    const cplx denom_as = std::norm(p.omega_c) - 4.0 * two_photon * (omega + kI * G / 2.0);
    const double strength = p.od * G / 2.0;

    Susceptibilities chi;
    // Ω_c = 0 collapses the two-photon structure; the numerator cancels
    // against the denominator exactly (plain one-photon absorption line)
    chi.kl_chi_as = std::norm(p.omega_c) == 0.0
                        ? -strength / (omega + kI * G / 2.0)
                        : strength * 4.0 * two_photon / denom_as;
    const cplx denom_s = std::norm(p.omega_c) -
                         4.0 * (omega - kI * p.gamma_21 / 2.0) * (omega - kI * G / 2.0);
    const double dd2 = p.delta_d * p.delta_d;
    chi.kl_chi_s = dd2 > 0.0
                       ? strength * (std::norm(p.omega_d) / dd2) * (omega - kI * G / 2.0) / denom_s
                       : cplx(0.0, 0.0);
    chi.kl_chi3 = p.delta_d != 0.0 ? strength * 4.0 / denom_as / p.delta_d : cplx(0.0, 0.0);
    return chi;
}

DampedRabiParams damped_rabi_params(const SystemParams& p) {
    const double G = kGamma;
    DampedRabiParams dr;
    dr.gamma_e = cplx(G, p.delta_c);
    cplx oe = std::sqrt(cplx(std::norm(p.omega_c) + p.delta_c * p.delta_c - G * G / 4.0,
                             G * p.delta_c));
    if (oe.real() < 0.0) oe = -oe;
    dr.omega_e = oe;
    dr.alpha = oe.real();
    dr.beta = oe.imag();
    dr.decay_time = 1.0 / (G / 2.0 - dr.beta);
    dr.overdamped = !(dr.alpha > 1e-12);
    if (!dr.overdamped) dr.period = 2.0 * kPi / dr.alpha;
    return dr;
}

double damped_rabi_wavepacket(const SystemParams& p, const DampedRabiParams& dr,
                              double tau) {
    if (tau < 0.0) return 0.0;
    const double G = kGamma;
    const cplx amp = G * p.omega_d * p.omega_c * p.od /
                     (8.0 * dr.omega_e * p.delta_d) *
                     csinc(cplx(p.delta_kl / 2.0, 0.0));
    const cplx s = std::sin(dr.omega_e * tau / 2.0);
    return std::norm(amp) * std::exp(-G * tau / 2.0) * std::norm(s);
}

Chi3Wavepacket wavepacket_chi3(const SystemParams& p, const GridSpec& g,
                               Chi3Form form) {
    validate(p);
    validate(g);
    if (p.delta_d == 0.0)
        throw invalid_argument_error("wavepacket_chi3 requires delta_d != 0 (far-detuned form)");

    const double G = kGamma;
    const double d_omega = (g.omega_max - g.omega_min) / g.n_omega;
    const double omega0 = g.omega_min + 0.5 * d_omega;

    auto kernel_at = [&](double w, Chi3Form f) -> cplx {
        const Susceptibilities chi = susceptibilities(p, w);
        const Susceptibilities chi_m = susceptibilities(p, -w);
        const cplx a1 = (p.omega_d / p.delta_d) * p.omega_c /
                        (std::norm(p.omega_c) -
                         4.0 * (w - p.delta_c + kI * p.gamma_21 / 2.0) * (w + kI * G / 2.0));
        // The generated pair accumulates the phase mismatch plus the two
        // exit-path dispersions over the emission position; averaging over a
        // uniform medium gives the sinc factor around the half-medium
        // propagation phase.
        switch (f) {
            case Chi3Form::kFull: {
                const cplx arg = p.delta_kl / 2.0 + chi.kl_chi_as / 4.0 -
                                 chi_m.kl_chi_s / 4.0;
                const cplx prop = std::exp(kI * (chi_m.kl_chi_s + chi.kl_chi_as) / 4.0);
                return csinc(arg) * a1 * prop;
            }
            case Chi3Form::kAntiStokesOnly: {
                const cplx arg = p.delta_kl / 2.0 + std::conj(chi_m.kl_chi_as) / 4.0;
                const cplx prop = std::exp(kI * chi.kl_chi_as / 4.0);
                return csinc(arg) * a1 * prop;
            }
            case Chi3Form::kFlatSinc:
            default:
                return csinc(cplx(p.delta_kl / 2.0, 0.0)) * a1;
        }
    };

    const double prefactor = G * p.od / 4.0;
    std::vector<cplx> kernel(g.n_omega);
    for (int i = 0; i < g.n_omega; ++i)
        kernel[i] = prefactor * kernel_at(omega0 + i * d_omega, form);

    const TauSeries ft = spectral_to_tau(kernel, omega0, d_omega, g.pad_factor);
    Chi3Wavepacket out;
    out.tau = ft.tau;
    out.d_tau = ft.d_tau;
    out.n = ft.n;
    out.w.resize(ft.n);
    for (int k = 0; k < ft.n; ++k) out.w[k] = std::norm(ft.values[k]);
    for (int k = 0; k < ft.n / 2; ++k) out.integral += out.w[k] * ft.d_tau;

    // report how much the Stokes-dispersion term changes the observable
    // wavepacket shape (unit-normalized τ profiles)
    if (form != Chi3Form::kFlatSinc) {
        const Chi3Form other = form == Chi3Form::kFull ? Chi3Form::kAntiStokesOnly
                                                       : Chi3Form::kFull;
        std::vector<cplx> k2(g.n_omega);
        for (int i = 0; i < g.n_omega; ++i)
            k2[i] = prefactor * kernel_at(omega0 + i * d_omega, other);
        const TauSeries ft2 = spectral_to_tau(k2, omega0, d_omega, g.pad_factor);
        double na = 0.0, nb = 0.0;
        for (int k = 0; k < ft.n / 2; ++k) {
            na += out.w[k] * out.w[k];
            nb += std::norm(ft2.values[k]) * std::norm(ft2.values[k]);
        }
        na = std::sqrt(na);
        nb = std::sqrt(nb);
        double dist = 0.0;
        for (int k = 0; k < ft.n / 2; ++k) {
            const double x = out.w[k] / na - std::norm(ft2.values[k]) / nb;
            dist += x * x;
        }
        out.form_difference_l2 = std::sqrt(dist);
    }
    return out;
}

double eit_group_delay(const SystemParams& p, double omega, double diff_step,
                       double kas_l) {
    auto re_sqrt_one_plus_chi = [&](double w) {
        const cplx chi = susceptibilities(p, w).kl_chi_as / kas_l;
        return std::real(std::sqrt(1.0 + chi));
    };
    const double d = (re_sqrt_one_plus_chi(omega + diff_step) -
                      re_sqrt_one_plus_chi(omega - diff_step)) /
                     (2.0 * diff_step);
    const double lc = p.flight_time;
    return lc * (re_sqrt_one_plus_chi(omega) - 1.0) + kas_l * d;
}

PulseResult propagate_pulse(const SystemParams& p, const std::vector<double>& t,
                            const std::vector<cplx>& envelope,
                            std::optional<double> carrier_offset) {
    validate(p);
    const int n = static_cast<int>(t.size());
    if (n < 2 || envelope.size() != t.size())
        throw invalid_argument_error("propagate_pulse: need a uniform t grid matching the envelope");
    const double dt = t[1] - t[0];
    const double w0 = carrier_offset.value_or(p.delta_c);

    // spectrum via e^{+iωt} transform, transfer, back via e^{−iωt}
    std::vector<cplx> buf(envelope);
    for (auto& v : buf) v = std::conj(v);
    fft_forward(buf);
    for (auto& v : buf) v = std::conj(v);
    const double d_omega = 2.0 * kPi / (n * dt);
    for (int k = 0; k < n; ++k) {
        const double u = (k < n / 2 ? k : k - n) * d_omega;
        const cplx kl_chi = susceptibilities(p, w0 + u).kl_chi_as;
        buf[k] *= std::exp(kI * kl_chi / 2.0);
    }
    fft_forward(buf);
    for (auto& v : buf) v /= static_cast<double>(n);

    PulseResult out;
    out.t = t;
    out.intensity_in.resize(n);
    out.intensity_out.resize(n);
    double peak = 0.0;
    for (int k = 0; k < n; ++k) {
        out.intensity_in[k] = std::norm(envelope[k]);
        out.intensity_out[k] = std::norm(buf[k]);
        out.energy_in += out.intensity_in[k] * dt;
        out.energy_out += out.intensity_out[k] * dt;
        peak = std::max(peak, out.intensity_out[k]);
    }
    if (peak > 0.0 &&
        std::max(out.intensity_out.front(), out.intensity_out.back()) > 1e-3 * peak)
        throw NumericalError("grid-too-short",
                             "pulse energy at the time-grid edge exceeds 1e-3 of peak");
    return out;
}

}  // namespace sfwm
