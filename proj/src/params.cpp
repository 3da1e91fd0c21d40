#include "sfwm/params.hpp"

#include <cmath>
#include <string>

namespace sfwm {

namespace {

bool finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

const SystemParams& validate(const SystemParams& p) {
    auto fail = [](const std::string& field, const std::string& why) {
        throw invalid_argument_error("SystemParams." + field + " " + why);
    };
    if (!std::isfinite(p.od)) fail("od", "is not finite");
    if (p.od < 0.0) fail("od", "must be >= 0");
    if (!finite(p.omega_d)) fail("omega_d", "is not finite");
    if (!finite(p.omega_c)) fail("omega_c", "is not finite");
    if (!std::isfinite(p.delta_d)) fail("delta_d", "is not finite");
    if (!std::isfinite(p.delta_c)) fail("delta_c", "is not finite");
    if (!std::isfinite(p.gamma_21)) fail("gamma_21", "is not finite");
    if (p.gamma_21 < 0.0) fail("gamma_21", "must be >= 0");
    if (!std::isfinite(p.delta_kl)) fail("delta_kl", "is not finite");
    if (!std::isfinite(p.gamma_si)) fail("gamma_si", "is not finite");
    if (p.gamma_si <= 0.0) fail("gamma_si", "must be > 0");
    if (!std::isfinite(p.flight_time)) fail("flight_time", "is not finite");
    if (p.flight_time < 0.0) fail("flight_time", "must be >= 0");
    return p;
}

void validate(const GridSpec& g) {
    auto fail = [](const std::string& field, const std::string& why) {
        throw invalid_argument_error("GridSpec." + field + " " + why);
    };
    if (!(g.omega_min < g.omega_max)) fail("omega_min", "must be < omega_max");
    if (g.n_omega < 1024) fail("n_omega", "must be >= 1024");
    if ((g.n_omega & (g.n_omega - 1)) != 0) fail("n_omega", "must be a power of two");
    if (g.n_z < 16) fail("n_z", "must be >= 16");
    if (g.n_z % 2 != 0) fail("n_z", "must be even (Simpson intervals)");
    if (g.pad_factor < 1 || (g.pad_factor & (g.pad_factor - 1)) != 0)
        fail("pad_factor", "must be a power of two >= 1");
}

double to_si_time(double t_gamma, const SystemParams& p) {
    if (!std::isfinite(t_gamma)) throw invalid_argument_error("to_si_time: non-finite input");
    return t_gamma / p.gamma_si;
}

double from_si_time(double t_si, const SystemParams& p) {
    if (!std::isfinite(t_si)) throw invalid_argument_error("from_si_time: non-finite input");
    return t_si * p.gamma_si;
}

double to_si_rate(double r_gamma, const SystemParams& p) {
    if (!std::isfinite(r_gamma)) throw invalid_argument_error("to_si_rate: non-finite input");
    return r_gamma * p.gamma_si;
}

double to_linear_mhz(double omega_gamma, const SystemParams& p) {
    return omega_gamma * p.gamma_si / (2.0 * kPi) / 1.0e6;
}

}  // namespace sfwm
