#include "sfwm/steady_state.hpp"

#include <cmath>

namespace sfwm {

SteadyState solve_zeroth_order(const SystemParams& p) {
    const double G = 1.0; // Γ
    const double od2 = std::norm(p.omega_d);
    const double oc2 = std::norm(p.omega_c);
    const double dd = p.delta_d;
    const double dc = p.delta_c;

    const double M = od2 * (G * G + 4.0 * dc * dc) + oc2 * (G * G + 4.0 * dd * dd)
                     + 4.0 * od2 * oc2;
    if (M <= 0.0)
        throw NumericalError("degenerate-input",
                             "steady state undefined: both Rabi frequencies are zero");

    SteadyState s;
    s.m_denominator = M;
    s.pop11 = (oc2 * (G * G + 4.0 * dd * dd) + od2 * oc2) / M;
    s.pop22 = (od2 * (G * G + 4.0 * dc * dc) + od2 * oc2) / M;
    s.pop33 = od2 * oc2 / M;
    s.pop44 = s.pop33;
    s.coh13 = cplx(0.0, 1.0) * (G + cplx(0.0, 2.0 * dd)) * oc2 * p.omega_d / M;
    s.coh24 = cplx(0.0, 1.0) * (G + cplx(0.0, 2.0 * dc)) * od2 * p.omega_c / M;
    return s;
}

}  // namespace sfwm
