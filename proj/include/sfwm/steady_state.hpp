#ifndef SFWM_STEADY_STATE_HPP
#define SFWM_STEADY_STATE_HPP

#include "sfwm/params.hpp"

namespace sfwm {

/// Zeroth-order steady-state expectation values of the collective atomic
/// operators with the quantum fields switched off.
struct SteadyState {
    double pop11 = 0.0;
    double pop22 = 0.0;
    double pop33 = 0.0;
    double pop44 = 0.0;
    cplx coh13{0.0, 0.0}; ///< ⟨σ13⟩
    cplx coh24{0.0, 0.0}; ///< ⟨σ24⟩
    double m_denominator = 0.0;
};

/// Closed-form steady state. Requires at least one of Ω_d, Ω_c nonzero
/// (otherwise the normalization M vanishes -> degenerate-input).
SteadyState solve_zeroth_order(const SystemParams& p);

}  // namespace sfwm

#endif
