#ifndef SFWM_SPECTRAL_HPP
#define SFWM_SPECTRAL_HPP

#include <array>

#include <Eigen/Dense>

#include "sfwm/params.hpp"
#include "sfwm/steady_state.hpp"

namespace sfwm {

/// Flat label for a single-atom operator σ_jk, j,k ∈ 1..4.
struct OpLabel {
    int j = 1;
    int k = 1;
};

inline constexpr int op_index(int j, int k) { return (j - 1) * 4 + (k - 1); }
inline constexpr int op_index(OpLabel l) { return op_index(l.j, l.k); }
inline constexpr OpLabel op_conj(OpLabel l) { return {l.k, l.j}; }

/// The four Langevin noise channels entering the first-order equations,
/// in this fixed order everywhere.
inline constexpr std::array<OpLabel, 4> kNoiseChannels{{{2, 1}, {2, 3}, {4, 1}, {4, 3}}};

/// Pure-decay drift R_jk = Σ c σ_mn, one row per operator. Detuning terms
/// belong to the Hamiltonian and are excluded.
class RelaxationTable {
public:
    explicit RelaxationTable(double gamma_21);

    double coeff(OpLabel row, OpLabel col) const {
        return c_[op_index(row)][op_index(col)];
    }
    double gamma_21() const { return gamma_21_; }

private:
    double gamma_21_;
    std::array<std::array<double, 16>, 16> c_{};
};

/// ⟨σ_mn⟩ over the zeroth-order steady state.
cplx steady_expectation(const SteadyState& s, OpLabel mn);

/// Einstein relation: D_{ab,cd} = δ_{bc}⟨R_ad⟩ − ⟨R_ab σ_cd⟩ − ⟨σ_ab R_cd⟩,
/// with products reduced by σ_ab σ_cd = δ_bc σ_ad.
cplx diffusion_entry(const RelaxationTable& relax, const SteadyState& s,
                     OpLabel ab, OpLabel cd);

/// Diffusion blocks over the noise channels, prearranged for the rate and
/// correlation integrals.
struct DiffusionMatrix {
    /// stokes[i][j]  = D_{(ch_i)†, ch_j}   (enters R_s and the cross kernel)
    Eigen::Matrix4cd stokes;
    /// anti[i][j]    = D_{ch_i, (ch_j)†}   (enters R_as)
    Eigen::Matrix4cd anti;
};

DiffusionMatrix diffusion_matrix(const SteadyState& s, const RelaxationTable& relax);

/// First-order response at one frequency: σ̃23 and σ̃41 expanded over the
/// Stokes field, the conjugate anti-Stokes field, and the four noises.
struct SpectralPoint {
    double omega = 0.0;
    cplx eps23, eta23, eps41, eta41;
    std::array<cplx, 4> xi_s{};  ///< ξ_jk in σ̃23, channel order kNoiseChannels
    std::array<cplx, 4> xi_as{}; ///< ξ_jk in σ̃41
};

/// 4×4 system matrix of the Fourier-transformed first-order equations in
/// (σ̃21, σ̃23, σ̃41, σ̃43); ∂t → −iω.
Eigen::Matrix4cd first_order_matrix(const SystemParams& p, double omega);

/// Source vectors multiplying g_s ã_s and g_as* ã_as† e^{iΔkz}.
Eigen::Vector4cd stokes_source(const SteadyState& s);
Eigen::Vector4cd anti_stokes_source(const SteadyState& s);

/// Solves the first-order system. Throws pole-encountered if the matrix is
/// singular at this ω (possible only at γ21 = 0 with an exact pole hit);
/// the caller then perturbs ω by one grid ulp.
SpectralPoint solve_first_order(const SystemParams& p, const SteadyState& s, double omega);

}  // namespace sfwm

#endif
