#ifndef SFWM_PROPAGATION_HPP
#define SFWM_PROPAGATION_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "sfwm/spectral.hpp"

namespace sfwm {

/// Entries of the 2×2 spatial propagation matrix, premultiplied by L so that
/// everything downstream is dimensionless. The atomic parts use the
/// substitution g²N/c = OD·Γ/(4L).
struct MediumMatrix {
    cplx g_r, kappa_s, kappa_as, gamma_as;
    Eigen::Matrix2cd m() const {
        Eigen::Matrix2cd out;
        out << g_r, kappa_s, kappa_as, gamma_as;
        return out;
    }
    cplx trace() const { return g_r + gamma_as; }
};

MediumMatrix propagation_matrix(const SystemParams& p, const SpectralPoint& pt);

/// exp(M) of a complex 2×2 via eigendecomposition, with a scaled Taylor
/// fallback when the eigenvalues are within 1e-6 relative distance.
Eigen::Matrix2cd expm2(const Eigen::Matrix2cd& m);

/// Reusable evaluator for exp(M·s) at many s values.
class MediumPropagator {
public:
    explicit MediumPropagator(const Eigen::Matrix2cd& m);
    Eigen::Matrix2cd at(double s) const;
    bool degenerate() const { return degenerate_; }

private:
    Eigen::Matrix2cd m_;
    cplx l1_, l2_;
    Eigen::Matrix2cd v_, vinv_;
    bool degenerate_ = false;
};

/// Forward (primed) and backward-output transfer coefficients at one ω.
struct TransferCoefficients {
    double omega = 0.0;
    cplx a, b, c, d;         ///< backward-output coefficients
    cplx a_p, b_p, c_p, d_p; ///< forward coefficients exp(M L)
    cplx g_r, gamma_as, kappa_s, kappa_as; ///< matrix entries (×L)
};

/// Backward reorganization of the forward solution. Throws
/// reorganization-singular when |D'| < 1e-12. `trace` is tr(M·L), used for
/// the cancellation-free A = exp(tr)/D'.
TransferCoefficients backward_reorganize(const Eigen::Matrix2cd& primed, cplx trace);

/// Noise kernels P_jk(z), Q_jk(z) on the z grid (n_z+1 Simpson samples),
/// normalized so the main rate/correlation integrals hold verbatim.
struct NoiseKernels {
    std::vector<double> z; ///< n_z+1 samples over [0, 1]
    /// p[ch][iz], q[ch][iz]; channel order kNoiseChannels
    std::array<std::vector<cplx>, 4> p, q;
};

NoiseKernels noise_kernels(const SystemParams& p, const SpectralPoint& pt,
                           const MediumPropagator& prop, cplx d_prime, cplx trace,
                           int n_z);

/// Composite Simpson weights over n_z intervals (n_z+1 samples, h = 1/n_z).
std::vector<double> simpson_weights(int n_z);

/// Everything the observables need, per frequency point. The z-resolved
/// kernels are folded into the three diffusion-weighted integrals.
struct GridPoint {
    double omega = 0.0;
    TransferCoefficients tc;
    double noise_s = 0.0;  ///< Σ ∫dz P* D_s P     (uncorrelated Stokes density)
    double noise_as = 0.0; ///< Σ ∫dz Q D_as Q*    (uncorrelated anti-Stokes density)
    cplx noise_x{0.0, 0.0}; ///< Σ ∫dz P* D_s Q    (cross kernel noise part)
};

struct SpectralGrid {
    SystemParams params;
    GridSpec grid;
    SteadyState steady;
    DiffusionMatrix diffusion;
    std::vector<double> omega;   ///< midpoint samples
    std::vector<GridPoint> pts;
    double d_omega = 0.0;
};

/// Solves the full per-ω pipeline (first-order response, transfer matrix,
/// noise kernels) with a parallel map over the frequency grid.
SpectralGrid solve_grid(const SystemParams& p, const GridSpec& g, int n_threads = 0);

/// Runs fn(i) for i in [0, n) on up to n_threads workers.
void parallel_for(int n, const std::function<void(int)>& fn, int n_threads = 0);

}  // namespace sfwm

#endif
