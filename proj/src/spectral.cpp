#include "sfwm/spectral.hpp"

#include <cmath>

namespace sfwm {

namespace {
constexpr double kGamma = 1.0; // Γ in its own units
constexpr cplx kI{0.0, 1.0};
}  // namespace

RelaxationTable::RelaxationTable(double gamma_21) : gamma_21_(gamma_21) {
    for (auto& row : c_) row.fill(0.0);
    auto set = [this](OpLabel r, OpLabel col, double v) {
        c_[op_index(r)][op_index(col)] = v;
    };
    const double G = kGamma;
    // population feeding: Γ31 = Γ32 = Γ41 = Γ42 = Γ/2
    set({1, 1}, {3, 3}, G / 2); set({1, 1}, {4, 4}, G / 2);
    set({2, 2}, {3, 3}, G / 2); set({2, 2}, {4, 4}, G / 2);
    set({3, 3}, {3, 3}, -G);
    set({4, 4}, {4, 4}, -G);
    // coherence decays −(γ_jk/2)σ_jk with γ31 = γ32 = γ41 = γ42 = Γ, γ43 = 2Γ
    const std::array<std::pair<OpLabel, double>, 12> decays{{
        {{1, 3}, G}, {{3, 1}, G}, {{2, 4}, G}, {{4, 2}, G},
        {{2, 3}, G}, {{3, 2}, G}, {{1, 4}, G}, {{4, 1}, G},
        {{1, 2}, gamma_21}, {{2, 1}, gamma_21},
        {{3, 4}, 2 * G}, {{4, 3}, 2 * G},
    }};
    for (const auto& [lbl, g] : decays) set(lbl, lbl, -g / 2);
}

cplx steady_expectation(const SteadyState& s, OpLabel mn) {
    const int m = mn.j, n = mn.k;
    if (m == n) {
        switch (m) {
            case 1: return s.pop11;
            case 2: return s.pop22;
            case 3: return s.pop33;
            default: return s.pop44;
        }
    }
    if (m == 1 && n == 3) return s.coh13;
    if (m == 3 && n == 1) return std::conj(s.coh13);
    if (m == 2 && n == 4) return s.coh24;
    if (m == 4 && n == 2) return std::conj(s.coh24);
    return {0.0, 0.0};
}

namespace {

cplx expect_R(const RelaxationTable& relax, const SteadyState& s, OpLabel jk) {
    cplx acc{0.0, 0.0};
    for (int m = 1; m <= 4; ++m)
        for (int n = 1; n <= 4; ++n) {
            const double c = relax.coeff(jk, {m, n});
            if (c != 0.0) acc += c * steady_expectation(s, {m, n});
        }
    return acc;
}

}  // namespace

cplx diffusion_entry(const RelaxationTable& relax, const SteadyState& s,
                     OpLabel ab, OpLabel cd) {
    const int a = ab.j, b = ab.k, c = cd.j, d = cd.k;
    if (a < 1 || a > 4 || b < 1 || b > 4 || c < 1 || c > 4 || d < 1 || d > 4)
        throw NumericalError("internal-consistency",
                             "diffusion entry outside the 4-level operator space");
    cplx t1{0.0, 0.0};
    if (b == c) t1 = expect_R(relax, s, {a, d});
    // ⟨R_ab σ_cd⟩ = Σ r[ab][mn] δ_{nc} ⟨σ_md⟩
    cplx t2{0.0, 0.0};
    for (int m = 1; m <= 4; ++m) {
        const double r = relax.coeff(ab, {m, c});
        if (r != 0.0) t2 += r * steady_expectation(s, {m, d});
    }
    // ⟨σ_ab R_cd⟩ = Σ r[cd][mn] δ_{bm} ⟨σ_an⟩
    cplx t3{0.0, 0.0};
    for (int n = 1; n <= 4; ++n) {
        const double r = relax.coeff(cd, {b, n});
        if (r != 0.0) t3 += r * steady_expectation(s, {a, n});
    }
    return t1 - t2 - t3;
}

DiffusionMatrix diffusion_matrix(const SteadyState& s, const RelaxationTable& relax) {
    DiffusionMatrix d;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            d.stokes(i, j) = diffusion_entry(relax, s, op_conj(kNoiseChannels[i]),
                                             kNoiseChannels[j]);
            d.anti(i, j) = diffusion_entry(relax, s, kNoiseChannels[i],
                                           op_conj(kNoiseChannels[j]));
        }
    return d;
}

Eigen::Matrix4cd first_order_matrix(const SystemParams& p, double omega) {
    const double G = kGamma;
    const cplx miw{0.0, -omega};
    const cplx od = p.omega_d, oc = p.omega_c;
    Eigen::Matrix4cd A;
    // rows/cols ordered (σ21, σ23, σ41, σ43)
    A(0, 0) = miw + p.gamma_21 / 2.0;
    A(0, 1) = -kI * std::conj(od) / 2.0;
    A(0, 2) = kI * oc / 2.0;
    A(0, 3) = 0.0;

    A(1, 0) = -kI * od / 2.0;
    A(1, 1) = miw + (G - cplx(0.0, 2.0 * p.delta_d)) / 2.0;
    A(1, 2) = 0.0;
    A(1, 3) = kI * oc / 2.0;

    A(2, 0) = kI * std::conj(oc) / 2.0;
    A(2, 1) = 0.0;
    A(2, 2) = miw + (G + cplx(0.0, 2.0 * p.delta_c)) / 2.0;
    A(2, 3) = -kI * std::conj(od) / 2.0;

    A(3, 0) = 0.0;
    A(3, 1) = kI * std::conj(oc) / 2.0;
    A(3, 2) = -kI * od / 2.0;
    A(3, 3) = miw + cplx(G, -p.delta_d + p.delta_c);
    return A;
}

Eigen::Vector4cd stokes_source(const SteadyState& s) {
    Eigen::Vector4cd b;
    b << -kI * std::conj(s.coh13),
         kI * (s.pop22 - s.pop33),
         cplx(0.0, 0.0),
         kI * std::conj(s.coh24);
    return b;
}

Eigen::Vector4cd anti_stokes_source(const SteadyState& s) {
    Eigen::Vector4cd b;
    b << kI * s.coh24,
         cplx(0.0, 0.0),
         -kI * (s.pop11 - s.pop44),
         -kI * s.coh13;
    return b;
}

SpectralPoint solve_first_order(const SystemParams& p, const SteadyState& s, double omega) {
    const Eigen::Matrix4cd A = first_order_matrix(p, omega);
    Eigen::PartialPivLU<Eigen::Matrix4cd> lu(A);
    const double rcond_proxy = std::abs(lu.determinant());
    if (!(rcond_proxy > 1e-300))
        throw NumericalError("pole-encountered",
                             "first-order system singular at omega = " + std::to_string(omega));

    SpectralPoint pt;
    pt.omega = omega;
    const Eigen::Vector4cd xs = lu.solve(stokes_source(s));
    const Eigen::Vector4cd xa = lu.solve(anti_stokes_source(s));
    pt.eps23 = xs(1);
    pt.eps41 = xs(2);
    pt.eta23 = xa(1);
    pt.eta41 = xa(2);
    const Eigen::Matrix4cd Ainv = lu.solve(Eigen::Matrix4cd::Identity());
    for (int ch = 0; ch < 4; ++ch) {
        pt.xi_s[ch] = Ainv(1, ch);
        pt.xi_as[ch] = Ainv(2, ch);
    }
    return pt;
}

}  // namespace sfwm
