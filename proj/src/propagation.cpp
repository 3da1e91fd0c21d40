#include "sfwm/propagation.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace sfwm {

namespace {
constexpr cplx kI{0.0, 1.0};

double max_abs(const Eigen::Matrix2cd& m) {
    double v = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) v = std::max(v, std::abs(m(i, j)));
    return v;
}

void check_gain(const Eigen::Matrix2cd& m) {
    if (max_abs(m) > 700.0)
        throw NumericalError("gain-overflow",
                             "propagation matrix entries exceed the exp overflow guard");
}

Eigen::Matrix2cd expm2_taylor(const Eigen::Matrix2cd& m) {
    // scaling and squaring with a plain Taylor series; fine at ||T|| <= 1/2
    const double norm = max_abs(m);
    int k = 0;
    if (norm > 0.5) k = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const Eigen::Matrix2cd t = m / std::pow(2.0, k);
    Eigen::Matrix2cd sum = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd term = Eigen::Matrix2cd::Identity();
    for (int n = 1; n < 40; ++n) {
        term = (term * t) / static_cast<double>(n);
        sum += term;
        if (max_abs(term) < 1e-18 * max_abs(sum)) break;
    }
    for (int i = 0; i < k; ++i) sum = sum * sum;
    return sum;
}

}  // namespace

MediumMatrix propagation_matrix(const SystemParams& p, const SpectralPoint& pt) {
    const double strength = p.od / 4.0; // OD·Γ/(4L) × L, Γ = 1
    const double fp = p.free_space_phase ? pt.omega * p.flight_time : 0.0;
    MediumMatrix m;
    m.g_r = kI * strength * pt.eps23 + kI * fp;
    m.gamma_as = kI * strength * pt.eta41 + kI * p.delta_kl - kI * fp;
    m.kappa_s = kI * strength * pt.eta23;
    m.kappa_as = kI * strength * pt.eps41;
    return m;
}

MediumPropagator::MediumPropagator(const Eigen::Matrix2cd& m) : m_(m) {
    check_gain(m);
    const cplx tr = m(0, 0) + m(1, 1);
    const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const cplx mid = tr / 2.0;
    const cplx s = std::sqrt(mid * mid - det);
    l1_ = mid + s;
    l2_ = mid - s;
    const double scale = std::max({std::abs(l1_), std::abs(l2_), 1e-30});
    if (std::abs(l1_ - l2_) < 1e-6 * scale) {
        degenerate_ = true;
        return;
    }
    // eigenvector columns; pick the better-conditioned construction
    Eigen::Matrix2cd v;
    if (std::abs(m(0, 1)) >= std::abs(m(1, 0))) {
        v.col(0) << m(0, 1), l1_ - m(0, 0);
        v.col(1) << m(0, 1), l2_ - m(0, 0);
    } else {
        v.col(0) << l1_ - m(1, 1), m(1, 0);
        v.col(1) << l2_ - m(1, 1), m(1, 0);
    }
    const cplx vdet = v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0);
    if (std::abs(vdet) < 1e-12 * max_abs(v) * max_abs(v)) {
        degenerate_ = true;
        return;
    }
    v_ = v;
    vinv_ << v(1, 1), -v(0, 1), -v(1, 0), v(0, 0);
    vinv_ /= vdet;
}

Eigen::Matrix2cd MediumPropagator::at(double s) const {
    if (degenerate_) return expm2_taylor(m_ * s);
    Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
    d(0, 0) = std::exp(l1_ * s);
    d(1, 1) = std::exp(l2_ * s);
    return v_ * d * vinv_;
}

Eigen::Matrix2cd expm2(const Eigen::Matrix2cd& m) {
    check_gain(m);
    MediumPropagator prop(m);
    return prop.at(1.0);
}

TransferCoefficients backward_reorganize(const Eigen::Matrix2cd& primed, cplx trace) {
    TransferCoefficients tc;
    tc.a_p = primed(0, 0);
    tc.b_p = primed(0, 1);
    tc.c_p = primed(1, 0);
    tc.d_p = primed(1, 1);
    if (std::abs(tc.d_p) < 1e-12)
        throw NumericalError("reorganization-singular",
                             "backward reorganization: |D'| < 1e-12");
    // A = A' − B'C'/D' collapses to det(exp(M L))/D' = exp(tr M L)/D', which
    // stays accurate when the exp entries are exponentially large.
    tc.a = std::exp(trace) / tc.d_p;
    tc.b = tc.b_p / tc.d_p;
    tc.c = -tc.c_p / tc.d_p;
    tc.d = 1.0 / tc.d_p;
    return tc;
}

std::vector<double> simpson_weights(int n_z) {
    const double h = 1.0 / n_z;
    std::vector<double> w(n_z + 1, 0.0);
    w[0] = w[n_z] = h / 3.0;
    for (int i = 1; i < n_z; ++i) w[i] = (i % 2 ? 4.0 : 2.0) * h / 3.0;
    return w;
}

NoiseKernels noise_kernels(const SystemParams& p, const SpectralPoint& pt,
                           const MediumPropagator& prop, cplx d_prime, cplx trace,
                           int n_z) {
    NoiseKernels k;
    k.z.resize(n_z + 1);
    for (auto& v : k.p) v.resize(n_z + 1);
    for (auto& v : k.q) v.resize(n_z + 1);

    const cplx amp = kI * std::sqrt(p.od / 4.0); // i·√(OD Γ / 4L), Γ = L = 1
    std::array<cplx, 4> s1{}, s2{};
    for (int ch = 0; ch < 4; ++ch) {
        s1[ch] = amp * pt.xi_s[ch];
        s2[ch] = amp * pt.xi_as[ch];
    }
    for (int iz = 0; iz <= n_z; ++iz) {
        const double z = static_cast<double>(iz) / n_z;
        k.z[iz] = z;
        // P(z) = P' − (B'/D')Q' evaluated in product form to avoid the
        // catastrophic cancellation between exponentially large terms:
        //   P(z) = e^{tr·(1−z)} [F22(z) s1 − F12(z) s2] / D',  F(z) = exp(M z)
        //   Q(z) = −[E21(z) s1 + E22(z) s2] / D',              E(z) = exp(M(1−z))
        const Eigen::Matrix2cd f = prop.at(z);
        const Eigen::Matrix2cd e = prop.at(1.0 - z);
        const cplx damp = std::exp(trace * (1.0 - z)) / d_prime;
        for (int ch = 0; ch < 4; ++ch) {
            k.p[ch][iz] = damp * (f(1, 1) * s1[ch] - f(0, 1) * s2[ch]);
            k.q[ch][iz] = -(e(1, 0) * s1[ch] + e(1, 1) * s2[ch]) / d_prime;
        }
    }
    return k;
}

void parallel_for(int n, const std::function<void(int)>& fn, int n_threads) {
    int workers = n_threads > 0 ? n_threads
                                : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto body = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

SpectralGrid solve_grid(const SystemParams& p, const GridSpec& g, int n_threads) {
    validate(p);
    validate(g);
    SpectralGrid out;
    out.params = p;
    out.grid = g;
    out.steady = solve_zeroth_order(p);
    const RelaxationTable relax(p.gamma_21);
    out.diffusion = diffusion_matrix(out.steady, relax);
    out.d_omega = (g.omega_max - g.omega_min) / g.n_omega;
    out.omega.resize(g.n_omega);
    out.pts.resize(g.n_omega);
    for (int i = 0; i < g.n_omega; ++i)
        out.omega[i] = g.omega_min + (i + 0.5) * out.d_omega;

    const std::vector<double> w = simpson_weights(g.n_z);
    const Eigen::Matrix4cd ds = out.diffusion.stokes;
    const Eigen::Matrix4cd da = out.diffusion.anti;

    parallel_for(g.n_omega, [&](int i) {
        double omega = out.omega[i];
        SpectralPoint pt;
        try {
            pt = solve_first_order(p, out.steady, omega);
        } catch (const NumericalError& e) {
            if (e.code() != "pole-encountered") throw;
            // exact pole hit: nudge by one grid ulp
            omega += out.d_omega * 1e-9;
            pt = solve_first_order(p, out.steady, omega);
        }
        const MediumMatrix mm = propagation_matrix(p, pt);
        const Eigen::Matrix2cd m2 = mm.m();
        const MediumPropagator prop(m2);
        TransferCoefficients tc = backward_reorganize(prop.at(1.0), mm.trace());
        tc.omega = out.omega[i];
        tc.g_r = mm.g_r;
        tc.gamma_as = mm.gamma_as;
        tc.kappa_s = mm.kappa_s;
        tc.kappa_as = mm.kappa_as;

        const NoiseKernels k =
            noise_kernels(p, pt, prop, tc.d_p, mm.trace(), g.n_z);

        GridPoint gp;
        gp.omega = out.omega[i];
        gp.tc = tc;
        for (int iz = 0; iz <= g.n_z; ++iz) {
            Eigen::Vector4cd pv, qv;
            for (int ch = 0; ch < 4; ++ch) {
                pv(ch) = k.p[ch][iz];
                qv(ch) = k.q[ch][iz];
            }
            // Σ P*_jk Ds P_j'k',  Σ Q_jk Da Q*_j'k',  Σ P*_jk Ds Q_j'k'
            gp.noise_s += w[iz] * std::real(pv.dot(ds * pv));
            gp.noise_as += w[iz] * std::real((qv.transpose() * da * qv.conjugate())(0, 0));
            gp.noise_x += w[iz] * pv.dot(ds * qv);
        }
        out.pts[i] = gp;
    }, n_threads);
    return out;
}

}  // namespace sfwm
