#include <doctest.h>

#include <cmath>

#include "sfwm/analytic.hpp"
#include "sfwm/observables.hpp"

using namespace sfwm;

namespace {
SystemParams eit15(double oc, double dc) {
    SystemParams p;
    p.od = 15.0;
    p.omega_d = 1.0;
    p.omega_c = oc;
    p.delta_c = dc;
    p.delta_d = 10.0;
    p.gamma_21 = 0.0;
    return p;
}
}  // namespace

TEST_CASE("transparency point of the anti-Stokes susceptibility") {
    for (double dc : {0.0, 1.0, 3.0}) {
        const SystemParams p = eit15(1.0, dc);
        CHECK(std::abs(susceptibilities(p, dc).kl_chi_as) < 1e-14);
    }
}

TEST_CASE("resonant opacity fixes the normalization") {
    // with the coupling off, the resonant intensity transmission is e^{−OD}
    SystemParams p = eit15(0.0, 0.0);
    const cplx kl = susceptibilities(p, 0.0).kl_chi_as;
    const double trans = std::norm(std::exp(cplx(0, 1) * kl / 2.0));
    CHECK(trans == doctest::Approx(std::exp(-p.od)).epsilon(1e-12));
}

TEST_CASE("passive medium: no gain on the anti-Stokes probe") {
    for (double g21 : {0.0, 1e-3, 0.1}) {
        SystemParams p = eit15(1.0, 1.0);
        p.gamma_21 = g21;
        for (double w = -20.0; w <= 20.0; w += 0.173)
            CHECK(susceptibilities(p, w).kl_chi_as.imag() >= -1e-13);
    }
}

TEST_CASE("group delay matches the resonant formula") {
    for (double dc : {0.0, 1.0, 3.0}) {
        const SystemParams p = eit15(1.0, dc);
        const double expect = p.od / std::norm(p.omega_c);
        CHECK(eit_group_delay(p, dc) == doctest::Approx(expect).epsilon(5e-3));
    }
    // 15/Γ in SI is about 394 ns
    const SystemParams p = eit15(1.0, 0.0);
    CHECK(to_si_time(eit_group_delay(p, 0.0), p) ==
          doctest::Approx(393.5e-9).epsilon(5e-3));
    SystemParams vac = p;
    vac.od = 0.0;
    for (double w : {-1.0, 0.0, 2.0})
        CHECK(std::abs(eit_group_delay(vac, w)) < 1e-12);
}

TEST_CASE("group delay is insensitive to the wavevector scale") {
    const SystemParams p = eit15(1.0, 0.0);
    const double a = eit_group_delay(p, 0.0, 1e-3, 1.0e3);
    const double b = eit_group_delay(p, 0.0, 1e-3, 1.0e9);
    CHECK(a == doctest::Approx(b).epsilon(1e-3));
}

TEST_CASE("damped-rabi parameters") {
    SystemParams p = eit15(4.0, 0.0);
    const DampedRabiParams dr = damped_rabi_params(p);
    CHECK(dr.beta == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(dr.decay_time == doctest::Approx(2.0).epsilon(1e-14));
    REQUIRE(dr.period.has_value());
    CHECK(*dr.period == doctest::Approx(2.0 * kPi / std::sqrt(15.75)).epsilon(1e-14));
    CHECK(to_si_time(*dr.period, p) == doctest::Approx(41.5e-9).epsilon(2e-2));

    // a coupling detuning slows the envelope decay
    SystemParams q = eit15(4.0, 2.0);
    CHECK(damped_rabi_params(q).decay_time > dr.decay_time);

    SystemParams od = eit15(0.3, 0.0);
    const DampedRabiParams drod = damped_rabi_params(od);
    CHECK(drod.overdamped);
    CHECK(!drod.period.has_value());
}

TEST_CASE("closed form matches the flat-sinc integral in the damped-rabi regime") {
    SystemParams p;
    p.od = 10.0;
    p.omega_d = 1.0;
    p.omega_c = 4.0;
    p.delta_d = 10.0;
    p.gamma_21 = 0.0;
    p.delta_kl = 0.37 * kPi;
    // the damped-Rabi poles are Γ/4 wide: sample them densely so the
    // midpoint rule is converged well below the comparison tolerance
    GridSpec g;
    g.omega_min = -640.0;
    g.omega_max = 640.0;
    g.n_omega = 524288;
    g.pad_factor = 2;
    const Chi3Wavepacket num = wavepacket_chi3(p, g, Chi3Form::kFlatSinc);
    const DampedRabiParams dr = damped_rabi_params(p);
    double peak = 0.0;
    for (int k = 0; k < num.n / 2; ++k) peak = std::max(peak, num.w[k]);
    int checked = 0;
    for (int k = 0; k < num.n / 2; ++k) {
        const double tau = num.tau[k];
        if (tau > 5.0 * dr.decay_time) break;
        const double cf = damped_rabi_wavepacket(p, dr, tau);
        // pointwise comparison where the wavepacket is numerically meaningful
        // (the sine zeros are excluded: both values sit below 0.1% of peak)
        if (std::max(cf, num.w[k]) < 1e-3 * peak) continue;
        CHECK(std::abs(cf - num.w[k]) < 0.02 * std::max(cf, num.w[k]));
        ++checked;
    }
    CHECK(checked > 200);
    CHECK(damped_rabi_wavepacket(p, dr, -1.0) == 0.0);
}

TEST_CASE("phase-matched peak beats the sinc zero") {
    SystemParams p;
    p.od = 10.0;
    p.omega_d = 1.0;
    p.omega_c = 4.0;
    p.delta_d = 10.0;
    p.gamma_21 = 0.0;
    GridSpec g;
    g.n_omega = 4096;
    p.delta_kl = 0.0;
    Chi3Wavepacket matched = wavepacket_chi3(p, g, Chi3Form::kFlatSinc);
    p.delta_kl = 2.0 * kPi; // sinc(π) = 0
    Chi3Wavepacket mismatched = wavepacket_chi3(p, g, Chi3Form::kFlatSinc);
    double pk_m = 0.0, pk_mm = 0.0;
    for (int k = 0; k < matched.n / 2; ++k) {
        pk_m = std::max(pk_m, matched.w[k]);
        pk_mm = std::max(pk_mm, mismatched.w[k]);
    }
    CHECK(pk_mm < 1e-10 * pk_m);
}

TEST_CASE("biphoton wavefunction wavepacket is causal and matches the operator route") {
    SystemParams p;
    p.od = 15.0;
    p.omega_d = 1.0;
    p.omega_c = 4.0;
    p.delta_d = 10.0;
    p.gamma_21 = 1e-3;
    p.delta_kl = 0.37 * kPi;
    GridSpec g;
    DetectionParams det;
    const Analysis a = analyze(p, g, det);
    const Chi3Wavepacket c = wavepacket_chi3(p, g, Chi3Form::kAntiStokesOnly);
    REQUIRE(c.n == a.wp.n);

    // causality: negligible weight at negative delays
    double neg = 0.0;
    for (int k = c.n / 2; k < c.n; ++k) neg += c.w[k] * c.d_tau;
    CHECK(neg < 0.01 * c.integral);

    // normalized shape against the Heisenberg-Langevin correlation kernel
    double nu = 0.0, nv = 0.0;
    for (int k = 0; k < c.n / 2; ++k) {
        const double u = a.wp.g2_cross[k] - 1.0;
        nu += u * u;
        nv += c.w[k] * c.w[k];
    }
    nu = std::sqrt(nu);
    nv = std::sqrt(nv);
    double dist = 0.0;
    for (int k = 0; k < c.n / 2; ++k) {
        const double x = (a.wp.g2_cross[k] - 1.0) / nu - c.w[k] / nv;
        dist += x * x;
    }
    CHECK(std::sqrt(dist) < 0.05);

    // absolute normalization: the integral is the correlated pair rate
    CHECK(c.integral ==
          doctest::Approx(a.rates.r_b * a.pairing.value).epsilon(0.05));

    // the Stokes-dispersion correction is small but reported
    const Chi3Wavepacket full = wavepacket_chi3(p, g, Chi3Form::kFull);
    CHECK(full.form_difference_l2 < 0.05);
    CHECK(full.form_difference_l2 > 0.0);
}

TEST_CASE("slow-light pulse propagation") {
    SystemParams p = eit15(1.0, 0.0);
    const int n = 8192;
    const double t_lo = from_si_time(-1500e-9, p);
    const double t_hi = from_si_time(6000e-9, p);
    const double tau0 = from_si_time(200e-9, p); // 400 ns 1/e² full width
    std::vector<double> t(n);
    std::vector<cplx> env(n);
    const double dt = (t_hi - t_lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        t[i] = t_lo + i * dt;
        env[i] = std::exp(-(t[i] * t[i]) / (tau0 * tau0));
    }

    SUBCASE("vacuum returns the input") {
        SystemParams vac = p;
        vac.od = 0.0;
        const PulseResult pr = propagate_pulse(vac, t, env);
        for (int i = 0; i < n; i += 97)
            CHECK(pr.intensity_out[i] ==
                  doctest::Approx(pr.intensity_in[i]).epsilon(1e-10));
    }

    SUBCASE("delay, energy, and the detuning tail") {
        const PulseResult pr = propagate_pulse(p, t, env);
        auto peak_at = [&](const std::vector<double>& v) {
            int k = 0;
            for (int i = 0; i < n; ++i)
                if (v[i] > v[k]) k = i;
            return t[k];
        };
        const double delay = to_si_time(peak_at(pr.intensity_out) - peak_at(pr.intensity_in), p);
        // group delay 393.5 ns, reduced a little by the EIT filtering
        CHECK(delay > 370e-9);
        CHECK(delay < 400e-9);
        CHECK(pr.energy_out <= pr.energy_in);

        // a larger coupling detuning squeezes the slow-light window, so the
        // trailing edge right after the delayed pulse shrinks
        SystemParams q = eit15(1.0, 3.0);
        const PulseResult pr3 = propagate_pulse(q, t, env);
        int i700 = 0;
        for (int i = 0; i < n; ++i)
            if (to_si_time(t[i], p) <= 700e-9) i700 = i;
        CHECK(pr3.intensity_out[i700] < pr.intensity_out[i700]);
        CHECK(pr3.energy_out <= pr3.energy_in);
    }

    SUBCASE("aliasing guard") {
        // a window too short for the delayed pulse leaves energy at the edge
        const int m = 1024;
        std::vector<double> ts(m);
        std::vector<cplx> es(m);
        const double lo = from_si_time(-300e-9, p), hi = from_si_time(500e-9, p);
        (void)0;
        for (int i = 0; i < m; ++i) {
            ts[i] = lo + i * (hi - lo) / (m - 1);
            es[i] = std::exp(-(ts[i] * ts[i]) / (tau0 * tau0));
        }
        try {
            propagate_pulse(p, ts, es);
            FAIL("expected grid-too-short");
        } catch (const NumericalError& e) {
            CHECK(e.code() == "grid-too-short");
        }
    }
}
