#include <doctest.h>

#include <cmath>

#include "sfwm/params.hpp"

using namespace sfwm;

TEST_CASE("si time conversion") {
    SystemParams p;
    CHECK(to_si_time(0.0, p) == 0.0);

    // 2/Γ at Γ = 2π·6.066 MHz is 52.5 ns
    SystemParams q;
    q.gamma_si = 2.0 * kPi * 6.066e6;
    CHECK(to_si_time(2.0, q) == doctest::Approx(52.48e-9).epsilon(1e-3));

    // damped-Rabi period at Ω_c = 4Γ: 2π/√15.75 in 1/Γ lands near 42 ns
    const double tau_r = 2.0 * kPi / std::sqrt(15.75);
    const double tau_r_si = to_si_time(tau_r, p);
    CHECK(tau_r_si > 40e-9);
    CHECK(tau_r_si < 43e-9);

    CHECK_THROWS_AS(to_si_time(std::nan(""), p), ConfigError);
}

TEST_CASE("si round trip") {
    SystemParams p;
    for (double x : {1e-12, 3.7e-3, 1.0, 42.0, 8.4e7}) {
        CHECK(to_si_time(from_si_time(x, p), p) == doctest::Approx(x).epsilon(1e-15));
        CHECK(from_si_time(to_si_time(x, p), p) == doctest::Approx(x).epsilon(1e-15));
    }
}

TEST_CASE("params validation") {
    SystemParams p;
    p.od = 20.0;
    p.omega_d = 3.0;
    p.omega_c = 4.0;
    p.delta_d = 5.0;
    CHECK_NOTHROW(validate(p));

    SystemParams bad = p;
    bad.od = -1.0;
    CHECK_THROWS_WITH_AS(validate(bad), doctest::Contains("od"), ConfigError);

    bad = p;
    bad.gamma_si = 0.0;
    CHECK_THROWS_WITH_AS(validate(bad), doctest::Contains("gamma_si"), ConfigError);

    bad = p;
    bad.gamma_21 = -0.1;
    CHECK_THROWS_AS(validate(bad), ConfigError);

    bad = p;
    bad.omega_d = cplx(std::nan(""), 0.0);
    CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("grid validation") {
    GridSpec g;
    CHECK_NOTHROW(validate(g));
    GridSpec bad = g;
    bad.n_omega = 3000;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = g;
    bad.n_z = 17;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = g;
    bad.omega_min = bad.omega_max;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = g;
    bad.n_z = 8;
    CHECK_THROWS_AS(validate(bad), ConfigError);
}

#include <random>

#include "sfwm/fft.hpp"

TEST_CASE("fft against a direct transform") {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int n = 64;
    std::vector<cplx> x(n);
    for (auto& v : x) v = cplx(u(rng), u(rng));

    std::vector<cplx> got = x;
    fft_forward(got);
    for (int k = 0; k < n; ++k) {
        cplx direct{0.0, 0.0};
        for (int j = 0; j < n; ++j)
            direct += x[j] * std::exp(cplx(0.0, -2.0 * kPi * j * k / n));
        CHECK(std::abs(got[k] - direct) < 1e-12 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("spectral-to-delay transform against direct evaluation") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int n = 128;
    const double omega0 = -3.7, d_omega = 0.11;
    std::vector<cplx> kernel(n);
    for (auto& v : kernel) v = cplx(u(rng), u(rng));

    const TauSeries ts = spectral_to_tau(kernel, omega0, d_omega, 4);
    for (int k : {0, 1, 7, ts.n / 2 - 1, ts.n / 2, ts.n - 3}) {
        cplx direct{0.0, 0.0};
        for (int j = 0; j < n; ++j)
            direct += kernel[j] *
                      std::exp(cplx(0.0, -(omega0 + j * d_omega) * ts.tau[k]));
        direct *= d_omega / (2.0 * kPi);
        CHECK(std::abs(ts.values[k] - direct) < 1e-12 * std::max(1.0, std::abs(direct)));
    }
}
