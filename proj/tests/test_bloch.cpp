#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "slowlight/bloch.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/pulse.hpp"
#include "slowlight/units.hpp"

using namespace slowlight;

TEST_CASE("full mode reproduces resonant rabi flopping") {
    // Constant resonant drive without relaxation: w(t) = cos(Omega t).
    const double omega = 2.0e5;
    const double dt = 1e-8;
    const std::size_t n = 20000;
    const std::vector<cplx> drive(n, cplx(omega, 0.0));
    const BlochTrace trace =
        integrate_bloch_class(drive, dt, 0.0, 1e12, 1e12, BlochMode::full);

    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = dt * static_cast<double>(k);
        worst = std::max(worst, std::abs(trace.inversion[k] - std::cos(omega * t)));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("weak mode matches full mode for a feeble drive") {
    const Pulse p = make_gaussian_pulse(5e-5, 1e2, 0.0, 2.5e-7, 2000);  // Omega*T ~ 5e-3
    const double delta = 2.0e5;
    const BlochTrace weak =
        integrate_bloch_class(p.envelope, p.dt, delta, 10.0, 0.1, BlochMode::weak);
    const BlochTrace full =
        integrate_bloch_class(p.envelope, p.dt, delta, 10.0, 0.1, BlochMode::full);
    double worst = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        worst = std::max(worst, std::abs(weak.sigma[k] - full.sigma[k]));
        scale = std::max(scale, std::abs(full.sigma[k]));
    }
    CHECK(worst <= 1e-4 * scale);
}

TEST_CASE("weak mode stays put in the ground state") {
    const Pulse p = make_gaussian_pulse(5e-5, 1e2, 0.0, 2.5e-7, 2000);
    const BlochTrace weak =
        integrate_bloch_class(p.envelope, p.dt, 1e5, 10.0, 0.1, BlochMode::weak);
    CHECK(weak.inversion.empty());
}

TEST_CASE("full mode inversion barely moves for a feeble drive") {
    const Pulse p = make_gaussian_pulse(5e-5, 2e2, 0.0, 2.5e-7, 2000);  // Omega*T ~ 0.01
    const BlochTrace full =
        integrate_bloch_class(p.envelope, p.dt, 0.0, 1e6, 1e6, BlochMode::full);
    for (double w : full.inversion) CHECK(std::abs(w - 1.0) <= 1e-3);
}

TEST_CASE("far-detuned coherence follows the drive adiabatically") {
    // Steady response: sigma ~ Omega/(2 delta) + i Omega'/(2 delta^2).
    const double delta = 50.0 * hz_to_rad(10e3);
    const Pulse p = make_gaussian_pulse(5e-5, 1e3, 0.0, 1e-7, 5000);
    const BlochTrace trace =
        integrate_bloch_class(p.envelope, p.dt, delta, 10.0, 0.1, BlochMode::weak);
    double worst = 0.0;
    for (std::size_t k = 100; k + 100 < p.size(); ++k) {
        const double om = p.envelope[k].real();
        const double dom =
            (p.envelope[k + 1].real() - p.envelope[k - 1].real()) / (2.0 * p.dt);
        const cplx steady(om / (2.0 * delta), dom / (2.0 * delta * delta));
        worst = std::max(worst, std::abs(trace.sigma[k] - steady));
    }
    CHECK(worst <= 0.01 * p.peak_abs() / (2.0 * delta));
}

TEST_CASE("weak mode is exact for a piecewise-linear ramp") {
    // For a linear drive the closed-form particular solution is exact, so
    // halving dt must leave the endpoint unchanged to rounding.
    const double delta = 3.0e5;
    const double t2 = 1e-3;
    auto ramp = [](double t) { return 4.0e3 * t; };
    const double t_end = 1e-4;

    std::vector<cplx> coarse(101), fine(201);
    for (std::size_t k = 0; k < coarse.size(); ++k)
        coarse[k] = ramp(t_end * static_cast<double>(k) / 100.0);
    for (std::size_t k = 0; k < fine.size(); ++k)
        fine[k] = ramp(t_end * static_cast<double>(k) / 200.0);

    const BlochTrace a =
        integrate_bloch_class(coarse, t_end / 100.0, delta, 10.0, t2, BlochMode::weak);
    const BlochTrace b =
        integrate_bloch_class(fine, t_end / 200.0, delta, 10.0, t2, BlochMode::weak);
    CHECK(std::abs(a.sigma.back() - b.sigma.back()) <= 1e-13 * std::abs(b.sigma.back()) + 1e-18);
}

TEST_CASE("full mode rejects steps that cannot resolve the detuning") {
    const std::vector<cplx> drive(100, cplx(1.0, 0.0));
    CHECK_THROWS_AS(
        integrate_bloch_class(drive, 1e-5, 1e6, 10.0, 0.1, BlochMode::full),
        NumericalError);
    // T2/10 bound with a slow detuning.
    CHECK_THROWS_AS(
        integrate_bloch_class(drive, 1e-3, 1.0, 10.0, 1e-3, BlochMode::full),
        NumericalError);
}

TEST_CASE("adiabatic population follows the quarter-ratio law") {
    CHECK(adiabatic_population(0.1, 0.5) ==
          doctest::Approx(0.01).epsilon(1e-12));  // (0.1/(2*0.5))^2
    CHECK(adiabatic_population(2.0e4, 1.0e5) ==
          doctest::Approx(0.01).epsilon(1e-12));
    CHECK_THROWS_AS(adiabatic_population(1.0, 0.0), std::domain_error);
}

TEST_CASE("dressed-state coefficients are normalized and split correctly") {
    // At Omega = delta: c_minus^2 = (sqrt2 - 1)/(2 sqrt2).
    const AdiabaticCoefficients c = adiabatic_state_coefficients(1.0e5, 1.0e5);
    CHECK(c.c_plus * c.c_plus + c.c_minus * c.c_minus == doctest::Approx(1.0).epsilon(1e-12));
    const double expected = (std::sqrt(2.0) - 1.0) / (2.0 * std::sqrt(2.0));
    CHECK(c.c_minus * c.c_minus == doctest::Approx(expected).epsilon(1e-12));

    // Far detuned, the ground state is almost purely one dressed state.
    const AdiabaticCoefficients far = adiabatic_state_coefficients(1.0e3, 1.0e6);
    CHECK(far.c_minus * far.c_minus <= 1e-6);
    CHECK_THROWS_AS(adiabatic_state_coefficients(0.0, 0.0), std::domain_error);
}
