#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "slowlight/medium.hpp"
#include "slowlight/response.hpp"
#include "slowlight/units.hpp"

using namespace slowlight;

namespace {

Medium burnt_medium(double depth = 1.0) {
    Medium m;
    m.alpha0 = 850.0;
    m.length = 0.005;
    m.hole = SpectralHole{0.0, hz_to_rad(860e3), depth};
    m.gamma_inh = hz_to_rad(20e9);
    m.t2 = 0.01;
    m.t1 = 10.0;
    return m;
}

std::vector<double> uniform_grid(double half_extent, std::size_t n) {
    std::vector<double> g(n);
    const double step = 2.0 * half_extent / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = -half_extent + step * static_cast<double>(i);
    return g;
}

} // namespace

TEST_CASE("response real part reproduces minus half the absorption") {
    const Medium m = burnt_medium(0.7);
    const std::vector<double> grid = uniform_grid(20.0 * m.hole.width_fwhm, 2001);
    const ComplexResponse r = complex_response(grid, m);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double expected = -0.5 * absorption_coefficient(grid[i], m);
        CHECK(r.exponent_per_meter[i].real() == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("response phase is odd with slope alpha0*depth/width at the center") {
    const Medium m = burnt_medium(0.6);
    const std::vector<double> grid = uniform_grid(10.0 * m.hole.width_fwhm, 4001);
    const ComplexResponse r = complex_response(grid, m);

    const std::size_t c = grid.size() / 2;  // grid has a zero node
    CHECK(r.exponent_per_meter[c].imag() == doctest::Approx(0.0));
    for (std::size_t k = 1; k < 40; ++k) {
        CHECK(r.exponent_per_meter[c + k].imag() ==
              doctest::Approx(-r.exponent_per_meter[c - k].imag()).epsilon(1e-12));
        CHECK(r.exponent_per_meter[c + k].imag() > 0.0);
    }
    const double slope =
        (r.exponent_per_meter[c + 1].imag() - r.exponent_per_meter[c - 1].imag()) /
        (grid[c + 1] - grid[c - 1]);
    CHECK(slope ==
          doctest::Approx(m.alpha0 * m.hole.depth / m.hole.width_fwhm).epsilon(1e-4));
}

TEST_CASE("response phase matches the analytic dispersive lorentzian") {
    // Im exponent = (alpha0*depth/2) * g*u / (g^2 + u^2) with g = width/2.
    const Medium m = burnt_medium(1.0);
    const double g = 0.5 * m.hole.width_fwhm;
    const std::vector<double> grid = uniform_grid(50.0 * m.hole.width_fwhm, 999);
    const ComplexResponse r = complex_response(grid, m);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double u = grid[i];
        const double expected = 0.5 * m.alpha0 * g * u / (g * g + u * u);
        CHECK(r.exponent_per_meter[i].imag() == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("kramers-kronig reconstruction matches the analytic phase") {
    const Medium m = burnt_medium(1.0);
    const double g = 0.5 * m.hole.width_fwhm;
    // Wide flat-edged window so the periodic transform sees a settled wing.
    const std::vector<double> grid = uniform_grid(100.0 * m.hole.width_fwhm, 8192);
    std::vector<double> alpha(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        alpha[i] = absorption_coefficient(grid[i], m);

    const KramersKronigResult kk = kramers_kronig(grid, alpha);
    CHECK(!kk.edge_warning);

    double worst = 0.0;
    const std::size_t q = grid.size() / 4;
    double scale = 0.0;
    for (std::size_t i = q; i < grid.size() - q; ++i)
        scale = std::max(scale, std::abs(0.5 * m.alpha0 * g * grid[i] /
                                         (g * g + grid[i] * grid[i])));
    for (std::size_t i = q; i < grid.size() - q; ++i) {
        const double expected = 0.5 * m.alpha0 * g * grid[i] / (g * g + grid[i] * grid[i]);
        worst = std::max(worst, std::abs(kk.phase_per_meter[i] - expected) / scale);
    }
    CHECK(worst <= 1e-3);
}

TEST_CASE("kramers-kronig warns when the absorption has not leveled off") {
    const Medium m = burnt_medium(1.0);
    const std::vector<double> grid = uniform_grid(1.5 * m.hole.width_fwhm, 512);
    std::vector<double> alpha(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        alpha[i] = absorption_coefficient(grid[i], m);
    CHECK(kramers_kronig(grid, alpha).edge_warning);
}

TEST_CASE("kramers-kronig rejects non-uniform grids") {
    std::vector<double> grid = uniform_grid(1e6, 64);
    grid[10] += 1e3;
    CHECK_THROWS_AS(kramers_kronig(grid, std::vector<double>(64, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("group velocity reproduces the slow-light benchmark") {
    // alpha0 = 1000/m with a 100 kHz hole: v_g/c a little over 2e-6.
    const double vg = group_velocity(1000.0, hz_to_rad(100e3));
    CHECK(vg / c_light == doctest::Approx(2.0958e-6).epsilon(1e-4));
    CHECK(group_velocity(0.0, 1.0) == doctest::Approx(c_light).epsilon(1e-12));
    CHECK_THROWS_AS(group_velocity(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(group_velocity(-1.0, 1.0), std::domain_error);
}

TEST_CASE("expected delay scales with depth and alpha0*L over the width") {
    Medium m = burnt_medium(1.0);
    m.hole.width_fwhm = hz_to_rad(860e3);
    CHECK(expected_delay(m) == doctest::Approx(7.8652e-7).epsilon(1e-4));
    Medium half = m;
    half.hole.depth = 0.5;
    CHECK(expected_delay(half) == doctest::Approx(0.5 * expected_delay(m)).epsilon(1e-12));
}
