#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "slowlight/detuning_grid.hpp"
#include "slowlight/medium.hpp"
#include "slowlight/units.hpp"

using namespace slowlight;

namespace {

SpectralHole hole_1mhz() { return SpectralHole{0.0, hz_to_rad(1e6), 1.0}; }

} // namespace

TEST_CASE("grid is ascending, odd-symmetric, with no node at zero") {
    const DetuningGrid g = build_detuning_grid(hole_1mhz());
    REQUIRE(g.size() >= 64);
    REQUIRE(g.size() % 2 == 0);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g.nodes[i] > g.nodes[i - 1]);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(g.nodes[i] != 0.0);
        CHECK(g.nodes[i] == doctest::Approx(-g.nodes[g.size() - 1 - i]).epsilon(1e-12));
        CHECK(g.weights[i] ==
              doctest::Approx(g.weights[g.size() - 1 - i]).epsilon(1e-12));
        CHECK(g.weights[i] > 0.0);
    }
}

TEST_CASE("grid spans the mandated wings and honors overrides") {
    const SpectralHole hole = hole_1mhz();
    const DetuningGrid g = build_detuning_grid(hole);
    CHECK(g.nodes.back() == doctest::Approx(200.0 * hole.width_fwhm).epsilon(1e-9));

    GridConfig cfg;
    cfg.wing_extent = 80.0 * hole.width_fwhm;
    cfg.inner_half_width = 2.0 * hole.width_fwhm;
    const DetuningGrid h = build_detuning_grid(hole, cfg);
    CHECK(h.nodes.back() == doctest::Approx(cfg.wing_extent).epsilon(1e-9));
    CHECK(h.size() < g.size());
}

TEST_CASE("grid quadrature reproduces the hole area integrals") {
    // The slow-light kernel weights classes by 1/delta^2:
    //   int (1 - profile)/delta^2 = 2*pi/width   (fully burnt hole)
    //   int 1/(delta^2 + (width/2)^2) = 2*pi/width
    const SpectralHole hole = hole_1mhz();
    const double width = hole.width_fwhm;

    const DetuningGrid g = build_detuning_grid(hole);
    const double hole_area = g.integrate([&](double d) {
        return (1.0 - hole_profile(d, hole)) / (d * d);
    });
    CHECK(hole_area == doctest::Approx(two_pi / width).epsilon(1e-3));

    const double hw = 0.5 * width;
    const double lor = g.integrate([&](double d) { return 1.0 / (d * d + hw * hw); });
    CHECK(lor == doctest::Approx(two_pi / width).epsilon(1e-3));
}

TEST_CASE("odd integrands cancel to rounding") {
    const DetuningGrid g = build_detuning_grid(hole_1mhz());
    const double odd = g.integrate([](double d) { return d / (1.0 + d * d * 1e-12); });
    double scale = g.integrate([](double d) { return std::abs(d) / (1.0 + d * d * 1e-12); });
    CHECK(std::abs(odd) <= 1e-12 * scale);
}

TEST_CASE("a long record densifies the core below the revival bound") {
    const SpectralHole hole = hole_1mhz();
    GridConfig cfg;
    cfg.record_length = 2e-3;
    const DetuningGrid dense = build_detuning_grid(hole, cfg);
    const DetuningGrid plain = build_detuning_grid(hole);
    CHECK(dense.size() > plain.size());

    // Innermost spacing must beat 2*pi/(margin * record).
    const double bound = two_pi / (GridConfig::revival_margin * cfg.record_length);
    std::size_t c = dense.size() / 2;
    CHECK(dense.nodes[c] - dense.nodes[c - 1] <= bound * (1.0 + 1e-9));
}

TEST_CASE("grid construction rejects unusable configurations") {
    const SpectralHole hole = hole_1mhz();
    GridConfig cfg;
    cfg.wing_extent = 10.0 * hole.width_fwhm;  // < 50 widths: wings truncated
    CHECK_THROWS_AS(build_detuning_grid(hole, cfg), std::invalid_argument);

    GridConfig inner;
    inner.inner_half_width = 300.0 * hole.width_fwhm;  // beyond the wing extent
    CHECK_THROWS_AS(build_detuning_grid(hole, inner), std::invalid_argument);

    GridConfig sparse;
    sparse.wing_points_per_decade = 4;
    CHECK_THROWS_AS(build_detuning_grid(hole, sparse), std::invalid_argument);
}
