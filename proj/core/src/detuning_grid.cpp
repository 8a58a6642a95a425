#include "slowlight/detuning_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slowlight {

DetuningGrid build_detuning_grid(const SpectralHole& hole, const GridConfig& config) {
    hole.validate();
    const double d0 = hole.width_fwhm;
    const double inner = config.inner_half_width > 0.0 ? config.inner_half_width : 3.0 * d0;
    const double extent = config.wing_extent > 0.0 ? config.wing_extent : 200.0 * d0;
    if (extent < 50.0 * d0)
        throw std::invalid_argument(
            "detuning grid: wing extent below 50 hole widths truncates the slowly "
            "converging background tail");
    if (!(inner > 0.0) || inner >= extent)
        throw std::invalid_argument("detuning grid: need 0 < inner_half_width < wing_extent");
    if (config.wing_points_per_decade < 8)
        throw std::invalid_argument("detuning grid: need at least 8 wing points per decade");

    // Hole region spacing. A finite record adds a stricter bound: grid
    // granularity s produces a spurious echo at 2*pi/s, which must land
    // beyond the record end.
    const double s_mid = d0 / 20.0;
    double s_core = s_mid;
    if (config.record_length > 0.0)
        s_core = std::min(s_mid, two_pi / (GridConfig::revival_margin * config.record_length));

    std::vector<double> pos;
    if (s_core < s_mid) {
        // Echo-dense core only near zero where the response varies fastest;
        // coarsening past it keeps the echo amplitude negligible.
        const double core_half = std::min(inner, std::max(100.0 * s_core, d0 / 50.0));
        double x = 0.5 * s_core;
        while (x <= core_half) {
            pos.push_back(x);
            x += s_core;
        }
        x = pos.back() + s_mid;
        while (x <= inner) {
            pos.push_back(x);
            x += s_mid;
        }
    } else {
        double x = 0.5 * s_core;
        while (x <= inner) {
            pos.push_back(x);
            x += s_core;
        }
    }

    const double ratio =
        std::pow(10.0, 1.0 / static_cast<double>(config.wing_points_per_decade));
    double x = pos.back();
    while (x * ratio < extent) {
        x *= ratio;
        pos.push_back(x);
    }
    pos.push_back(extent);

    DetuningGrid grid;
    const std::size_t half = pos.size();
    grid.nodes.resize(2 * half);
    for (std::size_t i = 0; i < half; ++i) {
        grid.nodes[half - 1 - i] = hole.center - pos[i];
        grid.nodes[half + i] = hole.center + pos[i];
    }

    const std::size_t n = grid.nodes.size();
    grid.weights.resize(n);
    grid.weights[0] = 0.5 * (grid.nodes[1] - grid.nodes[0]);
    grid.weights[n - 1] = 0.5 * (grid.nodes[n - 1] - grid.nodes[n - 2]);
    for (std::size_t i = 1; i + 1 < n; ++i)
        grid.weights[i] = 0.5 * (grid.nodes[i + 1] - grid.nodes[i - 1]);
    // Analytic closure of the 1/delta^2 tails beyond the last node:
    // int_X^inf f with f ~ C/x^2 equals f(X)*X.
    grid.weights[0] += extent;
    grid.weights[n - 1] += extent;
    return grid;
}

} // namespace slowlight
