#pragma once

#include <cstddef>
#include <vector>

#include "slowlight/medium.hpp"

namespace slowlight {

// Non-uniform detuning quadrature for the time-domain atomic sum.
// Symmetric about zero with no node at zero; trapezoid weights plus
// analytic 1/delta^2 tail corrections beyond the last node on each side.
struct DetuningGrid {
    std::vector<double> nodes;    // rad/s, strictly increasing, odd-symmetric
    std::vector<double> weights;  // rad/s

    std::size_t size() const { return nodes.size(); }

    // Integrate f(delta) with the grid weights (plain weighted sum).
    template <typename F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

struct GridConfig {
    double inner_half_width = 0.0;  // dense region half-extent; 0 -> 3*Delta0
    double wing_extent = 0.0;       // outermost node; 0 -> 200*Delta0
    double record_length = 0.0;     // pulse record (s); densifies the core
    std::size_t wing_points_per_decade = 64;

    // Grid-induced revivals alias at period 2*pi/spacing, and the
    // half-offset comb already rephases partially at half that period, so
    // the core spacing must keep even the half-period feature past the
    // record end: spacing <= 2*pi/(margin*record) with margin > 2.
    static constexpr double revival_margin = 2.6;
};

// Build the three-tier grid: revival-dense core (when the record demands
// it), Delta0/20 spacing out to inner_half_width, log-spaced wings out to
// wing_extent. Throws std::invalid_argument when wing_extent < 50*Delta0.
DetuningGrid build_detuning_grid(const SpectralHole& hole,
                                 const GridConfig& config = {});

} // namespace slowlight
