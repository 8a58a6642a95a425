#pragma once

#include <cstddef>
#include <vector>

#include "slowlight/units.hpp"

namespace slowlight {

// Three-level ion: two ground hyperfine states (splitting delta_g) sharing
// one optical transition to an excited doublet (splitting delta_e). Each
// frequency class at offset d absorbs on four lines:
//   g1->e1: d          g1->e2: d + delta_e
//   g2->e1: d - delta_g  g2->e2: d - delta_g + delta_e
struct LevelSystem {
    double delta_g = 0.0;      // ground splitting (rad/s), > delta_e
    double delta_e = 0.0;      // excited splitting (rad/s), > 0
    double gamma_hom = 0.0;    // homogeneous FWHM (rad/s)
    double branching = 0.5;    // decay share crossing to the other ground state
    double t1_opt = 0.0;       // excited-state lifetime (s)
    double t_hyperfine = 0.0;  // ground population lifetime (s), may be inf;
                               // must dwarf t1_opt
    double saturation_per_rate = 0.0;  // pump line FWHM grows as
                                       // gamma_hom*sqrt(1 + s*rate)

    void validate() const;     // throws std::invalid_argument
};

// Uniform grid of inhomogeneous frequency classes.
struct ClassGrid {
    double spacing = 0.0;          // rad/s
    std::vector<double> delta;     // class offsets (rad/s), ascending

    std::size_t size() const { return delta.size(); }
};

// Spacing must resolve the homogeneous line: spacing <= gamma_hom/4.
ClassGrid make_class_grid(double min_rad_s, double max_rad_s,
                          double spacing_rad_s, const LevelSystem& system);

// Ground-state populations per class; n1 + n2 = 1 throughout.
struct GroundPopulations {
    ClassGrid grid;
    std::vector<double> n1;
    std::vector<double> n2;
};

GroundPopulations thermal_populations(const ClassGrid& grid);

// One pump exposure: a laser on `channel` parked at `center` (span 0) or
// chirped linearly across [center - span/2, center + span/2], starting at
// `start` for `duration`, with on-resonance pump rate `rate`. Segments on
// the same channel must not overlap in time (a channel emits one frequency
// at a time); distinct channels may run concurrently and their rates add.
struct PumpSegment {
    int channel = 0;
    double start = 0.0;        // s
    double center = 0.0;       // rad/s, offset from the reference frequency
    double span = 0.0;         // rad/s
    double duration = 0.0;     // s
    double rate = 0.0;         // 1/s
};

struct PumpSequence {
    std::vector<PumpSegment> segments;

    double end_time() const;
    void validate() const;     // throws std::invalid_argument on same-channel
                               // overlap or negative timing
};

// Rate-equation burn: each exposure step moves n1 toward its fixed point
// through the exact exponential two-state update, with pump rates
// rate * line(laser - transition) * branching on the cross-relaxing path
// and the hyperfine decay 1/t_hyperfine restoring equilibrium. Chirps are
// discretized in steps of at most gamma_hom/4; concurrent channels are
// merged on a shared timeline.
GroundPopulations simulate_pump_sequence(const LevelSystem& system,
                                         const ClassGrid& grid,
                                         const PumpSequence& sequence);

struct AbsorptionSpectrum {
    std::vector<double> frequency;   // rad/s, offsets from the reference
    std::vector<double> alpha;       // 1/m
};

// Probe absorption of the burnt ensemble, normalized so the thermal
// ensemble reproduces alpha_thermal exactly:
//   alpha(nu) = alpha_thermal * sum_lines (n/0.5) * line(nu - transition)
//                             / sum_lines(thermal).
// Bounded by [0, 2*alpha_thermal]. Probe frequencies must stay inside the
// class coverage (all four contributing class windows on the grid); throws
// std::invalid_argument otherwise.
AbsorptionSpectrum absorption_spectrum(const LevelSystem& system,
                                       const GroundPopulations& populations,
                                       double alpha_thermal_per_m,
                                       const std::vector<double>& probe_rad_s);

struct FrequencyWindow {
    double lo = 0.0;           // rad/s
    double hi = 0.0;
};

// Mean absorption ratio after/before over `window`. The window must not
// touch `hole_region` (the transparency feature would corrupt the
// background estimate); throws std::invalid_argument when it does.
double enhancement_gain(const AbsorptionSpectrum& before,
                        const AbsorptionSpectrum& after,
                        FrequencyWindow window,
                        FrequencyWindow hole_region);

} // namespace slowlight
