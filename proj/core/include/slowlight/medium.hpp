#pragma once

#include <string>

#include "slowlight/units.hpp"

namespace slowlight {

// Lorentzian transparency window burnt into the absorption background.
// depth = 1 means full transparency at the hole center.
struct SpectralHole {
    double center = 0.0;       // offset from carrier (rad/s)
    double width_fwhm = 0.0;   // Delta0, FWHM of the depth profile (rad/s)
    double depth = 1.0;        // dimensionless, in [0, 1]

    void validate() const;     // throws std::invalid_argument
};

// Hole depth profile: depth * (D0^2/4) / ((delta-center)^2 + D0^2/4).
// Equals depth at the center and depth/2 one half-width out.
double hole_profile(double delta_rad_s, const SpectralHole& hole);

struct Medium {
    double alpha0 = 0.0;       // background absorption coefficient (1/m)
    double length = 0.0;       // propagation length L (m)
    SpectralHole hole;
    double gamma_inh = 0.0;    // inhomogeneous width (rad/s), informational
    double t2 = 0.0;           // transverse relaxation time (s)
    double t1 = 0.0;           // longitudinal relaxation time (s)

    void validate() const;     // throws std::invalid_argument

    // Slow-light formulas require 1/T2 << Delta0 << Gamma_inh. Returns a
    // non-empty warning when either separation is below a factor of 10.
    std::string validity_warning() const;
};

// alpha0 * (1 - hole_profile); bounded by [0, alpha0].
double absorption_coefficient(double delta_rad_s, const Medium& medium);

} // namespace slowlight
