#pragma once

#include <vector>

#include "slowlight/medium.hpp"
#include "slowlight/units.hpp"

namespace slowlight {

// Complex propagation exponent per unit length, sampled on a detuning grid.
// The field spectrum transforms as E(L) = E(0) * exp(exponent_per_meter * L).
struct ComplexResponse {
    std::vector<double> detunings;          // rad/s, strictly increasing
    std::vector<cplx> exponent_per_meter;   // Re = -alpha/2, Im = phase slope

    std::size_t size() const { return detunings.size(); }
};

// Linear response of the hole-burnt medium:
//   exponent(d) = -(alpha0/2) * (1 - depth * g / (g - i*(d - center))),
// with g = width_fwhm/2. The real part reproduces -absorption/2 and the
// imaginary part is the causal (Kramers-Kronig) phase, odd about the hole
// center with positive slope d(Im)/dd = alpha0*depth/width_fwhm there.
ComplexResponse complex_response(const std::vector<double>& detunings_rad_s,
                                 const Medium& medium);

struct KramersKronigResult {
    std::vector<double> phase_per_meter;  // Im part recovered from Re part
    bool edge_warning = false;            // absorption not flat at grid edges
};

// Hilbert-transform reconstruction of the phase profile from an absorption
// profile sampled on a UNIFORM detuning grid (throws otherwise). Sets
// edge_warning when the absorption has not leveled off at the grid ends,
// where the periodic FFT transform wraps around.
KramersKronigResult kramers_kronig(const std::vector<double>& detunings_rad_s,
                                   const std::vector<double>& alpha_per_m);

// Group velocity at the hole center for a fully burnt (depth 1) hole:
//   1/v_g = 1/c + alpha0/width_fwhm.
// Throws std::domain_error for non-positive width.
double group_velocity(double alpha0_per_m, double width_fwhm_rad_s);

// Group delay through the medium relative to vacuum:
//   delay = depth * alpha0 * L / width_fwhm.
double expected_delay(const Medium& medium);

} // namespace slowlight
