#pragma once

#include <vector>

#include "slowlight/units.hpp"

namespace slowlight {

// Complex envelope of the signal field on a uniform time grid, expressed as a
// Rabi frequency (rad/s). The envelope must decay below 1e-6 of its peak at
// both record ends so FFT propagation cannot wrap around.
struct Pulse {
    double t0 = 0.0;                 // start time (s)
    double dt = 0.0;                 // sample interval (s)
    std::vector<cplx> envelope;      // Omega(t) samples (rad/s)

    std::size_t size() const { return envelope.size(); }
    double time_at(std::size_t k) const { return t0 + dt * static_cast<double>(k); }
    double record_length() const { return dt * static_cast<double>(envelope.size()); }

    // Energy surrogate W = sum |Omega|^2 dt. Field-amplitude scale factors are
    // out of scope; every asserted quantity is a ratio of such surrogates.
    double energy() const;

    double peak_abs() const;
    // Throws if the envelope violates the edge-decay invariant.
    void validate() const;
};

// Real Gaussian envelope centered in the record; fwhm is the intensity FWHM,
// so the time-bandwidth product FWHM_t * FWHM_nu = 2 ln2 / pi.
Pulse make_gaussian_pulse(double fwhm_s, double peak_rad_s, double t0, double dt, std::size_t n);

// Same envelope centered at t_center instead of the record middle, for runs
// whose output must fit in the same record as a delayed copy. Both record
// edges still have to satisfy the 1e-6 decay invariant.
Pulse make_gaussian_pulse_at(double fwhm_s, double peak_rad_s, double t_center, double t0,
                             double dt, std::size_t n);

// Raised-cosine (Hann) envelope with compact support [t_start, t_start+support].
// Used where hard spectral confinement matters: its intensity FWHM is
// 0.364 * support and it is exactly zero outside the support.
Pulse make_hann_pulse(double support_s, double peak_rad_s, double t_start, double t0, double dt,
                      std::size_t n);

} // namespace slowlight
