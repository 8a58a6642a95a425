#pragma once

#include <vector>

#include "slowlight/burning.hpp"
#include "slowlight/medium.hpp"
#include "slowlight/pulse.hpp"

namespace slowlight {

struct DelayEstimate {
    double peak_delay = 0.0;      // parabolic peak interpolation (s)
    double centroid_delay = 0.0;  // energy centroid shift (s), diagnostic
};

// Arrival-time shift of `transmitted` relative to `reference` from the
// intensity peak, refined by a three-point parabola. Preconditions: both
// pulses share the time grid, and the peaks clear the record-edge value by
// 10^3 in amplitude (an SNR surrogate; a peak near the window edge cannot
// be interpolated). A transmitted envelope with a secondary intensity peak
// above half the main one is rejected as ambiguous. Violations throw
// NumericalError.
DelayEstimate extract_delay(const Pulse& reference, const Pulse& transmitted);

// Full width at half maximum of |envelope|^2, by linear interpolation of
// the half-crossings around the global peak.
double intensity_fwhm(const Pulse& pulse);

struct DistortionMetrics {
    double broadening = 0.0;       // transmitted/reference intensity FWHM ratio
    double amplitude_ratio = 0.0;  // transmitted/reference peak |Omega|
    double rms_shape_residual = 0.0;  // rms of the unit-peak envelope
                                      // difference after undoing the delay,
                                      // relative to the reference shape norm
};

DistortionMetrics distortion_metrics(const Pulse& reference, const Pulse& transmitted,
                                     double delay_s);

struct HoleFit {
    double center = 0.0;       // rad/s
    double width_fwhm = 0.0;
    double depth_abs = 0.0;    // absorption removed at center (1/m)
    double baseline = 0.0;     // background absorption (1/m)
    double rms_residual = 0.0; // 1/m
};

// Damped least-squares fit of baseline - depth*(w^2/4)/((nu-c)^2 + w^2/4)
// over the samples inside init_window (which must contain exactly one
// hole), with the analytic Jacobian. Converges when relative parameter
// updates drop below 1e-6; gives up after 200 iterations and throws
// FitError carrying the last iterate.
HoleFit fit_lorentzian_hole(const AbsorptionSpectrum& spectrum,
                            FrequencyWindow init_window);

struct DelayScanRow {
    double alpha_l = 0.0;             // alpha0 * L of the scenario
    double hole_width = 0.0;          // rad/s
    double alphal_over_gamma_s = 0.0; // abscissa (s): fitted depth_abs*L/width,
                                      // the measurable stand-in for alpha0*L/width
    double delay_s = 0.0;
    double broadening = 0.0;
    double transmission = 0.0;        // energy transmission
    bool excluded = false;            // hole narrower than the distortion floor
};

struct DelayScanResult {
    std::vector<DelayScanRow> rows;
    double slope = 0.0;        // delay vs abscissa over included rows
    double intercept_s = 0.0;
};

// Frequency-domain delay scan over the given media with a shared probe
// pulse. The abscissa comes from a Lorentzian fit of each scenario's
// absorption spectrum, mirroring how the ratio is measured rather than
// assuming the configured parameters. Rows whose hole width falls below
// distortion_floor_rad_s stay in the table but are flagged and excluded
// from the line fit; with fewer than two included rows the slope and
// intercept stay zero.
DelayScanResult delay_scan(const std::vector<Medium>& scenarios, const Pulse& probe,
                           double distortion_floor_rad_s = 2 * pi * 600.0e3);

} // namespace slowlight
