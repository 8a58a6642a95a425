#include "slowlight/pulse.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "slowlight/errors.hpp"

namespace slowlight {

double Pulse::energy() const {
    double acc = 0.0;
    for (const cplx& v : envelope) acc += std::norm(v);
    return acc * dt;
}

double Pulse::peak_abs() const {
    double peak = 0.0;
    for (const cplx& v : envelope) peak = std::max(peak, std::abs(v));
    return peak;
}

void Pulse::validate() const {
    if (envelope.size() < 2) throw std::invalid_argument("pulse: need at least 2 samples");
    if (!(dt > 0.0)) throw std::invalid_argument("pulse: dt must be positive");
    const double peak = peak_abs();
    if (peak == 0.0) throw std::invalid_argument("pulse: zero envelope carries no energy");
    const double edge = std::max(std::abs(envelope.front()), std::abs(envelope.back()));
    if (edge > 1e-6 * peak)
        throw std::invalid_argument(
            "pulse: envelope at the record edge is " + std::to_string(edge / peak) +
            " of the peak; the record must extend until the envelope decays below 1e-6");
}

Pulse make_gaussian_pulse_at(double fwhm_s, double peak_rad_s, double t_center, double t0,
                             double dt, std::size_t n) {
    if (!(fwhm_s > 0.0)) throw std::invalid_argument("gaussian pulse: fwhm must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("gaussian pulse: dt must be positive");
    if (peak_rad_s == 0.0) throw std::invalid_argument("gaussian pulse: zero peak carries no energy");
    // The 1e-12 slack absorbs dt*n rounding when the record is exactly 8 fwhm.
    const double record = dt * static_cast<double>(n);
    if (record < 8.0 * fwhm_s * (1.0 - 1e-12))
        throw std::invalid_argument("gaussian pulse: record must be at least 8 fwhm; got " +
                                    std::to_string(record / fwhm_s) + " fwhm");
    if (dt > fwhm_s / 50.0)
        throw std::invalid_argument("gaussian pulse: dt must resolve fwhm/50");

    // Intensity fwhm: |Omega|^2 = peak^2 * exp(-4 ln2 (t-tc)^2 / fwhm^2).
    const double a = 2.0 * std::numbers::ln2 / (fwhm_s * fwhm_s);
    Pulse p{t0, dt, std::vector<cplx>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        const double u = p.time_at(k) - t_center;
        p.envelope[k] = peak_rad_s * std::exp(-a * u * u);
    }
    p.validate();
    return p;
}

Pulse make_gaussian_pulse(double fwhm_s, double peak_rad_s, double t0, double dt,
                          std::size_t n) {
    const double record = dt * static_cast<double>(n);
    return make_gaussian_pulse_at(fwhm_s, peak_rad_s, t0 + 0.5 * record, t0, dt, n);
}

Pulse make_hann_pulse(double support_s, double peak_rad_s, double t_start, double t0,
                      double dt, std::size_t n) {
    if (!(support_s > 0.0)) throw std::invalid_argument("hann pulse: support must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("hann pulse: dt must be positive");
    if (peak_rad_s == 0.0) throw std::invalid_argument("hann pulse: zero peak carries no energy");
    Pulse p{t0, dt, std::vector<cplx>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        const double u = (p.time_at(k) - t_start) / support_s;
        if (u <= 0.0 || u >= 1.0) {
            p.envelope[k] = 0.0;
        } else {
            const double s = std::sin(pi * u);
            p.envelope[k] = peak_rad_s * s * s;
        }
    }
    p.validate();
    return p;
}

} // namespace slowlight
