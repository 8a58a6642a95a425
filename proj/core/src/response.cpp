#include "slowlight/response.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

#include "slowlight/errors.hpp"

namespace slowlight {

ComplexResponse complex_response(const std::vector<double>& detunings_rad_s,
                                 const Medium& medium) {
    medium.validate();
    const double g = 0.5 * medium.hole.width_fwhm;
    ComplexResponse r;
    r.detunings = detunings_rad_s;
    r.exponent_per_meter.resize(detunings_rad_s.size());
    for (std::size_t i = 0; i < detunings_rad_s.size(); ++i) {
        const double u = detunings_rad_s[i] - medium.hole.center;
        const cplx lor = medium.hole.depth * g / cplx(g, -u);
        r.exponent_per_meter[i] = -0.5 * medium.alpha0 * (1.0 - lor);
    }
    return r;
}

namespace {

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

// Discrete Hilbert transform pairing an even absorption peak with an odd
// dispersion wing of positive central slope. Zero-padding keeps the
// periodic wrap-around of the FFT off the physical window.
std::vector<double> hilbert(const std::vector<double>& y) {
    const std::size_t n = y.size();
    const std::size_t m = next_pow2(8 * n);
    std::vector<cplx> padded(m, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) padded[i] = y[i];

    Eigen::FFT<double> fft;
    std::vector<cplx> spec;
    fft.fwd(spec, padded);
    spec[0] = 0.0;
    spec[m / 2] = 0.0;
    for (std::size_t k = 1; k < m / 2; ++k) spec[k] *= cplx(0.0, -1.0);
    for (std::size_t k = m / 2 + 1; k < m; ++k) spec[k] *= cplx(0.0, 1.0);

    std::vector<cplx> out;
    fft.inv(out, spec);
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = out[i].real();
    return h;
}

} // namespace

KramersKronigResult kramers_kronig(const std::vector<double>& detunings_rad_s,
                                   const std::vector<double>& alpha_per_m) {
    const std::size_t n = detunings_rad_s.size();
    if (n < 16) throw std::invalid_argument("kramers_kronig: need at least 16 samples");
    if (alpha_per_m.size() != n)
        throw std::invalid_argument("kramers_kronig: grid and absorption sizes differ");
    const double step = detunings_rad_s[1] - detunings_rad_s[0];
    if (!(step > 0.0)) throw std::invalid_argument("kramers_kronig: grid must ascend");
    for (std::size_t i = 1; i < n; ++i) {
        const double s = detunings_rad_s[i] - detunings_rad_s[i - 1];
        if (std::abs(s - step) > 1e-9 * step)
            throw std::invalid_argument("kramers_kronig: grid must be uniform");
    }

    // The transform sees the deviation from the flat background, taken from
    // the record ends; absorption still varying there wraps around the
    // periodic window and contaminates the phase.
    const double edge = 0.5 * (alpha_per_m.front() + alpha_per_m.back());
    double lo = alpha_per_m[0], hi = alpha_per_m[0];
    for (double a : alpha_per_m) {
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    const double range = hi - lo;
    bool warn = false;
    const std::size_t margin = std::max<std::size_t>(2, n / 20);
    for (std::size_t i = 0; i < margin; ++i) {
        if (std::abs(alpha_per_m[i] - alpha_per_m.front()) > 0.01 * range) warn = true;
        if (std::abs(alpha_per_m[n - 1 - i] - alpha_per_m.back()) > 0.01 * range) warn = true;
    }
    if (std::abs(alpha_per_m.front() - alpha_per_m.back()) > 0.01 * range) warn = true;

    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i) dev[i] = 0.5 * (edge - alpha_per_m[i]);

    KramersKronigResult result;
    result.phase_per_meter = hilbert(dev);
    result.edge_warning = warn;
    return result;
}

double group_velocity(double alpha0_per_m, double width_fwhm_rad_s) {
    if (!(width_fwhm_rad_s > 0.0))
        throw std::domain_error("group_velocity: hole width must be positive");
    if (!(alpha0_per_m >= 0.0))
        throw std::domain_error("group_velocity: alpha0 must be non-negative");
    return 1.0 / (1.0 / c_light + alpha0_per_m / width_fwhm_rad_s);
}

double expected_delay(const Medium& medium) {
    medium.validate();
    return medium.hole.depth * medium.alpha0 * medium.length / medium.hole.width_fwhm;
}

} // namespace slowlight
