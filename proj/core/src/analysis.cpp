#include "slowlight/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "slowlight/errors.hpp"
#include "slowlight/fd_engine.hpp"
#include "slowlight/response.hpp"

namespace slowlight {

namespace {

std::vector<double> intensity_of(const Pulse& p) {
    std::vector<double> y(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) y[i] = std::norm(p.envelope[i]);
    return y;
}

// Peak location refined by the parabola through the maximum sample and its
// neighbors; resolves delays well below dt.
double parabolic_peak_time(const Pulse& p, const std::vector<double>& y) {
    const std::size_t i =
        static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    if (i == 0 || i + 1 == y.size())
        throw NumericalError("analysis", "extract_delay",
                             "intensity peak sits on the record edge");
    const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
    const double shift = denom == 0.0 ? 0.0 : 0.5 * (y[i - 1] - y[i + 1]) / denom;
    return p.time_at(i) + shift * p.dt;
}

double centroid_time(const Pulse& p, const std::vector<double>& y) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        num += y[i] * p.time_at(i);
        den += y[i];
    }
    return num / den;
}

void check_edge_clearance(const Pulse& p, const char* which) {
    const double peak = p.peak_abs();
    const double edge = std::max(std::abs(p.envelope.front()), std::abs(p.envelope.back()));
    if (edge * 1e3 > peak)
        throw NumericalError("analysis", "extract_delay",
                             std::string(which) +
                                 " pulse peak clears the record edge by less than 10^3; "
                                 "the window clips the pulse");
}

// A second local intensity maximum above half the main peak, separated by
// a genuine dip, makes "the" peak position ill-defined.
void check_single_peak(const std::vector<double>& y) {
    const std::size_t imax =
        static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    const double vmax = y[imax];
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (i == imax) continue;
        if (!(y[i] >= y[i - 1] && y[i] > y[i + 1])) continue;
        if (y[i] < 0.5 * vmax) continue;
        const std::size_t lo = std::min(i, imax);
        const std::size_t hi = std::max(i, imax);
        double valley = y[lo];
        for (std::size_t j = lo; j <= hi; ++j) valley = std::min(valley, y[j]);
        if (valley <= 0.5 * y[i])
            throw NumericalError("analysis", "extract_delay",
                                 "transmitted envelope has a secondary peak above half "
                                 "the main one; the delay is ambiguous");
    }
}

double fwhm_of(const Pulse& p, const std::vector<double>& y) {
    const std::size_t imax =
        static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    const double half = 0.5 * y[imax];
    std::size_t l = imax;
    while (l > 0 && y[l] > half) --l;
    std::size_t r = imax;
    while (r + 1 < y.size() && y[r] > half) ++r;
    if (y[l] > half || y[r] > half)
        throw NumericalError("analysis", "intensity_fwhm",
                             "half-maximum level never crossed inside the record");
    const double tl =
        p.time_at(l) + p.dt * (half - y[l]) / (y[l + 1] - y[l]);
    const double tr =
        p.time_at(r) - p.dt * (half - y[r]) / (y[r - 1] - y[r]);
    return tr - tl;
}

// Dense 4x4 solve, sufficient for the normal equations of the hole fit.
bool solve4(std::array<std::array<double, 4>, 4> a, std::array<double, 4>& b) {
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0) return false;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < 4; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c2 = col; c2 < 4; ++c2) a[r][c2] -= f * a[col][c2];
            b[r] -= f * b[col];
        }
    }
    for (int col = 3; col >= 0; --col) {
        for (int r = 0; r < col; ++r) {
            b[r] -= a[r][col] / a[col][col] * b[col];
            a[r][col] = 0.0;
        }
        b[col] /= a[col][col];
    }
    return true;
}

struct FitData {
    std::vector<double> nu;
    std::vector<double> y;
};

double fit_cost(const FitData& d, double c, double w, double dep, double base) {
    const double q = 0.25 * w * w;
    double cost = 0.0;
    for (std::size_t i = 0; i < d.nu.size(); ++i) {
        const double u = d.nu[i] - c;
        const double r = base - dep * q / (u * u + q) - d.y[i];
        cost += r * r;
    }
    return cost;
}

} // namespace

DelayEstimate extract_delay(const Pulse& reference, const Pulse& transmitted) {
    if (reference.size() != transmitted.size() ||
        std::abs(reference.dt - transmitted.dt) > 1e-15 * reference.dt ||
        std::abs(reference.t0 - transmitted.t0) > 1e-9 * reference.record_length())
        throw NumericalError("analysis", "extract_delay",
                             "pulses must share one time grid");
    check_edge_clearance(reference, "reference");
    check_edge_clearance(transmitted, "transmitted");

    const std::vector<double> yr = intensity_of(reference);
    const std::vector<double> yt = intensity_of(transmitted);
    check_single_peak(yt);

    DelayEstimate est;
    est.peak_delay = parabolic_peak_time(transmitted, yt) - parabolic_peak_time(reference, yr);
    est.centroid_delay = centroid_time(transmitted, yt) - centroid_time(reference, yr);
    return est;
}

double intensity_fwhm(const Pulse& pulse) {
    const std::vector<double> y = intensity_of(pulse);
    return fwhm_of(pulse, y);
}

DistortionMetrics distortion_metrics(const Pulse& reference, const Pulse& transmitted,
                                     double delay_s) {
    if (reference.size() != transmitted.size() ||
        std::abs(reference.dt - transmitted.dt) > 1e-15 * reference.dt)
        throw NumericalError("analysis", "distortion_metrics",
                             "pulses must share one time grid");

    DistortionMetrics m;
    m.broadening = intensity_fwhm(transmitted) / intensity_fwhm(reference);
    const double peak_ref = reference.peak_abs();
    const double peak_tr = transmitted.peak_abs();
    m.amplitude_ratio = peak_tr / peak_ref;

    // Compare unit-peak envelope magnitudes with the delay undone, sampling
    // the transmitted envelope at t + delay by linear interpolation.
    const std::size_t n = reference.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::abs(reference.envelope[i]) / peak_ref;
        const double pos =
            (reference.time_at(i) + delay_s - transmitted.t0) / transmitted.dt;
        double s = 0.0;
        if (pos >= 0.0 && pos <= static_cast<double>(n - 1)) {
            const std::size_t k = std::min(
                n - 2, static_cast<std::size_t>(pos));
            const double f = pos - static_cast<double>(k);
            s = std::abs((1.0 - f) * transmitted.envelope[k] +
                         f * transmitted.envelope[k + 1]) / peak_tr;
        }
        num += (r - s) * (r - s);
        den += r * r;
    }
    m.rms_shape_residual = std::sqrt(num / den);
    return m;
}

HoleFit fit_lorentzian_hole(const AbsorptionSpectrum& spectrum, FrequencyWindow init_window) {
    if (!(init_window.lo < init_window.hi))
        throw std::invalid_argument("hole fit: empty init window");
    FitData d;
    for (std::size_t i = 0; i < spectrum.frequency.size(); ++i) {
        if (spectrum.frequency[i] < init_window.lo || spectrum.frequency[i] > init_window.hi)
            continue;
        d.nu.push_back(spectrum.frequency[i]);
        d.y.push_back(spectrum.alpha[i]);
    }
    const std::size_t n = d.nu.size();
    if (n < 8) throw std::invalid_argument("hole fit: fewer than 8 samples in the window");

    // Initial iterate straight off the data.
    const std::size_t edge = std::max<std::size_t>(1, n / 10);
    double base = 0.0;
    for (std::size_t i = 0; i < edge; ++i) base += d.y[i] + d.y[n - 1 - i];
    base /= static_cast<double>(2 * edge);
    std::size_t imin = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (d.y[i] < d.y[imin]) imin = i;
    double c = d.nu[imin];
    double dep = std::max(base - d.y[imin], 1e-12 * std::abs(base));
    const double half_level = base - 0.5 * dep;
    std::size_t l = imin;
    while (l > 0 && d.y[l] < half_level) --l;
    std::size_t r = imin;
    while (r + 1 < n && d.y[r] < half_level) ++r;
    double w = d.nu[r] - d.nu[l];
    if (!(w > 0.0)) w = 0.25 * (init_window.hi - init_window.lo);

    double lambda = 1e-3;
    double cost = fit_cost(d, c, w, dep, base);
    bool converged = false;
    for (int iter = 0; iter < 200 && !converged; ++iter) {
        std::array<std::array<double, 4>, 4> jtj{};
        std::array<double, 4> jtr{};
        const double q = 0.25 * w * w;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = d.nu[i] - c;
            const double denom = u * u + q;
            const double lor = q / denom;
            const double res = base - dep * lor - d.y[i];
            const std::array<double, 4> j = {
                -2.0 * dep * q * u / (denom * denom),      // d/dc
                -dep * 0.5 * w * u * u / (denom * denom),  // d/dw
                -lor,                                      // d/d(depth)
                1.0,                                       // d/d(baseline)
            };
            for (int a2 = 0; a2 < 4; ++a2) {
                jtr[a2] += j[a2] * res;
                for (int b2 = 0; b2 < 4; ++b2) jtj[a2][b2] += j[a2] * j[b2];
            }
        }

        bool accepted = false;
        for (int tries = 0; tries < 12 && !accepted; ++tries) {
            std::array<std::array<double, 4>, 4> a = jtj;
            for (int k = 0; k < 4; ++k) a[k][k] += lambda * std::max(jtj[k][k], 1e-300);
            std::array<double, 4> step = {-jtr[0], -jtr[1], -jtr[2], -jtr[3]};
            if (!solve4(a, step)) {
                lambda *= 10.0;
                continue;
            }
            const double nc = c + step[0];
            const double nw = w + step[1];
            const double nd = dep + step[2];
            const double nb = base + step[3];
            const double ncost = fit_cost(d, nc, nw, nd, nb);
            if (ncost <= cost) {
                // Steps are judged against a physical scale per parameter;
                // the center's own magnitude is no use when the hole sits
                // at zero, so center moves count against the width.
                const std::array<double, 4> scale = {
                    std::abs(c) + w + 1e-30,
                    w + 1e-30,
                    std::abs(dep) + 1e-30,
                    std::abs(base) + std::abs(dep) + 1e-30,
                };
                double rel = 0.0;
                for (int k = 0; k < 4; ++k)
                    rel = std::max(rel, std::abs(step[k]) / scale[k]);
                c = nc;
                w = std::abs(nw);
                dep = nd;
                base = nb;
                cost = ncost;
                lambda = std::max(lambda * 0.1, 1e-12);
                accepted = true;
                if (rel < 1e-6) converged = true;
            } else {
                lambda *= 10.0;
            }
        }
        if (!accepted) break;
    }

    if (!converged)
        throw FitError("no convergence within 200 damped iterations", c, w, dep, base);

    HoleFit fit;
    fit.center = c;
    fit.width_fwhm = w;
    fit.depth_abs = dep;
    fit.baseline = base;
    fit.rms_residual = std::sqrt(cost / static_cast<double>(n));
    return fit;
}

DelayScanResult delay_scan(const std::vector<Medium>& scenarios, const Pulse& probe,
                           double distortion_floor_rad_s) {
    DelayScanResult result;
    for (const Medium& medium : scenarios) {
        medium.validate();
        DelayScanRow row;
        row.alpha_l = medium.alpha0 * medium.length;
        row.hole_width = medium.hole.width_fwhm;
        row.excluded = medium.hole.width_fwhm < distortion_floor_rad_s;

        // The abscissa the way an experiment gets it: fit the hole in the
        // absorption spectrum and use depth_abs*L/width.
        const double span = 8.0 * medium.hole.width_fwhm;
        std::vector<double> nu(801);
        for (std::size_t i = 0; i < nu.size(); ++i)
            nu[i] = medium.hole.center - span +
                    2.0 * span * static_cast<double>(i) / static_cast<double>(nu.size() - 1);
        AbsorptionSpectrum spec;
        spec.frequency = nu;
        spec.alpha.resize(nu.size());
        for (std::size_t i = 0; i < nu.size(); ++i)
            spec.alpha[i] = absorption_coefficient(nu[i], medium);
        if (medium.hole.depth > 0.0 && medium.alpha0 > 0.0) {
            const HoleFit fit = fit_lorentzian_hole(
                spec, FrequencyWindow{medium.hole.center - span, medium.hole.center + span});
            row.alphal_over_gamma_s = fit.depth_abs * medium.length / fit.width_fwhm;
        } else {
            row.alphal_over_gamma_s = 0.0;
        }

        const FdResult fd = propagate_frequency_domain(probe, medium);
        row.delay_s = extract_delay(probe, fd.output).peak_delay;
        row.broadening = distortion_metrics(probe, fd.output, row.delay_s).broadening;
        row.transmission = fd.energy_transmission;
        result.rows.push_back(row);
    }

    // Least squares over included rows.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t cnt = 0;
    for (const DelayScanRow& row : result.rows) {
        if (row.excluded) continue;
        sx += row.alphal_over_gamma_s;
        sy += row.delay_s;
        sxx += row.alphal_over_gamma_s * row.alphal_over_gamma_s;
        sxy += row.alphal_over_gamma_s * row.delay_s;
        ++cnt;
    }
    if (cnt >= 2) {
        const double det = static_cast<double>(cnt) * sxx - sx * sx;
        result.slope = (static_cast<double>(cnt) * sxy - sx * sy) / det;
        result.intercept_s = (sy * sxx - sx * sxy) / det;
    }
    return result;
}

} // namespace slowlight
