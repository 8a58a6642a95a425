#include "slowlight/burning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace slowlight {

namespace {

// Unit-peak Lorentzian of the given FWHM.
inline double line_shape(double offset, double fwhm) {
    const double g = 0.5 * fwhm;
    return g * g / (offset * offset + g * g);
}

} // namespace

void LevelSystem::validate() const {
    if (!(delta_e > 0.0) || !(delta_g > delta_e))
        throw std::invalid_argument("level system: need delta_g > delta_e > 0");
    if (!(gamma_hom > 0.0))
        throw std::invalid_argument("level system: gamma_hom must be positive");
    if (!(branching > 0.0 && branching < 1.0))
        throw std::invalid_argument("level system: branching must lie in (0, 1)");
    if (!(t1_opt > 0.0))
        throw std::invalid_argument("level system: t1_opt must be positive");
    if (!(t_hyperfine >= 100.0 * t1_opt))
        throw std::invalid_argument(
            "level system: t_hyperfine must exceed 100x t1_opt; the rate model folds "
            "the excited state into an instantaneous branch");
    if (!(saturation_per_rate >= 0.0))
        throw std::invalid_argument("level system: saturation_per_rate must be non-negative");
}

ClassGrid make_class_grid(double min_rad_s, double max_rad_s, double spacing_rad_s,
                          const LevelSystem& system) {
    system.validate();
    if (!(spacing_rad_s > 0.0))
        throw std::invalid_argument("class grid: spacing must be positive");
    if (spacing_rad_s > system.gamma_hom / 4.0)
        throw std::invalid_argument(
            "class grid: spacing must resolve the homogeneous line (<= gamma_hom/4)");
    if (!(min_rad_s < max_rad_s))
        throw std::invalid_argument("class grid: need min < max");
    ClassGrid grid;
    grid.spacing = spacing_rad_s;
    const std::size_t n =
        static_cast<std::size_t>(std::floor((max_rad_s - min_rad_s) / spacing_rad_s)) + 1;
    grid.delta.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        grid.delta[i] = min_rad_s + spacing_rad_s * static_cast<double>(i);
    return grid;
}

GroundPopulations thermal_populations(const ClassGrid& grid) {
    GroundPopulations p;
    p.grid = grid;
    p.n1.assign(grid.size(), 0.5);
    p.n2.assign(grid.size(), 0.5);
    return p;
}

double PumpSequence::end_time() const {
    double end = 0.0;
    for (const PumpSegment& s : segments) end = std::max(end, s.start + s.duration);
    return end;
}

void PumpSequence::validate() const {
    for (const PumpSegment& s : segments) {
        if (!(s.start >= 0.0)) throw std::invalid_argument("pump sequence: negative start time");
        if (!(s.duration > 0.0))
            throw std::invalid_argument("pump sequence: segment duration must be positive");
        if (!(s.rate >= 0.0)) throw std::invalid_argument("pump sequence: negative pump rate");
        if (!(s.span >= 0.0)) throw std::invalid_argument("pump sequence: negative chirp span");
    }
    // One frequency per channel at a time.
    std::vector<const PumpSegment*> sorted;
    sorted.reserve(segments.size());
    for (const PumpSegment& s : segments) sorted.push_back(&s);
    std::sort(sorted.begin(), sorted.end(), [](const PumpSegment* a, const PumpSegment* b) {
        if (a->channel != b->channel) return a->channel < b->channel;
        return a->start < b->start;
    });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const PumpSegment* a = sorted[i - 1];
        const PumpSegment* b = sorted[i];
        if (a->channel == b->channel &&
            b->start < a->start + a->duration - 1e-15 * a->duration)
            throw std::invalid_argument(
                "pump sequence: overlapping segments on channel " +
                std::to_string(a->channel) + "; a channel emits one frequency at a time");
    }
}

GroundPopulations simulate_pump_sequence(const LevelSystem& system, const ClassGrid& grid,
                                         const PumpSequence& sequence) {
    system.validate();
    sequence.validate();

    GroundPopulations pops = thermal_populations(grid);
    if (sequence.segments.empty()) return pops;

    // Merged timeline: every chirp dwell edge of every segment becomes a
    // boundary, so each interval has a fixed set of active lasers, each at
    // a fixed frequency. Rates from concurrent channels add.
    std::vector<double> edges;
    for (const PumpSegment& s : sequence.segments) {
        const std::size_t steps = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::ceil(s.span / (system.gamma_hom / 4.0))));
        const double dwell = s.duration / static_cast<double>(steps);
        for (std::size_t i = 0; i <= steps; ++i)
            edges.push_back(s.start + dwell * static_cast<double>(i));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const std::size_t m = grid.size();
    std::vector<double> r12(m), r21(m);
    const double inv_hyp =
        std::isinf(system.t_hyperfine) ? 0.0 : 1.0 / system.t_hyperfine;

    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const double t_a = edges[e];
        const double t_b = edges[e + 1];
        const double dt = t_b - t_a;
        if (!(dt > 0.0)) continue;
        const double mid = 0.5 * (t_a + t_b);

        std::fill(r12.begin(), r12.end(), 0.0);
        std::fill(r21.begin(), r21.end(), 0.0);
        for (const PumpSegment& s : sequence.segments) {
            if (mid < s.start || mid > s.start + s.duration) continue;
            const double nu =
                s.span == 0.0
                    ? s.center
                    : s.center - 0.5 * s.span + s.span * (mid - s.start) / s.duration;
            const double fwhm =
                system.gamma_hom * std::sqrt(1.0 + system.saturation_per_rate * s.rate);
            const double scale = s.rate * system.branching;
            const double* __restrict d = grid.delta.data();
            double* __restrict a12 = r12.data();
            double* __restrict a21 = r21.data();
            for (std::size_t j = 0; j < m; ++j) {
                // Out of g1 via its two lines, out of g2 via its two.
                a12[j] += scale * (line_shape(nu - d[j], fwhm) +
                                   line_shape(nu - d[j] - system.delta_e, fwhm));
                a21[j] += scale * (line_shape(nu - d[j] + system.delta_g, fwhm) +
                                   line_shape(nu - d[j] + system.delta_g - system.delta_e, fwhm));
            }
        }

        // Two-state kinetics dp/dt = C - K p advanced exactly; the update
        // composes over any subdivision, so no step-size limit applies.
        double* __restrict p = pops.n1.data();
        const double* __restrict a12 = r12.data();
        const double* __restrict a21 = r21.data();
        for (std::size_t j = 0; j < m; ++j) {
            const double K = a12[j] + a21[j] + inv_hyp;
            const double C = a21[j] + 0.5 * inv_hyp;
            const double x = K * dt;
            if (x <= 1e-4) {
                p[j] += dt * (C - K * p[j]);
            } else {
                const double pinf = C / K;
                p[j] = pinf + (p[j] - pinf) * std::exp(-x);
            }
        }
    }

    for (std::size_t j = 0; j < m; ++j) pops.n2[j] = 1.0 - pops.n1[j];
    return pops;
}

AbsorptionSpectrum absorption_spectrum(const LevelSystem& system,
                                       const GroundPopulations& populations,
                                       double alpha_thermal_per_m,
                                       const std::vector<double>& probe_rad_s) {
    system.validate();
    if (!(alpha_thermal_per_m > 0.0))
        throw std::invalid_argument("absorption spectrum: alpha_thermal must be positive");
    const std::size_t m = populations.grid.size();
    if (m == 0 || populations.n1.size() != m || populations.n2.size() != m)
        throw std::invalid_argument("absorption spectrum: inconsistent population arrays");

    // Every probe needs its four contributing class windows on the grid.
    const double margin = 20.0 * system.gamma_hom;
    const double lo = populations.grid.delta.front() + margin;
    const double hi = populations.grid.delta.back() - margin;
    for (double nu : probe_rad_s) {
        const double need_lo = std::min(nu, nu - system.delta_e);
        const double need_hi = std::max(nu + system.delta_g,
                                        nu + system.delta_g - system.delta_e);
        if (need_lo < lo || need_hi > hi)
            throw std::invalid_argument(
                "absorption spectrum: probe at " + std::to_string(rad_to_hz(nu)) +
                " Hz reaches classes outside the simulated grid");
    }

    const double offs[4] = {0.0, system.delta_e, -system.delta_g,
                            -system.delta_g + system.delta_e};
    const double* pops_of[4] = {populations.n1.data(), populations.n1.data(),
                                populations.n2.data(), populations.n2.data()};

    AbsorptionSpectrum spec;
    spec.frequency = probe_rad_s;
    spec.alpha.resize(probe_rad_s.size());
    const double* __restrict d = populations.grid.delta.data();
    for (std::size_t i = 0; i < probe_rad_s.size(); ++i) {
        const double nu = probe_rad_s[i];
        double num = 0.0;
        double den = 0.0;
        for (int l = 0; l < 4; ++l) {
            const double off = offs[l];
            const double* __restrict pop = pops_of[l];
            double acc_n = 0.0, acc_d = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                const double s = line_shape(nu - d[j] - off, system.gamma_hom);
                acc_n += pop[j] * s;
                acc_d += s;
            }
            num += acc_n;
            den += 0.5 * acc_d;
        }
        spec.alpha[i] = alpha_thermal_per_m * num / den;
    }
    return spec;
}

double enhancement_gain(const AbsorptionSpectrum& before, const AbsorptionSpectrum& after,
                        FrequencyWindow window, FrequencyWindow hole_region) {
    if (!(window.lo < window.hi))
        throw std::invalid_argument("enhancement gain: empty window");
    if (window.hi > hole_region.lo && window.lo < hole_region.hi)
        throw std::invalid_argument(
            "enhancement gain: window overlaps the hole region; the transparency "
            "feature would corrupt the background estimate");
    if (before.frequency.size() != after.frequency.size())
        throw std::invalid_argument("enhancement gain: spectra sampled differently");

    double sum_before = 0.0, sum_after = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < before.frequency.size(); ++i) {
        if (before.frequency[i] != after.frequency[i])
            throw std::invalid_argument("enhancement gain: spectra sampled differently");
        if (before.frequency[i] < window.lo || before.frequency[i] > window.hi) continue;
        sum_before += before.alpha[i];
        sum_after += after.alpha[i];
        ++count;
    }
    if (count == 0)
        throw std::invalid_argument("enhancement gain: no samples inside the window");
    if (!(sum_before > 0.0))
        throw std::invalid_argument("enhancement gain: zero background before pumping");
    return sum_after / sum_before;
}

} // namespace slowlight
