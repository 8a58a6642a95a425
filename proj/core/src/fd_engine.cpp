#include "slowlight/fd_engine.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/FFT>

#include "slowlight/errors.hpp"

namespace slowlight {

std::vector<double> fft_detuning_grid(std::size_t n, double dt) {
    // Ascending FFT bin frequencies: k/(n*dt) with k in [-n/2, n/2).
    std::vector<double> grid(n);
    const double step = two_pi / (dt * static_cast<double>(n));
    const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(n / 2);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = step * static_cast<double>(static_cast<std::ptrdiff_t>(i) - half);
    return grid;
}

std::size_t fft_padded_size(std::size_t n, std::size_t pad_factor) {
    std::size_t m = 1;
    while (m < n * pad_factor) m <<= 1;
    return m;
}

namespace {

// Bin index of ascending-grid position i in FFT storage order.
std::size_t fft_bin(std::size_t i, std::size_t m) {
    const std::size_t half = m / 2;
    return (i + half) % m;
}

} // namespace

FdResult propagate_frequency_domain(const Pulse& input, const ComplexResponse& response,
                                    double length_m) {
    input.validate();
    if (!(length_m >= 0.0))
        throw NumericalError("fd_engine", "propagate_frequency_domain",
                             "negative propagation length");

    const std::size_t n = input.size();
    const std::size_t m = response.size();
    if (m < n || (m & (m - 1)) != 0)
        throw NumericalError("fd_engine", "propagate_frequency_domain",
                             "response grid must cover a power-of-two padded record");
    const std::vector<double> expected = fft_detuning_grid(m, input.dt);
    const double step = expected[1] - expected[0];
    for (std::size_t i = 0; i < m; ++i) {
        if (std::abs(response.detunings[i] - expected[i]) > 1e-9 * step)
            throw NumericalError("fd_engine", "propagate_frequency_domain",
                                 "response grid does not match the FFT bins of the padded "
                                 "record; sample it on fft_detuning_grid");
    }

    // Decomposition Omega(t) = sum_k A_k exp(-i d_k t): the inverse FFT
    // of the record gives A, each bin propagates with exp(exponent * L).
    std::vector<cplx> padded(m, cplx(0.0, 0.0));
    std::copy(input.envelope.begin(), input.envelope.end(), padded.begin());
    Eigen::FFT<double> fft;
    std::vector<cplx> amps;
    fft.inv(amps, padded);

    // The grid covers the pulse if its spectrum has died off at the bin
    // extremes, mirroring the time-domain edge-decay invariant.
    double spec_peak = 0.0;
    for (const cplx& a : amps) spec_peak = std::max(spec_peak, std::abs(a));
    const double spec_edge = std::max(std::abs(amps[fft_bin(0, m)]),
                                      std::abs(amps[fft_bin(m - 1, m)]));
    if (spec_edge > 1e-6 * spec_peak)
        throw NumericalError("fd_engine", "propagate_frequency_domain",
                             "pulse spectrum has not decayed at the grid edge; the "
                             "bandwidth exceeds the detuning grid");

    for (std::size_t i = 0; i < m; ++i) {
        const cplx ex = response.exponent_per_meter[i] * length_m;
        amps[fft_bin(i, m)] *= std::exp(ex);
    }

    std::vector<cplx> out;
    fft.fwd(out, amps);

    FdResult result;
    result.output.t0 = input.t0;
    result.output.dt = input.dt;
    result.output.envelope.assign(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(n));
    result.energy_in = input.energy();
    result.energy_out = result.output.energy();
    result.energy_transmission = result.energy_out / result.energy_in;
    return result;
}

FdResult propagate_frequency_domain(const Pulse& input, const Medium& medium) {
    const std::size_t m = fft_padded_size(input.size());
    const ComplexResponse response =
        complex_response(fft_detuning_grid(m, input.dt), medium);
    return propagate_frequency_domain(input, response, medium.length);
}

} // namespace slowlight
