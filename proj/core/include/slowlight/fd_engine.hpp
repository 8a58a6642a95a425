#pragma once

#include <vector>

#include "slowlight/medium.hpp"
#include "slowlight/pulse.hpp"
#include "slowlight/response.hpp"

namespace slowlight {

// Detuning grid that matches the FFT bins of a record of n samples at
// spacing dt, in fftshift order turned ascending. propagate_frequency_domain
// requires the response to be sampled exactly on this grid.
std::vector<double> fft_detuning_grid(std::size_t n, double dt);

// Number of FFT samples used for a pulse record: next power of two at or
// above pad_factor * pulse.size().
std::size_t fft_padded_size(std::size_t n, std::size_t pad_factor = 4);

struct FdResult {
    Pulse output;                  // same t0/dt/length as the input
    double energy_in = 0.0;        // time-integrated |Omega|^2
    double energy_out = 0.0;
    double energy_transmission = 0.0;  // energy_out / energy_in, <= 1
};

// Propagate a pulse through the medium described by a sampled complex
// response. The response grid must equal fft_detuning_grid(padded, dt) for
// the padded record (throws NumericalError otherwise); the pulse bandwidth
// must be covered with margin by the grid extent.
FdResult propagate_frequency_domain(const Pulse& input,
                                    const ComplexResponse& response,
                                    double length_m);

// Convenience: build the padded FFT grid, evaluate the analytic response
// there, and propagate through medium.length.
FdResult propagate_frequency_domain(const Pulse& input, const Medium& medium);

} // namespace slowlight
