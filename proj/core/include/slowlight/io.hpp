#pragma once

#include <cstdint>
#include <string>

#include "slowlight/analysis.hpp"
#include "slowlight/burning.hpp"
#include "slowlight/pulse.hpp"
#include "slowlight/td_engine.hpp"

namespace slowlight {

// All CSV writers print doubles with %.17g so re-runs are byte-identical.

// Columns: frequency_Hz, alpha_per_m.
void write_spectrum_csv(const std::string& path, const AbsorptionSpectrum& spectrum);

// Columns: time_s, re_omega, im_omega.
void write_pulse_csv(const std::string& path, const Pulse& pulse);

// Columns: z_m, re_omega, im_omega; one file per snapshot instant.
void write_snapshot_csv(const std::string& path, const Snapshot& snapshot);

// Columns: alphaL_over_gamma_s, delay_s, broadening, transmission.
void write_delay_table_csv(const std::string& path, const DelayScanResult& scan);

std::string format_double(double value);   // %.17g
std::uint64_t fnv1a_hash(const std::string& text);

} // namespace slowlight
