#pragma once

#include <string>
#include <vector>

#include "slowlight/analysis.hpp"
#include "slowlight/bloch.hpp"
#include "slowlight/burning.hpp"
#include "slowlight/config.hpp"
#include "slowlight/fd_engine.hpp"
#include "slowlight/td_engine.hpp"

namespace slowlight {

// Fully resolved run description. Frequencies are converted from the Hz
// config surface to rad/s here, once; everything downstream is SI + rad/s.
struct RunConfig {
    bool has_medium = false;
    Medium medium;

    bool has_pulse = false;
    std::string pulse_shape = "gaussian";  // gaussian | hann
    double pulse_fwhm_s = 0.0;             // hann: full support length
    double pulse_peak_rad_s = 1.0;
    double pulse_record_s = 0.0;           // 0 -> derived from the shape
    double pulse_dt_s = 0.0;               // 0 -> derived
    double pulse_t0_s = 0.0;               // record origin label
    double pulse_start_s = 0.0;            // hann: support start within the record
    double pulse_center_s = 0.0;           // gaussian: center within the record; 0 -> middle

    std::string engine = "fd";             // fd | td | both
    TdConfig td;

    bool has_level = false;
    LevelSystem level;
    double class_min_rad_s = 0.0;
    double class_max_rad_s = 0.0;
    double class_spacing_rad_s = 0.0;
    double probe_min_rad_s = 0.0;
    double probe_max_rad_s = 0.0;
    double probe_step_rad_s = 0.0;
    double alpha_thermal_per_m = 0.0;
    bool has_gain_window = false;
    FrequencyWindow gain_window;           // background band beside the hole
    FrequencyWindow gain_hole_region;      // excluded transparency feature
    PumpSequence pump;

    bool has_bloch = false;
    double bloch_detuning_rad_s = 0.0;
    double bloch_t1_s = 0.0;
    double bloch_t2_s = 0.0;
    std::string bloch_mode = "full";

    bool has_scan = false;
    std::vector<double> scan_alpha_l;      // alpha0*L values, length fixed
    double scan_width_rad_s = 0.0;
    double scan_depth = 1.0;
    double scan_length_m = 0.0;
    double scan_floor_rad_s = 2 * pi * 600.0e3;
};

// Schema-checked assembly; unknown sections or keys raise ConfigError with
// the offending line and key.
RunConfig build_run_config(const ConfigDocument& doc);

Pulse make_config_pulse(const RunConfig& config);

// Embedded preset scenarios, also installed as plain files under presets/.
// Throws std::invalid_argument for unknown names.
std::vector<std::string> preset_names();
std::string preset_text(const std::string& name);

struct PropagationReport {
    Pulse input;
    bool has_fd = false;
    FdResult fd;
    DelayEstimate fd_delay;
    DistortionMetrics fd_distortion;
    bool has_td = false;
    TdResult td;
    DelayEstimate td_delay;
    DistortionMetrics td_distortion;
    double expected_delay_s = 0.0;
};

PropagationReport run_propagation(const RunConfig& config);

struct SpectrumReport {
    AbsorptionSpectrum thermal;
    AbsorptionSpectrum burnt;
    bool fit_ok = false;
    HoleFit fit;
    bool has_gain = false;
    double gain = 0.0;         // burnt/thermal background ratio in the window
};

SpectrumReport run_spectrum(const RunConfig& config);

DelayScanResult run_delay_scan(const RunConfig& config);

struct BlochReport {
    std::vector<double> times;
    BlochTrace trace;
    double adiabatic_reference = 0.0;  // steady p_ee for the configured drive
};

BlochReport run_bloch(const RunConfig& config);

const char* library_version();

} // namespace slowlight
