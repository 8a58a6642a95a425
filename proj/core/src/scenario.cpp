#include "slowlight/scenario.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "slowlight/errors.hpp"
#include "slowlight/response.hpp"

namespace slowlight {

namespace {

double qty(const ConfigEntry& e) {
    try {
        return parse_quantity(e.value);
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(ex.what(), e.line, e.key);
    }
}

double qty_hz(const ConfigEntry& e) { return hz_to_rad(qty(e)); }

std::size_t qty_count(const ConfigEntry& e) {
    const double v = qty(e);
    if (v < 0.0 || v != std::floor(v))
        throw ConfigError("expected a non-negative integer", e.line, e.key);
    return static_cast<std::size_t>(v);
}

std::vector<double> qty_list(const ConfigEntry& e) {
    std::vector<double> out;
    std::string item;
    for (char c : e.value + ",") {
        if (c == ',') {
            if (!item.empty()) {
                try {
                    out.push_back(parse_quantity(item));
                } catch (const std::invalid_argument& ex) {
                    throw ConfigError(ex.what(), e.line, e.key);
                }
                item.clear();
            }
        } else {
            item += c;
        }
    }
    if (out.empty()) throw ConfigError("empty list", e.line, e.key);
    return out;
}

[[noreturn]] void unknown_key(const ConfigEntry& e, const std::string& section) {
    throw ConfigError("unknown key in [" + section + "]", e.line, e.key);
}

void read_medium(const ConfigSection& s, RunConfig& cfg) {
    cfg.has_medium = true;
    for (const ConfigEntry& e : s.entries) {
        if (e.key == "alpha0_per_m") cfg.medium.alpha0 = qty(e);
        else if (e.key == "length_m") cfg.medium.length = qty(e);
        else if (e.key == "gamma_inh_hz") cfg.medium.gamma_inh = qty_hz(e);
        else if (e.key == "t2_s") cfg.medium.t2 = qty(e);
        else if (e.key == "t1_s") cfg.medium.t1 = qty(e);
        else unknown_key(e, s.name);
    }
}

void read_hole(const ConfigSection& s, RunConfig& cfg) {
    cfg.has_medium = true;
    for (const ConfigEntry& e : s.entries) {
        if (e.key == "center_hz") cfg.medium.hole.center = qty_hz(e);
        else if (e.key == "width_hz") cfg.medium.hole.width_fwhm = qty_hz(e);
        else if (e.key == "depth") cfg.medium.hole.depth = qty(e);
        else unknown_key(e, s.name);
    }
}

void read_pulse(const ConfigSection& s, RunConfig& cfg) {
    cfg.has_pulse = true;
    for (const ConfigEntry& e : s.entries) {
        if (e.key == "shape") cfg.pulse_shape = e.value;
        else if (e.key == "fwhm_s" || e.key == "support_s") cfg.pulse_fwhm_s = qty(e);
        else if (e.key == "peak_rad_s") cfg.pulse_peak_rad_s = qty(e);
        else if (e.key == "record_s") cfg.pulse_record_s = qty(e);
        else if (e.key == "dt_s") cfg.pulse_dt_s = qty(e);
        else if (e.key == "t0_s") cfg.pulse_t0_s = qty(e);
        else if (e.key == "start_s") cfg.pulse_start_s = qty(e);
        else if (e.key == "center_s") cfg.pulse_center_s = qty(e);
        else unknown_key(e, s.name);
    }
}

void read_engine(const ConfigSection& s, RunConfig& cfg) {
    for (const ConfigEntry& e : s.entries) {
        if (e.key == "type") {
            if (e.value != "fd" && e.value != "td" && e.value != "both")
                throw ConfigError("engine type must be fd, td or both", e.line, e.key);
            cfg.engine = e.value;
        } else if (e.key == "mode") {
            if (e.value == "weak") cfg.td.mode = BlochMode::weak;
            else if (e.value == "full") cfg.td.mode = BlochMode::full;
            else throw ConfigError("mode must be weak or full", e.line, e.key);
        } else if (e.key == "z_steps") cfg.td.z_steps = qty_count(e);
        else if (e.key == "snapshot_interval_s") cfg.td.snapshot_interval = qty(e);
        else if (e.key == "probe_fractions") cfg.td.probe_fractions = qty_list(e);
        else if (e.key == "ledger_z_stride") cfg.td.ledger_z_stride = qty_count(e);
        else unknown_key(e, s.name);
    }
}

void read_grid(const ConfigSection& s, RunConfig& cfg) {
    for (const ConfigEntry& e : s.entries) {
        if (e.key == "inner_half_width_hz") cfg.td.grid.inner_half_width = qty_hz(e);
        else if (e.key == "wing_extent_hz") cfg.td.grid.wing_extent = qty_hz(e);
        else if (e.key == "wing_points_per_decade")
            cfg.td.grid.wing_points_per_decade = qty_count(e);
        else unknown_key(e, s.name);
    }
}

void read_level(const ConfigSection& s, RunConfig& cfg) {
    cfg.has_level = true;
    for (const ConfigEntry& e : s.entries) {
        if (e.key == "delta_g_hz") cfg.level.delta_g = qty_hz(e);
        else if (e.key == "delta_e_hz") cfg.level.delta_e = qty_hz(e);
        else if (e.key == "gamma_hom_hz") cfg.level.gamma_hom = qty_hz(e);
        else if (e.key == "branching") cfg.level.branching = qty(e);
        else if (e.key == "t1_opt_s") cfg.level.t1_opt = qty(e);
        else if (e.key == "t_hyperfine_s") cfg.level.t_hyperfine = qty(e);
        else if (e.key == "saturation_per_rate") cfg.level.saturation_per_rate = qty(e);
        else unknown_key(e, s.name);
    }
}

void read_classes(const ConfigSection& s, RunConfig& cfg) {
    for (const ConfigEntry& e : s.entries) {
        if (e.key == "min_hz") cfg.class_min_rad_s = qty_hz(e);
        else if (e.key == "max_hz") cfg.class_max_rad_s = qty_hz(e);
        else if (e.key == "spacing_hz") cfg.class_spacing_rad_s = qty_hz(e);
        else unknown_key(e, s.name);
    }
}

void read_probe(const ConfigSection& s, RunConfig& cfg) {
    for (const ConfigEntry& e : s.entries) {
        if (e.key == "min_hz") cfg.probe_min_rad_s = qty_hz(e);
        else if (e.key == "max_hz") cfg.probe_max_rad_s = qty_hz(e);
        else if (e.key == "step_hz") cfg.probe_step_rad_s = qty_hz(e);
        else unknown_key(e, s.name);
    }
}

void read_spectrum(const ConfigSection& s, RunConfig& cfg) {
    for (const ConfigEntry& e : s.entries) {
        if (e.key == "alpha_thermal_per_m") cfg.alpha_thermal_per_m = qty(e);
        else if (e.key == "gain_window_hz") {
            const std::vector<double> v = qty_list(e);
            if (v.size() != 2) throw ConfigError("expected lo,hi", e.line, e.key);
            cfg.gain_window = FrequencyWindow{hz_to_rad(v[0]), hz_to_rad(v[1])};
            cfg.has_gain_window = true;
        } else if (e.key == "hole_region_hz") {
            const std::vector<double> v = qty_list(e);
            if (v.size() != 2) throw ConfigError("expected lo,hi", e.line, e.key);
            cfg.gain_hole_region = FrequencyWindow{hz_to_rad(v[0]), hz_to_rad(v[1])};
        } else unknown_key(e, s.name);
    }
}

void read_pump_segment(const ConfigSection& s, RunConfig& cfg) {
    PumpSegment seg;
    std::size_t repeat = 1;
    double period = 0.0;
    for (const ConfigEntry& e : s.entries) {
        if (e.key == "channel") seg.channel = static_cast<int>(qty_count(e));
        else if (e.key == "start_s") seg.start = qty(e);
        else if (e.key == "center_hz") seg.center = qty_hz(e);
        else if (e.key == "span_hz") seg.span = qty_hz(e);
        else if (e.key == "duration_s") seg.duration = qty(e);
        else if (e.key == "rate_per_s") seg.rate = qty(e);
        else if (e.key == "repeat") repeat = qty_count(e);
        else if (e.key == "period_s") period = qty(e);
        else unknown_key(e, s.name);
    }
    if (repeat == 0) throw ConfigError("repeat must be at least 1", s.line, "repeat");
    if (repeat > 1 && !(period > 0.0))
        throw ConfigError("repeat needs period_s", s.line, "period_s");
    for (std::size_t r = 0; r < repeat; ++r) {
        PumpSegment copy = seg;
        copy.start += period * static_cast<double>(r);
        cfg.pump.segments.push_back(copy);
    }
}

void read_bloch(const ConfigSection& s, RunConfig& cfg) {
    cfg.has_bloch = true;
    for (const ConfigEntry& e : s.entries) {
        if (e.key == "detuning_hz") cfg.bloch_detuning_rad_s = qty_hz(e);
        else if (e.key == "t2_s") cfg.bloch_t2_s = qty(e);
        else if (e.key == "t1_s") cfg.bloch_t1_s = qty(e);
        else if (e.key == "mode") {
            if (e.value != "weak" && e.value != "full")
                throw ConfigError("mode must be weak or full", e.line, e.key);
            cfg.bloch_mode = e.value;
        } else unknown_key(e, s.name);
    }
}

void read_scan(const ConfigSection& s, RunConfig& cfg) {
    cfg.has_scan = true;
    for (const ConfigEntry& e : s.entries) {
        if (e.key == "alpha_l_values") cfg.scan_alpha_l = qty_list(e);
        else if (e.key == "width_hz") cfg.scan_width_rad_s = qty_hz(e);
        else if (e.key == "depth") cfg.scan_depth = qty(e);
        else if (e.key == "length_m") cfg.scan_length_m = qty(e);
        else if (e.key == "floor_hz") cfg.scan_floor_rad_s = qty_hz(e);
        else unknown_key(e, s.name);
    }
}

} // namespace

RunConfig build_run_config(const ConfigDocument& doc) {
    RunConfig cfg;
    for (const ConfigSection& s : doc.sections) {
        if (s.name == "medium") read_medium(s, cfg);
        else if (s.name == "hole") read_hole(s, cfg);
        else if (s.name == "pulse") read_pulse(s, cfg);
        else if (s.name == "engine") read_engine(s, cfg);
        else if (s.name == "grid") read_grid(s, cfg);
        else if (s.name == "level") read_level(s, cfg);
        else if (s.name == "classes") read_classes(s, cfg);
        else if (s.name == "probe") read_probe(s, cfg);
        else if (s.name == "spectrum") read_spectrum(s, cfg);
        else if (s.name == "pump.segment") read_pump_segment(s, cfg);
        else if (s.name == "bloch") read_bloch(s, cfg);
        else if (s.name == "scan") read_scan(s, cfg);
        else throw ConfigError("unknown section [" + s.name + "]", s.line);
    }
    return cfg;
}

Pulse make_config_pulse(const RunConfig& cfg) {
    if (!cfg.has_pulse) throw ConfigError("missing [pulse] section");
    if (!(cfg.pulse_fwhm_s > 0.0))
        throw ConfigError("pulse needs fwhm_s (gaussian) or support_s (hann)");
    if (cfg.pulse_shape == "gaussian") {
        const double dt = cfg.pulse_dt_s > 0.0 ? cfg.pulse_dt_s : cfg.pulse_fwhm_s / 64.0;
        const double record =
            cfg.pulse_record_s > 0.0 ? cfg.pulse_record_s : 10.0 * cfg.pulse_fwhm_s;
        const std::size_t n = static_cast<std::size_t>(std::llround(record / dt));
        if (cfg.pulse_center_s > 0.0)
            return make_gaussian_pulse_at(cfg.pulse_fwhm_s, cfg.pulse_peak_rad_s,
                                          cfg.pulse_t0_s + cfg.pulse_center_s,
                                          cfg.pulse_t0_s, dt, n);
        return make_gaussian_pulse(cfg.pulse_fwhm_s, cfg.pulse_peak_rad_s, cfg.pulse_t0_s,
                                   dt, n);
    }
    if (cfg.pulse_shape == "hann") {
        const double dt = cfg.pulse_dt_s > 0.0 ? cfg.pulse_dt_s : cfg.pulse_fwhm_s / 256.0;
        const double record =
            cfg.pulse_record_s > 0.0 ? cfg.pulse_record_s : 2.3 * cfg.pulse_fwhm_s;
        const std::size_t n = static_cast<std::size_t>(std::llround(record / dt));
        return make_hann_pulse(cfg.pulse_fwhm_s, cfg.pulse_peak_rad_s,
                               cfg.pulse_t0_s + cfg.pulse_start_s, cfg.pulse_t0_s, dt, n);
    }
    throw ConfigError("pulse shape must be gaussian or hann");
}

namespace {

// Embedded copies of the preset files under presets/; kept byte-identical
// by a test so --preset works without an install tree.

const char* const kPulseDelay = R"cfg(# Gaussian pulse through a burnt hole, frequency- and time-domain engines.
[medium]
alpha0_per_m = 850            # alpha0*L = 4.25
length_m = 0.005
gamma_inh_hz = 20e9
t2_s = 0.010                  # keeps class decay off the transit timescale
t1_s = 10

[hole]
center_hz = 0
width_hz = 860e3
depth = 1.0

[pulse]
shape = gaussian
fwhm_s = 5.37e-6
peak_rad_s = 1.0
record_s = 45e-6
dt_s = 1e-7
t0_s = 0

[engine]
type = both
mode = weak
probe_fractions = 0.25,0.5,0.75
snapshot_interval_s = 5e-6
)cfg";

const char* const kDelayScan = R"cfg(# Delay scan: measured delay against the fitted alpha0*L/width ratio.
[pulse]
shape = gaussian
fwhm_s = 5.37e-6
peak_rad_s = 1.0
record_s = 45e-6
dt_s = 1e-7
t0_s = 0

[scan]
alpha_l_values = 0.5,1.0357142857142857,1.5714285714285714,2.1071428571428571,2.6428571428571429,3.1785714285714286,3.7142857142857144,4.25
width_hz = 2e6
depth = 1.0
length_m = 0.005
floor_hz = 600e3
)cfg";

const char* const kHolePattern = R"cfg(# Saturating burn at the line center: hole and anti-hole pattern.
[level]
delta_g_hz = 18e6
delta_e_hz = 7.5e6
gamma_hom_hz = 10e3
branching = 0.5
t1_opt_s = 800e-6
t_hyperfine_s = inf
saturation_per_rate = 1.25

[classes]
min_hz = -40e6
max_hz = 50e6
spacing_hz = 2.5e3

[probe]
min_hz = -30e6
max_hz = 30e6
step_hz = 50e3

[spectrum]
alpha_thermal_per_m = 500

[pump.segment]
channel = 0
start_s = 0
center_hz = 0
span_hz = 0
duration_s = 0.005
rate_per_s = 2000
)cfg";

const char* const kWeakBurn = R"cfg(# Weak burn: central hole twice as deep as the side holes.
[level]
delta_g_hz = 18e6
delta_e_hz = 7.5e6
gamma_hom_hz = 10e3
branching = 0.5
t1_opt_s = 800e-6
t_hyperfine_s = inf
saturation_per_rate = 0

[classes]
min_hz = -20e6
max_hz = 31e6
spacing_hz = 2.5e3

[probe]
min_hz = -12e6
max_hz = 12e6
step_hz = 2.5e3

[spectrum]
alpha_thermal_per_m = 500

[pump.segment]
channel = 0
start_s = 0
center_hz = 0
span_hz = 0
duration_s = 1e-3
rate_per_s = 20
)cfg";

const char* const kEnhance = R"cfg(# Side repumps at +-delta_g raise the background around a kept-open hole.
[level]
delta_g_hz = 18e6
delta_e_hz = 7.5e6
gamma_hom_hz = 10e3
branching = 0.5
t1_opt_s = 800e-6
t_hyperfine_s = inf
saturation_per_rate = 1.25

[classes]
min_hz = -40e6
max_hz = 50e6
spacing_hz = 2.5e3

[probe]
min_hz = -30e6
max_hz = 30e6
step_hz = 50e3

[spectrum]
alpha_thermal_per_m = 500
gain_window_hz = 1.2e6,3e6   # background band beside the kept-open hole
hole_region_hz = -1e6,1e6

[pump.segment]               # repump sweep above the line
channel = 1
start_s = 0
center_hz = 18e6
span_hz = 4e6
duration_s = 1.5e-3
rate_per_s = 3000
repeat = 6
period_s = 2.5e-3

[pump.segment]               # repump sweep below the line
channel = 2
start_s = 0
center_hz = -18e6
span_hz = 4e6
duration_s = 1.5e-3
rate_per_s = 3000
repeat = 6
period_s = 2.5e-3

[pump.segment]               # re-open the central hole after each sweep
channel = 0
start_s = 1.5e-3
center_hz = 0
span_hz = 0
duration_s = 1e-3
rate_per_s = 2000
repeat = 6
period_s = 2.5e-3
)cfg";

const char* const kEnergy = R"cfg(# Containment scenario: the pulse fits inside the crystal at one instant.
[medium]
alpha0_per_m = 1e6
length_m = 0.005
gamma_inh_hz = 20e9
t2_s = 10
t1_s = 100

[hole]
center_hz = 0
width_hz = 1e6
depth = 1.0

# Gaussian rather than raised-cosine: the class comb leaves narrow spectral
# gaps between far nodes, and a drive with polynomial tails rings them up
# over this long record. The Gaussian's tails are dead at the first gap.
[pulse]
shape = gaussian
fwhm_s = 1.75e-4              # spatial extent 0.22 of the crystal length
peak_rad_s = 1.0
center_s = 6.0e-4
record_s = 2.05e-3            # covers the input plus one group delay
dt_s = 3.0e-6
t0_s = 0

[engine]
type = td
mode = weak
)cfg";

const char* const kAdiabatic = R"cfg(# One far-detuned class follows the drive adiabatically.
[pulse]
shape = gaussian
fwhm_s = 50e-6
peak_rad_s = 1256.6370614359173
record_s = 400e-6
dt_s = 7.8125e-9
t0_s = 0

[bloch]
detuning_hz = 200e3
t2_s = 0.1
t1_s = 10
mode = full
)cfg";

const std::map<std::string, const char*>& preset_map() {
    static const std::map<std::string, const char*> presets = {
        {"hole-pattern", kHolePattern}, {"weak-burn", kWeakBurn},
        {"pulse-delay", kPulseDelay},   {"delay-scan", kDelayScan},
        {"enhance", kEnhance},       {"energy", kEnergy},
        {"adiabatic", kAdiabatic},
    };
    return presets;
}

} // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, text] : preset_map()) names.push_back(name);
    return names;
}

std::string preset_text(const std::string& name) {
    const auto& presets = preset_map();
    const auto it = presets.find(name);
    if (it == presets.end()) {
        std::string known;
        for (const auto& [n, t] : presets) known += known.empty() ? n : ", " + n;
        throw std::invalid_argument("unknown preset '" + name + "' (known: " + known + ")");
    }
    return it->second;
}

PropagationReport run_propagation(const RunConfig& cfg) {
    if (!cfg.has_medium) throw ConfigError("propagation needs [medium] and [hole]");
    cfg.medium.validate();

    PropagationReport report;
    report.input = make_config_pulse(cfg);
    report.expected_delay_s = expected_delay(cfg.medium);

    if (cfg.engine == "fd" || cfg.engine == "both") {
        report.has_fd = true;
        report.fd = propagate_frequency_domain(report.input, cfg.medium);
        report.fd_delay = extract_delay(report.input, report.fd.output);
        report.fd_distortion =
            distortion_metrics(report.input, report.fd.output, report.fd_delay.peak_delay);
    }
    if (cfg.engine == "td" || cfg.engine == "both") {
        report.has_td = true;
        report.td = propagate_time_domain(report.input, cfg.medium, cfg.td);
        report.td_delay = extract_delay(report.input, report.td.output);
        report.td_distortion =
            distortion_metrics(report.input, report.td.output, report.td_delay.peak_delay);
    }
    return report;
}

SpectrumReport run_spectrum(const RunConfig& cfg) {
    if (!cfg.has_level) throw ConfigError("spectrum runs need [level]");
    if (!(cfg.class_spacing_rad_s > 0.0))
        throw ConfigError("spectrum runs need [classes] min/max/spacing");
    if (!(cfg.probe_step_rad_s > 0.0))
        throw ConfigError("spectrum runs need [probe] min/max/step");
    if (!(cfg.alpha_thermal_per_m > 0.0))
        throw ConfigError("spectrum runs need [spectrum] alpha_thermal_per_m");

    const ClassGrid grid = make_class_grid(cfg.class_min_rad_s, cfg.class_max_rad_s,
                                           cfg.class_spacing_rad_s, cfg.level);
    std::vector<double> probes;
    for (double nu = cfg.probe_min_rad_s; nu <= cfg.probe_max_rad_s + 0.5 * cfg.probe_step_rad_s;
         nu += cfg.probe_step_rad_s)
        probes.push_back(nu);

    SpectrumReport report;
    report.thermal = absorption_spectrum(cfg.level, thermal_populations(grid),
                                         cfg.alpha_thermal_per_m, probes);
    const GroundPopulations burnt = simulate_pump_sequence(cfg.level, grid, cfg.pump);
    report.burnt =
        absorption_spectrum(cfg.level, burnt, cfg.alpha_thermal_per_m, probes);

    try {
        const double half = 0.5 * cfg.level.delta_e;
        report.fit = fit_lorentzian_hole(report.burnt, FrequencyWindow{-half, half});
        report.fit_ok = true;
    } catch (const std::exception&) {
        report.fit_ok = false;
    }
    if (cfg.has_gain_window) {
        report.gain = enhancement_gain(report.thermal, report.burnt, cfg.gain_window,
                                       cfg.gain_hole_region);
        report.has_gain = true;
    }
    return report;
}

DelayScanResult run_delay_scan(const RunConfig& cfg) {
    if (!cfg.has_scan) throw ConfigError("delay scans need [scan]");
    if (!(cfg.scan_width_rad_s > 0.0) || !(cfg.scan_length_m > 0.0))
        throw ConfigError("delay scans need width_hz and length_m");
    const Pulse probe = make_config_pulse(cfg);

    std::vector<Medium> media;
    for (double al : cfg.scan_alpha_l) {
        Medium m;
        m.alpha0 = al / cfg.scan_length_m;
        m.length = cfg.scan_length_m;
        m.hole = SpectralHole{0.0, cfg.scan_width_rad_s, cfg.scan_depth};
        m.gamma_inh = hz_to_rad(20e9);
        m.t2 = 0.01;
        m.t1 = 10.0;
        media.push_back(m);
    }
    return delay_scan(media, probe, cfg.scan_floor_rad_s);
}

BlochReport run_bloch(const RunConfig& cfg) {
    if (!cfg.has_bloch) throw ConfigError("bloch runs need [bloch]");
    const Pulse drive = make_config_pulse(cfg);

    BlochReport report;
    report.times.resize(drive.size());
    for (std::size_t i = 0; i < drive.size(); ++i) report.times[i] = drive.time_at(i);
    const BlochMode mode = cfg.bloch_mode == "weak" ? BlochMode::weak : BlochMode::full;
    report.trace = integrate_bloch_class(drive.envelope, drive.dt, cfg.bloch_detuning_rad_s,
                                         cfg.bloch_t1_s, cfg.bloch_t2_s, mode);
    report.adiabatic_reference =
        adiabatic_population(drive.peak_abs(), cfg.bloch_detuning_rad_s);
    return report;
}

const char* library_version() { return "0.1.0"; }

} // namespace slowlight
