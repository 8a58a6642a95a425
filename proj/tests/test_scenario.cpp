#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "slowlight/scenario.hpp"
#include "slowlight/units.hpp"

using namespace slowlight;

namespace {

RunConfig from_text(const std::string& text) {
    return build_run_config(parse_config_text(text));
}

} // namespace

TEST_CASE("every embedded preset assembles into a run configuration") {
    const std::vector<std::string> names = preset_names();
    REQUIRE(names.size() == 7);
    for (const char* expect :
         {"pulse-delay", "delay-scan", "hole-pattern", "weak-burn", "enhance",
          "energy", "adiabatic"})
        CHECK(std::find(names.begin(), names.end(), expect) != names.end());
    for (const auto& name : names) {
        CAPTURE(name);
        CHECK_NOTHROW(from_text(preset_text(name)));
    }
    CHECK_THROWS_AS(preset_text("no-such-preset"), std::invalid_argument);
}

TEST_CASE("embedded presets stay byte-identical to the files under presets/") {
    for (const auto& name : preset_names()) {
        CAPTURE(name);
        const std::string path = std::string(SLOWLIGHT_PRESET_DIR "/") + name + ".cfg";
        std::ifstream in(path, std::ios::binary);
        REQUIRE_MESSAGE(in.good(), ("missing preset file: " + path));
        std::ostringstream ss;
        ss << in.rdbuf();
        CHECK(ss.str() == preset_text(name));
    }
}

TEST_CASE("frequencies land in rad/s exactly once") {
    const RunConfig cfg = from_text(preset_text("pulse-delay"));
    REQUIRE(cfg.has_medium);
    CHECK(cfg.medium.alpha0 == 850.0);
    CHECK(cfg.medium.length == 0.005);
    CHECK(cfg.medium.hole.width_fwhm == hz_to_rad(860e3));
    CHECK(cfg.medium.hole.depth == 1.0);
    CHECK(cfg.medium.gamma_inh == hz_to_rad(20e9));
    CHECK(cfg.engine == "both");
    REQUIRE(cfg.td.probe_fractions.size() == 3);
    CHECK(cfg.td.probe_fractions[1] == 0.5);
    CHECK(cfg.td.snapshot_interval == 5e-6);

    const RunConfig lvl = from_text(preset_text("hole-pattern"));
    REQUIRE(lvl.has_level);
    CHECK(lvl.level.delta_g == hz_to_rad(18e6));
    CHECK(lvl.level.delta_e == hz_to_rad(7.5e6));
    CHECK(lvl.level.gamma_hom == hz_to_rad(10e3));
    CHECK(lvl.level.saturation_per_rate == 1.25);
    CHECK(lvl.alpha_thermal_per_m == 500.0);
    CHECK(lvl.class_spacing_rad_s == hz_to_rad(2.5e3));

    const RunConfig ad = from_text(preset_text("adiabatic"));
    REQUIRE(ad.has_bloch);
    CHECK(ad.bloch_detuning_rad_s == hz_to_rad(200e3));
    CHECK(ad.bloch_mode == "full");
}

TEST_CASE("pulse defaults derive the grid from the shape") {
    RunConfig cfg;
    cfg.has_pulse = true;
    cfg.pulse_shape = "gaussian";
    cfg.pulse_fwhm_s = 6.4e-6;
    cfg.pulse_peak_rad_s = 2.0;

    Pulse g = make_config_pulse(cfg);
    CHECK(g.dt == doctest::Approx(6.4e-6 / 64.0).epsilon(1e-12));
    CHECK(g.size() == 640);  // record 10*fwhm
    CHECK(g.peak_abs() == doctest::Approx(2.0).epsilon(1e-12));

    cfg.pulse_shape = "hann";
    cfg.pulse_fwhm_s = 1e-4;  // support length
    cfg.pulse_t0_s = 1e-5;
    cfg.pulse_start_s = 2e-5;
    Pulse h = make_config_pulse(cfg);
    CHECK(h.dt == doctest::Approx(1e-4 / 256.0).epsilon(1e-12));
    CHECK(h.size() == 589);  // record 2.3*support
    CHECK(h.t0 == 1e-5);
    // Support starts start_s after the record origin: zero before, rising after.
    std::size_t first_nonzero = 0;
    while (first_nonzero < h.size() && std::abs(h.envelope[first_nonzero]) == 0.0)
        ++first_nonzero;
    CHECK(h.time_at(first_nonzero) >= 1e-5 + 2e-5 - h.dt);
    CHECK(h.time_at(first_nonzero) <= 1e-5 + 2e-5 + 2.0 * h.dt);

    cfg.pulse_shape = "boxcar";
    CHECK_THROWS_AS(make_config_pulse(cfg), ConfigError);
    cfg.pulse_shape = "hann";
    cfg.pulse_fwhm_s = 0.0;
    CHECK_THROWS_AS(make_config_pulse(cfg), ConfigError);
}

TEST_CASE("repeated pump segments expand on the configured period") {
    const RunConfig cfg = from_text(preset_text("enhance"));
    REQUIRE(cfg.has_level);
    REQUIRE(cfg.pump.segments.size() == 18);
    int per_channel[3] = {0, 0, 0};
    for (const auto& seg : cfg.pump.segments) {
        REQUIRE(seg.channel >= 0);
        REQUIRE(seg.channel < 3);
        ++per_channel[seg.channel];
    }
    CHECK(per_channel[0] == 6);
    CHECK(per_channel[1] == 6);
    CHECK(per_channel[2] == 6);
    // Copies of one channel step by the period and share everything else.
    std::vector<const PumpSegment*> ch1;
    for (const auto& seg : cfg.pump.segments)
        if (seg.channel == 1) ch1.push_back(&seg);
    for (std::size_t r = 1; r < ch1.size(); ++r) {
        CHECK(ch1[r]->start == doctest::Approx(ch1[0]->start + 2.5e-3 * double(r)).epsilon(1e-12));
        CHECK(ch1[r]->center == ch1[0]->center);
        CHECK(ch1[r]->span == ch1[0]->span);
        CHECK(ch1[r]->duration == ch1[0]->duration);
        CHECK(ch1[r]->rate == ch1[0]->rate);
    }

    const char* bad_zero =
        "[pump.segment]\n"
        "channel = 0\n"
        "center_hz = 0\n"
        "duration_s = 1e-3\n"
        "rate_per_s = 10\n"
        "repeat = 0\n";
    CHECK_THROWS_AS(from_text(bad_zero), ConfigError);

    const char* bad_period =
        "[pump.segment]\n"
        "channel = 0\n"
        "center_hz = 0\n"
        "duration_s = 1e-3\n"
        "rate_per_s = 10\n"
        "repeat = 3\n";
    CHECK_THROWS_AS(from_text(bad_period), ConfigError);
}

TEST_CASE("unknown sections and keys carry their source line") {
    try {
        from_text("[medium]\nalpha0_per_m = 850\nresonance_nm = 793\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& ex) {
        CHECK(ex.line() == 3);
        CHECK(ex.key() == "resonance_nm");
    }
    try {
        from_text("# header\n\n[crystal]\naxis = b\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& ex) {
        CHECK(ex.line() == 3);
    }
}

TEST_CASE("runners demand their sections") {
    const RunConfig empty = from_text("");
    CHECK_THROWS_AS(run_propagation(empty), ConfigError);
    CHECK_THROWS_AS(run_spectrum(empty), ConfigError);
    CHECK_THROWS_AS(run_delay_scan(empty), ConfigError);
    CHECK_THROWS_AS(run_bloch(empty), ConfigError);

    // A level block alone is still short of a spectrum run.
    RunConfig lvl = from_text(preset_text("hole-pattern"));
    lvl.class_spacing_rad_s = 0.0;
    CHECK_THROWS_AS(run_spectrum(lvl), ConfigError);
}

TEST_CASE("frequency-domain propagation run matches the delay formula") {
    const char* text =
        "[medium]\n"
        "alpha0_per_m = 850\n"
        "length_m = 5mm\n"
        "gamma_inh_hz = 20GHz\n"
        "t2_s = 10ms\n"
        "t1_s = 10\n"
        "[hole]\n"
        "center_hz = 0\n"
        "width_hz = 860kHz\n"
        "depth = 1.0\n"
        "[pulse]\n"
        "shape = gaussian\n"
        "fwhm_s = 5.37us\n"
        "peak_rad_s = 1\n"
        "record_s = 45us\n"
        "dt_s = 1e-7\n"
        "[engine]\n"
        "type = fd\n";
    const PropagationReport report = run_propagation(from_text(text));
    REQUIRE(report.has_fd);
    CHECK_FALSE(report.has_td);
    CHECK(report.expected_delay_s ==
          doctest::Approx(850.0 * 0.005 / hz_to_rad(860e3)).epsilon(1e-12));
    CHECK(report.fd_delay.peak_delay ==
          doctest::Approx(report.expected_delay_s).epsilon(0.03));
    CHECK(report.fd_distortion.broadening > 0.9);
    CHECK(report.fd_distortion.broadening < 1.3);
    CHECK(report.fd_distortion.amplitude_ratio < 1.0);
}

TEST_CASE("spectrum run burns the probed classes") {
    const char* text =
        "[level]\n"
        "delta_g_hz = 18MHz\n"
        "delta_e_hz = 7.5MHz\n"
        "gamma_hom_hz = 10kHz\n"
        "branching = 0.5\n"
        "t1_opt_s = 800us\n"
        "t_hyperfine_s = inf\n"
        "saturation_per_rate = 0\n"
        "[classes]\n"
        "min_hz = -8.5e6\n"
        "max_hz = 19e6\n"
        "spacing_hz = 2.5e3\n"
        "[probe]\n"
        "min_hz = -200e3\n"
        "max_hz = 200e3\n"
        "step_hz = 50e3\n"
        "[spectrum]\n"
        "alpha_thermal_per_m = 500\n"
        "[pump.segment]\n"
        "channel = 0\n"
        "start_s = 0\n"
        "center_hz = 0\n"
        "span_hz = 0\n"
        "duration_s = 5e-3\n"
        "rate_per_s = 2000\n";
    const SpectrumReport report = run_spectrum(from_text(text));
    REQUIRE(report.thermal.alpha.size() == 9);
    REQUIRE(report.burnt.alpha.size() == 9);
    for (double a : report.thermal.alpha)
        CHECK(a == doctest::Approx(500.0).epsilon(1e-12));
    // The probe kernel convolves the population hole with another
    // homogeneous line, so partially burnt neighbours keep the center from
    // reaching the bare exp(-rate*branching*duration); a saturating burn
    // still collapses it well below the thermal level.
    CHECK(report.burnt.alpha[4] < 0.6 * 500.0);
    CHECK(report.burnt.alpha.front() > 0.95 * 500.0);
    CHECK(report.burnt.alpha.back() > 0.95 * 500.0);
}

TEST_CASE("delay scan run reproduces the unit slope") {
    const char* text =
        "[pulse]\n"
        "shape = gaussian\n"
        "fwhm_s = 5.37us\n"
        "peak_rad_s = 1\n"
        "record_s = 45us\n"
        "dt_s = 1e-7\n"
        "[scan]\n"
        "alpha_l_values = 1.5,3.0\n"
        "width_hz = 2e6\n"
        "depth = 1.0\n"
        "length_m = 5mm\n"
        "floor_hz = 600e3\n";
    const DelayScanResult scan = run_delay_scan(from_text(text));
    REQUIRE(scan.rows.size() == 2);
    CHECK_FALSE(scan.rows[0].excluded);
    CHECK_FALSE(scan.rows[1].excluded);
    CHECK(scan.slope == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("bloch run reports the adiabatic reference") {
    const BlochReport report = run_bloch(from_text(preset_text("adiabatic")));
    REQUIRE(report.trace.inversion.size() == report.times.size());
    double peak_pee = 0.0;
    for (double w : report.trace.inversion)
        peak_pee = std::max(peak_pee, 0.5 * (1.0 - w));
    CHECK(report.adiabatic_reference > 0.0);
    CHECK(peak_pee == doctest::Approx(report.adiabatic_reference).epsilon(0.02));
}

TEST_CASE("version string is stable") {
    CHECK(std::string(library_version()) == "0.1.0");
}
