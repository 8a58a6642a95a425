// Scenario runner: parses a config (file or embedded preset), executes one
// experiment, writes figure-ready CSV datasets plus a machine-readable
// summary.json. Identical configs produce byte-identical outputs.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "slowlight/errors.hpp"
#include "slowlight/io.hpp"
#include "slowlight/response.hpp"
#include "slowlight/scenario.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace slowlight;

namespace {

// Printing through format_double keeps JSON doubles identical to the CSVs.
ordered_json num(double v) { return ordered_json::parse(format_double(v)); }

struct CommonArgs {
    std::string config_path;
    std::string preset;
    std::string out_dir = "out";
    std::string engine;
    std::string hole_width;
    std::string hole_depth;
    std::string alpha;
    std::string length;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    auto* cfg = cmd->add_option("--config", args.config_path, "config file path");
    auto* pre = cmd->add_option("--preset", args.preset, "embedded preset name");
    cfg->excludes(pre);
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--engine", args.engine, "engine override: fd, td or both")
        ->check(CLI::IsMember({"fd", "td", "both"}));
    cmd->add_option("--hole-width", args.hole_width, "hole FWHM override, e.g. 860kHz");
    cmd->add_option("--hole-depth", args.hole_depth, "hole depth override, 0..1");
    cmd->add_option("--alpha", args.alpha, "background absorption override, 1/m");
    cmd->add_option("--length", args.length, "crystal length override, e.g. 5mm");
    cmd->add_flag("--quiet", args.quiet, "suppress progress lines");
}

std::string load_config_text(const CommonArgs& args) {
    if (!args.preset.empty()) return preset_text(args.preset);
    if (args.config_path.empty())
        throw ConfigError("either --config or --preset is required");
    std::ifstream in(args.config_path);
    if (!in) throw ConfigError("cannot open config file " + args.config_path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

double override_quantity(const std::string& text, const char* flag) {
    try {
        return parse_quantity(text);
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string(ex.what()), 0, flag);
    }
}

// Applies CLI overrides on top of the parsed config, then re-validates.
RunConfig resolve_config(const CommonArgs& args, const std::string& text) {
    RunConfig cfg = build_run_config(parse_config_text(text));
    if (!args.engine.empty()) cfg.engine = args.engine;
    if (!args.hole_width.empty())
        cfg.medium.hole.width_fwhm = hz_to_rad(override_quantity(args.hole_width, "--hole-width"));
    if (!args.hole_depth.empty())
        cfg.medium.hole.depth = override_quantity(args.hole_depth, "--hole-depth");
    if (!args.alpha.empty()) cfg.medium.alpha0 = override_quantity(args.alpha, "--alpha");
    if (!args.length.empty()) cfg.medium.length = override_quantity(args.length, "--length");
    return cfg;
}

ordered_json summary_header(const std::string& subcommand, const std::string& text) {
    ordered_json j;
    j["tool"] = "slowlight";
    j["version"] = library_version();
    j["subcommand"] = subcommand;
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(fnv1a_hash(text)));
    j["config_hash"] = hash;
    return j;
}

void write_summary(const fs::path& dir, const ordered_json& j) {
    std::ofstream out(dir / "summary.json");
    out << j.dump(2) << "\n";
}

void write_ledger_csv(const fs::path& path, const EnergyLedger& ledger) {
    std::ofstream out(path);
    out << "time_s,em_inside,at_inside,entered,emitted\n";
    for (std::size_t i = 0; i < ledger.times.size(); ++i)
        out << format_double(ledger.times[i]) << ',' << format_double(ledger.em_inside[i])
            << ',' << format_double(ledger.at_inside[i]) << ','
            << format_double(ledger.entered[i]) << ',' << format_double(ledger.emitted[i])
            << "\n";
}

void write_probe_csv(const fs::path& path, const Pulse& input,
                     const std::vector<ProbeSeries>& probes) {
    std::ofstream out(path);
    out << "time_s";
    for (const ProbeSeries& p : probes) out << ",re_omega_z" << format_double(p.z)
                                            << ",im_omega_z" << format_double(p.z);
    out << "\n";
    for (std::size_t t = 0; t < input.size(); ++t) {
        out << format_double(input.time_at(t));
        for (const ProbeSeries& p : probes)
            out << ',' << format_double(p.omega[t].real()) << ','
                << format_double(p.omega[t].imag());
        out << "\n";
    }
}

void write_trace_csv(const fs::path& path, const BlochReport& report) {
    std::ofstream out(path);
    out << "time_s,re_sigma,im_sigma,excited_population\n";
    for (std::size_t i = 0; i < report.times.size(); ++i) {
        const double pee = 0.5 * (1.0 - report.trace.inversion[i]);
        out << format_double(report.times[i]) << ','
            << format_double(report.trace.sigma[i].real()) << ','
            << format_double(report.trace.sigma[i].imag()) << ',' << format_double(pee)
            << "\n";
    }
}

ordered_json delay_block(const DelayEstimate& delay, const DistortionMetrics& dist) {
    ordered_json j;
    j["peak_delay_s"] = num(delay.peak_delay);
    j["centroid_delay_s"] = num(delay.centroid_delay);
    j["broadening"] = num(dist.broadening);
    j["amplitude_ratio"] = num(dist.amplitude_ratio);
    j["rms_shape_residual"] = num(dist.rms_shape_residual);
    j["distortion_flagged"] = dist.broadening > 1.25;
    return j;
}

int run_spectrum_cmd(const CommonArgs& args, const std::string& text) {
    const RunConfig cfg = resolve_config(args, text);
    const SpectrumReport report = run_spectrum(cfg);

    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    write_spectrum_csv((dir / "spectrum_thermal.csv").string(), report.thermal);
    write_spectrum_csv((dir / "spectrum_burnt.csv").string(), report.burnt);

    ordered_json j = summary_header("spectrum", text);
    if (report.fit_ok) {
        j["hole_fit"]["center_hz"] = num(rad_to_hz(report.fit.center));
        j["hole_fit"]["width_hz"] = num(rad_to_hz(report.fit.width_fwhm));
        j["hole_fit"]["depth_per_m"] = num(report.fit.depth_abs);
        j["hole_fit"]["baseline_per_m"] = num(report.fit.baseline);
        j["hole_fit"]["rms_residual_per_m"] = num(report.fit.rms_residual);
    }
    if (report.has_gain) j["background_gain"] = num(report.gain);
    write_summary(dir, j);

    if (!args.quiet) {
        if (report.fit_ok)
            std::cout << "hole: width " << rad_to_hz(report.fit.width_fwhm) << " Hz, depth "
                      << report.fit.depth_abs << " 1/m\n";
        if (report.has_gain) std::cout << "background gain: " << report.gain << "\n";
    }
    return 0;
}

int run_propagate_cmd(const CommonArgs& args, const std::string& text) {
    const RunConfig cfg = resolve_config(args, text);
    const PropagationReport report = run_propagation(cfg);

    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    write_pulse_csv((dir / "input_pulse.csv").string(), report.input);

    ordered_json j = summary_header("propagate", text);
    j["expected_delay_s"] = num(report.expected_delay_s);
    if (report.has_fd) {
        write_pulse_csv((dir / "output_fd.csv").string(), report.fd.output);
        j["fd"] = delay_block(report.fd_delay, report.fd_distortion);
        j["fd"]["energy_transmission"] = num(report.fd.energy_transmission);
    }
    if (report.has_td) {
        write_pulse_csv((dir / "output_td.csv").string(), report.td.output);
        for (std::size_t k = 0; k < report.td.snapshots.size(); ++k) {
            char name[48];
            std::snprintf(name, sizeof name, "snapshot_%03zu.csv", k);
            write_snapshot_csv((dir / name).string(), report.td.snapshots[k]);
        }
        if (!report.td.probes.empty())
            write_probe_csv(dir / "probes.csv", report.input, report.td.probes);
        write_ledger_csv(dir / "ledger.csv", report.td.ledger);
        j["td"] = delay_block(report.td_delay, report.td_distortion);
        j["td"]["partition_ratio"] = num(report.td.summary.partition_ratio);
        j["td"]["expected_ratio"] = num(report.td.summary.expected_ratio);
        j["td"]["drift"] = num(report.td.summary.drift);
    }
    write_summary(dir, j);

    if (!args.quiet) {
        std::cout << "expected delay " << report.expected_delay_s << " s\n";
        if (report.has_fd)
            std::cout << "fd: delay " << report.fd_delay.peak_delay << " s, broadening "
                      << report.fd_distortion.broadening << "\n";
        if (report.has_td)
            std::cout << "td: delay " << report.td_delay.peak_delay << " s, broadening "
                      << report.td_distortion.broadening << "\n";
    }
    return 0;
}

int run_delay_scan_cmd(const CommonArgs& args, const std::string& text) {
    const RunConfig cfg = resolve_config(args, text);
    const DelayScanResult scan = run_delay_scan(cfg);

    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    write_delay_table_csv((dir / "delay_scan.csv").string(), scan);

    ordered_json j = summary_header("delay-scan", text);
    j["slope_s"] = num(scan.slope);
    j["intercept_s"] = num(scan.intercept_s);
    std::size_t included = 0;
    for (const DelayScanRow& row : scan.rows)
        if (!row.excluded) ++included;
    j["rows"] = scan.rows.size();
    j["rows_included"] = included;
    write_summary(dir, j);

    if (!args.quiet)
        std::cout << "delay scan: slope " << scan.slope << " s, intercept " << scan.intercept_s
                  << " s over " << included << " scenarios\n";
    return 0;
}

int run_bloch_cmd(const CommonArgs& args, const std::string& text) {
    const RunConfig cfg = resolve_config(args, text);
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    ordered_json j = summary_header("bloch", text);

    if (cfg.has_bloch) {
        const BlochReport report = run_bloch(cfg);
        write_trace_csv(dir / "bloch_trace.csv", report);
        double peak_pee = 0.0;
        for (double w : report.trace.inversion)
            peak_pee = std::max(peak_pee, 0.5 * (1.0 - w));
        j["detuning_hz"] = num(rad_to_hz(cfg.bloch_detuning_rad_s));
        j["peak_excited_population"] = num(peak_pee);
        j["adiabatic_reference"] = num(report.adiabatic_reference);
        write_summary(dir, j);
        if (!args.quiet)
            std::cout << "bloch: peak excited population " << peak_pee << " (adiabatic "
                      << report.adiabatic_reference << ")\n";
        return 0;
    }

    // No single-class request: run the time-domain engine for the energy ledger.
    RunConfig td_cfg = cfg;
    td_cfg.engine = "td";
    const PropagationReport report = run_propagation(td_cfg);
    write_ledger_csv(dir / "ledger.csv", report.td.ledger);
    const LedgerSummary& s = report.td.summary;
    j["partition_ratio"] = num(s.partition_ratio);
    j["expected_ratio"] = num(s.expected_ratio);
    j["partition_residual"] = num(s.partition_ratio / s.expected_ratio - 1.0);
    j["drift"] = num(s.drift);
    j["outside_fraction_at_best"] = num(s.outside_fraction);
    j["partial_containment"] = s.partial_containment;
    j["best_time_s"] = num(s.best_time);
    write_summary(dir, j);

    if (!args.quiet)
        std::cout << "energy ledger: partition ratio " << s.partition_ratio << " (expected "
                  << s.expected_ratio << "), drift " << s.drift << "\n";
    return 0;
}

int run_figures_cmd(const CommonArgs& args) {
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    ordered_json index;
    index["tool"] = "slowlight";
    index["version"] = library_version();
    index["subcommand"] = "figures";

    for (const std::string& name : preset_names()) {
        CommonArgs sub = args;
        sub.preset = name;
        sub.config_path.clear();
        sub.out_dir = (dir / name).string();
        const std::string text = preset_text(name);
        const RunConfig cfg = build_run_config(parse_config_text(text));
        std::string kind;
        if (cfg.has_scan) kind = "delay-scan", run_delay_scan_cmd(sub, text);
        else if (cfg.has_level) kind = "spectrum", run_spectrum_cmd(sub, text);
        else if (cfg.has_bloch || cfg.engine == "td") kind = "bloch", run_bloch_cmd(sub, text);
        else kind = "propagate", run_propagate_cmd(sub, text);
        index["presets"][name] = kind;
    }
    write_summary(dir, index);
    if (!args.quiet) std::cout << "figures: wrote " << preset_names().size() << " presets\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"slow light through a persistent spectral hole"};
    app.require_subcommand(1);

    CommonArgs args;
    auto* spectrum = app.add_subcommand("spectrum", "pump sequence -> absorption spectrum");
    auto* propagate = app.add_subcommand("propagate", "pulse through the burnt medium");
    auto* delay_scan = app.add_subcommand("delay-scan", "delay against the hole parameters");
    auto* bloch = app.add_subcommand("bloch", "time-domain run with the energy ledger");
    auto* figures = app.add_subcommand("figures", "run every embedded preset");
    for (CLI::App* cmd : {spectrum, propagate, delay_scan, bloch, figures})
        add_common(cmd, args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (figures->parsed()) return run_figures_cmd(args);
        const std::string text = load_config_text(args);
        if (spectrum->parsed()) return run_spectrum_cmd(args, text);
        if (propagate->parsed()) return run_propagate_cmd(args, text);
        if (delay_scan->parsed()) return run_delay_scan_cmd(args, text);
        return run_bloch_cmd(args, text);
    } catch (const ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 1;
    } catch (const NumericalError& ex) {
        std::cerr << "numerical error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
