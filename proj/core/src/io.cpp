#include "slowlight/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace slowlight {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

} // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_spectrum_csv(const std::string& path, const AbsorptionSpectrum& spectrum) {
    std::ofstream out = open_out(path);
    out << "frequency_Hz,alpha_per_m\n";
    for (std::size_t i = 0; i < spectrum.frequency.size(); ++i)
        out << format_double(rad_to_hz(spectrum.frequency[i])) << ','
            << format_double(spectrum.alpha[i]) << '\n';
}

void write_pulse_csv(const std::string& path, const Pulse& pulse) {
    std::ofstream out = open_out(path);
    out << "time_s,re_omega,im_omega\n";
    for (std::size_t i = 0; i < pulse.size(); ++i)
        out << format_double(pulse.time_at(i)) << ','
            << format_double(pulse.envelope[i].real()) << ','
            << format_double(pulse.envelope[i].imag()) << '\n';
}

void write_snapshot_csv(const std::string& path, const Snapshot& snapshot) {
    std::ofstream out = open_out(path);
    out << "z_m,re_omega,im_omega\n";
    for (std::size_t i = 0; i < snapshot.z.size(); ++i)
        out << format_double(snapshot.z[i]) << ','
            << format_double(snapshot.omega[i].real()) << ','
            << format_double(snapshot.omega[i].imag()) << '\n';
}

void write_delay_table_csv(const std::string& path, const DelayScanResult& scan) {
    std::ofstream out = open_out(path);
    out << "alphaL_over_gamma_s,delay_s,broadening,transmission\n";
    for (const DelayScanRow& row : scan.rows)
        out << format_double(row.alphal_over_gamma_s) << ','
            << format_double(row.delay_s) << ','
            << format_double(row.broadening) << ','
            << format_double(row.transmission) << '\n';
}

} // namespace slowlight
