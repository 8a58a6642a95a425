#pragma once

#include <complex>
#include <numbers>
#include <vector>

namespace slowlight {

using cplx = std::complex<double>;

inline constexpr double c_light = 299792458.0;     // m/s
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double pi = std::numbers::pi;

// All frequencies cross the API boundary as ordinary frequencies (Hz) and are
// converted to angular units exactly once, here.
inline constexpr double hz_to_rad(double f_hz) { return two_pi * f_hz; }
inline constexpr double rad_to_hz(double w_rad) { return w_rad / two_pi; }

inline constexpr cplx iunit{0.0, 1.0};

} // namespace slowlight
