#pragma once

#include <vector>

#include "slowlight/units.hpp"

namespace slowlight {

enum class BlochMode {
    weak,  // linearized: inversion pinned at -1 (ground state), exact
           // integrating-factor update, unconditionally stable
    full   // coherence + inversion, RK4, step-size restricted
};

// Time series of one frequency class driven by a sampled Rabi envelope.
// sigma is the optical coherence in the frame rotating at the carrier;
// inversion is w = p11 - p22 (full mode only, empty otherwise). The
// excited-state population is (1 - w)/2.
struct BlochTrace {
    std::vector<cplx> sigma;
    std::vector<double> inversion;
};

// Integrate d(sigma)/dt = (i/2)*Omega*w - (i*delta + 1/T2)*sigma, and in
// full mode dw/dt = 2*Im(Omega*conj(sigma)) + (1 - w)/T1, from the ground
// state, with Omega piecewise linear between samples. Full mode throws
// NumericalError when dt exceeds min(1/(10|delta|), T2/10), reporting the
// largest admissible step.
BlochTrace integrate_bloch_class(const std::vector<cplx>& omega_rad_s,
                                 double dt,
                                 double detuning_rad_s,
                                 double t1_s,
                                 double t2_s,
                                 BlochMode mode);

// Steady excited-state population of a far-detuned driven class,
// Omega^2 / (4*delta^2). Throws std::domain_error at delta = 0.
double adiabatic_population(double omega_rad_s, double detuning_rad_s);

// Dressed-state decomposition of the adiabatic ground state:
//   c_pm = sqrt(W +- delta) / (sqrt(2) * W^(1/2)),  W = sqrt(Omega^2+delta^2).
// Normalized, c_plus^2 + c_minus^2 = 1. Throws std::domain_error at (0, 0).
struct AdiabaticCoefficients {
    double c_plus = 0.0;
    double c_minus = 0.0;
};
AdiabaticCoefficients adiabatic_state_coefficients(double omega_rad_s,
                                                   double detuning_rad_s);

} // namespace slowlight
