#pragma once

#include <cmath>
#include <complex>

#include "slowlight/units.hpp"

namespace slowlight::detail {

// Integrating-factor step for d(sigma)/dt = (i/2)*Omega - lambda*sigma with
// lambda = i*delta + 1/t2 and Omega linear across the step:
//   sigma_k = e*sigma_{k-1} + (i/2)*(ia*Omega_{k-1} + ib*Omega_k).
// Exact for piecewise-linear drive, stable for any dt*delta product.
struct IfCoeffs {
    cplx e;
    cplx ia;
    cplx ib;
};

inline IfCoeffs if_coeffs(double dt, double detuning_rad_s, double t2_s) {
    const cplx lambda(1.0 / t2_s, detuning_rad_s);
    const cplx x = lambda * dt;
    IfCoeffs c;
    c.e = std::exp(-x);
    if (std::abs(x) <= 1e-3) {
        // Series of int_0^1 e^{-x v} v dv and int_0^1 e^{-x v}(1-v) dv;
        // the closed forms lose digits to cancellation here.
        c.ia = dt * (0.5 + x * (-1.0 / 3.0 + x * (0.125 - x / 30.0)));
        c.ib = dt * (0.5 + x * (-1.0 / 6.0 + x * (1.0 / 24.0 - x / 120.0)));
    } else {
        c.ia = dt * (1.0 - (1.0 + x) * c.e) / (x * x);
        c.ib = dt * (1.0 - c.e) / x - c.ia;
    }
    return c;
}

// Right-hand side of the coherence + inversion system.
struct BlochDeriv {
    cplx dsigma;
    double dw;
};

inline BlochDeriv bloch_rhs(const cplx& sigma, double w, const cplx& omega,
                            double detuning_rad_s, double t1_s, double t2_s) {
    BlochDeriv d;
    d.dsigma = cplx(0.0, 0.5) * omega * w - cplx(1.0 / t2_s, detuning_rad_s) * sigma;
    d.dw = 2.0 * std::imag(omega * std::conj(sigma)) + (1.0 - w) / t1_s;
    return d;
}

// One RK4 step with the drive linear across [omega0, omega1].
inline void bloch_rk4_step(cplx& sigma, double& w, const cplx& omega0, const cplx& omega1,
                           double dt, double detuning_rad_s, double t1_s, double t2_s) {
    const cplx omh = 0.5 * (omega0 + omega1);
    const BlochDeriv k1 = bloch_rhs(sigma, w, omega0, detuning_rad_s, t1_s, t2_s);
    const BlochDeriv k2 = bloch_rhs(sigma + 0.5 * dt * k1.dsigma, w + 0.5 * dt * k1.dw, omh,
                                    detuning_rad_s, t1_s, t2_s);
    const BlochDeriv k3 = bloch_rhs(sigma + 0.5 * dt * k2.dsigma, w + 0.5 * dt * k2.dw, omh,
                                    detuning_rad_s, t1_s, t2_s);
    const BlochDeriv k4 = bloch_rhs(sigma + dt * k3.dsigma, w + dt * k3.dw, omega1,
                                    detuning_rad_s, t1_s, t2_s);
    sigma += (dt / 6.0) * (k1.dsigma + 2.0 * k2.dsigma + 2.0 * k3.dsigma + k4.dsigma);
    w += (dt / 6.0) * (k1.dw + 2.0 * k2.dw + 2.0 * k3.dw + k4.dw);
}

// Step bound for the explicit full-mode scheme.
inline double full_mode_step_bound(double detuning_rad_s, double t2_s) {
    const double precession = 10.0 * std::abs(detuning_rad_s);
    double bound = t2_s / 10.0;
    if (precession > 0.0) bound = std::min(bound, 1.0 / precession);
    return bound;
}

} // namespace slowlight::detail
