#include "slowlight/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bloch_kernel.hpp"
#include "slowlight/errors.hpp"

namespace slowlight {

BlochTrace integrate_bloch_class(const std::vector<cplx>& omega_rad_s, double dt,
                                 double detuning_rad_s, double t1_s, double t2_s,
                                 BlochMode mode) {
    if (omega_rad_s.empty()) throw std::invalid_argument("bloch: empty drive");
    if (!(dt > 0.0)) throw std::invalid_argument("bloch: dt must be positive");
    if (!(t1_s > 0.0) || !(t2_s > 0.0))
        throw std::invalid_argument("bloch: relaxation times must be positive");

    const std::size_t n = omega_rad_s.size();
    BlochTrace trace;
    trace.sigma.assign(n, cplx(0.0, 0.0));

    if (mode == BlochMode::weak) {
        const detail::IfCoeffs c = detail::if_coeffs(dt, detuning_rad_s, t2_s);
        const cplx ia = cplx(0.0, 0.5) * c.ia;
        const cplx ib = cplx(0.0, 0.5) * c.ib;
        for (std::size_t k = 1; k < n; ++k)
            trace.sigma[k] =
                c.e * trace.sigma[k - 1] + ia * omega_rad_s[k - 1] + ib * omega_rad_s[k];
        return trace;
    }

    const double bound = detail::full_mode_step_bound(detuning_rad_s, t2_s);
    if (dt > bound)
        throw NumericalError("bloch", "integrate_bloch_class",
                             "time step " + std::to_string(dt) +
                                 " s cannot resolve the class precession; reduce dt to at "
                                 "most " + std::to_string(bound) + " s");

    trace.inversion.assign(n, 1.0);
    cplx sigma(0.0, 0.0);
    double w = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
        detail::bloch_rk4_step(sigma, w, omega_rad_s[k - 1], omega_rad_s[k], dt,
                               detuning_rad_s, t1_s, t2_s);
        trace.sigma[k] = sigma;
        trace.inversion[k] = w;
    }
    return trace;
}

double adiabatic_population(double omega_rad_s, double detuning_rad_s) {
    if (detuning_rad_s == 0.0)
        throw std::domain_error("adiabatic_population: undefined on resonance");
    const double r = omega_rad_s / (2.0 * detuning_rad_s);
    return r * r;
}

AdiabaticCoefficients adiabatic_state_coefficients(double omega_rad_s,
                                                   double detuning_rad_s) {
    const double w = std::hypot(omega_rad_s, detuning_rad_s);
    if (w == 0.0)
        throw std::domain_error("adiabatic_state_coefficients: undefined at zero drive "
                                "and zero detuning");
    AdiabaticCoefficients c;
    c.c_plus = std::sqrt(0.5 * (w + detuning_rad_s) / w);
    c.c_minus = std::sqrt(0.5 * (w - detuning_rad_s) / w);
    return c;
}

} // namespace slowlight
