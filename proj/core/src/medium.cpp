#include "slowlight/medium.hpp"

#include <cmath>
#include <stdexcept>

namespace slowlight {

void SpectralHole::validate() const {
    if (!(width_fwhm > 0.0))
        throw std::invalid_argument("spectral hole: width_fwhm must be positive");
    if (!(depth >= 0.0 && depth <= 1.0))
        throw std::invalid_argument("spectral hole: depth must lie in [0, 1]");
}

double hole_profile(double delta_rad_s, const SpectralHole& hole) {
    const double hw = 0.5 * hole.width_fwhm;   // half width at half depth
    const double u = delta_rad_s - hole.center;
    return hole.depth * hw * hw / (u * u + hw * hw);
}

void Medium::validate() const {
    hole.validate();
    if (!(alpha0 >= 0.0)) throw std::invalid_argument("medium: alpha0 must be non-negative");
    if (!(length >= 0.0)) throw std::invalid_argument("medium: length must be non-negative");
    if (!(t2 > 0.0)) throw std::invalid_argument("medium: t2 must be positive");
    if (!(t1 > 0.0)) throw std::invalid_argument("medium: t1 must be positive");
}

std::string Medium::validity_warning() const {
    // The linear-response picture needs the hole to be broad against the
    // homogeneous line yet narrow against the inhomogeneous background.
    std::string w;
    const double homog = 1.0 / t2;
    if (hole.width_fwhm < 10.0 * homog)
        w += "hole width is within 10x of the homogeneous width 1/T2; "
             "hole shape is lifetime-limited. ";
    if (gamma_inh > 0.0 && gamma_inh < 10.0 * hole.width_fwhm)
        w += "inhomogeneous width is within 10x of the hole width; "
             "the flat-background approximation degrades.";
    if (!w.empty() && w.back() == ' ') w.pop_back();
    return w;
}

double absorption_coefficient(double delta_rad_s, const Medium& medium) {
    return medium.alpha0 * (1.0 - hole_profile(delta_rad_s, medium.hole));
}

} // namespace slowlight
