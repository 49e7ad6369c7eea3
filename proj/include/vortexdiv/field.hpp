#ifndef VORTEXDIV_FIELD_HPP
#define VORTEXDIV_FIELD_HPP

#include <complex>

#include "vortexdiv/spectrum.hpp"

namespace vortexdiv::field {

// Normalized LG mode amplitude at cylindrical point (r, phi, z).  Units
// 1/m so that the intensity integrates to unit power in every plane.
std::complex<double> lg_amplitude(int n, int ell, double r, double phi,
                                  double z, const BeamGeometry& g);

// |sum psi_{n,ell} LG_{n,ell}|^2 at one point.
double superposition_intensity(const ModeSpectrum& s, double r, double phi,
                               double z, const BeamGeometry& g);

// Second moment of the intensity, int r^3 I dr dphi, by direct
// quadrature.  Oracle for the closed-form rms parabola.
double quad_sigma_r_squared(const ModeSpectrum& s, double z,
                            const BeamGeometry& g);

// Radius enclosing fraction e0 of the total power at plane z, by
// bracketing on the monotone cumulative power.
double quad_encircled_radius(const ModeSpectrum& s, double z, double e0,
                             const BeamGeometry& g);

// Total power int I r dr dphi at plane z; equals 1 for any spectrum.
double quad_total_power(const ModeSpectrum& s, double z,
                        const BeamGeometry& g);

}  // namespace vortexdiv::field

#endif  // VORTEXDIV_FIELD_HPP
