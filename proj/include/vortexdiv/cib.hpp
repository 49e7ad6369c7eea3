#ifndef VORTEXDIV_CIB_HPP
#define VORTEXDIV_CIB_HPP

#include <complex>
#include <string>
#include <vector>

#include "vortexdiv/spectrum.hpp"

namespace vortexdiv::cib {

// Circular Beam family: shape parameter xi, radial index p, charge ell0.
// q0 fixes the physical scale but drops out of every quantity computed
// here, so it is carried untouched.
struct CiBParams {
  std::complex<double> xi;
  std::complex<double> p;
  int ell0 = 0;
  std::complex<double> q0{0.0, 1.0};
};

// LG expansion of the CiB, truncated at n_max and renormalized.  The
// unnormalized coefficients follow the ratio recurrence
// c_n / c_{n-1} = xi (n-1-p/2) / sqrt(n(|ell0|+n)), c_0 = 1, and the
// infinite-sum norm equals the hypergeometric normalization N.
// Throws TruncationError when the captured fraction of the norm falls
// below 0.999.
ModeSpectrum cib_coefficients(const CiBParams& c, int n_max = 200);

// Closed-form M^2_rms from the hypergeometric expressions for the norm N
// and the radial excitation Phi, with beta = xi (Phi - p).
double cib_m2_rms(const CiBParams& c);

// Closed form on the |xi| = 1 circle:
// sqrt((1+|ell0|)^2 + |p|^2/(Re p + |ell0|)), defined for Re p > -|ell0|.
double cib_m2_unit_xi(std::complex<double> p, int ell0);

struct SweepRow {
  double xi_abs = 0.0;
  std::complex<double> p;
  int ell0 = 0;
  double m2_rms = 0.0;
  bool ok = false;
  std::string error;  // failure reason when not ok
};

// Evaluates cib_m2_rms over a |xi| grid; rows that fall outside the
// convergence domain are recorded and the sweep continues.
std::vector<SweepRow> cib_sweep(std::complex<double> p, int ell0,
                                const std::vector<double>& xi_magnitudes,
                                int n_max = 200);

}  // namespace vortexdiv::cib

#endif  // VORTEXDIV_CIB_HPP
