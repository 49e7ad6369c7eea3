#ifndef VORTEXDIV_EE_HPP
#define VORTEXDIV_EE_HPP

#include <complex>
#include <memory>
#include <vector>

#include "vortexdiv/spectrum.hpp"

namespace vortexdiv::ee {

// Outcome of the encircled-energy divergence evaluation:
// m2_ee^2 = t_infinity * (1 + z_star^2) * t_at_zstar.
struct EEResult {
  double e0 = 0.0;
  double t_infinity = 0.0;
  double z_star = 0.0;
  double t_at_zstar = 0.0;
  double m2_ee = 0.0;
};

// Radial profile component U_ell(t, Z) in the natural variable
// t = 2r^2/w^2(z), Z = z/z0.  The per-mode weight (1+iZ)^n/(1-iZ)^n is
// unimodular, so the sum never grows with Z.
std::complex<double> u_ell(const ModeSpectrum& s, int ell, double t, double Z);

// Fraction of total power inside t' <= T at normalized distance Z:
// sum_ell int_0^T |U_ell|^2 dt, by adaptive Simpson at abs-tol 1e-10.
double cumulative_energy(const ModeSpectrum& s, double T, double Z);

// Solves cumulative energy = e0 for T at fixed Z, |residual| < 1e-9.
double solve_T(const ModeSpectrum& s, double Z, double e0);

// Far-field limit T_inf, computed from the exact Z->inf weights (-1)^n
// rather than by large-Z extrapolation.
double t_infinity(const ModeSpectrum& s, double e0);

// M^2_EE = sqrt(T_inf * min_Z (1+Z^2) T(Z)).  The minimization runs a
// dense scan over Z (half-width 10, doubled up to 80 whenever the
// boundary wins) followed by golden-section refinement to |dZ| < 1e-6.
EEResult m2_ee(const ModeSpectrum& s, double e0);

// Single-mode specialization: M^2_EE(LG_{n,ell}) = T_{n,ell}, the root of
// the mode's own encircled-energy relation; n = 0 reduces to the inverse
// regularized incomplete gamma.
double m2_ee_lg(int n, int ell, double e0);

// Large-|ell| asymptote of m2_ee_lg(0, ell): |ell| + erfinv(2 e0 - 1) *
// sqrt(2|ell|).
double asymptotic_lg0(int ell, double e0);

// Scan trace row for diagnostics: objective = (1+Z^2) T(Z).
struct ScanPoint {
  double Z = 0.0;
  double T = 0.0;
  double objective = 0.0;
};

// Same minimization as m2_ee but also returns the coarse-scan trace.
EEResult m2_ee_traced(const ModeSpectrum& s, double e0,
                      std::vector<ScanPoint>* trace);

// Precomputed orthonormal-basis panel decomposition of the encircled
// energy.  Panel overlap matrices are Z-independent, so one instance
// serves every (T, Z) query for a fixed spectrum; queries are fast enough
// to sit inside an optimization loop.  Instances are not thread-safe;
// create one per thread.
class EnergySolver {
 public:
  explicit EnergySolver(const ModeSpectrum& s);
  ~EnergySolver();
  EnergySolver(EnergySolver&&) noexcept;
  EnergySolver& operator=(EnergySolver&&) noexcept;

  // Same quantity as ee::cumulative_energy.
  double cumulative(double T, double Z) const;
  // Same contract as ee::solve_T. Z = infinity selects the (-1)^n limit
  // weights; pass via solve_far_field.
  double solve(double Z, double e0) const;
  double solve_far_field(double e0) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace vortexdiv::ee

#endif  // VORTEXDIV_EE_HPP
