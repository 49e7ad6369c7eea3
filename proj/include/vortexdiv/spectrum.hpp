#ifndef VORTEXDIV_SPECTRUM_HPP
#define VORTEXDIV_SPECTRUM_HPP

#include <compare>
#include <complex>
#include <map>

namespace vortexdiv {

// One Laguerre-Gauss mode: radial number n >= 0, topological charge ell.
struct ModeIndex {
  int n = 0;
  int ell = 0;
  auto operator<=>(const ModeIndex&) const = default;
};

// Sparse normalized LG expansion psi_{n,ell}; absent modes are zero.
// Immutable after construction; sum of |psi|^2 is 1 to machine accuracy.
class ModeSpectrum {
 public:
  using Coeffs = std::map<ModeIndex, std::complex<double>>;

  // Normalizes the raw coefficients.  Throws DegenerateInput when the raw
  // norm is at or below 1e-12, DomainError on a negative n.
  explicit ModeSpectrum(Coeffs raw);

  // Convenience single-mode constructor, LG_{n,ell}.
  static ModeSpectrum single(int n, int ell);

  const Coeffs& coeffs() const { return coeffs_; }

  std::complex<double> at(int n, int ell) const;

 private:
  Coeffs coeffs_;
};

// Physical frame of a beam: waist w0 and wavenumber k fix the Rayleigh
// range; the remaining fields are the rms propagation parabola of one
// particular spectrum.
struct BeamGeometry {
  double w0 = 0.0;         // waist parameter, m
  double k = 0.0;          // wavenumber, rad/m
  double z0 = 0.0;         // Rayleigh range k*w0^2/2, m
  double sigma_m = 0.0;    // waist rms radius, m
  double theta_rms = 0.0;  // far-field rms divergence, rad
  double z_m = 0.0;        // parabola vertex position, m

  double w(double z) const;     // beam size w0*sqrt(1+(z/z0)^2)
  double gouy(double z) const;  // atan2(z, z0)
};

namespace spectrum {

struct AlphaBetaPhi {
  double alpha = 0.0;
  std::complex<double> beta;
  double phi = 0.0;
  double mean_abs_oam = 0.0;
};

// <|ell|> = sum |ell| |psi|^2.
double mean_abs_oam(const ModeSpectrum& s);

// phi = sum 2n|psi|^2, alpha = 1 + <|ell|> + phi,
// beta = sum 2 sqrt(n(|ell|+n)) psi_{n,ell} conj(psi_{n-1,ell}).
AlphaBetaPhi alpha_beta_phi(const ModeSpectrum& s);

// M^2_rms = sqrt(alpha^2 - |beta|^2).  Radicands in [-1e-12, 0) are
// floating-point noise on the saturation manifold and clamp to zero;
// anything below that window raises InternalError.
double m2_rms(const ModeSpectrum& s);

// Fits the rms parabola sigma^2(z) = sigma_m^2 + theta_rms^2 (z-z_m)^2
// in physical units.  k * theta_rms * sigma_m equals m2_rms(s).
BeamGeometry rms_geometry(const ModeSpectrum& s, double w0, double k);

// Parabola evaluation, m^2.
double sigma_r_squared(const BeamGeometry& g, double z);

// Mode-wise M^2 of an incoherent mixture: sum (2n+|ell|+1) w_{n,ell}.
// Weights must be nonnegative and sum to 1 within 1e-9.
double incoherent_m2(const std::map<ModeIndex, double>& weights);

struct UncertaintyProducts {
  double sigma_k_sigma_r = 0.0;  // dimensionless, equals M^2_rms
  double focal_product = 0.0;    // sigma at focus * input sigma, m^2
  double quantum_product = 0.0;  // position-momentum product, J*s
};

// Eq.-level rescalings of M^2_rms: the wave-vector product k*theta*sigma,
// the focal-spot product (f*lambda/2pi)*M^2 for a lens of focal length f,
// and hbar*M^2 for the free-particle reading.
UncertaintyProducts uncertainty_products(const ModeSpectrum& s,
                                         const BeamGeometry& g, double f,
                                         double hbar);

}  // namespace spectrum
}  // namespace vortexdiv

#endif  // VORTEXDIV_SPECTRUM_HPP
