#include "vortexdiv/cib.hpp"

#include <cmath>

#include "vortexdiv/errors.hpp"
#include "vortexdiv/specfun.hpp"

namespace vortexdiv::cib {

namespace {

// The LG series terminates exactly when p is an even nonnegative integer:
// the coefficient ratio carries a factor (n-1-p/2).
bool terminating(std::complex<double> p) {
  if (p.imag() != 0.0) return false;
  const double half = 0.5 * p.real();
  return half >= 0.0 && half == std::nearbyint(half);
}

void check_domain(const CiBParams& c) {
  const double xa = std::abs(c.xi);
  if (terminating(c.p)) return;
  if (xa < 1.0) return;
  if (xa == 1.0 && c.p.real() > -std::abs(double(c.ell0))) return;
  throw DomainError(
      "cib: series requires |xi| < 1, integer p, or |xi| = 1 with "
      "Re(p) > -|ell0|");
}

}  // namespace

ModeSpectrum cib_coefficients(const CiBParams& c, int n_max) {
  if (n_max < 1) throw DomainError("cib_coefficients: n_max must be >= 1");
  check_domain(c);
  const int a = std::abs(c.ell0);
  const double x = std::norm(c.xi);
  const double norm_full =
      specfun::hyp2f1(-0.5 * c.p, -0.5 * std::conj(c.p), double(1 + a), x)
          .real();

  ModeSpectrum::Coeffs coeffs;
  std::complex<double> cn = 1.0;
  double captured = 1.0;
  coeffs[ModeIndex{0, c.ell0}] = cn;
  for (int n = 1; n <= n_max; ++n) {
    cn *= c.xi * (double(n - 1) - 0.5 * c.p) /
          std::sqrt(double(n) * (a + n));
    if (cn == 0.0) break;
    coeffs[ModeIndex{n, c.ell0}] = cn;
    captured += std::norm(cn);
  }
  const double fraction = captured / norm_full;
  if (fraction < 0.999) {
    throw TruncationError("cib_coefficients: truncated norm fraction " +
                              std::to_string(fraction) + " below 0.999",
                          fraction);
  }
  return ModeSpectrum(std::move(coeffs));
}

double cib_m2_rms(const CiBParams& c) {
  check_domain(c);
  const int a = std::abs(c.ell0);
  const double x = std::norm(c.xi);
  const double norm =
      specfun::hyp2f1(-0.5 * c.p, -0.5 * std::conj(c.p), double(1 + a), x)
          .real();
  // p = 0 or xi = 0 collapses to the bare LG_{0,ell0} mode: the excited
  // fraction vanishes with its |p|^2 |xi|^2 prefactor, so skip the series
  // (whose own convergence can be slow on the unit circle).
  const double pref = std::norm(c.p) * x / (2.0 + 2.0 * a);
  const double excite =
      pref == 0.0 ? 0.0
                  : specfun::hyp2f1(1.0 - 0.5 * c.p, 1.0 - 0.5 * std::conj(c.p),
                                    double(2 + a), x)
                        .real();
  const double phi = pref * excite / norm;
  const std::complex<double> beta = c.xi * (phi - c.p);
  const double alpha = 1.0 + a + phi;
  double rad = alpha * alpha - std::norm(beta);
  if (rad < 0.0) {
    if (rad < -1e-12) throw InternalError("cib_m2_rms: negative radicand");
    rad = 0.0;
  }
  return std::sqrt(rad);
}

double cib_m2_unit_xi(std::complex<double> p, int ell0) {
  const double a = std::abs(double(ell0));
  const double denom = p.real() + a;
  if (denom <= 0.0) {
    throw DomainError("cib_m2_unit_xi: requires Re(p) > -|ell0|");
  }
  const double b = 1.0 + a;
  return std::sqrt(b * b + std::norm(p) / denom);
}

std::vector<SweepRow> cib_sweep(std::complex<double> p, int ell0,
                                const std::vector<double>& xi_magnitudes,
                                int n_max) {
  (void)n_max;  // the sweep is closed-form; kept for interface symmetry
  std::vector<SweepRow> rows;
  rows.reserve(xi_magnitudes.size());
  for (double xa : xi_magnitudes) {
    SweepRow row;
    row.xi_abs = xa;
    row.p = p;
    row.ell0 = ell0;
    try {
      row.m2_rms = cib_m2_rms(CiBParams{xa, p, ell0});
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace vortexdiv::cib
