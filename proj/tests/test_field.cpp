#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "vortexdiv/ee.hpp"
#include "vortexdiv/field.hpp"
#include "vortexdiv/spectrum.hpp"

using namespace vortexdiv;
using cplx = std::complex<double>;

namespace {

BeamGeometry geom(const ModeSpectrum& s, double w0, double k) {
  return spectrum::rms_geometry(s, w0, k);
}

}  // namespace

TEST_SUITE("field") {

TEST_CASE("on-axis amplitude") {
  const ModeSpectrum gauss = ModeSpectrum::single(0, 0);
  const BeamGeometry g = geom(gauss, 1.0, 2.0);
  const cplx a0 = field::lg_amplitude(0, 0, 0.0, 0.3, 0.0, g);
  CHECK(std::abs(a0 - cplx(std::sqrt(2.0 / 3.141592653589793), 0.0)) < 1e-14);
  // Vortex modes vanish on axis.
  for (int ell : {1, -2, 5}) {
    CHECK(std::abs(field::lg_amplitude(0, ell, 0.0, 1.1, 0.4, g)) == 0.0);
    CHECK(std::abs(field::lg_amplitude(2, ell, 0.0, 0.0, -0.7, g)) == 0.0);
  }
  // Gaussian radial profile at the waist.
  const double r = 0.83;
  const cplx ar = field::lg_amplitude(0, 0, r, 0.0, 0.0, g);
  CHECK(std::abs(ar - a0 * std::exp(-r * r)) < 1e-14);
}

TEST_CASE("unit power in every plane") {
  const ModeSpectrum lg23 = ModeSpectrum::single(2, 3);
  const BeamGeometry g = geom(lg23, 1.0, 2.0);
  CHECK(std::abs(field::quad_total_power(lg23, 0.0, g) - 1.0) < 1e-8);
  CHECK(std::abs(field::quad_total_power(lg23, 0.7 * g.z0, g) - 1.0) < 1e-8);

  std::mt19937_64 rng(0xf1e1dull);
  for (int trial = 0; trial < 4; ++trial) {
    const ModeSpectrum s = testsup::random_spectrum(rng, 3, 4, 4);
    const BeamGeometry gs = geom(s, 1.0, 2.0);
    CHECK(std::abs(field::quad_total_power(s, 0.0, gs) - 1.0) < 1e-8);
    CHECK(std::abs(field::quad_total_power(s, 2.0 * gs.z0, gs) - 1.0) < 1e-8);
  }
}

TEST_CASE("conjugate helix pair produces a cos^2 fringe") {
  const double r = std::sqrt(0.5);
  const ModeSpectrum pair(
      {{ModeIndex{0, 1}, cplx(r, 0.0)}, {ModeIndex{0, -1}, cplx(r, 0.0)}});
  const BeamGeometry g = geom(pair, 1.0, 2.0);
  // Intensity ~ cos^2(phi): dark at phi = pi/2, bright at phi = 0.
  const double bright = field::superposition_intensity(pair, 0.9, 0.0, 0.0, g);
  const double dark =
      field::superposition_intensity(pair, 0.9, 1.5707963267948966, 0.0, g);
  CHECK(dark < 1e-14 * bright);
  const double mid =
      field::superposition_intensity(pair, 0.9, 0.7853981633974483, 0.0, g);
  CHECK(mid == doctest::Approx(0.5 * bright).epsilon(1e-10));
}

TEST_CASE("quadrature second moment matches the closed parabola") {
  const double w0 = 1.0, k = 2.0;
  const ModeSpectrum gauss = ModeSpectrum::single(0, 0);
  const BeamGeometry gg = geom(gauss, w0, k);
  // The quadrature route promises abs error below 5e-7 * w^2.
  CHECK(std::abs(field::quad_sigma_r_squared(gauss, 0.0, gg) - w0 * w0 / 2.0) <
        5e-7);
  const ModeSpectrum lg01 = ModeSpectrum::single(0, 1);
  const BeamGeometry g1 = geom(lg01, w0, k);
  CHECK(std::abs(field::quad_sigma_r_squared(lg01, 0.0, g1) - w0 * w0) < 5e-7);

  std::mt19937_64 rng(0xcafeull);
  for (int trial = 0; trial < 3; ++trial) {
    const ModeSpectrum s = testsup::random_spectrum(rng, 3, 3, 3);
    const BeamGeometry gs = geom(s, w0, k);
    for (double z : {0.0, 0.6 * gs.z0, 2.5 * gs.z0}) {
      const double quad = field::quad_sigma_r_squared(s, z, gs);
      const double closed = spectrum::sigma_r_squared(gs, z);
      CHECK(std::abs(quad - closed) < 1e-4 * closed);
    }
  }
}

TEST_CASE("encircled radius anchors") {
  const double w0 = 1.0, k = 2.0;
  const ModeSpectrum gauss = ModeSpectrum::single(0, 0);
  const BeamGeometry gg = geom(gauss, w0, k);
  // E(r) = 1 - exp(-2 r^2 / w^2): w0 holds 1 - 1/e^2 of the power.
  const double e_w0 = 1.0 - std::exp(-2.0);
  CHECK(std::abs(field::quad_encircled_radius(gauss, 0.0, e_w0, gg) - w0) < 1e-6);
  CHECK(std::abs(field::quad_encircled_radius(gauss, 0.0, 0.5, gg) -
                 w0 * 0.58870501125773735) < 1e-6);

  // LG_{0,1}: solves t from the cumulative 1-(1+t)e^-t, r = w sqrt(t/2).
  const ModeSpectrum lg01 = ModeSpectrum::single(0, 1);
  const BeamGeometry g1 = geom(lg01, w0, k);
  const double e0 = 1.0 - std::exp(-1.0);
  const double expected = w0 * std::sqrt(2.1461932206205826 / 2.0);
  CHECK(std::abs(field::quad_encircled_radius(lg01, 0.0, e0, g1) - expected) <
        1e-6);

  // Monotone in the energy fraction, and scales with w(z) downstream.
  double prev = 0.0;
  for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double r = field::quad_encircled_radius(lg01, 0.0, frac, g1);
    CHECK(r > prev);
    prev = r;
  }
  const double z = 1.7 * g1.z0;
  const double scale = g1.w(z) / g1.w0;
  CHECK(std::abs(field::quad_encircled_radius(lg01, z, e0, g1) -
                 expected * scale) < 1e-6 * scale);
}

TEST_CASE("encircled radius cross-checks the spectral solver") {
  // Same fraction through two routes: axial field quadrature vs the
  // orthonormal-basis cumulative in the scaled variable.
  std::mt19937_64 rng(0x2024ull);
  const double w0 = 1.0, k = 2.0;
  for (int trial = 0; trial < 2; ++trial) {
    const ModeSpectrum s = testsup::random_spectrum(rng, 3, 3, 3);
    const BeamGeometry g = geom(s, w0, k);
    for (double z : {0.0, 1.3 * g.z0}) {
      for (double e0 : {0.5, 0.86}) {
        const double r_quad = field::quad_encircled_radius(s, z, e0, g);
        const double t = ee::solve_T(s, z / g.z0, e0);
        const double r_closed = g.w(z) * std::sqrt(t / 2.0);
        CHECK(std::abs(r_quad - r_closed) < 1e-5 * r_closed);
      }
    }
  }
}

}  // TEST_SUITE
