#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "vortexdiv/errors.hpp"
#include "vortexdiv/spectrum.hpp"

using namespace vortexdiv;
using cplx = std::complex<double>;

namespace {

ModeSpectrum equal_pair(ModeIndex a, ModeIndex b) {
  const double r = std::sqrt(0.5);
  return ModeSpectrum({{a, cplx(r, 0.0)}, {b, cplx(r, 0.0)}});
}

}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("construction normalizes and validates") {
  const ModeSpectrum s({{ModeIndex{0, 0}, cplx(3.0, 4.0)}});
  CHECK(std::abs(s.at(0, 0) - cplx(0.6, 0.8)) < 1e-15);
  CHECK(s.at(5, -2) == cplx(0.0, 0.0));

  CHECK_THROWS_AS(ModeSpectrum({{ModeIndex{0, 0}, cplx(0.0, 0.0)}}),
                  DegenerateInput);
  CHECK_THROWS_AS(ModeSpectrum({{ModeIndex{0, 0}, cplx(1e-13, 0.0)}}),
                  DegenerateInput);
  CHECK_THROWS_AS(ModeSpectrum({{ModeIndex{-1, 0}, cplx(1.0, 0.0)}}), DomainError);
  CHECK_THROWS_AS(
      ModeSpectrum({{ModeIndex{0, 0},
                     cplx(std::numeric_limits<double>::quiet_NaN(), 0.0)}}),
      DomainError);
}

TEST_CASE("mean absolute charge") {
  CHECK(spectrum::mean_abs_oam(ModeSpectrum::single(0, 0)) == 0.0);
  CHECK(spectrum::mean_abs_oam(ModeSpectrum::single(2, -7)) == 7.0);
  const ModeSpectrum s = equal_pair({0, 1}, {0, -3});
  CHECK(spectrum::mean_abs_oam(s) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("quadratic invariants of single modes") {
  for (int n = 0; n <= 10; ++n) {
    for (int ell = -10; ell <= 10; ++ell) {
      const auto q = spectrum::alpha_beta_phi(ModeSpectrum::single(n, ell));
      CHECK(q.phi == doctest::Approx(2.0 * n).epsilon(1e-14));
      CHECK(q.alpha ==
            doctest::Approx(1.0 + std::abs(ell) + 2.0 * n).epsilon(1e-14));
      CHECK(std::abs(q.beta) == 0.0);
      CHECK(std::abs(spectrum::m2_rms(ModeSpectrum::single(n, ell)) -
                     (2.0 * n + std::abs(ell) + 1.0)) < 1e-12);
    }
  }
}

TEST_CASE("equal radial pair on one helix") {
  // psi_{0,1} = psi_{1,1} = sqrt(1/2): alpha 3, beta sqrt(2), phi 1.
  const ModeSpectrum s = equal_pair({0, 1}, {1, 1});
  const auto q = spectrum::alpha_beta_phi(s);
  CHECK(q.phi == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(q.alpha == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(q.beta.real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(q.beta.imag() == doctest::Approx(0.0));
  CHECK(spectrum::m2_rms(s) ==
        doctest::Approx(2.6457513110645906).epsilon(1e-14));  // sqrt(7)
}

TEST_CASE("rms propagation parabola in physical units") {
  const ModeSpectrum s = equal_pair({0, 1}, {1, 1});
  const BeamGeometry g = spectrum::rms_geometry(s, 1.0, 1.0);
  CHECK(g.z0 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g.sigma_m == doctest::Approx(0.89044551703821412).epsilon(1e-14));
  CHECK(g.theta_rms == doctest::Approx(2.9712669225006006).epsilon(1e-14));
  CHECK(g.z_m == 0.0);  // real coefficients leave the waist at z = 0
  // k * theta * sigma recovers the quality factor.
  CHECK(g.k * g.theta_rms * g.sigma_m ==
        doctest::Approx(std::sqrt(7.0)).epsilon(1e-13));

  // Gaussian sanity in SI-ish units.
  const double w0 = 1e-3, lambda = 1064e-9;
  const double k = 2.0 * 3.141592653589793 / lambda;
  const BeamGeometry gg =
      spectrum::rms_geometry(ModeSpectrum::single(0, 0), w0, k);
  CHECK(gg.sigma_m == doctest::Approx(w0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(gg.k * gg.theta_rms * gg.sigma_m == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(spectrum::sigma_r_squared(gg, 0.0) ==
        doctest::Approx(w0 * w0 / 2.0).epsilon(1e-13));
  // One Rayleigh range out, the rms area doubles.
  CHECK(spectrum::sigma_r_squared(gg, gg.z0) ==
        doctest::Approx(w0 * w0).epsilon(1e-12));
  CHECK(spectrum::sigma_r_squared(gg, -gg.z0) ==
        doctest::Approx(w0 * w0).epsilon(1e-12));

  CHECK_THROWS_AS(spectrum::rms_geometry(s, -1.0, 1.0), DomainError);
}

TEST_CASE("waist offset follows the phase of beta") {
  // Complex relative phase shifts the parabola vertex off z = 0.
  const double r = std::sqrt(0.5);
  const ModeSpectrum s(
      {{ModeIndex{0, 1}, cplx(r, 0.0)}, {ModeIndex{1, 1}, cplx(0.0, r)}});
  const auto q = spectrum::alpha_beta_phi(s);
  CHECK(std::abs(q.beta - cplx(0.0, std::sqrt(2.0))) < 1e-14);
  const BeamGeometry g = spectrum::rms_geometry(s, 1.0, 1.0);
  CHECK(g.z_m == doctest::Approx(-std::sqrt(2.0) /
                                 (g.k * g.theta_rms * g.theta_rms))
                     .epsilon(1e-13));
  // The parabola minimum sits at z_m.
  const double at_vertex = spectrum::sigma_r_squared(g, g.z_m);
  CHECK(at_vertex < spectrum::sigma_r_squared(g, g.z_m + 0.1));
  CHECK(at_vertex < spectrum::sigma_r_squared(g, g.z_m - 0.1));
  CHECK(at_vertex == doctest::Approx(g.sigma_m * g.sigma_m).epsilon(1e-14));
}

TEST_CASE("divergence bound on random spectra") {
  std::mt19937_64 rng(0xb0b0ull);
  for (int trial = 0; trial < 2000; ++trial) {
    const int modes = 1 + static_cast<int>(rng() % 8);
    const ModeSpectrum s = testsup::random_spectrum(rng, modes, 10, 10);
    const double m2 = spectrum::m2_rms(s);
    const double floor = 1.0 + spectrum::mean_abs_oam(s);
    CHECK(m2 >= floor - 1e-9);
  }
}

TEST_CASE("bound saturates exactly on the lowest radial shell") {
  std::mt19937_64 rng(0x5a7ull);
  for (int trial = 0; trial < 500; ++trial) {
    const int modes = 1 + static_cast<int>(rng() % 6);
    const ModeSpectrum s = testsup::random_spectrum(rng, modes, 0, 9);
    const double m2 = spectrum::m2_rms(s);
    CHECK(std::abs(m2 - (1.0 + spectrum::mean_abs_oam(s))) <= 1e-10);
  }
}

TEST_CASE("global phase invariance") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const ModeSpectrum s = testsup::random_spectrum(rng, 5, 6, 6);
    const double chi = 6.283185307179586 * testsup::uniform01(rng);
    ModeSpectrum::Coeffs rotated;
    for (const auto& [idx, c] : s.coeffs())
      rotated[idx] = c * std::polar(1.0, chi);
    const ModeSpectrum r(std::move(rotated));
    CHECK(std::abs(spectrum::m2_rms(s) - spectrum::m2_rms(r)) < 1e-12);
    const auto qa = spectrum::alpha_beta_phi(s);
    const auto qb = spectrum::alpha_beta_phi(r);
    CHECK(std::abs(qa.alpha - qb.alpha) < 1e-12);
    CHECK(std::abs(qa.beta - qb.beta) < 1e-12);
  }
}

TEST_CASE("parabola consistency against the quality factor") {
  std::mt19937_64 rng(0xfeedull);
  for (int trial = 0; trial < 100; ++trial) {
    const ModeSpectrum s = testsup::random_spectrum(rng, 4, 8, 8);
    const double w0 = 0.2 + 3.0 * testsup::uniform01(rng);
    const double k = 0.5 + 10.0 * testsup::uniform01(rng);
    const BeamGeometry g = spectrum::rms_geometry(s, w0, k);
    CHECK(std::abs(g.k * g.theta_rms * g.sigma_m - spectrum::m2_rms(s)) <
          1e-10 * spectrum::m2_rms(s));
  }
}

TEST_CASE("incoherent mixtures") {
  CHECK(spectrum::incoherent_m2({{ModeIndex{0, 0}, 1.0}}) == 1.0);
  CHECK(spectrum::incoherent_m2(
            {{ModeIndex{0, 2}, 0.5}, {ModeIndex{1, 2}, 0.5}}) ==
        doctest::Approx(4.0).epsilon(1e-14));
  // Lowest radial shell: mixture quality reduces to 1 + <|ell|>.
  CHECK(spectrum::incoherent_m2(
            {{ModeIndex{0, 1}, 0.25}, {ModeIndex{0, -3}, 0.75}}) ==
        doctest::Approx(1.0 + 0.25 + 2.25).epsilon(1e-14));
  CHECK_THROWS_AS(spectrum::incoherent_m2({{ModeIndex{0, 0}, 0.7}}), DomainError);
  CHECK_THROWS_AS(spectrum::incoherent_m2(
                      {{ModeIndex{0, 0}, 1.5}, {ModeIndex{0, 1}, -0.5}}),
                  DomainError);

  // Coherent coupling can only lower M^2 relative to the same moduli mixed
  // incoherently.
  std::mt19937_64 rng(0xabcdull);
  for (int trial = 0; trial < 200; ++trial) {
    const ModeSpectrum s = testsup::random_spectrum(rng, 5, 6, 6);
    std::map<ModeIndex, double> weights;
    for (const auto& [idx, c] : s.coeffs()) weights[idx] = std::norm(c);
    CHECK(spectrum::m2_rms(s) <=
          spectrum::incoherent_m2(weights) + 1e-10);
  }
}

TEST_CASE("uncertainty products") {
  const double hbar = 1.054571817e-34;
  const double w0 = 1e-3, k = 2.0 * 3.141592653589793 / 1064e-9;

  const ModeSpectrum gauss = ModeSpectrum::single(0, 0);
  const BeamGeometry g0 = spectrum::rms_geometry(gauss, w0, k);
  const auto u0 = spectrum::uncertainty_products(gauss, g0, 0.1, hbar);
  CHECK(u0.sigma_k_sigma_r == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(u0.focal_product == doctest::Approx(0.1 / k).epsilon(1e-13));
  CHECK(u0.quantum_product == doctest::Approx(hbar).epsilon(1e-13));

  const ModeSpectrum vortex = ModeSpectrum::single(0, 5);
  const BeamGeometry g5 = spectrum::rms_geometry(vortex, w0, k);
  const auto u5 = spectrum::uncertainty_products(vortex, g5, 0.1, hbar);
  CHECK(u5.sigma_k_sigma_r == doctest::Approx(6.0).epsilon(1e-13));
  CHECK(u5.quantum_product == doctest::Approx(6.0 * hbar).epsilon(1e-13));

  const ModeSpectrum ring = ModeSpectrum::single(1, 0);
  const BeamGeometry g1 = spectrum::rms_geometry(ring, w0, k);
  const auto u1 = spectrum::uncertainty_products(ring, g1, 0.1, hbar);
  CHECK(u1.sigma_k_sigma_r == doctest::Approx(3.0).epsilon(1e-13));
}

}  // TEST_SUITE
