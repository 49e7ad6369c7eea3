#include "vortexdiv/specfun.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include "vortexdiv/errors.hpp"
#include "vortexdiv/numerics.hpp"

namespace vortexdiv::specfun {

namespace {

// A parameter terminates the hypergeometric series iff it is a real
// nonpositive integer.
bool is_nonpositive_int(std::complex<double> a, long long* out) {
  if (a.imag() != 0.0) return false;
  const double r = a.real();
  if (r > 0.0) return false;
  const double nr = std::nearbyint(r);
  if (nr != r) return false;
  *out = static_cast<long long>(nr);
  return true;
}

}  // namespace

double laguerre(int n, double alpha, double x) {
  if (n < 0) throw DomainError("laguerre: n must be nonnegative");
  if (n == 0) return 1.0;
  double lm1 = 1.0;
  double l = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double lp1 =
        ((2.0 * k + 1.0 + alpha - x) * l - (k + alpha) * lm1) / (k + 1.0);
    lm1 = l;
    l = lp1;
  }
  return l;
}

std::complex<double> gamma_ratio(int n, std::complex<double> p) {
  if (n < 0) throw DomainError("gamma_ratio: n must be nonnegative");
  std::complex<double> prod = 1.0;
  for (int k = 0; k < n; ++k) {
    prod *= (double(k) - 0.5 * p);
  }
  return prod;
}

std::complex<double> hyp2f1(std::complex<double> a, std::complex<double> b,
                            std::complex<double> c, double x) {
  long long cc;
  if (is_nonpositive_int(c, &cc)) {
    // A terminating numerator parameter can rescue c at a nonpositive
    // integer only if it truncates the series first; not needed here.
    throw DomainError("hyp2f1: c is a nonpositive integer");
  }
  if (x < 0.0 || x > 1.0) {
    throw DomainError("hyp2f1: x must lie in [0, 1]");
  }

  long long na = -1, nb = -1;
  const bool term_a = is_nonpositive_int(a, &na);
  const bool term_b = is_nonpositive_int(b, &nb);
  long long n_terms = -1;  // index of last nonzero term, -1 = infinite
  if (term_a && term_b) {
    n_terms = std::min(-na, -nb);
  } else if (term_a) {
    n_terms = -na;
  } else if (term_b) {
    n_terms = -nb;
  }

  const double sigma = (c - a - b).real();
  if (n_terms < 0 && x == 1.0 && sigma <= 0.0) {
    throw DomainError("hyp2f1: series diverges at x = 1 for Re(c-a-b) <= 0");
  }

  std::complex<double> term = 1.0;
  std::complex<double> sum = 1.0;
  const long long cap = (n_terms >= 0) ? n_terms : 2000000;
  for (long long k = 0; k < cap; ++k) {
    const std::complex<double> kk(double(k), 0.0);
    term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * x;
    sum += term;
    if (n_terms < 0) {
      // Tail bound: for x = 1 the terms decay like k^{-(1+sigma)}, so
      // the remainder is roughly term * k / sigma; for x < 1 the tail
      // is geometric with ratio x.
      double tail;
      if (x == 1.0) {
        tail = std::abs(term) * (double(k) + 1.0) / sigma;
      } else {
        tail = std::abs(term) * x / (1.0 - x);
      }
      if (tail < 1e-14 * (1.0 + std::abs(sum))) return sum;
    }
  }
  if (n_terms >= 0) return sum;
  throw ConvergenceError("hyp2f1: term cap reached before tail tolerance");
}

double reg_gamma_p(int m, double x) {
  if (m < 1) throw DomainError("reg_gamma_p: m must be >= 1");
  if (x < 0.0) throw DomainError("reg_gamma_p: x must be nonnegative");
  // P(m, x) = 1 - e^{-x} sum_{k=0}^{m-1} x^k / k!
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < m; ++k) {
    term *= x / k;
    sum += term;
  }
  return 1.0 - std::exp(-x) * sum;
}

double inv_reg_gamma_p(int m, double e0) {
  if (!(e0 > 0.0 && e0 < 1.0)) {
    throw DomainError("inv_reg_gamma_p: e0 must lie in (0, 1)");
  }
  const auto f = [&](double x) { return reg_gamma_p(m, x) - e0; };
  // P(m, .) is strictly increasing from 0 toward 1; its median is near m.
  return numerics::bracket_and_solve_increasing(f, 0.0, std::max(1.0, double(m)),
                                                1e-12);
}

double erf_inv(double y) {
  if (!(y > -1.0 && y < 1.0)) {
    throw DomainError("erf_inv: argument must lie in (-1, 1)");
  }
  if (y == 0.0) return 0.0;
  // Winitzki-style seed, accurate to ~1e-2, then Newton on std::erf.
  const double a = 0.147;
  const double ln1my2 = std::log(1.0 - y * y);
  const double t1 = 2.0 / (M_PI * a) + 0.5 * ln1my2;
  double x = std::copysign(
      std::sqrt(std::sqrt(t1 * t1 - ln1my2 / a) - t1), y);
  constexpr double two_over_sqrt_pi = 1.1283791670955126;
  for (int it = 0; it < 60; ++it) {
    const double err = std::erf(x) - y;
    const double dx = err / (two_over_sqrt_pi * std::exp(-x * x));
    x -= dx;
    if (std::abs(dx) <= 1e-15 * (1.0 + std::abs(x))) break;
  }
  return x;
}

}  // namespace vortexdiv::specfun
