#include "vortexdiv/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>

#include "vortexdiv/errors.hpp"

namespace vortexdiv::numerics {

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return (fa + 4.0 * fm + fb) * h / 6.0;
}

double simpson_rec(const std::function<double(double)>& f, double a, double m,
                   double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  // Accept at |err| <= tol rather than the classical 15*tol: with the
  // Richardson term below this keeps the realized error near abs_tol even
  // when many panels contribute.
  const double err = left + right - whole;
  if (std::abs(err) <= tol || b - a < 1e-300) {
    return left + right + err / 15.0;
  }
  if (depth <= 0) {
    throw QuadratureError("adaptive_simpson: refinement cap reached");
  }
  return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  return simpson_rec(f, a, m, b, fa, fm, fb, whole, abs_tol, max_depth);
}

double brent(const std::function<double(double)>& f, double lo, double hi,
             double f_tol, double x_tol, int max_iter) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) {
    throw ConvergenceError("brent: endpoints do not bracket a root");
  }
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * 2.2204460492503131e-16 * std::abs(b) + 0.5 * x_tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(fb) < f_tol || std::abs(xm) <= tol1) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
    }
  }
  throw ConvergenceError("brent: iteration cap reached");
}

double bracket_and_solve_increasing(const std::function<double(double)>& f,
                                    double lo, double hi, double f_tol,
                                    int max_growth) {
  double flo = f(lo);
  if (std::abs(flo) < f_tol) return lo;
  if (flo > 0.0) {
    throw ConvergenceError("bracket_and_solve_increasing: f(lo) > 0");
  }
  double fhi = f(hi);
  int grow = 0;
  while (fhi < 0.0) {
    if (++grow > max_growth) {
      throw ConvergenceError("bracket_and_solve_increasing: bracket cap");
    }
    lo = hi;
    hi *= 2.0;
    fhi = f(hi);
  }
  return brent(f, lo, hi, f_tol);
}

std::pair<double, double> golden_section(const std::function<double(double)>& f,
                                         double lo, double hi, double x_tol) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > x_tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1; f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2; f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

const GaussLegendre& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  GaussLegendre gl;
  gl.nodes.resize(order);
  gl.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess, then Newton on P_order.
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.nodes[i] = -x;
    gl.nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.weights[i] = w;
    gl.weights[order - 1 - i] = w;
  }
  return cache.emplace(order, std::move(gl)).first->second;
}

double log_factorial(int k) {
  constexpr int kTableSize = 1024;
  static const std::vector<double> table = [] {
    std::vector<double> t(kTableSize, 0.0);
    for (int i = 2; i < kTableSize; ++i) t[i] = t[i - 1] + std::log(double(i));
    return t;
  }();
  if (k < 0) throw InternalError("log_factorial: negative argument");
  if (k >= kTableSize) throw InternalError("log_factorial: table bound exceeded");
  return table[k];
}

}  // namespace vortexdiv::numerics
