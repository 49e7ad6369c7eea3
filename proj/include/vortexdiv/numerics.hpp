#ifndef VORTEXDIV_NUMERICS_HPP
#define VORTEXDIV_NUMERICS_HPP

#include <functional>
#include <utility>
#include <vector>

namespace vortexdiv::numerics {

// Adaptive Simpson on [a, b] with Richardson error control (err/15 rule).
// Throws QuadratureError if max_depth subdivision no longer reaches abs_tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth = 48);

// Brent root finder on a bracket [lo, hi] with f(lo), f(hi) of opposite sign.
// Stops when |f| < f_tol or the bracket shrinks below x_tol.
double brent(const std::function<double(double)>& f, double lo, double hi,
             double f_tol, double x_tol = 1e-14, int max_iter = 200);

// Expands [lo, hi] geometrically upward from hi until f changes sign, then
// solves with brent. f must be monotone nondecreasing for the expansion to
// terminate. Throws ConvergenceError after max_growth doublings.
double bracket_and_solve_increasing(const std::function<double(double)>& f,
                                    double lo, double hi, double f_tol,
                                    int max_growth = 200);

// Golden-section minimization on [lo, hi]; returns (x_min, f_min) once the
// interval is narrower than x_tol.
std::pair<double, double> golden_section(const std::function<double(double)>& f,
                                         double lo, double hi, double x_tol);

// Gauss-Legendre nodes and weights on [-1, 1], computed once per order by
// Newton iteration on the Legendre polynomial.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int order);

// ln(k!) via a cached table; k must be a small nonnegative integer.
double log_factorial(int k);

}  // namespace vortexdiv::numerics

#endif
