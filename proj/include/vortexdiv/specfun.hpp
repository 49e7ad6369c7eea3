#ifndef VORTEXDIV_SPECFUN_HPP
#define VORTEXDIV_SPECFUN_HPP

#include <complex>

namespace vortexdiv::specfun {

// Generalized Laguerre polynomial L_n^{(alpha)}(x) by the three-term
// recurrence, stable for alpha >= 0 and moderate n.
double laguerre(int n, double alpha, double x);

// Gamma(n - p/2) / Gamma(-p/2) as the finite product
// prod_{k=0}^{n-1} (k - p/2).  Exact zeros appear when p is an even
// nonnegative integer below 2n; no gamma evaluation is involved.
std::complex<double> gamma_ratio(int n, std::complex<double> p);

// Gauss hypergeometric sum 2F1(a, b; c; x) for complex a, b and real
// 0 <= x <= 1.  Terminates exactly when a or b is a nonpositive real
// integer.  Otherwise requires x < 1, or x == 1 with Re(c-a-b) > 0;
// throws DomainError when divergent and ConvergenceError when the
// tail cannot be brought below tolerance within the term cap.
std::complex<double> hyp2f1(std::complex<double> a, std::complex<double> b,
                            std::complex<double> c, double x);

// Regularized lower incomplete gamma P(m, x) for integer m >= 1,
// evaluated through the finite Poisson-sum complement.
double reg_gamma_p(int m, double x);

// Inverse of reg_gamma_p in x: returns x with P(m, x) = e0 for
// e0 in (0, 1), solved to |P - e0| < 1e-12.
double inv_reg_gamma_p(int m, double e0);

// Inverse error function, seeded by a rational approximation and
// polished with Newton steps on std::erf.
double erf_inv(double y);

}  // namespace vortexdiv::specfun

#endif  // VORTEXDIV_SPECFUN_HPP
