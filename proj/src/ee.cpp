#include "vortexdiv/ee.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "vortexdiv/errors.hpp"
#include "vortexdiv/numerics.hpp"
#include "vortexdiv/specfun.hpp"

namespace vortexdiv::ee {

namespace {

constexpr double kPanelWidth = 5.0;
constexpr double kModeTail = 1e-12;  // per-mode untracked mass bound

std::complex<double> mobius_weight(double Z) {
  return std::complex<double>(1.0, Z) / std::complex<double>(1.0, -Z);
}

// Fills L_n^{(alpha)}(x) for n = 0..n_max.
void laguerre_all(int n_max, double alpha, double x, std::vector<double>& out) {
  out.resize(n_max + 1);
  out[0] = 1.0;
  if (n_max == 0) return;
  out[1] = 1.0 + alpha - x;
  for (int k = 1; k < n_max; ++k) {
    out[k + 1] =
        ((2.0 * k + 1.0 + alpha - x) * out[k] - (k + alpha) * out[k - 1]) /
        (k + 1.0);
  }
}

// One ell component of the spectrum, with the mode constants of the
// orthonormal radial functions phi_n(t) = sqrt(e^-t t^a n!/(a+n)!) L_n^(a).
struct Group {
  int ell = 0;
  int a = 0;
  int n_max = 0;
  std::vector<std::complex<double>> psi;  // dense over n, zeros where absent
  std::vector<double> fn;                 // sqrt(n!/(a+n)!)
};

std::vector<Group> build_groups(const ModeSpectrum& s) {
  std::map<int, Group> by_ell;
  for (const auto& [idx, c] : s.coeffs()) {
    Group& g = by_ell[idx.ell];
    g.ell = idx.ell;
    g.a = std::abs(idx.ell);
    g.n_max = std::max(g.n_max, idx.n);
  }
  for (auto& [ell, g] : by_ell) {
    g.psi.assign(g.n_max + 1, 0.0);
    g.fn.resize(g.n_max + 1);
    for (int n = 0; n <= g.n_max; ++n) {
      g.fn[n] = std::exp(0.5 * (numerics::log_factorial(n) -
                                numerics::log_factorial(g.a + n)));
    }
  }
  for (const auto& [idx, c] : s.coeffs()) by_ell[idx.ell].psi[idx.n] = c;
  std::vector<Group> out;
  out.reserve(by_ell.size());
  for (auto& [ell, g] : by_ell) out.push_back(std::move(g));
  return out;
}

// phi_n(t) for all n of one group.
void basis_at(const Group& g, double t, std::vector<double>& lag,
              std::vector<double>& out) {
  out.resize(g.n_max + 1);
  if (t <= 0.0) {
    for (int n = 0; n <= g.n_max; ++n) out[n] = (g.a == 0) ? g.fn[n] : 0.0;
    return;
  }
  const double env = std::exp(0.5 * (-t + g.a * std::log(t)));
  laguerre_all(g.n_max, g.a, t, lag);
  for (int n = 0; n <= g.n_max; ++n) out[n] = env * g.fn[n] * lag[n];
}

std::complex<double> weighted_sum(const Group& g,
                                  const std::vector<std::complex<double>>& d,
                                  const std::vector<double>& phi) {
  std::complex<double> acc = 0.0;
  for (int n = 0; n <= g.n_max; ++n) acc += d[n] * phi[n];
  return acc;
}

}  // namespace

struct EnergySolver::Impl {
  std::vector<Group> groups;
  int gl_order = 32;
  int panels = 0;
  // Per group, per panel: row-major (n_max+1)^2 overlap matrix
  // int_panel phi_m phi_n dt.  These never depend on Z.
  std::vector<std::vector<std::vector<double>>> overlap;

  explicit Impl(const ModeSpectrum& s) : groups(build_groups(s)) {
    int nu = 2;
    for (const auto& g : groups) nu = std::max(nu, 4 * g.n_max + 2 * g.a + 2);
    // Node count sized to the Laguerre oscillation density sqrt(nu t)/pi.
    gl_order = std::max(
        32, int(3.0 * std::sqrt(double(nu) * kPanelWidth) / M_PI) + 8);
    overlap.resize(groups.size());

    const auto& gl = numerics::gauss_legendre(gl_order);
    std::vector<double> lag, phi;
    std::vector<double> captured(groups.size(), 0.0);  // min over modes
    std::vector<std::vector<double>> diag(groups.size());
    for (size_t gi = 0; gi < groups.size(); ++gi) {
      diag[gi].assign(groups[gi].n_max + 1, 0.0);
    }
    for (int k = 0; k < 4000; ++k) {
      const double lo = k * kPanelWidth;
      const double half = 0.5 * kPanelWidth;
      const double mid = lo + half;
      bool done = true;
      for (size_t gi = 0; gi < groups.size(); ++gi) {
        const Group& g = groups[gi];
        const int N = g.n_max + 1;
        std::vector<double> M(size_t(N) * N, 0.0);
        for (int j = 0; j < gl_order; ++j) {
          const double t = mid + half * gl.nodes[j];
          const double wj = half * gl.weights[j];
          basis_at(g, t, lag, phi);
          for (int m = 0; m < N; ++m) {
            const double wm = wj * phi[m];
            for (int n = m; n < N; ++n) M[size_t(m) * N + n] += wm * phi[n];
          }
        }
        for (int m = 0; m < N; ++m) {
          for (int n = m + 1; n < N; ++n) {
            M[size_t(n) * N + m] = M[size_t(m) * N + n];
          }
          diag[gi][m] += M[size_t(m) * N + m];
          if (1.0 - diag[gi][m] > kModeTail) done = false;
        }
        overlap[gi].push_back(std::move(M));
      }
      panels = k + 1;
      if (done) break;
    }
    if (panels >= 4000) {
      throw InternalError("EnergySolver: panel cap reached before tail bound");
    }
  }

  void make_weights(double Z, bool far_field,
                    std::vector<std::vector<std::complex<double>>>& d) const {
    const std::complex<double> mu =
        far_field ? std::complex<double>(-1.0, 0.0) : mobius_weight(Z);
    d.resize(groups.size());
    for (size_t gi = 0; gi < groups.size(); ++gi) {
      const Group& g = groups[gi];
      d[gi].resize(g.n_max + 1);
      std::complex<double> ladder = 1.0;
      for (int n = 0; n <= g.n_max; ++n) {
        d[gi][n] = g.psi[n] * ladder;
        ladder *= mu;
      }
    }
  }

  static double quad_form(const std::vector<double>& M,
                          const std::vector<std::complex<double>>& d) {
    const int N = int(d.size());
    double acc = 0.0;
    for (int m = 0; m < N; ++m) {
      const double re = d[m].real(), im = d[m].imag();
      const double* row = &M[size_t(m) * N];
      double inner_re = 0.0, inner_im = 0.0;
      for (int n = 0; n < N; ++n) {
        inner_re += row[n] * d[n].real();
        inner_im += row[n] * d[n].imag();
      }
      acc += re * inner_re + im * inner_im;
    }
    return acc;
  }

  // int_lo^hi sum_g |sum_n d_n phi_n|^2 dt by the panel quadrature rule.
  double partial(const std::vector<std::vector<std::complex<double>>>& d,
                 double lo, double hi) const {
    if (hi <= lo) return 0.0;
    const auto& gl = numerics::gauss_legendre(gl_order);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    thread_local std::vector<double> lag, phi;
    double acc = 0.0;
    for (int j = 0; j < gl_order; ++j) {
      const double t = mid + half * gl.nodes[j];
      double point = 0.0;
      for (size_t gi = 0; gi < groups.size(); ++gi) {
        basis_at(groups[gi], t, lag, phi);
        point += std::norm(weighted_sum(groups[gi], d[gi], phi));
      }
      acc += half * gl.weights[j] * point;
    }
    return acc;
  }

  double cumulative_impl(double T, double Z, bool far_field) const {
    std::vector<std::vector<std::complex<double>>> d;
    make_weights(Z, far_field, d);
    const int full = std::min(int(T / kPanelWidth), panels);
    double acc = 0.0;
    for (int k = 0; k < full; ++k) {
      for (size_t gi = 0; gi < groups.size(); ++gi) {
        acc += quad_form(overlap[gi][k], d[gi]);
      }
    }
    return acc + partial(d, full * kPanelWidth, T);
  }

  double solve_impl(double Z, double e0, bool far_field) const {
    if (!(e0 > 0.0 && e0 < 1.0)) {
      throw DomainError("solve_T: e0 must lie in (0, 1)");
    }
    std::vector<std::vector<std::complex<double>>> d;
    make_weights(Z, far_field, d);
    double below = 0.0;  // cumulative at k*W
    for (int k = 0; k < panels; ++k) {
      double step = 0.0;
      for (size_t gi = 0; gi < groups.size(); ++gi) {
        step += quad_form(overlap[gi][k], d[gi]);
      }
      const double above = below + step;
      if (above >= e0) {
        const double lo = k * kPanelWidth;
        const auto g = [&](double T) {
          return below + partial(d, lo, T) - e0;
        };
        return numerics::brent(g, lo, lo + kPanelWidth, 1e-12, 1e-12);
      }
      below = above;
    }
    throw ConvergenceError("solve_T: requested energy fraction beyond the "
                           "resolved mass");
  }
};

EnergySolver::EnergySolver(const ModeSpectrum& s)
    : impl_(std::make_unique<Impl>(s)) {}
EnergySolver::~EnergySolver() = default;
EnergySolver::EnergySolver(EnergySolver&&) noexcept = default;
EnergySolver& EnergySolver::operator=(EnergySolver&&) noexcept = default;

double EnergySolver::cumulative(double T, double Z) const {
  return impl_->cumulative_impl(T, Z, false);
}
double EnergySolver::solve(double Z, double e0) const {
  return impl_->solve_impl(Z, e0, false);
}
double EnergySolver::solve_far_field(double e0) const {
  return impl_->solve_impl(0.0, e0, true);
}

std::complex<double> u_ell(const ModeSpectrum& s, int ell, double t,
                           double Z) {
  if (t < 0.0) throw DomainError("u_ell: t must be >= 0");
  const int a = std::abs(ell);
  const std::complex<double> mu = mobius_weight(Z);
  int n_max = -1;
  for (const auto& [idx, c] : s.coeffs()) {
    if (idx.ell == ell) n_max = std::max(n_max, idx.n);
  }
  if (n_max < 0) return 0.0;
  std::vector<double> lag;
  laguerre_all(n_max, a, t, lag);
  double env;
  if (t == 0.0) {
    env = (a == 0) ? 1.0 : 0.0;
  } else {
    env = std::exp(0.5 * (-t + a * std::log(t)));
  }
  std::complex<double> acc = 0.0;
  for (const auto& [idx, c] : s.coeffs()) {
    if (idx.ell != ell) continue;
    const double fn = std::exp(0.5 * (numerics::log_factorial(idx.n) -
                                      numerics::log_factorial(a + idx.n)));
    acc += c * fn * lag[idx.n] * std::pow(mu, idx.n);
  }
  return env * acc;
}

double cumulative_energy(const ModeSpectrum& s, double T, double Z) {
  if (T < 0.0) throw DomainError("cumulative_energy: T must be >= 0");
  if (T == 0.0) return 0.0;
  std::vector<int> ells;
  for (const auto& [idx, c] : s.coeffs()) {
    if (std::find(ells.begin(), ells.end(), idx.ell) == ells.end()) {
      ells.push_back(idx.ell);
    }
  }
  const auto integrand = [&](double t) {
    double acc = 0.0;
    for (int ell : ells) acc += std::norm(u_ell(s, ell, t, Z));
    return acc;
  };
  return numerics::adaptive_simpson(integrand, 0.0, T, 1e-10);
}

double solve_T(const ModeSpectrum& s, double Z, double e0) {
  return EnergySolver(s).solve(Z, e0);
}

double t_infinity(const ModeSpectrum& s, double e0) {
  return EnergySolver(s).solve_far_field(e0);
}

namespace {

EEResult minimize_over_z(const EnergySolver& solver, double e0,
                         std::vector<ScanPoint>* trace) {
  constexpr int kScanPoints = 201;
  double z_max = 10.0;
  int best = -1;
  std::vector<double> zs(kScanPoints), ts(kScanPoints), fs(kScanPoints);
  for (;;) {
    for (int i = 0; i < kScanPoints; ++i) {
      zs[i] = -z_max + 2.0 * z_max * i / (kScanPoints - 1);
      ts[i] = solver.solve(zs[i], e0);
      fs[i] = (1.0 + zs[i] * zs[i]) * ts[i];
    }
    best = int(std::min_element(fs.begin(), fs.end()) - fs.begin());
    if ((best != 0 && best != kScanPoints - 1) || z_max >= 80.0) break;
    z_max *= 2.0;
  }
  if (trace) {
    trace->clear();
    trace->reserve(kScanPoints);
    for (int i = 0; i < kScanPoints; ++i) {
      trace->push_back({zs[i], ts[i], fs[i]});
    }
  }
  const double lo = zs[std::max(best - 1, 0)];
  const double hi = zs[std::min(best + 1, kScanPoints - 1)];
  const auto objective = [&](double Z) {
    return (1.0 + Z * Z) * solver.solve(Z, e0);
  };
  auto [z_star, f_star] = numerics::golden_section(objective, lo, hi, 1e-6);
  double t_at = solver.solve(z_star, e0);
  // The refinement must never report worse than the coarse scan.
  if (fs[best] < (1.0 + z_star * z_star) * t_at) {
    z_star = zs[best];
    t_at = ts[best];
  }
  EEResult out;
  out.e0 = e0;
  out.z_star = z_star;
  out.t_at_zstar = t_at;
  out.t_infinity = solver.solve_far_field(e0);
  out.m2_ee = std::sqrt(out.t_infinity * (1.0 + z_star * z_star) *
                        out.t_at_zstar);
  (void)f_star;
  return out;
}

}  // namespace

EEResult m2_ee(const ModeSpectrum& s, double e0) {
  return m2_ee_traced(s, e0, nullptr);
}

EEResult m2_ee_traced(const ModeSpectrum& s, double e0,
                      std::vector<ScanPoint>* trace) {
  const EnergySolver solver(s);
  return minimize_over_z(solver, e0, trace);
}

double m2_ee_lg(int n, int ell, double e0) {
  if (!(e0 > 0.0 && e0 < 1.0)) {
    throw DomainError("m2_ee_lg: e0 must lie in (0, 1)");
  }
  if (n < 0) throw DomainError("m2_ee_lg: n must be >= 0");
  const int a = std::abs(ell);
  if (n == 0) return specfun::inv_reg_gamma_p(a + 1, e0);
  return EnergySolver(ModeSpectrum::single(n, ell)).solve(0.0, e0);
}

double asymptotic_lg0(int ell, double e0) {
  if (!(e0 > 0.0 && e0 < 1.0)) {
    throw DomainError("asymptotic_lg0: e0 must lie in (0, 1)");
  }
  const double a = std::abs(double(ell));
  return a + specfun::erf_inv(2.0 * e0 - 1.0) * std::sqrt(2.0 * a);
}

}  // namespace vortexdiv::ee
