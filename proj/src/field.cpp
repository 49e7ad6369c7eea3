#include "vortexdiv/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "vortexdiv/errors.hpp"
#include "vortexdiv/numerics.hpp"
#include "vortexdiv/specfun.hpp"

namespace vortexdiv::field {

namespace {

constexpr double kTwoOverPi = 0.6366197723675814;

// Fills L_n^{(alpha)}(x) for n = 0..n_max in one recurrence pass.
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

// Spectrum regrouped by ell for radial evaluation: coefficients pre-scaled
// by sqrt(n!/(|ell|+n)!) so the radial sum needs only Laguerre values and
// the Gouy ladder.
struct EllGroup {
  int ell = 0;
  int n_max = 0;
  std::vector<std::complex<double>> scaled;  // index n, zeros where absent
};

std::vector<EllGroup> group_by_ell(const ModeSpectrum& s) {
  std::map<int, EllGroup> groups;
  for (const auto& [idx, c] : s.coeffs()) {
    EllGroup& g = groups[idx.ell];
    g.ell = idx.ell;
    g.n_max = std::max(g.n_max, idx.n);
  }
  for (auto& [ell, g] : groups) g.scaled.assign(g.n_max + 1, 0.0);
  for (const auto& [idx, c] : s.coeffs()) {
    const int a = std::abs(idx.ell);
    const double scale = std::exp(0.5 * (numerics::log_factorial(idx.n) -
                                         numerics::log_factorial(a + idx.n)));
    groups[idx.ell].scaled[idx.n] = c * scale;
  }
  std::vector<EllGroup> out;
  out.reserve(groups.size());
  for (auto& [ell, g] : groups) out.push_back(std::move(g));
  return out;
}

// Evaluates every A_ell(r, z) with Psi = sum_ell A_ell e^{i ell phi}.
class RadialEvaluator {
 public:
  RadialEvaluator(const ModeSpectrum& s, double z, const BeamGeometry& g)
      : groups_(group_by_ell(s)), z_(z) {
    w_ = g.w(z);
    const double zz = z * z + g.z0 * g.z0;
    curvature_ = g.k * z / (2.0 * zz);  // phase is -curvature_ * r^2
    gouy_ = g.gouy(z);
  }

  const std::vector<EllGroup>& groups() const { return groups_; }
  double w() const { return w_; }

  void amplitudes(double r, std::vector<std::complex<double>>& out) const {
    out.resize(groups_.size());
    const double t = 2.0 * r * r / (w_ * w_);
    const std::complex<double> point_phase =
        std::polar(1.0, -curvature_ * r * r);
    const std::complex<double> gouy_step = std::polar(1.0, 2.0 * gouy_);
    for (size_t gi = 0; gi < groups_.size(); ++gi) {
      const EllGroup& grp = groups_[gi];
      const int a = std::abs(grp.ell);
      laguerre_all(grp.n_max, a, t, lag_);
      std::complex<double> sum = 0.0;
      std::complex<double> ladder = 1.0;  // e^{2 i n gouy}
      for (int n = 0; n <= grp.n_max; ++n) {
        sum += grp.scaled[n] * lag_[n] * ladder;
        ladder *= gouy_step;
      }
      const double radial = std::sqrt(kTwoOverPi) / w_ *
                            (a == 0 ? 1.0 : std::pow(std::sqrt(t), a)) *
                            std::exp(-r * r / (w_ * w_));
      out[gi] = sum * radial * point_phase *
                std::polar(1.0, (a + 1.0) * gouy_);
    }
  }

  // Angle-averaged intensity times 2*pi, i.e. int_0^{2pi} I dphi.
  double angular_integral(double r) const {
    amplitudes(r, amp_);
    if (groups_.size() == 1) return 2.0 * M_PI * std::norm(amp_[0]);
    ensure_phase_table();
    double acc = 0.0;
    for (size_t j = 0; j < phase_.size(); ++j) {
      std::complex<double> psi = 0.0;
      for (size_t gi = 0; gi < groups_.size(); ++gi) {
        psi += amp_[gi] * phase_[j][gi];
      }
      acc += std::norm(psi);
    }
    return acc * 2.0 * M_PI / double(phase_.size());
  }

 private:
  void ensure_phase_table() const {
    if (!phase_.empty()) return;
    int span = 0;
    for (const auto& g : groups_) span = std::max(span, std::abs(g.ell));
    const int points = std::max(256, 4 * span + 8);
    phase_.resize(points);
    for (int j = 0; j < points; ++j) {
      const double phi = 2.0 * M_PI * j / points;
      phase_[j].resize(groups_.size());
      for (size_t gi = 0; gi < groups_.size(); ++gi) {
        phase_[j][gi] = std::polar(1.0, groups_[gi].ell * phi);
      }
    }
  }

  std::vector<EllGroup> groups_;
  double z_, w_, curvature_, gouy_;
  mutable std::vector<double> lag_;
  mutable std::vector<std::complex<double>> amp_;
  mutable std::vector<std::vector<std::complex<double>>> phase_;
};

// Upper cut for the t = 2r^2/w^2 integration variable: grown until the
// exponentially-weighted integrand is negligible relative to `scale`,
// the natural magnitude of the full integral.
double find_t_cap(const std::function<double(double)>& f, double scale) {
  int m = 0;
  double t = 40.0;
  while (f(t) * (t + 1.0) > 1e-13 * scale) {
    t *= 1.4;
    if (++m > 40) throw QuadratureError("field: tail cap not found");
  }
  return t;
}

}  // namespace

std::complex<double> lg_amplitude(int n, int ell, double r, double phi,
                                  double z, const BeamGeometry& g) {
  if (n < 0) throw DomainError("lg_amplitude: n must be >= 0");
  if (r < 0.0) throw DomainError("lg_amplitude: r must be >= 0");
  const int a = std::abs(ell);
  const double w = g.w(z);
  const double t = 2.0 * r * r / (w * w);
  const double zz = z * z + g.z0 * g.z0;
  const double gouy = g.gouy(z);
  const double mag = std::sqrt(kTwoOverPi) *
                     std::exp(0.5 * (numerics::log_factorial(n) -
                                     numerics::log_factorial(a + n))) /
                     w * (a == 0 ? 1.0 : std::pow(std::sqrt(t), a)) *
                     specfun::laguerre(n, a, t) * std::exp(-r * r / (w * w));
  const double phase =
      ell * phi + (2.0 * n + a + 1.0) * gouy - g.k * r * r * z / (2.0 * zz);
  return mag * std::polar(1.0, phase);
}

double superposition_intensity(const ModeSpectrum& s, double r, double phi,
                               double z, const BeamGeometry& g) {
  std::complex<double> psi = 0.0;
  for (const auto& [idx, c] : s.coeffs()) {
    psi += c * lg_amplitude(idx.n, idx.ell, r, phi, z, g);
  }
  return std::norm(psi);
}

double quad_sigma_r_squared(const ModeSpectrum& s, double z,
                            const BeamGeometry& g) {
  const RadialEvaluator ev(s, z, g);
  const double w = ev.w();
  // r^3 dr = w^4 t / 8 dt under t = 2 r^2 / w^2.
  const auto integrand = [&](double t) {
    const double r = w * std::sqrt(0.5 * t);
    return ev.angular_integral(r) * w * w * w * w * t / 8.0;
  };
  const double t_cap = find_t_cap(integrand, w * w);
  return numerics::adaptive_simpson(integrand, 0.0, t_cap,
                                    1e-6 * w * w * 0.5);
}

double quad_total_power(const ModeSpectrum& s, double z,
                        const BeamGeometry& g) {
  const RadialEvaluator ev(s, z, g);
  const double w = ev.w();
  const auto integrand = [&](double t) {
    const double r = w * std::sqrt(0.5 * t);
    return ev.angular_integral(r) * w * w / 4.0;
  };
  const double t_cap = find_t_cap(integrand, 1.0);
  return numerics::adaptive_simpson(integrand, 0.0, t_cap, 1e-10);
}

double quad_encircled_radius(const ModeSpectrum& s, double z, double e0,
                             const BeamGeometry& g) {
  if (!(e0 > 0.0 && e0 < 1.0)) {
    throw DomainError("quad_encircled_radius: e0 must lie in (0, 1)");
  }
  const RadialEvaluator ev(s, z, g);
  const double w = ev.w();
  const auto integrand = [&](double t) {
    const double r = w * std::sqrt(0.5 * t);
    return ev.angular_integral(r) * w * w / 4.0;
  };
  const auto cumulative = [&](double t) {
    return numerics::adaptive_simpson(integrand, 0.0, t, 1e-10) - e0;
  };
  const double t_root =
      numerics::bracket_and_solve_increasing(cumulative, 0.0, 1.0, 1e-9, 40);
  return w * std::sqrt(0.5 * t_root);
}

}  // namespace vortexdiv::field
