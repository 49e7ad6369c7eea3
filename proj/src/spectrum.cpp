#include "vortexdiv/spectrum.hpp"

#include <cmath>
#include <cstdlib>

#include "vortexdiv/errors.hpp"

namespace vortexdiv {

ModeSpectrum::ModeSpectrum(Coeffs raw) {
  double norm_sq = 0.0;
  for (const auto& [idx, c] : raw) {
    if (idx.n < 0) throw DomainError("ModeSpectrum: radial index n must be >= 0");
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw DomainError("ModeSpectrum: non-finite coefficient");
    }
    norm_sq += std::norm(c);
  }
  const double norm = std::sqrt(norm_sq);
  if (norm <= 1e-12) {
    throw DegenerateInput("ModeSpectrum: raw norm below 1e-12");
  }
  for (auto& [idx, c] : raw) c /= norm;
  coeffs_ = std::move(raw);
}

ModeSpectrum ModeSpectrum::single(int n, int ell) {
  return ModeSpectrum({{ModeIndex{n, ell}, 1.0}});
}

std::complex<double> ModeSpectrum::at(int n, int ell) const {
  const auto it = coeffs_.find(ModeIndex{n, ell});
  return it == coeffs_.end() ? std::complex<double>(0.0) : it->second;
}

double BeamGeometry::w(double z) const {
  const double u = z / z0;
  return w0 * std::sqrt(1.0 + u * u);
}

double BeamGeometry::gouy(double z) const { return std::atan2(z, z0); }

namespace spectrum {

double mean_abs_oam(const ModeSpectrum& s) {
  double acc = 0.0;
  for (const auto& [idx, c] : s.coeffs()) acc += std::abs(idx.ell) * std::norm(c);
  return acc;
}

AlphaBetaPhi alpha_beta_phi(const ModeSpectrum& s) {
  AlphaBetaPhi out;
  for (const auto& [idx, c] : s.coeffs()) {
    const double w = std::norm(c);
    out.phi += 2.0 * idx.n * w;
    out.mean_abs_oam += std::abs(idx.ell) * w;
    if (idx.n >= 1) {
      const std::complex<double> below = s.at(idx.n - 1, idx.ell);
      out.beta += 2.0 * std::sqrt(double(idx.n) * (std::abs(idx.ell) + idx.n)) *
                  c * std::conj(below);
    }
  }
  out.alpha = 1.0 + out.mean_abs_oam + out.phi;
  return out;
}

double m2_rms(const ModeSpectrum& s) {
  const AlphaBetaPhi q = alpha_beta_phi(s);
  double rad = q.alpha * q.alpha - std::norm(q.beta);
  if (rad < 0.0) {
    if (rad < -1e-12) {
      throw InternalError("m2_rms: radicand below the noise window");
    }
    rad = 0.0;
  }
  return std::sqrt(rad);
}

BeamGeometry rms_geometry(const ModeSpectrum& s, double w0, double k) {
  if (!(w0 > 0.0) || !(k > 0.0)) {
    throw DomainError("rms_geometry: w0 and k must be positive");
  }
  const AlphaBetaPhi q = alpha_beta_phi(s);
  const double denom = q.alpha + q.beta.real();
  if (denom <= 0.0) {
    throw DegenerateInput("rms_geometry: Re(alpha+beta) <= 0");
  }
  const double rad = std::max(q.alpha * q.alpha - std::norm(q.beta), 0.0);
  BeamGeometry g;
  g.w0 = w0;
  g.k = k;
  g.z0 = k * w0 * w0 / 2.0;
  g.sigma_m = (w0 / std::sqrt(2.0)) * std::sqrt(rad / denom);
  g.theta_rms = (w0 / (std::sqrt(2.0) * g.z0)) * std::sqrt(denom);
  g.z_m = -q.beta.imag() / (k * g.theta_rms * g.theta_rms);
  return g;
}

double sigma_r_squared(const BeamGeometry& g, double z) {
  const double dz = z - g.z_m;
  return g.sigma_m * g.sigma_m + g.theta_rms * g.theta_rms * dz * dz;
}

double incoherent_m2(const std::map<ModeIndex, double>& weights) {
  double total = 0.0;
  double m2 = 0.0;
  for (const auto& [idx, w] : weights) {
    if (idx.n < 0) throw DomainError("incoherent_m2: n must be >= 0");
    if (w < 0.0) throw DomainError("incoherent_m2: negative weight");
    total += w;
    m2 += (2.0 * idx.n + std::abs(idx.ell) + 1.0) * w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw DomainError("incoherent_m2: weights must sum to 1");
  }
  return m2;
}

UncertaintyProducts uncertainty_products(const ModeSpectrum& s,
                                         const BeamGeometry& g, double f,
                                         double hbar) {
  const double m2 = m2_rms(s);
  UncertaintyProducts out;
  out.sigma_k_sigma_r = m2;  // (k*theta_rms) * sigma_m
  out.focal_product = f * m2 / g.k;  // (f*lambda/2pi) * M^2
  out.quantum_product = hbar * m2;
  return out;
}

}  // namespace spectrum
}  // namespace vortexdiv
