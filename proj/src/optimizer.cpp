#include "vortexdiv/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "vortexdiv/ee.hpp"
#include "vortexdiv/errors.hpp"

namespace vortexdiv::optimizer {

namespace {

double norm2(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

// Radial projection onto the unit sphere; false when the point is too
// close to the origin to have a direction.
bool project(std::vector<double>& v) {
  const double n = norm2(v);
  if (n <= 1e-12) return false;
  for (double& x : v) x /= n;
  return true;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t run) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (run + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Standard normals from explicit bit manipulation of the mt19937_64
// stream; avoids std::normal_distribution, whose output sequence is
// implementation-defined.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = (double((rng_() >> 11)) + 1.0) * 0x1p-53;  // (0,1]
    const double u2 = double(rng_() >> 11) * 0x1p-53;            // [0,1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

int thread_cap() {
  if (const char* env = std::getenv("VORTEXDIV_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

struct RunOutcome {
  NelderMeadResult nm;
  bool ok = false;
  std::string error;
};

}  // namespace

ModeSpectrum params_to_spectrum(const std::vector<double>& v, int ell) {
  if (v.empty() || v.size() % 2 == 0) {
    throw DomainError("params_to_spectrum: vector length must be 2N-1");
  }
  ModeSpectrum::Coeffs coeffs;
  coeffs[ModeIndex{0, ell}] = v[0];
  const int n_modes = int(v.size() + 1) / 2;
  for (int j = 1; j < n_modes; ++j) {
    coeffs[ModeIndex{j, ell}] = {v[2 * j - 1], v[2 * j]};
  }
  return ModeSpectrum(std::move(coeffs));  // normalizes; rejects near-zero
}

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& x0, const SearchConfig& cfg) {
  const size_t dim = x0.size();
  if (dim == 0) throw DomainError("nelder_mead: empty start vector");

  const auto evaluate = [&](std::vector<double>& x) {
    if (!project(x)) return std::numeric_limits<double>::infinity();
    return objective(x);
  };

  std::vector<std::vector<double>> xs(dim + 1, x0);
  std::vector<double> fs(dim + 1);
  for (size_t i = 1; i <= dim; ++i) xs[i][i - 1] += 0.2;
  for (size_t i = 0; i <= dim; ++i) fs[i] = evaluate(xs[i]);

  std::vector<size_t> order(dim + 1);
  NelderMeadResult result;
  std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);

  int iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    for (size_t i = 0; i <= dim; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return fs[a] < fs[b]; });
    const size_t best = order[0], worst = order[dim], second = order[dim - 1];
    result.trace.emplace_back(iter, fs[best]);

    const double spread = fs[worst] - fs[best];
    double size = 0.0;
    for (size_t i = 0; i <= dim; ++i) {
      double dist = 0.0;
      for (size_t j = 0; j < dim; ++j) {
        const double diff = xs[i][j] - xs[best][j];
        dist += diff * diff;
      }
      size = std::max(size, std::sqrt(dist));
    }
    if (spread < cfg.value_tol || size < cfg.simplex_tol) break;

    for (size_t j = 0; j < dim; ++j) {
      double acc = 0.0;
      for (size_t i = 0; i <= dim; ++i) {
        if (i != worst) acc += xs[i][j];
      }
      centroid[j] = acc / double(dim);
    }

    for (size_t j = 0; j < dim; ++j) xr[j] = 2.0 * centroid[j] - xs[worst][j];
    const double fr = evaluate(xr);

    if (fr < fs[best]) {
      for (size_t j = 0; j < dim; ++j) {
        xe[j] = centroid[j] + 2.0 * (centroid[j] - xs[worst][j]);
      }
      const double fe = evaluate(xe);
      if (fe < fr) {
        xs[worst] = xe;
        fs[worst] = fe;
      } else {
        xs[worst] = xr;
        fs[worst] = fr;
      }
      continue;
    }
    if (fr < fs[second]) {
      xs[worst] = xr;
      fs[worst] = fr;
      continue;
    }
    const bool outside = fr < fs[worst];
    for (size_t j = 0; j < dim; ++j) {
      const double dir = centroid[j] - xs[worst][j];
      xc[j] = outside ? centroid[j] + 0.5 * dir : centroid[j] - 0.5 * dir;
    }
    const double fc = evaluate(xc);
    if (fc < (outside ? fr : fs[worst])) {
      xs[worst] = xc;
      fs[worst] = fc;
      continue;
    }
    for (size_t i = 0; i <= dim; ++i) {  // shrink toward the best vertex
      if (i == best) continue;
      for (size_t j = 0; j < dim; ++j) {
        xs[i][j] = xs[best][j] + 0.5 * (xs[i][j] - xs[best][j]);
      }
      fs[i] = evaluate(xs[i]);
    }
  }

  const size_t final_best =
      size_t(std::min_element(fs.begin(), fs.end()) - fs.begin());
  result.x = xs[final_best];
  result.value = fs[final_best];
  result.iterations = iter;
  result.trace.emplace_back(iter, result.value);
  return result;
}

namespace {

SearchResult run_search(
    const std::function<double(const ModeSpectrum&)>& objective,
    const SearchConfig& cfg) {
  if (cfg.n_modes < 1) throw DomainError("SearchConfig: n_modes must be >= 1");
  if (cfg.restarts < 1) throw DomainError("SearchConfig: restarts must be >= 1");
  const size_t dim = 2 * size_t(cfg.n_modes) - 1;

  const auto vec_objective = [&](const std::vector<double>& v) {
    return objective(params_to_spectrum(v, cfg.ell));
  };

  const int runs = cfg.restarts + 1;
  std::vector<RunOutcome> outcomes(runs);
  std::atomic<int> next{0};
  const auto worker = [&] {
    for (;;) {
      const int run = next.fetch_add(1);
      if (run >= runs) return;
      std::vector<double> x0(dim, 0.0);
      if (run == 0) {
        x0[0] = 1.0;  // the LG_{0,ell} start
      } else {
        GaussianSource gauss(mix_seed(cfg.seed, std::uint64_t(run)));
        for (double& x : x0) x = gauss.next();
        if (!project(x0)) x0[0] = 1.0;
      }
      RunOutcome& out = outcomes[run];
      try {
        out.nm = nelder_mead(vec_objective, x0, cfg);
        out.ok = true;
      } catch (const std::exception& e) {
        out.error = e.what();
      }
    }
  };

  const int threads = std::min(runs, thread_cap());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SearchResult result;
  result.best_value = std::numeric_limits<double>::infinity();
  result.per_restart_bests.resize(runs,
                                  std::numeric_limits<double>::infinity());
  for (int run = 0; run < runs; ++run) {
    if (!outcomes[run].ok) {
      throw ConvergenceError("minimize: run " + std::to_string(run) +
                             " failed: " + outcomes[run].error);
    }
    result.per_restart_bests[run] = outcomes[run].nm.value;
    if (outcomes[run].nm.value < result.best_value) {
      result.best_value = outcomes[run].nm.value;
      result.best_run = run;
    }
  }
  result.iteration_trace = outcomes[result.best_run].nm.trace;
  result.best_spectrum =
      params_to_spectrum(outcomes[result.best_run].nm.x, cfg.ell);
  return result;
}

}  // namespace

SearchResult minimize_m2_ee(const SearchConfig& cfg) {
  if (!(cfg.e0 > 0.0 && cfg.e0 < 1.0)) {
    throw DomainError("SearchConfig: e0 must lie in (0, 1)");
  }
  return run_search(
      [&](const ModeSpectrum& s) { return ee::m2_ee(s, cfg.e0).m2_ee; }, cfg);
}

SearchResult minimize_objective(
    const std::function<double(const ModeSpectrum&)>& objective,
    const SearchConfig& cfg) {
  return run_search(objective, cfg);
}

std::optional<double> published_c0(double e0) {
  const double e63 = 1.0 - std::exp(-1.0);
  const double e86 = 1.0 - std::exp(-2.0);
  if (std::abs(e0 - e63) < 5e-3) return 0.5;
  if (std::abs(e0 - e86) < 5e-3) return 1.8;
  if (std::abs(e0 - 0.98) < 5e-3) return 3.0;
  return std::nullopt;
}

std::vector<BoundRow> bound_sweep(const std::vector<int>& ells, double e0,
                                  const SearchConfig& tpl) {
  std::vector<BoundRow> rows;
  rows.reserve(ells.size());
  const std::optional<double> c0 = published_c0(e0);
  for (int ell : ells) {
    if (ell < 0) throw DomainError("bound_sweep: ell must be >= 0");
    SearchConfig cfg = tpl;
    cfg.ell = ell;
    cfg.e0 = e0;
    BoundRow row;
    row.ell = ell;
    row.best_m2_ee = minimize_m2_ee(cfg).best_value;
    row.lg0_m2_ee = ee::m2_ee_lg(0, ell, e0);
    row.lg1_m2_ee = ee::m2_ee_lg(1, ell, e0);
    row.reference = c0 ? *c0 + std::abs(ell) : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace vortexdiv::optimizer
