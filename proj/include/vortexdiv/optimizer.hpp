#ifndef VORTEXDIV_OPTIMIZER_HPP
#define VORTEXDIV_OPTIMIZER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "vortexdiv/spectrum.hpp"

namespace vortexdiv::optimizer {

// Search over the unit hypersphere of coefficient vectors for one fixed
// topological charge.  n_modes is the number of radial modes kept in the
// truncated superposition, so the real parameter vector has length
// 2*n_modes - 1 (the first coefficient is pinned real).
struct SearchConfig {
  int ell = 0;
  double e0 = 0.6321205588285577;  // 1 - 1/e
  int n_modes = 10;
  int restarts = 8;     // random starts beside the deterministic LG start
  int max_iters = 5000;
  std::uint64_t seed = 0;
  double value_tol = 1e-8;    // simplex value-spread stop
  double simplex_tol = 1e-8;  // simplex diameter stop
};

struct SearchResult {
  double best_value = 0.0;
  std::optional<ModeSpectrum> best_spectrum;
  // (iteration, running best value) of the winning run, decimated on dump.
  std::vector<std::pair<int, double>> iteration_trace;
  std::vector<double> per_restart_bests;  // index 0 is the LG_{0,ell} start
  int best_run = 0;
};

// v = (Re psi_0, Re psi_1, Im psi_1, ..., Re psi_{N-1}, Im psi_{N-1})
// projected onto the unit hypersphere; support {(j, ell), j < N}.
ModeSpectrum params_to_spectrum(const std::vector<double>& v, int ell);

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::vector<std::pair<int, double>> trace;
  int iterations = 0;
};

// Derivative-free simplex descent constrained to the unit hypersphere:
// every trial point is radially projected before evaluation, which also
// makes the objective scale-invariant.  Deterministic given x0 and cfg.
NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& x0, const SearchConfig& cfg);

// Multi-start Nelder-Mead on the encircled-energy divergence.  Run 0
// starts at LG_{0,ell}; the remaining cfg.restarts runs start from seeded
// Gaussian points on the sphere.  Runs execute concurrently (capped by
// VORTEXDIV_THREADS) and merge deterministically.
SearchResult minimize_m2_ee(const SearchConfig& cfg);

// Same machinery against an arbitrary objective; used for the rms sanity
// path where the global minimum 1+|ell| is known in closed form.
SearchResult minimize_objective(
    const std::function<double(const ModeSpectrum&)>& objective,
    const SearchConfig& cfg);

struct BoundRow {
  int ell = 0;
  double best_m2_ee = 0.0;
  double lg0_m2_ee = 0.0;
  double lg1_m2_ee = 0.0;
  double reference = 0.0;  // c0 + ell when a published c0 matches e0
};

// One minimization per ell; reference column uses c0 = 0.5, 1.8, 3.0 at
// the three published energy fractions (0 when e0 matches none).
std::vector<BoundRow> bound_sweep(const std::vector<int>& ells, double e0,
                                  const SearchConfig& tpl);

// Published (e0, c0) pairs: returns c0 when e0 is within 5e-3 of one of
// 1-1/e, 1-1/e^2, 0.98.
std::optional<double> published_c0(double e0);

}  // namespace vortexdiv::optimizer

#endif  // VORTEXDIV_OPTIMIZER_HPP
