#include <chrono>
#include <complex>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vortexdiv/cib.hpp"
#include "vortexdiv/ee.hpp"
#include "vortexdiv/errors.hpp"
#include "vortexdiv/field.hpp"
#include "vortexdiv/optimizer.hpp"
#include "vortexdiv/spectrum.hpp"
#include "vortexdiv/spectrum_io.hpp"
#include "vortexdiv/version.hpp"

namespace vd = vortexdiv;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kUsage = 2;
constexpr double kDefaultE0 = 0.6321205588285577;  // 1 - 1/e

std::complex<double> parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    size_t used = 0;
    const std::string re_part = text.substr(0, comma);
    const double re = std::stod(re_part, &used);
    if (used != re_part.size()) throw std::invalid_argument(text);
    double im = 0.0;
    if (comma != std::string::npos) {
      const std::string im_part = text.substr(comma + 1);
      const double v = std::stod(im_part, &used);
      if (used != im_part.size()) throw std::invalid_argument(text);
      im = v;
    }
    return {re, im};
  } catch (const std::exception&) {
    throw vd::FormatError("expected RE or RE,IM, got \"" + text + "\"");
  }
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

// Collects run metadata and writes `<output>.manifest.json` next to every
// file the subcommand produces.
class Manifest {
 public:
  explicit Manifest(std::string subcommand)
      : subcommand_(std::move(subcommand)),
        start_(std::chrono::steady_clock::now()) {
    params_ = ordered_json::object();
  }

  void add_input(const std::string& path) { inputs_.push_back(path); }
  void set_seed(std::uint64_t seed) { seed_ = seed; }
  ordered_json& params() { return params_; }

  void write_for(const std::string& out_path) const {
    const auto elapsed = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start_);
    ordered_json doc;
    doc["subcommand"] = subcommand_;
    doc["inputs"] = inputs_;
    doc["output"] = out_path;
    doc["params"] = params_;
    if (seed_) doc["seed"] = *seed_;
    doc["tool_version"] = vd::kVersion;
    doc["duration_s"] = elapsed.count();
    vd::io::atomic_write(out_path + ".manifest.json", doc.dump(2) + "\n");
  }

 private:
  std::string subcommand_;
  std::vector<std::string> inputs_;
  ordered_json params_;
  std::optional<std::uint64_t> seed_;
  std::chrono::steady_clock::time_point start_;
};

ordered_json complex_json(std::complex<double> c) {
  ordered_json j;
  j["re"] = c.real();
  j["im"] = c.imag();
  return j;
}

ordered_json spectrum_json(const vd::ModeSpectrum& s) {
  ordered_json modes = ordered_json::array();
  for (const auto& [idx, c] : s.coeffs()) {
    ordered_json m;
    m["n"] = idx.n;
    m["l"] = idx.ell;
    m["re"] = c.real();
    m["im"] = c.imag();
    modes.push_back(std::move(m));
  }
  ordered_json doc;
  doc["modes"] = std::move(modes);
  return doc;
}

struct RmsArgs {
  std::string spectrum_path;
  double w0 = 0.0;      // m; 0 = not given
  double lambda = 0.0;  // m; 0 = not given
  std::string out;
};

int run_rms(const RmsArgs& a) {
  Manifest manifest("rms");
  manifest.add_input(a.spectrum_path);
  manifest.params()["spectrum"] = a.spectrum_path;

  const vd::ModeSpectrum s = vd::io::load_spectrum(a.spectrum_path);
  const auto q = vd::spectrum::alpha_beta_phi(s);
  const double m2 = vd::spectrum::m2_rms(s);

  ordered_json doc;
  doc["mean_abs_oam"] = q.mean_abs_oam;
  doc["phi"] = q.phi;
  doc["alpha"] = q.alpha;
  doc["beta"] = complex_json(q.beta);
  doc["m2_rms"] = m2;
  doc["bound"] = 1.0 + q.mean_abs_oam;
  doc["bound_margin"] = m2 - (1.0 + q.mean_abs_oam);
  if (a.w0 > 0.0 && a.lambda > 0.0) {
    const double k = 2.0 * M_PI / a.lambda;
    const vd::BeamGeometry g = vd::spectrum::rms_geometry(s, a.w0, k);
    ordered_json geo;
    geo["w0_m"] = g.w0;
    geo["k_rad_per_m"] = g.k;
    geo["z0_m"] = g.z0;
    geo["sigma_m_m"] = g.sigma_m;
    geo["theta_rms_rad"] = g.theta_rms;
    geo["z_m_m"] = g.z_m;
    doc["geometry"] = std::move(geo);
    manifest.params()["w0"] = a.w0;
    manifest.params()["lambda"] = a.lambda;
  }
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!a.out.empty()) {
    vd::io::atomic_write(a.out, text);
    manifest.write_for(a.out);
  }
  return kOk;
}

struct CibSweepArgs {
  std::vector<std::string> p_list;
  std::vector<int> l_list;
  double xi_max = 1.0;
  int xi_points = 51;
  int n_max = 200;
  bool verify = false;
  std::string out;
};

int run_cib_sweep(const CibSweepArgs& a) {
  Manifest manifest("cib-sweep");
  std::vector<std::string> p_list = a.p_list;
  std::vector<int> l_list = a.l_list;
  if (p_list.empty()) p_list = {"2", "4"};
  if (l_list.empty()) l_list = {0, 1, 2, 3};
  if (a.xi_points < 1 || a.xi_max < 0.0) {
    throw vd::DomainError("cib-sweep: xi grid must be nonempty and nonnegative");
  }
  manifest.params()["p"] = p_list;
  manifest.params()["l"] = l_list;
  manifest.params()["xi_max"] = a.xi_max;
  manifest.params()["xi_points"] = a.xi_points;
  manifest.params()["n_max"] = a.n_max;
  manifest.params()["verify"] = a.verify;

  std::vector<double> grid(a.xi_points);
  for (int i = 0; i < a.xi_points; ++i) {
    grid[i] = a.xi_points == 1 ? a.xi_max
                               : a.xi_max * double(i) / (a.xi_points - 1);
  }

  std::ostringstream csv;
  csv << "xi_abs,p_re,p_im,l0,m2_rms\n";
  ordered_json row_errors = ordered_json::array();
  size_t ok_rows = 0, total_rows = 0;
  bool verified = true;
  for (const std::string& p_text : p_list) {
    const std::complex<double> p = parse_complex(p_text);
    for (int l0 : l_list) {
      const auto rows = vd::cib::cib_sweep(p, l0, grid, a.n_max);
      for (const auto& row : rows) {
        ++total_rows;
        if (!row.ok) {
          ordered_json err;
          err["xi_abs"] = row.xi_abs;
          err["p"] = complex_json(p);
          err["l0"] = l0;
          err["error"] = row.error;
          row_errors.push_back(std::move(err));
          continue;
        }
        ++ok_rows;
        csv << fmt(row.xi_abs) << ',' << fmt(p.real()) << ',' << fmt(p.imag())
            << ',' << l0 << ',' << fmt(row.m2_rms) << '\n';
        if (!a.verify) continue;
        if (row.xi_abs == 0.0) {
          const double expect = 1.0 + std::abs(l0);
          if (std::abs(row.m2_rms - expect) > 1e-12) {
            std::cerr << "verify: xi=0, l0=" << l0 << ": got "
                      << fmt(row.m2_rms) << ", expected " << fmt(expect)
                      << "\n";
            verified = false;
          }
        }
        if (row.xi_abs == 1.0 && p.real() > -std::abs(double(l0))) {
          const double expect = vd::cib::cib_m2_unit_xi(p, l0);
          if (std::abs(row.m2_rms - expect) > 1e-8) {
            std::cerr << "verify: |xi|=1, p=" << p_text << ", l0=" << l0
                      << ": got " << fmt(row.m2_rms) << ", closed form "
                      << fmt(expect) << "\n";
            verified = false;
          }
        }
      }
    }
  }
  if (ok_rows == 0) {
    std::cerr << "cib-sweep: every row failed\n";
    return kUsage;
  }
  vd::io::atomic_write(a.out, csv.str());
  manifest.params()["row_errors"] = std::move(row_errors);
  manifest.write_for(a.out);
  std::cout << "wrote " << ok_rows << "/" << total_rows << " rows to " << a.out
            << "\n";
  if (a.verify) {
    if (!verified) return kVerifyFail;
    std::cout << "verify: xi=0 and |xi|=1 rows match the closed forms\n";
  }
  return kOk;
}

struct EeArgs {
  std::string spectrum_path;
  std::string p_text, xi_text;
  int l0 = 0;
  bool l0_given = false;
  int n_max = 200;
  double e0 = kDefaultE0;
  std::string out;
  std::string trace_path;
};

int run_ee(const EeArgs& a) {
  Manifest manifest("ee");
  manifest.params()["e0"] = a.e0;

  std::optional<vd::ModeSpectrum> s;
  if (!a.spectrum_path.empty()) {
    if (!a.p_text.empty() || !a.xi_text.empty()) {
      throw vd::DomainError("ee: give either --spectrum or --p/--xi/--l");
    }
    s = vd::io::load_spectrum(a.spectrum_path);
    manifest.add_input(a.spectrum_path);
    manifest.params()["spectrum"] = a.spectrum_path;
  } else {
    if (a.p_text.empty() || a.xi_text.empty() || !a.l0_given) {
      throw vd::DomainError(
          "ee: need --spectrum, or all of --p, --xi and --l for a circular "
          "beam");
    }
    vd::cib::CiBParams params;
    params.p = parse_complex(a.p_text);
    params.xi = parse_complex(a.xi_text);
    params.ell0 = a.l0;
    s = vd::cib::cib_coefficients(params, a.n_max);
    manifest.params()["p"] = a.p_text;
    manifest.params()["xi"] = a.xi_text;
    manifest.params()["l"] = a.l0;
    manifest.params()["n_max"] = a.n_max;
  }

  std::vector<vd::ee::ScanPoint> scan;
  const vd::ee::EEResult r = vd::ee::m2_ee_traced(
      *s, a.e0, a.trace_path.empty() ? nullptr : &scan);

  ordered_json doc;
  doc["e0"] = r.e0;
  doc["t_infinity"] = r.t_infinity;
  doc["z_star"] = r.z_star;
  doc["t_at_zstar"] = r.t_at_zstar;
  doc["m2_ee"] = r.m2_ee;
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!a.out.empty()) {
    vd::io::atomic_write(a.out, text);
    manifest.write_for(a.out);
  }
  if (!a.trace_path.empty()) {
    std::ostringstream csv;
    csv << "Z,T,objective\n";
    for (const auto& pt : scan) {
      csv << fmt(pt.Z) << ',' << fmt(pt.T) << ',' << fmt(pt.objective) << '\n';
    }
    vd::io::atomic_write(a.trace_path, csv.str());
    manifest.write_for(a.trace_path);
  }
  return kOk;
}

struct MinimizeArgs {
  std::vector<int> ells;
  double e0 = kDefaultE0;
  int n_modes = 10;
  int restarts = 8;
  int max_iters = 5000;
  std::uint64_t seed = 0;
  std::string out;
};

ordered_json decimated_trace(const std::vector<std::pair<int, double>>& trace,
                             size_t cap) {
  ordered_json out = ordered_json::array();
  const size_t stride = trace.size() <= cap ? 1 : (trace.size() + cap - 1) / cap;
  for (size_t i = 0; i < trace.size(); i += stride) {
    out.push_back({trace[i].first, trace[i].second});
  }
  if (!trace.empty() && (trace.size() - 1) % stride != 0) {
    out.push_back({trace.back().first, trace.back().second});
  }
  return out;
}

int run_minimize(const MinimizeArgs& a) {
  Manifest manifest("minimize");
  if (a.ells.empty()) throw vd::DomainError("minimize: at least one --l");
  vd::optimizer::SearchConfig cfg;
  cfg.e0 = a.e0;
  cfg.n_modes = a.n_modes;
  cfg.restarts = a.restarts;
  cfg.max_iters = a.max_iters;
  cfg.seed = a.seed;
  manifest.set_seed(a.seed);
  manifest.params()["l"] = a.ells;
  manifest.params()["e0"] = a.e0;
  manifest.params()["n_modes"] = a.n_modes;
  manifest.params()["restarts"] = a.restarts;
  manifest.params()["max_iters"] = a.max_iters;

  const std::optional<double> c0 = vd::optimizer::published_c0(a.e0);

  if (a.ells.size() == 1) {
    cfg.ell = a.ells[0];
    const vd::optimizer::SearchResult r = vd::optimizer::minimize_m2_ee(cfg);
    const double lg0 = vd::ee::m2_ee_lg(0, cfg.ell, cfg.e0);
    ordered_json doc;
    ordered_json jc;
    jc["ell"] = cfg.ell;
    jc["e0"] = cfg.e0;
    jc["n_modes"] = cfg.n_modes;
    jc["restarts"] = cfg.restarts;
    jc["max_iters"] = cfg.max_iters;
    jc["seed"] = cfg.seed;
    doc["config"] = std::move(jc);
    doc["best_value"] = r.best_value;
    doc["best_run"] = r.best_run;
    doc["per_restart_bests"] = r.per_restart_bests;
    doc["lg0_reference"] = lg0;
    if (c0) {
      doc["bound_reference"] = *c0 + std::abs(cfg.ell);
      doc["bound_margin"] = r.best_value - (*c0 + std::abs(cfg.ell));
    } else {
      doc["bound_reference"] = nullptr;
      doc["bound_margin"] = nullptr;
    }
    doc["best_spectrum"] = spectrum_json(*r.best_spectrum);
    doc["trace"] = decimated_trace(r.iteration_trace, 1000);
    const std::string text = doc.dump(2) + "\n";
    vd::io::atomic_write(a.out, text);
    manifest.write_for(a.out);
    std::cout << "l=" << cfg.ell << ": best M2_EE = " << fmt(r.best_value)
              << " (LG_{0,l} gives " << fmt(lg0) << ")\n";
    if (c0) {
      std::cout << "margin above " << fmt(*c0) << "+|l| bound: "
                << fmt(r.best_value - (*c0 + std::abs(cfg.ell))) << "\n";
    }
    return kOk;
  }

  const auto rows = vd::optimizer::bound_sweep(a.ells, a.e0, cfg);
  std::ostringstream csv;
  csv << "ell,best_m2_ee,lg0_m2_ee,lg1_m2_ee,bound_reference\n";
  for (const auto& row : rows) {
    csv << row.ell << ',' << fmt(row.best_m2_ee) << ',' << fmt(row.lg0_m2_ee)
        << ',' << fmt(row.lg1_m2_ee) << ',' << fmt(row.reference) << '\n';
    std::cout << "l=" << row.ell << ": best M2_EE = " << fmt(row.best_m2_ee)
              << "\n";
  }
  vd::io::atomic_write(a.out, csv.str());
  manifest.write_for(a.out);
  return kOk;
}

struct OracleArgs {
  std::string spectrum_path;
  std::vector<double> z_list;  // meters
  double e0 = kDefaultE0;
  double w0 = 1e-3;
  double lambda = 1064e-9;
  std::string out;
};

int run_oracle_check(const OracleArgs& a) {
  Manifest manifest("oracle-check");
  manifest.add_input(a.spectrum_path);
  manifest.params()["spectrum"] = a.spectrum_path;
  manifest.params()["e0"] = a.e0;
  manifest.params()["w0"] = a.w0;
  manifest.params()["lambda"] = a.lambda;

  const vd::ModeSpectrum s = vd::io::load_spectrum(a.spectrum_path);
  const double k = 2.0 * M_PI / a.lambda;
  const vd::BeamGeometry g = vd::spectrum::rms_geometry(s, a.w0, k);
  std::vector<double> zs = a.z_list;
  if (zs.empty()) zs = {0.0, 0.5 * g.z0, g.z0, 3.0 * g.z0};
  manifest.params()["z"] = zs;

  const vd::ee::EnergySolver solver(s);
  ordered_json rows = ordered_json::array();
  bool pass = true;
  std::printf("%12s %14s %14s %10s %14s %14s %10s\n", "z_m", "sigma2_closed",
              "sigma2_quad", "rel_err", "R_ee_closed", "R_ee_quad", "rel_err");
  for (double z : zs) {
    const double closed = vd::spectrum::sigma_r_squared(g, z);
    const double quad = vd::field::quad_sigma_r_squared(s, z, g);
    const double rel_sigma = std::abs(closed - quad) / std::abs(quad);
    const double T = solver.solve(z / g.z0, a.e0);
    const double r_closed = g.w(z) * std::sqrt(0.5 * T);
    const double r_quad = vd::field::quad_encircled_radius(s, z, a.e0, g);
    const double rel_r = std::abs(r_closed - r_quad) / std::abs(r_quad);
    pass = pass && rel_sigma <= 1e-3 && rel_r <= 1e-3;
    std::printf("%12.5g %14.8g %14.8g %10.2e %14.8g %14.8g %10.2e\n", z,
                closed, quad, rel_sigma, r_closed, r_quad, rel_r);
    ordered_json row;
    row["z"] = z;
    row["sigma2_closed"] = closed;
    row["sigma2_quad"] = quad;
    row["rel_err_sigma2"] = rel_sigma;
    row["r_ee_closed"] = r_closed;
    row["r_ee_quad"] = r_quad;
    row["rel_err_r_ee"] = rel_r;
    rows.push_back(std::move(row));
  }
  if (!a.out.empty()) {
    ordered_json doc;
    doc["rows"] = std::move(rows);
    doc["pass"] = pass;
    vd::io::atomic_write(a.out, doc.dump(2) + "\n");
    manifest.write_for(a.out);
  }
  if (!pass) {
    std::cerr << "oracle-check: closed forms and quadrature disagree beyond "
                 "1e-3\n";
    return kVerifyFail;
  }
  return kOk;
}

struct ProfileArgs {
  std::string spectrum_path;
  std::vector<double> z_list;  // meters
  double w0 = 1e-3;
  double lambda = 1064e-9;
  double phi = 0.0;
  int r_points = 200;
  double r_max_w = 4.0;  // in units of w(z)
  std::string out;
};

int run_profile(const ProfileArgs& a) {
  Manifest manifest("profile");
  manifest.add_input(a.spectrum_path);
  manifest.params()["spectrum"] = a.spectrum_path;
  manifest.params()["w0"] = a.w0;
  manifest.params()["lambda"] = a.lambda;
  manifest.params()["phi"] = a.phi;
  manifest.params()["r_points"] = a.r_points;
  manifest.params()["r_max_w"] = a.r_max_w;

  if (a.r_points < 2) throw vd::DomainError("profile: need at least 2 points");
  const vd::ModeSpectrum s = vd::io::load_spectrum(a.spectrum_path);
  const double k = 2.0 * M_PI / a.lambda;
  const vd::BeamGeometry g = vd::spectrum::rms_geometry(s, a.w0, k);
  std::vector<double> zs = a.z_list;
  if (zs.empty()) zs = {0.0};
  manifest.params()["z"] = zs;

  std::ostringstream csv;
  csv << "r,z,intensity\n";
  for (double z : zs) {
    const double r_max = a.r_max_w * g.w(z);
    for (int i = 0; i < a.r_points; ++i) {
      const double r = r_max * double(i) / (a.r_points - 1);
      const double intensity =
          vd::field::superposition_intensity(s, r, a.phi, z, g);
      csv << fmt(r) << ',' << fmt(z) << ',' << fmt(intensity) << '\n';
    }
  }
  vd::io::atomic_write(a.out, csv.str());
  manifest.write_for(a.out);
  std::cout << "wrote " << a.r_points << " x " << zs.size()
            << " profile samples to " << a.out << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Divergence properties of orbital-angular-momentum beams from their "
      "Laguerre-Gauss expansions"};
  app.set_version_flag("--version", vd::kVersion);
  app.require_subcommand(1);

  RmsArgs rms_args;
  CLI::App* rms = app.add_subcommand(
      "rms", "rms divergence quantities and the 1+<|l|> bound margin");
  rms->add_option("--spectrum", rms_args.spectrum_path,
                  "spectrum JSON path")->required()->check(CLI::ExistingFile);
  rms->add_option("--w0", rms_args.w0, "waist parameter, meters");
  rms->add_option("--lambda", rms_args.lambda, "wavelength, meters");
  rms->add_option("--out", rms_args.out, "write the JSON report here");

  CibSweepArgs cib_args;
  CLI::App* cib = app.add_subcommand(
      "cib-sweep", "M2_rms of circular beams over a |xi| grid");
  cib->add_option("--p", cib_args.p_list,
                  "radial index p as RE or RE,IM (repeatable; default 2 and "
                  "4)");
  cib->add_option("--l", cib_args.l_list,
                  "topological charge l0 (repeatable; default 0..3)");
  cib->add_option("--xi-max", cib_args.xi_max, "largest |xi| (default 1)");
  cib->add_option("--xi-points", cib_args.xi_points,
                  "grid size from 0 to --xi-max (default 51)");
  cib->add_option("--n-max", cib_args.n_max,
                  "mode cutoff for generated spectra (default 200)");
  cib->add_flag("--verify", cib_args.verify,
                "cross-check xi=0 and |xi|=1 rows against closed forms");
  cib->add_option("--out", cib_args.out, "output CSV path")->required();

  EeArgs ee_args;
  CLI::App* eec = app.add_subcommand(
      "ee", "encircled-energy divergence M2_EE of a spectrum");
  eec->add_option("--spectrum", ee_args.spectrum_path, "spectrum JSON path")
      ->check(CLI::ExistingFile);
  eec->add_option("--e0", ee_args.e0,
                  "energy fraction in (0,1), default 1-1/e");
  eec->add_option("--p", ee_args.p_text, "circular-beam p as RE or RE,IM");
  eec->add_option("--xi", ee_args.xi_text, "circular-beam xi as RE or RE,IM");
  auto* ee_l = eec->add_option("--l", ee_args.l0, "circular-beam charge l0");
  eec->add_option("--n-max", ee_args.n_max,
                  "mode cutoff for the circular beam (default 200)");
  eec->add_option("--out", ee_args.out, "write the JSON result here");
  eec->add_option("--trace", ee_args.trace_path,
                  "write the (Z, T, objective) scan CSV here");

  MinimizeArgs min_args;
  CLI::App* mini = app.add_subcommand(
      "minimize",
      "Nelder-Mead search for minimal M2_EE at fixed l; several --l values "
      "produce a bound-sweep CSV");
  mini->add_option("--l", min_args.ells, "topological charge (repeatable)")
      ->required();
  mini->add_option("--e0", min_args.e0,
                   "energy fraction in (0,1), default 1-1/e");
  mini->add_option("--n-modes", min_args.n_modes,
                   "radial modes in the truncated superposition (default 10)");
  mini->add_option("--restarts", min_args.restarts,
                   "random restarts beside the LG start (default 8)");
  mini->add_option("--max-iters", min_args.max_iters,
                   "Nelder-Mead iteration cap per run (default 5000)");
  mini->add_option("--seed", min_args.seed, "random seed (default 0)");
  mini->add_option("--out", min_args.out, "output path (JSON or CSV)")
      ->required();

  OracleArgs oracle_args;
  CLI::App* oracle = app.add_subcommand(
      "oracle-check",
      "compare closed-form sigma_r^2(z) and R_EE against direct field "
      "quadrature");
  oracle->add_option("--spectrum", oracle_args.spectrum_path,
                     "spectrum JSON path")->required()
      ->check(CLI::ExistingFile);
  oracle->add_option("--z", oracle_args.z_list,
                     "planes in meters (repeatable; default 0, z0/2, z0, "
                     "3z0)");
  oracle->add_option("--e0", oracle_args.e0,
                     "energy fraction in (0,1), default 1-1/e");
  oracle->add_option("--w0", oracle_args.w0,
                     "waist parameter, meters (default 1e-3)");
  oracle->add_option("--lambda", oracle_args.lambda,
                     "wavelength, meters (default 1064e-9)");
  oracle->add_option("--out", oracle_args.out, "write the JSON report here");

  ProfileArgs profile_args;
  CLI::App* profile = app.add_subcommand(
      "profile", "radial intensity profiles as CSV (r, z, intensity)");
  profile->add_option("--spectrum", profile_args.spectrum_path,
                      "spectrum JSON path")->required()
      ->check(CLI::ExistingFile);
  profile->add_option("--z", profile_args.z_list,
                      "planes in meters (repeatable; default 0)");
  profile->add_option("--w0", profile_args.w0,
                      "waist parameter, meters (default 1e-3)");
  profile->add_option("--lambda", profile_args.lambda,
                      "wavelength, meters (default 1064e-9)");
  profile->add_option("--phi", profile_args.phi,
                      "azimuth of the cut, radians (default 0)");
  profile->add_option("--r-points", profile_args.r_points,
                      "radial samples per plane (default 200)");
  profile->add_option("--r-max-w", profile_args.r_max_w,
                      "cut radius in units of w(z) (default 4)");
  profile->add_option("--out", profile_args.out, "output CSV path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  ee_args.l0_given = ee_l->count() > 0;

  try {
    if (rms->parsed()) return run_rms(rms_args);
    if (cib->parsed()) return run_cib_sweep(cib_args);
    if (eec->parsed()) return run_ee(ee_args);
    if (mini->parsed()) return run_minimize(min_args);
    if (oracle->parsed()) return run_oracle_check(oracle_args);
    if (profile->parsed()) return run_profile(profile_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
