#include "cli.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <ctime>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "patternfront/errors.hpp"
#include "patternfront/front.hpp"
#include "patternfront/io.hpp"
#include "patternfront/pde.hpp"
#include "patternfront/periodic.hpp"
#include "patternfront/reduced.hpp"
#include "patternfront/spectral.hpp"

namespace patternfront::cli {

namespace {

using nlohmann::json;

struct Globals {
  std::string config;
  std::string out = ".";
  int threads = 0;
  std::uint64_t seed = 0;
  std::optional<double> alpha0, c0, gamma, eps, q0, x0;
};

// Without a config file the defaults are c0 = 7, alpha0 = 3, gamma = 0, eps = 0.1.
ModelParams resolve_params(const Globals& g) {
  double a = 3.0, c = 7.0, ga = 0.0, e = 0.1, q = 0.0, x = 0.0;
  if (!g.config.empty()) {
    const ModelParams p = load_params(g.config);
    a = p.alpha0();
    c = p.c0();
    ga = p.gamma();
    e = p.eps();
    q = p.q0();
    x = p.x0();
  }
  return ModelParams::make(g.alpha0.value_or(a), g.c0.value_or(c), g.gamma.value_or(ga),
                           g.eps.value_or(e), g.q0.value_or(q), g.x0.value_or(x));
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Canonical "key=value" lines for the digest.
class Options {
 public:
  Options& add(const std::string& key, double v) { return add(key, format_double(v)); }
  Options& add(const std::string& key, const std::string& v) {
    text_ += key + "=" + v + "\n";
    return *this;
  }
  Options& add(const std::string& key, const std::vector<double>& vs) {
    std::string s;
    for (const double v : vs) s += (s.empty() ? "" : ",") + format_double(v);
    return add(key, s);
  }
  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

// Single writer for every output file of one invocation.
class Run {
 public:
  Run(const std::string& sub, const ModelParams& params, const Options& options,
      std::string dir)
      : manifest_(RunManifest::make(sub, params, options.text())), dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  const std::string& digest() const { return manifest_.digest; }

  void csv(const std::string& name, const Table& table) {
    write_csv_file(path(name), table, manifest_.digest);
    manifest_.outputs.push_back(name);
  }

  void json_file(const std::string& name, json j) {
    j["manifest_digest"] = manifest_.digest;
    write_text_file(path(name), j.dump(2) + "\n");
    manifest_.outputs.push_back(name);
  }

  void finish() {
    write_text_file(path(manifest_.subcommand + "_manifest.json"),
                    manifest_.to_json(utc_timestamp()).dump(2) + "\n");
  }

 private:
  std::string path(const std::string& name) const {
    return (std::filesystem::path(dir_) / name).string();
  }

  RunManifest manifest_;
  std::string dir_;
};

Table field_table(const FieldPair& f) {
  Table t;
  t.columns = {"x", "u", "v"};
  const std::vector<double> u = f.u_values(), v = f.v_values();
  for (int j = 0; j < f.grid.n; ++j) t.add_row({f.grid.x(j), u[j], v[j]});
  return t;
}

json field_header(const FieldPair& f, const ModelParams& p, double t) {
  return {{"grid", {{"n", f.grid.n}, {"length", f.grid.length}, {"dx", f.grid.dx()}}},
          {"params", params_json(p)},
          {"time", t}};
}

// Runs fn(i) for every i on the OpenMP pool; the first exception is rethrown.
template <class Fn>
void parallel_for(int count, Fn&& fn) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct SpectrumOpts {
  int n_max = 30;
  std::vector<double> eps;
  bool extended = false;
  double cu = 1.0, cv = 1.0, c = 3.0;
  std::optional<double> beta;
  double ext_alpha0 = 1.0, ext_eps = 0.0;
};

int cmd_spectrum(const Globals& g, const SpectrumOpts& o, std::ostream& out) {
  const ModelParams params = resolve_params(g);
  const std::vector<double> eps = o.eps.empty() ? std::vector<double>{params.eps()} : o.eps;
  if (o.n_max < 3) throw DomainError("--n-max must be >= 3");
  Options opts;
  opts.add("n_max", o.n_max).add("eps", eps).add("extended", o.extended ? "1" : "0");
  if (o.extended)
    opts.add("cu", o.cu).add("cv", o.cv).add("c", o.c).add("beta", o.beta.value_or(o.cu))
        .add("ext_alpha0", o.ext_alpha0).add("ext_eps", o.ext_eps);
  Run run("spectrum", params, opts, g.out);

  json summary = json::array();
  for (const double e : eps) {
    const ModelParams p = params.with_eps(e);
    std::vector<SpectrumSlice> slices = compute_spectrum(o.n_max, p);
    json entry = {{"eps", e}, {"n_max", o.n_max}};
    if (e > 0.0) {
      const CentralReport rep = classify_central(slices, p);
      entry.update({{"central_count", rep.central_count},
                    {"threshold", rep.threshold},
                    {"max_central_re", rep.max_central},
                    {"min_hyperbolic_re", rep.min_hyperbolic},
                    {"ratio", rep.ratio},
                    {"six_central", rep.ok}});
      out << "eps=" << short_number(e) << ": " << rep.central_count
          << " central eigenvalues, max central |Re| " << short_number(rep.max_central)
          << ", min hyperbolic |Re| " << short_number(rep.min_hyperbolic) << "\n";
    } else {
      // Without the small parameter every eigenvalue sits on the imaginary axis.
      int on_axis = 0, total = 0;
      double max_re = 0.0;
      for (SpectrumSlice& s : slices) {
        for (int k = 0; k < 6; ++k) {
          const cplx z = k < 4 ? s.exact_sh[k] : s.exact_con[k - 4];
          const bool flag = std::abs(z.real()) <= 1e-10 * std::max(1.0, std::abs(z));
          s.central_flags[k] = flag;
          on_axis += flag;
          ++total;
          max_re = std::max(max_re, std::abs(z.real()));
        }
      }
      entry.update({{"on_imaginary_axis", on_axis},
                    {"eigenvalues", total},
                    {"all_imaginary", on_axis == total},
                    {"max_abs_re", max_re}});
      out << "eps=0: " << on_axis << "/" << total << " eigenvalues on the imaginary axis\n";
    }
    run.csv("spectrum_eps_" + short_number(e) + ".csv", spectrum_table(slices));
    summary.push_back(entry);
  }
  run.json_file("gap_summary.json", {{"entries", summary}});

  if (o.extended) {
    const ExtendedModel model{o.cu, o.cv, o.c, o.beta.value_or(o.cu)};
    const ModelParams p = ModelParams::make(o.ext_alpha0, params.c0(), params.gamma(), o.ext_eps,
                                            params.q0(), params.x0());
    const ExtendedGapReport rep = extended_spectral_gap(o.n_max, p, model);
    run.csv("extended_spectrum.csv", extended_spectrum_table(rep));
    run.json_file("extended_gap.json", {{"cu", model.cu},
                                        {"cv", model.cv},
                                        {"c", model.c},
                                        {"beta", model.beta},
                                        {"alpha0", o.ext_alpha0},
                                        {"eps", o.ext_eps},
                                        {"central_count", rep.central_count},
                                        {"min_noncentral_re", rep.min_noncentral_re}});
    out << "extended model: " << rep.central_count << " central eigenvalues, gap "
        << short_number(rep.min_noncentral_re) << "\n";
  }
  run.finish();
  return 0;
}

struct PeriodicOpts {
  int modes = 16;
  int samples = 512;
  double tol = 1e-12;
};

int cmd_periodic(const Globals& g, const PeriodicOpts& o, std::ostream& out) {
  const ModelParams params = resolve_params(g);
  Options opts;
  opts.add("modes", o.modes).add("samples", o.samples).add("tol", o.tol);
  Run run("periodic", params, opts, g.out);
  const PeriodicEquilibrium eq = newton_refine(leading_order(params, o.modes), o.tol);
  json j = periodic_json(eq);
  j["leading_amplitude"] = 2.0 * params.eps() * amplitude_fixed_point(params);
  run.json_file("periodic.json", j);
  run.csv("periodic_samples.csv", periodic_samples(eq, o.samples));
  run.finish();
  out << "amplitude " << format_double(eq.fundamental_amplitude()) << ", residual "
      << short_number(eq.residual_norm) << " after " << eq.iterations << " Newton iterations\n";
  return 0;
}

json fixed_points_json(const FixedPointList& fps) {
  json arr = json::array();
  for (const FixedPointInfo& f : fps.points) {
    json eig = json::array();
    for (const cplx z : f.eigenvalues) eig.push_back({z.real(), z.imag()});
    arr.push_back({{"kind", f.kind == FixedPointKind::circle ? "circle" : "origin"},
                   {"A", {f.state.A.real(), f.state.A.imag()}},
                   {"B", {f.state.B.real(), f.state.B.imag()}},
                   {"W0", f.state.W0},
                   {"eigenvalues", eig},
                   {"signature", signature(f.eigenvalues)}});
  }
  return arr;
}

Table fixed_points_table(const std::vector<double>& gammas,
                         const std::vector<FixedPointList>& lists) {
  Table t;
  t.columns = {"gamma", "kind", "re_A", "im_A", "re_B", "im_B", "W0"};
  for (int k = 0; k < 5; ++k) {
    t.columns.push_back("eig_re_" + std::to_string(k));
    t.columns.push_back("eig_im_" + std::to_string(k));
  }
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    for (const FixedPointInfo& f : lists[i].points) {
      std::vector<double> row = {gammas[i], f.kind == FixedPointKind::circle ? 1.0 : 0.0,
                                 f.state.A.real(), f.state.A.imag(), f.state.B.real(),
                                 f.state.B.imag(), f.state.W0};
      for (const cplx z : f.eigenvalues) {
        row.push_back(z.real());
        row.push_back(z.imag());
      }
      t.add_row(row);
    }
  }
  return t;
}

json shot_json(const ShootResult& s, const ModelParams& p) {
  json j = {{"gamma", p.gamma()},
            {"outcome", to_string(s.outcome)},
            {"reason", s.reason},
            {"terminal_norm", s.terminal_norm},
            {"unstable_eigenvalue", s.unstable_eigenvalue},
            {"delta", s.delta},
            {"xi_end", s.trajectory.empty() ? 0.0 : s.trajectory.back().xi}};
  if (p.gamma() == 0.0 && s.trajectory.size() >= 5)
    j["lyapunov_defect"] = lyapunov_defect(s.trajectory, p);
  return j;
}

struct ShootOpts {
  std::vector<double> gammas;
  double delta = 1e-5;
  double atol = 1e-10, rtol = 1e-10;
};

std::vector<ShootResult> shoot_sweep(const ModelParams& params, const std::vector<double>& gammas,
                                     const ShootOpts& o) {
  std::vector<ShootResult> shots(gammas.size());
  ShootOptions so;
  so.atol = o.atol;
  so.rtol = o.rtol;
  parallel_for(static_cast<int>(gammas.size()), [&](int i) {
    shots[i] = shoot_heteroclinic(params.with_gamma(gammas[i]), o.delta, so);
  });
  return shots;
}

Options shoot_options(const ShootOpts& o, const std::vector<double>& gammas) {
  Options opts;
  opts.add("gammas", gammas).add("delta", o.delta).add("atol", o.atol).add("rtol", o.rtol);
  return opts;
}

int cmd_reduced(const Globals& g, const ShootOpts& o, std::ostream& out) {
  const ModelParams params = resolve_params(g);
  const std::vector<double> gammas =
      o.gammas.empty() ? std::vector<double>{params.gamma()} : o.gammas;
  Run run("reduced", params, shoot_options(o, gammas), g.out);

  std::vector<FixedPointList> fps;
  for (const double ga : gammas) fps.push_back(fixed_points(params.with_gamma(ga)));
  run.csv("fixed_points.csv", fixed_points_table(gammas, fps));

  const std::vector<ShootResult> shots = shoot_sweep(params, gammas, o);
  json sweep = json::array();
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const ModelParams p = params.with_gamma(gammas[i]);
    json entry = shot_json(shots[i], p);
    entry["fixed_points"] = fixed_points_json(fps[i]);
    if (!fps[i].notice.empty()) entry["notice"] = fps[i].notice;
    sweep.push_back(entry);
    run.csv("trajectory_gamma_" + short_number(gammas[i]) + ".csv",
            trajectory_table(shots[i].trajectory, p));
    out << "gamma=" << short_number(gammas[i]) << ": " << to_string(shots[i].outcome)
        << ", terminal norm " << short_number(shots[i].terminal_norm) << "\n";
  }
  run.json_file("reduced_summary.json", {{"sweep", sweep}});
  run.finish();
  return 0;
}

struct SimOpts {
  double dt = 0.05;
  double t_end = 400.0;
  std::string scheme = "imex2";
  int record_every = 100;
  int n_grid = 4096;
  int n_periods = 256;
  bool serial = false;
};

SimConfig sim_config(const SimOpts& s) {
  SimConfig cfg;
  cfg.dt = s.dt;
  cfg.t_end = s.t_end;
  cfg.scheme = parse_scheme(s.scheme);
  cfg.record_every = s.record_every;
  cfg.parallel = !s.serial;
  cfg.validate();
  return cfg;
}

void add_sim_options(Options& opts, const SimOpts& s) {
  opts.add("dt", s.dt).add("t_end", s.t_end).add("scheme", s.scheme)
      .add("record_every", s.record_every).add("n_grid", s.n_grid).add("n_periods", s.n_periods);
}

struct FrontOpts {
  ShootOpts shoot;
  SimOpts sim;
  std::string interp = "cubic";
  bool simulate = false;
};

int cmd_front(const Globals& g, const FrontOpts& o, std::ostream& out) {
  const ModelParams params = resolve_params(g);
  if (!front_regime(params))
    throw DomainError("front requires c0^2 > 16 alpha0 (c0 = " + short_number(params.c0()) +
                      ", alpha0 = " + short_number(params.alpha0()) + ")");
  if (o.interp != "cubic" && o.interp != "quintic")
    throw ConfigError("--interp must be 'cubic' or 'quintic'");
  std::vector<double> gammas = o.shoot.gammas;
  if (std::find(gammas.begin(), gammas.end(), params.gamma()) == gammas.end())
    gammas.insert(gammas.begin(), params.gamma());
  Options opts = shoot_options(o.shoot, gammas);
  opts.add("interp", o.interp).add("simulate", o.simulate ? "1" : "0");
  add_sim_options(opts, o.sim);
  const SimConfig cfg = sim_config(o.sim);
  Run run("front", params, opts, g.out);

  const std::vector<ShootResult> shots = shoot_sweep(params, gammas, o.shoot);
  std::string failure;
  const ShootResult* primary = nullptr;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const ModelParams p = params.with_gamma(gammas[i]);
    run.csv("trajectory_gamma_" + short_number(gammas[i]) + ".csv",
            trajectory_table(shots[i].trajectory, p));
    if (!shots[i].ok() && failure.empty())
      failure = "shooting failed at gamma = " + short_number(gammas[i]) + ": " + shots[i].reason;
    if (gammas[i] == params.gamma()) primary = &shots[i];
  }
  if (!failure.empty()) {
    run.finish();
    throw NumericalError(failure);
  }

  const FrontProfile profile = FrontProfile::from_trajectory(
      *primary, params,
      o.interp == "quintic" ? Interpolation::quintic_hermite : Interpolation::monotone_cubic);
  const FieldPair f = assemble_front(profile, 0.0, make_grid(o.sim.n_grid, o.sim.n_periods, params),
                                     {FrontLayout::mirrored, 0.0});
  const MirroredGeometry geo = mirrored_geometry(f.grid.length, params);
  run.csv("front_field.csv", field_table(f));
  json header = field_header(f, params, 0.0);
  header["layout"] = "mirrored";
  header["mirror"] = geo.mirror;
  header["front"] = geo.front;
  run.json_file("front_field.json", header);
  out << "heteroclinic found for " << gammas.size() << " gamma value(s); front assembled on "
      << o.sim.n_grid << " points\n";

  if (o.simulate) {
    FrontExperiment setup;
    setup.n_grid = o.sim.n_grid;
    setup.n_periods = o.sim.n_periods;
    setup.shoot_delta = o.shoot.delta;
    const Diagnostics d = run_front_experiment(params, cfg, setup);
    run.csv("front_diagnostics.csv", diagnostics_table(d));
    run.json_file("front_summary.json", {{"fitted_speed", d.fitted_speed},
                                         {"predicted_speed", params.speed()},
                                         {"pattern_amplitude", d.pattern_amplitude},
                                         {"amplitude_error", d.amplitude_error},
                                         {"mean_v_drift", d.mean_v_drift},
                                         {"reconstruction_distance", d.reconstruction_distance},
                                         {"front_monotone", d.front_monotone}});
    out << "fitted speed " << short_number(d.fitted_speed) << " (eps c0 = "
        << short_number(params.speed()) << "), amplitude error "
        << short_number(d.amplitude_error) << "\n";
  }
  run.finish();
  return 0;
}

struct SimulateOpts {
  SimOpts sim{0.01, 10.0, "imex2", 100, 1024, 64, false};
  std::string initial = "periodic";
  double perturb = 0.0;
};

double l2(const std::vector<double>& f, double dx) {
  double s = 0.0;
  for (const double x : f) s += x * x;
  return std::sqrt(dx * s);
}

int cmd_simulate(const Globals& g, const SimulateOpts& o, std::ostream& out) {
  const ModelParams params = resolve_params(g);
  const SimConfig cfg = sim_config(o.sim);
  Options opts;
  add_sim_options(opts, o.sim);
  opts.add("initial", o.initial).add("perturb", o.perturb);
  if (o.perturb != 0.0) opts.add("seed", std::to_string(g.seed));
  Run run("simulate", params, opts, g.out);

  FieldPair f = make_grid(o.sim.n_grid, o.sim.n_periods, params);
  if (o.initial == "periodic") {
    const int modes = std::min(16, o.sim.n_grid / (3 * o.sim.n_periods));
    if (modes < 1) throw DomainError("grid too coarse for the periodic state");
    f = to_field(newton_refine(leading_order(params, modes)), o.sim.n_grid, o.sim.n_periods);
  } else if (o.initial == "front") {
    const ShootResult shot = shoot_heteroclinic(params, 1e-5);
    if (!shot.ok()) throw NumericalError(std::string("shooting failed: ") + shot.reason);
    f = assemble_front(FrontProfile::from_trajectory(shot, params), 0.0, f,
                       {FrontLayout::mirrored, 0.0});
  } else if (o.initial != "flat") {
    throw ConfigError("--initial must be periodic, front or flat");
  }
  if (o.perturb != 0.0) {
    std::mt19937_64 rng(g.seed);
    std::vector<double> u = f.u_values();
    const std::vector<double> v = f.v_values();
    for (double& x : u) x += o.perturb * (2.0 * std::ldexp(static_cast<double>(rng() >> 11), -53) - 1.0);
    f = FieldPair::from_values(f.grid, u, v);
  }

  Table diag;
  diag.columns = {"t", "mean_v", "norm_u", "norm_v", "max_abs_u"};
  const auto record = [&](const FieldPair& fp, double t) {
    const std::vector<double> u = fp.u_values(), v = fp.v_values();
    double m = 0.0;
    for (const double x : u) m = std::max(m, std::abs(x));
    diag.add_row({t, fp.v_hat[0].real() / fp.grid.n, l2(u, fp.grid.dx()), l2(v, fp.grid.dx()), m});
  };
  record(f, 0.0);
  f = evolve_full(std::move(f), PdeCoefficients::from(params), cfg,
                  [&](const FieldPair& fp, long s) { record(fp, s * cfg.dt); });
  const double t_final = cfg.steps() * cfg.dt;
  run.csv("simulate_diagnostics.csv", diag);
  run.csv("simulate_field.csv", field_table(f));
  run.json_file("simulate_field.json", field_header(f, params, t_final));
  run.finish();
  out << "simulated to t = " << short_number(t_final) << " with " << to_string(cfg.scheme)
      << ", final |u| " << short_number(diag.rows.back()[2]) << "\n";
  return 0;
}

int cmd_validate(const Globals& g, const std::vector<int>& only, std::ostream& out) {
  const ModelParams params = resolve_params(g);
  const std::vector<int> ids = only.empty() ? acceptance::all_criteria() : only;
  Options opts;
  std::string list;
  for (const int id : ids) list += (list.empty() ? "" : ",") + std::to_string(id);
  opts.add("criteria", list);
  Run run("validate", params, opts, g.out);
  json results = json::array();
  bool all = true;
  for (const int id : ids) {
    const acceptance::CriterionResult r = acceptance::run_criterion(id);
    out << acceptance::format_line(r) << "\n" << std::flush;
    results.push_back({{"id", r.id},
                       {"name", r.name},
                       {"pass", r.pass},
                       {"detail", r.detail},
                       {"seconds", r.seconds},
                       {"budget", r.budget}});
    all = all && r.pass;
  }
  run.json_file("validation.json", {{"criteria", results}, {"all_pass", all}});
  run.finish();
  return all ? 0 : 3;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Swift-Hohenberg / conservation-law front toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);

  Globals g;
  app.add_option("--config", g.config, "key = value parameter file")->check(CLI::ExistingFile);
  app.add_option("--out", g.out, "output directory (PATTERNFRONT_OUT overrides)");
  app.add_option("--threads", g.threads, "OpenMP threads (0: runtime default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "seed for --perturb");
  app.add_option("--alpha0", g.alpha0, "override alpha0");
  app.add_option("--c0", g.c0, "override c0");
  app.add_option("--gamma", g.gamma, "override gamma");
  app.add_option("--eps", g.eps, "override eps");
  app.add_option("--q0", g.q0, "override q0");
  app.add_option("--x0", g.x0, "override the phase x0");

  SpectrumOpts so;
  CLI::App* spectrum = app.add_subcommand("spectrum", "block spectra, expansions and gap summary");
  spectrum->add_option("--n-max", so.n_max, "Fourier indices |n| <= n_max");
  spectrum->add_option("--eps-list", so.eps, "eps values (default: the model eps)")
      ->delimiter(',');
  spectrum->add_flag("--extended", so.extended, "also compute the extended model spectrum");
  spectrum->add_option("--cu", so.cu, "extended model: dispersion coefficient");
  spectrum->add_option("--cv", so.cv, "extended model: advection coefficient");
  spectrum->add_option("--c", so.c, "extended model: front speed");
  spectrum->add_option("--beta", so.beta, "extended model: phase velocity (default cu)");
  spectrum->add_option("--ext-alpha0", so.ext_alpha0, "extended model: alpha0");
  spectrum->add_option("--ext-eps", so.ext_eps, "extended model: eps");

  PeriodicOpts po;
  CLI::App* periodic = app.add_subcommand("periodic", "refined periodic equilibrium");
  periodic->add_option("--modes", po.modes, "retained Fourier modes")->check(CLI::PositiveNumber);
  periodic->add_option("--samples", po.samples, "samples per period")->check(CLI::PositiveNumber);
  periodic->add_option("--tol", po.tol, "Newton tolerance");

  ShootOpts ro;
  CLI::App* reduced = app.add_subcommand("reduced", "fixed points and heteroclinic sweep");
  reduced->add_option("--gammas", ro.gammas, "gamma values to sweep")->delimiter(',');
  reduced->add_option("--delta", ro.delta, "offset from the circle along the unstable direction");
  reduced->add_option("--atol", ro.atol, "integrator absolute tolerance");
  reduced->add_option("--rtol", ro.rtol, "integrator relative tolerance");

  FrontOpts fo;
  CLI::App* front = app.add_subcommand("front", "heteroclinic, assembled front, optional run");
  front->add_option("--gammas", fo.shoot.gammas, "extra gamma values for trajectories")
      ->delimiter(',');
  front->add_option("--delta", fo.shoot.delta, "shooting offset");
  front->add_option("--interp", fo.interp, "envelope interpolation: cubic or quintic");
  front->add_flag("--simulate", fo.simulate, "evolve the front under the full PDE");
  front->add_option("--dt", fo.sim.dt, "time step");
  front->add_option("--t-end", fo.sim.t_end, "final time");
  front->add_option("--scheme", fo.sim.scheme, "imex1, imex2 or etdrk2");
  front->add_option("--record-every", fo.sim.record_every, "steps between records");
  front->add_option("--n-grid", fo.sim.n_grid, "grid points (power of two)");
  front->add_option("--n-periods", fo.sim.n_periods, "pattern periods in the domain");
  front->add_flag("--serial", fo.sim.serial, "use the serial reference kernels");

  SimulateOpts mo;
  CLI::App* simulate = app.add_subcommand("simulate", "full PDE run from a chosen initial state");
  simulate->add_option("--initial", mo.initial, "periodic, front or flat");
  simulate->add_option("--perturb", mo.perturb, "uniform noise amplitude added to u (seeded)");
  simulate->add_option("--dt", mo.sim.dt, "time step");
  simulate->add_option("--t-end", mo.sim.t_end, "final time");
  simulate->add_option("--scheme", mo.sim.scheme, "imex1, imex2 or etdrk2");
  simulate->add_option("--record-every", mo.sim.record_every, "steps between records");
  simulate->add_option("--n-grid", mo.sim.n_grid, "grid points (power of two)");
  simulate->add_option("--n-periods", mo.sim.n_periods, "pattern periods in the domain");
  simulate->add_flag("--serial", mo.sim.serial, "use the serial reference kernels");

  std::vector<int> only;
  CLI::App* validate = app.add_subcommand("validate", "run the acceptance checks");
  validate->add_option("--only", only, "criterion ids")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (const char* env = std::getenv("PATTERNFRONT_OUT"); env && *env) g.out = env;
  if (g.threads > 0) omp_set_num_threads(g.threads);

  try {
    if (*spectrum) return cmd_spectrum(g, so, out);
    if (*periodic) return cmd_periodic(g, po, out);
    if (*reduced) return cmd_reduced(g, ro, out);
    if (*front) return cmd_front(g, fo, out);
    if (*simulate) return cmd_simulate(g, mo, out);
    if (*validate) return cmd_validate(g, only, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv = {"patternfront"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace patternfront::cli
