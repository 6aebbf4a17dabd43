// Command line front end: builds the configured channel, runs the requested
// analysis and writes CSVs/rasters plus a manifest into the output directory.
// Exit codes: 0 ok, 2 config error, 3 solver failure, 4 acceptance failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include <rotorchan/classical.hpp>
#include <rotorchan/config.hpp>
#include <rotorchan/field.hpp>
#include <rotorchan/husimi.hpp>
#include <rotorchan/koopman.hpp>
#include <rotorchan/quantum.hpp>
#include <rotorchan/render.hpp>
#include <rotorchan/spectral.hpp>
#include <rotorchan/storage.hpp>
#include <rotorchan/types.hpp>
#include <rotorchan/verify.hpp>

namespace fs = std::filesystem;
using namespace rotorchan;

namespace {

constexpr char kToolVersion[] = "rotorchan 1.0.0";

struct GlobalArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 0;
};

Config effective_config(const GlobalArgs& g) {
  Config cfg;
  if (!g.config_path.empty()) cfg = load_config(g.config_path);
  for (const std::string& s : g.overrides) apply_override(cfg, s);
  if (g.seed_set) cfg.run.seed = g.seed;
  if (g.jobs > 0) cfg.run.jobs = g.jobs;
  if (!g.out.empty()) cfg.run.out = g.out;
  validate_config(cfg);
  return cfg;
}

// Bookkeeping around one command invocation: output paths, the manifest
// entry, start/finish stamps. The manifest is appended after all outputs
// exist so a crash never records phantom files.
struct RunContext {
  Config cfg;
  std::string command;
  std::string run_id;
  std::string started;
  fs::path out_dir;
  std::vector<std::string> outputs;

  RunContext(Config c, std::string cmd)
      : cfg(std::move(c)), command(std::move(cmd)) {
    // The id names the computation, not its surroundings: where the files
    // land and how many workers ran must not change output names.
    Config keyed = cfg;
    keyed.run.out = "out";
    keyed.run.jobs = 1;
    run_id = hash_hex(fnv1a64(serialize_config(keyed) + "|" + command));
    started = timestamp_utc();
    out_dir = cfg.run.out;
    fs::create_directories(out_dir);
  }
  std::string path(const std::string& name) {
    std::string p = (out_dir / name).string();
    outputs.push_back(p);
    return p;
  }
  void finish() {
    ManifestEntry e;
    e.run_id = run_id;
    e.command = command;
    e.started = started;
    e.finished = timestamp_utc();
    e.tool_version = kToolVersion;
    e.seed = cfg.run.seed;
    e.config = flatten_config(cfg);
    e.outputs = outputs;
    append_manifest((out_dir / "manifest.json").string(), e);
  }
};

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

TopKOptions solver_options(const Config& cfg) {
  TopKOptions opt;
  opt.k = cfg.solver.k;
  opt.subspace = cfg.solver.subspace;
  opt.tol = cfg.solver.tol;
  opt.max_restarts = cfg.solver.max_restarts;
  opt.seed = cfg.run.seed;
  return opt;
}

bool is_quantum(const Config& cfg) { return cfg.system.kind == "quantum"; }

Eigen::Index channel_dim(const Config& cfg) {
  if (is_quantum(cfg))
    return static_cast<Eigen::Index>(cfg.system.n) * cfg.system.n;
  const Eigen::Index w = 2 * static_cast<Eigen::Index>(cfg.system.cutoff) + 1;
  return w * w;
}

std::string resolve_backend(const Config& cfg) {
  if (cfg.solver.backend != "auto") return cfg.solver.backend;
  return channel_dim(cfg) <= cfg.solver.dense_limit ? "dense" : "iterative";
}

MapParams map_params(const Config& cfg) {
  MapParams mp;
  mp.alpha1 = cfg.system.alpha1;
  mp.alpha2 = cfg.system.alpha2;
  mp.b = cfg.system.b;
  return mp;
}

// Full or top-k spectrum of the configured channel, trivial eigenvalue
// included (it anchors row 0 of the CSVs).
SpectralDecomposition solve_spectrum(const Config& cfg, bool with_vectors,
                                     int min_k) {
  const std::string backend = resolve_backend(cfg);
  if (backend == "dense") {
    Matrix m;
    if (is_quantum(cfg))
      m = build_channel_fast(cfg.system.n, cfg.system.alpha1, cfg.system.b);
    else
      m = Matrix(
          build_koopman_channel(cfg.system.cutoff, map_params(cfg), Axis::R1)
              .matrix);
    return full_spectrum(m, with_vectors);
  }
  TopKOptions opt = solver_options(cfg);
  opt.k = std::max(opt.k, min_k);
  if (is_quantum(cfg)) {
    ChannelApplier ap(cfg.system.n, cfg.system.alpha1, cfg.system.b);
    return top_k_spectrum(make_op(ap), opt);
  }
  KoopmanChannel chan =
      build_koopman_channel(cfg.system.cutoff, map_params(cfg), Axis::R1);
  return top_k_spectrum(make_op(chan.matrix), opt);
}

//============================================================================
// spectrum
//============================================================================

int cmd_spectrum(const Config& cfg) {
  RunContext rc(cfg, "spectrum");
  SpectralDecomposition sd = solve_spectrum(cfg, false, cfg.solver.k);
  write_eigenvalue_csv(rc.path("eigenvalues-" + rc.run_id + ".csv"), rc.run_id,
                       sd);
  if (is_quantum(cfg)) {
    RingRadii rr = ring_radii_coupled(cfg.system.n, cfg.system.b);
    RadiiRow row;
    row.n_dim = cfg.system.n;
    row.b = cfg.system.b;
    row.r_in = rr.r_in;
    row.r_out = rr.r_out;
    row.ep = entangling_power_coupled(cfg.system.n, cfg.system.b);
    row.ep_bessel = ep_bessel_asymptotic(cfg.system.n, cfg.system.b);
    write_radii_csv(rc.path("radii-" + rc.run_id + ".csv"), {row});
  }
  rc.finish();
  std::cout << "spectrum " << rc.run_id << ": " << sd.values.size()
            << " eigenvalues, leading |lambda| = "
            << g17(std::abs(sd.values.empty() ? cxd(0) : sd.values[0]))
            << "\n";
  return 0;
}

//============================================================================
// sweep
//============================================================================

std::vector<double> range_samples(const RangeConfig& r) {
  std::vector<double> xs;
  if (r.steps == 1) {
    xs.push_back(r.alpha_min);
    return xs;
  }
  for (int i = 0; i < r.steps; ++i)
    xs.push_back(r.alpha_min +
                 (r.alpha_max - r.alpha_min) * i / (r.steps - 1));
  return xs;
}

int cmd_sweep(const Config& cfg) {
  RunContext rc(cfg, "sweep");
  const std::vector<double> alphas = range_samples(cfg.sweep);
  const std::string progress_path =
      (rc.out_dir / ("sweep-" + rc.run_id + ".progress.json")).string();

  std::vector<SweepRow> done = load_sweep_progress(progress_path, rc.run_id);
  auto already = [&](double alpha) {
    for (const SweepRow& r : done)
      if (r.alpha == alpha) return true;
    return false;
  };

  const std::string backend = resolve_backend(cfg);
  int failures = 0;
  std::vector<SweepRow> rows = done;
  for (double alpha : alphas) {
    if (already(alpha)) continue;
    SweepRow row;
    row.alpha = alpha;
    try {
      Lambda1Result lam;
      if (is_quantum(cfg)) {
        const Vector moon = maximally_mixed_direction(cfg.system.n);
        if (backend == "dense") {
          Matrix m = build_channel_fast(cfg.system.n, alpha, cfg.system.b);
          lam = lambda1_dense(m, moon);
        } else {
          ChannelApplier ap(cfg.system.n, alpha, cfg.system.b);
          lam = lambda1_iterative(make_op(ap), moon, solver_options(cfg));
        }
      } else {
        MapParams mp = map_params(cfg);
        mp.alpha1 = alpha;
        mp.alpha2 = alpha;
        KoopmanChannel chan =
            build_koopman_channel(cfg.system.cutoff, mp, Axis::R1);
        const Vector triv = koopman_trivial_direction(cfg.system.cutoff);
        if (backend == "dense")
          lam = lambda1_dense(Matrix(chan.matrix), triv);
        else
          lam = lambda1_iterative(make_op(chan.matrix), triv,
                                  solver_options(cfg));
      }
      row.lambda1_abs = std::abs(lam.value);
      row.backend = lam.backend;
      row.residual = lam.residual;
      append_sweep_progress(progress_path, rc.run_id, row);
    } catch (const SolverError& e) {
      row.lambda1_abs = std::nan("");
      row.backend = "failed";
      row.residual = std::nan("");
      ++failures;
      std::cerr << "sweep alpha=" << g17(alpha) << " failed: " << e.what()
                << "\n";
    }
    rows.push_back(row);
  }

  std::sort(rows.begin(), rows.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.alpha < b.alpha; });
  rc.outputs.push_back(progress_path);
  write_sweep_csv(rc.path("sweep-" + rc.run_id + ".csv"), rows);
  rc.finish();
  std::cout << "sweep " << rc.run_id << ": " << rows.size() << " rows, "
            << failures << " failed\n";
  return failures == 0 ? 0 : 3;
}

//============================================================================
// modes
//============================================================================

int cmd_modes(const Config& cfg) {
  RunContext rc(cfg, "modes");
  int max_index = 0;
  for (int i : cfg.modes.indices) max_index = std::max(max_index, i);

  const std::string backend = resolve_backend(cfg);
  if (cfg.modes.left && backend != "dense")
    throw ConfigError("modes.left requires the dense backend");
  if (!is_quantum(cfg) && cfg.grid.size <= 2 * cfg.system.cutoff)
    throw ConfigError("grid.size must exceed 2*system.cutoff for mode fields");

  SpectralDecomposition sd = solve_spectrum(cfg, true, max_index + 1);
  const Eigen::Index available =
      cfg.modes.left ? sd.left.cols() : sd.right.cols();
  if (max_index >= available)
    throw ConfigError("modes.indices: index " + std::to_string(max_index) +
                      " out of range, spectrum has " +
                      std::to_string(available) + " vectors");

  write_eigenvalue_csv(rc.path("eigenvalues-" + rc.run_id + ".csv"), rc.run_id,
                       sd);
  const Colormap map = colormap_from_name(cfg.grid.colormap);
  for (int i : cfg.modes.indices) {
    const Vector v = cfg.modes.left ? sd.left.col(i) : sd.right.col(i);
    PhaseSpaceField field =
        is_quantum(cfg) ? husimi_mode(v, cfg.grid.size)
                        : fourier_mode_field(v, cfg.system.cutoff,
                                             cfg.grid.size);
    const std::string base =
        (rc.out_dir / ("mode-" + rc.run_id + "-" + std::to_string(i)))
            .string();
    rc.outputs.push_back(render_field(field, base, map));
    rc.outputs.push_back(base + ".json");
  }

  if (cfg.modes.overlay_ftse) {
    PhaseSpaceField f = ftse_grid(cfg.grid.size, cfg.ftse.t,
                                  cfg.system.alpha1, cfg.ftse.floor,
                                  cfg.run.jobs);
    const std::string base = (rc.out_dir / ("ftse-" + rc.run_id)).string();
    rc.outputs.push_back(render_field(f, base, map));
    rc.outputs.push_back(base + ".json");
  }
  rc.finish();
  std::cout << "modes " << rc.run_id << ": " << cfg.modes.indices.size()
            << " rasters\n";
  return 0;
}

//============================================================================
// ftse
//============================================================================

int cmd_ftse(const Config& cfg) {
  RunContext rc(cfg, "ftse");
  PhaseSpaceField f = ftse_grid(cfg.grid.size, cfg.ftse.t, cfg.system.alpha1,
                                cfg.ftse.floor, cfg.run.jobs);
  write_field_csv(f, rc.path("ftse-" + rc.run_id + ".csv"));
  const std::string base = (rc.out_dir / ("ftse-" + rc.run_id)).string();
  rc.outputs.push_back(
      render_field(f, base, colormap_from_name(cfg.grid.colormap)));
  rc.outputs.push_back(base + ".json");
  rc.finish();
  std::cout << "ftse " << rc.run_id << ": grid " << cfg.grid.size << " t="
            << cfg.ftse.t << "\n";
  return 0;
}

//============================================================================
// radii
//============================================================================

int cmd_radii(const Config& cfg) {
  RunContext rc(cfg, "radii");
  std::vector<RadiiRow> rows;
  for (int n_dim : cfg.radii.n_list) {
    RingRadii rr = ring_radii_coupled(n_dim, cfg.system.b);
    RadiiRow row;
    row.n_dim = n_dim;
    row.b = cfg.system.b;
    row.r_in = rr.r_in;
    row.r_out = rr.r_out;
    row.ep = entangling_power_coupled(n_dim, cfg.system.b);
    row.ep_bessel = ep_bessel_asymptotic(n_dim, cfg.system.b);
    rows.push_back(row);
  }
  write_radii_csv(rc.path("radii-" + rc.run_id + ".csv"), rows);
  rc.finish();
  std::cout << "radii " << rc.run_id << ": " << rows.size() << " rows\n";
  return 0;
}

//============================================================================
// submatrix
//============================================================================

int cmd_submatrix(const Config& cfg) {
  if (!is_quantum(cfg))
    throw ConfigError("submatrix analysis needs system.kind = quantum");
  RunContext rc(cfg, "submatrix");
  const std::vector<double> alphas = range_samples(cfg.submatrix);
  const Vector moon = maximally_mixed_direction(cfg.system.n);
  const std::string backend = resolve_backend(cfg);

  std::string csv = "alpha,lambda_max_ms,lambda1_abs,margin\n";
  for (double alpha : alphas) {
    SubmatrixResult sr = build_submatrix(cfg.system.n, alpha, cfg.system.b);
    const double lmax = submatrix_lambda_max(sr.ms);
    Lambda1Result lam;
    if (backend == "dense") {
      Matrix m = build_channel_fast(cfg.system.n, alpha, cfg.system.b);
      lam = lambda1_dense(m, moon);
    } else {
      ChannelApplier ap(cfg.system.n, alpha, cfg.system.b);
      lam = lambda1_iterative(make_op(ap), moon, solver_options(cfg));
    }
    const double l1 = std::abs(lam.value);
    csv += g17(alpha) + "," + g17(lmax) + "," + g17(l1) + "," +
           g17(l1 - lmax) + "\n";
  }
  atomic_write_text(rc.path("submatrix-" + rc.run_id + ".csv"), csv);
  rc.finish();
  std::cout << "submatrix " << rc.run_id << ": " << alphas.size()
            << " samples\n";
  return 0;
}

//============================================================================
// correlations
//============================================================================

// Unitary torus harmonic: position phase m composed with a cyclic shift n,
// scaled to unit Frobenius norm. Quantum counterpart of the Fourier modes.
Matrix torus_harmonic(int n_dim, int m, int n) {
  Matrix a = Matrix::Zero(n_dim, n_dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n_dim));
  for (int k = 0; k < n_dim; ++k) {
    const int row = ((k + n) % n_dim + n_dim) % n_dim;
    a(row, k) = std::polar(norm, kTwoPi * m * k / n_dim);
  }
  return a;
}

int cmd_correlations(const Config& cfg) {
  RunContext rc(cfg, "correlations");
  const CorrelationConfig& cc = cfg.correlations;
  std::vector<CorrelationRow> rows;
  if (is_quantum(cfg)) {
    ChannelApplier ap(cfg.system.n, cfg.system.alpha1, cfg.system.b);
    Matrix a0 = torus_harmonic(cfg.system.n, cc.mp, cc.np);
    Matrix a = torus_harmonic(cfg.system.n, cc.m, cc.n);
    std::vector<cxd> series = quantum_correlation(a0, a, ap, cc.t_max);
    for (int t = 0; t < static_cast<int>(series.size()); ++t)
      rows.push_back({t, series[t]});
  } else {
    KoopmanChannel chan =
        build_koopman_channel(cfg.system.cutoff, map_params(cfg), Axis::R1);
    std::vector<double> series =
        classical_correlation(chan, cc.m, cc.n, cc.mp, cc.np, cc.t_max);
    for (int t = 0; t < static_cast<int>(series.size()); ++t)
      rows.push_back({t, cxd(series[t], 0.0)});
  }
  write_correlation_csv(rc.path("correlations-" + rc.run_id + ".csv"), rows);
  rc.finish();
  std::cout << "correlations " << rc.run_id << ": " << rows.size()
            << " rows\n";
  return 0;
}

//============================================================================
// verify
//============================================================================

int cmd_verify(const Config& cfg, const std::string& level_name) {
  RunContext rc(cfg, "verify-" + level_name);
  const VerifyLevel level =
      level_name == "full" ? VerifyLevel::Full : VerifyLevel::Fast;
  VerifyReport rep = run_verification(level, cfg.run.seed, cfg.run.jobs);
  for (const CriterionResult& r : rep.results)
    std::cout << format_criterion_line(r) << "\n";
  atomic_write_text(rc.path("verify-" + rc.run_id + ".json"),
                    verify_report_json(rep));
  rc.finish();
  if (!rep.all_passed()) {
    std::cerr << "verification failed at level " << level_name << "\n";
    return 4;
  }
  std::cout << "all criteria passed at level " << level_name << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectra of quantum and classical channels of coupled kicked rotors"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--config", g.config_path, "configuration file (INI sections)");
  app.add_option("--set", g.overrides, "override, section.key=value (repeatable)")
      ->type_size(1);
  app.add_option("--out", g.out, "output directory");
  auto* seed_opt = app.add_option("--seed", g.seed, "random seed");
  app.add_option("--jobs", g.jobs, "worker threads for grid computations");

  CLI::App* sub_spectrum =
      app.add_subcommand("spectrum", "eigenvalues and ring radii");
  CLI::App* sub_sweep =
      app.add_subcommand("sweep", "leading nontrivial eigenvalue over alpha");
  CLI::App* sub_modes =
      app.add_subcommand("modes", "phase-space rasters of selected modes");
  CLI::App* sub_ftse =
      app.add_subcommand("ftse", "finite-time stability exponent field");
  CLI::App* sub_radii =
      app.add_subcommand("radii", "annulus radii and entangling power vs N");
  CLI::App* sub_submatrix =
      app.add_subcommand("submatrix", "Hermitian compression bound vs alpha");
  CLI::App* sub_correlations =
      app.add_subcommand("correlations", "two-point correlation series");
  CLI::App* sub_verify =
      app.add_subcommand("verify", "run the verification battery");
  std::string level = "fast";
  sub_verify->add_option("--level", level, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}));

  for (CLI::App* sub : {sub_spectrum, sub_sweep, sub_modes, sub_ftse,
                        sub_radii, sub_submatrix, sub_correlations, sub_verify})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    g.seed_set = seed_opt->count() > 0;
    const Config cfg = effective_config(g);
    if (sub_spectrum->parsed()) return cmd_spectrum(cfg);
    if (sub_sweep->parsed()) return cmd_sweep(cfg);
    if (sub_modes->parsed()) return cmd_modes(cfg);
    if (sub_ftse->parsed()) return cmd_ftse(cfg);
    if (sub_radii->parsed()) return cmd_radii(cfg);
    if (sub_submatrix->parsed()) return cmd_submatrix(cfg);
    if (sub_correlations->parsed()) return cmd_correlations(cfg);
    if (sub_verify->parsed()) return cmd_verify(cfg, level);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
