#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "stabctl/assumptions.hpp"
#include "stabctl/classifier.hpp"
#include "stabctl/config.hpp"
#include "stabctl/equilibria.hpp"
#include "stabctl/io.hpp"
#include "stabctl/limit_cycle.hpp"
#include "stabctl/oned.hpp"
#include "stabctl/registry.hpp"

namespace stabctl::cli {
namespace {

namespace fs = std::filesystem;

const std::map<std::string, Vec2> kPanels = {
    {"a", {-1.66, 0.42}}, {"b", {-1.0, 1.23}}, {"c", {0.5, 1.27}}, {"d", {-0.62, 0.04}},
    {"e", {1.98, 0.93}},  {"f", {0.5, -0.22}}, {"g", {1.35, -0.26}}, {"h", {1.73, 0.25}},
};

struct CommonOpts {
  std::string config_path;
  RunConfig cfg;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "key = value config file");
    app->add_option("--model", cfg.model, "model name (bvp, circle, double-well-1d, poly-1d)");
    app->add_option("--rho", cfg.rho, "discount rate (> 0)");
    app->add_option("--a", cfg.params.a);
    app->add_option("--b", cfg.params.b);
    app->add_option("--c", cfg.params.c);
    app->add_option("--r", cfg.params.r);
    app->add_option_function<std::string>(
        "--mode",
        [this](const std::string& m) {
          if (m == "one-sided-x")
            cfg.mode = ControlMode::OneSidedX;
          else if (m == "two-sided")
            cfg.mode = ControlMode::TwoSided;
          else if (m == "one-sided-y")
            cfg.mode = ControlMode::OneSidedY;
          else
            throw CLI::ValidationError("--mode", "unknown mode " + m);
        },
        "one-sided-x | two-sided | one-sided-y");
    app->add_option("--abs-tol", cfg.integration.abs_tol);
    app->add_option("--rel-tol", cfg.integration.rel_tol);
    app->add_option("--blowup-radius", cfg.integration.blowup_radius);
    app->add_option("--horizon", cfg.thresholds.horizon, "classification horizon");
    app->add_option("-o,--output-dir", cfg.output_dir, "output directory");
  }

  // Re-parse the config file first, then let flags override: CLI11 applies
  // flag values after this callback runs in pre-parse order, so we load the
  // file during parse via a preliminary pass instead.
  void load_file_defaults() {
    if (config_path.empty()) return;
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot read config file: " + config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    cfg = parse_config(buf.str());
  }

  fs::path out_dir() const {
    fs::path dir = effective_output_dir(cfg);
    fs::create_directories(dir);
    return dir;
  }
};

// Peeks at --config before the real parse so that explicit flags override
// file values regardless of order.
void preload_config(const std::vector<std::string>& args, CommonOpts& common) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      common.config_path = args[i + 1];
      common.load_file_defaults();
      return;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      common.config_path = args[i].substr(9);
      common.load_file_defaults();
      return;
    }
  }
}

AugSystem system_from(const CommonOpts& common) {
  return make_aug_system(make_planar_model(common.cfg.model, common.cfg.params),
                         common.cfg.rho, common.cfg.mode);
}

ScalarField scalar_from(const CommonOpts& common) {
  return make_scalar_model(common.cfg.model, common.cfg.poly);
}

Vec2 default_cycle_seed(const std::string& model) {
  return model == "circle" ? Vec2(0.1, 0.0) : Vec2(2.0, 0.0);
}

Vec2 default_unstable_seed(const std::string& model) {
  return model == "circle" ? Vec2(0.1, 0.0) : Vec2(1.0, -0.33);
}

ClosedOrbit stable_cycle(const CommonOpts& common) {
  CycleSearch search;
  search.integ = common.cfg.integration;
  return find_cycle(system_from(common).field, default_cycle_seed(common.cfg.model),
                    Direction::Forward, search);
}

Vec2 trivial_point(const AugSystem& sys) {
  const auto roots = find_trivial_equilibria(sys.field, Vec2(-3, -3), Vec2(3, 3));
  if (roots.empty()) throw std::runtime_error("no planar fixed point in search box");
  return roots.front().z;
}

int cmd_simulate(const CommonOpts& common, double x0, double y0, double q1, double q2,
                 double t_max, const std::string& csv_name) {
  const AugSystem sys = system_from(common);
  const Vec4 s0(x0, y0, q1, q2);

  IntegrationSpec spec = common.cfg.integration;
  spec.t_max = t_max;
  auto rhs = [&](double, const Vec4& s, Vec4& ds) { ds = aug_rhs(sys, s); };
  const Trajectory<4> traj = integrate<4>(rhs, s0, spec);

  const fs::path csv = common.out_dir() / csv_name;
  write_trajectory_csv(csv.string(), traj);

  const ClosedOrbit gamma_s = stable_cycle(common);
  const Vec2 z_star = trivial_point(sys);
  const Outcome outcome =
      classify(sys, s0, gamma_s, z_star, common.cfg.thresholds, common.cfg.integration);

  const Vec4& sf = traj.states.back();
  const double prox = (sf.head<2>() - z_star).norm() + sf.tail<2>().norm();
  std::cout << "trajectory: " << csv.string() << " (" << traj.times.size() << " samples, "
            << to_string(traj.termination) << ")\n";
  std::cout << "final state at t=" << format_g9(traj.times.back()) << ": (" << format_g9(sf[0])
            << ", " << format_g9(sf[1]) << ", " << format_g9(sf[2]) << ", " << format_g9(sf[3])
            << ")\n";
  std::cout << "|z-z*|+|q| = " << format_g9(prox) << "\n";
  std::cout << "outcome: " << to_string(outcome.tag)
            << " (t_decided = " << format_g9(outcome.t_decided) << ")\n";
  return 0;
}

int cmd_fixed_points(const CommonOpts& common, const std::string& csv_name) {
  const AugSystem sys = system_from(common);
  const auto roots = find_trivial_equilibria(sys.field, Vec2(-3, -3), Vec2(3, 3));
  const auto nontrivial = find_nontrivial_equilibria(sys, Vec2(-3, -3), Vec2(3, 3));

  std::vector<EquilibriumReport> all;
  for (const auto& r : roots) {
    all.push_back(trivial_report(sys, r.z));
    std::cout << "trivial equilibrium\n";
    std::cout << "  z  = (" << format_g9(r.z.x()) << ", " << format_g9(r.z.y()) << ")\n";
    std::cout << "  D_F eigenvalues: " << format_g9(r.df_eigs[0].real()) << " + "
              << format_g9(r.df_eigs[0].imag()) << "i, " << format_g9(r.df_eigs[1].real())
              << " + " << format_g9(r.df_eigs[1].imag()) << "i\n";
    const auto& rep = all.back();
    std::cout << "  augmented eigenvalues:";
    for (const auto& e : rep.eigenvalues)
      std::cout << " (" << format_g9(e.real()) << ", " << format_g9(e.imag()) << ")";
    std::cout << "\n  stable_dim = " << rep.stable_dim << "\n";
  }
  for (const auto& rep : nontrivial) {
    all.push_back(rep);
    std::cout << "nontrivial equilibrium\n";
    std::cout << "  z  = (" << format_g9(rep.z.x()) << ", " << format_g9(rep.z.y()) << ")\n";
    std::cout << "  q  = (" << format_g9(rep.q.x()) << ", " << format_g9(rep.q.y()) << ")\n";
    std::cout << "  eigenvalues:";
    for (const auto& e : rep.eigenvalues)
      std::cout << " (" << format_g9(e.real()) << ", " << format_g9(e.imag()) << ")";
    std::cout << "\n  Lambda(0) = " << format_g9(rep.lambda0)
              << ", a3 = " << (rep.a3_satisfied ? "true" : "false")
              << ", stable_dim = " << rep.stable_dim
              << (rep.degenerate ? ", DEGENERATE kernel" : "") << "\n";
  }
  const fs::path csv = common.out_dir() / csv_name;
  write_equilibria_csv(csv.string(), all);
  std::cout << "report: " << csv.string() << "\n";
  return 0;
}

int cmd_check_assumptions(const CommonOpts& common, double kx, double ky) {
  const AugSystem sys = system_from(common);
  const ClosedOrbit gamma_s = stable_cycle(common);
  AuditOptions opt;
  opt.k_lo = Vec2(-kx, -ky);
  opt.k_hi = Vec2(kx, ky);
  const AssumptionReport report = audit(sys, gamma_s, opt);
  for (const auto& c : report.checks)
    std::cout << c.id << ": " << to_string(c.status) << (c.detail.empty() ? "" : " -- ")
              << c.detail << "\n";
  return 0;
}

int cmd_limit_cycle(const CommonOpts& common, const std::string& which,
                    std::optional<double> seed_x, std::optional<double> seed_y) {
  const PlanarField field = make_planar_model(common.cfg.model, common.cfg.params);
  const fs::path dir = common.out_dir();

  auto emit = [&](Direction direction, const char* label, const Vec2& default_seed,
                  const std::string& file) {
    CycleSearch search;
    search.integ = common.cfg.integration;
    if (direction == Direction::Backward) search.transient = 300.0;
    Vec2 seed = default_seed;
    if (seed_x) seed.x() = *seed_x;
    if (seed_y) seed.y() = *seed_y;
    const ClosedOrbit orbit = find_cycle(field, seed, direction, search);
    const fs::path csv = dir / file;
    write_orbit_csv(csv.string(), orbit);
    std::cout << label << ": period = " << format_g9(orbit.period) << ", x in ["
              << format_g9(orbit.x_min()) << ", " << format_g9(orbit.x_max()) << "], "
              << orbit.points.size() << " samples -> " << csv.string() << "\n";
  };

  if (which == "stable" || which == "both")
    emit(Direction::Forward, "stable cycle", default_cycle_seed(common.cfg.model),
         "gamma_s.csv");
  if (which == "unstable" || which == "both")
    emit(Direction::Backward, "unstable cycle", default_unstable_seed(common.cfg.model),
         "gamma_u.csv");
  return 0;
}

int cmd_classify(const CommonOpts& common, const std::string& panel, Vec2 base, GridSpec grid,
                 int jobs, std::string prefix) {
  const AugSystem sys = system_from(common);
  if (!panel.empty()) {
    const auto it = kPanels.find(panel);
    if (it == kPanels.end()) throw CLI::ValidationError("--panel", "expected a..h");
    base = it->second;
    if (prefix == "classify") prefix = "panel_" + panel;
  }
  const ClosedOrbit gamma_s = stable_cycle(common);
  const Vec2 z_star = trivial_point(sys);

  const auto t0 = std::chrono::steady_clock::now();
  const ClassificationMap map = sweep(sys, base, grid, gamma_s, z_star, common.cfg.thresholds,
                                      common.cfg.integration, jobs);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const fs::path dir = common.out_dir();
  write_map_csv((dir / (prefix + ".csv")).string(), map);
  write_map_pgm((dir / (prefix + ".pgm")).string(), map);

  std::size_t counts[4] = {0, 0, 0, 0};
  for (const auto& c : map.cells) counts[int(c.tag)]++;
  std::cout << "base (" << format_g9(base.x()) << ", " << format_g9(base.y()) << "), grid "
            << grid.n1 << "x" << grid.n2 << "\n";
  std::cout << "fixed_point " << counts[0] << ", limit_cycle " << counts[1] << ", diverged "
            << counts[2] << ", undetermined " << counts[3] << " (fraction "
            << format_g9(map.undetermined_fraction()) << ")\n";
  std::cout << "wrote " << (dir / (prefix + ".csv")).string() << ", "
            << (dir / (prefix + ".pgm")).string() << " in " << format_g9(elapsed) << " s\n";
  return 0;
}

int cmd_oned_audit(const CommonOpts& common) {
  const ScalarField f = scalar_from(common);
  const OneDAudit a = audit_1d(f, common.cfg.rho);
  std::cout << "A1': " << (a.a1 ? "PASS" : "FAIL") << "\n";
  std::cout << "A2': " << (a.a2 ? "PASS" : "FAIL") << " (" << a.nontrivial_count
            << " roots of rho+f')\n";
  std::cout << "A3': " << (a.a3 ? "PASS" : "FAIL") << "\n";
  std::cout << "A4': " << (a.a4 ? "PASS" : "FAIL") << "\n";
  if (a.a2)
    std::cout << "D_rho = (" << format_g9(a.d_rho_lo) << ", " << format_g9(a.d_rho_hi)
              << ")\n";
  std::cout << a.detail << "\n";
  return 0;
}

int cmd_oned_sweep(const CommonOpts& common, GridSpec grid, int jobs,
                   const std::string& prefix) {
  const ScalarField f = scalar_from(common);
  const ClassificationMap map =
      sweep_1d(f, common.cfg.rho, grid, common.cfg.thresholds, common.cfg.integration, jobs);
  const fs::path dir = common.out_dir();
  write_map_csv((dir / (prefix + ".csv")).string(), map, "x", "q");
  write_map_pgm((dir / (prefix + ".pgm")).string(), map);
  std::cout << "regions: " << map.connected_region_count()
            << ", undetermined fraction: " << format_g9(map.undetermined_fraction()) << "\n";
  std::cout << "wrote " << (dir / (prefix + ".csv")).string() << ", "
            << (dir / (prefix + ".pgm")).string() << "\n";
  return 0;
}

int cmd_oned_separatrix(const CommonOpts& common, double arc_budget) {
  const ScalarField f = scalar_from(common);
  const auto equilibria = equilibria_1d(f, common.cfg.rho);
  const fs::path dir = common.out_dir();
  int index = 0;
  for (const auto& e : equilibria) {
    if (!e.saddle) continue;
    const Separatrix sep = trace_separatrix(f, common.cfg.rho, e, arc_budget);
    for (int b = 0; b < 2; ++b) {
      const std::string name =
          "separatrix_" + std::to_string(index) + (b == 0 ? "_plus.csv" : "_minus.csv");
      write_polyline_csv((dir / name).string(), sep.branches[b]);
      std::cout << "saddle " << index << " (" << format_g9(e.x) << ", " << format_g9(e.q)
                << ") branch " << (b == 0 ? "+" : "-") << " -> " << (dir / name).string()
                << " (" << sep.branches[b].size() << " points)\n";
    }
    ++index;
  }
  if (index == 0) {
    std::cout << "no saddles found\n";
    return 2;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"negative-discount augmented control toolkit"};
  app.require_subcommand(1);

  CommonOpts common;
  try {
    preload_config(args, common);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }

  // simulate
  double x0 = 1.35, y0 = -0.26, q1 = 0.0, q2 = -5.0, t_max = 200.0;
  std::string sim_csv = "trajectory.csv";
  auto* sim = app.add_subcommand("simulate", "integrate one augmented trajectory");
  common.attach(sim);
  sim->add_option("--x0", x0);
  sim->add_option("--y0", y0);
  sim->add_option("--q1", q1);
  sim->add_option("--q2", q2);
  sim->add_option("--t-max", t_max);
  sim->add_option("--csv", sim_csv, "trajectory CSV filename");

  // classify
  std::string panel;
  double cx0 = 1.35, cy0 = -0.26;
  GridSpec grid2d;
  int jobs = 0;
  std::string prefix = "classify";
  auto* cls = app.add_subcommand("classify", "sweep a (q1,q2) grid of initial costates");
  common.attach(cls);
  cls->add_option("--panel", panel, "named base point a..h");
  cls->add_option("--x0", cx0);
  cls->add_option("--y0", cy0);
  cls->add_option("--q1-min", grid2d.u_min);
  cls->add_option("--q1-max", grid2d.u_max);
  cls->add_option("--q2-min", grid2d.v_min);
  cls->add_option("--q2-max", grid2d.v_max);
  cls->add_option("--n1", grid2d.n1);
  cls->add_option("--n2", grid2d.n2);
  cls->add_option("--jobs", jobs, "worker threads (0 = hardware)");
  cls->add_option("--prefix", prefix, "output file prefix");

  // fixed-points
  std::string fp_csv = "fixed_points.csv";
  auto* fp = app.add_subcommand("fixed-points", "trivial and nontrivial equilibria");
  common.attach(fp);
  fp->add_option("--csv", fp_csv);

  // check-assumptions
  double kx = 3.0, ky = 2.0;
  auto* chk = app.add_subcommand("check-assumptions", "audit A1-A5 and the AA heuristic");
  common.attach(chk);
  chk->add_option("--k-x", kx, "K box half-width in x");
  chk->add_option("--k-y", ky, "K box half-width in y");

  // limit-cycle
  std::string which = "both";
  std::optional<double> seed_x, seed_y;
  auto* lc = app.add_subcommand("limit-cycle", "extract the stable/unstable cycles");
  common.attach(lc);
  lc->add_option("--which", which)->check(CLI::IsMember({"stable", "unstable", "both"}));
  double sx = 0, sy = 0;
  auto* optx = lc->add_option("--seed-x", sx);
  auto* opty = lc->add_option("--seed-y", sy);

  // oned family
  auto* oned = app.add_subcommand("oned", "one-dimensional control system");
  oned->require_subcommand(1);
  auto* oa = oned->add_subcommand("audit", "audit A1'-A4'");
  common.attach(oa);
  GridSpec grid1d{-3.0, 3.0, -4.0, 4.0, 201, 201};
  int jobs1d = 0;
  std::string prefix1d = "oned_map";
  auto* osw = oned->add_subcommand("sweep", "classify the (x,q) plane");
  common.attach(osw);
  osw->add_option("--x-min", grid1d.u_min);
  osw->add_option("--x-max", grid1d.u_max);
  osw->add_option("--q-min", grid1d.v_min);
  osw->add_option("--q-max", grid1d.v_max);
  osw->add_option("--n1", grid1d.n1);
  osw->add_option("--n2", grid1d.n2);
  osw->add_option("--jobs", jobs1d);
  osw->add_option("--prefix", prefix1d);
  double arc_budget = 20.0;
  auto* osep = oned->add_subcommand("separatrix", "trace saddle stable sets");
  common.attach(osep);
  osep->add_option("--arc-budget", arc_budget);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  // default 1D model when using the oned family with the planar default
  auto ensure_scalar_model = [&]() {
    if (!is_scalar_model(common.cfg.model)) common.cfg.model = "double-well-1d";
  };

  try {
    if (sim->parsed()) return cmd_simulate(common, x0, y0, q1, q2, t_max, sim_csv);
    if (cls->parsed()) return cmd_classify(common, panel, Vec2(cx0, cy0), grid2d, jobs, prefix);
    if (fp->parsed()) return cmd_fixed_points(common, fp_csv);
    if (chk->parsed()) return cmd_check_assumptions(common, kx, ky);
    if (lc->parsed()) {
      if (optx->count()) seed_x = sx;
      if (opty->count()) seed_y = sy;
      return cmd_limit_cycle(common, which, seed_x, seed_y);
    }
    if (oned->parsed()) {
      ensure_scalar_model();
      if (oa->parsed()) return cmd_oned_audit(common);
      if (osw->parsed()) return cmd_oned_sweep(common, grid1d, jobs1d, prefix1d);
      if (osep->parsed()) return cmd_oned_separatrix(common, arc_budget);
    }
  } catch (const CLI::ValidationError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  } catch (const ConfigError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  } catch (const std::exception& ex) {
    std::cerr << "numerical failure: " << ex.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace stabctl::cli
