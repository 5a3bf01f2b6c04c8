// oscspec command line: solve / sweep / verify / trajectory.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oscspec/exact.hpp"
#include "oscspec/functionals.hpp"
#include "oscspec/io.hpp"
#include "oscspec/model.hpp"
#include "oscspec/oscillator.hpp"
#include "oscspec/spectral.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPartial = 2;

constexpr double kVerifyTolerance = 1e-5;

struct Options {
  std::string potential = "harmonic";
  double omega0 = 0.0;
  bool omega0_set = false;
  double well_width = 0.0;
  std::string file;
  std::size_t levels = 10;
  double energy = 0.0;
  double emin = 0.0, emax = 0.0;
  std::size_t samples = 101;
  double hbar = 1.0, mass = 1.0;
  double xmin = -12.0, xmax = 12.0;
  bool xmin_set = false, xmax_set = false;
  std::size_t points = 24001;
  std::string convention = "faithful";
  double tol_e = 1e-10;
  std::string out;
  std::string trajectory_prefix;
  std::string config_path;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--potential", o.potential, "harmonic|well|tabulated")
      ->check(CLI::IsMember({"harmonic", "well", "tabulated"}));
  cmd->add_option("--omega0", o.omega0, "harmonic frequency");
  cmd->add_option("--well-width", o.well_width, "infinite well width");
  cmd->add_option("--file", o.file, "tabulated potential CSV (x,V)");
  cmd->add_option("--hbar", o.hbar)->check(CLI::PositiveNumber);
  cmd->add_option("--mass", o.mass)->check(CLI::PositiveNumber);
  cmd->add_option("--xmin", o.xmin);
  cmd->add_option("--xmax", o.xmax);
  cmd->add_option("--points", o.points)->check(CLI::Range(std::size_t{3}, std::size_t{100000000}));
  cmd->add_option("--convention", o.convention)
      ->check(CLI::IsMember({"faithful", "paper"}));
  cmd->add_option("--tol-e", o.tol_e)->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "output path");
  cmd->add_option("--config", o.config_path,
                  "flat key=value config file; command-line flags override");
}

// Flat key=value config support.  --config is handled before CLI11 sees the
// command line: each file key becomes a "--key value" pair appended to the
// arguments, skipped when the flag is already present so flags win.
std::vector<std::string> expand_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ValidationError("--config needs a file path");
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
    } else {
      ++i;
    }
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot read config file " + path);
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("config line " + std::to_string(line_no) +
                                 ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw CLI::ValidationError("config line " + std::to_string(line_no) + ": empty key");
    const std::string flag = "--" + key;
    const bool on_cli =
        std::any_of(args.begin(), args.end(), [&](const std::string& a) {
          return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    if (on_cli) continue;
    args.push_back(flag);
    args.push_back(value);
  }
  return args;
}

oscspec::SolverSetup build_setup(const Options& o, const CLI::App* cmd) {
  oscspec::SolverSetup setup;
  setup.constants = oscspec::PhysicalConstants(o.hbar, o.mass);

  if (o.potential == "harmonic") {
    if (cmd->count("--omega0") == 0)
      throw CLI::ValidationError("--omega0 is required for the harmonic potential");
    setup.potential = oscspec::Harmonic{o.omega0};
  } else if (o.potential == "well") {
    if (cmd->count("--well-width") == 0 || !(o.well_width > 0.0))
      throw CLI::ValidationError("--well-width > 0 is required for the well potential");
    setup.potential = oscspec::InfiniteWell{o.well_width};
  } else {
    if (o.file.empty())
      throw CLI::ValidationError("--file is required for a tabulated potential");
    try {
      setup.potential = oscspec::load_tabulated_csv(o.file);
    } catch (const oscspec::ParseError&) {
      throw;
    } catch (const std::runtime_error& e) {
      throw CLI::ValidationError(e.what());
    }
  }

  double xmin = o.xmin, xmax = o.xmax;
  if (o.potential == "well") {
    // the well is posed on [0, width]; only override when asked explicitly
    if (cmd->count("--xmin") == 0) xmin = 0.0;
    if (cmd->count("--xmax") == 0) xmax = o.well_width;
  }
  setup.grid = oscspec::Grid(xmin, xmax, o.points);
  setup.convention = o.convention == "paper" ? oscspec::Convention::PaperEq11
                                             : oscspec::Convention::Faithful;
  setup.tol_energy = o.tol_e;
  return setup;
}

int cmd_solve(const Options& o, const CLI::App* cmd) {
  if (o.levels < 1) {
    std::cerr << "error: --levels must be >= 1\n";
    return kExitUsage;
  }
  const oscspec::SolverSetup setup = build_setup(o, cmd);

  std::vector<oscspec::Eigenpair> levels;
  std::vector<std::string> failures;
  for (std::size_t n = 0; n < o.levels; ++n) {
    try {
      levels.push_back(oscspec::find_eigenvalue(n, setup));
    } catch (const std::exception& e) {
      failures.push_back("level " + std::to_string(n) + ": " + e.what());
    }
  }

  std::printf("%4s %18s %6s %13s %13s\n", "n", "energy", "nodes", "norm_resid",
              "mismatch");
  for (const auto& p : levels)
    std::printf("%4zu %18.12f %6zu %13.3e %13.3e\n", p.n, p.energy, p.node_count,
                p.norm_residual, p.mismatch_residual);
  for (const auto& f : failures) std::cerr << "failed: " << f << "\n";

  const std::string path = o.out.empty() ? "spectrum.json" : o.out;
  std::ofstream js(path, std::ios::binary);
  if (!js) {
    std::cerr << "error: cannot write " << path << "\n";
    return kExitUsage;
  }
  js << oscspec::spectrum_to_json(levels, setup);

  if (!o.trajectory_prefix.empty()) {
    for (const auto& p : levels) {
      const auto profile = oscspec::frequency_profile(
          setup.constants, setup.potential, p.energy, p.trajectory.grid, setup.convention);
      oscspec::export_trajectory_csv(
          p.trajectory, profile,
          o.trajectory_prefix + "level" + std::to_string(p.n) + ".csv");
    }
  }
  return failures.empty() ? kExitOk : kExitPartial;
}

int cmd_sweep(const Options& o, const CLI::App* cmd) {
  if (!(o.emin < o.emax)) {
    std::cerr << "error: need --emin < --emax\n";
    return kExitUsage;
  }
  if (o.samples < 2) {
    std::cerr << "error: need --samples >= 2\n";
    return kExitUsage;
  }
  const oscspec::SolverSetup setup = build_setup(o, cmd);
  const auto reports = oscspec::sweep_mismatch(o.emin, o.emax, o.samples, setup);
  if (o.out.empty()) {
    oscspec::write_sweep_csv(reports, std::cout);
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << o.out << "\n";
      return kExitUsage;
    }
    oscspec::write_sweep_csv(reports, f);
  }
  for (const auto& r : reports)
    if (r.error) return kExitPartial;
  return kExitOk;
}

int cmd_verify(const Options& o, const CLI::App* cmd) {
  if (cmd->count("--omega0") == 0) {
    std::cerr << "error: --omega0 is required for verify\n";
    return kExitUsage;
  }
  const oscspec::PhysicalConstants constants(o.hbar, o.mass);
  const oscspec::Grid grid(o.xmin, o.xmax, o.points);
  const bool strict_paper = o.convention == "paper";

  std::vector<oscspec::ReverseDirectionReport> reports;
  for (std::size_t n = 0; n < o.levels; ++n)
    reports.push_back(oscspec::verify_reverse_direction(n, constants, o.omega0, grid));

  if (o.out.empty()) {
    oscspec::write_verify_csv(reports, std::cout);
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << o.out << "\n";
      return kExitUsage;
    }
    oscspec::write_verify_csv(reports, f);
  }

  for (const auto& r : reports) {
    const double checked = strict_paper ? r.residual_paper : r.residual_faithful;
    if (!(checked <= kVerifyTolerance)) {
      std::cerr << "residual above tolerance at n=" << r.n << ": "
                << oscspec::format_double(checked) << "\n";
      return kExitPartial;
    }
  }
  return kExitOk;
}

int cmd_trajectory(const Options& o, const CLI::App* cmd) {
  if (cmd->count("--energy") == 0) {
    std::cerr << "error: --energy is required\n";
    return kExitUsage;
  }
  const oscspec::SolverSetup setup = build_setup(o, cmd);
  try {
    const double v_lo =
        oscspec::evaluate_potential(setup.potential, setup.constants, setup.grid.x_min);
    const double v_hi =
        oscspec::evaluate_potential(setup.potential, setup.constants, setup.grid.x_max);
    if (!(v_lo > o.energy) || !(v_hi > o.energy)) {
      std::cerr << "error: grid ends are not classically forbidden at this energy\n";
      return kExitUsage;
    }
    const auto profile = oscspec::frequency_profile(setup.constants, setup.potential,
                                                    o.energy, setup.grid, setup.convention);
    const bool any_allowed =
        std::any_of(profile.omega_sq.begin(), profile.omega_sq.end(),
                    [](double w2) { return w2 >= 0.0; });
    if (!any_allowed) {
      std::cerr << "error: no classically allowed region at this energy\n";
      return kExitUsage;
    }
    const double decay = std::sqrt(std::max(-profile.omega_sq.front(), 0.0));
    const auto traj = oscspec::integrate(
        profile, {0, 1.0, decay, oscspec::Direction::LeftToRight});

    double interior = 0.0, boundary = std::abs(traj.psi.back());
    for (std::size_t i = 0; i < traj.grid.n_points; ++i)
      if (profile.omega_sq[i] > 0.0) interior = std::max(interior, std::abs(traj.psi[i]));
    if (interior == 0.0) interior = 1.0;
    std::printf("rescale_exponent=%d boundary_over_interior=%.6e\n",
                traj.rescale_exponent, boundary / interior);

    const std::string path = o.out.empty() ? "trajectory.csv" : o.out;
    oscspec::export_trajectory_csv(traj, profile, path);
    return kExitOk;
  } catch (const oscspec::IntegrationError& e) {
    std::cerr << "integration failure: " << e.what() << "\n";
    return kExitPartial;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral solver for 1-D Schrodinger operators via classical "
               "oscillator trajectories"};
  app.require_subcommand(1);

  Options o;
  CLI::App* solve = app.add_subcommand("solve", "converge the lowest k levels");
  add_common(solve, o);
  solve->add_option("--levels", o.levels, "number of levels");
  solve->add_option("--write-trajectories", o.trajectory_prefix,
                    "write per-level trajectory CSVs with this prefix");

  CLI::App* sweep = app.add_subcommand("sweep", "shooting function over an energy range");
  add_common(sweep, o);
  sweep->add_option("--emin", o.emin)->required();
  sweep->add_option("--emax", o.emax)->required();
  sweep->add_option("--samples", o.samples);

  CLI::App* verify =
      app.add_subcommand("verify", "check closed-form eigenfunctions against the "
                                   "classical oscillator equation");
  add_common(verify, o);
  verify->add_option("--levels", o.levels);

  CLI::App* trajectory =
      app.add_subcommand("trajectory", "integrate one classical trajectory at a "
                                       "fixed energy");
  add_common(trajectory, o);
  trajectory->add_option("--energy", o.energy)->required();

  o.levels = 10;
  try {
    std::vector<std::string> args = expand_config_args(argc, argv);
    std::reverse(args.begin(), args.end());  // CLI11 vector overload wants reversed args
    app.parse(args);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve->parsed()) {
      if (solve->count("--levels") == 0) o.levels = 10;
      return cmd_solve(o, solve);
    }
    if (sweep->parsed()) return cmd_sweep(o, sweep);
    if (verify->parsed()) {
      if (verify->count("--levels") == 0) o.levels = 6;
      return cmd_verify(o, verify);
    }
    if (trajectory->parsed()) return cmd_trajectory(o, trajectory);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const oscspec::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPartial;
  }
  return kExitUsage;
}
