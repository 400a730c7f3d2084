// SPDX-License-Identifier: Apache-2.0
//
// Command line driver for the experiments. Each subcommand writes one CSV.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "debye/errors.hpp"
#include "debye/experiments.hpp"

using namespace debye;

namespace
{

struct Options
{
  std::string config, geometry, out, modes, omega_list, tc;
  int order = 0, nodes = 0;
};

std::vector<int> parse_modes(const std::string &s)
{
  const auto dots = s.find("..");
  try
  {
    if (dots == std::string::npos)
    {
      return {std::stoi(s)};
    }
    const int a = std::stoi(s.substr(0, dots)), b = std::stoi(s.substr(dots + 2));
    if (b < a)
    {
      throw ConfigError("--modes: empty range " + s);
    }
    std::vector<int> m;
    for (int i = a; i <= b; i++)
    {
      m.push_back(i);
    }
    return m;
  }
  catch (const std::logic_error &)
  {
    throw ConfigError("--modes expects a or a..b, got '" + s + "'");
  }
}

std::vector<double> parse_list(const std::string &s, const std::string &flag)
{
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    try
    {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size())
      {
        throw std::invalid_argument(item);
      }
    }
    catch (const std::logic_error &)
    {
      throw ConfigError(flag + ": cannot parse '" + item + "'");
    }
  }
  if (v.empty())
  {
    throw ConfigError(flag + " is empty");
  }
  return v;
}

std::vector<double> logspace(double a, double b, int n)
{
  std::vector<double> v;
  for (int i = 0; i < n; i++)
  {
    v.push_back(std::pow(10.0, a + (b - a) * i / (n - 1)));
  }
  return v;
}

std::vector<double> linspace(double a, double b, int n)
{
  std::vector<double> v;
  for (int i = 0; i < n; i++)
  {
    v.push_back(a + (b - a) * i / (n - 1));
  }
  return v;
}

// Config file first, then flags on top. `omegas` and `tcs` are the subcommand defaults,
// used when neither the file nor the flags give a list.
ExperimentConfig resolve(const Options &o, const std::string &experiment,
                         const std::vector<double> &omegas, const std::vector<double> &tcs = {})
{
  ExperimentConfig c;
  bool have_omegas = false, have_tcs = false;
  if (!o.config.empty())
  {
    c = load_config(o.config);
    have_omegas = have_tcs = true;
  }
  c.experiment = experiment;
  if (!have_omegas && !omegas.empty())
  {
    c.omegas = omegas;
  }
  if (!have_tcs && !tcs.empty())
  {
    c.tc_list = tcs;
  }
  if (!o.geometry.empty())
  {
    c.geometry = o.geometry;
  }
  if (!o.modes.empty())
  {
    c.modes = parse_modes(o.modes);
  }
  if (!o.omega_list.empty())
  {
    c.omegas = parse_list(o.omega_list, "--omega-list");
  }
  if (!o.tc.empty())
  {
    const std::vector<double> t = parse_list(o.tc, "--tc");
    c.tc = t.front();
    c.tc_list = t;
  }
  if (o.order)
  {
    c.order = o.order;
  }
  if (o.nodes)
  {
    c.nodes = o.nodes;
  }
  if (!o.out.empty())
  {
    c.out = o.out;
  }
  if (c.out.empty())
  {
    c.out = experiment + ".csv";
  }
  return c;
}

void append(std::vector<std::string> &row, const std::vector<std::string> &more)
{
  row.insert(row.end(), more.begin(), more.end());
}

std::vector<std::string> complex_header(const std::string &name)
{
  return {name + "_re", name + "_im"};
}

int solve_dielectric(const Options &o)
{
  const ExperimentConfig cfg = resolve(o, "solve-dielectric", {1.0});
  const SurfaceGrid grid = experiment_grid(cfg);
  std::vector<std::string> header{"mode", "omega", "node", "t"};
  for (const char *f : {"r1", "q1", "r0", "q0"})
  {
    append(header, complex_header(f));
  }
  CsvWriter csv(cfg.out, header, cfg);
  for (int mode : cfg.modes)
  {
    for (double omega : cfg.omegas)
    {
      ExperimentConfig one = cfg;
      one.modes = {mode};
      one.omegas = {omega};
      const auto [sol, row] = solve_manufactured_dielectric(one);
      for (int i = 0; i < grid.n_nodes; i++)
      {
        std::vector<std::string> r{CsvWriter::num(mode), CsvWriter::num(omega),
                                   CsvWriter::num(i), CsvWriter::num(grid.t(i))};
        for (const CVector *v : {&sol.r1, &sol.q1, &sol.r0, &sol.q0})
        {
          append(r, CsvWriter::complex((*v)[i]));
        }
        csv.row(r);
      }
      std::printf("mode %d omega %.6g: error exterior %.3e interior %.3e, condition %.4g\n",
                  mode, omega, row.err_exterior, row.err_interior, row.condition);
    }
  }
  return 0;
}

int solve_pec(const Options &o)
{
  const ExperimentConfig cfg = resolve(o, "solve-pec", {1.0});
  const SurfaceGrid grid = experiment_grid(cfg);
  std::vector<std::string> header{"mode", "omega", "node", "t"};
  append(header, complex_header("r"));
  append(header, complex_header("q"));
  CsvWriter csv(cfg.out, header, cfg);
  for (int mode : cfg.modes)
  {
    for (double omega : cfg.omegas)
    {
      ExperimentConfig one = cfg;
      one.modes = {mode};
      one.omegas = {omega};
      const auto [sol, row] = solve_manufactured_pec(one);
      for (int i = 0; i < grid.n_nodes; i++)
      {
        std::vector<std::string> r{CsvWriter::num(mode), CsvWriter::num(omega),
                                   CsvWriter::num(i), CsvWriter::num(grid.t(i))};
        append(r, CsvWriter::complex(sol.r[i]));
        append(r, CsvWriter::complex(sol.q[i]));
        csv.row(r);
      }
      std::printf("mode %d omega %.6g: error exterior %.3e, condition %.4g, residual %.2e\n",
                  mode, omega, row.err_exterior, row.condition, row.residual);
    }
  }
  return 0;
}

int sweep_accuracy(const Options &o)
{
  const ExperimentConfig cfg = resolve(o, "sweep-accuracy", logspace(-6.0, 0.0, 7));
  CsvWriter csv(cfg.out,
                {"mode", "omega", "err_exterior", "err_interior", "condition", "residual"}, cfg);
  for (const AccuracyRow &r : run_manufactured(cfg))
  {
    csv.row({CsvWriter::num(r.mode), CsvWriter::num(r.omega), CsvWriter::num(r.err_exterior),
             CsvWriter::num(r.err_interior), CsvWriter::num(r.condition),
             CsvWriter::num(r.residual)});
    std::printf("mode %d omega %.6g: error exterior %.3e interior %.3e\n", r.mode, r.omega,
                r.err_exterior, r.err_interior);
  }
  return 0;
}

void write_cells(const ExperimentConfig &cfg, const std::vector<ConditionCell> &cells)
{
  CsvWriter csv(cfg.out, {"tc", "omega", "mode", "condition", "flagged"}, cfg);
  for (const ConditionCell &c : cells)
  {
    csv.row({CsvWriter::num(c.tc), CsvWriter::num(c.omega), CsvWriter::num(c.mode),
             CsvWriter::num(c.condition), CsvWriter::num(c.flagged ? 1 : 0)});
  }
}

int sweep_clutch(const Options &o)
{
  const ExperimentConfig cfg = resolve(o, "sweep-clutch", logspace(-4.0, 0.0, 9),
                                       linspace(0.0, std::numbers::pi, 13));
  const std::vector<ConditionCell> cells = run_clutch_sweep(cfg);
  write_cells(cfg, cells);
  std::printf("%zu cells written to %s\n", cells.size(), cfg.out.c_str());
  return 0;
}

int scan_resonance(const Options &o)
{
  const ExperimentConfig cfg = resolve(o, "scan-resonance", linspace(0.5, 5.0, 50));
  const std::vector<ConditionCell> cells = run_resonance_scan(cfg);
  write_cells(cfg, cells);
  std::vector<double> c;
  for (const ConditionCell &x : cells)
  {
    c.push_back(x.condition);
  }
  std::sort(c.begin(), c.end());
  std::printf("%zu frequencies: condition median %.4g, max %.4g\n", c.size(), c[c.size() / 2],
              c.back());
  return 0;
}

int run_selftest(const Options &o)
{
  const int nodes = o.nodes ? o.nodes : 100;
  int failed = 0;
  for (const CheckResult &r : selftest(nodes))
  {
    std::printf("%-4s %-13s %-34s measured %.3e threshold %.1e\n", r.passed ? "ok" : "FAIL",
                r.module.c_str(), r.id.c_str(), r.measured, r.threshold);
    failed += r.passed ? 0 : 1;
  }
  std::printf("%s\n", failed ? "selftest FAILED" : "selftest passed");
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Debye-source Maxwell solver for tori of revolution"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App *s, bool sweep)
  {
    s->add_option("--config", o.config, "JSON experiment config")->check(CLI::ExistingFile);
    s->add_option("--geometry", o.geometry, "JSON geometry file")->check(CLI::ExistingFile);
    s->add_option("--out", o.out, "output CSV path");
    s->add_option("--modes", o.modes, "azimuthal modes, a or a..b");
    s->add_option("--omega-list", o.omega_list, "comma-separated frequencies");
    s->add_option("--tc", o.tc, sweep ? "comma-separated clutching parameters"
                                      : "clutching parameter");
    s->add_option("--order", o.order, "Alpert correction order")->check(CLI::IsMember({8, 16}));
    s->add_option("--nodes", o.nodes, "nodes on the generating curve")
      ->check(CLI::PositiveNumber);
  };

  struct Command
  {
    const char *name, *help;
    int (*run)(const Options &);
    bool sweep;
  };
  const Command commands[] = {
    {"solve-dielectric", "solve the manufactured dielectric problem, write the densities",
     solve_dielectric, false},
    {"solve-pec", "solve the manufactured PEC problem, write the densities", solve_pec, false},
    {"sweep-clutch", "condition numbers over the clutching parameter and frequency",
     sweep_clutch, true},
    {"sweep-accuracy", "manufactured-solution errors over frequency", sweep_accuracy, false},
    {"scan-resonance", "condition numbers over a frequency band", scan_resonance, false},
  };
  int (*chosen)(const Options &) = nullptr;
  for (const Command &c : commands)
  {
    CLI::App *s = app.add_subcommand(c.name, c.help);
    add_common(s, c.sweep);
    s->callback([&chosen, run = c.run] { chosen = run; });
  }
  CLI::App *st = app.add_subcommand("selftest", "invariant checks of every module");
  st->add_option("--nodes", o.nodes, "nodes on the generating curve")->check(CLI::PositiveNumber);
  st->callback([&chosen] { chosen = run_selftest; });

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    // --help exits 0; every usage error shares the status of a bad config.
    return app.exit(e) == 0 ? 0 : 2;
  }
  try
  {
    return chosen(o);
  }
  catch (const std::exception &e)
  {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
