// yukawa: perturbative Yukawa spectra, table reproduction and oracle checks.
//
//   yukawa state --regime table1 --g 0.01 --n 0 --ell 0 --oracle
//   yukawa table 2 --oracle --format csv
//   yukawa sweep --regime table23 --A 8,16,24 --n 0,1 --ell 0,1
//   yukawa wavefunction --regime table1 --g 0.02 --rmax 20 --points 200

#include <cmath>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "yukawa/yukawa.hpp"

namespace {

using yukawa::report::ExitStatus;

struct Common {
  std::string regime = "table1";
  std::optional<double> hbar;
  std::optional<double> mass;
  std::vector<double> coupling;
  std::vector<double> screening;
  std::vector<double> g;
  std::vector<int> n{0};
  std::vector<int> ell{0};
  bool oracle = false;
  std::string format = "human";
  std::optional<double> tol;
};

void add_physics(CLI::App* cmd, Common& c, bool lists) {
  cmd->add_option("--regime", c.regime, "unit regime: table1 (hbar=m=1, A=sqrt2), table23 (hbar=1, m=1/2), custom")
      ->check(CLI::IsMember({"table1", "table23", "custom"}));
  cmd->add_option("--hbar", c.hbar, "hbar (custom regime)");
  cmd->add_option("--mass", c.mass, "reduced mass (custom regime)");
  auto* a = cmd->add_option("--A", c.coupling, "coupling strength A");
  auto* al = cmd->add_option("--alpha", c.screening, "screening parameter alpha");
  auto* g = cmd->add_option("--g", c.g, "reduced screening g = alpha / A (table1 regime)");
  auto* n = cmd->add_option("--n", c.n, "radial quantum number (node count)");
  auto* l = cmd->add_option("--ell", c.ell, "orbital angular momentum");
  al->excludes(g);
  for (auto* o : {a, al, g, n, l}) {
    if (lists) {
      o->delimiter(',');
    } else {
      o->expected(1);
    }
  }
}

void add_output(CLI::App* cmd, Common& c) {
  cmd->add_flag("--oracle", c.oracle, "also solve each state with the Numerov oracle");
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"human", "csv", "json"}));
  cmd->add_option("--tol", c.tol, "absolute tolerance on deviations from printed values");
}

struct Resolved {
  yukawa::report::UnitRegime regime;
  double coupling;
  double screening;
  std::optional<double> g;
};

std::vector<Resolved> resolve(const Common& c) {
  using yukawa::report::UnitRegime;
  std::vector<Resolved> out;
  if (c.regime == "table1") {
    if (!c.coupling.empty()) throw std::invalid_argument("--A is fixed to sqrt(2) in the table1 regime");
    if (c.hbar || c.mass) throw std::invalid_argument("--hbar/--mass are fixed in the table1 regime");
    if (!c.g.empty()) {
      for (double g : c.g) out.push_back({UnitRegime::table1(), yukawa::report::kTable1Coupling,
                                          g * yukawa::report::kTable1Coupling, g});
    } else if (!c.screening.empty()) {
      for (double a : c.screening) out.push_back({UnitRegime::table1(), yukawa::report::kTable1Coupling, a, {}});
    } else {
      throw std::invalid_argument("table1 regime needs --g or --alpha");
    }
    return out;
  }
  if (!c.g.empty()) throw std::invalid_argument("--g only applies to the table1 regime");
  if (c.coupling.empty()) throw std::invalid_argument("--A is required in the " + c.regime + " regime");
  UnitRegime regime = UnitRegime::table23();
  std::vector<double> alphas = c.screening;
  if (c.regime == "table23") {
    if (c.hbar || c.mass) throw std::invalid_argument("--hbar/--mass are fixed in the table23 regime");
    if (alphas.empty()) alphas.push_back(yukawa::report::kTable23Screening);
  } else {
    if (!c.hbar || !c.mass) throw std::invalid_argument("custom regime needs --hbar and --mass");
    if (alphas.empty()) throw std::invalid_argument("custom regime needs --alpha");
    regime = UnitRegime::custom(*c.hbar, *c.mass);
  }
  for (double a : c.coupling) {
    for (double al : alphas) out.push_back({regime, a, al, {}});
  }
  return out;
}

std::vector<yukawa::report::ComparisonRow> compute_grid(const Common& c) {
  std::vector<yukawa::report::ComparisonRow> rows;
  for (const auto& p : resolve(c)) {
    for (int n : c.n) {
      for (int ell : c.ell) {
        auto row = yukawa::report::compute_state(p.regime, p.coupling, p.screening, yukawa::StateLabel(n, ell),
                                                 c.oracle);
        row.g = p.g;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

int finish(const std::vector<yukawa::report::ComparisonRow>& rows, const Common& c) {
  std::cout << yukawa::report::emit(rows, yukawa::report::parse_format(c.format));
  const auto status = yukawa::report::verdict(rows, c.oracle, c.tol);
  for (const auto& r : rows) {
    if (c.oracle && r.oracle_error) std::cerr << "oracle failure: " << r.state << ": " << *r.oracle_error << '\n';
    if (!yukawa::report::present_within_tolerance(r, c.tol)) {
      std::cerr << "deviation: " << r.state << " computed " << r.perturbative.total << " printed "
                << r.ref_present->text << '\n';
    }
  }
  return static_cast<int>(status);
}

int run_wavefunction(const Common& c, double rmax, int points) {
  if (!(rmax > 0.0) || points < 2) throw std::invalid_argument("need --rmax > 0 and --points >= 2");
  const auto params = resolve(c);
  if (params.size() != 1 || c.n.size() != 1 || c.ell.size() != 1) {
    throw std::invalid_argument("wavefunction takes a single state");
  }
  const auto& p = params.front();
  const yukawa::PhysicalContext ctx(p.regime.hbar, p.regime.mass, p.coupling, p.screening);
  const yukawa::StateLabel s(c.n.front(), c.ell.front());
  const auto orbital = yukawa::chi(ctx, s);
  std::optional<yukawa::PerturbedWavefunction> psi;
  try {
    psi.emplace(ctx, s);
  } catch (const yukawa::NodePoleError& e) {
    std::cerr << "psi omitted: " << e.what() << '\n';
  }
  std::cout << "r,chi,psi\n";
  for (int i = 0; i < points; ++i) {
    const double r = rmax * i / (points - 1);
    std::cout << yukawa::report::detail::format_double(r) << ','
              << yukawa::report::detail::format_double(orbital(r)) << ','
              << (psi ? yukawa::report::detail::format_double((*psi)(r)) : std::string()) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Yukawa-potential bound states: perturbative energies, table reproduction, Numerov oracle"};
  app.require_subcommand(1);

  Common state_opts;
  auto* state = app.add_subcommand("state", "one state");
  add_physics(state, state_opts, false);
  add_output(state, state_opts);

  Common table_opts;
  int table_id = 1;
  auto* table = app.add_subcommand("table", "reproduce a printed table (1, 2 or 3)");
  table->add_option("id", table_id, "table number")->required()->check(CLI::Range(1, 3));
  add_output(table, table_opts);

  Common sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "grid over comma-separated A, alpha/g, n, ell");
  add_physics(sweep, sweep_opts, true);
  add_output(sweep, sweep_opts);

  Common wf_opts;
  double rmax = 20.0;
  int points = 201;
  auto* wf = app.add_subcommand("wavefunction", "sample chi and psi on a uniform grid (csv)");
  add_physics(wf, wf_opts, false);
  wf->add_option("--rmax", rmax, "outer radius");
  wf->add_option("--points", points, "number of samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ExitStatus::invalid_arguments);
  }

  try {
    if (*state) return finish(compute_grid(state_opts), state_opts);
    if (*sweep) return finish(compute_grid(sweep_opts), sweep_opts);
    if (*table) return finish(yukawa::report::reproduce_table(table_id, table_opts.oracle), table_opts);
    if (*wf) return run_wavefunction(wf_opts, rmax, points);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::invalid_arguments);
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::invalid_arguments);
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::invalid_arguments);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::oracle_failure);
  }
  return static_cast<int>(ExitStatus::invalid_arguments);
}
