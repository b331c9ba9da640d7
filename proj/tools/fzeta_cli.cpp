#include "fzeta/counts.hpp"
#include "fzeta/cycles.hpp"
#include "fzeta/fractal.hpp"
#include "fzeta/funceq.hpp"
#include "fzeta/zeta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace fzeta;
using nlohmann::json;

constexpr int kExitGuard = 2;
constexpr int kExitConsistency = 3;
constexpr int kOrderCap = 64;

struct RunConfig {
  std::string family = "gasket";
  int levels = 4;
  int order = 8;
  long long budget = 2000000;
  std::string grid_file;
  std::string mode = "exact";
  std::string out_dir = ".";
  double tol = -1;  // negative: subcommand default
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--family", cfg.family, "gasket|vicsek|lindstrom|carpet");
  cmd->add_option("--levels", cfg.levels, "deepest level to build")->check(CLI::Range(1, 16));
  cmd->add_option("--order", cfg.order, "series order M")->check(CLI::Range(1, kOrderCap));
  cmd->add_option("--budget", cfg.budget, "cycle enumeration budget");
  cmd->add_option("--grid", cfg.grid_file, "file of complex points, re,im per line");
  cmd->add_option("--mode", cfg.mode, "exact|float")
      ->check(CLI::IsMember({"exact", "float"}));
  cmd->add_option("--out", cfg.out_dir, "output directory");
  cmd->add_option("--tol", cfg.tol, "tolerance override");
}

std::vector<Complex> read_grid(const RunConfig& cfg, std::vector<Complex> fallback) {
  if (cfg.grid_file.empty()) return fallback;
  std::ifstream in(cfg.grid_file);
  if (!in) throw std::runtime_error("cannot open grid file: " + cfg.grid_file);
  std::vector<Complex> grid;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double re = 0, im = 0;
    if (!(row >> re)) throw std::runtime_error("bad grid line: " + line);
    row >> im;
    grid.emplace_back(re, im);
  }
  return grid;
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  std::filesystem::path p = std::filesystem::path(cfg.out_dir) / name;
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

std::string number(const Rational& r, const RunConfig& cfg) {
  if (cfg.mode == "exact") return rational_string(r);
  std::ostringstream s;
  s.precision(17);
  s << to_double(r);
  return s.str();
}

int cmd_build(const RunConfig& cfg) {
  Exhaustion x = build_exhaustion(parse_family(cfg.family), cfg.levels);
  EulerEstimate euler = euler_characteristic_average(x);
  json levels = json::array();
  for (int n = 1; n <= x.max_level(); ++n) {
    const Graph& g = x.level(n);
    std::ofstream edges =
        open_out(cfg, cfg.family + "_" + std::to_string(n) + ".edges");
    g.write_edge_list(edges);
    long long chi = static_cast<long long>(g.vertex_count()) -
                    static_cast<long long>(g.edge_count());
    levels.push_back({{"level", n},
                      {"V", g.vertex_count()},
                      {"E", g.edge_count()},
                      {"eps", rational_string(x.epsilon[static_cast<std::size_t>(n) - 1])},
                      {"chi", chi}});
    std::cout << "level " << n << ": V=" << g.vertex_count() << " E=" << g.edge_count()
              << " eps=" << rational_string(x.epsilon[static_cast<std::size_t>(n) - 1])
              << " chi/V=" << rational_string(euler.per_level[static_cast<std::size_t>(n) - 1])
              << "\n";
  }
  json doc = {{"schema", 1},
              {"family", cfg.family},
              {"branching", x.branching()},
              {"max_degree", x.max_degree()},
              {"levels", levels}};
  open_out(cfg, cfg.family + "_levels.json") << doc.dump(2) << "\n";
  std::cout << "chi_av estimate (deepest): " << rational_string(euler.deepest) << "\n";
  return 0;
}

int cmd_counts(const RunConfig& cfg) {
  Exhaustion x = build_exhaustion(parse_family(cfg.family), cfg.levels);
  PathCountTable table = path_count_table(x, cfg.order);
  std::ofstream csv = open_out(cfg, cfg.family + "_counts.csv");
  csv << "m,level,tr_Am_num,tr_Am_den,t_m,N_m,err_m\n";
  for (int m = 1; m <= cfg.order; ++m)
    for (std::size_t i = 0; i < table.levels.size(); ++i) {
      int level = table.levels[i];
      Rational tr = table.tr_Am[static_cast<std::size_t>(m)][i];
      csv << m << "," << level << "," << numerator(tr).str() << ","
          << denominator(tr).str() << ","
          << number(table.t_m[static_cast<std::size_t>(m)][i], cfg) << ","
          << number(table.N_m[static_cast<std::size_t>(m)][i], cfg) << ","
          << table.err[static_cast<std::size_t>(m)][i] << "\n";
    }

  // Oracle column: weighted census over G-classes, where the budget allows.
  std::ofstream cmp = open_out(cfg, cfg.family + "_counts_oracle.csv");
  cmp << "m,spectral,oracle,delta,bound,within_bound\n";
  bool consistent = true;
  bool truncated = false;
  int oracle_cap = std::min(cfg.order, 8);
  try {
    auto census = weighted_census(x, oracle_cap, x.max_level(),
                                  static_cast<std::uint64_t>(cfg.budget));
    for (const auto& row : census) {
      double delta = std::abs(to_double(table.n_value(row.m) - row.weighted));
      double bound = table.n_err(row.m);
      bool ok = delta <= bound;
      consistent = consistent && ok;
      cmp << row.m << "," << number(table.n_value(row.m), cfg) << ","
          << number(row.weighted, cfg) << "," << delta << "," << bound << ","
          << (ok ? 1 : 0) << "\n";
    }
  } catch (const std::runtime_error& e) {
    truncated = true;
    std::cerr << "oracle truncated: " << e.what() << "\n";
  }
  if (!consistent) {
    std::cerr << "consistency failure: spectral vs oracle beyond bound\n";
    return kExitConsistency;
  }
  std::cout << (truncated ? "counts written (oracle partial)\n" : "counts written\n");
  return 0;
}

int cmd_oracle(const RunConfig& cfg) {
  Exhaustion x = build_exhaustion(parse_family(cfg.family), cfg.levels);
  int cap = std::min(cfg.order, 12);
  auto budget = static_cast<std::uint64_t>(cfg.budget);
  Census census = reduced_cycle_census(x.level(x.max_level()), cap, budget);
  auto weighted = weighted_census(x, cap, x.max_level(), budget);
  std::ofstream csv = open_out(cfg, cfg.family + "_census.csv");
  csv << "m,raw_count,shift_classes,g_classes,weighted_sum_num,weighted_sum_den\n";
  for (const auto& row : weighted) {
    const CensusRow& raw = census.rows[static_cast<std::size_t>(row.m) - 1];
    csv << row.m << "," << raw.raw_reduced << "," << raw.shift_classes << ","
        << row.g_classes << "," << numerator(row.weighted).str() << ","
        << denominator(row.weighted).str() << "\n";
  }
  std::cout << "census written\n";
  return 0;
}

int cmd_zeta(const RunConfig& cfg) {
  Exhaustion x = build_exhaustion(parse_family(cfg.family), cfg.levels);
  DomainGuards guards = domain_guards(x.max_degree());
  double tol = cfg.tol > 0 ? cfg.tol : 1e-3;
  std::vector<Complex> grid = read_grid(cfg, {Complex(0.05, 0)});

  PathCountTable table = path_count_table(x, cfg.order);
  std::vector<Rational> counts(static_cast<std::size_t>(cfg.order) + 1, Rational(0));
  for (int m = 1; m <= cfg.order; ++m) counts[static_cast<std::size_t>(m)] = table.n_value(m);
  RationalSeries z_series = zeta_from_counts(counts, cfg.order);
  if (cfg.mode == "exact") {
    std::ofstream dump = open_out(cfg, cfg.family + "_series.csv");
    dump << "order,num,den\n";
    for (int m = 0; m <= cfg.order; ++m)
      dump << m << "," << rational_string(numerator(z_series[m])) << ","
           << rational_string(denominator(z_series[m])) << "\n";
  }
  ComplexSeries z_float = to_complex(z_series);

  json results = json::array();
  bool any_accepted = false, any_rejected = false;
  double worst_delta = 0;
  for (Complex u : grid) {
    std::vector<Complex> values;
    auto emit = [&](const std::string& method, Complex value, int level, double bound) {
      results.push_back({{"schema", 1},
                         {"u", {u.real(), u.imag()}},
                         {"method", method},
                         {"value", {value.real(), value.imag()}},
                         {"level", level},
                         {"bound", bound}});
      values.push_back(value);
      any_accepted = true;
    };
    if (std::abs(u) < guards.r_series)
      emit("series", z_float.evaluate(u), x.max_level(), guards.r_series);
    else
      any_rejected = true;
    if (std::abs(u) < guards.r_det) {
      ZetaEvaluation det = det_formula_zeta(x, u, x.max_level());
      emit(det.method, det.value, det.level, det.bound);
    } else {
      any_rejected = true;
    }
    RegularityReport reg = detect_regularity(x);
    if (reg.essentially_regular && omega_membership(u, reg.q)) {
      RegularEvaluator ev = make_regular_evaluator(x, x.max_level());
      emit("continuation", ev.zeta(u), x.max_level(), 0.0);
    } else {
      any_rejected = true;
    }
    double delta = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
      for (std::size_t j = i + 1; j < values.size(); ++j)
        delta = std::max(delta, std::abs(values[i] - values[j]));
    if (values.size() > 1) {
      results.push_back({{"schema", 1},
                         {"u", {u.real(), u.imag()}},
                         {"method", "max_pairwise_delta"},
                         {"value", {delta, 0.0}},
                         {"level", x.max_level()},
                         {"bound", tol}});
      worst_delta = std::max(worst_delta, delta);
    }
  }
  open_out(cfg, cfg.family + "_zeta.json") << results.dump(2) << "\n";
  std::cout << "zeta written, max pairwise delta " << worst_delta << "\n";
  if (!any_accepted && any_rejected) return kExitGuard;
  // Series vs determinant agreement is only asserted well inside both guards.
  if (worst_delta > tol) return kExitConsistency;
  return 0;
}

int cmd_funceq(const RunConfig& cfg) {
  Exhaustion x = build_exhaustion(parse_family(cfg.family), cfg.levels);
  RegularityReport reg = detect_regularity(x);
  if (!reg.essentially_regular) {
    std::cerr << "rejected: " << cfg.family << " is not essentially regular\n";
    return kExitGuard;
  }
  double tol = cfg.tol > 0 ? cfg.tol : 1e-8;
  std::vector<Complex> fallback;
  for (double r : {0.08, 0.12})
    for (double a : {std::numbers::pi / 6, -std::numbers::pi / 6, std::numbers::pi / 4,
                     -std::numbers::pi / 4})
      fallback.push_back(std::polar(r, a));
  std::vector<Complex> grid = read_grid(cfg, fallback);

  RegularEvaluator ev = make_regular_evaluator(x, x.max_level());
  std::ofstream csv = open_out(cfg, cfg.family + "_funceq.csv");
  csv << "u_re,u_im,lambda_residual,xi_residual,Xi_residual,tolerance\n";
  bool any_accepted = false, any_rejected = false, ok = true;
  for (Complex u : grid) {
    Complex u_image = 1.0 / (Complex(static_cast<double>(reg.q)) * u);
    if (!omega_membership(u, reg.q) || !omega_membership(u_image, reg.q)) {
      any_rejected = true;
      continue;
    }
    FuncEqResidual r = funceq_residual(ev, u);
    any_accepted = true;
    ok = ok && r.lambda_res < tol && r.xi_res < tol && r.Xi_res < tol;
    csv << u.real() << "," << u.imag() << "," << r.lambda_res << "," << r.xi_res << ","
        << r.Xi_res << "," << tol << "\n";
  }
  if (!any_accepted && any_rejected) return kExitGuard;
  if (!ok) {
    std::cerr << "consistency failure: residual above tolerance\n";
    return kExitConsistency;
  }
  std::cout << "funceq residuals written\n";
  return 0;
}

int cmd_converge(const RunConfig& cfg) {
  Exhaustion x = build_exhaustion(parse_family(cfg.family), cfg.levels);
  DomainGuards guards = domain_guards(x.max_degree());
  std::vector<Complex> grid = read_grid(cfg, {Complex(0.05, 0)});

  PathCountTable table = path_count_table(x, cfg.order);
  std::vector<Rational> counts(static_cast<std::size_t>(cfg.order) + 1, Rational(0));
  for (int m = 1; m <= cfg.order; ++m) counts[static_cast<std::size_t>(m)] = table.n_value(m);
  ComplexSeries z_float = to_complex(zeta_from_counts(counts, cfg.order));

  std::ofstream csv = open_out(cfg, cfg.family + "_converge.csv");
  csv << "u_re,u_im,level,value_re,value_im,gap\n";
  bool any_accepted = false, any_rejected = false, trend_ok = true;
  for (Complex u : grid) {
    if (std::abs(u) >= guards.r_approx) {
      any_rejected = true;
      continue;
    }
    any_accepted = true;
    Complex reference = z_float.evaluate(u);
    auto rows = approx_zeta(x, u, 1, x.max_level(), reference);
    for (const auto& row : rows)
      csv << u.real() << "," << u.imag() << "," << row.level << "," << row.value.real() << ","
          << row.value.imag() << "," << row.dist_to_ref << "\n";
    trend_ok = trend_ok && rows.back().dist_to_ref < rows.front().dist_to_ref;
  }
  if (!any_accepted && any_rejected) return kExitGuard;
  if (!trend_ok) {
    std::cerr << "consistency failure: approximation gap did not shrink\n";
    return kExitConsistency;
  }
  std::cout << "convergence table written\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ihara zeta functions of self-similar fractal graphs"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto* build = app.add_subcommand("build", "materialize exhaustion levels");
  auto* counts = app.add_subcommand("counts", "reduced path counts with bounds");
  auto* zeta = app.add_subcommand("zeta", "evaluate Z by every applicable method");
  auto* funceq = app.add_subcommand("funceq", "functional equation residuals");
  auto* converge = app.add_subcommand("converge", "normalized finite-zeta convergence");
  auto* oracle = app.add_subcommand("oracle", "brute-force cycle census");
  for (auto* cmd : {build, counts, zeta, funceq, converge, oracle}) add_common(cmd, cfg);

  CLI11_PARSE(app, argc, argv);
  try {
    if (build->parsed()) return cmd_build(cfg);
    if (counts->parsed()) return cmd_counts(cfg);
    if (zeta->parsed()) return cmd_zeta(cfg);
    if (funceq->parsed()) return cmd_funceq(cfg);
    if (converge->parsed()) return cmd_converge(cfg);
    if (oracle->parsed()) return cmd_oracle(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::domain_error& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
