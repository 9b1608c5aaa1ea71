// isospec: spectral-gap bounds from ground-state geometry.
//
// Commands:
//   analyze      one model: spectrum, projector invariants, cut bounds
//   sweep        a parameter grid: one series row per grid point
//   search-cuts  minimize expansion / conductance objectives over cuts
//   verify       run the acceptance suite, write verify.json
//   report       print a digest of a previous run's output directory

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "isospec/cuts.hpp"
#include "isospec/errors.hpp"
#include "isospec/models.hpp"
#include "isospec/projector.hpp"
#include "isospec/spectra.hpp"
#include "isospec/verify.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Exit codes, one per error class.
constexpr int kExitOk = 0;
constexpr int kExitUnexpected = 1;
constexpr int kExitSpecError = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitSolver = 4;
constexpr int kExitCheckFailed = 5;

// Full round-trip precision for oracle-exact CSV comparisons.
std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Options {
  std::string model_ref;
  std::string spec_file;
  int k = 4;
  std::size_t dense_cutoff = 4096;
  std::string strategy = "greedy";
  std::string grid;
  std::uint64_t seed = 0;
  std::string out = ".";
};

isospec::ModelInstance load_model(const Options& opt) {
  if (!opt.spec_file.empty()) {
    std::ifstream in(opt.spec_file);
    if (!in) throw isospec::spec_error("cannot open spec file: " + opt.spec_file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return isospec::ModelInstance{"spec-file", isospec::parse_model_spec(buffer.str()), {}, {}};
  }
  if (opt.model_ref.empty())
    throw isospec::spec_error("either --model or --spec-file is required");
  return isospec::parse_model_ref(opt.model_ref);
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw isospec::spec_error("cannot write " + path.string());
  out << content;
}

json config_json(const std::string& command, const Options& opt) {
  return json{{"command", command},
              {"model", opt.model_ref},
              {"spec_file", opt.spec_file},
              {"k", opt.k},
              {"dense_cutoff", opt.dense_cutoff},
              {"strategy", opt.strategy},
              {"grid", opt.grid},
              {"seed", opt.seed},
              {"out", opt.out}};
}

struct Analysis {
  isospec::SparseHermitian h;
  isospec::SpectralSummary summary;
  isospec::GroundDistribution dist;
};

Analysis analyze_model(const isospec::ModelInstance& model, const Options& opt) {
  Analysis a;
  a.h = isospec::build(model.spec);
  isospec::SolverOptions solver;
  solver.k = std::min<int>(opt.k, static_cast<int>(a.h.dim()) - 1);
  solver.dense_cutoff = opt.dense_cutoff;
  solver.seed = opt.seed;
  a.summary = isospec::eigensolve(a.h, solver);
  a.dist = isospec::ground_distribution(a.summary);
  return a;
}

std::string cut_csv_header() {
  return "subset-id,|S|,pi_S,pi_boundary,conductance,bound_thm1,bound_thm3,gap,"
         "slack_thm1,slack_thm3\n";
}

std::string cut_csv_row(const std::string& id, const isospec::CutReport& cut, double gap) {
  std::string row = id;
  row += "," + std::to_string(cut.subset.size());
  for (double v : {cut.pi_S, cut.pi_boundary, cut.conductance, cut.bound_thm1, cut.bound_thm3,
                   gap, cut.slack_thm1, cut.slack_thm3})
    row += "," + num(v);
  return row + "\n";
}

// Cut reports live on the support: restrict S to Omega and require both sides
// of the cut to be non-empty there.
std::optional<isospec::Subset> admissible_on_support(const isospec::Subset& s,
                                                     const isospec::GroundDistribution& dist) {
  std::vector<char> mask(s.dim(), 0);
  std::size_t members = 0;
  for (std::uint32_t i : dist.omega)
    if (s.contains(i)) {
      mask[i] = 1;
      ++members;
    }
  if (members == 0 || members == dist.omega.size()) return std::nullopt;
  return isospec::Subset(std::move(mask));
}

isospec::CutSearchConfig search_config(const isospec::ModelInstance& model, const Options& opt) {
  isospec::CutSearchConfig config;
  config.strategy = isospec::parse_strategy(opt.strategy);
  config.seed = opt.seed;
  const std::string family = isospec::strategy_name(config.strategy);
  if (auto it = model.cut_families.find(family); it != model.cut_families.end())
    config.designated = it->second;
  return config;
}

int run_analyze(const Options& opt) {
  const isospec::ModelInstance model = load_model(opt);
  const Analysis a = analyze_model(model, opt);
  const double gap = a.summary.energies[1] - a.summary.ground_energy();
  const double diam = a.summary.diameter();
  const double slack_tol = -1e-9 * std::max(1.0, diam);

  bool checks_pass = true;
  std::string csv = cut_csv_header();
  auto add_cut = [&](const std::string& id, const isospec::CutReport& cut) {
    csv += cut_csv_row(id, cut, gap);
    if (cut.slack_thm1 < slack_tol || cut.slack_thm3 < slack_tol) checks_pass = false;
  };

  // Designated cut families first, then the searched minima.
  for (const auto& [family, subsets] : model.cut_families)
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      const auto restricted = admissible_on_support(subsets[i], a.dist);
      if (!restricted) continue;
      add_cut(family + "-" + std::to_string(i),
              isospec::cut_report(a.summary, a.dist, a.h, *restricted));
    }
  const isospec::CutSearchConfig config = search_config(model, opt);
  const isospec::CutReport best_exp = isospec::min_expansion(a.summary, a.dist, a.h, config);
  const isospec::CutReport best_cond = isospec::min_conductance(a.summary, a.dist, a.h, config);
  add_cut("min-expansion:" + opt.strategy, best_exp);
  add_cut("min-conductance:" + opt.strategy, best_cond);

  // Projector invariants.
  const isospec::SparseHermitian g = isospec::build_G(a.summary, a.h);
  const isospec::ProjectorOperator p = isospec::build_P(g, a.summary, a.dist);
  const isospec::QuasiMarkovReport qm = isospec::verify_quasi_markov(p);
  const isospec::InterlacingReport inter = isospec::interlacing_check(a.summary, g, a.dist);
  if (!qm.ok || !inter.ok) checks_pass = false;

  json summary{
      {"model", model.name},
      {"params", model.params},
      {"dim", a.h.dim()},
      {"energies", a.summary.energies},
      {"e_max", a.summary.e_max},
      {"gap", gap},
      {"spectral_diameter", diam},
      {"degenerate", a.summary.degenerate},
      {"solver", a.summary.solver == isospec::SolverKind::Dense ? "dense" : "iterative"},
      {"stoquastic", a.h.is_stoquastic()},
      {"irreducible", a.h.is_irreducible()},
      {"projector",
       {{"omega_size", p.size()},
        {"stoquastic", p.stoquastic()},
        {"irreducible", p.irreducible()},
        {"omega_full", p.omega_full()},
        {"gamma", p.gamma()},
        {"max_row_sum_dev", qm.max_row_sum_dev},
        {"max_detailed_balance_dev", qm.max_detailed_balance_dev},
        {"max_stationarity_dev", qm.max_stationarity_dev},
        {"quasi_markov_ok", qm.ok},
        {"interlacing_ok", inter.ok},
        {"delta_P", inter.delta_P}}},
      {"min_expansion",
       {{"expansion", best_exp.expansion}, {"bound_thm1", best_exp.bound_thm1}}},
      {"min_conductance", {{"bound_thm3", best_cond.bound_thm3}}},
      {"checks_pass", checks_pass},
  };

  // Naive-Cheeger diagnostic: meaningful for any model, decisive for the ring.
  {
    const isospec::ViolationReport report =
        isospec::naive_cheeger_violation(a.summary, a.dist, g, p);
    summary["naive_cheeger"] = {
        {"phi", report.phi},
        {"delta_P", report.delta_P},
        {"factor", report.factor},
        {"gap_ratio", report.gap_ratio},
        {"factor_vs_gap_ratio", report.factor_vs_gap_ratio},
        {"violates_vs_delta_P", report.factor > 1.0},
        {"violates_vs_gap_ratio", report.factor_vs_gap_ratio > 1.0}};
  }

  write_file(fs::path(opt.out) / "run-config.json", config_json("analyze", opt).dump(2) + "\n");
  write_file(fs::path(opt.out) / "summary.json", summary.dump(2) + "\n");
  write_file(fs::path(opt.out) / "cuts.csv", csv);
  std::cout << "analyze " << model.name << ": dim=" << a.h.dim() << " gap=" << num(gap)
            << " checks=" << (checks_pass ? "pass" : "FAIL") << "\n";
  return checks_pass ? kExitOk : kExitCheckFailed;
}

// Grid syntax: "name=lo:hi[:step]" (step defaults to 1) or "name=v1,v2,v3".
struct Grid {
  std::string param;
  std::vector<double> values;
};

Grid parse_grid(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw isospec::spec_error("grid must be name=values: " + text);
  Grid grid;
  grid.param = text.substr(0, eq);
  const std::string rhs = text.substr(eq + 1);
  if (rhs.find(',') != std::string::npos) {
    std::stringstream ss(rhs);
    std::string item;
    while (std::getline(ss, item, ',')) grid.values.push_back(std::stod(item));
  } else if (rhs.find(':') != std::string::npos) {
    std::stringstream ss(rhs);
    std::string item;
    std::vector<double> parts;
    while (std::getline(ss, item, ':')) parts.push_back(std::stod(item));
    if (parts.size() < 2 || parts.size() > 3)
      throw isospec::spec_error("range grid needs lo:hi[:step]: " + text);
    const double step = parts.size() == 3 ? parts[2] : 1.0;
    if (step <= 0) throw isospec::spec_error("grid step must be positive");
    for (double v = parts[0]; v <= parts[1] + 1e-12; v += step) grid.values.push_back(v);
  } else {
    grid.values.push_back(std::stod(rhs));
  }
  if (grid.values.empty()) throw isospec::spec_error("empty grid: " + text);
  return grid;
}

// Rebuild the model reference with one parameter replaced.
std::string with_param(const std::string& ref, const std::string& param, double value) {
  const auto colon = ref.find(':');
  const std::string name = colon == std::string::npos ? ref : ref.substr(0, colon);
  std::vector<std::string> kept;
  if (colon != std::string::npos) {
    std::stringstream ss(ref.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ','))
      if (item.rfind(param + "=", 0) != 0) kept.push_back(item);
  }
  // Integer-valued parameters print without a trailing ".0".
  char buf[64];
  if (value == static_cast<double>(static_cast<long long>(value)))
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(value));
  else
    std::snprintf(buf, sizeof(buf), "%.17g", value);
  kept.push_back(param + "=" + buf);
  std::string out = name + ":";
  for (std::size_t i = 0; i < kept.size(); ++i) out += (i ? "," : "") + kept[i];
  return out;
}

int run_sweep(const Options& opt) {
  if (opt.model_ref.empty()) throw isospec::spec_error("sweep needs --model");
  if (opt.grid.empty()) throw isospec::spec_error("sweep needs --grid");
  const Grid grid = parse_grid(opt.grid);

  std::string csv =
      "parameter,value,gap,min_expansion,min_conductance,bound_thm1,bound_thm3,"
      "thm4_lower,error\n";
  for (double value : grid.values) {
    const std::string ref = with_param(opt.model_ref, grid.param, value);
    std::string row = grid.param + "," + num(value);
    try {
      const isospec::ModelInstance model = isospec::parse_model_ref(ref);
      const Analysis a = analyze_model(model, opt);
      const double gap = a.summary.energies[1] - a.summary.ground_energy();
      const isospec::CutSearchConfig config = search_config(model, opt);
      const isospec::CutReport best_exp =
          isospec::min_expansion(a.summary, a.dist, a.h, config);
      const isospec::CutReport best_cond =
          isospec::min_conductance(a.summary, a.dist, a.h, config);
      std::string thm4 = "";
      if (a.h.is_stoquastic() && a.h.is_irreducible())
        thm4 = num(isospec::stoquastic_cheeger_lower(a.summary, a.dist, a.h, best_exp.subset));
      row += "," + num(gap) + "," + num(best_exp.expansion) + "," + num(best_cond.conductance) +
             "," + num(best_exp.bound_thm1) + "," + num(best_cond.bound_thm3) + "," + thm4 + ",";
    } catch (const isospec::solver_error& e) {
      row += ",,,,,,," + std::string(e.what());
    }
    csv += row + "\n";
  }
  write_file(fs::path(opt.out) / "run-config.json", config_json("sweep", opt).dump(2) + "\n");
  write_file(fs::path(opt.out) / "series.csv", csv);
  std::cout << "sweep " << opt.model_ref << " over " << opt.grid << ": " << grid.values.size()
            << " points -> series.csv\n";
  return kExitOk;
}

int run_search_cuts(const Options& opt) {
  const isospec::ModelInstance model = load_model(opt);
  const Analysis a = analyze_model(model, opt);
  const double gap = a.summary.energies[1] - a.summary.ground_energy();
  const isospec::CutSearchConfig config = search_config(model, opt);

  std::string csv = cut_csv_header();
  if (!config.designated.empty())
    for (std::size_t i = 0; i < config.designated.size(); ++i) {
      const auto restricted = admissible_on_support(config.designated[i], a.dist);
      if (!restricted) continue;
      csv += cut_csv_row(opt.strategy + "-" + std::to_string(i),
                         isospec::cut_report(a.summary, a.dist, a.h, *restricted), gap);
    }
  csv += cut_csv_row("min-expansion:" + opt.strategy,
                     isospec::min_expansion(a.summary, a.dist, a.h, config), gap);
  csv += cut_csv_row("min-conductance:" + opt.strategy,
                     isospec::min_conductance(a.summary, a.dist, a.h, config), gap);

  write_file(fs::path(opt.out) / "run-config.json",
             config_json("search-cuts", opt).dump(2) + "\n");
  write_file(fs::path(opt.out) / "cuts.csv", csv);
  std::cout << "search-cuts " << model.name << " (" << opt.strategy << ") -> cuts.csv\n";
  return kExitOk;
}

int run_verify(const Options& opt) {
  const std::vector<isospec::CriterionResult> results = isospec::run_all_criteria(opt.seed);
  json doc = json::array();
  bool all_pass = true;
  for (const auto& r : results) {
    doc.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"metrics", r.metrics},
                   {"notes", r.notes}});
    all_pass = all_pass && r.pass;
    std::cout << "criterion " << r.id << " (" << r.name << "): " << (r.pass ? "PASS" : "FAIL")
              << "\n";
  }
  write_file(fs::path(opt.out) / "run-config.json", config_json("verify", opt).dump(2) + "\n");
  write_file(fs::path(opt.out) / "verify.json", doc.dump(2) + "\n");
  return all_pass ? kExitOk : kExitCheckFailed;
}

int run_report(const Options& opt) {
  const fs::path dir(opt.out);
  bool found = false;
  if (fs::exists(dir / "summary.json")) {
    found = true;
    std::ifstream in(dir / "summary.json");
    json summary = json::parse(in);
    std::cout << "== analysis: " << summary.value("model", std::string("?")) << " ==\n"
              << "dim " << summary["dim"] << ", gap " << summary["gap"] << ", diameter "
              << summary["spectral_diameter"] << ", checks "
              << (summary.value("checks_pass", false) ? "pass" : "FAIL") << "\n";
    if (summary.contains("naive_cheeger"))
      std::cout << "naive Cheeger: factor " << summary["naive_cheeger"]["factor"]
                << ", vs gap ratio " << summary["naive_cheeger"]["factor_vs_gap_ratio"] << "\n";
  }
  for (const char* name : {"cuts.csv", "series.csv"})
    if (fs::exists(dir / name)) {
      found = true;
      std::ifstream in(dir / name);
      std::cout << "== " << name << " ==\n" << in.rdbuf();
    }
  if (fs::exists(dir / "verify.json")) {
    found = true;
    std::ifstream in(dir / "verify.json");
    json doc = json::parse(in);
    std::cout << "== verification ==\n";
    for (const auto& r : doc)
      std::cout << "criterion " << r["id"] << " (" << r["name"].get<std::string>()
                << "): " << (r["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
  }
  if (!found) throw isospec::spec_error("no report artifacts in " + opt.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral-gap bounds from ground-state geometry"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--model", opt.model_ref, "model reference, e.g. tim:n=8,gamma=0.5");
    cmd->add_option("--spec-file", opt.spec_file, "JSON model-spec file");
    cmd->add_option("--k", opt.k, "number of low eigenvalues");
    cmd->add_option("--dense-cutoff", opt.dense_cutoff, "dense solver dimension cutoff");
    cmd->add_option("--strategy", opt.strategy, "cut search strategy");
    cmd->add_option("--grid", opt.grid, "sweep grid, name=lo:hi[:step] or name=v1,v2,...");
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--out", opt.out, "output directory");
  };
  CLI::App* analyze = app.add_subcommand("analyze", "analyze one model");
  CLI::App* sweep = app.add_subcommand("sweep", "sweep a parameter grid");
  CLI::App* search = app.add_subcommand("search-cuts", "search for minimizing cuts");
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
  CLI::App* report = app.add_subcommand("report", "print a digest of a run directory");
  for (CLI::App* cmd : {analyze, sweep, search, verify, report}) add_common(cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return run_analyze(opt);
    if (sweep->parsed()) return run_sweep(opt);
    if (search->parsed()) return run_search_cuts(opt);
    if (verify->parsed()) return run_verify(opt);
    if (report->parsed()) return run_report(opt);
  } catch (const isospec::spec_error& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kExitSpecError;
  } catch (const isospec::solver_error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const isospec::precondition_error& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnexpected;
  }
  return kExitUnexpected;
}
