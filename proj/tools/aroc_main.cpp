// Command-line front end: `test` runs the pooled-ROC vs AROC bootstrap test
// on a CSV dataset, `curves` emits plot-ready curve estimates, `simulate`
// runs the synthetic level/power study. Every run writes a manifest with the
// fully resolved configuration so it can be reproduced bit for bit.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aroc/aroc.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CsvArgs {
  std::string path;
  std::string status_col;
  std::string marker_col;
  std::string covariate_col;
  std::string positive_label = "1";
  std::string negative_label = "0";
  std::string delimiter = ",";
  bool negate_marker = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--csv", path, "Input CSV file")->required();
    cmd.add_option("--status-col", status_col, "Column with the disease status")->required();
    cmd.add_option("--marker-col", marker_col, "Column with the diagnostic marker")->required();
    cmd.add_option("--covariate-col", covariate_col, "Column with the covariate")->required();
    cmd.add_option("--positive-label", positive_label, "Status label of the diseased rows");
    cmd.add_option("--negative-label", negative_label, "Status label of the healthy rows");
    cmd.add_option("--delimiter", delimiter, "Field delimiter (single character)");
    cmd.add_flag("--negate-marker", negate_marker,
                 "Negate the marker (marker low in the diseased population)");
  }

  aroc::CsvOptions options() const {
    if (delimiter.size() != 1) {
      throw CLI::ValidationError("--delimiter", "must be a single character");
    }
    return aroc::CsvOptions{delimiter[0], positive_label, negative_label, negate_marker};
  }

  json to_json() const {
    return json{{"csv", path},
                {"status_col", status_col},
                {"marker_col", marker_col},
                {"covariate_col", covariate_col},
                {"positive_label", positive_label},
                {"negative_label", negative_label},
                {"delimiter", delimiter},
                {"negate_marker", negate_marker}};
  }
};

aroc::BandwidthPolicy parse_bandwidth(const std::string& spec, bool reselect) {
  aroc::BandwidthPolicy policy;
  policy.reselect_in_bootstrap = reselect;
  if (spec == "auto") return policy;
  if (spec.rfind("fixed:", 0) == 0) {
    const std::string rest = spec.substr(6);
    const auto comma = rest.find(',');
    if (comma == std::string::npos) {
      throw CLI::ValidationError("--bandwidth", "expected fixed:<g_diseased>,<g_healthy>");
    }
    try {
      policy.mode = aroc::BandwidthPolicy::Mode::fixed;
      policy.fixed_diseased = std::stod(rest.substr(0, comma));
      policy.fixed_healthy = std::stod(rest.substr(comma + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--bandwidth", "could not parse fixed bandwidths");
    }
    if (!(policy.fixed_diseased > 0.0 && policy.fixed_healthy > 0.0)) {
      throw CLI::ValidationError("--bandwidth", "bandwidths must be positive");
    }
    return policy;
  }
  throw CLI::ValidationError("--bandwidth", "expected 'auto' or 'fixed:<g_F>,<g_G>'");
}

std::vector<aroc::DistanceKind> parse_distances(const std::string& spec) {
  std::vector<aroc::DistanceKind> kinds;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) kinds.push_back(aroc::distance_from_string(token));
  }
  if (kinds.empty()) throw CLI::ValidationError("--distances", "no distances given");
  return kinds;
}

// Accepts "0.5" as well as "1/2".
double parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const double num = std::stod(s.substr(0, slash));
    const double den = std::stod(s.substr(slash + 1));
    return num / den;
  }
  return std::stod(s);
}

std::vector<double> parse_double_list(const std::string& spec, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    try {
      out.push_back(parse_fraction(token));
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "could not parse '" + token + "'");
    }
  }
  if (out.empty()) throw CLI::ValidationError(flag, "empty list");
  return out;
}

json curve_to_json(const aroc::Curve& c) { return aroc::to_json(c); }

void append_curve_csv(std::ostringstream& os, const std::string& name, const aroc::Curve& c) {
  for (std::size_t k = 0; k < c.size(); ++k) {
    os << name << "," << aroc::detail::format_double(c.grid[k]) << ","
       << aroc::detail::format_double(c.values[k]) << "\n";
  }
}

// ---------------------------------------------------------------------------

int cmd_test(const CsvArgs& csv, double rho, std::size_t bootstrap, const std::string& distances,
             std::size_t grid, const std::string& bandwidth, bool reselect, std::uint64_t seed,
             const std::string& out_dir, const std::string& format, const std::string& kernel,
             unsigned threads) {
  if (bootstrap == 0) throw CLI::ValidationError("--B", "must be >= 1");

  aroc::TestConfig cfg;
  cfg.bootstrap_iterations = bootstrap;
  cfg.split = aroc::SplitConfig{rho, seed};
  cfg.distances = parse_distances(distances);
  cfg.grid_size = grid;
  cfg.kernel = aroc::kernel_from_name(kernel);
  cfg.bandwidth = parse_bandwidth(bandwidth, reselect);
  cfg.master_seed = seed;
  cfg.threads = threads;

  const aroc::StudyDataset data = aroc::read_csv(csv.path, csv.status_col, csv.marker_col,
                                                 csv.covariate_col, csv.options());
  if (data.meta.dropped_rows > 0) {
    std::cerr << "warning: dropped " << data.meta.dropped_rows
              << " rows with missing values\n";
  }

  const aroc::TestResult result = aroc::run_test(data, cfg);

  std::cout << "n_diseased=" << data.diseased.size() << " n_healthy=" << data.healthy.size()
            << " rho=" << rho << " B=" << bootstrap << " seed=" << seed << "\n";
  std::cout << "bandwidths: diseased=" << result.bandwidth_diseased
            << " healthy=" << result.bandwidth_healthy << "\n";
  for (const auto& [kind, s] : result.statistics) {
    std::cout << aroc::to_string(kind) << ": statistic=" << s
              << " p_value=" << result.p_values.at(kind) << "\n";
  }
  std::cout << "AUC=" << aroc::auc(result.roc_curve) << " AAUC=" << aroc::auc(result.aroc_curve)
            << "\n";

  const auto fmt = aroc::format_from_string(format);
  fs::create_directories(out_dir);
  const fs::path result_path =
      fs::path(out_dir) / (fmt == aroc::ResultFormat::json ? "result.json" : "result.csv");
  aroc::write_result(result, result_path, fmt);

  aroc::RunManifest manifest;
  manifest.command = "test";
  manifest.master_seed = seed;
  manifest.input_digest = aroc::file_digest(csv.path);
  manifest.resolved_config = csv.to_json();
  manifest.resolved_config.update(json{{"rho", rho},
                                       {"B", bootstrap},
                                       {"distances", distances},
                                       {"grid", grid},
                                       {"bandwidth", bandwidth},
                                       {"reselect_bandwidths", reselect},
                                       {"kernel", kernel},
                                       {"seed", seed},
                                       {"format", format},
                                       {"out", out_dir}});
  aroc::write_manifest(manifest, fs::path(out_dir) / "manifest.json");
  std::cout << "wrote " << result_path.string() << "\n";
  return 0;
}

int cmd_curves(const CsvArgs& csv, std::vector<double> at_covariate, std::size_t grid,
               const std::string& bandwidth, const std::string& out_dir,
               const std::string& format, const std::string& kernel) {
  const aroc::StudyDataset data = aroc::read_csv(csv.path, csv.status_col, csv.marker_col,
                                                 csv.covariate_col, csv.options());
  if (data.meta.dropped_rows > 0) {
    std::cerr << "warning: dropped " << data.meta.dropped_rows
              << " rows with missing values\n";
  }
  const aroc::KernelSpec kspec = aroc::kernel_from_name(kernel);
  const std::vector<double> p_grid = aroc::default_grid(grid);

  aroc::BandwidthPolicy policy = parse_bandwidth(bandwidth, false);
  double bw_f = policy.fixed_diseased;
  double bw_g = policy.fixed_healthy;
  if (policy.mode == aroc::BandwidthPolicy::Mode::automatic) {
    bw_f = aroc::select_bandwidth(data.diseased, kspec);
    bw_g = aroc::select_bandwidth(data.healthy, kspec);
  }

  const aroc::LocationScaleFit fit_f = aroc::nw_fit(data.diseased, bw_f, kspec);
  const aroc::LocationScaleFit fit_g = aroc::nw_fit(data.healthy, bw_g, kspec);
  const aroc::ResidualSet res_f = aroc::standardized_residuals(fit_f);
  const aroc::ResidualSet res_g = aroc::standardized_residuals(fit_g);

  aroc::MarkerSample markers_f{data.diseased.marker};
  aroc::MarkerSample markers_g{data.healthy.marker};
  const aroc::Curve roc = aroc::pooled_roc(markers_f, markers_g, p_grid);
  const aroc::Curve aroc_curve = aroc::aroc_from_fit(data.diseased, fit_g, p_grid);

  // Default evaluation points: mid-range covariate percentiles; local
  // estimates at the extremes rest on little data.
  if (at_covariate.empty()) {
    std::vector<double> pooled = data.diseased.covariate;
    pooled.insert(pooled.end(), data.healthy.covariate.begin(), data.healthy.covariate.end());
    const aroc::Ecdf cov(std::move(pooled));
    for (double q : {0.10, 0.25, 0.50, 0.75, 0.90}) at_covariate.push_back(cov.quantile(q));
  }

  const auto [x_lo_f, x_hi_f] =
      std::minmax_element(data.diseased.covariate.begin(), data.diseased.covariate.end());
  const auto [x_lo_g, x_hi_g] =
      std::minmax_element(data.healthy.covariate.begin(), data.healthy.covariate.end());
  const double x_lo = std::min(*x_lo_f, *x_lo_g);
  const double x_hi = std::max(*x_hi_f, *x_hi_g);

  json conditional = json::array();
  std::ostringstream curve_csv;
  curve_csv << "curve,p,value\n";
  append_curve_csv(curve_csv, "roc", roc);
  append_curve_csv(curve_csv, "aroc", aroc_curve);

  std::cout << "AUC=" << aroc::auc(roc) << " AAUC=" << aroc::auc(aroc_curve) << "\n";
  for (double x : at_covariate) {
    if (x < x_lo || x > x_hi) {
      std::cerr << "warning: covariate value " << x << " is outside the observed range ["
                << x_lo << ", " << x_hi << "]\n";
    }
    const aroc::Curve cond = aroc::conditional_roc(x, fit_f, fit_g, res_f, res_g, p_grid);
    const double cond_auc = aroc::auc(cond);
    std::cout << "AUC(x=" << x << ")=" << cond_auc << "\n";
    conditional.push_back(json{{"x", x}, {"auc", cond_auc}, {"curve", curve_to_json(cond)}});
    std::ostringstream name;
    name << "roc_x=" << x;
    append_curve_csv(curve_csv, name.str(), cond);
  }

  fs::create_directories(out_dir);
  const auto fmt = aroc::format_from_string(format);
  fs::path curves_path;
  if (fmt == aroc::ResultFormat::json) {
    curves_path = fs::path(out_dir) / "curves.json";
    json doc{{"schema_version", aroc::result_schema_version},
             {"kind", "curves"},
             {"bandwidths", {{"diseased", bw_f}, {"healthy", bw_g}}},
             {"auc", aroc::auc(roc)},
             {"aauc", aroc::auc(aroc_curve)},
             {"roc_curve", curve_to_json(roc)},
             {"aroc_curve", curve_to_json(aroc_curve)},
             {"conditional", conditional}};
    aroc::detail::write_text_file(curves_path, doc.dump(2) + "\n");
  } else {
    curves_path = fs::path(out_dir) / "curves.csv";
    aroc::detail::write_text_file(curves_path, curve_csv.str());
  }

  aroc::RunManifest manifest;
  manifest.command = "curves";
  manifest.input_digest = aroc::file_digest(csv.path);
  manifest.resolved_config = csv.to_json();
  manifest.resolved_config.update(json{{"at_covariate", at_covariate},
                                       {"grid", grid},
                                       {"bandwidth", bandwidth},
                                       {"kernel", kernel},
                                       {"format", format},
                                       {"out", out_dir}});
  aroc::write_manifest(manifest, fs::path(out_dir) / "manifest.json");
  std::cout << "wrote " << curves_path.string() << "\n";
  return 0;
}

int cmd_simulate(const std::vector<std::string>& scenarios,
                 const std::vector<std::string>& sizes, const std::string& rho_list,
                 std::size_t replications, std::size_t bootstrap, const std::string& alphas,
                 const std::string& distances, std::size_t grid, std::uint64_t seed,
                 const std::string& out_dir, const std::string& format, unsigned threads) {
  if (bootstrap == 0) throw CLI::ValidationError("--B", "must be >= 1");
  if (replications == 0) throw CLI::ValidationError("--ns", "must be >= 1");

  std::vector<std::pair<std::size_t, std::size_t>> size_pairs;
  for (const auto& s : sizes) {
    const auto values = parse_double_list(s, "--sizes");
    if (values.size() != 2 || values[0] < 1 || values[1] < 1) {
      throw CLI::ValidationError("--sizes", "expected <n_diseased>,<n_healthy>");
    }
    size_pairs.emplace_back(static_cast<std::size_t>(values[0]),
                            static_cast<std::size_t>(values[1]));
  }

  aroc::TestConfig test_template;
  test_template.bootstrap_iterations = bootstrap;
  test_template.distances = parse_distances(distances);
  test_template.grid_size = grid;

  aroc::RejectionTable table;
  for (const auto& sc : scenarios) {
    aroc::MonteCarloPlan plan;
    plan.scenario = aroc::scenario_spec(aroc::scenario_from_string(sc));
    plan.sample_sizes = size_pairs;
    plan.rhos = parse_double_list(rho_list, "--rho-list");
    plan.replications = replications;
    plan.alphas = parse_double_list(alphas, "--alphas");
    plan.test_template = test_template;
    plan.seed = seed;
    plan.threads = threads;
    const aroc::RejectionTable part = aroc::run_monte_carlo(plan);
    table.rows.insert(table.rows.end(), part.rows.begin(), part.rows.end());
  }

  std::printf("%-8s %-6s %-6s %-6s %-4s %-7s %-10s %-20s\n", "scenario", "nF", "nG", "rho",
              "dist", "alpha", "proportion", "interval");
  for (const auto& r : table.rows) {
    std::printf("%-8c %-6zu %-6zu %-6.3f %-4s %-7.3f %-10.3f [%.3f, %.3f]\n",
                aroc::to_char(r.scenario), r.n_diseased, r.n_healthy, r.rho,
                aroc::to_string(r.distance), r.alpha, r.proportion, r.interval_lo,
                r.interval_hi);
  }

  fs::create_directories(out_dir);
  const auto fmt = aroc::format_from_string(format);
  const fs::path table_path =
      fs::path(out_dir) /
      (fmt == aroc::ResultFormat::json ? "rejection_table.json" : "rejection_table.csv");
  aroc::write_rejection_table(table, table_path, fmt);

  aroc::RunManifest manifest;
  manifest.command = "simulate";
  manifest.master_seed = seed;
  manifest.resolved_config = json{{"scenarios", scenarios}, {"sizes", sizes},
                                  {"rho_list", rho_list},  {"ns", replications},
                                  {"B", bootstrap},        {"alphas", alphas},
                                  {"distances", distances},{"grid", grid},
                                  {"seed", seed},          {"format", format},
                                  {"out", out_dir}};
  aroc::write_manifest(manifest, fs::path(out_dir) / "manifest.json");
  std::cout << "wrote " << table_path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ROC vs covariate-adjusted ROC analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", aroc::version_string);

  unsigned threads = 0;  // 0: AROC_THREADS env var, then hardware concurrency

  // --- test ---
  auto* test = app.add_subcommand("test", "Bootstrap test of pooled ROC vs AROC equality");
  CsvArgs test_csv;
  test_csv.attach(*test);
  double rho = 0.5;
  std::size_t bootstrap_test = 500;
  std::string distances = "L1,L2,KS";
  std::size_t grid_test = 500;
  std::string bandwidth_test = "auto";
  bool reselect = false;
  std::uint64_t seed_test = 0;
  std::string out_test;
  std::string format_test = "json";
  std::string kernel_test = "gaussian";
  test->add_option("--rho", rho, "Fraction of each population used for the pooled ROC");
  test->add_option("--B", bootstrap_test, "Bootstrap iterations");
  test->add_option("--distances", distances, "Comma-separated subset of L1,L2,KS");
  test->add_option("--grid", grid_test, "Number of grid points in (0,1)");
  test->add_option("--bandwidth", bandwidth_test, "'auto' or 'fixed:<g_F>,<g_G>'");
  test->add_flag("--reselect-bandwidths", reselect,
                 "Re-run bandwidth selection inside every bootstrap replicate");
  test->add_option("--seed", seed_test, "Master seed");
  test->add_option("--out", out_test, "Output directory")->required();
  test->add_option("--format", format_test, "Result format: json or csv");
  test->add_option("--kernel", kernel_test, "Smoothing kernel: gaussian or epanechnikov");
  test->add_option("--threads", threads, "Worker threads (0 = auto)");

  // --- curves ---
  auto* curves = app.add_subcommand("curves", "Estimate pooled, AROC and conditional ROC curves");
  CsvArgs curves_csv;
  curves_csv.attach(*curves);
  std::vector<double> at_covariate;
  std::size_t grid_curves = 500;
  std::string bandwidth_curves = "auto";
  std::string out_curves;
  std::string format_curves = "json";
  std::string kernel_curves = "gaussian";
  curves->add_option("--at-covariate", at_covariate,
                     "Covariate values for conditional ROC curves "
                     "(default: 10/25/50/75/90th percentiles)");
  curves->add_option("--grid", grid_curves, "Number of grid points in (0,1)");
  curves->add_option("--bandwidth", bandwidth_curves, "'auto' or 'fixed:<g_F>,<g_G>'");
  curves->add_option("--out", out_curves, "Output directory")->required();
  curves->add_option("--format", format_curves, "Output format: json or csv");
  curves->add_option("--kernel", kernel_curves, "Smoothing kernel");

  // --- simulate ---
  auto* simulate = app.add_subcommand("simulate", "Synthetic level/power study");
  std::vector<std::string> scenarios;
  std::vector<std::string> sizes;
  std::string rho_list = "0.5";
  std::size_t replications = 200;
  std::size_t bootstrap_sim = 200;
  std::string alphas = "0.025,0.05,0.1";
  std::string distances_sim = "L1,L2,KS";
  std::size_t grid_sim = 500;
  std::uint64_t seed_sim = 0;
  std::string out_sim;
  std::string format_sim = "csv";
  simulate->add_option("--scenario", scenarios, "Scenario id (A, B, C or D; repeatable)")
      ->required();
  simulate->add_option("--sizes", sizes, "Sample sizes <n_diseased>,<n_healthy> (repeatable)")
      ->required();
  simulate->add_option("--rho-list", rho_list, "Comma-separated split fractions (e.g. 1/2,1/3)");
  simulate->add_option("--ns", replications, "Simulated datasets per cell");
  simulate->add_option("--B", bootstrap_sim, "Bootstrap iterations per test");
  simulate->add_option("--alphas", alphas, "Comma-separated nominal levels");
  simulate->add_option("--distances", distances_sim, "Comma-separated subset of L1,L2,KS");
  simulate->add_option("--grid", grid_sim, "Number of grid points in (0,1)");
  simulate->add_option("--seed", seed_sim, "Master seed");
  simulate->add_option("--out", out_sim, "Output directory")->required();
  simulate->add_option("--format", format_sim, "Table format: csv or json");
  simulate->add_option("--threads", threads, "Worker threads (0 = auto)");

  try {
    app.parse(argc, argv);
    if (test->parsed()) {
      return cmd_test(test_csv, rho, bootstrap_test, distances, grid_test, bandwidth_test,
                      reselect, seed_test, out_test, format_test, kernel_test, threads);
    }
    if (curves->parsed()) {
      return cmd_curves(curves_csv, at_covariate, grid_curves, bandwidth_curves, out_curves,
                        format_curves, kernel_curves);
    }
    if (simulate->parsed()) {
      return cmd_simulate(scenarios, sizes, rho_list, replications, bootstrap_sim, alphas,
                          distances_sim, grid_sim, seed_sim, out_sim, format_sim, threads);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
