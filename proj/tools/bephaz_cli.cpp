// Command-line front end: simulate / fit / forecast / lmeasure / sweep /
// diagnose / replay. Every run writes a manifest.json next to its outputs;
// `replay <manifest>` re-executes the recorded invocation.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bephaz/bephaz.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bephaz;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitInternal = 4;

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
  return buf;
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const json& parameters, const json& inputs,
                    const std::vector<std::string>& outputs,
                    const std::vector<std::string>& argv) {
  json m;
  m["command"] = command;
  m["version"] = kVersion;
  m["created_utc"] = utc_now();
  m["parameters"] = parameters;
  m["inputs"] = inputs;
  m["outputs"] = outputs;
  m["argv"] = argv;
  auto out = csv::open_output((out_dir / "manifest.json").string());
  out << m.dump(2) << '\n';
}

std::map<std::string, std::string> read_kv_config(const std::string& path) {
  auto in = csv::open_input(path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = csv::strip(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value' in " + path + ": " + line);
    kv[csv::strip(line.substr(0, eq))] = csv::strip(line.substr(eq + 1));
  }
  return kv;
}

/// Long-format draws file back into a summary (quantiles recomputed).
PosteriorSummary read_draws_csv(const std::string& path, int n_times_observed) {
  auto in = csv::open_input(path);
  std::string line;
  if (!std::getline(in, line) || csv::strip(line) != "draw,age,time,pi") {
    throw ConfigError("draws file must start with header 'draw,age,time,pi': " + path);
  }
  struct Row { int draw, age, time; double pi; };
  std::vector<Row> rows;
  int max_draw = 0, max_age = 0, max_time = 0;
  while (std::getline(in, line)) {
    if (csv::strip(line).empty()) continue;
    auto f = csv::split_line(line);
    if (f.size() != 4) throw ConfigError("expected 4 fields per row in " + path);
    Row r{static_cast<int>(csv::parse_long(f[0], path)),
          static_cast<int>(csv::parse_long(f[1], path)),
          static_cast<int>(csv::parse_long(f[2], path)),
          csv::parse_double(f[3], path)};
    max_draw = std::max(max_draw, r.draw);
    max_age = std::max(max_age, r.age);
    max_time = std::max(max_time, r.time);
    rows.push_back(r);
  }
  if (rows.empty()) throw ConfigError("no draws in " + path);
  if (n_times_observed < 1 || n_times_observed > max_time) n_times_observed = max_time;

  PosteriorSummary summary;
  summary.grid = Grid(max_age, n_times_observed, max_time - n_times_observed);
  summary.pi_draws.assign(static_cast<std::size_t>(max_draw), Matrix<double>(max_age, max_time));
  for (const Row& r : rows) summary.pi_draws[static_cast<std::size_t>(r.draw - 1)](r.age, r.time) = r.pi;

  summary.mean = Matrix<double>(max_age, max_time);
  summary.q025 = Matrix<double>(max_age, max_time);
  summary.q975 = Matrix<double>(max_age, max_time);
  std::vector<double> column(static_cast<std::size_t>(max_draw));
  for (int x = 1; x <= max_age; ++x) {
    for (int t = 1; t <= max_time; ++t) {
      double s = 0.0;
      for (int i = 0; i < max_draw; ++i) {
        column[static_cast<std::size_t>(i)] = summary.pi_draws[static_cast<std::size_t>(i)](x, t);
        s += column[static_cast<std::size_t>(i)];
      }
      summary.mean(x, t) = s / max_draw;
      std::sort(column.begin(), column.end());
      summary.q025(x, t) = quantile_type7(column, 0.025);
      summary.q975(x, t) = quantile_type7(column, 0.975);
    }
  }
  return summary;
}

std::vector<double> read_trace_column(const std::string& path) {
  auto in = csv::open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty trace file " + path);
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (csv::strip(line).empty()) continue;
    auto f = csv::split_line(line);
    if (f.size() < 2) throw ConfigError("trace file needs at least two columns: " + path);
    values.push_back(csv::parse_double(f.back(), path));
  }
  return values;
}

int dispatch(const std::vector<std::string>& args);

// ---- subcommand state ----

struct SimulateArgs {
  double lambda_base = 8.0, lambda_slope = 0.5, lambda_censor = 18.0;
  int n_per_time = 1000, n_times = 15, max_age = 18;
  uint64_t seed = 0;
  std::string out = "out";
};

int run_simulate(const SimulateArgs& a, const std::vector<std::string>& argv) {
  SimDesign design{a.lambda_base, a.lambda_slope, a.lambda_censor,
                   a.n_per_time, a.n_times, a.max_age, a.seed};
  design.validate();
  const auto records = generate(design);
  fs::create_directories(a.out);
  write_records_csv(records, (fs::path(a.out) / "records.csv").string());
  json params = {{"lambda_base", a.lambda_base}, {"lambda_slope", a.lambda_slope},
                 {"lambda_censor", a.lambda_censor}, {"n_per_time", a.n_per_time},
                 {"n_times", a.n_times}, {"max_age", a.max_age}, {"seed", a.seed}};
  write_manifest(a.out, "simulate", params, json::object(), {"records.csv"}, argv);
  std::cout << "wrote " << records.size() << " records to " << a.out << "/records.csv\n";
  return 0;
}

struct FitArgs {
  std::string records, deaths, population, config, c_matrix, out = "out";
  double scale = 1.0;
  double a = 1.0, b = 1.0;
  int p = 0, q = 0, c = 0;
  int n_ages = 0, n_times = 0, forecast = 0;
  int iterations = 18000, burn_in = 6000, thinning = 3;
  uint64_t seed = 0;
  bool no_draws = false;
  // which flags were given on the command line (to override config file)
  CLI::App* cmd = nullptr;
};

int run_fit(const FitArgs& a, const std::vector<std::string>& argv, bool require_forecast) {
  auto given = [&](const std::string& flag) { return a.cmd && a.cmd->count(flag) > 0; };

  // resolution order: built-in default < config file < command-line flag
  double pa = a.a, pb = a.b;
  int pp = a.p, pq = a.q, pc = a.c;
  std::string c_matrix = a.c_matrix;
  int iterations = a.iterations, burn_in = a.burn_in, thinning = a.thinning, forecast = a.forecast;
  uint64_t seed = a.seed;
  if (!a.config.empty()) {
    auto kv = read_kv_config(a.config);
    if (kv.count("a") && !given("--a")) pa = csv::parse_double(kv["a"], a.config);
    if (kv.count("b") && !given("--b")) pb = csv::parse_double(kv["b"], a.config);
    if (kv.count("p") && !given("--p")) pp = static_cast<int>(csv::parse_long(kv["p"], a.config));
    if (kv.count("q") && !given("--q")) pq = static_cast<int>(csv::parse_long(kv["q"], a.config));
    if (kv.count("c") && !given("--c")) pc = static_cast<int>(csv::parse_long(kv["c"], a.config));
    if (kv.count("c_matrix") && !given("--c-matrix")) c_matrix = kv["c_matrix"];
    if (kv.count("iterations") && !given("--iterations"))
      iterations = static_cast<int>(csv::parse_long(kv["iterations"], a.config));
    if (kv.count("burn_in") && !given("--burn-in"))
      burn_in = static_cast<int>(csv::parse_long(kv["burn_in"], a.config));
    if (kv.count("thinning") && !given("--thinning"))
      thinning = static_cast<int>(csv::parse_long(kv["thinning"], a.config));
    if (kv.count("seed") && !given("--seed"))
      seed = static_cast<uint64_t>(csv::parse_long(kv["seed"], a.config));
    if (kv.count("n_forecast") && !given("--forecast"))
      forecast = static_cast<int>(csv::parse_long(kv["n_forecast"], a.config));
  }
  if (require_forecast && forecast < 1) {
    throw ConfigError("forecast requires --forecast >= 1");
  }

  // data ingestion: individual records or a life-table pair
  Grid grid;
  SufficientStats stats;
  json inputs = json::object();
  if (!a.records.empty()) {
    if (!a.deaths.empty() || !a.population.empty()) {
      throw ConfigError("give either --records or a --deaths/--population pair, not both");
    }
    const auto records = read_records_csv(a.records);
    int n_ages = a.n_ages, n_times = a.n_times;
    if (n_ages == 0 || n_times == 0) {
      for (const auto& rec : records) {
        n_ages = std::max(n_ages, rec.age);
        n_times = std::max(n_times, rec.time);
      }
    }
    if (n_ages == 0 || n_times == 0) throw ConfigError("empty records need explicit --n-ages/--n-times");
    grid = Grid(n_ages, n_times, forecast);
    stats = aggregate(records, grid);
    inputs["records"] = a.records;
  } else if (!a.deaths.empty() && !a.population.empty()) {
    LifeTable table;
    table.deaths = csv::read_matrix<int>(a.deaths);
    table.population = csv::read_matrix<int>(a.population);
    table.scale = a.scale;
    grid = Grid(table.deaths.rows(), table.deaths.cols(), forecast);
    stats = from_life_table(table, grid);
    inputs["deaths"] = a.deaths;
    inputs["population"] = a.population;
    inputs["scale"] = a.scale;
  } else {
    throw ConfigError("need --records or both --deaths and --population");
  }

  BepPrior prior;
  prior.a = pa;
  prior.b = pb;
  prior.p = pp;
  prior.q = pq;
  if (!c_matrix.empty()) {
    prior.c = csv::read_matrix<int>(c_matrix);
    if (prior.c.cols() < grid.n_total_times()) {
      Matrix<int> padded(grid.n_ages, grid.n_total_times(), 0);
      for (int x = 1; x <= prior.c.rows(); ++x)
        for (int t = 1; t <= prior.c.cols(); ++t)
          padded(x, t) = prior.c(x, t);
      prior.c = padded;
    }
    inputs["c_matrix"] = c_matrix;
  } else {
    prior.c = Matrix<int>(grid.n_ages, grid.n_total_times(), pc);
  }
  prior.validate(grid);
  if (!a.config.empty()) inputs["config"] = a.config;

  ChainConfig config{iterations, burn_in, thinning, seed};
  config.validate();

  GibbsSampler sampler(prior, grid, stats);
  PosteriorSummary summary = sampler.run(config);

  const IdentityCheck check = posterior_mean_identity_check(summary, prior, stats);
  if (check.flagged) {
    std::cerr << "warning: posterior-mean identity residual at " << check.max_se_units
              << " standard errors suggests non-convergence\n";
  }
  if (sampler.clamp_count() > 0) {
    std::cerr << "note: " << sampler.clamp_count() << " hazard values clamped off {0,1} for logits\n";
  }

  fs::create_directories(a.out);
  const fs::path out_dir(a.out);
  std::vector<std::string> outputs = {"summary.csv", "omega_trace.csv", "stats.csv"};
  write_summary_csv(summary, (out_dir / "summary.csv").string());
  write_omega_trace_csv(summary, (out_dir / "omega_trace.csv").string());
  write_stats_csv(stats, (out_dir / "stats.csv").string());
  if (!a.no_draws) {
    write_draws_csv(summary, (out_dir / "draws.csv").string());
    outputs.push_back("draws.csv");
  }

  json params = {{"a", pa}, {"b", pb}, {"p", pp}, {"q", pq},
                 {"c", c_matrix.empty() ? json(pc) : json(nullptr)},
                 {"n_ages", grid.n_ages}, {"n_times", grid.n_times},
                 {"n_forecast", grid.n_forecast},
                 {"iterations", iterations}, {"burn_in", burn_in},
                 {"thinning", thinning}, {"seed", seed},
                 {"identity_max_se_units", check.max_se_units},
                 {"identity_flagged", check.flagged}};
  write_manifest(out_dir, require_forecast ? "forecast" : "fit", params, inputs, outputs, argv);
  std::cout << "retained " << summary.n_draws() << " draws; summary in "
            << (out_dir / "summary.csv").string() << '\n';
  return 0;
}

struct LMeasureArgs {
  std::string draws, reference, out = "out";
  double nu = 0.5;
  int n_times = 0;
  std::string window = "both";
};

int run_lmeasure(const LMeasureArgs& a, const std::vector<std::string>& argv) {
  if (a.window != "in" && a.window != "out" && a.window != "both") {
    throw ConfigError("--window must be in, out or both");
  }
  PosteriorSummary summary = read_draws_csv(a.draws, a.n_times);
  Matrix<double> reference = csv::read_matrix<double>(a.reference);

  std::vector<LMeasureReport> reports;
  if (a.window != "out") {
    reports.push_back(l_measure(summary, reference, a.nu, 1, summary.grid.n_times));
  }
  if (a.window != "in") {
    if (summary.grid.n_forecast == 0) throw ConfigError("no forecast columns for out-of-sample window");
    reports.push_back(l_measure(summary, reference, a.nu,
                                summary.grid.n_times + 1, summary.grid.n_total_times()));
  }

  fs::create_directories(a.out);
  auto out = csv::open_output((fs::path(a.out) / "lmeasure.csv").string());
  out.precision(17);
  out << "window,nu,variance_part,bias_part,l_measure,cells_used,cells_excluded\n";
  for (const auto& r : reports) {
    out << (r.t_begin == 1 ? "in" : "out") << ',' << r.nu << ',' << r.variance_part << ','
        << r.bias_part << ',' << r.value << ',' << r.cells_used << ',' << r.cells_excluded << '\n';
    std::cout << (r.t_begin == 1 ? "in" : "out") << "-sample L(" << r.nu << ") = " << r.value << '\n';
  }
  json params = {{"nu", a.nu}, {"n_times", summary.grid.n_times}, {"window", a.window}};
  json inputs = {{"draws", a.draws}, {"reference", a.reference}};
  write_manifest(a.out, "lmeasure", params, inputs, {"lmeasure.csv"}, argv);
  return 0;
}

struct SweepArgs {
  std::string records, reference, out = "out";
  std::vector<int> p_values{1}, q_values{1}, c_values{0};
  double a = 0.001, b = 0.001, nu = 0.5;
  int forecast = 0, jobs = 1;
  int iterations = 18000, burn_in = 6000, thinning = 3;
  uint64_t seed = 0;
};

int run_sweep(const SweepArgs& a, const std::vector<std::string>& argv) {
  const auto records = read_records_csv(a.records);
  int n_ages = 0, n_times = 0;
  for (const auto& rec : records) {
    n_ages = std::max(n_ages, rec.age);
    n_times = std::max(n_times, rec.time);
  }
  if (records.empty()) throw ConfigError("no records in " + a.records);
  Grid grid(n_ages, n_times, a.forecast);
  SufficientStats stats = aggregate(records, grid);

  Matrix<double> reference;
  std::optional<Matrix<unsigned char>> defined;
  if (!a.reference.empty()) {
    reference = csv::read_matrix<double>(a.reference);
  } else {
    // fall back to the frequentist estimate; forecast cells have no reference
    HazardEstimate est = np_hazard(stats);
    reference = est.value;
    defined = est.defined;
  }

  SweepDesign design{a.p_values, a.q_values, a.c_values, a.a, a.b, a.nu};
  ChainConfig config{a.iterations, a.burn_in, a.thinning, a.seed};
  config.validate();
  auto rows = sweep(design, grid, stats, reference, config, a.jobs,
                    defined ? &*defined : nullptr);

  fs::create_directories(a.out);
  write_sweep_csv(rows, (fs::path(a.out) / "sweep.csv").string());
  json params = {{"p", a.p_values}, {"q", a.q_values}, {"c", a.c_values},
                 {"a", a.a}, {"b", a.b}, {"nu", a.nu}, {"forecast", a.forecast},
                 {"iterations", a.iterations}, {"burn_in", a.burn_in},
                 {"thinning", a.thinning}, {"seed", a.seed}, {"jobs", a.jobs}};
  json inputs = {{"records", a.records}};
  if (!a.reference.empty()) inputs["reference"] = a.reference;
  write_manifest(a.out, "sweep", params, inputs, {"sweep.csv"}, argv);
  std::cout << "swept " << rows.size() << " specifications into "
            << (fs::path(a.out) / "sweep.csv").string() << '\n';
  return 0;
}

struct DiagnoseArgs {
  std::string trace, draws, out = "out";
  int age = 0, time = 0;
  int max_lag = 50, bins = 30;
};

int run_diagnose(const DiagnoseArgs& a, const std::vector<std::string>& argv) {
  Trace trace;
  json inputs = json::object();
  if (!a.trace.empty()) {
    trace.values = read_trace_column(a.trace);
    trace.label = a.trace;
    inputs["trace"] = a.trace;
  } else if (!a.draws.empty()) {
    if (a.age < 1 || a.time < 1) throw ConfigError("--draws needs --age and --time to pick a cell");
    PosteriorSummary summary = read_draws_csv(a.draws, 0);
    summary.grid.require_inside(a.age, a.time);
    for (const auto& draw : summary.pi_draws) trace.values.push_back(draw(a.age, a.time));
    trace.label = "pi(" + std::to_string(a.age) + "," + std::to_string(a.time) + ")";
    inputs["draws"] = a.draws;
  } else {
    throw ConfigError("need --trace or --draws");
  }
  trace.validate();

  const int max_lag = std::min<int>(a.max_lag, static_cast<int>(trace.values.size()) - 1);
  if (max_lag < 1) throw ConfigError("trace too short for autocorrelation");

  fs::create_directories(a.out);
  const fs::path out_dir(a.out);
  write_trace_csv(trace, (out_dir / "trace.csv").string());
  write_ergodic_csv(ergodic_means(trace), (out_dir / "ergodic.csv").string());
  write_acf_csv(acf(trace, max_lag), (out_dir / "acf.csv").string());
  write_histogram_csv(histogram(trace, a.bins), (out_dir / "hist.csv").string());

  json params = {{"max_lag", max_lag}, {"bins", a.bins}, {"label", trace.label},
                 {"age", a.age}, {"time", a.time}};
  write_manifest(a.out, "diagnose", params, inputs,
                 {"trace.csv", "ergodic.csv", "acf.csv", "hist.csv"}, argv);
  std::cout << "diagnostics for " << trace.label << " written to " << a.out << '\n';
  return 0;
}

int run_replay(const std::string& manifest_path) {
  auto in = csv::open_input(manifest_path);
  json m;
  try {
    in >> m;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse manifest " + manifest_path + ": " + e.what());
  }
  if (!m.contains("argv") || !m["argv"].is_array()) {
    throw ConfigError("manifest lacks an argv record: " + manifest_path);
  }
  std::vector<std::string> args;
  for (const auto& v : m["argv"]) args.push_back(v.get<std::string>());
  if (!args.empty() && args.front() == "replay") {
    throw ConfigError("refusing to replay a replay manifest");
  }
  return dispatch(args);
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Bayesian nonparametric dynamic hazard rates over an age-time grid"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "generate a synthetic censored cohort");
  sim_cmd->add_option("--lambda-base", sim.lambda_base, "lifetime rate at t=1");
  sim_cmd->add_option("--lambda-slope", sim.lambda_slope, "lifetime rate drift per period");
  sim_cmd->add_option("--lambda-censor", sim.lambda_censor, "censoring rate");
  sim_cmd->add_option("--n-per-time", sim.n_per_time, "records per period");
  sim_cmd->add_option("--n-times", sim.n_times, "number of periods");
  sim_cmd->add_option("--max-age", sim.max_age, "grid age limit (truncation as censoring)");
  sim_cmd->add_option("--seed", sim.seed, "RNG seed");
  sim_cmd->add_option("--out", sim.out, "output directory");

  FitArgs fit;
  auto add_fit_options = [&](CLI::App* cmd) {
    cmd->add_option("--records", fit.records, "records CSV (age,time,exact)");
    cmd->add_option("--deaths", fit.deaths, "life-table deaths matrix CSV");
    cmd->add_option("--population", fit.population, "life-table population matrix CSV");
    cmd->add_option("--scale", fit.scale, "life-table scaling constant k");
    cmd->add_option("--config", fit.config, "key = value configuration file");
    cmd->add_option("--a", fit.a, "first beta shape");
    cmd->add_option("--b", fit.b, "second beta shape");
    cmd->add_option("--p", fit.p, "age dependence order");
    cmd->add_option("--q", fit.q, "time dependence order");
    cmd->add_option("--c", fit.c, "scalar dependence strength, broadcast to all cells");
    cmd->add_option("--c-matrix", fit.c_matrix, "per-cell c matrix CSV");
    cmd->add_option("--n-ages", fit.n_ages, "grid ages (default: inferred from data)");
    cmd->add_option("--n-times", fit.n_times, "grid times (default: inferred from data)");
    cmd->add_option("--forecast", fit.forecast, "extra no-data time columns");
    cmd->add_option("--iterations", fit.iterations, "Gibbs iterations");
    cmd->add_option("--burn-in", fit.burn_in, "burn-in iterations");
    cmd->add_option("--thinning", fit.thinning, "keep one of every k iterations");
    cmd->add_option("--seed", fit.seed, "RNG seed");
    cmd->add_flag("--no-draws", fit.no_draws, "skip the long-format draws CSV");
    cmd->add_option("--out", fit.out, "output directory");
  };
  auto* fit_cmd = app.add_subcommand("fit", "run the Gibbs sampler on observed data");
  add_fit_options(fit_cmd);
  auto* forecast_cmd = app.add_subcommand("forecast", "fit with forecast columns (requires --forecast)");
  add_fit_options(forecast_cmd);

  LMeasureArgs lm;
  auto* lm_cmd = app.add_subcommand("lmeasure", "goodness-of-fit L-measure from retained draws");
  lm_cmd->add_option("--draws", lm.draws, "retained draws CSV")->required();
  lm_cmd->add_option("--reference", lm.reference, "reference hazard matrix CSV")->required();
  lm_cmd->add_option("--nu", lm.nu, "bias weight in [0,1]");
  lm_cmd->add_option("--n-times", lm.n_times, "observed periods (rest of the axis is out-of-sample)");
  lm_cmd->add_option("--window", lm.window, "in, out or both");
  lm_cmd->add_option("--out", lm.out, "output directory");

  SweepArgs sw;
  auto* sw_cmd = app.add_subcommand("sweep", "L-measure over a grid of (p,q,c) specifications");
  sw_cmd->add_option("--records", sw.records, "records CSV")->required();
  sw_cmd->add_option("--reference", sw.reference, "reference hazard matrix CSV (default: frequentist)");
  sw_cmd->add_option("--p-list", sw.p_values, "age orders")->delimiter(',');
  sw_cmd->add_option("--q-list", sw.q_values, "time orders")->delimiter(',');
  sw_cmd->add_option("--c-list", sw.c_values, "dependence strengths")->delimiter(',');
  sw_cmd->add_option("--a", sw.a, "first beta shape");
  sw_cmd->add_option("--b", sw.b, "second beta shape");
  sw_cmd->add_option("--nu", sw.nu, "bias weight");
  sw_cmd->add_option("--forecast", sw.forecast, "extra no-data time columns");
  sw_cmd->add_option("--iterations", sw.iterations, "Gibbs iterations");
  sw_cmd->add_option("--burn-in", sw.burn_in, "burn-in iterations");
  sw_cmd->add_option("--thinning", sw.thinning, "thinning");
  sw_cmd->add_option("--seed", sw.seed, "master seed; per-row seeds derived from it");
  sw_cmd->add_option("--jobs", sw.jobs, "chains run concurrently");
  sw_cmd->add_option("--out", sw.out, "output directory");

  DiagnoseArgs dg;
  auto* dg_cmd = app.add_subcommand("diagnose", "trace, ergodic means, acf and histogram CSVs");
  dg_cmd->add_option("--trace", dg.trace, "scalar trace CSV (last column read)");
  dg_cmd->add_option("--draws", dg.draws, "retained draws CSV (pick a cell)");
  dg_cmd->add_option("--age", dg.age, "age of the monitored cell");
  dg_cmd->add_option("--time", dg.time, "time of the monitored cell");
  dg_cmd->add_option("--max-lag", dg.max_lag, "largest acf lag");
  dg_cmd->add_option("--bins", dg.bins, "histogram bins");
  dg_cmd->add_option("--out", dg.out, "output directory");

  std::string manifest_path;
  auto* rp_cmd = app.add_subcommand("replay", "re-run the invocation recorded in a manifest");
  rp_cmd->add_option("manifest", manifest_path, "path to manifest.json")->required();

  fit.cmd = fit_cmd;

  try {
    // CLI11 parses right-to-left from a reversed vector
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (sim_cmd->parsed()) return run_simulate(sim, args);
  if (fit_cmd->parsed()) return run_fit(fit, args, false);
  if (forecast_cmd->parsed()) {
    fit.cmd = forecast_cmd;
    return run_fit(fit, args, true);
  }
  if (lm_cmd->parsed()) return run_lmeasure(lm, args);
  if (sw_cmd->parsed()) return run_sweep(sw, args);
  if (dg_cmd->parsed()) return run_diagnose(dg, args);
  if (rp_cmd->parsed()) return run_replay(manifest_path);
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return dispatch(args);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
