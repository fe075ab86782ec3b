#include "adlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "adlab/angular_velocity.hpp"
#include "adlab/autodrop.hpp"
#include "adlab/noisy_quadratic.hpp"
#include "adlab/trainer.hpp"
#include "adlab/unified_momentum.hpp"
#include "adlab/velocity_model.hpp"

#ifndef ADLAB_GIT_REV
#define ADLAB_GIT_REV "unknown"
#endif

namespace adlab {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(15);  // >= 12 significant digits, locale-independent
  os << v;
  return os.str();
}

}  // namespace

KvConfig KvConfig::parse(const std::string& text) {
  KvConfig cfg;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    cfg.values_[key] = value;
  }
  return cfg;
}

KvConfig KvConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse(os.str());
}

std::string KvConfig::serialize() const {
  std::ostringstream os;
  for (const auto& [k, v] : values_) os << k << " = " << v << "\n";
  return os.str();
}

std::string KvConfig::get_string(const std::string& key,
                                 const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KvConfig::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not a number: " + it->second);
  }
}

std::uint64_t KvConfig::get_uint(const std::string& key,
                                 std::uint64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t pos = 0;
    std::uint64_t v = std::stoull(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not an integer: " + it->second);
  }
}

bool KvConfig::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw ConfigError("config key '" + key + "': not a bool: " + it->second);
}

std::vector<double> KvConfig::get_double_list(
    const std::string& key, const std::vector<double>& fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  std::istringstream is(it->second);
  std::string item;
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': bad list item: " + item);
    }
  }
  if (out.empty())
    throw ConfigError("config key '" + key + "': empty list");
  return out;
}

std::string CsvTable::serialize() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) os << ',';
    os << columns[i];
  }
  os << '\n';
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw std::logic_error("CsvTable: row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) os << ',';
      if (row[i]) {
        if (!std::isfinite(*row[i]))
          throw NumericFailure("non-finite value in column " + columns[i]);
        os << format_number(*row[i]);
      }
    }
    os << '\n';
  }
  return os.str();
}

unsigned max_threads() {
  const char* env = std::getenv("AUTODROP_LAB_THREADS");
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (env == nullptr) return hw;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || v < 1) return hw;
  return std::min<unsigned>(static_cast<unsigned>(v), hw);
}

namespace {

// Runs tasks [0, n) with at most max_threads() workers.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  unsigned workers = std::min<std::size_t>(max_threads(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  for (auto& t : pool) t.join();
}

std::optional<double> cell(double v) {
  if (std::isnan(v)) return std::nullopt;  // not-ready marker from curves
  return v;
}

NqmConfig nqm_from_config(const KvConfig& cfg, double alpha) {
  std::uint64_t d = cfg.get_uint("d", 200);
  NqmConfig nqm = NqmConfig::reference_config(alpha, d);
  if (cfg.has("a")) nqm.a = cfg.get_double_list("a", {});
  if (cfg.has("sigma2")) nqm.sigma2 = cfg.get_double_list("sigma2", {});
  if (nqm.sigma2.size() != nqm.a.size())
    nqm.sigma2.assign(nqm.a.size(), cfg.get_double("sigma2_fill", 1.0));
  return nqm;
}

ExperimentOutput run_nqm_sweep(const KvConfig& cfg, std::uint64_t seed) {
  std::vector<double> alphas =
      cfg.get_double_list("alphas", {0.06, 0.03, 0.01, 0.001});
  std::uint64_t iterations = cfg.get_uint("iterations", 20000);
  std::uint64_t window = cfg.get_uint("window", 20);
  double x0_fill = cfg.get_double("x0_fill", 1.0);

  struct Curve {
    std::vector<double> loss, omega;
  };
  std::vector<Curve> curves(alphas.size());
  parallel_for(alphas.size(), [&](std::size_t j) {
    NqmConfig nqm = nqm_from_config(cfg, alphas[j]);
    nqm.validate();
    NqmState state(ParamVector(nqm.dim(), x0_fill), seed + j);
    VelocityTracker tracker(window);
    Curve& c = curves[j];
    c.loss.reserve(iterations);
    c.omega.reserve(iterations);
    ParamVector prev_x;
    for (std::uint64_t t = 0; t < iterations; ++t) {
      prev_x = state.x;
      nqm_step(nqm, state);
      tracker.observe(state.x, prev_x);
      c.loss.push_back(nqm_loss(nqm, state.x));
      c.omega.push_back(tracker.has_angle()
                            ? tracker.window_average()
                            : std::numeric_limits<double>::quiet_NaN());
    }
  });

  ExperimentOutput out;
  CsvTable loss_table, omega_table;
  loss_table.columns.push_back("step");
  omega_table.columns.push_back("step");
  for (double a : alphas) {
    loss_table.columns.push_back("loss_alpha_" + format_number(a));
    omega_table.columns.push_back("omega_alpha_" + format_number(a));
  }
  for (std::uint64_t t = 0; t < iterations; ++t) {
    std::vector<std::optional<double>> lrow{static_cast<double>(t)};
    std::vector<std::optional<double>> orow{static_cast<double>(t)};
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      lrow.push_back(cell(curves[j].loss[t]));
      orow.push_back(cell(curves[j].omega[t]));
    }
    loss_table.rows.push_back(std::move(lrow));
    omega_table.rows.push_back(std::move(orow));
  }
  out.csvs["loss"] = std::move(loss_table);
  out.csvs["omega"] = std::move(omega_table);
  return out;
}

ExperimentOutput run_nqm_autodrop(const KvConfig& cfg, std::uint64_t seed) {
  NqmAutoDropOptions opts;
  opts.alpha0 = cfg.get_double("alpha0", opts.alpha0);
  opts.alpha_min = cfg.get_double("alpha_min", opts.alpha_min);
  opts.rho = cfg.get_double("rho", opts.rho);
  opts.window = cfg.get_uint("window", opts.window);
  opts.delta_threshold_deg =
      cfg.get_double("delta_threshold", opts.delta_threshold_deg);
  opts.iterations = cfg.get_uint("iterations", opts.iterations);
  double x0_fill = cfg.get_double("x0_fill", 1.0);

  NqmConfig nqm = nqm_from_config(cfg, opts.alpha0);
  NqmAutoDropCurves curves = autodrop_nqm_experiment(
      nqm, opts, ParamVector(nqm.dim(), x0_fill), seed);

  ExperimentOutput out;
  CsvTable table;
  table.columns = {"step", "loss", "omega_avg", "alpha"};
  for (std::uint64_t t = 0; t < opts.iterations; ++t)
    table.rows.push_back({static_cast<double>(t), cell(curves.loss[t]),
                          cell(curves.omega_avg[t]), cell(curves.alpha[t])});
  out.csvs["curves"] = std::move(table);
  return out;
}

ExperimentOutput run_oracle_check(const KvConfig& cfg, std::uint64_t seed) {
  GaussianStream rng(seed);
  std::uint64_t d = cfg.get_uint("d", 1 + rng.below(10));
  NqmConfig nqm;
  if (cfg.has("a")) {
    nqm.a = cfg.get_double_list("a", {});
    nqm.sigma2 = cfg.get_double_list("sigma2", {});
    nqm.alpha = cfg.get_double("alpha", 0.1);
  } else {
    nqm.a.resize(d);
    nqm.sigma2.resize(d);
    for (std::uint64_t i = 0; i < d; ++i) {
      nqm.a[i] = 0.5 + 1.5 * rng.uniform();
      nqm.sigma2[i] = 0.2 + 1.8 * rng.uniform();
    }
    double amax = *std::max_element(nqm.a.begin(), nqm.a.end());
    nqm.alpha = (0.2 + 0.7 * rng.uniform()) / amax;
  }
  nqm.validate();

  std::uint64_t samples = cfg.get_uint("samples", 1000000);
  std::uint64_t burn_in = cfg.get_uint("burn_in", nqm_default_burn_in(nqm));

  NqmOracle oracle = nqm_oracle(nqm);
  NqmEmpiricalLimits hat =
      nqm_empirical_limits(nqm, burn_in, samples, seed + 1);

  ExperimentOutput out;
  CsvTable table;
  table.columns = {"i_star",  "i_hat",        "rel_err_i", "n_star",
                   "n_hat",   "rel_err_n",    "c_star",    "c_hat",
                   "abs_err_c", "c_hat_direct", "angle_star"};
  table.rows.push_back(
      {oracle.i_star, hat.i_hat,
       std::abs(hat.i_hat - oracle.i_star) / std::abs(oracle.i_star),
       oracle.n_star, hat.n_hat,
       std::abs(hat.n_hat - oracle.n_star) / oracle.n_star, oracle.c_star,
       hat.c_hat, std::abs(hat.c_hat - oracle.c_star), hat.c_hat_direct,
       oracle.angle_star});
  out.csvs["oracle_check"] = std::move(table);
  return out;
}

ExperimentOutput run_schedule_validate(const KvConfig& cfg, std::uint64_t) {
  PiecewiseSchedule sched;
  if (cfg.has("alphas")) {
    sched.alphas = cfg.get_double_list("alphas", {});
    std::vector<double> gaps = cfg.get_double_list("gaps", {});
    for (double g : gaps)
      sched.gaps.push_back(static_cast<std::uint64_t>(g));
  } else {
    std::uint64_t n = cfg.get_uint("n", 10);
    double kappa = cfg.get_double("kappa", 1.0);
    sched.alphas = decay_law_alphas(
        cfg.get_string("law", "inv2") == "pow23" ? DecayLaw::kPowerTwoThirds
                                                 : DecayLaw::kInverseIPlusTwo,
        n);
    for (double a : sched.alphas)
      sched.gaps.push_back(
          static_cast<std::uint64_t>(std::max(1.0, std::ceil(kappa / a))));
  }
  sched.alpha_before_first = cfg.get_double("alpha_before_first", 1.0);

  ScheduleReport report = validate_schedule(sched);
  ExperimentOutput out;
  CsvTable table;
  table.columns = {"satisfies_decay", "kappa1_max", "kappa2_min", "feasible"};
  table.rows.push_back({report.satisfies_decay ? 1.0 : 0.0, report.kappa1_max,
                        report.kappa2_min, report.feasible ? 1.0 : 0.0});
  out.csvs["schedule_report"] = std::move(table);
  return out;
}

ExperimentOutput run_alg2_plan(const KvConfig& cfg, std::uint64_t) {
  VelocityModelParams params;
  params.gamma = cfg.get_double("gamma", 1.0);
  params.epsilon = cfg.get_double("epsilon", 0.0);
  ApproxDropConfig plan_cfg;
  plan_cfg.tau0 = cfg.get_double("tau0", 0.5);
  std::uint64_t n = cfg.get_uint("n", 50);
  DecayLaw law = cfg.get_string("law", "inv2") == "pow23"
                     ? DecayLaw::kPowerTwoThirds
                     : DecayLaw::kInverseIPlusTwo;
  plan_cfg.alphas = decay_law_alphas(law, n);
  params.alpha_max = cfg.get_double(
      "alpha_max", *std::max_element(plan_cfg.alphas.begin(),
                                     plan_cfg.alphas.end()));

  PhasePlan plan = plan_drop_phases(params, plan_cfg);
  TotalIterationBounds bounds = total_iteration_bounds(plan.kappa1, plan.kappa2, n);

  ExperimentOutput out;
  CsvTable phases;
  phases.columns = {"phase", "alpha", "gap", "continuous_gap", "boundary"};
  for (std::size_t i = 0; i < plan.gaps.size(); ++i)
    phases.rows.push_back({static_cast<double>(i), plan.alphas[i],
                           static_cast<double>(plan.gaps[i]),
                           plan.continuous_gaps[i],
                           static_cast<double>(plan.boundaries[i])});
  out.csvs["phases"] = std::move(phases);

  CsvTable summary;
  summary.columns = {"total", "kappa1", "kappa2", "bound_low", "bound_high"};
  summary.rows.push_back({static_cast<double>(plan.total), plan.kappa1,
                          plan.kappa2, bounds.low, bounds.high});
  out.csvs["plan_summary"] = std::move(summary);
  return out;
}

ExperimentOutput run_train(const KvConfig& cfg, std::uint64_t seed) {
  BlobSpec spec;
  spec.classes = cfg.get_uint("classes", 2);
  spec.samples_per_class = cfg.get_uint("samples_per_class", 1000);
  spec.dim = cfg.get_uint("dim", 20);
  spec.separation = cfg.get_double("separation", 1.0);
  spec.cov_scale = cfg.get_double("cov_scale", 2.0);

  SyntheticDataset data = make_blobs(spec, seed);
  BlobSpec eval_spec = spec;
  eval_spec.samples_per_class = cfg.get_uint("eval_samples_per_class", 250);
  SyntheticDataset eval_data = make_blobs(eval_spec, seed + 1);

  MlpShape shape{spec.dim, cfg.get_uint("hidden", 64), spec.classes};
  MlpModel model(shape, seed + 2, cfg.get_double("init_scale", 0.1));

  TrainOptions opts;
  opts.optimizer.beta = cfg.get_double("beta", 0.9);
  opts.optimizer.s = cfg.get_double("s", 0.0);
  opts.epochs = cfg.get_uint("epochs", 60);
  opts.batch_size = cfg.get_uint("batch_size", 32);
  opts.seed = seed + 3;
  if (cfg.get_string("scheduler", "autodrop") == "autodrop") {
    AutoDropConfig ad;
    ad.alpha0 = cfg.get_double("alpha0", 1.0);
    ad.alpha_min = cfg.get_double("alpha_min", 1e-4);
    ad.theta0 = cfg.get_double("theta0", 2.0);
    ad.theta_max = cfg.get_double("theta_max", 16.0);
    ad.rho = cfg.get_double("rho", 0.5);
    ad.n_d = cfg.get_uint("n_d", 5);
    opts.autodrop = ad;
  } else {
    opts.fixed_alpha = cfg.get_double("alpha0", 1.0);
  }

  std::vector<TrainRecord> records = train(model, data, eval_data, opts);

  ExperimentOutput out;
  CsvTable table;
  table.columns = {"epoch", "train_loss", "eval_acc", "lr", "omega", "dropped"};
  for (const TrainRecord& r : records)
    table.rows.push_back({static_cast<double>(r.epoch), r.train_loss,
                          r.eval_acc, r.lr, cell(r.omega),
                          r.dropped ? 1.0 : 0.0});
  out.csvs["train"] = std::move(table);
  return out;
}

}  // namespace

const std::vector<std::string> kExperimentKinds = {
    "nqm-sweep",      "nqm-autodrop", "oracle-check",
    "schedule-validate", "alg2-plan", "train"};

ExperimentOutput run_experiment(const std::string& kind, const KvConfig& cfg,
                                std::uint64_t seed) {
  if (kind == "nqm-sweep") return run_nqm_sweep(cfg, seed);
  if (kind == "nqm-autodrop") return run_nqm_autodrop(cfg, seed);
  if (kind == "oracle-check") return run_oracle_check(cfg, seed);
  if (kind == "schedule-validate") return run_schedule_validate(cfg, seed);
  if (kind == "alg2-plan") return run_alg2_plan(cfg, seed);
  if (kind == "train") return run_train(cfg, seed);
  throw ConfigError("unknown experiment kind: " + kind);
}

std::filesystem::path write_output(const std::string& kind,
                                   const KvConfig& cfg, std::uint64_t seed,
                                   const ExperimentOutput& out,
                                   const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> csv_names;
  for (const auto& [stem, table] : out.csvs) {
    std::string text = table.serialize();  // NaN check happens here
    std::ofstream f(out_dir / (stem + ".csv"), std::ios::binary);
    if (!f) throw ConfigError("cannot write " + (out_dir / stem).string());
    f << text;
    csv_names.push_back(stem + ".csv");
  }

  KvConfig manifest = cfg;
  manifest.set("kind", kind);
  manifest.set("seed", std::to_string(seed));
  manifest.set("version", kVersion);
  manifest.set("git_rev", ADLAB_GIT_REV);
  {
    std::string joined;
    for (const auto& name : csv_names) {
      if (!joined.empty()) joined += ",";
      joined += name;
    }
    manifest.set("csv_files", joined);
  }
  for (const auto& [k, v] : out.manifest_extra) manifest.set(k, v);

  std::filesystem::path manifest_path = out_dir / "manifest.txt";
  std::ofstream f(manifest_path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + manifest_path.string());
  f << manifest.serialize();
  return manifest_path;
}

std::filesystem::path emit_plot_script(
    const std::filesystem::path& manifest_path) {
  if (!std::filesystem::exists(manifest_path))
    throw ConfigError("manifest not found: " + manifest_path.string());
  KvConfig manifest = KvConfig::load(manifest_path);
  std::string kind = manifest.get_string("kind", "");
  if (kind.empty()) throw ConfigError("manifest has no kind");

  std::filesystem::path dir = manifest_path.parent_path();
  std::vector<std::string> csvs;
  {
    std::istringstream is(manifest.get_string("csv_files", ""));
    std::string item;
    while (std::getline(is, item, ','))
      if (!item.empty()) csvs.push_back(item);
  }
  if (csvs.empty()) throw ConfigError("manifest lists no CSV files");
  for (const auto& name : csvs)
    if (!std::filesystem::exists(dir / name))
      throw ConfigError("missing CSV named in manifest: " + name);

  std::ostringstream py;
  py << "#!/usr/bin/env python3\n"
     << "# Renders the CSVs from a " << kind << " run into figures.\n"
     << "import csv, math, os\n"
     << "import matplotlib\n"
     << "matplotlib.use('Agg')\n"
     << "import matplotlib.pyplot as plt\n\n"
     << "HERE = os.path.dirname(os.path.abspath(__file__))\n\n"
     << "def load(name):\n"
     << "    with open(os.path.join(HERE, name)) as f:\n"
     << "        rows = list(csv.reader(f))\n"
     << "    header = rows[0]\n"
     << "    cols = {h: [] for h in header}\n"
     << "    for row in rows[1:]:\n"
     << "        for h, v in zip(header, row):\n"
     << "            cols[h].append(float(v) if v else math.nan)\n"
     << "    return cols\n\n";

  if (kind == "nqm-sweep") {
    py << "loss = load('loss.csv')\n"
       << "omega = load('omega.csv')\n"
       << "fig, axes = plt.subplots(1, 2, figsize=(11, 4))\n"
       << "for name, ys in loss.items():\n"
       << "    if name != 'step':\n"
       << "        axes[0].plot(loss['step'], ys, label=name)\n"
       << "axes[0].set_yscale('log'); axes[0].set_title('expected loss')\n"
       << "axes[0].legend(fontsize=7)\n"
       << "for name, ys in omega.items():\n"
       << "    if name != 'step':\n"
       << "        axes[1].plot(omega['step'], ys, label=name)\n"
       << "axes[1].set_title('angular velocity (deg)')\n"
       << "axes[1].legend(fontsize=7)\n";
  } else if (kind == "nqm-autodrop") {
    py << "c = load('curves.csv')\n"
       << "fig, axes = plt.subplots(1, 3, figsize=(15, 4))\n"
       << "axes[0].plot(c['step'], c['loss']); axes[0].set_yscale('log')\n"
       << "axes[0].set_title('expected loss')\n"
       << "axes[1].plot(c['step'], c['omega_avg'])\n"
       << "axes[1].set_title('angular velocity (deg)')\n"
       << "axes[2].plot(c['step'], c['alpha'])\n"
       << "axes[2].set_title('learning rate')\n";
  } else if (kind == "train") {
    py << "c = load('train.csv')\n"
       << "fig, axes = plt.subplots(2, 2, figsize=(11, 8))\n"
       << "axes[0][0].plot(c['epoch'], c['lr'])\n"
       << "axes[0][0].set_title('learning rate')\n"
       << "axes[0][1].plot(c['epoch'], c['train_loss'])\n"
       << "axes[0][1].set_yscale('log'); axes[0][1].set_title('train loss')\n"
       << "err = [1.0 - a for a in c['eval_acc']]\n"
       << "axes[1][0].plot(c['epoch'], err)\n"
       << "axes[1][0].set_title('eval error')\n"
       << "tail = len(err) // 2\n"
       << "axes[1][1].plot(c['epoch'][tail:], err[tail:])\n"
       << "axes[1][1].set_title('eval error (zoomed)')\n";
  } else {
    py << "tables = {name: load(name) for name in " << "[";
    for (std::size_t i = 0; i < csvs.size(); ++i)
      py << (i ? ", " : "") << "'" << csvs[i] << "'";
    py << "]}\n"
       << "fig, ax = plt.subplots(figsize=(8, 4))\n"
       << "for name, cols in tables.items():\n"
       << "    keys = list(cols)\n"
       << "    for k in keys[1:]:\n"
       << "        ax.plot(cols[keys[0]], cols[k], label=f'{name}:{k}')\n"
       << "ax.legend(fontsize=7)\n";
  }
  py << "\nfig.tight_layout()\n"
     << "fig.savefig(os.path.join(HERE, 'figures.png'), dpi=150)\n"
     << "print('wrote', os.path.join(HERE, 'figures.png'))\n";

  std::filesystem::path script = dir / "plot.py";
  std::ofstream f(script, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + script.string());
  f << py.str();
  return script;
}

}  // namespace adlab
