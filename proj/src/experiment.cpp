#include "ssf/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ssf/moi.hpp"
#include "ssf/shift_function.hpp"
#include "ssf/taylor.hpp"

namespace ssf {

using nlohmann::json;

// ---------------------------------------------------------------- battery

TestFunction FunctionDescriptor::make() const {
  if (family == "resolvent") return make_resolvent(z, k);
  if (family == "gaussian") return make_gaussian(center, width);
  if (family == "bump") return make_bump(radius, degree, center);
  throw std::invalid_argument("unknown function family '" + family + "'");
}

json FunctionDescriptor::to_json() const {
  if (family == "resolvent") {
    return {{"family", family}, {"z", {z.real(), z.imag()}}, {"k", k}};
  }
  if (family == "gaussian") {
    return {{"family", family}, {"center", center}, {"width", width}};
  }
  return {{"family", family}, {"center", center}, {"radius", radius}, {"degree", degree}};
}

std::vector<FunctionDescriptor> default_battery() {
  std::vector<FunctionDescriptor> out;
  auto resolvent = [&](Complex z, int k) {
    FunctionDescriptor d;
    d.family = "resolvent";
    d.z = z;
    d.k = k;
    out.push_back(d);
  };
  auto gaussian = [&](double c, double w) {
    FunctionDescriptor d;
    d.family = "gaussian";
    d.center = c;
    d.width = w;
    out.push_back(d);
  };
  auto bump = [&](double c, double a, int deg) {
    FunctionDescriptor d;
    d.family = "bump";
    d.center = c;
    d.radius = a;
    d.degree = deg;
    out.push_back(d);
  };
  resolvent({0.0, 1.0}, 1);
  resolvent({0.0, -1.0}, 1);
  resolvent({1.0, 1.0}, 1);
  resolvent({-1.0, 0.5}, 2);
  resolvent({0.5, 2.0}, 1);
  resolvent({2.0, -1.0}, 2);
  resolvent({0.0, 3.0}, 3);
  resolvent({-2.0, 1.0}, 1);
  gaussian(0.0, 1.0);
  gaussian(0.5, 0.7);
  gaussian(-1.0, 1.5);
  gaussian(1.0, 0.5);
  gaussian(0.0, 2.0);
  gaussian(-0.5, 0.4);
  bump(0.0, 2.0, 6);
  bump(0.5, 1.5, 6);
  bump(-1.0, 3.0, 7);
  bump(1.0, 1.0, 8);
  bump(0.0, 4.0, 6);
  bump(-0.5, 2.5, 7);
  return out;
}

Suite parse_suite(const std::string& name) {
  if (name == "verify") return Suite::verify;
  if (name == "ssf") return Suite::ssf;
  if (name == "bounds") return Suite::bounds;
  if (name == "models") return Suite::models;
  if (name == "bench") return Suite::bench;
  throw ConfigError("suite", "unknown suite '" + name + "'");
}

std::string to_string(Suite s) {
  switch (s) {
    case Suite::verify: return "verify";
    case Suite::ssf: return "ssf";
    case Suite::bounds: return "bounds";
    case Suite::models: return "models";
    case Suite::bench: return "bench";
  }
  return "verify";
}

// ---------------------------------------------------------------- config

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& path) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(join(path, key), "unknown field");
  }
}

template <typename T>
void read(const json& j, const char* key, const std::string& path, T& target) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  const std::string where = join(path, key);
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw ConfigError(where, "expected a boolean");
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) throw ConfigError(where, "expected a string");
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ConfigError(where, "expected an integer");
    if constexpr (std::is_unsigned_v<T>) {
      if (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0) {
        throw ConfigError(where, "expected a non-negative integer");
      }
    }
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw ConfigError(where, "expected a number");
  } else {
    if (!v.is_array()) throw ConfigError(where, "expected an array");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        throw ConfigError(where + "[" + std::to_string(i) + "]", "expected a number");
      }
    }
  }
  target = v.get<T>();
}

ModelSpec model_from_json(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j,
                 {"kind", "dim", "spacing", "spectral_scale", "perturbation_norm",
                  "schatten_index", "potential", "spectrum", "mass"},
                 path);
  ModelSpec m;
  std::string kind = "random";
  read(j, "kind", path, kind);
  try {
    m.kind = parse_model_kind(kind);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(join(path, "kind"), e.what());
  }
  read(j, "dim", path, m.dim);
  read(j, "spacing", path, m.spacing);
  read(j, "spectral_scale", path, m.spectral_scale);
  read(j, "perturbation_norm", path, m.perturbation_norm);
  read(j, "schatten_index", path, m.schatten_index);
  read(j, "potential", path, m.potential);
  read(j, "spectrum", path, m.spectrum);
  read(j, "mass", path, m.mass);
  return m;
}

json model_to_json(const ModelSpec& m) {
  json j = {{"kind", to_string(m.kind)}};
  switch (m.kind) {
    case ModelKind::random:
      j["dim"] = m.dim;
      j["spectral_scale"] = m.spectral_scale;
      j["perturbation_norm"] = m.perturbation_norm;
      j["schatten_index"] = m.schatten_index;
      break;
    case ModelKind::schrodinger1d:
    case ModelKind::dirac1d:
      j["dim"] = m.dim;
      j["spacing"] = m.spacing;
      j["potential"] = m.potential;
      if (m.kind == ModelKind::dirac1d) j["mass"] = m.mass;
      break;
    case ModelKind::diagonal:
      j["spectrum"] = m.spectrum;
      j["potential"] = m.potential;
      break;
  }
  return j;
}

FunctionDescriptor function_from_json(const json& j, const std::string& path) {
  require_object(j, path);
  FunctionDescriptor d;
  if (!j.contains("family")) throw ConfigError(join(path, "family"), "missing");
  read(j, "family", path, d.family);
  if (d.family == "resolvent") {
    reject_unknown(j, {"family", "z", "k"}, path);
    std::vector<double> z{0.0, 1.0};
    read(j, "z", path, z);
    if (z.size() != 2) throw ConfigError(join(path, "z"), "expected [re, im]");
    d.z = {z[0], z[1]};
    read(j, "k", path, d.k);
    if (d.z.imag() == 0.0) throw ConfigError(join(path, "z"), "must be non-real");
    if (d.k < 1) throw ConfigError(join(path, "k"), "must be >= 1");
  } else if (d.family == "gaussian") {
    reject_unknown(j, {"family", "center", "width"}, path);
    read(j, "center", path, d.center);
    read(j, "width", path, d.width);
    if (!(d.width > 0.0)) throw ConfigError(join(path, "width"), "must be positive");
  } else if (d.family == "bump") {
    reject_unknown(j, {"family", "center", "radius", "degree"}, path);
    read(j, "center", path, d.center);
    read(j, "radius", path, d.radius);
    read(j, "degree", path, d.degree);
    if (!(d.radius > 0.0)) throw ConfigError(join(path, "radius"), "must be positive");
    if (d.degree < 3) throw ConfigError(join(path, "degree"), "must be >= 3");
  } else {
    throw ConfigError(join(path, "family"), "unknown family '" + d.family + "'");
  }
  return d;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  require_object(j, "");
  reject_unknown(j,
                 {"suite", "model", "n", "epsilon", "battery", "trials", "seed", "output",
                  "grid", "record_runtime"},
                 "");
  ExperimentConfig c;
  std::string suite = "verify";
  read(j, "suite", "", suite);
  c.suite = parse_suite(suite);
  if (j.contains("model")) c.model = model_from_json(j.at("model"), "model");
  read(j, "n", "", c.n);
  read(j, "epsilon", "", c.epsilon);
  if (j.contains("battery")) {
    const json& b = j.at("battery");
    if (!b.is_array()) throw ConfigError("battery", "expected an array");
    c.battery.clear();
    for (std::size_t i = 0; i < b.size(); ++i) {
      c.battery.push_back(function_from_json(b[i], "battery[" + std::to_string(i) + "]"));
    }
  }
  read(j, "trials", "", c.trials);
  read(j, "seed", "", c.seed);
  if (j.contains("output")) {
    const json& o = j.at("output");
    require_object(o, "output");
    reject_unknown(o, {"dir", "report"}, "output");
    read(o, "dir", "output", c.out_dir);
    read(o, "report", "output", c.report_name);
  }
  read(j, "grid", "", c.grid);
  read(j, "record_runtime", "", c.record_runtime);
  c.validate();
  return c;
}

json ExperimentConfig::to_json() const {
  json battery_json = json::array();
  for (const auto& f : battery) battery_json.push_back(f.to_json());
  return {{"suite", to_string(suite)},
          {"model", model_to_json(model)},
          {"n", n},
          {"epsilon", epsilon},
          {"battery", battery_json},
          {"trials", trials},
          {"seed", seed},
          {"output", {{"dir", out_dir}, {"report", report_name}}},
          {"grid", grid},
          {"record_runtime", record_runtime}};
}

void ExperimentConfig::validate() const {
  if (n < 1 || n > 6) throw ConfigError("n", "must be in 1..6");
  if (trials < 1) throw ConfigError("trials", "must be >= 1");
  if (grid < 2) throw ConfigError("grid", "must be >= 2");
  if (battery.empty()) throw ConfigError("battery", "must not be empty");
  for (std::size_t i = 0; i < epsilon.size(); ++i) {
    if (!(epsilon[i] > 0.0)) {
      throw ConfigError("epsilon[" + std::to_string(i) + "]", "must be positive");
    }
  }
  for (std::size_t i = 0; i < battery.size(); ++i) {
    if (battery[i].family == "bump" && battery[i].degree < n + 1) {
      throw ConfigError("battery[" + std::to_string(i) + "].degree", "must be >= n + 1");
    }
  }
  if (report_name.empty()) throw ConfigError("output.report", "must not be empty");
  try {
    model.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    const auto colon = what.find(':');
    throw ConfigError(what.substr(0, colon),
                      colon == std::string::npos ? what : what.substr(colon + 2));
  }
}

// ---------------------------------------------------------------- report

bool ResidualReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

double ResidualReport::max_residual() const {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.residual);
  return m;
}

json ResidualReport::to_json() const {
  json list = json::array();
  for (const auto& c : checks) {
    json e = {{"name", c.name},
              {"lhs", {c.lhs.real(), c.lhs.imag()}},
              {"rhs", {c.rhs.real(), c.rhs.imag()}},
              {"residual", c.residual},
              {"tolerance", c.tolerance},
              {"pass", c.pass()}};
    if (!c.error.empty()) e["error"] = c.error;
    list.push_back(e);
  }
  json agg = aggregates;
  agg["max_residual"] = max_residual();
  agg["checks"] = checks.size();
  agg["failed"] = std::count_if(checks.begin(), checks.end(),
                                [](const Check& c) { return !c.pass(); });
  json j = {{"suite", suite}, {"checks", list}, {"aggregates", agg},
            {"all_pass", all_pass()}, {"files", files}};
  if (runtime_seconds) j["runtime_seconds"] = *runtime_seconds;
  return j;
}

// ---------------------------------------------------------------- suites

namespace {

struct OutputFile {
  std::string name;
  std::string content;
};

struct Context {
  const ExperimentConfig& config;
  ResidualReport report;
  std::vector<OutputFile> files;
  std::vector<TestFunction> battery;
};

int effective_trials(const ExperimentConfig& c) {
  return c.model.kind == ModelKind::random ? c.trials : 1;
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(trial);
}

ModelInstance trial_instance(const ExperimentConfig& c, int trial) {
  ModelSpec spec = c.model;
  spec.seed = trial_seed(c.seed, trial);
  return build_model(spec);
}

std::string trial_name(int t) { return "trial" + std::to_string(t); }

template <typename Fn>
void guarded(Context& ctx, const std::string& name, double tolerance, Fn&& fn) {
  Check c;
  c.name = name;
  c.tolerance = tolerance;
  try {
    fn(c);
  } catch (const std::exception& e) {
    c.error = e.what();
    c.residual = kInfinity;
  }
  ctx.report.add(std::move(c));
}

void trace_checks(Context& ctx, const ModelInstance& inst, const SpectralShiftFunction& eta,
                  const std::string& prefix, double& worst) {
  for (const auto& f : ctx.battery) {
    guarded(ctx, prefix + "/" + f.name() + "/trace_formula", 1e-7, [&](Check& c) {
      const auto r = verify_trace_formula(inst.H, inst.V, eta, f);
      c.lhs = r.lhs;
      c.rhs = r.rhs;
      c.residual = r.residual;
      worst = std::max(worst, r.residual);
    });
  }
}

void run_verify(Context& ctx) {
  const auto& cfg = ctx.config;
  double worst_remainder = 0.0, worst_trace = 0.0, worst_real = 0.0;
  for (int t = 0; t < effective_trials(cfg); ++t) {
    const ModelInstance inst = trial_instance(cfg, t);
    const std::string prefix = trial_name(t);
    for (const auto& f : ctx.battery) {
      guarded(ctx, prefix + "/" + f.name() + "/remainder_moi", 1e-9, [&](Check& c) {
        const RemainderProblem p{inst.H, inst.V, f, cfg.n};
        const Matrix direct = remainder_direct(p);
        const Matrix moi = remainder_moi(p);
        c.lhs = direct.trace();
        c.rhs = moi.trace();
        c.residual = (direct - moi).norm() / (1.0 + direct.norm());
        worst_remainder = std::max(worst_remainder, c.residual);
      });
    }
    SpectralShiftFunction eta;
    try {
      eta = ssf_bspline(inst.H, inst.V, cfg.n);
    } catch (const std::exception& e) {
      Check c;
      c.name = prefix + "/ssf_bspline";
      c.error = e.what();
      c.residual = kInfinity;
      ctx.report.add(c);
      continue;
    }
    trace_checks(ctx, inst, eta, prefix, worst_trace);
    guarded(ctx, prefix + "/realness", 1e-8, [&](Check& c) {
      const auto r = realness_report(inst.H, inst.V, cfg.n, ctx.battery);
      c.lhs = r.max_defect;
      c.residual = r.max_relative;
      worst_real = std::max(worst_real, r.max_relative);
    });
  }
  ctx.report.aggregates["max_remainder_residual"] = worst_remainder;
  ctx.report.aggregates["max_trace_residual"] = worst_trace;
  ctx.report.aggregates["max_imaginary_defect"] = worst_real;
}

std::string to_csv(const SpectralShiftFunction& eta, int grid) {
  std::ostringstream os;
  write_csv(os, eta, sample_grid(eta, grid));
  return os.str();
}

void run_ssf(Context& ctx) {
  const auto& cfg = ctx.config;
  double worst_trace = 0.0, worst_unique = 0.0;
  for (int t = 0; t < effective_trials(cfg); ++t) {
    const ModelInstance inst = trial_instance(cfg, t);
    const std::string prefix = trial_name(t);
    SpectralShiftFunction eta;
    try {
      eta = ssf_bspline(inst.H, inst.V, cfg.n);
    } catch (const std::exception& e) {
      Check c;
      c.name = prefix + "/ssf_bspline";
      c.error = e.what();
      c.residual = kInfinity;
      ctx.report.add(c);
      continue;
    }
    const std::string stem = "eta_" + prefix;
    ctx.files.push_back({stem + ".csv", to_csv(eta, cfg.grid)});
    ctx.files.push_back({stem + ".json", to_json(eta).dump(2) + "\n"});
    trace_checks(ctx, inst, eta, prefix, worst_trace);
    const char* other = cfg.n == 1 ? "krein" : "recursive";
    guarded(ctx, prefix + "/uniqueness_vs_" + other, 0.0, [&](Check& c) {
      const SpectralShiftFunction b =
          cfg.n == 1 ? krein_ssf(inst.H, inst.V) : ssf_recursive(inst.H, inst.V, cfg.n);
      const auto r = uniqueness_mod_polynomial(eta, b, cfg.n);
      c.lhs = r.residual_l1;
      c.rhs = r.reference_l1;
      c.residual = r.residual_l1;
      c.tolerance = r.tolerance;
      worst_unique = std::max(worst_unique, r.residual_l1);
    });
  }
  ctx.report.aggregates["max_trace_residual"] = worst_trace;
  ctx.report.aggregates["max_uniqueness_residual"] = worst_unique;
}

void run_bounds(Context& ctx) {
  const auto& cfg = ctx.config;
  std::vector<double> eps = cfg.epsilon;
  std::sort(eps.begin(), eps.end());
  std::vector<double> sup_ratio(eps.size(), 0.0);
  double sup_schatten = 0.0, min_fourier_margin = kInfinity;
  json per_trial = json::array();
  for (int t = 0; t < effective_trials(cfg); ++t) {
    const ModelInstance inst = trial_instance(cfg, t);
    const std::string prefix = trial_name(t);
    guarded(ctx, prefix + "/weighted_l1_monotone", 0.0, [&](Check& c) {
      const SpectralShiftFunction eta = ssf_bspline(inst.H, inst.V, cfg.n);
      json values = json::array();
      double prev = kInfinity, violation = 0.0;
      for (std::size_t i = 0; i < eps.size(); ++i) {
        const auto r = weighted_l1_report(eta, eps[i]);
        if (!std::isfinite(r.ratio)) throw std::runtime_error("non-finite weighted ratio");
        values.push_back({{"epsilon", eps[i]}, {"value", r.value}, {"ratio", r.ratio}});
        sup_ratio[i] = std::max(sup_ratio[i], r.ratio);
        if (std::isfinite(prev)) violation = std::max(violation, r.value - prev);
        prev = r.value;
      }
      per_trial.push_back(values);
      c.lhs = values.empty() ? 0.0 : values.front()["value"].get<double>();
      c.rhs = values.empty() ? 0.0 : values.back()["value"].get<double>();
      c.residual = violation;
      c.tolerance = 1e-12 * (1.0 + std::abs(c.lhs));
    });

    MoiProblem p{std::vector<HermitianOperator>(static_cast<std::size_t>(cfg.n + 1), inst.H),
                 std::vector<Matrix>(static_cast<std::size_t>(cfg.n), inst.V),
                 ctx.battery.front()};
    const std::vector<double> alphas(static_cast<std::size_t>(cfg.n),
                                     static_cast<double>(cfg.n));
    for (const auto& f : ctx.battery) {
      p.symbol = f;
      if (f.fourier_l1(cfg.n)) {
        guarded(ctx, prefix + "/" + f.name() + "/fourier_bound", 0.0, [&](Check& c) {
          const auto r = fourier_bound_check(p, alphas);
          c.lhs = r.moi_norm;
          c.rhs = r.bound;
          c.residual = std::max(0.0, -r.margin);
          c.tolerance = 1e-12 * (1.0 + r.bound);
          min_fourier_margin = std::min(min_fourier_margin, r.margin);
        });
      }
      if (cfg.n >= 2) {
        guarded(ctx, prefix + "/" + f.name() + "/schatten_ratio_finite", 0.0, [&](Check& c) {
          const auto r = schatten_bound_check(p, alphas);
          c.lhs = r.moi_norm;
          c.rhs = r.sup_derivative * r.perturbation_product;
          c.residual = std::isfinite(r.ratio) ? 0.0 : kInfinity;
          sup_schatten = std::max(sup_schatten, r.ratio);
        });
      }
    }
  }
  json constants = json::object();
  for (std::size_t i = 0; i < eps.size(); ++i) {
    std::ostringstream key;
    key << eps[i];
    constants[key.str()] = sup_ratio[i];
  }
  ctx.report.aggregates["empirical_c_n"] = constants;
  ctx.report.aggregates["weighted_l1"] = per_trial;
  ctx.report.aggregates["empirical_schatten_constant"] = sup_schatten;
  if (std::isfinite(min_fourier_margin)) {
    ctx.report.aggregates["min_fourier_margin"] = min_fourier_margin;
  }
}

void run_models(Context& ctx) {
  const auto& cfg = ctx.config;
  double min_margin = kInfinity;
  for (int t = 0; t < effective_trials(cfg); ++t) {
    const std::string prefix = trial_name(t);
    ModelInstance inst;
    try {
      inst = trial_instance(cfg, t);
    } catch (const std::exception& e) {
      Check c;
      c.name = prefix + "/build";
      c.error = e.what();
      c.residual = kInfinity;
      ctx.report.add(c);
      continue;
    }
    guarded(ctx, prefix + "/perturbation_hermitian", 1e-14, [&](Check& c) {
      c.residual = hermitian_residual(inst.V);
    });
    NormalSource rng(trial_seed(cfg.seed, t) ^ 0x5DEECE66DULL);
    Matrix w = gaussian_hermitian(rng, inst.H.dim());
    const double wn = schatten_norm(w, kInfinity);
    if (wn > 0.0) w /= wn;
    for (double p : {1.0, 2.0, 3.0, static_cast<double>(cfg.n)}) {
      std::ostringstream name;
      name << prefix << "/perturbed_resolvent/p" << p;
      guarded(ctx, name.str(), 1e-12, [&](Check& c) {
        const auto r = perturbed_resolvent_check(inst.H, inst.V, w, p);
        c.lhs = r.lhs;
        c.rhs = r.rhs;
        c.residual = std::max(0.0, -r.margin());
        min_margin = std::min(min_margin, r.margin());
      });
    }
    if (cfg.model.kind == ModelKind::schrodinger1d) {
      const auto s = build_schrodinger_1d(cfg.model, static_cast<double>(cfg.n));
      ctx.report.aggregates["relative_schatten_norm"] = s.relative_norm;
      ctx.report.aggregates["potential_lp_norm"] = s.potential_norm;
    }
  }
  if (std::isfinite(min_margin)) ctx.report.aggregates["min_perturbed_resolvent_margin"] = min_margin;
}

void run_bench(Context& ctx) {
  const auto& cfg = ctx.config;
  double worst = 0.0;
  for (int t = 0; t < effective_trials(cfg); ++t) {
    const ModelInstance inst = trial_instance(cfg, t);
    const auto eta = ssf_bspline(inst.H, inst.V, cfg.n);
    trace_checks(ctx, inst, eta, trial_name(t), worst);
  }
  ctx.report.aggregates["max_trace_residual"] = worst;
}

Context execute(const ExperimentConfig& config) {
  config.validate();
  Context ctx{config, {}, {}, {}};
  for (const auto& d : config.battery) ctx.battery.push_back(d.make());
  ctx.report.suite = to_string(config.suite);
  const auto start = std::chrono::steady_clock::now();
  switch (config.suite) {
    case Suite::verify: run_verify(ctx); break;
    case Suite::ssf: run_ssf(ctx); break;
    case Suite::bounds: run_bounds(ctx); break;
    case Suite::models: run_models(ctx); break;
    case Suite::bench: run_bench(ctx); break;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  if (config.record_runtime) ctx.report.runtime_seconds = elapsed.count();
  for (const auto& f : ctx.files) ctx.report.files.push_back(f.name);
  ctx.report.aggregates["config"] = config.to_json();
  return ctx;
}

}  // namespace

ResidualReport run_in_memory(const ExperimentConfig& config) {
  return execute(config).report;
}

ResidualReport run(const ExperimentConfig& config) {
  Context ctx = execute(config);
  const std::filesystem::path dir(config.out_dir);
  std::filesystem::create_directories(dir);
  for (const auto& f : ctx.files) {
    std::ofstream out(dir / f.name, std::ios::binary);
    out << f.content;
    if (!out) throw std::runtime_error("cannot write " + (dir / f.name).string());
  }
  std::ofstream out(dir / config.report_name, std::ios::binary);
  out << ctx.report.to_json().dump(2) << "\n";
  if (!out) throw std::runtime_error("cannot write " + (dir / config.report_name).string());
  return ctx.report;
}

}  // namespace ssf
