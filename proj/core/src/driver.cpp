#include "triodflow/driver.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "triodflow/errors.hpp"
#include "triodflow/geometry.hpp"
#include "triodflow/scenario.hpp"

namespace triodflow {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// ===== JSON helpers ========================================================

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

// scope is the dotted prefix for error messages ("" or "sigma." etc.).
const json& require_field(const json& obj, const char* name,
                          const std::string& scope) {
  const auto it = obj.find(name);
  if (it == obj.end())
    throw ConfigError("missing field '" + scope + name + "'");
  return *it;
}

double number_field(const json& obj, const char* name,
                    const std::string& scope) {
  const json& v = require_field(obj, name, scope);
  if (!v.is_number())
    throw ConfigError("field '" + scope + name + "' must be a number");
  return v.get<double>();
}

int int_field(const json& obj, const char* name, const std::string& scope) {
  const json& v = require_field(obj, name, scope);
  if (!v.is_number_integer())
    throw ConfigError("field '" + scope + name + "' must be an integer");
  return v.get<int>();
}

std::string string_field(const json& obj, const char* name,
                         const std::string& scope) {
  const json& v = require_field(obj, name, scope);
  if (!v.is_string())
    throw ConfigError("field '" + scope + name + "' must be a string");
  return v.get<std::string>();
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& scope) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* name : allowed)
      if (item.key() == name) {
        known = true;
        break;
      }
    if (!known)
      throw ConfigError("unknown config field '" + scope + item.key() + "'");
  }
}

std::array<double, 3> triple_field(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 3)
    throw ConfigError(what + " must be an array of 3 numbers");
  std::array<double, 3> out{};
  for (int j = 0; j < 3; ++j) {
    if (!v[j].is_number())
      throw ConfigError(what + " must be an array of 3 numbers");
    out[j] = v[j].get<double>();
  }
  return out;
}

// 17 significant digits round-trips doubles exactly; non-finite values have
// no JSON spelling and are emitted as null.
std::string num(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) {
  return json(s).dump();  // JSON string escaping
}

std::string triple_text(const std::array<double, 3>& a) {
  return "[" + num(a[0]) + ", " + num(a[1]) + ", " + num(a[2]) + "]";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open " + path + " for writing");
  file << text;
  if (!file) throw Error("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream out;
  out << file.rdbuf();
  return out.str();
}

// ===== config <-> struct ===================================================

SurfaceTensionModel parse_sigma(const json& obj) {
  if (!obj.is_object()) throw ConfigError("field 'sigma' must be an object");
  const std::string model = string_field(obj, "model", "sigma.");
  // Range checks happen here so the error names the config field rather than
  // surfacing the factory's own wording.
  if (model == "quadratic") {
    check_keys(obj, {"model", "s0", "c"}, "sigma.");
    const double s0 = number_field(obj, "s0", "sigma.");
    const double c = number_field(obj, "c", "sigma.");
    if (!(s0 > 0.0)) throw ConfigError("sigma.s0 must be positive");
    if (!(c > 0.0)) throw ConfigError("sigma.c must be positive");
    return SurfaceTensionModel::quadratic(s0, c);
  }
  if (model == "cosh" || model == "constant") {
    check_keys(obj, {"model", "s0"}, "sigma.");
    const double s0 = number_field(obj, "s0", "sigma.");
    if (!(s0 > 0.0)) throw ConfigError("sigma.s0 must be positive");
    return model == "cosh" ? SurfaceTensionModel::cosh_profile(s0)
                           : SurfaceTensionModel::constant(s0);
  }
  throw ConfigError(
      "sigma.model must be one of 'quadratic', 'cosh', 'constant'");
}

ScenarioSpec parse_scenario(const json& obj) {
  if (!obj.is_object())
    throw ConfigError("field 'scenario' must be an object");
  check_keys(obj, {"kind", "alpha0", "bump_amplitude", "bump_mode"},
             "scenario.");
  ScenarioSpec out;
  out.kind = string_field(obj, "kind", "scenario.");
  if (out.kind != "straight" && out.kind != "perturbed")
    throw ConfigError("scenario.kind must be 'straight' or 'perturbed'");
  out.alpha0 =
      triple_field(require_field(obj, "alpha0", "scenario."), "scenario.alpha0");
  if (out.kind == "perturbed") {
    out.bump_amplitude = number_field(obj, "bump_amplitude", "scenario.");
    out.bump_mode = int_field(obj, "bump_mode", "scenario.");
  } else {
    if (obj.contains("bump_amplitude"))
      out.bump_amplitude = number_field(obj, "bump_amplitude", "scenario.");
    if (obj.contains("bump_mode"))
      out.bump_mode = int_field(obj, "bump_mode", "scenario.");
  }
  return out;
}

RunConfig parse_run_config_json(const json& root) {
  if (!root.is_object())
    throw ConfigError("config root must be a JSON object");
  check_keys(root,
             {"endpoints", "sigma", "gamma", "grid_n", "dt", "cfl", "t_end",
              "record_every", "snapshot_every", "scenario", "output_dir",
              "freeze_geometry", "stop_residual"},
             "");

  RunConfig out;
  const json& eps = require_field(root, "endpoints", "");
  if (!eps.is_array() || eps.size() != 3)
    throw ConfigError("endpoints must be a 3x2 array of numbers");
  for (int j = 0; j < 3; ++j) {
    if (!eps[j].is_array() || eps[j].size() != 2 || !eps[j][0].is_number() ||
        !eps[j][1].is_number())
      throw ConfigError("endpoints must be a 3x2 array of numbers");
    out.endpoints.p[j] = Vec2{eps[j][0].get<double>(), eps[j][1].get<double>()};
  }

  out.sigma = parse_sigma(require_field(root, "sigma", ""));
  out.gamma = number_field(root, "gamma", "");
  out.grid_n = int_field(root, "grid_n", "");
  if (root.contains("dt") && root.contains("cfl"))
    throw ConfigError("specify exactly one of 'dt' and 'cfl'");
  out.dt = root.contains("dt") ? number_field(root, "dt", "") : 0.0;
  out.cfl = root.contains("cfl") ? number_field(root, "cfl", "") : 0.0;
  if (!root.contains("dt") && !root.contains("cfl"))
    throw ConfigError("specify exactly one of 'dt' and 'cfl'");
  out.t_end = number_field(root, "t_end", "");
  out.record_every = int_field(root, "record_every", "");
  out.snapshot_every = root.contains("snapshot_every")
                           ? int_field(root, "snapshot_every", "")
                           : 0;
  out.scenario = parse_scenario(require_field(root, "scenario", ""));
  out.output_dir = string_field(root, "output_dir", "");
  if (root.contains("freeze_geometry")) {
    const json& v = root["freeze_geometry"];
    if (!v.is_boolean())
      throw ConfigError("field 'freeze_geometry' must be a boolean");
    out.freeze_geometry = v.get<bool>();
  }
  if (root.contains("stop_residual"))
    out.stop_residual = number_field(root, "stop_residual", "");

  validate_run_config(out);
  return out;
}

SolverConfig make_solver_config(const RunConfig& config) {
  SolverConfig solver;
  solver.grid_n = config.grid_n;
  solver.dt = config.dt;
  solver.cfl = config.cfl;
  solver.t_end = config.t_end;
  solver.record_every = config.record_every;
  solver.stop_residual = config.stop_residual;
  solver.freeze_geometry = config.freeze_geometry;
  return solver;
}

// ===== worker pool =========================================================

int pool_width(std::size_t jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("TRIOD_FLOW_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0 && static_cast<unsigned>(cap) < hw)
      hw = static_cast<unsigned>(cap);
  }
  return static_cast<int>(std::min<std::size_t>(hw, std::max<std::size_t>(
                                                        jobs, 1)));
}

}  // namespace

// ===== configuration entry points ==========================================

void validate_run_config(const RunConfig& config) {
  validate_endpoints(config.endpoints);
  if (!(config.gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (!(config.sigma.s0 > 0.0)) throw ConfigError("sigma.s0 must be positive");
  if (config.sigma.kind == SigmaKind::Quadratic && !(config.sigma.c > 0.0))
    throw ConfigError("sigma.c must be positive");
  if (config.scenario.kind != "straight" && config.scenario.kind != "perturbed")
    throw ConfigError("scenario.kind must be 'straight' or 'perturbed'");
  for (double a : config.scenario.alpha0)
    if (!std::isfinite(a))
      throw ConfigError("scenario.alpha0 entries must be finite");
  if (config.scenario.kind == "perturbed") {
    if (!std::isfinite(config.scenario.bump_amplitude))
      throw ConfigError("scenario.bump_amplitude must be finite");
    if (config.scenario.bump_mode < 1)
      throw ConfigError("scenario.bump_mode must be >= 1");
  }
  if (config.snapshot_every < 0)
    throw ConfigError("snapshot_every must be >= 0");
  if (config.output_dir.empty())
    throw ConfigError("output_dir must not be empty");
  validate_solver_config(make_solver_config(config));
}

RunConfig parse_run_config(const std::string& text) {
  return parse_run_config_json(parse_json_text(text));
}

RunConfig load_run_config(const std::string& path) {
  return parse_run_config(read_text_file(path));
}

std::string serialize_run_config(const RunConfig& config) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"endpoints\": [";
  for (int j = 0; j < 3; ++j)
    out << (j ? ", [" : "[") << num(config.endpoints.p[j].x) << ", "
        << num(config.endpoints.p[j].y) << "]";
  out << "],\n";
  out << "  \"sigma\": {\"model\": ";
  switch (config.sigma.kind) {
    case SigmaKind::Quadratic:
      out << "\"quadratic\", \"s0\": " << num(config.sigma.s0)
          << ", \"c\": " << num(config.sigma.c);
      break;
    case SigmaKind::Cosh:
      out << "\"cosh\", \"s0\": " << num(config.sigma.s0);
      break;
    case SigmaKind::Constant:
      out << "\"constant\", \"s0\": " << num(config.sigma.s0);
      break;
  }
  out << "},\n";
  out << "  \"gamma\": " << num(config.gamma) << ",\n";
  out << "  \"grid_n\": " << config.grid_n << ",\n";
  if (config.dt > 0.0)
    out << "  \"dt\": " << num(config.dt) << ",\n";
  else
    out << "  \"cfl\": " << num(config.cfl) << ",\n";
  out << "  \"t_end\": " << num(config.t_end) << ",\n";
  out << "  \"record_every\": " << config.record_every << ",\n";
  out << "  \"snapshot_every\": " << config.snapshot_every << ",\n";
  out << "  \"scenario\": {\"kind\": " << quoted(config.scenario.kind)
      << ", \"alpha0\": " << triple_text(config.scenario.alpha0)
      << ", \"bump_amplitude\": " << num(config.scenario.bump_amplitude)
      << ", \"bump_mode\": " << config.scenario.bump_mode << "},\n";
  out << "  \"output_dir\": " << quoted(config.output_dir) << ",\n";
  out << "  \"freeze_geometry\": "
      << (config.freeze_geometry ? "true" : "false") << ",\n";
  out << "  \"stop_residual\": " << num(config.stop_residual) << "\n";
  out << "}\n";
  return out.str();
}

// ===== one run =============================================================

std::string summary_json(const RunSummary& s) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"steps\": " << s.stats.steps << ",\n";
  out << "  \"final_time\": " << num(s.stats.final_time) << ",\n";
  out << "  \"stopped_on_residual\": "
      << (s.stats.stopped_on_residual ? "true" : "false") << ",\n";
  out << "  \"records\": " << s.records << ",\n";
  out << "  \"snapshots\": " << s.snapshots << ",\n";
  out << "  \"final_residuals\": {\"herring\": " << num(s.final_residuals.herring)
      << ", \"curvature_l2\": " << num(s.final_residuals.curvature_l2)
      << ", \"misorientation\": " << num(s.final_residuals.misorientation)
      << "},\n";
  out << "  \"final_energy\": " << num(s.final_energy) << ",\n";
  out << "  \"final_min_length\": " << num(s.final_min_length) << ",\n";
  out << "  \"junction_mismatch\": " << num(s.final_junction_mismatch) << ",\n";
  out << "  \"dist_to_steiner\": "
      << (s.has_steiner_reference ? num(s.dist_to_steiner) : "null") << ",\n";
  out << "  \"alpha_sum_drift\": " << num(s.stats.alpha_sum_drift) << ",\n";
  out << "  \"max_energy_rise\": " << num(s.stats.max_energy_rise) << ",\n";
  out << "  \"max_misorientation_rise\": "
      << num(s.stats.max_misorientation_rise) << ",\n";
  out << "  \"decay_rates\": {\n";
  const auto fit_text = [](const std::optional<DecayFit>& fit) {
    if (!fit) return std::string("null");
    return "{\"rate\": " + num(fit->rate) +
           ", \"r_squared\": " + num(fit->r_squared) + "}";
  };
  out << "    \"weighted_kappa_l2\": " << fit_text(s.curvature_decay) << ",\n";
  out << "    \"sum_delta_alpha_sq\": " << fit_text(s.misorientation_decay)
      << "\n";
  out << "  },\n";
  // basename only: the CSV sits next to summary.json, and identical configs
  // must produce byte-identical summaries regardless of output_dir
  out << "  \"timeseries\": "
      << quoted(fs::path(s.timeseries_path).filename().string()) << "\n";
  out << "}\n";
  return out.str();
}

RunSummary execute_run(const RunConfig& config) {
  validate_run_config(config);
  const TriodModel model{config.sigma, config.gamma};

  TriodState state =
      config.scenario.kind == "straight"
          ? straight_herring_initial(config.endpoints, config.scenario.alpha0,
                                     model, config.grid_n)
          : perturbed_steiner_initial(config.endpoints, config.scenario.alpha0,
                                      model, config.grid_n,
                                      config.scenario.bump_amplitude,
                                      config.scenario.bump_mode);

  // Straight 120-degree reference for the dist_to_steiner column; it does
  // not exist when an endpoint-triangle angle reaches 120 degrees, in which
  // case the column carries NaN and the summary reports null.
  bool has_steiner = true;
  PlanarTriod reference;
  try {
    reference = steiner_triod(config.endpoints, config.grid_n);
  } catch (const Error&) {
    has_steiner = false;
    reference = reconstruct(state, config.endpoints);
  }

  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec)
    throw Error("cannot create output directory '" + config.output_dir +
                "': " + ec.message());
  const auto in_dir = [&](const std::string& name) {
    return (fs::path(config.output_dir) / name).string();
  };

  std::vector<DiagnosticsRecord> records;
  int snapshots = 0;
  std::size_t record_ordinal = 0;
  const RecordSink sink = [&](const TriodState& s, const StepReport&) {
    DiagnosticsRecord rec = make_record(s, model, config.endpoints, reference);
    if (!has_steiner)
      rec.dist_to_steiner = std::numeric_limits<double>::quiet_NaN();
    records.push_back(rec);
    if (config.snapshot_every > 0 &&
        record_ordinal % static_cast<std::size_t>(config.snapshot_every) == 0) {
      char name[40];
      std::snprintf(name, sizeof(name), "snapshot_%04zu.csv", record_ordinal);
      write_snapshot_csv(in_dir(name), s, config.endpoints);
      ++snapshots;
    }
    ++record_ordinal;
  };

  RunSummary out;
  out.output_dir = config.output_dir;
  out.timeseries_path = in_dir("timeseries.csv");
  out.summary_path = in_dir("summary.json");

  out.stats = run(state, model, make_solver_config(config), sink);

  if (records.size() >= 3) fill_energy_balance_residuals(records);
  write_timeseries_csv(out.timeseries_path, records);

  out.final_residuals = stop_residuals(state, model);
  out.final_energy = records.back().energy;
  out.final_min_length = records.back().min_length;
  out.final_junction_mismatch = records.back().junction_mismatch;
  out.has_steiner_reference = has_steiner;
  out.dist_to_steiner = has_steiner ? records.back().dist_to_steiner : 0.0;
  out.records = records.size();
  out.snapshots = snapshots;

  const auto try_fit =
      [&](double (*field)(const DiagnosticsRecord&)) -> std::optional<DecayFit> {
    try {
      const auto window = default_fit_window(records);
      return decay_rate_fit(records, field, window[0], window[1]);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  out.curvature_decay =
      try_fit([](const DiagnosticsRecord& r) { return r.weighted_kappa_l2; });
  out.misorientation_decay =
      try_fit([](const DiagnosticsRecord& r) { return r.sum_delta_alpha_sq; });

  write_text_file(out.summary_path, summary_json(out));
  return out;
}

// ===== sweeps ==============================================================

SweepConfig parse_sweep_config(const std::string& text) {
  json root = parse_json_text(text);
  if (!root.is_object())
    throw ConfigError("config root must be a JSON object");
  const json sweep = require_field(root, "sweep", "");
  if (!sweep.is_object()) throw ConfigError("field 'sweep' must be an object");
  root.erase("sweep");

  SweepConfig out;
  out.base = parse_run_config_json(root);

  check_keys(sweep, {"gamma", "bump_amplitude", "alpha0"}, "sweep.");
  const auto number_axis = [&](const char* name) {
    std::vector<double> axis;
    if (!sweep.contains(name)) return axis;
    const json& v = sweep[name];
    if (!v.is_array() || v.empty())
      throw ConfigError("field 'sweep." + std::string(name) +
                        "' must be a non-empty array of numbers");
    for (const auto& x : v) {
      if (!x.is_number())
        throw ConfigError("field 'sweep." + std::string(name) +
                          "' must be a non-empty array of numbers");
      axis.push_back(x.get<double>());
    }
    return axis;
  };
  out.axes.gamma = number_axis("gamma");
  out.axes.bump_amplitude = number_axis("bump_amplitude");
  if (sweep.contains("alpha0")) {
    const json& v = sweep["alpha0"];
    if (!v.is_array() || v.empty())
      throw ConfigError(
          "field 'sweep.alpha0' must be a non-empty array of alpha triples");
    for (const auto& t : v)
      out.axes.alpha0.push_back(triple_field(t, "sweep.alpha0 entry"));
  }
  return out;
}

SweepConfig load_sweep_config(const std::string& path) {
  return parse_sweep_config(read_text_file(path));
}

std::string sweep_summary_json(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& row = rows[i];
    out << "  {\"index\": " << row.index << ", \"gamma\": " << num(row.gamma)
        << ", \"bump_amplitude\": " << num(row.bump_amplitude)
        << ", \"alpha0\": " << triple_text(row.alpha0)
        << ", \"output_dir\": " << quoted(row.output_dir);
    if (row.ok) {
      out << ", \"status\": \"ok\", \"steps\": " << row.summary.stats.steps
          << ", \"final_time\": " << num(row.summary.stats.final_time)
          << ", \"stopped_on_residual\": "
          << (row.summary.stats.stopped_on_residual ? "true" : "false")
          << ", \"final_energy\": " << num(row.summary.final_energy)
          << ", \"final_residuals\": {\"herring\": "
          << num(row.summary.final_residuals.herring) << ", \"curvature_l2\": "
          << num(row.summary.final_residuals.curvature_l2)
          << ", \"misorientation\": "
          << num(row.summary.final_residuals.misorientation) << "}"
          << ", \"dist_to_steiner\": "
          << (row.summary.has_steiner_reference
                  ? num(row.summary.dist_to_steiner)
                  : "null");
    } else {
      out << ", \"status\": \"failed\", \"error_kind\": "
          << quoted(row.error_kind)
          << ", \"error_message\": " << quoted(row.error_message);
    }
    out << "}" << (i + 1 < rows.size() ? "," : "") << "\n";
  }
  out << "]\n";
  return out.str();
}

std::vector<SweepRow> execute_sweep(const SweepConfig& config) {
  validate_run_config(config.base);

  const std::vector<double> gammas = config.axes.gamma.empty()
                                         ? std::vector<double>{config.base.gamma}
                                         : config.axes.gamma;
  const std::vector<double> amplitudes =
      config.axes.bump_amplitude.empty()
          ? std::vector<double>{config.base.scenario.bump_amplitude}
          : config.axes.bump_amplitude;
  const std::vector<std::array<double, 3>> alphas =
      config.axes.alpha0.empty()
          ? std::vector<std::array<double, 3>>{config.base.scenario.alpha0}
          : config.axes.alpha0;

  std::error_code ec;
  fs::create_directories(config.base.output_dir, ec);
  if (ec)
    throw Error("cannot create output directory '" + config.base.output_dir +
                "': " + ec.message());

  std::vector<SweepRow> rows(gammas.size() * amplitudes.size() * alphas.size());
  std::size_t index = 0;
  for (double g : gammas)
    for (double a : amplitudes)
      for (const auto& al : alphas) {
        SweepRow& row = rows[index];
        row.index = index;
        row.gamma = g;
        row.bump_amplitude = a;
        row.alpha0 = al;
        char name[32];
        std::snprintf(name, sizeof(name), "run_%04zu", index);
        row.output_dir =
            (fs::path(config.base.output_dir) / name).string();
        ++index;
      }

  const auto run_one = [&](SweepRow& row) {
    RunConfig rc = config.base;
    rc.gamma = row.gamma;
    rc.scenario.bump_amplitude = row.bump_amplitude;
    rc.scenario.alpha0 = row.alpha0;
    rc.output_dir = row.output_dir;
    try {
      row.summary = execute_run(rc);
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error_kind = error_kind_name(e);
      row.error_message = e.what();
    }
  };

  const int width = pool_width(rows.size());
  if (width <= 1) {
    for (SweepRow& row : rows) run_one(row);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(width));
    for (int w = 0; w < width; ++w)
      workers.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= rows.size()) return;
          run_one(rows[i]);
        }
      });
    for (auto& worker : workers) worker.join();
  }

  write_text_file(
      (fs::path(config.base.output_dir) / "sweep_summary.json").string(),
      sweep_summary_json(rows));
  return rows;
}

// ===== error classification ================================================

const char* error_kind_name(const std::exception& e) {
  if (dynamic_cast<const NewtonDivergence*>(&e)) return "NewtonDivergence";
  if (dynamic_cast<const DegenerateJunction*>(&e)) return "DegenerateJunction";
  if (dynamic_cast<const LengthCollapse*>(&e)) return "LengthCollapse";
  if (dynamic_cast<const SolverFailure*>(&e)) return "SolverFailure";
  if (dynamic_cast<const SolverError*>(&e)) return "SolverError";
  if (dynamic_cast<const A2LikeViolation*>(&e)) return "A2LikeViolation";
  if (dynamic_cast<const A2Violation*>(&e)) return "A2Violation";
  if (dynamic_cast<const VertexOptimal*>(&e)) return "VertexOptimal";
  if (dynamic_cast<const DegenerateAngle*>(&e)) return "DegenerateAngle";
  if (dynamic_cast<const InsufficientRecords*>(&e))
    return "InsufficientRecords";
  if (dynamic_cast<const NonPositiveSamples*>(&e)) return "NonPositiveSamples";
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const Error*>(&e)) return "Error";
  return "UnexpectedError";
}

int error_exit_code(const std::exception& e) {
  if (dynamic_cast<const SolverError*>(&e)) return 3;
  if (dynamic_cast<const Error*>(&e)) return 2;
  return 1;
}

}  // namespace triodflow
