#pragma once
// ===== Run orchestration ===================================================
// Everything the command-line front end does apart from argument parsing:
// JSON run configurations (parse / validate / serialize round-trip), scenario
// dispatch, one full simulation with its output files (time-series CSV,
// optional snapshots, summary JSON), and concurrent parameter sweeps.  Kept in
// the core library so the pipeline is testable in-process.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "triodflow/diagnostics.hpp"
#include "triodflow/model.hpp"
#include "triodflow/solver.hpp"

namespace triodflow {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

// Initial-data recipe.  "straight" starts from the straight triod through the
// tension-weighted Fermat point of the endpoints; "perturbed" additionally
// bends each curve by bump_amplitude * sin(bump_mode*pi*x) * x^2 (plus the
// closure correction that keeps the three curves meeting at one point).
struct ScenarioSpec {
  std::string kind = "perturbed";  // "straight" | "perturbed"
  std::array<double, 3> alpha0{};
  double bump_amplitude = 0.0;  // ignored by "straight"
  int bump_mode = 1;            // ignored by "straight"
};

// One simulation, as read from a flat JSON file with keys
//   endpoints    3x2 array of numbers
//   sigma        {"model": "quadratic"|"cosh"|"constant", "s0": .., "c": ..}
//                ("c" only for the quadratic model)
//   gamma        relaxation coefficient of the orientation ODE, > 0
//   grid_n       spatial intervals per curve, >= 16
//   dt | cfl     exactly one: fixed step, or adaptive with cfl in (0, 1]
//   t_end        final time
//   record_every sink cadence in steps
//   snapshot_every  write snapshot_<k>.csv every this many records (0 = off)
//   scenario     {"kind", "alpha0", "bump_amplitude", "bump_mode"}
//   output_dir   directory for timeseries.csv / snapshots / summary.json
// plus the optional keys freeze_geometry (bool) and stop_residual (number).
// Unknown keys are rejected so typos fail loudly.
struct RunConfig {
  EndpointSet endpoints;
  SurfaceTensionModel sigma;
  double gamma = 1.0;
  int grid_n = 200;
  double dt = 0.0;   // exactly one of dt / cfl must be positive
  double cfl = 0.0;
  double t_end = 1.0;
  int record_every = 100;
  int snapshot_every = 0;
  ScenarioSpec scenario;
  std::string output_dir = "out";
  bool freeze_geometry = false;
  double stop_residual = 1e-9;
};

// Parse + validate a configuration from JSON text / a file on disk.  All
// failures are ConfigError with a message naming the offending field.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

// Full validation of an in-memory configuration (also called by the parsers).
void validate_run_config(const RunConfig& config);

// Canonical JSON form (fixed key order, 17 significant digits), chosen so
// that parse -> serialize -> parse is the identity on every field.
std::string serialize_run_config(const RunConfig& config);

// ---------------------------------------------------------------------------
// One run
// ---------------------------------------------------------------------------

struct RunSummary {
  RunStats stats;
  ResidualTriple final_residuals;
  double final_energy = 0.0;
  double final_min_length = 0.0;
  double final_junction_mismatch = 0.0;
  // The straight 120-degree reference triod does not exist when an endpoint
  // angle reaches 120 degrees; dist_to_steiner is only meaningful when true.
  bool has_steiner_reference = true;
  double dist_to_steiner = 0.0;
  // Log-linear decay fits over the default window; absent when the fit is
  // undefined (too few records, non-positive samples, stalled clock).
  std::optional<DecayFit> curvature_decay;       // weighted_kappa_l2
  std::optional<DecayFit> misorientation_decay;  // sum_delta_alpha_sq
  std::size_t records = 0;
  int snapshots = 0;
  std::string output_dir;
  std::string timeseries_path;
  std::string summary_path;
};

// Build the initial state, integrate to t_end, and write timeseries.csv,
// snapshot_<k>.csv (if enabled) and summary.json under config.output_dir.
// Solver failures propagate with the failing time attached; files written
// before the failure are left in place.
RunSummary execute_run(const RunConfig& config);

// The JSON text written to summary.json.
std::string summary_json(const RunSummary& summary);

// ---------------------------------------------------------------------------
// Parameter sweeps
// ---------------------------------------------------------------------------

// Sweep axes; an empty axis means "use the base value".  Runs are the
// Cartesian product in the fixed order gamma -> bump_amplitude -> alpha0
// (last axis fastest), indexed from 0.
struct SweepAxes {
  std::vector<double> gamma;
  std::vector<double> bump_amplitude;
  std::vector<std::array<double, 3>> alpha0;
};

// Base configuration plus a "sweep" object with the axis arrays.  Each run
// writes into <base output_dir>/run_<index>.
struct SweepConfig {
  RunConfig base;
  SweepAxes axes;
};

SweepConfig parse_sweep_config(const std::string& text);
SweepConfig load_sweep_config(const std::string& path);

struct SweepRow {
  std::size_t index = 0;
  double gamma = 0.0;
  double bump_amplitude = 0.0;
  std::array<double, 3> alpha0{};
  std::string output_dir;
  bool ok = false;
  std::string error_kind;     // empty when ok
  std::string error_message;  // empty when ok
  RunSummary summary;         // meaningful when ok
};

// Execute all runs on a worker pool (width capped by the TRIOD_FLOW_THREADS
// environment variable), collecting one row per run; per-run failures are
// recorded in their row and do not abort the batch.  Writes
// sweep_summary.json under the base output_dir and returns the rows in index
// order.
std::vector<SweepRow> execute_sweep(const SweepConfig& config);

// The JSON text written to sweep_summary.json.
std::string sweep_summary_json(const std::vector<SweepRow>& rows);

// ---------------------------------------------------------------------------
// Error classification for process exit codes
// ---------------------------------------------------------------------------

// Most-derived library error type of e ("NewtonDivergence", "ConfigError",
// ...), or "UnexpectedError" for exceptions from outside the hierarchy.
const char* error_kind_name(const std::exception& e);

// 2 for configuration/data errors, 3 for solver failures, 1 otherwise.
int error_exit_code(const std::exception& e);

}  // namespace triodflow
