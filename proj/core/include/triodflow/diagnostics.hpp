#pragma once
// ===== Trajectory diagnostics =====
// Every observable tracked along a run: the tension-weighted energy and its
// dissipation identity, orientation norms, weighted curvature norms, the
// junction position and its distance to the straight equilibrium, plus
// post-hoc series tools (balance residuals, exponential decay fits) and the
// time-series CSV format.

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "triodflow/geometry.hpp"
#include "triodflow/model.hpp"

namespace triodflow {

// One row of the diagnostics stream.  energy_balance_residual is filled by
// fill_energy_balance_residuals once neighbouring records exist; it is 0
// until then.
struct DiagnosticsRecord {
  double t = 0.0;
  double energy = 0.0;
  double dissipation_rhs = 0.0;
  double energy_balance_residual = 0.0;
  double sum_delta_alpha_sq = 0.0;
  double alpha_sum = 0.0;
  double weighted_kappa_l2 = 0.0;
  double weighted_dkappa_l2 = 0.0;
  double herring_residual = 0.0;
  double junction_x = 0.0;
  double junction_y = 0.0;
  double junction_mismatch = 0.0;
  double dist_to_steiner = 0.0;
  double min_length = 0.0;
  bool triangle_condition_ok = true;
  std::array<double, 3> alpha{};
  std::array<double, 3> lengths{};
};

// sum_j sigma(delta_j) L_j  (sigma is constant along each curve).
double energy(const TriodState& state, const TriodModel& model);

// -sum_j ( int (sigma_j kappa_j)^2 ds + (d alpha_j/dt)^2 / gamma ), the
// right-hand side of the energy dissipation identity; the orientation rates
// come from the ODE right-hand side, not from differencing.
double dissipation_rhs(const TriodState& state, const TriodModel& model);

// sum_j (delta_j)^2 and sum_j alpha_j.
double misorientation_norm(const TriodState& state);
double alpha_sum(const TriodState& state);

// ( sum_j int sigma_j^2 kappa_j^2 ds , sum_j int sigma_j^3 (d kappa/ds)^2 ds )
// with second-order stencils throughout.
std::pair<double, double> weighted_curvature_norms(const TriodState& state,
                                                   const TriodModel& model);

// Assemble the full record for one state; steiner_reference is the straight
// equilibrium triod the run is expected to approach.
DiagnosticsRecord make_record(const TriodState& state, const TriodModel& model,
                              const EndpointSet& endpoints,
                              const PlanarTriod& steiner_reference);

// |dE/dt - dissipation_rhs| per interior record, with dE/dt from the
// quadratic through the three neighbouring (t, E) samples (handles the
// slightly non-uniform spacing of an adaptive step).  Throws
// InsufficientRecords below three records, ConfigError if times do not
// increase.
std::vector<double> energy_balance_residuals(
    const std::vector<DiagnosticsRecord>& records);

// Same residual written back into the records; the two end records use the
// one-sided quadratic through their nearest three samples.
void fill_energy_balance_residuals(std::vector<DiagnosticsRecord>& records);

// Log-linear least-squares fit y ~ exp(-rate * t) over window_begin <= t <=
// window_end.  Throws NonPositiveSamples if a windowed sample is <= 0,
// InsufficientRecords below three windowed samples.
struct DecayFit {
  double rate = 0.0;
  double r_squared = 0.0;
};
DecayFit decay_rate_fit(const std::vector<double>& ts,
                        const std::vector<double>& ys, double window_begin,
                        double window_end);
DecayFit decay_rate_fit(
    const std::vector<DiagnosticsRecord>& records,
    const std::function<double(const DiagnosticsRecord&)>& field,
    double window_begin, double window_end);

// Default fit window: skip the initial transient (first 10% of the span).
std::array<double, 2> default_fit_window(
    const std::vector<DiagnosticsRecord>& records);

// Time-series CSV (17 significant digits).  The header is part of the
// external interface and must not change.
inline constexpr const char* kTimeseriesHeader =
    "t,energy,dissipation_rhs,energy_balance_residual,sum_delta_alpha_sq,"
    "alpha_sum,weighted_kappa_l2,weighted_dkappa_l2,herring_residual,"
    "junction_x,junction_y,junction_mismatch,dist_to_steiner,min_length,"
    "alpha1,alpha2,alpha3,L1,L2,L3";
std::string timeseries_csv(const std::vector<DiagnosticsRecord>& records);
void write_timeseries_csv(const std::string& path,
                          const std::vector<DiagnosticsRecord>& records);

}  // namespace triodflow
