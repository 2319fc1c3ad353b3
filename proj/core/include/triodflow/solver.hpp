#pragma once
// ===== Time integration =====
// IMEX advance of the angle fields: the stiff diffusion part
// (sigma/L^2) d^2(theta)/dx^2 is treated implicitly per curve (tridiagonal),
// the nonlocal advective part explicitly with lagged integrals, and the three
// coupled junction conditions
//   sum_j sigma_j cos theta_j(1) = 0,
//   sum_j sigma_j sin theta_j(1) = 0,
//   sum_j (sigma_j^2 / L_j) d(theta_j)/dx (1) = 0
// close the junction values through a damped Newton solve.  Lengths and
// orientations advance by explicit sub-steppers ordered alpha -> L -> theta.

#include <array>
#include <functional>
#include <vector>

#include "triodflow/model.hpp"

namespace triodflow {

inline constexpr double kDefaultEpsDen = 1e-8;  // junction-system denominator

struct SolverConfig {
  int grid_n = 200;  // >= 16
  // Exactly one of dt / cfl selects the step size: a fixed dt > 0, or an
  // adaptive dt = cfl * dx^2 * min_j (L_j^2 / sigma_j) with cfl in (0, 1].
  double dt = 0.0;
  double cfl = 0.0;
  double newton_tol = 1e-12;
  int newton_max_iter = 25;
  double t_end = 1.0;
  // Equilibrium detection: stop once Herring residual, weighted curvature
  // L2 norm and misorientation norm all fall below this (0 disables).
  double stop_residual = 1e-9;
  int record_every = 100;        // sink cadence, in steps
  bool freeze_geometry = false;  // advance alpha only; theta and L pinned
};
void validate_solver_config(const SolverConfig& config);

struct StepReport {
  double dt_used = 0.0;
  int newton_iterations = 0;
  double herring_residual_post = 0.0;
  double max_theta_update = 0.0;
};

// Per-step extrema gathered along a run (measured every step, not only at
// record times), plus how the run ended.
struct RunStats {
  long long steps = 0;
  double max_energy_rise = 0.0;          // max over steps of E_new - E_old
  double max_misorientation_rise = 0.0;  // same for sum (delta alpha)^2
  double alpha_sum_drift = 0.0;          // |sum alpha - sum alpha(0)| at end
  double final_time = 0.0;
  bool stopped_on_residual = false;
};

// dt implied by the adaptive rule at the current state.
double cfl_dt(const TriodState& state, const TriodModel& model,
              const SolverConfig& config);

// Tangential junction velocities lambda_j(1) from the cyclic coupling
//   lambda_j = -s_j V_{j+1} + c_j lambda_{j+1},
// where c_j/s_j are cos/sin of theta_{j+1}(1) - theta_j(1) and
// V_k = sigma_k kappa_k(1); solved in closed form with denominator
// 1 - c_1 c_2 c_3.  Throws DegenerateJunction when the tension triple fails
// the triangle condition or the denominator drops below eps_den.
std::array<double, 3> tangent_velocity_junction(const TriodState& state,
                                                const TriodModel& model,
                                                double eps_den = kDefaultEpsDen);

// Right-hand side of one curve's angle equation, diffusion reported apart
// from the rest so the splitting can treat it implicitly:
//   diffusion_i = (sigma/L^2) (d^2 theta/dx^2)_i
//   advection_i = (sigma (d theta/dx)_i / L^2)
//                   * (int_0^{x_i} (d theta/dx)^2 - x_i int_0^1 (d theta/dx)^2)
//                 + (x_i (d theta/dx)_i / L) * g
// with composite-trapezoid integrals and second-order stencils.
struct InteriorRhs {
  std::vector<double> diffusion;
  std::vector<double> advection;
};
InteriorRhs curve_rhs(const std::vector<double>& theta, double length,
                      double sigma_value, double g);
InteriorRhs rhs_interior(const TriodState& state, const TriodModel& model,
                         int j);

// Solves the three junction conditions for the three junction angle values
// (damped Newton, warm-started from the current values; the flux condition
// closes the one-sided derivative stencils).  Mutates theta_j at x=1 and
// returns the values together with the one-sided d(theta)/dx at the junction.
struct JunctionSolution {
  std::array<double, 3> junction_theta{};
  std::array<double, 3> junction_flux{};
  int iterations = 0;
};
JunctionSolution apply_junction_bc(TriodState& state, const TriodModel& model,
                                   const SolverConfig& config);

// One classical RK4 sub-step of the orientation ODE with lengths held fixed.
// The stage rates telescope, so the alpha sum is conserved to roundoff.
std::array<double, 3> step_alphas(const std::array<double, 3>& alpha,
                                  const std::array<double, 3>& lengths,
                                  const TriodModel& model, double dt);

// Explicit update of dL_j/dt = -(sigma_j/L_j) int_0^1 (d theta/dx)^2 + g_j.
// Throws LengthCollapse if a length would reach zero.
std::array<double, 3> step_lengths(const TriodState& state,
                                   const TriodModel& model, double dt);

// One full time step (alpha -> L -> theta with a corrector pass on the
// junction value).  Mutates the state in place.
StepReport step(TriodState& state, const TriodModel& model,
                const SolverConfig& config);

// The three residuals the equilibrium stop test combines.
struct ResidualTriple {
  double herring = 0.0;
  double curvature_l2 = 0.0;  // sum_j int (sigma_j kappa_j)^2 ds
  double misorientation = 0.0;
};
ResidualTriple stop_residuals(const TriodState& state, const TriodModel& model);

// Drives step() to t_end (or the residual stop), feeding the sink the
// initial state, every record_every-th step and the final state.  Errors
// raised mid-run are rethrown with the failing time attached.
using RecordSink =
    std::function<void(const TriodState& state, const StepReport& report)>;
RunStats run(TriodState& state, const TriodModel& model,
             const SolverConfig& config, const RecordSink& sink);

}  // namespace triodflow
