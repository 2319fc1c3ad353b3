#include "triodflow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace triodflow {

namespace {

// ----- grid helpers --------------------------------------------------------

// Second-order d(theta)/dx samples: central interior, three-point one-sided
// at both ends (no boundary condition assumed).
void dx_derivative(const std::vector<double>& th, std::vector<double>& out) {
  const int n = static_cast<int>(th.size()) - 1;
  const double inv2dx = 0.5 * n;
  out.resize(th.size());
  out[0] = (-3.0 * th[0] + 4.0 * th[1] - th[2]) * inv2dx;
  for (int i = 1; i < n; ++i) out[i] = (th[i + 1] - th[i - 1]) * inv2dx;
  out[n] = (3.0 * th[n] - 4.0 * th[n - 1] + th[n - 2]) * inv2dx;
}

// One-sided d(theta)/dx at the junction node.
double junction_dx(const std::vector<double>& th) {
  const int n = static_cast<int>(th.size()) - 1;
  return (3.0 * th[n] - 4.0 * th[n - 1] + th[n - 2]) * (0.5 * n);
}

// int_0^1 (d theta/dx)^2 dx by the composite trapezoid rule.
double grad_sq_integral(const std::vector<double>& d1) {
  const int n = static_cast<int>(d1.size()) - 1;
  double sum = 0.5 * (d1[0] * d1[0] + d1[n] * d1[n]);
  for (int i = 1; i < n; ++i) sum += d1[i] * d1[i];
  return sum / n;
}

// Advective part of the angle equation (everything except the implicit
// diffusion term); out may alias nothing.
void advection_field(const std::vector<double>& d1, double length,
                     double sigma_value, double g, std::vector<double>& out) {
  const int n = static_cast<int>(d1.size()) - 1;
  const double dx = 1.0 / n;
  out.resize(d1.size());
  // first pass: cumulative trapezoid of (d theta/dx)^2
  double cum = 0.0;
  double q_prev = d1[0] * d1[0];
  out[0] = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double q = d1[i] * d1[i];
    cum += 0.5 * dx * (q_prev + q);
    out[i] = cum;
    q_prev = q;
  }
  const double total = out[n];
  const double sig_l2 = sigma_value / (length * length);
  for (int i = 0; i <= n; ++i) {
    const double x = i * dx;
    out[i] = sig_l2 * d1[i] * (out[i] - x * total) +
             x * d1[i] * g / length;
  }
}

std::string triple_string(const std::array<double, 3>& v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g, %.6g)", v[0], v[1], v[2]);
  return buf;
}

// Tridiagonal solve of the implicit diffusion system
//   (1 + 2 nu) u_0 - 2 nu u_1                   = rhs_0      (reflecting end)
//   -nu u_{i-1} + (1 + 2 nu) u_i - nu u_{i+1}   = rhs_i
//   u_n                                         = dirichlet  (junction)
// Diagonally dominant, so no pivoting is needed.
void solve_diffusion_row(const std::vector<double>& rhs, double nu,
                         double dirichlet, std::vector<double>& u,
                         std::vector<double>& cp, std::vector<double>& dp) {
  const int n = static_cast<int>(rhs.size()) - 1;
  cp.resize(rhs.size());
  dp.resize(rhs.size());
  cp[0] = -2.0 * nu / (1.0 + 2.0 * nu);
  dp[0] = rhs[0] / (1.0 + 2.0 * nu);
  for (int i = 1; i < n; ++i) {
    const double m = (1.0 + 2.0 * nu) + nu * cp[i - 1];
    cp[i] = -nu / m;
    dp[i] = (rhs[i] + nu * dp[i - 1]) / m;
  }
  u[n] = dirichlet;
  for (int i = n - 1; i >= 0; --i) u[i] = dp[i] - cp[i] * u[i + 1];
}

// Rethrow a solver error with the failing time attached (once).
template <class E>
[[noreturn]] void rethrow_with_time(const E& e, double t) {
  char buf[48];
  std::snprintf(buf, sizeof buf, " (failing time t=%.12g)", t);
  throw E(std::string(e.what()) + buf, t);
}

}  // namespace

// ===== configuration =======================================================

void validate_solver_config(const SolverConfig& config) {
  if (config.grid_n < 16) throw ConfigError("grid_n must be >= 16");
  const bool has_dt = config.dt > 0.0;
  const bool has_cfl = config.cfl > 0.0;
  if (has_dt == has_cfl)
    throw ConfigError("exactly one of dt (> 0) or cfl (in (0,1]) must be set");
  if (has_cfl && config.cfl > 1.0) throw ConfigError("cfl must lie in (0, 1]");
  if (!(config.newton_tol > 0.0)) throw ConfigError("newton_tol must be > 0");
  if (config.newton_max_iter < 1)
    throw ConfigError("newton_max_iter must be >= 1");
  if (!(config.t_end >= 0.0)) throw ConfigError("t_end must be >= 0");
  if (!(config.stop_residual >= 0.0))
    throw ConfigError("stop_residual must be >= 0");
  if (config.record_every < 1) throw ConfigError("record_every must be >= 1");
}

double cfl_dt(const TriodState& state, const TriodModel& model,
              const SolverConfig& config) {
  const auto sig = sigma_triple(model.sigma, state.alpha);
  double scale = std::numeric_limits<double>::infinity();
  for (int j = 0; j < 3; ++j)
    scale = std::min(scale, state.lengths[j] * state.lengths[j] / sig[j]);
  const double dx = 1.0 / state.grid_n();
  return config.cfl * dx * dx * scale;
}

// ===== junction tangential velocities ======================================

std::array<double, 3> tangent_velocity_junction(const TriodState& state,
                                                const TriodModel& model,
                                                double eps_den) {
  const auto sig = sigma_triple(model.sigma, state.alpha);
  if (!triangle_condition(sig))
    throw DegenerateJunction("tension triple " + triple_string(sig) +
                             " fails the triangle condition");
  std::array<double, 3> th1{}, v{};
  for (int j = 0; j < 3; ++j) {
    th1[j] = state.theta[j].back();
    v[j] = sig[j] * junction_dx(state.theta[j]) / state.lengths[j];
  }
  std::array<double, 3> c{}, s{};
  for (int j = 0; j < 3; ++j) {
    const double d = th1[(j + 1) % 3] - th1[j];
    c[j] = std::cos(d);
    s[j] = std::sin(d);
  }
  const double den = 1.0 - c[0] * c[1] * c[2];
  if (den < eps_den)
    throw DegenerateJunction(
        "junction velocity system degenerate: 1 - c1*c2*c3 = " +
        std::to_string(den));
  std::array<double, 3> g{};
  for (int j = 0; j < 3; ++j) {
    const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    g[j] = -(c[j] * c[j1] * s[j2] * v[j] + s[j] * v[j1] + c[j] * s[j1] * v[j2]) /
           den;
  }
  return g;
}

// ===== right-hand side =====================================================

InteriorRhs curve_rhs(const std::vector<double>& theta, double length,
                      double sigma_value, double g) {
  if (!(length > 0.0)) throw ConfigError("curve_rhs needs a positive length");
  const int n = static_cast<int>(theta.size()) - 1;
  const double dx2 = 1.0 / (n * n);
  InteriorRhs rhs;
  std::vector<double> d1;
  dx_derivative(theta, d1);
  advection_field(d1, length, sigma_value, g, rhs.advection);

  rhs.diffusion.resize(theta.size());
  const double sig_l2 = sigma_value / (length * length);
  rhs.diffusion[0] = sig_l2 *
                     (2.0 * theta[0] - 5.0 * theta[1] + 4.0 * theta[2] -
                      theta[3]) / dx2;
  for (int i = 1; i < n; ++i)
    rhs.diffusion[i] =
        sig_l2 * (theta[i + 1] - 2.0 * theta[i] + theta[i - 1]) / dx2;
  rhs.diffusion[n] = sig_l2 *
                     (2.0 * theta[n] - 5.0 * theta[n - 1] +
                      4.0 * theta[n - 2] - theta[n - 3]) / dx2;
  return rhs;
}

InteriorRhs rhs_interior(const TriodState& state, const TriodModel& model,
                         int j) {
  const auto sig = sigma_triple(model.sigma, state.alpha);
  const auto g = tangent_velocity_junction(state, model);
  return curve_rhs(state.theta[j], state.lengths[j], sig[j], g[j]);
}

// ===== junction boundary closure ===========================================

JunctionSolution apply_junction_bc(TriodState& state, const TriodModel& model,
                                   const SolverConfig& config) {
  const auto sig = sigma_triple(model.sigma, state.alpha);
  const int n = state.grid_n();
  const double inv2dx = 0.5 * n;
  std::array<double, 3> th_m1{}, th_m2{}, w{};
  double wsum = 0.0;
  for (int j = 0; j < 3; ++j) {
    th_m1[j] = state.theta[j][n - 1];
    th_m2[j] = state.theta[j][n - 2];
    w[j] = sig[j] * sig[j] / state.lengths[j];
    wsum += w[j];
  }
  // Scale that turns the flux row into a weighted mean angle deviation, so
  // all merit components are O(1).
  const double flux_scale = 1.0 / (3.0 * wsum * inv2dx);

  std::array<double, 3> u{state.theta[0][n], state.theta[1][n],
                          state.theta[2][n]};

  auto residual = [&](const std::array<double, 3>& uu, double raw[3],
                      double scaled[3]) {
    raw[0] = raw[1] = raw[2] = 0.0;
    for (int j = 0; j < 3; ++j) {
      raw[0] += sig[j] * std::cos(uu[j]);
      raw[1] += sig[j] * std::sin(uu[j]);
      raw[2] += w[j] * (3.0 * uu[j] - 4.0 * th_m1[j] + th_m2[j]) * inv2dx;
    }
    scaled[0] = raw[0];
    scaled[1] = raw[1];
    scaled[2] = raw[2] * flux_scale;
  };
  auto merit = [](const double scaled[3]) {
    return scaled[0] * scaled[0] + scaled[1] * scaled[1] +
           scaled[2] * scaled[2];
  };

  JunctionSolution out;
  double raw[3], scaled[3];
  for (int iter = 0;; ++iter) {
    residual(u, raw, scaled);
    if (std::abs(raw[0]) <= config.newton_tol &&
        std::abs(raw[1]) <= config.newton_tol &&
        std::abs(raw[2]) <= config.newton_tol) {
      out.iterations = iter;
      break;
    }
    if (iter >= config.newton_max_iter)
      throw NewtonDivergence(
          "junction Newton hit the iteration cap; residual " +
          triple_string({raw[0], raw[1], raw[2]}));

    // Jacobian with the flux row pre-scaled to O(1).
    double jac[3][3];
    for (int j = 0; j < 3; ++j) {
      jac[0][j] = -sig[j] * std::sin(u[j]);
      jac[1][j] = sig[j] * std::cos(u[j]);
      jac[2][j] = 3.0 * w[j] * inv2dx * flux_scale;
    }
    double rhs_n[3] = {-scaled[0], -scaled[1], -scaled[2]};

    // 3x3 Gaussian elimination with partial pivoting.
    int perm[3] = {0, 1, 2};
    bool singular = false;
    for (int col = 0; col < 3 && !singular; ++col) {
      int piv = col;
      for (int r = col + 1; r < 3; ++r)
        if (std::abs(jac[perm[r]][col]) > std::abs(jac[perm[piv]][col]))
          piv = r;
      std::swap(perm[col], perm[piv]);
      const double p = jac[perm[col]][col];
      if (!(std::abs(p) > 1e-13)) {
        singular = true;
        break;
      }
      for (int r = col + 1; r < 3; ++r) {
        const double m = jac[perm[r]][col] / p;
        for (int cc = col; cc < 3; ++cc) jac[perm[r]][cc] -= m * jac[perm[col]][cc];
        rhs_n[perm[r]] -= m * rhs_n[perm[col]];
      }
    }
    if (singular)
      throw NewtonDivergence(
          "junction Newton Jacobian is singular (collinear tangent data)");
    double d[3];
    for (int row = 2; row >= 0; --row) {
      double acc = rhs_n[perm[row]];
      for (int cc = row + 1; cc < 3; ++cc) acc -= jac[perm[row]][cc] * d[cc];
      d[row] = acc / jac[perm[row]][row];
    }

    // Backtracking line search on the scaled merit.
    const double m0 = merit(scaled);
    double lambda = 1.0;
    bool accepted = false;
    while (lambda >= 1e-6) {
      const std::array<double, 3> trial{u[0] + lambda * d[0],
                                        u[1] + lambda * d[1],
                                        u[2] + lambda * d[2]};
      double traw[3], tscaled[3];
      residual(trial, traw, tscaled);
      if (merit(tscaled) <= (1.0 - 1e-4 * lambda) * m0) {
        u = trial;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted)
      throw NewtonDivergence(
          "junction Newton line search stalled; no nearby root");
  }

  for (int j = 0; j < 3; ++j) {
    state.theta[j][n] = u[j];
    out.junction_theta[j] = u[j];
    out.junction_flux[j] = (3.0 * u[j] - 4.0 * th_m1[j] + th_m2[j]) * inv2dx;
  }
  return out;
}

// ===== explicit sub-steppers ===============================================

std::array<double, 3> step_alphas(const std::array<double, 3>& alpha,
                                  const std::array<double, 3>& lengths,
                                  const TriodModel& model, double dt) {
  if (!(dt > 0.0)) throw ConfigError("step_alphas needs dt > 0");
  auto rate = [&](const std::array<double, 3>& a) {
    return alpha_rate(a, lengths, model);
  };
  const auto k1 = rate(alpha);
  std::array<double, 3> a2{}, a3{}, a4{};
  for (int j = 0; j < 3; ++j) a2[j] = alpha[j] + 0.5 * dt * k1[j];
  const auto k2 = rate(a2);
  for (int j = 0; j < 3; ++j) a3[j] = alpha[j] + 0.5 * dt * k2[j];
  const auto k3 = rate(a3);
  for (int j = 0; j < 3; ++j) a4[j] = alpha[j] + dt * k3[j];
  const auto k4 = rate(a4);
  std::array<double, 3> out{};
  for (int j = 0; j < 3; ++j)
    out[j] = alpha[j] +
             dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  return out;
}

std::array<double, 3> step_lengths(const TriodState& state,
                                   const TriodModel& model, double dt) {
  if (!(dt > 0.0)) throw ConfigError("step_lengths needs dt > 0");
  const auto sig = sigma_triple(model.sigma, state.alpha);
  const auto g = tangent_velocity_junction(state, model);
  std::array<double, 3> out{};
  thread_local std::vector<double> d1;
  for (int j = 0; j < 3; ++j) {
    dx_derivative(state.theta[j], d1);
    const double shrink =
        sig[j] / state.lengths[j] * grad_sq_integral(d1);
    out[j] = state.lengths[j] + dt * (-shrink + g[j]);
    if (!(out[j] > 0.0))
      throw LengthCollapse("curve " + std::to_string(j) +
                           " length reached zero");
  }
  return out;
}

// ===== full step ===========================================================

StepReport step(TriodState& state, const TriodModel& model,
                const SolverConfig& config) {
  validate_solver_config(config);
  const auto sig_old = sigma_triple(model.sigma, state.alpha);
  if (!triangle_condition(sig_old))
    throw DegenerateJunction("tension triple " + triple_string(sig_old) +
                             " fails the triangle condition");
  const double dt = config.dt > 0.0 ? config.dt : cfl_dt(state, model, config);

  StepReport report;
  report.dt_used = dt;

  if (config.freeze_geometry) {
    state.alpha = step_alphas(state.alpha, state.lengths, model, dt);
    state.time += dt;
    report.herring_residual_post = herring_residual(state, model);
    return report;
  }

  const int n = state.grid_n();
  const double dx = 1.0 / n;

  // Lagged explicit data from the departure state.
  const auto g = tangent_velocity_junction(state, model);
  thread_local std::vector<double> d1;
  thread_local std::array<std::vector<double>, 3> f;
  for (int j = 0; j < 3; ++j) {
    dx_derivative(state.theta[j], d1);
    advection_field(d1, state.lengths[j], sig_old[j], g[j], f[j]);
  }

  const auto alpha_new = step_alphas(state.alpha, state.lengths, model, dt);
  const auto lengths_new = step_lengths(state, model, dt);

  thread_local std::array<std::vector<double>, 3> theta_old;
  for (int j = 0; j < 3; ++j) theta_old[j] = state.theta[j];

  state.alpha = alpha_new;
  state.lengths = lengths_new;
  const auto sig_new = sigma_triple(model.sigma, state.alpha);

  // Two passes: predictor with the lagged junction value, then a corrector
  // re-solve once the junction Newton has moved it.
  thread_local std::vector<double> rhs, cp, dp;
  rhs.resize(state.theta[0].size());
  int newton_total = 0;
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < 3; ++j) {
      const double nu =
          dt * sig_new[j] / (lengths_new[j] * lengths_new[j] * dx * dx);
      for (int i = 0; i < n; ++i) rhs[i] = theta_old[j][i] + dt * f[j][i];
      solve_diffusion_row(rhs, nu, state.theta[j][n], state.theta[j], cp, dp);
    }
    newton_total += apply_junction_bc(state, model, config).iterations;
  }

  state.time += dt;
  report.newton_iterations = newton_total;
  report.herring_residual_post = herring_residual(state, model);
  double max_update = 0.0;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i <= n; ++i)
      max_update =
          std::max(max_update, std::abs(state.theta[j][i] - theta_old[j][i]));
  report.max_theta_update = max_update;
  return report;
}

// ===== run loop ============================================================

ResidualTriple stop_residuals(const TriodState& state, const TriodModel& model) {
  ResidualTriple res;
  res.herring = herring_residual(state, model);
  const auto sig = sigma_triple(model.sigma, state.alpha);
  thread_local std::vector<double> d1;
  for (int j = 0; j < 3; ++j) {
    dx_derivative(state.theta[j], d1);
    res.curvature_l2 +=
        sig[j] * sig[j] / state.lengths[j] * grad_sq_integral(d1);
  }
  const auto delta = misorientations(state.alpha);
  for (double d : delta) res.misorientation += d * d;
  return res;
}

RunStats run(TriodState& state, const TriodModel& model,
             const SolverConfig& config, const RecordSink& sink) {
  validate_state(state);
  validate_solver_config(config);
  if (state.grid_n() != config.grid_n)
    throw ConfigError("state grid does not match config.grid_n");
  const double herr0 = herring_residual(state, model);
  if (!(herr0 <= 1e-8))
    throw ConfigError(
        "initial junction force imbalance " + std::to_string(herr0) +
        " exceeds 1e-8; initial data must balance at the junction");

  const auto lengths0 = state.lengths;
  const double alpha_sum0 = state.alpha[0] + state.alpha[1] + state.alpha[2];
  auto energy_now = [&]() {
    const auto sig = sigma_triple(model.sigma, state.alpha);
    return sig[0] * state.lengths[0] + sig[1] * state.lengths[1] +
           sig[2] * state.lengths[2];
  };
  auto misorientation_now = [&]() {
    const auto d = misorientations(state.alpha);
    return d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
  };
  double energy_prev = energy_now();
  double miso_prev = misorientation_now();

  RunStats stats;
  StepReport last_report{0.0, 0, herr0, 0.0};
  sink(state, last_report);
  bool recorded = true;

  const double t_eps = 1e-12 * std::max(1.0, config.t_end);
  while (state.time < config.t_end - t_eps) {
    SolverConfig local = config;
    const double dt_nominal =
        config.dt > 0.0 ? config.dt : cfl_dt(state, model, config);
    local.dt = std::min(dt_nominal, config.t_end - state.time);
    local.cfl = 0.0;
    try {
      last_report = step(state, model, local);
    } catch (const DegenerateJunction& e) {
      rethrow_with_time(e, state.time);
    } catch (const NewtonDivergence& e) {
      rethrow_with_time(e, state.time);
    } catch (const LengthCollapse& e) {
      rethrow_with_time(e, state.time);
    } catch (const SolverFailure& e) {
      rethrow_with_time(e, state.time);
    }
    ++stats.steps;
    recorded = false;

    if (!std::isfinite(last_report.max_theta_update) ||
        last_report.max_theta_update > 100.0)
      throw SolverFailure("numerical instability: per-step angle update " +
                              std::to_string(last_report.max_theta_update) +
                              " at t=" + std::to_string(state.time),
                          state.time);
    for (int j = 0; j < 3; ++j)
      if (state.lengths[j] < 1e-6 * lengths0[j])
        throw LengthCollapse("curve " + std::to_string(j) +
                                 " collapsed below 1e-6 of its initial "
                                 "length at t=" +
                                 std::to_string(state.time),
                             state.time);

    const double energy = energy_now();
    stats.max_energy_rise = std::max(stats.max_energy_rise, energy - energy_prev);
    energy_prev = energy;
    const double miso = misorientation_now();
    stats.max_misorientation_rise =
        std::max(stats.max_misorientation_rise, miso - miso_prev);
    miso_prev = miso;

    bool stop = false;
    if (config.stop_residual > 0.0) {
      const ResidualTriple res = stop_residuals(state, model);
      stop = std::max({res.herring, res.curvature_l2, res.misorientation}) <
             config.stop_residual;
    }
    if (stats.steps % config.record_every == 0 || stop) {
      sink(state, last_report);
      recorded = true;
    }
    if (stop) {
      stats.stopped_on_residual = true;
      break;
    }
  }
  if (!recorded) sink(state, last_report);

  stats.final_time = state.time;
  stats.alpha_sum_drift = std::abs(
      state.alpha[0] + state.alpha[1] + state.alpha[2] - alpha_sum0);
  return stats;
}

}  // namespace triodflow
