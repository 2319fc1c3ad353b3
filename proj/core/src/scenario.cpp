#include "triodflow/scenario.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "triodflow/solver.hpp"

namespace triodflow {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// trapezoid chord of curve j: endpoint = P_j + L_j * chord, matching the
// quadrature used by reconstruct_curve
Vec2 chord_of(const std::vector<double>& theta) {
  const int n = static_cast<int>(theta.size()) - 1;
  const double dx = 1.0 / n;
  Vec2 c{0.0, 0.0};
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 0.5 * dx : dx;
    c.x += w * std::cos(theta[i]);
    c.y += w * std::sin(theta[i]);
  }
  return c;
}

// closure shape: vanishing value and slope at both ends, so neither the wall
// conditions nor the junction rows' value/slope are disturbed
double closure_shape(double x) {
  const double y = x * (1.0 - x);
  return y * y;
}

}  // namespace

TriodState straight_herring_initial(const EndpointSet& endpoints,
                                    const std::array<double, 3>& alpha0,
                                    const TriodModel& model, int grid_n) {
  validate_endpoints(endpoints);
  if (grid_n < 2) throw ConfigError("grid_n must be at least 2");

  const auto sig = sigma_triple(model.sigma, alpha0);
  Vec2 a0;
  try {
    a0 = weighted_fermat_point(endpoints, sig);
  } catch (const VertexOptimal& v) {
    throw A2LikeViolation(v.vertex);
  }

  TriodState s;
  for (int j = 0; j < 3; ++j) {
    const Vec2 d = a0 - endpoints.p[j];
    s.theta[j].assign(grid_n + 1, std::atan2(d.y, d.x));
    s.lengths[j] = norm(d);
  }
  s.alpha = alpha0;
  s.time = 0.0;
  return s;
}

TriodState perturbed_steiner_initial(const EndpointSet& endpoints,
                                     const std::array<double, 3>& alpha0,
                                     const TriodModel& model, int grid_n,
                                     double bump_amplitude, int bump_mode) {
  TriodState s = straight_herring_initial(endpoints, alpha0, model, grid_n);
  if (bump_amplitude == 0.0) return s;
  if (bump_mode < 1) throw ConfigError("bump mode must be a positive integer");

  const int n = grid_n;
  const Vec2 a0 = endpoints.p[0] + s.lengths[0] * Vec2{std::cos(s.theta[0][0]),
                                                       std::sin(s.theta[0][0])};
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i <= n; ++i) {
      const double x = static_cast<double>(i) / n;
      s.theta[j][i] +=
          bump_amplitude * std::sin(bump_mode * kPi * x) * x * x;
    }

  SolverConfig bc;
  bc.grid_n = n;

  // Alternate per-curve chord alignment with the junction angle solve; the
  // two act on disjoint nodes (interior shape vs the junction value), so a
  // few sweeps reach joint convergence.
  const double b_cap = 1.0 + 2.0 * std::abs(bump_amplitude);
  std::array<double, 3> b_total{};
  double closure = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < 8 && closure > 1e-13; ++sweep) {
    for (int j = 0; j < 3; ++j) {
      const Vec2 d = a0 - endpoints.p[j];
      const Vec2 dn = (1.0 / norm(d)) * d;
      for (int it = 0;; ++it) {
        const Vec2 c = chord_of(s.theta[j]);
        const double f = cross(dn, c);
        if (std::abs(f) <= 1e-15) break;
        if (it >= 30)
          throw NewtonDivergence("junction closure did not converge on curve " +
                                 std::to_string(j + 1));
        // dF/db with the same trapezoid weights
        double fp = 0.0;
        for (int i = 0; i <= n; ++i) {
          const double x = static_cast<double>(i) / n;
          const double w = (i == 0 || i == n) ? 0.5 / n : 1.0 / n;
          fp += w * closure_shape(x) *
                (dn.x * std::cos(s.theta[j][i]) + dn.y * std::sin(s.theta[j][i]));
        }
        if (std::abs(fp) < 1e-10)
          throw NewtonDivergence(
              "junction closure derivative degenerated on curve " +
              std::to_string(j + 1));
        const double db = -f / fp;
        b_total[j] += db;
        if (std::abs(b_total[j]) > b_cap)
          throw NewtonDivergence(
              "curvature perturbation outside the junction-closure basin");
        for (int i = 1; i < n; ++i)
          s.theta[j][i] += db * closure_shape(static_cast<double>(i) / n);
      }
      const Vec2 c = chord_of(s.theta[j]);
      const double c2 = dot(c, c);
      if (c2 < 1e-4)
        throw NewtonDivergence("curve " + std::to_string(j + 1) +
                               " folded back on itself");
      const double len = dot(d, c) / c2;
      if (!(len > 0.0))
        throw NewtonDivergence("junction closure produced a nonpositive length");
      s.lengths[j] = len;
    }
    apply_junction_bc(s, model, bc);  // propagates NewtonDivergence

    closure = 0.0;
    for (int j = 0; j < 3; ++j) {
      const Vec2 end = endpoints.p[j] + s.lengths[j] * chord_of(s.theta[j]);
      closure = std::max(closure, norm(end - a0) / s.lengths[j]);
    }
  }

  if (closure > 1e-8)
    throw NewtonDivergence("perturbed construction left a junction gap of " +
                           std::to_string(closure) + " relative to the length");
  if (herring_residual(s, model) > 1e-10)
    throw NewtonDivergence(
        "perturbed construction failed to rebalance the junction");
  return s;
}

std::pair<double, double> compatibility_residual(const TriodState& state,
                                                 const TriodModel& model) {
  validate_state(state);
  const int n = state.grid_n();
  if (n < 4)
    throw ConfigError("compatibility stencils need at least 4 intervals");

  const double first = herring_residual(state, model);

  const auto sig = sigma_triple(model.sigma, state.alpha);
  const auto delta = misorientations(state.alpha);
  const auto arate = alpha_rate(state.alpha, state.lengths, model);

  std::array<double, 3> g{};
  try {
    g = tangent_velocity_junction(state, model);
  } catch (const Error&) {
    // too degenerate for the tangential system; measure without transport
  }

  const double dx = 1.0 / n;
  double rc = 0.0, rs = 0.0;
  for (int j = 0; j < 3; ++j) {
    const auto& th = state.theta[j];
    const double L = state.lengths[j];
    const double d1 =
        (3.0 * th[n] - 4.0 * th[n - 1] + th[n - 2]) / (2.0 * dx);
    const double d2 =
        (2.0 * th[n] - 5.0 * th[n - 1] + 4.0 * th[n - 2] - th[n - 3]) /
        (dx * dx);
    const double theta_dot = sig[j] / (L * L) * d2 + d1 * g[j] / L;
    const double delta_dot = arate[(j + 2) % 3] - arate[j];
    const double sp = model.sigma.dvalue(delta[j]);
    rc += sp * delta_dot * std::cos(th[n]) - sig[j] * std::sin(th[n]) * theta_dot;
    rs += sp * delta_dot * std::sin(th[n]) + sig[j] * std::cos(th[n]) * theta_dot;
  }
  return {first, std::hypot(rc, rs)};
}

}  // namespace triodflow
