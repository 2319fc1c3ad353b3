// ===== initial-data construction ===========================================
// Builders for admissible starting states: straight tension-balanced triods,
// curvature-perturbed variants of them, and the order-0/1 compatibility
// meter used to sanity-check arbitrary states before a run.
#pragma once

#include <array>
#include <utility>

#include "triodflow/errors.hpp"
#include "triodflow/geometry.hpp"
#include "triodflow/model.hpp"

namespace triodflow {

// Straight spokes from the outer endpoints to the tension-weighted Fermat
// point of the endpoint triangle (weights sigma(delta^j(alpha0))), so the
// junction force balance holds by stationarity:
//   theta^j == angle of (a0 - P_j),  L_j = |a0 - P_j|.
// Curvature is identically zero; the state is stationary in shape while the
// orientations relax.  Herring residual of the result <= 1e-10.
// Throws A2LikeViolation when the weighted minimum sits on an endpoint (no
// interior junction for these tensions), ConfigError for bad grid sizes.
TriodState straight_herring_initial(const EndpointSet& endpoints,
                                    const std::array<double, 3>& alpha0,
                                    const TriodModel& model, int grid_n);

// The straight state plus the curvature bump
//   delta_theta^j(x) = bump_amplitude * sin(bump_mode*pi*x) * x^2
// (value and slope vanish at the wall, preserving the outer conditions).
// The bump rotates each curve's chord, so the three junction ends no longer
// meet; a per-curve one-dimensional Newton solve on a shape correction
// b_j * x^2(1-x)^2 (which leaves the junction value and slope untouched)
// re-aims every chord at the straight junction point, lengths then follow
// in closed form, and the three junction angles are re-solved so the
// Herring condition holds again to 1e-10.  Each reconstructed curve ends
// within 1e-8 * L_j of the common junction.
// bump_amplitude 0 returns the straight state unchanged.  Perturbations too
// large for the closure or the junction solve throw NewtonDivergence.
TriodState perturbed_steiner_initial(const EndpointSet& endpoints,
                                     const std::array<double, 3>& alpha0,
                                     const TriodModel& model, int grid_n,
                                     double bump_amplitude, int bump_mode);

// (order-0, order-1) compatibility residuals of a state:
//  - first: junction force imbalance |sum_j sigma_j e^{i theta_j(1)}|;
//  - second: residual of the time-differentiated force balance rows, with
//    d theta_j(1)/dt taken from the evolution law (one-sided second
//    derivative plus tangential transport) and d alpha/dt from the
//    orientation ODE.  States too degenerate for the tangential junction
//    system are measured with zero tangential transport.
// Requires grid_n >= 4 for the one-sided stencils (ConfigError otherwise).
std::pair<double, double> compatibility_residual(const TriodState& state,
                                                 const TriodModel& model);

}  // namespace triodflow
