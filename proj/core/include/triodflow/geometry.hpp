#pragma once
// ===== Planar geometry of the triod =====
// Reconstruction of curve positions from the angle representation, the
// weighted Fermat point (geometric median) underlying straight balanced
// junctions, the straight equilibrium triod, and discrete curve metrics.

#include <array>
#include <string>
#include <vector>

#include "triodflow/model.hpp"

namespace triodflow {

// Point sequences of the three curves.  curves[j][0] equals the fixed outer
// endpoint exactly; curves[j].back() approximates the junction.
struct PlanarTriod {
  std::array<std::vector<Vec2>, 3> curves;
};

// Position samples of curve j by cumulative trapezoid integration of the
// tangent field: xi_i = P_j + L_j * integral of (cos theta, sin theta).
std::vector<Vec2> reconstruct_curve(const TriodState& state,
                                    const EndpointSet& endpoints, int j);
PlanarTriod reconstruct(const TriodState& state, const EndpointSet& endpoints);

// Max pairwise distance between the three reconstructed junction endpoints.
// A discretization-error meter, not an enforced constraint.
double junction_mismatch(const PlanarTriod& triod);

// Weighted Fermat point: the minimizer of sum_j w_j |a - P_j|.  Iteratively
// reweighted averaging with a small distance floor, then a Newton polish;
// the returned point drives the weighted force balance
// sum_j w_j u_j = 0 (u_j unit vectors toward the endpoints) below grad_tol.
// Throws VertexOptimal(k) when the minimum sits on endpoint k itself.
Vec2 weighted_fermat_point(const EndpointSet& endpoints,
                           const std::array<double, 3>& weights,
                           double grad_tol = 1e-12);

// The straight equal-tension equilibrium: three uniform straight spokes from
// the endpoints to the unweighted Fermat point (grid_n+1 nodes per spoke,
// pairwise spoke angles of exactly 2*pi/3 up to the gradient tolerance).
// Throws A2Violation when an interior angle of the endpoint triangle
// reaches 2*pi/3 (the Fermat point degenerates onto a vertex).
PlanarTriod steiner_triod(const EndpointSet& endpoints, int grid_n);

// Max over curves of the symmetric discrete Hausdorff distance between the
// node sequences of a and b.  Exact (verified against brute force); uses an
// early-exit scan so near-coincident curves cost O(n).
double triod_distance(const PlanarTriod& a, const PlanarTriod& b);

// Snapshot of the reconstructed triod as CSV with header
// curve_id,x,px,py,theta,kappa (curve_id is 1-based, floats carry 17
// significant digits).
std::string snapshot_csv(const TriodState& state, const EndpointSet& endpoints);
void write_snapshot_csv(const std::string& path, const TriodState& state,
                        const EndpointSet& endpoints);

}  // namespace triodflow
