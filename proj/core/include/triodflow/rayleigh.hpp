// ===== network Rayleigh quotient ===========================================
// Smallest generalized eigenvalue of the three-segment network operator:
// minimize  J(phi) = sum_j w_j^3 int_0^{L_j} (phi_j')^2 ds
// over      H(phi) = sum_j w_j^2 int_0^{L_j} phi_j^2 ds = 1,
// with the essential conditions phi_j(0) = 0 and sum_j w_j^2 phi_j(L_j) = 0.
// The flux condition (w_j dphi_j/ds equal across segments at the junction
// ends) is natural and emerges from the minimization, not imposed.
//
// Discretized with piecewise-linear finite elements, n elements (n+1 nodes)
// per segment; the two essential conditions are eliminated by basis
// reduction, leaving a symmetric positive definite pencil of size 3n-1.
#pragma once

#include <array>
#include <vector>

#include "triodflow/errors.hpp"

namespace triodflow {

struct NetworkEigenProblem {
  std::array<double, 3> seg_lengths{1.0, 1.0, 1.0};
  std::array<double, 3> weights{1.0, 1.0, 1.0};
  // elements per segment (nodes 0..n, node 0 at the outer wall)
  int nodes_per_segment = 48;
};

// throws ConfigError unless lengths/weights are positive and the grid has at
// least two elements per segment
void validate_eigen_problem(const NetworkEigenProblem& problem);

// Reduced generalized eigensystem.  Unknown ordering: for each segment j in
// 0,1,2 the nodes i = 1..n in order, except that the junction endpoint
// (i = n) of `eliminated_segment` is dropped; its value is recovered as
//   phi_e(L_e) = -(sum_{k != e} endpoint_weights[k] phi_k(L_k)) /
//                endpoint_weights[e].
// The eliminated segment is the one with the largest endpoint weight
// (largest index on ties) so the recovery divides by the largest
// coefficient.
struct AssembledSystem {
  int dim = 0;                    // 3n - 1
  std::vector<double> stiffness;  // row-major dim*dim, w^3-weighted
  std::vector<double> mass;       // row-major dim*dim, w^2-weighted
  int eliminated_segment = 2;
  std::array<double, 3> endpoint_weights{};  // w_j^2
};

AssembledSystem assemble(const NetworkEigenProblem& problem);

struct RayleighSolution {
  double eigenvalue = 0.0;
  // minimizer nodal values per segment (n+1 each, node 0 first), normalized
  // to unit H-norm with the largest-magnitude entry positive
  std::array<std::vector<double>, 3> phi;
  int iterations = 0;
};

// Smallest eigenpair by block inverse iteration on the reduced pencil.
// Throws SolverFailure if the iteration stagnates without converging.
RayleighSolution solve_min_rayleigh(const NetworkEigenProblem& problem);

// convenience wrapper returning just the eigenvalue
double poincare_constant(const NetworkEigenProblem& problem);

// Minimum of poincare_constant over a tensor grid of the parameter box
// [length_range]^3 x [weight_range]^3 with `samples_per_axis` points per
// axis (range endpoints included; a degenerate range contributes a single
// point).  Sample points solve independently across a small thread pool
// capped by the TRIOD_FLOW_THREADS environment variable.
double poincare_constant_over_box(const std::array<double, 2>& length_range,
                                  const std::array<double, 2>& weight_range,
                                  int samples_per_axis,
                                  int nodes_per_segment = 48);

}  // namespace triodflow
