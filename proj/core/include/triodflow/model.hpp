#pragma once
// ===== Planar triod model =====
// Three planar curves meet at one triple junction; each curve j is
// parametrized over x in [0,1] by the angle theta^j(x) of its unit tangent
// and its total length L^j (uniform arc-length parametrization, so
// |d(xi)/dx| == L^j), and carries a lattice orientation alpha^j.  The surface
// tension of curve j is sigma evaluated at the misorientation
// delta^j = alpha^{j-1} - alpha^j (cyclic).  Curves run from their fixed
// outer endpoint at x=0 to the junction at x=1, where the force balance
// sum_j sigma_j * tau_j(1) = 0 holds.
//
// Index convention: everything is 0-based and cyclic mod 3, so "j-1" is
// (j+2)%3.  All functions here are pure.

#include <array>
#include <cmath>
#include <vector>

#include "triodflow/errors.hpp"

namespace triodflow {

inline constexpr double kDefaultEpsAngle = 1e-8;  // junction-angle degeneracy
inline constexpr double kTwoPiThirds = 2.0943951023931953;  // 2*pi/3

// ---------------------------------------------------------------------------
// Small plane-vector helper
// ---------------------------------------------------------------------------
struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// ---------------------------------------------------------------------------
// Surface tension sigma(misorientation)
// ---------------------------------------------------------------------------
enum class SigmaKind { Quadratic, Cosh, Constant };

// sigma must be positive; the Quadratic and Cosh profiles are even, strictly
// convex, and minimized at zero misorientation.  Constant drops the
// orientation coupling entirely (the classical equal-tension network flow)
// and is therefore flagged as non-convex.
struct SurfaceTensionModel {
  SigmaKind kind = SigmaKind::Constant;
  double s0 = 1.0;  // tension at zero misorientation
  double c = 0.0;   // quadratic coefficient (Quadratic kind only)

  double value(double d) const {
    switch (kind) {
      case SigmaKind::Quadratic: return s0 + c * d * d;
      case SigmaKind::Cosh: return s0 * std::cosh(d);
      case SigmaKind::Constant: return s0;
    }
    return s0;
  }
  double dvalue(double d) const {
    switch (kind) {
      case SigmaKind::Quadratic: return 2.0 * c * d;
      case SigmaKind::Cosh: return s0 * std::sinh(d);
      case SigmaKind::Constant: return 0.0;
    }
    return 0.0;
  }
  double ddvalue(double d) const {
    switch (kind) {
      case SigmaKind::Quadratic: return 2.0 * c;
      case SigmaKind::Cosh: return s0 * std::cosh(d);
      case SigmaKind::Constant: return 0.0;
    }
    return 0.0;
  }
  // strictly convex with sigma'(0) == 0 (the orientation-coupled regime)
  bool convex() const { return kind != SigmaKind::Constant; }

  static SurfaceTensionModel quadratic(double s0, double c);
  static SurfaceTensionModel cosh_profile(double s0);
  static SurfaceTensionModel constant(double s0);
};

// Full model: tension profile plus the orientation mobility gamma.
struct TriodModel {
  SurfaceTensionModel sigma;
  double gamma = 1.0;
};

// ---------------------------------------------------------------------------
// State of the evolving triod
// ---------------------------------------------------------------------------
// theta[j] holds N+1 samples of the tangent angle at x_i = i/N.
struct TriodState {
  std::array<std::vector<double>, 3> theta;
  std::array<double, 3> lengths{1.0, 1.0, 1.0};
  std::array<double, 3> alpha{0.0, 0.0, 0.0};
  double time = 0.0;

  int grid_n() const { return static_cast<int>(theta[0].size()) - 1; }
};

// Throws ConfigError if sizes mismatch, a length is non-positive, time is
// negative, or an angle jump between neighbouring nodes reaches pi (the
// tangent winding would be ambiguous).
void validate_state(const TriodState& state);

// ---------------------------------------------------------------------------
// Fixed outer endpoints
// ---------------------------------------------------------------------------
struct EndpointSet {
  std::array<Vec2, 3> p;
};

// Throws ConfigError when endpoints coincide or are collinear.
void validate_endpoints(const EndpointSet& endpoints);

// Interior angles of the endpoint triangle, indexed by vertex.
std::array<double, 3> interior_angles(const EndpointSet& endpoints);

// True when every interior angle is strictly below 2*pi/3, i.e. the triangle
// admits an interior equal-angle junction.
bool a2_holds(const EndpointSet& endpoints);

// ---------------------------------------------------------------------------
// Misorientations and tensions
// ---------------------------------------------------------------------------
// delta^j = alpha^{j-1} - alpha^j (cyclic); the three always sum to zero.
std::array<double, 3> misorientations(const std::array<double, 3>& alpha);

// sigma evaluated on the three misorientations.
std::array<double, 3> sigma_triple(const SurfaceTensionModel& sigma,
                                   const std::array<double, 3>& alpha);

// Right-hand side of the orientation ODE
//   d(alpha^j)/dt = -gamma * (sigma'(delta^{j+1}) L^{j+1}
//                             - sigma'(delta^j) L^j);
// the three rates telescope, so their sum vanishes.
std::array<double, 3> alpha_rate(const std::array<double, 3>& alpha,
                                 const std::array<double, 3>& lengths,
                                 const TriodModel& model);

// ---------------------------------------------------------------------------
// Junction relations determined by the tension triple alone
// ---------------------------------------------------------------------------
// Cosine of the angle between the tangents of curves j and j+1 at a balanced
// junction (law of cosines applied to the closed force triangle):
//   cos = (sigma_{j+2}^2 - sigma_j^2 - sigma_{j+1}^2) / (2 sigma_j sigma_{j+1}).
// Throws DegenerateAngle when |cos| >= 1 - eps_angle.
double junction_angle_cosine(const std::array<double, 3>& sigmas, int j,
                             double eps_angle = kDefaultEpsAngle);

// Strict triangle condition on the tension triple: for every j,
//   (sigma_j - sigma_{j+1})^2 < sigma_{j+2}^2 < (sigma_j + sigma_{j+1})^2.
// Required for the junction angles (and the tangential-velocity system) to
// be non-degenerate.
bool triangle_condition(const std::array<double, 3>& sigmas);

// ---------------------------------------------------------------------------
// Discrete curvature and junction force balance
// ---------------------------------------------------------------------------
// kappa_i = (d theta/dx)_i / L with second-order stencils: central in the
// interior, one-sided three-point at both ends.  No boundary condition is
// assumed by the stencils.
std::vector<double> curvature_field(const TriodState& state, int j);

// |sum_j sigma(delta^j) * (cos theta^j(1), sin theta^j(1))|  — Euclidean norm
// of the junction force imbalance.
double herring_residual(const TriodState& state, const TriodModel& model);

}  // namespace triodflow
