#include "triodflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace triodflow {

// ===== reconstruction ======================================================

std::vector<Vec2> reconstruct_curve(const TriodState& state,
                                    const EndpointSet& endpoints, int j) {
  const auto& th = state.theta[j];
  const int n = static_cast<int>(th.size()) - 1;
  const double h = state.lengths[j] / n;  // arc length per cell
  std::vector<Vec2> pts(th.size());
  pts[0] = endpoints.p[j];
  double cx = std::cos(th[0]), sx = std::sin(th[0]);
  for (int i = 1; i <= n; ++i) {
    const double cn = std::cos(th[i]), sn = std::sin(th[i]);
    pts[i] = pts[i - 1] + Vec2{0.5 * h * (cx + cn), 0.5 * h * (sx + sn)};
    cx = cn;
    sx = sn;
  }
  return pts;
}

PlanarTriod reconstruct(const TriodState& state, const EndpointSet& endpoints) {
  PlanarTriod triod;
  for (int j = 0; j < 3; ++j)
    triod.curves[j] = reconstruct_curve(state, endpoints, j);
  return triod;
}

double junction_mismatch(const PlanarTriod& triod) {
  double worst = 0.0;
  for (int j = 0; j < 3; ++j) {
    const Vec2 a = triod.curves[j].back();
    const Vec2 b = triod.curves[(j + 1) % 3].back();
    worst = std::max(worst, norm(a - b));
  }
  return worst;
}

// ===== weighted Fermat point ===============================================

namespace {

constexpr double kDistanceFloor = 1e-14;

// Gradient of sum_j w_j |a - P_j| (away from the endpoints).
Vec2 median_gradient(Vec2 a, const EndpointSet& endpoints,
                     const std::array<double, 3>& w) {
  Vec2 g{};
  for (int j = 0; j < 3; ++j) {
    const Vec2 d = a - endpoints.p[j];
    const double r = std::max(norm(d), kDistanceFloor);
    g = g + (w[j] / r) * d;
  }
  return g;
}

}  // namespace

Vec2 weighted_fermat_point(const EndpointSet& endpoints,
                           const std::array<double, 3>& weights,
                           double grad_tol) {
  validate_endpoints(endpoints);
  for (double w : weights)
    if (!(w > 0.0)) throw ConfigError("fermat weights must be positive");

  // Vertex optimality: the objective's one-sided derivative at P_k is
  // nonnegative in every direction iff |sum_{j != k} w_j u_j| <= w_k.
  for (int k = 0; k < 3; ++k) {
    Vec2 pull{};
    for (int j = 0; j < 3; ++j) {
      if (j == k) continue;
      const Vec2 d = endpoints.p[j] - endpoints.p[k];
      pull = pull + (weights[j] / norm(d)) * d;
    }
    if (norm(pull) <= weights[k]) throw VertexOptimal(k);
  }

  // Weiszfeld: iteratively reweighted average, started from the weighted
  // centroid.  The floor keeps the weights finite if an iterate grazes an
  // endpoint (it cannot stall there: vertex optimality was excluded above).
  const double wsum = weights[0] + weights[1] + weights[2];
  Vec2 a = (1.0 / wsum) * (weights[0] * endpoints.p[0] +
                           weights[1] * endpoints.p[1] +
                           weights[2] * endpoints.p[2]);
  for (int iter = 0; iter < 10000; ++iter) {
    Vec2 num{};
    double den = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double r = std::max(norm(a - endpoints.p[j]), kDistanceFloor);
      num = num + (weights[j] / r) * endpoints.p[j];
      den += weights[j] / r;
    }
    const Vec2 next = (1.0 / den) * num;
    const double moved = norm(next - a);
    a = next;
    if (moved <= 1e-13 || norm(median_gradient(a, endpoints, weights)) <= grad_tol)
      break;
  }

  // Newton polish on the gradient (Hessian sum_j (w_j/r)(I - u u^T)) for the
  // last digits; falls back to the Weiszfeld iterate if a step misbehaves.
  for (int iter = 0; iter < 30; ++iter) {
    const Vec2 g = median_gradient(a, endpoints, weights);
    if (norm(g) <= grad_tol) break;
    double hxx = 0.0, hxy = 0.0, hyy = 0.0;
    for (int j = 0; j < 3; ++j) {
      const Vec2 d = a - endpoints.p[j];
      const double r = std::max(norm(d), kDistanceFloor);
      const double ux = d.x / r, uy = d.y / r;
      hxx += weights[j] / r * (1.0 - ux * ux);
      hxy += weights[j] / r * (-ux * uy);
      hyy += weights[j] / r * (1.0 - uy * uy);
    }
    const double det = hxx * hyy - hxy * hxy;
    if (!(std::abs(det) > 0.0)) break;
    const Vec2 step{(hyy * g.x - hxy * g.y) / det,
                    (hxx * g.y - hxy * g.x) / det};
    const Vec2 cand = a - step;
    if (norm(median_gradient(cand, endpoints, weights)) < norm(g))
      a = cand;
    else
      break;
  }
  return a;
}

// ===== straight equilibrium triod ==========================================

PlanarTriod steiner_triod(const EndpointSet& endpoints, int grid_n) {
  if (grid_n < 4) throw ConfigError("steiner_triod needs grid_n >= 4");
  Vec2 fermat;
  try {
    fermat = weighted_fermat_point(endpoints, {1.0, 1.0, 1.0}, 1e-12);
  } catch (const VertexOptimal& e) {
    throw A2Violation(e.vertex);
  }
  PlanarTriod triod;
  for (int j = 0; j < 3; ++j) {
    triod.curves[j].resize(grid_n + 1);
    for (int i = 0; i <= grid_n; ++i) {
      const double t = static_cast<double>(i) / grid_n;
      triod.curves[j][i] = endpoints.p[j] + t * (fermat - endpoints.p[j]);
    }
  }
  return triod;
}

// ===== discrete Hausdorff distance =========================================

namespace {

double sq_dist(Vec2 a, Vec2 b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// max_i min_j |a_i - b_j|, exact.  For each i the scan over j spreads
// outward from the previous best index and stops as soon as any distance
// drops to the running max (that i can no longer raise it).
double directed_hausdorff_sq(const std::vector<Vec2>& a,
                             const std::vector<Vec2>& b) {
  const int m = static_cast<int>(b.size());
  double worst = 0.0;
  int hint = 0;
  for (const Vec2& p : a) {
    double best = std::numeric_limits<double>::infinity();
    int best_j = hint;
    bool capped = false;
    for (int off = 0; off < m; ++off) {
      bool in_range = false;
      for (const int j : {hint - off, hint + off}) {
        if (j < 0 || j >= m || (off == 0 && j != hint)) continue;
        in_range = true;
        const double d = sq_dist(p, b[j]);
        if (d < best) {
          best = d;
          best_j = j;
        }
        if (d <= worst) {
          capped = true;
          best_j = j;
          break;
        }
      }
      if (capped || !in_range) break;
    }
    if (!capped && best > worst) worst = best;
    hint = best_j;
  }
  return worst;
}

}  // namespace

double triod_distance(const PlanarTriod& a, const PlanarTriod& b) {
  double worst = 0.0;
  for (int j = 0; j < 3; ++j) {
    worst = std::max(worst, directed_hausdorff_sq(a.curves[j], b.curves[j]));
    worst = std::max(worst, directed_hausdorff_sq(b.curves[j], a.curves[j]));
  }
  return std::sqrt(worst);
}

// ===== snapshot CSV ========================================================

namespace {

void append_g17(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

std::string snapshot_csv(const TriodState& state, const EndpointSet& endpoints) {
  std::string out = "curve_id,x,px,py,theta,kappa\n";
  const auto triod = reconstruct(state, endpoints);
  for (int j = 0; j < 3; ++j) {
    const auto kappa = curvature_field(state, j);
    const int n = state.grid_n();
    for (int i = 0; i <= n; ++i) {
      out += std::to_string(j + 1);
      out += ',';
      append_g17(out, static_cast<double>(i) / n);
      out += ',';
      append_g17(out, triod.curves[j][i].x);
      out += ',';
      append_g17(out, triod.curves[j][i].y);
      out += ',';
      append_g17(out, state.theta[j][i]);
      out += ',';
      append_g17(out, kappa[i]);
      out += '\n';
    }
  }
  return out;
}

void write_snapshot_csv(const std::string& path, const TriodState& state,
                        const EndpointSet& endpoints) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open snapshot file: " + path);
  file << snapshot_csv(state, endpoints);
}

}  // namespace triodflow
