#include "triodflow/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace triodflow {

// ===== surface tension =====================================================

SurfaceTensionModel SurfaceTensionModel::quadratic(double s0, double c) {
  if (!(s0 > 0.0)) throw ConfigError("quadratic tension requires s0 > 0");
  if (!(c > 0.0)) throw ConfigError("quadratic tension requires c > 0");
  return {SigmaKind::Quadratic, s0, c};
}

SurfaceTensionModel SurfaceTensionModel::cosh_profile(double s0) {
  if (!(s0 > 0.0)) throw ConfigError("cosh tension requires s0 > 0");
  return {SigmaKind::Cosh, s0, 0.0};
}

SurfaceTensionModel SurfaceTensionModel::constant(double s0) {
  if (!(s0 > 0.0)) throw ConfigError("constant tension requires s0 > 0");
  return {SigmaKind::Constant, s0, 0.0};
}

// ===== state validation ====================================================

void validate_state(const TriodState& state) {
  const std::size_t n0 = state.theta[0].size();
  if (n0 < 5)
    throw ConfigError("state needs at least 5 angle samples per curve");
  for (int j = 0; j < 3; ++j) {
    if (state.theta[j].size() != n0)
      throw ConfigError("curve " + std::to_string(j) +
                        " has a mismatched sample count");
    if (!(state.lengths[j] > 0.0))
      throw ConfigError("curve " + std::to_string(j) +
                        " has non-positive length");
    for (std::size_t i = 0; i + 1 < n0; ++i) {
      const double jump = std::abs(state.theta[j][i + 1] - state.theta[j][i]);
      if (!(jump < M_PI))
        throw ConfigError("curve " + std::to_string(j) +
                          " has an angle jump >= pi between nodes " +
                          std::to_string(i) + " and " + std::to_string(i + 1));
    }
  }
  if (!(state.time >= 0.0)) throw ConfigError("state time must be >= 0");
}

// ===== endpoints ===========================================================

void validate_endpoints(const EndpointSet& endpoints) {
  const auto& p = endpoints.p;
  for (int j = 0; j < 3; ++j)
    for (int k = j + 1; k < 3; ++k)
      if (norm(p[j] - p[k]) == 0.0)
        throw ConfigError("endpoints " + std::to_string(j) + " and " +
                          std::to_string(k) + " coincide");
  const double area2 = cross(p[1] - p[0], p[2] - p[0]);
  const double scale = norm(p[1] - p[0]) * norm(p[2] - p[0]);
  if (std::abs(area2) <= 1e-14 * scale)
    throw ConfigError("endpoints are collinear");
}

std::array<double, 3> interior_angles(const EndpointSet& endpoints) {
  validate_endpoints(endpoints);
  const auto& p = endpoints.p;
  std::array<double, 3> angles{};
  for (int j = 0; j < 3; ++j) {
    const Vec2 u = p[(j + 1) % 3] - p[j];
    const Vec2 v = p[(j + 2) % 3] - p[j];
    angles[j] = std::atan2(std::abs(cross(u, v)), dot(u, v));
  }
  return angles;
}

bool a2_holds(const EndpointSet& endpoints) {
  const auto angles = interior_angles(endpoints);
  return std::all_of(angles.begin(), angles.end(),
                     [](double a) { return a < kTwoPiThirds; });
}

// ===== misorientations and tensions ========================================

std::array<double, 3> misorientations(const std::array<double, 3>& alpha) {
  std::array<double, 3> delta{};
  for (int j = 0; j < 3; ++j) delta[j] = alpha[(j + 2) % 3] - alpha[j];
  return delta;
}

std::array<double, 3> sigma_triple(const SurfaceTensionModel& sigma,
                                   const std::array<double, 3>& alpha) {
  const auto delta = misorientations(alpha);
  return {sigma.value(delta[0]), sigma.value(delta[1]), sigma.value(delta[2])};
}

std::array<double, 3> alpha_rate(const std::array<double, 3>& alpha,
                                 const std::array<double, 3>& lengths,
                                 const TriodModel& model) {
  const auto delta = misorientations(alpha);
  // b_j = sigma'(delta^j) L^j; differencing a shared array keeps the rate
  // sum at the roundoff level.
  std::array<double, 3> b{};
  for (int j = 0; j < 3; ++j) b[j] = model.sigma.dvalue(delta[j]) * lengths[j];
  std::array<double, 3> rate{};
  for (int j = 0; j < 3; ++j) rate[j] = -model.gamma * (b[(j + 1) % 3] - b[j]);
  return rate;
}

// ===== junction relations ==================================================

double junction_angle_cosine(const std::array<double, 3>& sigmas, int j,
                             double eps_angle) {
  for (double s : sigmas)
    if (!(s > 0.0)) throw ConfigError("tension triple must be positive");
  const double sj = sigmas[j % 3];
  const double sk = sigmas[(j + 1) % 3];
  const double so = sigmas[(j + 2) % 3];
  const double cosine = (so * so - sj * sj - sk * sk) / (2.0 * sj * sk);
  if (std::abs(cosine) >= 1.0 - eps_angle)
    throw DegenerateAngle("tension triple (" + std::to_string(sigmas[0]) +
                          ", " + std::to_string(sigmas[1]) + ", " +
                          std::to_string(sigmas[2]) +
                          ") gives a degenerate junction angle, |cos| = " +
                          std::to_string(std::abs(cosine)));
  return cosine;
}

bool triangle_condition(const std::array<double, 3>& sigmas) {
  for (double s : sigmas)
    if (!(s > 0.0)) return false;
  for (int j = 0; j < 3; ++j) {
    const double sj = sigmas[j];
    const double sk = sigmas[(j + 1) % 3];
    const double so = sigmas[(j + 2) % 3];
    const double diff = sj - sk;
    const double sum = sj + sk;
    if (!(diff * diff < so * so && so * so < sum * sum)) return false;
  }
  return true;
}

// ===== discrete curvature and force balance ================================

std::vector<double> curvature_field(const TriodState& state, int j) {
  const auto& th = state.theta[j];
  const int n = static_cast<int>(th.size()) - 1;
  const double dx = 1.0 / n;
  const double inv_l = 1.0 / state.lengths[j];
  std::vector<double> kappa(th.size());
  kappa[0] = (-3.0 * th[0] + 4.0 * th[1] - th[2]) / (2.0 * dx) * inv_l;
  for (int i = 1; i < n; ++i)
    kappa[i] = (th[i + 1] - th[i - 1]) / (2.0 * dx) * inv_l;
  kappa[n] = (3.0 * th[n] - 4.0 * th[n - 1] + th[n - 2]) / (2.0 * dx) * inv_l;
  return kappa;
}

double herring_residual(const TriodState& state, const TriodModel& model) {
  const auto sig = sigma_triple(model.sigma, state.alpha);
  double fx = 0.0, fy = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double th1 = state.theta[j].back();
    fx += sig[j] * std::cos(th1);
    fy += sig[j] * std::sin(th1);
  }
  return std::hypot(fx, fy);
}

}  // namespace triodflow
