// ===== initial-data construction tests =====================================
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "triodflow/diagnostics.hpp"
#include "triodflow/scenario.hpp"
#include "triodflow/solver.hpp"

using namespace triodflow;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

EndpointSet equilateral_endpoints() {
  EndpointSet e;
  const double base[3] = {kPi / 2, 7 * kPi / 6, 11 * kPi / 6};
  for (int j = 0; j < 3; ++j)
    e.p[j] = {std::cos(base[j] + kPi), std::sin(base[j] + kPi)};
  return e;
}

EndpointSet scalene_endpoints() {
  EndpointSet e;
  e.p[0] = {1.4, 0.1};
  e.p[1] = {-0.8, 0.9};
  e.p[2] = {-0.3, -1.1};
  return e;
}

// independent weighted Fermat oracle: plain Weiszfeld averaging from the
// centroid, no Newton polish
Vec2 weiszfeld_oracle(const EndpointSet& e, const std::array<double, 3>& w) {
  Vec2 y{(e.p[0].x + e.p[1].x + e.p[2].x) / 3.0,
         (e.p[0].y + e.p[1].y + e.p[2].y) / 3.0};
  for (int it = 0; it < 20000; ++it) {
    double sx = 0.0, sy = 0.0, sw = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double d = std::max(norm(y - e.p[j]), 1e-14);
      sx += w[j] * e.p[j].x / d;
      sy += w[j] * e.p[j].y / d;
      sw += w[j] / d;
    }
    const Vec2 next{sx / sw, sy / sw};
    if (norm(next - y) < 1e-15) return next;
    y = next;
  }
  return y;
}

Vec2 junction_of(const TriodState& s, const EndpointSet& e) {
  return e.p[0] + s.lengths[0] * Vec2{std::cos(s.theta[0][0]),
                                      std::sin(s.theta[0][0])};
}

}  // namespace

// ---------------------------------------------------------------------------
TEST_CASE("straight construction: symmetric case") {
  const EndpointSet e = equilateral_endpoints();
  TriodModel m{SurfaceTensionModel::constant(1.0), 1.0};
  const TriodState s =
      straight_herring_initial(e, {0.2, 0.2, 0.2}, m, 64);

  // junction at the symmetric centre, spokes 120 degrees apart
  const Vec2 a = junction_of(s, e);
  CHECK(std::abs(a.x) <= 1e-10);
  CHECK(std::abs(a.y) <= 1e-10);
  for (int j = 0; j < 3; ++j) {
    CHECK(s.lengths[j] == doctest::Approx(1.0).epsilon(1e-10));
    const double gap = s.theta[(j + 1) % 3][0] - s.theta[j][0];
    const double wrapped = std::remainder(gap, 2.0 * kPi);
    CHECK(std::abs(wrapped) == doctest::Approx(kTwoPiThirds).epsilon(1e-9));
  }
  CHECK(herring_residual(s, m) <= 1e-10);
  for (int j = 0; j < 3; ++j)
    for (double k : curvature_field(s, j)) CHECK(std::abs(k) <= 1e-9);
  CHECK(s.alpha[0] == 0.2);
  CHECK(s.time == 0.0);
}

TEST_CASE("straight construction: tension-weighted junction placement") {
  const EndpointSet e = scalene_endpoints();
  TriodModel m{SurfaceTensionModel::quadratic(1.0, 0.5), 1.0};
  const std::array<double, 3> alpha0{0.0, 0.3, -0.3};
  const TriodState s = straight_herring_initial(e, alpha0, m, 48);
  CHECK(herring_residual(s, m) <= 1e-10);

  // junction matches an independent Weiszfeld iteration
  const auto sig = sigma_triple(m.sigma, alpha0);
  const Vec2 oracle = weiszfeld_oracle(e, sig);
  const Vec2 a = junction_of(s, e);
  CHECK(norm(a - oracle) <= 1e-8);

  // curve 3 has the largest tension (delta = (-0.3, -0.3, 0.6)), so the
  // junction sits closer to its endpoint than in the unweighted problem
  const Vec2 plain = weiszfeld_oracle(e, {1.0, 1.0, 1.0});
  CHECK(norm(a - e.p[2]) < norm(plain - e.p[2]));
}

TEST_CASE("straight construction: dominating tension rejected") {
  const EndpointSet e = equilateral_endpoints();
  TriodModel m{SurfaceTensionModel::quadratic(1.0, 0.5), 1.0};
  // alphas (0, 2, -2): delta^3 = 4, sigma = (3, 3, 9) >= sum of the others
  CHECK_THROWS_AS(straight_herring_initial(e, {0.0, 2.0, -2.0}, m, 32),
                  A2LikeViolation);
}

// ---------------------------------------------------------------------------
TEST_CASE("perturbed construction: zero amplitude is the straight state") {
  const EndpointSet e = scalene_endpoints();
  TriodModel m{SurfaceTensionModel::quadratic(1.0, 0.5), 1.0};
  const std::array<double, 3> alpha0{0.1, 0.0, -0.1};
  const TriodState straight = straight_herring_initial(e, alpha0, m, 40);
  const TriodState p = perturbed_steiner_initial(e, alpha0, m, 40, 0.0, 1);
  for (int j = 0; j < 3; ++j) {
    CHECK(p.lengths[j] == straight.lengths[j]);
    for (int i = 0; i <= 40; ++i) CHECK(p.theta[j][i] == straight.theta[j][i]);
  }
}

TEST_CASE("perturbed construction: balanced, closed, and genuinely curved") {
  const EndpointSet e = scalene_endpoints();
  TriodModel m{SurfaceTensionModel::quadratic(1.0, 0.5), 1.0};
  const std::array<double, 3> alpha0{0.0, 0.3, -0.3};
  const int n = 200;
  const TriodState s = perturbed_steiner_initial(e, alpha0, m, n, 0.1, 1);

  CHECK(herring_residual(s, m) <= 1e-10);
  const auto norms = weighted_curvature_norms(s, m);
  CHECK(norms.first > 1e-4);

  // every reconstructed curve ends on the straight junction point
  const TriodState straight = straight_herring_initial(e, alpha0, m, n);
  const Vec2 a0 = junction_of(straight, e);
  const PlanarTriod triod = reconstruct(s, e);
  for (int j = 0; j < 3; ++j) {
    const Vec2 end = triod.curves[j].back();
    CHECK(norm(end - a0) <= 1e-8 * s.lengths[j]);
  }
  CHECK(junction_mismatch(triod) <= 2e-8 * s.lengths[0]);

  // the state is admissible for the solver
  SolverConfig c;
  c.grid_n = n;
  c.cfl = 0.4;
  c.t_end = 1e-3;
  c.stop_residual = 0.0;
  TriodState run_state = s;
  CHECK_NOTHROW(run(run_state, m, c, [](const TriodState&, const StepReport&) {}));
}

TEST_CASE("perturbed construction: deviation scales linearly with amplitude") {
  const EndpointSet e = scalene_endpoints();
  TriodModel m{SurfaceTensionModel::quadratic(1.0, 0.5), 1.0};
  const std::array<double, 3> alpha0{0.1, 0.0, -0.1};
  const int n = 80;
  const TriodState straight = straight_herring_initial(e, alpha0, m, n);

  auto deviation = [&](double amp) {
    const TriodState p = perturbed_steiner_initial(e, alpha0, m, n, amp, 2);
    double dev = 0.0;
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i <= n; ++i)
        dev = std::max(dev, std::abs(p.theta[j][i] - straight.theta[j][i]));
    return dev;
  };

  const double d1 = deviation(2e-2);
  const double d2 = deviation(1e-2);
  const double d3 = deviation(5e-3);
  CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(0.15));
  CHECK(d2 / d3 == doctest::Approx(2.0).epsilon(0.15));
  CHECK(d3 <= 2.0 * 5e-3);  // linear with a modest constant
}

TEST_CASE("perturbed construction: oversized bump rejected") {
  const EndpointSet e = scalene_endpoints();
  TriodModel m{SurfaceTensionModel::quadratic(1.0, 0.5), 1.0};
  CHECK_THROWS_AS(
      perturbed_steiner_initial(e, {0.0, 0.3, -0.3}, m, 96, 10.0, 1),
      NewtonDivergence);
}

// ---------------------------------------------------------------------------
TEST_CASE("compatibility residuals") {
  const EndpointSet e = equilateral_endpoints();
  TriodModel m{SurfaceTensionModel::quadratic(1.0, 0.5), 1.0};

  // exact equilibrium: both orders vanish
  const TriodState eq = straight_herring_initial(e, {0.2, 0.2, 0.2}, m, 64);
  const auto [h0, c0] = compatibility_residual(eq, m);
  CHECK(h0 <= 1e-12);
  CHECK(c0 <= 1e-9);

  // straight but with relaxing orientations: order-0 still holds; order-1 is
  // the finite orientation-drive term, computable by hand on straight data
  const std::array<double, 3> alpha0{0.0, 0.3, -0.3};
  const TriodState st = straight_herring_initial(e, alpha0, m, 64);
  const auto [h1, c1] = compatibility_residual(st, m);
  CHECK(h1 <= 1e-10);
  CHECK(std::isfinite(c1));
  const auto sig = sigma_triple(m.sigma, alpha0);
  const auto delta = misorientations(alpha0);
  const auto arate = alpha_rate(alpha0, st.lengths, m);
  double rc = 0.0, rs = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double ddot = arate[(j + 2) % 3] - arate[j];
    rc += m.sigma.dvalue(delta[j]) * ddot * std::cos(st.theta[j][64]);
    rs += m.sigma.dvalue(delta[j]) * ddot * std::sin(st.theta[j][64]);
  }
  CHECK(c1 == doctest::Approx(std::hypot(rc, rs)).epsilon(1e-6));
  CHECK(c1 > 1e-4);  // genuinely nonzero for unequal alphas
  (void)sig;

  // garbage angles: order-0 residual flags the state as inadmissible
  TriodState bad = st;
  bad.theta[0].assign(65, 0.4);
  bad.theta[1].assign(65, 1.9);
  bad.theta[2].assign(65, 2.6);
  const auto [hbad, cbad] = compatibility_residual(bad, m);
  CHECK(hbad > 0.1);
  CHECK(std::isfinite(cbad));
}
