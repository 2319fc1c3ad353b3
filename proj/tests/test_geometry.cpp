// ===== geometry unit tests =================================================
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "triodflow/geometry.hpp"

using namespace triodflow;

namespace {

const EndpointSet kEquilateral{
    {Vec2{1.0, 0.0}, Vec2{-0.5, std::sqrt(3.0) / 2.0},
     Vec2{-0.5, -std::sqrt(3.0) / 2.0}}};

// Brute-force symmetric Hausdorff distance for cross-checking.
double hausdorff_brute(const PlanarTriod& a, const PlanarTriod& b) {
  double worst = 0.0;
  for (int j = 0; j < 3; ++j) {
    for (const auto& [from, to] :
         {std::pair{&a.curves[j], &b.curves[j]},
          std::pair{&b.curves[j], &a.curves[j]}}) {
      for (const Vec2& p : *from) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec2& q : *to) best = std::min(best, norm(p - q));
        worst = std::max(worst, best);
      }
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("reconstruct_curve: anchored start, straight and periodic cases") {
  const int n = 200;
  TriodState s;
  s.lengths = {1.5, 2.0 * M_PI, 1.0};
  s.theta[0].assign(n + 1, 0.7);
  s.theta[1].resize(n + 1);
  for (int i = 0; i <= n; ++i)
    s.theta[1][i] = 2.0 * M_PI * static_cast<double>(i) / n;
  s.theta[2].assign(n + 1, -1.2);
  const EndpointSet ends{{Vec2{0.3, -0.4}, Vec2{2.0, 2.0}, Vec2{-1.0, 0.0}}};

  const auto triod = reconstruct(s, ends);
  for (int j = 0; j < 3; ++j) {
    CHECK(triod.curves[j][0].x == ends.p[j].x);
    CHECK(triod.curves[j][0].y == ends.p[j].y);
  }

  // straight curve: endpoint lands at P + L * (cos, sin)
  const Vec2 tip = triod.curves[0].back();
  CHECK(tip.x == doctest::Approx(0.3 + 1.5 * std::cos(0.7)).epsilon(1e-12));
  CHECK(tip.y == doctest::Approx(-0.4 + 1.5 * std::sin(0.7)).epsilon(1e-12));

  // full circle: theta = 2*pi*x with length 2*pi closes on itself
  CHECK(norm(triod.curves[1].back() - ends.p[1]) <= 1e-3);
}

TEST_CASE("junction_mismatch: pure quadrature error, second-order decay") {
  // Circle arcs chosen so the continuum curves meet exactly at the origin:
  // theta_j(x) = phi_j + omega_j x integrates in closed form.
  const std::array<double, 3> phi{0.3, 2.3, 4.4};
  const std::array<double, 3> omega{0.8, -0.6, 0.5};
  const std::array<double, 3> len{1.1, 0.9, 1.3};
  auto make = [&](int n) {
    TriodState s;
    EndpointSet ends;
    for (int j = 0; j < 3; ++j) {
      s.theta[j].resize(n + 1);
      for (int i = 0; i <= n; ++i)
        s.theta[j][i] = phi[j] + omega[j] * static_cast<double>(i) / n;
      s.lengths[j] = len[j];
      const Vec2 chord{(std::sin(phi[j] + omega[j]) - std::sin(phi[j])) / omega[j],
                       (std::cos(phi[j]) - std::cos(phi[j] + omega[j])) / omega[j]};
      ends.p[j] = Vec2{0.0, 0.0} - len[j] * chord;
    }
    return junction_mismatch(reconstruct(s, ends));
  };
  const double m100 = make(100);
  const double m200 = make(200);
  CHECK(m200 > 0.0);
  CHECK(m200 <= 1e-4);
  CHECK(m100 / m200 >= 3.5);
  CHECK(m100 / m200 <= 4.5);
}

TEST_CASE("weighted_fermat_point: equilateral centroid and right-triangle case") {
  const Vec2 c = weighted_fermat_point(kEquilateral, {1.0, 1.0, 1.0});
  CHECK(std::abs(c.x) <= 1e-12);
  CHECK(std::abs(c.y) <= 1e-12);

  const EndpointSet right{{Vec2{0.0, 0.0}, Vec2{1.0, 0.0}, Vec2{0.0, 1.0}}};
  const Vec2 f = weighted_fermat_point(right, {1.0, 1.0, 1.0});
  CHECK(std::abs(f.x - f.y) <= 1e-10);  // lies on the symmetry axis
  // all three viewing angles equal 2*pi/3
  for (int j = 0; j < 3; ++j) {
    const Vec2 u = right.p[j] - f;
    const Vec2 v = right.p[(j + 1) % 3] - f;
    const double ang = std::acos(dot(u, v) / (norm(u) * norm(v)));
    CHECK(std::abs(ang - 2.0 * M_PI / 3.0) <= 1e-8);
  }
}

TEST_CASE("weighted_fermat_point: gradient tolerance and vertex optimality") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> uw(0.8, 1.25);
  for (int trial = 0; trial < 25; ++trial) {
    const std::array<double, 3> w{uw(rng), uw(rng), uw(rng)};
    const Vec2 a = weighted_fermat_point(kEquilateral, w);
    Vec2 g{};
    for (int j = 0; j < 3; ++j) {
      const Vec2 d = a - kEquilateral.p[j];
      g = g + (w[j] / norm(d)) * d;
    }
    CHECK(norm(g) <= 1e-10);
  }

  CHECK_THROWS_AS(weighted_fermat_point(kEquilateral, {1.0, 1.0, 10.0}),
                  VertexOptimal);
  try {
    weighted_fermat_point(kEquilateral, {1.0, 1.0, 10.0});
  } catch (const VertexOptimal& e) {
    CHECK(e.vertex == 2);
  }
  CHECK_THROWS_AS(weighted_fermat_point(kEquilateral, {1.0, -1.0, 1.0}),
                  ConfigError);
}

TEST_CASE("steiner_triod: spokes, angles, and the interior-angle obstruction") {
  const int n = 64;
  const auto triod = steiner_triod(kEquilateral, n);
  for (int j = 0; j < 3; ++j) {
    CHECK(static_cast<int>(triod.curves[j].size()) == n + 1);
    CHECK(norm(triod.curves[j].back()) <= 1e-12);  // centroid is the origin
    CHECK(norm(triod.curves[j][0] - kEquilateral.p[j]) == 0.0);
  }
  // pairwise spoke angles at the junction
  for (int j = 0; j < 3; ++j) {
    const Vec2 u = triod.curves[j][0] - triod.curves[j].back();
    const Vec2 v =
        triod.curves[(j + 1) % 3][0] - triod.curves[(j + 1) % 3].back();
    const double ang = std::acos(dot(u, v) / (norm(u) * norm(v)));
    CHECK(std::abs(ang - 2.0 * M_PI / 3.0) <= 1e-8);
  }

  const EndpointSet obtuse{
      {Vec2{0.0, 0.0}, Vec2{1.0, 0.0},
       Vec2{std::cos(150.0 * M_PI / 180.0), std::sin(150.0 * M_PI / 180.0)}}};
  CHECK_THROWS_AS(steiner_triod(obtuse, n), A2Violation);
  try {
    steiner_triod(obtuse, n);
  } catch (const A2Violation& e) {
    CHECK(e.vertex == 0);
  }
}

TEST_CASE("triod_distance: identity, translation, and brute-force agreement") {
  const auto a = steiner_triod(kEquilateral, 50);
  CHECK(triod_distance(a, a) == 0.0);

  auto b = a;
  for (auto& curve : b.curves)
    for (Vec2& p : curve) p.x += 0.125;
  CHECK(triod_distance(a, b) == doctest::Approx(0.125).epsilon(1e-14));

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    PlanarTriod x, y;
    for (int j = 0; j < 3; ++j) {
      const int nx = 5 + static_cast<int>(rng() % 40);
      const int ny = 5 + static_cast<int>(rng() % 40);
      x.curves[j].resize(nx);
      y.curves[j].resize(ny);
      for (Vec2& p : x.curves[j]) p = {u(rng), u(rng)};
      for (Vec2& p : y.curves[j]) p = {u(rng), u(rng)};
    }
    CHECK(triod_distance(x, y) ==
          doctest::Approx(hausdorff_brute(x, y)).epsilon(1e-13));
  }
}

TEST_CASE("snapshot_csv: header, shape, and value fidelity") {
  const int n = 16;
  TriodState s;
  for (int j = 0; j < 3; ++j) s.theta[j].assign(n + 1, 0.5 * j);
  s.lengths = {1.0, 1.25, 0.75};
  const EndpointSet ends{{Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}}};

  const std::string csv = snapshot_csv(s, ends);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "curve_id,x,px,py,theta,kappa");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3 * (n + 1));

  // 17-significant-digit round trip of an awkward value
  TriodState odd = s;
  odd.theta[0].assign(n + 1, 1.0 / 3.0);
  const std::string csv2 = snapshot_csv(odd, ends);
  CHECK(csv2.find("0.33333333333333331") != std::string::npos);
}
