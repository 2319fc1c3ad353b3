#include "triodflow/rayleigh.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace triodflow {

namespace {

// (reduced index, coefficient) pairs a grid node expands into
struct NodeDof {
  int index[2];
  double coeff[2];
  int count;
};

int eliminated_index(const std::array<double, 3>& w2) {
  int e = 0;
  for (int j = 1; j < 3; ++j)
    if (w2[j] >= w2[e]) e = j;
  return e;
}

}  // namespace

void validate_eigen_problem(const NetworkEigenProblem& problem) {
  for (int j = 0; j < 3; ++j) {
    if (!(problem.seg_lengths[j] > 0.0))
      throw ConfigError("segment length " + std::to_string(j + 1) +
                        " must be positive");
    if (!(problem.weights[j] > 0.0))
      throw ConfigError("segment weight " + std::to_string(j + 1) +
                        " must be positive");
  }
  if (problem.nodes_per_segment < 2)
    throw ConfigError("need at least two elements per segment");
}

AssembledSystem assemble(const NetworkEigenProblem& problem) {
  validate_eigen_problem(problem);
  const int n = problem.nodes_per_segment;

  AssembledSystem sys;
  for (int j = 0; j < 3; ++j)
    sys.endpoint_weights[j] = problem.weights[j] * problem.weights[j];
  sys.eliminated_segment = eliminated_index(sys.endpoint_weights);
  sys.dim = 3 * n - 1;
  sys.stiffness.assign(static_cast<std::size_t>(sys.dim) * sys.dim, 0.0);
  sys.mass.assign(static_cast<std::size_t>(sys.dim) * sys.dim, 0.0);

  // reduced-dof offsets per segment
  int base[3];
  int acc = 0;
  for (int j = 0; j < 3; ++j) {
    base[j] = acc;
    acc += (j == sys.eliminated_segment) ? n - 1 : n;
  }

  const int e = sys.eliminated_segment;
  auto dof_of = [&](int j, int i) {
    NodeDof d{{0, 0}, {0.0, 0.0}, 0};
    if (i == 0) return d;  // wall value pinned to zero
    if (j == e && i == n) {
      // endpoint recovered from the coupling constraint
      int c = 0;
      for (int k = 0; k < 3; ++k) {
        if (k == e) continue;
        d.index[c] = base[k] + n - 1;
        d.coeff[c] = -sys.endpoint_weights[k] / sys.endpoint_weights[e];
        ++c;
      }
      d.count = 2;
      return d;
    }
    d.index[0] = base[j] + i - 1;
    d.coeff[0] = 1.0;
    d.count = 1;
    return d;
  };

  for (int j = 0; j < 3; ++j) {
    const double h = problem.seg_lengths[j] / n;
    const double w = problem.weights[j];
    const double ks = w * w * w / h;
    const double ms = w * w * h / 6.0;
    const double k_loc[2][2] = {{ks, -ks}, {-ks, ks}};
    const double m_loc[2][2] = {{2.0 * ms, ms}, {ms, 2.0 * ms}};
    for (int el = 0; el < n; ++el) {
      const NodeDof nd[2] = {dof_of(j, el), dof_of(j, el + 1)};
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int p = 0; p < nd[a].count; ++p)
            for (int q = 0; q < nd[b].count; ++q) {
              const std::size_t at =
                  static_cast<std::size_t>(nd[a].index[p]) * sys.dim +
                  nd[b].index[q];
              const double c = nd[a].coeff[p] * nd[b].coeff[q];
              sys.stiffness[at] += c * k_loc[a][b];
              sys.mass[at] += c * m_loc[a][b];
            }
    }
  }
  return sys;
}

RayleighSolution solve_min_rayleigh(const NetworkEigenProblem& problem) {
  const AssembledSystem sys = assemble(problem);
  const int dim = sys.dim;
  const int n = problem.nodes_per_segment;

  // symmetric matrices, so the row-major buffers map cleanly
  const Eigen::Map<const Eigen::MatrixXd> K(sys.stiffness.data(), dim, dim);
  const Eigen::Map<const Eigen::MatrixXd> M(sys.mass.data(), dim, dim);

  const Eigen::LDLT<Eigen::MatrixXd> kfact(K);
  if (kfact.info() != Eigen::Success)
    throw SolverFailure("stiffness factorization failed");

  constexpr int kBlock = 3;  // covers the doubly degenerate symmetric case
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::MatrixXd X(dim, kBlock);
  for (int c = 0; c < kBlock; ++c)
    for (int r = 0; r < dim; ++r) X(r, c) = unif(rng);

  auto m_orthonormalize = [&](Eigen::MatrixXd& Z) {
    for (int c = 0; c < kBlock; ++c) {
      for (int att = 0;; ++att) {
        for (int k = 0; k < c; ++k) {
          const double proj = Z.col(k).dot(M * Z.col(c));
          Z.col(c) -= proj * Z.col(k);
        }
        const double nrm = std::sqrt(Z.col(c).dot(M * Z.col(c)));
        if (nrm > 1e-14) {
          Z.col(c) /= nrm;
          break;
        }
        if (att >= 3)
          throw SolverFailure("inverse iteration block degenerated");
        for (int r = 0; r < dim; ++r) Z(r, c) = unif(rng);
      }
    }
  };

  constexpr int kMaxIter = 500;
  double lam = 0.0, lam_prev = 0.0;
  int settled = 0;
  int iter = 0;
  for (; iter < kMaxIter; ++iter) {
    Eigen::MatrixXd Z = kfact.solve(M * X);
    m_orthonormalize(Z);
    const Eigen::MatrixXd A = Z.transpose() * K * Z;
    const Eigen::MatrixXd B = Z.transpose() * M * Z;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ritz(A, B);
    if (ritz.info() != Eigen::Success)
      throw SolverFailure("Ritz projection failed");
    lam = ritz.eigenvalues()(0);
    X = Z * ritz.eigenvectors();
    if (iter > 0 && std::abs(lam - lam_prev) <= 1e-13 * std::max(1.0, lam)) {
      if (++settled >= 2) break;
    } else {
      settled = 0;
    }
    lam_prev = lam;
  }
  if (iter >= kMaxIter)
    throw SolverFailure("inverse iteration stagnated before converging");

  Eigen::VectorXd v = X.col(0);
  v /= std::sqrt(v.dot(M * v));

  RayleighSolution sol;
  sol.eigenvalue = v.dot(K * v);
  sol.iterations = iter + 1;

  int rbase[3];
  int acc = 0;
  for (int j = 0; j < 3; ++j) {
    rbase[j] = acc;
    acc += (j == sys.eliminated_segment) ? n - 1 : n;
  }
  const int e = sys.eliminated_segment;
  for (int j = 0; j < 3; ++j) {
    sol.phi[j].assign(n + 1, 0.0);
    const int count = (j == e) ? n - 1 : n;
    for (int i = 1; i <= count; ++i) sol.phi[j][i] = v(rbase[j] + i - 1);
  }
  double drop = 0.0;
  for (int k = 0; k < 3; ++k)
    if (k != e) drop -= sys.endpoint_weights[k] * sol.phi[k][n];
  sol.phi[e][n] = drop / sys.endpoint_weights[e];

  // deterministic sign: largest-magnitude nodal value positive
  double peak = 0.0;
  for (int j = 0; j < 3; ++j)
    for (double p : sol.phi[j])
      if (std::abs(p) > std::abs(peak)) peak = p;
  if (peak < 0.0)
    for (int j = 0; j < 3; ++j)
      for (double& p : sol.phi[j]) p = -p;
  return sol;
}

double poincare_constant(const NetworkEigenProblem& problem) {
  return solve_min_rayleigh(problem).eigenvalue;
}

namespace {

std::vector<double> axis_samples(const std::array<double, 2>& range,
                                 int samples) {
  if (!(range[0] > 0.0) || !(range[1] > 0.0))
    throw ConfigError("parameter box ranges must be positive");
  if (samples < 1) throw ConfigError("need at least one sample per axis");
  if (samples == 1 || !(range[1] > range[0])) return {range[0]};
  std::vector<double> xs(samples);
  for (int i = 0; i < samples; ++i)
    xs[i] = range[0] + (range[1] - range[0]) * i / (samples - 1);
  return xs;
}

std::size_t pool_width(std::size_t jobs) {
  std::size_t width = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TRIOD_FLOW_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) width = std::min<std::size_t>(width, cap);
  }
  return std::max<std::size_t>(1, std::min(width, jobs));
}

}  // namespace

double poincare_constant_over_box(const std::array<double, 2>& length_range,
                                  const std::array<double, 2>& weight_range,
                                  int samples_per_axis,
                                  int nodes_per_segment) {
  const std::vector<double> ls = axis_samples(length_range, samples_per_axis);
  const std::vector<double> ws = axis_samples(weight_range, samples_per_axis);

  std::vector<NetworkEigenProblem> grid;
  for (double l0 : ls)
    for (double l1 : ls)
      for (double l2 : ls)
        for (double w0 : ws)
          for (double w1 : ws)
            for (double w2 : ws) {
              NetworkEigenProblem p;
              p.seg_lengths = {l0, l1, l2};
              p.weights = {w0, w1, w2};
              p.nodes_per_segment = nodes_per_segment;
              grid.push_back(p);
            }

  const std::size_t width = pool_width(grid.size());
  std::vector<double> mins(width, std::numeric_limits<double>::infinity());
  std::vector<std::exception_ptr> errors(width);
  std::vector<std::thread> pool;
  pool.reserve(width);
  for (std::size_t w = 0; w < width; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < grid.size(); i += width)
          mins[w] = std::min(mins[w], poincare_constant(grid[i]));
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
  return *std::min_element(mins.begin(), mins.end());
}

}  // namespace triodflow
