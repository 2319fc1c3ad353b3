// ===== triodflow command-line front end ====================================
// Subcommands:
//   simulate CONFIG   one curvature-flow run from a JSON configuration
//   sweep CONFIG      Cartesian parameter sweep, runs executed concurrently
//   rayleigh          smallest Rayleigh eigenvalue of a three-segment network
//   steiner           Fermat point and spoke angles of an endpoint triangle
// Exit codes: 0 success, 2 configuration error, 3 solver failure.

#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "triodflow/driver.hpp"
#include "triodflow/errors.hpp"
#include "triodflow/geometry.hpp"
#include "triodflow/model.hpp"
#include "triodflow/rayleigh.hpp"

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int cmd_simulate(const std::string& config_path) {
  const triodflow::RunConfig config =
      triodflow::load_run_config(config_path);
  const triodflow::RunSummary summary = triodflow::execute_run(config);
  std::fputs(triodflow::summary_json(summary).c_str(), stdout);
  return 0;
}

int cmd_sweep(const std::string& config_path) {
  const triodflow::SweepConfig config =
      triodflow::load_sweep_config(config_path);
  const std::vector<triodflow::SweepRow> rows =
      triodflow::execute_sweep(config);
  std::size_t failed = 0;
  for (const auto& row : rows)
    if (!row.ok) ++failed;
  std::fputs(triodflow::sweep_summary_json(rows).c_str(), stdout);
  std::fprintf(stderr, "sweep: %zu runs, %zu failed\n", rows.size(), failed);
  return 0;
}

int cmd_rayleigh(const std::vector<double>& lengths,
                 const std::vector<double>& weights, int nodes) {
  if (lengths.size() != 3)
    throw triodflow::ConfigError("--lengths needs exactly 3 values");
  if (weights.size() != 3)
    throw triodflow::ConfigError("--weights needs exactly 3 values");
  // The one-sided junction stencils of the recovered flux need a few nodes to
  // be meaningful; coarser grids also sit outside the validated range.
  if (nodes < 16) throw triodflow::ConfigError("--nodes must be >= 16");
  triodflow::NetworkEigenProblem problem;
  for (int j = 0; j < 3; ++j) {
    problem.seg_lengths[j] = lengths[static_cast<std::size_t>(j)];
    problem.weights[j] = weights[static_cast<std::size_t>(j)];
  }
  problem.nodes_per_segment = nodes;
  const double eigenvalue = triodflow::poincare_constant(problem);
  std::printf(
      "{\"lengths\": [%s, %s, %s], \"weights\": [%s, %s, %s], "
      "\"nodes\": %d, \"eigenvalue\": %s}\n",
      num(lengths[0]).c_str(), num(lengths[1]).c_str(),
      num(lengths[2]).c_str(), num(weights[0]).c_str(),
      num(weights[1]).c_str(), num(weights[2]).c_str(), nodes,
      num(eigenvalue).c_str());
  return 0;
}

int cmd_steiner(const std::vector<double>& coords) {
  if (coords.size() != 6)
    throw triodflow::ConfigError(
        "--endpoints needs exactly 6 values (x0,y0,x1,y1,x2,y2)");
  triodflow::EndpointSet endpoints;
  for (int j = 0; j < 3; ++j)
    endpoints.p[j] = triodflow::Vec2{coords[static_cast<std::size_t>(2 * j)],
                                     coords[static_cast<std::size_t>(2 * j + 1)]};
  triodflow::validate_endpoints(endpoints);
  if (!triodflow::a2_holds(endpoints)) {
    const auto angles = triodflow::interior_angles(endpoints);
    int widest = 0;
    for (int j = 1; j < 3; ++j)
      if (angles[j] > angles[widest]) widest = j;
    throw triodflow::A2Violation(
        "interior angle at endpoint " + std::to_string(widest) + " is " +
        num(angles[widest]) +
        " rad >= 2*pi/3; the junction degenerates onto that vertex",
        widest);
  }
  const triodflow::Vec2 a =
      triodflow::weighted_fermat_point(endpoints, {1.0, 1.0, 1.0});
  std::array<double, 3> spoke{};
  for (int j = 0; j < 3; ++j) {
    const triodflow::Vec2 d = a - endpoints.p[j];
    spoke[j] = std::atan2(d.y, d.x);
  }
  std::printf(
      "{\"fermat_point\": [%s, %s], \"spoke_angles\": [%s, %s, %s]}\n",
      num(a.x).c_str(), num(a.y).c_str(), num(spoke[0]).c_str(),
      num(spoke[1]).c_str(), num(spoke[2]).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Curvature flow of a planar triod with orientation-dependent surface "
      "tensions"};
  app.require_subcommand(1);

  std::string simulate_config;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "run one simulation from a JSON configuration");
  simulate->add_option("config", simulate_config, "path to the JSON config")
      ->required();

  std::string sweep_config;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "run a parameter sweep from a JSON configuration");
  sweep->add_option("config", sweep_config, "path to the JSON config")
      ->required();

  std::vector<double> lengths, weights;
  int nodes = 400;
  CLI::App* rayleigh = app.add_subcommand(
      "rayleigh",
      "smallest eigenvalue of the weighted network Rayleigh quotient");
  rayleigh->add_option("--lengths", lengths, "three segment lengths a,b,c")
      ->required()
      ->delimiter(',');
  rayleigh->add_option("--weights", weights, "three segment weights a,b,c")
      ->required()
      ->delimiter(',');
  rayleigh->add_option("--nodes", nodes, "elements per segment (>= 16)");

  std::vector<double> coords;
  CLI::App* steiner = app.add_subcommand(
      "steiner", "Fermat point and spoke angles of three endpoints");
  steiner
      ->add_option("--endpoints", coords,
                   "endpoint coordinates x0,y0,x1,y1,x2,y2")
      ->required()
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits 0, usage errors are config errors
  }

  try {
    if (*simulate) return cmd_simulate(simulate_config);
    if (*sweep) return cmd_sweep(sweep_config);
    if (*rayleigh) return cmd_rayleigh(lengths, weights, nodes);
    if (*steiner) return cmd_steiner(coords);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "triodflow: error [%s]: %s\n",
                 triodflow::error_kind_name(e), e.what());
    return triodflow::error_exit_code(e);
  }
  return 0;
}
