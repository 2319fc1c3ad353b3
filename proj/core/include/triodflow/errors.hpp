#pragma once
// ===== Error hierarchy =====
// Every failure surfaces as an exception rooted at triodflow::Error.
// Time-stepping errors derive from SolverError so a driver can attach the
// failing simulation time and map the whole family to one exit code.

#include <limits>
#include <stdexcept>
#include <string>

namespace triodflow {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad configuration or invalid data handed to a constructor / entry point.
struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Surface-tension triple so lopsided that the junction angles degenerate
// (|cos| within eps_angle of 1).
struct DegenerateAngle : Error {
  explicit DegenerateAngle(const std::string& msg) : Error(msg) {}
};

// Base for failures raised while advancing the flow.  at_time is the
// simulation time at the failure, NaN when raised outside a run.
struct SolverError : Error {
  double at_time;
  explicit SolverError(const std::string& msg,
                       double t = std::numeric_limits<double>::quiet_NaN())
      : Error(msg), at_time(t) {}
};

// Junction tangential-velocity system lost solvability: the tension triple
// fails the triangle condition or the cyclic denominator 1 - c1*c2*c3 is
// within eps_den of zero.
struct DegenerateJunction : SolverError {
  explicit DegenerateJunction(const std::string& msg,
                              double t = std::numeric_limits<double>::quiet_NaN())
      : SolverError(msg, t) {}
};

// Damped Newton for the junction conditions hit its iteration cap or could
// not make progress (time step too large, geometry degenerating, or data
// with no nearby root).
struct NewtonDivergence : SolverError {
  explicit NewtonDivergence(const std::string& msg,
                            double t = std::numeric_limits<double>::quiet_NaN())
      : SolverError(msg, t) {}
};

// A curve length reached zero (or a collapse threshold): the triod is
// leaving the regime where the junction is a genuine triple point.
struct LengthCollapse : SolverError {
  explicit LengthCollapse(const std::string& msg,
                          double t = std::numeric_limits<double>::quiet_NaN())
      : SolverError(msg, t) {}
};

// Generic numerical failure: instability detected mid-run, or an eigenvalue
// iteration that stagnated.
struct SolverFailure : SolverError {
  explicit SolverFailure(const std::string& msg,
                         double t = std::numeric_limits<double>::quiet_NaN())
      : SolverError(msg, t) {}
};

// The weighted geometric-median iteration detected that the minimum sits on
// an input point itself (no interior junction).  vertex is the 0-based index.
struct VertexOptimal : Error {
  int vertex;
  explicit VertexOptimal(int v)
      : Error("weighted median attained at endpoint " + std::to_string(v) +
              "; no interior junction exists"),
        vertex(v) {}
};

// Endpoint triangle admits no interior equal-angle junction (an interior
// angle of the triangle is >= 2*pi/3 at the given vertex).
struct A2Violation : Error {
  int vertex;
  explicit A2Violation(int v)
      : Error("endpoint triangle has an interior angle >= 2*pi/3 at vertex " +
              std::to_string(v) + "; no interior equal-angle junction"),
        vertex(v) {}
  A2Violation(const std::string& msg, int v) : Error(msg), vertex(v) {}
};

// Same obstruction for *weighted* junctions: the tension weights pull the
// balance point onto an endpoint.
struct A2LikeViolation : A2Violation {
  explicit A2LikeViolation(int v)
      : A2Violation("tension weights pull the junction onto endpoint " +
                        std::to_string(v) + "; no interior balanced junction",
                    v) {}
};

// A record-stream operation needs more records than it was given.
struct InsufficientRecords : Error {
  explicit InsufficientRecords(const std::string& msg) : Error(msg) {}
};

// Exponential fitting asked to take a logarithm of a non-positive sample.
struct NonPositiveSamples : Error {
  explicit NonPositiveSamples(const std::string& msg) : Error(msg) {}
};

}  // namespace triodflow
