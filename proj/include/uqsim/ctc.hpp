#pragma once

// Kinematic consistency on closed timelike curves: residuals, the damped
// fixed-point solver over old-qubit descriptors, scalar self-consistency, and
// exhaustive classical enumeration.

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "uqsim/network.hpp"

namespace uqsim {

struct ScenarioCheck {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ScenarioResult {
  std::string name;
  bool solved = false;
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
  std::map<std::string, double> parameters;
  TripleMap initial_descriptors;  // solved old-qubit descriptors at time 0 included
  TripleMap final_descriptors;
  std::vector<ScenarioCheck> checks;
  std::vector<TripleMap> distinct_solutions;  // multistart only
  std::string message;

  // solved and every check passed
  bool passed() const;
  void check(std::string name, bool pass, double value = 0.0, double tolerance = 0.0, std::string detail = {});
  // pass iff value <= tolerance
  void check_within(std::string name, double value, double tolerance);
};

void print_result(std::ostream& os, const ScenarioResult& r);

// Max over pairs of the trace-norm distance between the old qubit at time 0
// (the network's current descriptors) and the young qubit at time T.
double consistency_residual(const NetworkState& net, const CtcSpec& ctc, const RunOptions& options = {});
double consistency_residual(const NetworkState& net, const RunOptions& options = {});

struct FixedPointOptions {
  double damping = 0.5;
  double tol = 1e-6;
  int max_iter = 200;
  // Restrict iterates to triples whose z-component is +-(reference z).
  bool sharp_z = false;
  RunOptions run;
  std::size_t multistart = 0;  // extra random starts
  std::uint64_t seed = 0;
};

// Unknowns are the old qubits' time-0 descriptors, starting from the network's
// current values and parametrised as rotations of those starting triples.
// Iterates move a fraction `damping` of the way along the rotation geodesic
// toward the young qubit's output. Throws SolverError if an iterate cannot be
// expressed as a rotation of its starting triple; non-convergence is reported
// through solved = false.
ScenarioResult fixed_point_solve(const NetworkState& net, const FixedPointOptions& options = {});

// Root of x = f(x) by bisection on [lo, hi] (either order). Throws
// SolverError without a sign change of x - f(x) or when |x - f(x)| > tol at
// the converged point.
double scalar_self_consistency(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-9);

struct ClassicalCtcProblem {
  std::size_t n_bits = 0;
  // Total map from input bits (+1/-1) to output bits.
  std::function<std::vector<int>(const std::vector<int>&)> gate_map;
  // (output slot, input slot): the output bit travels back to become that input.
  std::vector<std::pair<std::size_t, std::size_t>> identifications;
};

// Every consistent input assignment (bit values +1/-1). Input slots named by
// an identification are looped; the rest are free and enumerated too.
std::vector<std::vector<int>> classical_ctc_enumerate(const ClassicalCtcProblem& problem);

// Uniformly random proper rotation.
Eigen::Matrix3d random_rotation(std::mt19937_64& rng);

// R exp(t log(R^T S)), the point a fraction t along the geodesic from R to S.
Eigen::Matrix3d rotation_geodesic(const Eigen::Matrix3d& r, const Eigen::Matrix3d& s, double t);

}  // namespace uqsim
