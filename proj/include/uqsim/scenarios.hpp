#pragma once

// Built-in worked networks. Their specs ship as JSON under data/scenarios and
// are embedded into the library.

#include <string_view>
#include <vector>

#include "uqsim/ctc.hpp"

namespace uqsim {

struct ScenarioOptions {
  double step = 1e-3;
  double tol = 1e-6;
};

enum class Direction { forward, reverse };

// grandfather, hilbert-creation, hilbert-destruction, model-theory, classical-grandfather
const std::vector<std::string_view>& scenario_names();

// Embedded JSON for model-theory, grandfather and hilbert-creation.
std::string_view scenario_spec(std::string_view name);
NetworkSpec scenario_network_spec(std::string_view name);

// Old-qubit candidate obtained by rotating the young qubit's start about x by
// phi and negating it, as the schedule would after a rotation by phi.
DescriptorTriple grandfather_candidate(const NetworkState& net, double phi);
// Rotation angle the first gate applies to the young qubit when the old
// qubit is grandfather_candidate(net, phi).
double grandfather_phi_map(const NetworkState& net, double phi);

ScenarioResult run_model_theory_scenario(const ScenarioOptions& options = {});
ScenarioResult run_grandfather_scenario(const ScenarioOptions& options = {});
ScenarioResult run_hilbert_creation_scenario(Direction direction, double tol = 1e-9);
ScenarioResult run_classical_grandfather_scenario();

// Bits (x1, x2) -> (-x1 x2, x2); output bit 0 loops back to input bit 1.
ClassicalCtcProblem classical_grandfather_problem();

ScenarioResult run_scenario(std::string_view name, const ScenarioOptions& options = {});

}  // namespace uqsim
