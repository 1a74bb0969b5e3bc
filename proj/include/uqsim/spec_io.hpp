#pragma once

// JSON network spec format.
//
// {
//   "qubits": [ {"id": "a", "preset": "pauli" | "tensor-slot" | "copy-of" | "explicit" | "hilbert-creation",
//                "slot": k, "of": n,          tensor-slot
//                "source": "id",              copy-of
//                "x": M, "y": M, "z": M,      explicit (M = rows of [re, im] pairs)
//                "role": 1..4,                hilbert-creation
//                "rotation": {"axis": "x", "angle": a} | {"euler": [theta, phi, psi]} | {"matrix": 3x3}} ],
//   "state": {"sharp_z": ["a", ...]} | {"amplitudes": [[re, im], ...]},     optional
//   "schedule": [ {"time": 0, "gates": [ {"gate": "cnot", "control": "a", "target": "b", "reference": "c"}, ... ]} ],
//   "ctc": {"pairs": [{"young": "a", "old": "b"}], "T": 2}                   optional
// }
//
// Gate names: not, sqrt_not, rot_x(angle), wire, cnot, ccnot ("controls" and
// "references" arrays), hamiltonian ("hamiltonians": {id: expr}, "duration").
// Expressions: "id.axis", numbers (multiples of 1), ["sum", e...],
// ["scale", c, e], ["mul", l, r], ["anti", l, r], ["icomm", l, r], ["pbar", a, c].

#include <filesystem>
#include <string_view>

#include "json.hpp"
#include "uqsim/network.hpp"

namespace uqsim {

using Json = nlohmann::json;

Json matrix_to_json(const QNumber& q);
QNumber matrix_from_json(const Json& j);

Json expr_to_json(const HamiltonianExpr& e);
HamiltonianExpr expr_from_json(const Json& j);

Json gate_to_json(const GateSpec& g);
GateSpec gate_from_json(const Json& j);

NetworkSpec network_spec_from_json(const Json& j);
NetworkSpec parse_network_spec(std::string_view text);
NetworkSpec load_network_spec(const std::filesystem::path& path);

// Explicit form: matrices, amplitudes, schedule, ctc. Rebuilding it gives the
// same descriptors and state.
Json network_to_json(const NetworkState& net);

Json report_to_json(const NetworkReport& rep);

}  // namespace uqsim
