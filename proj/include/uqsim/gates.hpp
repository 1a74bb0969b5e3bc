#pragma once

// Named gates defined by their Hamiltonians, attributes, and gate validation.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "uqsim/algebra.hpp"
#include "uqsim/dynamics.hpp"

namespace uqsim {

enum class Role { control, target, reference, operand };

struct Participant {
  std::string qubit;
  Role role = Role::operand;
};

enum class GateKind { not_gate, sqrt_not, rot_x, wire, cnot, ccnot, hamiltonian };

std::string_view gate_kind_name(GateKind k);

struct GateSpec {
  GateKind kind = GateKind::wire;
  std::string name;
  std::vector<Participant> participants;
  HamiltonianMap hamiltonians;  // qubits not listed have zero Hamiltonian
  double duration = 1.0;
  double angle = 0.0;  // rot_x only

  std::vector<std::string> with_role(Role r) const;
  std::set<std::string> qubit_ids() const;
};

GateSpec not_gate(std::string a);
GateSpec sqrt_not_gate(std::string a);
GateSpec rot_x_gate(std::string a, double angle);
GateSpec wire_gate(std::string a);
GateSpec cnot_gate(std::string control, std::string target, std::string reference);
// Controls a, b with references d, e acting on target c.
GateSpec ccnot_gate(std::string a, std::string b, std::string c, std::string d, std::string e);
// Participants are the qubits with Hamiltonians plus every qubit they reference.
GateSpec hamiltonian_gate(std::string name, HamiltonianMap hamiltonians, double duration = 1.0);

// (2*1 - {q_az, q_cz}) / 4
QNumber p_bar(const QNumber& q_az, const QNumber& q_cz);

enum class Attribute { plus_one, minus_one };

std::string_view attribute_name(std::optional<Attribute> a);

// plus_one / minus_one when q_z is sharp with expectation +1 / -1 within tol.
std::optional<Attribute> attribute_of(const DescriptorTriple& q, const HeisenbergState& state,
                                      double tolerance = tol::evolved);

// Applies one gate for its duration. Defaults to the closed form when the
// Hamiltonians stay constant, ODE otherwise.
EvolveResult apply_gate(const TripleMap& descriptors, const GateSpec& gate,
                        EvolveOptions options = {.path = EvolvePath::automatic});

struct ValidationReport {
  bool pass = true;
  std::vector<std::string> failures;
  std::size_t algebra_dim_before = 0;
  std::size_t algebra_dim_after = 0;

  void fail(std::string why) {
    pass = false;
    failures.push_back(std::move(why));
  }
  std::string summary() const;
};

// Participants exist; for cnot/ccnot each control is maximally non-commuting
// with its reference and every reference has attribute plus_one.
ValidationReport check_gate_preconditions(const TripleMap& descriptors, const HeisenbergState& state,
                                          const GateSpec& gate, double tolerance = tol::evolved);

// Preconditions, hermiticity of every Hamiltonian, and preservation of the
// generated-algebra dimension over all descriptors when the gate is applied.
ValidationReport validate_gate(const TripleMap& descriptors, const HeisenbergState& state, const GateSpec& gate,
                               EvolveOptions options = {.path = EvolvePath::automatic});

// A gate given only as per-qubit unitaries, applied as q_a -> U_a^dagger q_a U_a.
// Rejected if any U_a is not unitary or the algebra dimension changes.
ValidationReport validate_unitary_gate(const TripleMap& descriptors,
                                       const std::map<std::string, QNumber, std::less<>>& unitaries,
                                       TripleMap* result = nullptr);

// Swap on a with a unit wire on b: U_a = (1 + sum_i q_ai q_bi) / 2, U_b = 1.
std::map<std::string, QNumber, std::less<>> swap_with_wire(const TripleMap& descriptors, const std::string& a,
                                                           const std::string& b);

// Dimension of the algebra generated by every descriptor.
std::size_t network_algebra_dimension(const TripleMap& descriptors, double rank_tol = tol::rank_evolved);

}  // namespace uqsim
