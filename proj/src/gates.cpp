#include "uqsim/gates.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "uqsim/error.hpp"

namespace uqsim {
namespace {

using H = HamiltonianExpr;
constexpr double pi = std::numbers::pi;

const DescriptorTriple* find_qubit(const TripleMap& m, const std::string& id) {
  auto it = m.find(id);
  return it == m.end() ? nullptr : &it->second;
}

}  // namespace

std::string_view gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::not_gate:
      return "not";
    case GateKind::sqrt_not:
      return "sqrt_not";
    case GateKind::rot_x:
      return "rot_x";
    case GateKind::wire:
      return "wire";
    case GateKind::cnot:
      return "cnot";
    case GateKind::ccnot:
      return "ccnot";
    case GateKind::hamiltonian:
      return "hamiltonian";
  }
  return "?";
}

std::vector<std::string> GateSpec::with_role(Role r) const {
  std::vector<std::string> out;
  for (const auto& p : participants)
    if (p.role == r) out.push_back(p.qubit);
  return out;
}

std::set<std::string> GateSpec::qubit_ids() const {
  std::set<std::string> out;
  for (const auto& p : participants) out.insert(p.qubit);
  return out;
}

GateSpec not_gate(std::string a) {
  GateSpec g{GateKind::not_gate, "not", {{a, Role::target}}, {}, 1.0, 0.0};
  g.hamiltonians.emplace(a, (pi / 2) * H::ref(a, Axis::x));
  return g;
}

GateSpec sqrt_not_gate(std::string a) {
  GateSpec g = not_gate(std::move(a));
  g.kind = GateKind::sqrt_not;
  g.name = "sqrt_not";
  g.duration = 0.5;
  return g;
}

GateSpec rot_x_gate(std::string a, double angle) {
  GateSpec g{GateKind::rot_x, "rot_x", {{a, Role::target}}, {}, 1.0, angle};
  g.hamiltonians.emplace(a, (angle / 2) * H::ref(a, Axis::x));
  return g;
}

GateSpec wire_gate(std::string a) { return {GateKind::wire, "wire", {{std::move(a), Role::operand}}, {}, 1.0, 0.0}; }

GateSpec cnot_gate(std::string control, std::string target, std::string reference) {
  GateSpec g{GateKind::cnot,
             "cnot",
             {{control, Role::control}, {target, Role::target}, {reference, Role::reference}},
             {},
             1.0,
             0.0};
  g.hamiltonians.emplace(target, (pi / 2) * H::product(H::ref(target, Axis::x),
                                                       H::pbar(H::ref(control, Axis::z), H::ref(reference, Axis::z))));
  return g;
}

GateSpec ccnot_gate(std::string a, std::string b, std::string c, std::string d, std::string e) {
  GateSpec g{GateKind::ccnot,
             "ccnot",
             {{a, Role::control}, {b, Role::control}, {c, Role::target}, {d, Role::reference}, {e, Role::reference}},
             {},
             1.0,
             0.0};
  auto gate = H::product(H::pbar(H::ref(a, Axis::z), H::ref(d, Axis::z)), H::pbar(H::ref(b, Axis::z), H::ref(e, Axis::z)));
  g.hamiltonians.emplace(c, (pi / 2) * H::product(H::ref(c, Axis::x), std::move(gate)));
  return g;
}

GateSpec hamiltonian_gate(std::string name, HamiltonianMap hamiltonians, double duration) {
  if (!(duration > 0.0)) throw ValidationError("gate duration must be positive");
  GateSpec g{GateKind::hamiltonian, std::move(name), {}, std::move(hamiltonians), duration, 0.0};
  std::set<std::string> ids;
  for (const auto& [id, h] : g.hamiltonians) {
    ids.insert(id);
    ids.merge(h.qubits());
  }
  for (const auto& id : ids) g.participants.push_back({id, Role::operand});
  return g;
}

QNumber p_bar(const QNumber& q_az, const QNumber& q_cz) {
  require_same_dim(q_az, q_cz, "p_bar");
  QNumber p = 2.0 * QNumber::identity(q_az.dim());
  p -= anticommutator(q_az, q_cz);
  return 0.25 * p;
}

std::string_view attribute_name(std::optional<Attribute> a) {
  if (!a) return "none";
  return *a == Attribute::plus_one ? "+1" : "-1";
}

std::optional<Attribute> attribute_of(const DescriptorTriple& q, const HeisenbergState& state, double tolerance) {
  if (!is_sharp(q.z, state, tolerance)) return std::nullopt;
  const double z = expectation(q.z, state, tolerance);
  if (std::abs(z - 1.0) <= tolerance) return Attribute::plus_one;
  if (std::abs(z + 1.0) <= tolerance) return Attribute::minus_one;
  return std::nullopt;
}

EvolveResult apply_gate(const TripleMap& descriptors, const GateSpec& gate, EvolveOptions options) {
  if (!(gate.duration > 0.0)) throw ValidationError("gate duration must be positive");
  return evolve(descriptors, gate.hamiltonians, 0.0, gate.duration, options);
}

std::string ValidationReport::summary() const {
  if (pass) return "ok";
  std::string s;
  for (const auto& f : failures) {
    if (!s.empty()) s += "; ";
    s += f;
  }
  return s;
}

std::size_t network_algebra_dimension(const TripleMap& descriptors, double rank_tol) {
  std::vector<QNumber> gens;
  for (const auto& [id, t] : descriptors) {
    gens.push_back(t.x);
    gens.push_back(t.y);
    gens.push_back(t.z);
  }
  return generated_algebra(gens, rank_tol).dimension();
}

ValidationReport check_gate_preconditions(const TripleMap& descriptors, const HeisenbergState& state,
                                          const GateSpec& gate, double tolerance) {
  ValidationReport rep;
  if (!(gate.duration > 0.0)) rep.fail("duration must be positive");
  for (const auto& id : gate.qubit_ids())
    if (!find_qubit(descriptors, id)) rep.fail("unknown qubit '" + id + "'");
  for (const auto& [id, h] : gate.hamiltonians) {
    if (!find_qubit(descriptors, id)) rep.fail("Hamiltonian for unknown qubit '" + id + "'");
    for (const auto& ref : h.qubits())
      if (!find_qubit(descriptors, ref)) rep.fail("Hamiltonian references unknown qubit '" + ref + "'");
  }
  if (!rep.pass) return rep;
  if (gate.kind == GateKind::cnot || gate.kind == GateKind::ccnot) {
    const auto controls = gate.with_role(Role::control);
    const auto refs = gate.with_role(Role::reference);
    if (controls.size() != refs.size()) {
      rep.fail("each control needs its own reference qubit");
      return rep;
    }
    for (std::size_t k = 0; k < controls.size(); ++k) {
      const auto& a = descriptors.find(controls[k])->second;
      const auto& c = descriptors.find(refs[k])->second;
      if (classify_pair(a, c, tolerance) != PairClass::maximally_noncommuting) {
        rep.fail("control '" + controls[k] + "' and reference '" + refs[k] + "' are not maximally non-commuting");
      }
      if (attribute_of(c, state, tolerance) != Attribute::plus_one) {
        rep.fail("reference '" + refs[k] + "' does not have attribute +1");
      }
    }
  }
  return rep;
}

ValidationReport validate_gate(const TripleMap& descriptors, const HeisenbergState& state, const GateSpec& gate,
                               EvolveOptions options) {
  ValidationReport rep = check_gate_preconditions(descriptors, state, gate);
  if (!rep.pass) return rep;
  const std::size_t dim = descriptors.begin()->second.dim();
  for (const auto& [id, h] : gate.hamiltonians) {
    try {
      (void)h.eval(descriptors, dim, options.herm_tol);
    } catch (const ValidationError& e) {
      rep.fail("Hamiltonian of '" + id + "': " + e.what());
    }
  }
  if (!rep.pass) return rep;
  rep.algebra_dim_before = network_algebra_dimension(descriptors);
  try {
    const EvolveResult r = apply_gate(descriptors, gate, options);
    rep.algebra_dim_after = network_algebra_dimension(r.descriptors);
  } catch (const Error& e) {
    rep.fail(std::string("simulation failed: ") + e.what());
    return rep;
  }
  if (rep.algebra_dim_after != rep.algebra_dim_before) {
    rep.fail("gate changes the algebra dimension from " + std::to_string(rep.algebra_dim_before) + " to " +
             std::to_string(rep.algebra_dim_after));
  }
  return rep;
}

ValidationReport validate_unitary_gate(const TripleMap& descriptors,
                                       const std::map<std::string, QNumber, std::less<>>& unitaries,
                                       TripleMap* result) {
  ValidationReport rep;
  TripleMap after = descriptors;
  for (const auto& [id, u] : unitaries) {
    auto it = after.find(id);
    if (it == after.end()) {
      rep.fail("unitary for unknown qubit '" + id + "'");
      continue;
    }
    const double res = unitarity_residual(u);
    if (res > tol::exact) {
      std::ostringstream os;
      os << "U for '" << id << "' is not unitary (residual " << res << ")";
      rep.fail(os.str());
    }
    it->second = conjugate(descriptors.find(id)->second, u.adjoint());
  }
  if (!rep.pass) return rep;
  rep.algebra_dim_before = network_algebra_dimension(descriptors, tol::rank);
  rep.algebra_dim_after = network_algebra_dimension(after, tol::rank);
  if (rep.algebra_dim_after != rep.algebra_dim_before) {
    rep.fail("unitaries change the algebra dimension from " + std::to_string(rep.algebra_dim_before) + " to " +
             std::to_string(rep.algebra_dim_after));
  }
  if (result) *result = std::move(after);
  return rep;
}

std::map<std::string, QNumber, std::less<>> swap_with_wire(const TripleMap& descriptors, const std::string& a,
                                                           const std::string& b) {
  const DescriptorTriple* qa = find_qubit(descriptors, a);
  const DescriptorTriple* qb = find_qubit(descriptors, b);
  if (!qa || !qb) throw ValidationError("swap_with_wire: unknown qubit");
  const std::size_t n = qa->dim();
  QNumber u = QNumber::identity(n);
  for (Axis ax : kAxes) u += (*qa)[ax] * (*qb)[ax];
  std::map<std::string, QNumber, std::less<>> out;
  out.emplace(a, 0.5 * u);
  out.emplace(b, QNumber::identity(n));
  return out;
}

}  // namespace uqsim
