#include "uqsim/spec_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "uqsim/error.hpp"

namespace uqsim {
namespace {

using H = HamiltonianExpr;

const Json& need(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing '" + key + "'");
  return *it;
}

std::string need_string(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_string()) throw ParseError(where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

double need_number(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_number()) throw ParseError(where + ": '" + key + "' must be a number");
  return v.get<double>();
}

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ParseError(where + ": unknown key '" + k + "'");
  }
}

cplx complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError("complex numbers are [re, im] pairs, got " + j.dump());
}

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

std::string gate_where(const Json& j) { return "gate " + j.dump(); }

double parse_angle(std::string_view s, const std::string& where) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  while (b < e && *b == ' ') ++b;
  while (e > b && e[-1] == ' ') --e;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) throw ParseError(where + ": bad angle '" + std::string(s) + "'");
  return v;
}

Eigen::Matrix3d rotation_from_json(const Json& j, const std::string& where) {
  if (j.contains("axis")) {
    only_keys(j, {"axis", "angle"}, where);
    try {
      return axis_rotation(parse_axis(need_string(j, "axis", where)), need_number(j, "angle", where));
    } catch (const ValidationError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (j.contains("euler")) {
    only_keys(j, {"euler"}, where);
    const Json& a = j["euler"];
    if (!a.is_array() || a.size() != 3) throw ParseError(where + ": 'euler' needs three angles");
    return RotationParameters::from_angles(a[0].get<double>(), a[1].get<double>(), a[2].get<double>()).r;
  }
  if (j.contains("matrix")) {
    only_keys(j, {"matrix"}, where);
    const Json& m = j["matrix"];
    if (!m.is_array() || m.size() != 3) throw ParseError(where + ": 'matrix' must be 3x3");
    Eigen::Matrix3d r;
    for (int i = 0; i < 3; ++i) {
      if (!m[i].is_array() || m[i].size() != 3) throw ParseError(where + ": 'matrix' must be 3x3");
      for (int k = 0; k < 3; ++k) r(i, k) = m[i][k].get<double>();
    }
    return r;
  }
  throw ParseError(where + ": rotation needs 'axis', 'euler' or 'matrix'");
}

QubitPreset preset_from_json(const Json& j) {
  const std::string where = "qubit " + j.dump();
  QubitPreset p;
  p.id = need_string(j, "id", where);
  const std::string kind = j.contains("preset") ? need_string(j, "preset", where) : "pauli";
  if (kind == "pauli") {
    only_keys(j, {"id", "preset", "rotation"}, where);
    p.kind = QubitPreset::Kind::pauli;
  } else if (kind == "tensor-slot") {
    only_keys(j, {"id", "preset", "slot", "of", "rotation"}, where);
    p.kind = QubitPreset::Kind::tensor_slot;
    p.slot = need(j, "slot", where).get<std::size_t>();
    p.of = need(j, "of", where).get<std::size_t>();
  } else if (kind == "copy-of") {
    only_keys(j, {"id", "preset", "source", "rotation"}, where);
    p.kind = QubitPreset::Kind::copy_of;
    p.source = need_string(j, "source", where);
  } else if (kind == "explicit") {
    only_keys(j, {"id", "preset", "x", "y", "z", "rotation"}, where);
    p.kind = QubitPreset::Kind::explicit_matrices;
    p.matrices = {matrix_from_json(need(j, "x", where)), matrix_from_json(need(j, "y", where)),
                  matrix_from_json(need(j, "z", where))};
  } else if (kind == "hilbert-creation") {
    only_keys(j, {"id", "preset", "role", "rotation"}, where);
    p.kind = QubitPreset::Kind::hilbert_creation_slot;
    p.role = need(j, "role", where).get<int>();
  } else {
    throw ParseError(where + ": unknown preset '" + kind + "'");
  }
  if (j.contains("rotation")) p.rotation = rotation_from_json(j["rotation"], where);
  return p;
}

std::vector<std::string> string_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of qubit ids");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ParseError(where + ": expected an array of qubit ids");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

Json matrix_to_json(const QNumber& q) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < q.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < q.dim(); ++k) row.push_back(complex_to_json(q(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

QNumber matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array");
  // Either rows of pairs, or one flat row-major list of n*n pairs.
  const auto root = static_cast<Eigen::Index>(std::llround(std::sqrt(double(j.size()))));
  const bool square_count = root * root == static_cast<Eigen::Index>(j.size()) && root > 1;
  const bool flat = !j[0].is_array() || (square_count && j[0].size() == 2 && j[0][0].is_number());
  Eigen::Index n = 0;
  if (flat) {
    if (!square_count) throw ParseError("flat matrix length is not a square");
    n = root;
  } else {
    n = static_cast<Eigen::Index>(j.size());
  }
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!flat && (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != n)) {
      throw ParseError("matrix is not square");
    }
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = complex_from_json(flat ? j[i * n + k] : j[i][k]);
  }
  return QNumber(std::move(m));
}

Json expr_to_json(const HamiltonianExpr& e) {
  using Op = HamiltonianExpr::Op;
  const auto& ch = e.children();
  switch (e.op()) {
    case Op::ref:
      return e.qubit() + "." + std::string(axis_name(e.axis()));
    case Op::identity:
      return 1.0;
    case Op::scale:
      if (ch.front().op() == Op::identity) return e.coeff();
      return Json::array({"scale", e.coeff(), expr_to_json(ch.front())});
    case Op::sum: {
      Json j = Json::array({"sum"});
      for (const auto& c : ch) j.push_back(expr_to_json(c));
      return j;
    }
    case Op::product:
      return Json::array({"mul", expr_to_json(ch[0]), expr_to_json(ch[1])});
    case Op::anticommutator:
      return Json::array({"anti", expr_to_json(ch[0]), expr_to_json(ch[1])});
    case Op::i_commutator:
      return Json::array({"icomm", expr_to_json(ch[0]), expr_to_json(ch[1])});
  }
  return nullptr;
}

HamiltonianExpr expr_from_json(const Json& j) {
  if (j.is_number()) return H::constant(j.get<double>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const auto dot = s.rfind('.');
    if (dot == std::string::npos || dot == 0) throw ParseError("descriptor reference must look like 'id.axis': " + s);
    try {
      return H::ref(s.substr(0, dot), parse_axis(s.substr(dot + 1)));
    } catch (const ValidationError& e) {
      throw ParseError(e.what());
    }
  }
  if (!j.is_array() || j.empty() || !j[0].is_string()) throw ParseError("malformed Hamiltonian expression: " + j.dump());
  const auto op = j[0].get<std::string>();
  if (op == "sum") {
    std::vector<HamiltonianExpr> terms;
    for (std::size_t k = 1; k < j.size(); ++k) terms.push_back(expr_from_json(j[k]));
    return H::sum(std::move(terms));
  }
  if (j.size() != 3) throw ParseError("'" + op + "' takes two operands: " + j.dump());
  if (op == "scale") {
    if (!j[1].is_number()) throw ParseError("'scale' needs a numeric coefficient: " + j.dump());
    return j[1].get<double>() * expr_from_json(j[2]);
  }
  auto l = expr_from_json(j[1]);
  auto r = expr_from_json(j[2]);
  if (op == "mul") return H::product(std::move(l), std::move(r));
  if (op == "anti") return H::anticommutator(std::move(l), std::move(r));
  if (op == "icomm") return H::i_commutator(std::move(l), std::move(r));
  if (op == "pbar") return H::pbar(std::move(l), std::move(r));
  throw ParseError("unknown Hamiltonian operator '" + op + "'");
}

Json gate_to_json(const GateSpec& g) {
  Json j;
  auto one = [&](Role r) { return g.with_role(r).at(0); };
  switch (g.kind) {
    case GateKind::not_gate:
    case GateKind::sqrt_not:
      j["gate"] = std::string(gate_kind_name(g.kind));
      j["target"] = one(Role::target);
      break;
    case GateKind::rot_x: {
      std::ostringstream os;
      os.precision(17);
      os << "rot_x(" << g.angle << ")";
      j["gate"] = os.str();
      j["target"] = one(Role::target);
      break;
    }
    case GateKind::wire:
      j["gate"] = "wire";
      j["target"] = g.participants.at(0).qubit;
      break;
    case GateKind::cnot:
      j["gate"] = "cnot";
      j["control"] = one(Role::control);
      j["target"] = one(Role::target);
      j["reference"] = one(Role::reference);
      break;
    case GateKind::ccnot:
      j["gate"] = "ccnot";
      j["controls"] = g.with_role(Role::control);
      j["target"] = one(Role::target);
      j["references"] = g.with_role(Role::reference);
      break;
    case GateKind::hamiltonian: {
      j["gate"] = "hamiltonian";
      if (!g.name.empty()) j["name"] = g.name;
      j["duration"] = g.duration;
      Json hs = Json::object();
      for (const auto& [id, h] : g.hamiltonians) hs[id] = expr_to_json(h);
      j["hamiltonians"] = std::move(hs);
      return j;
    }
  }
  const double default_duration = g.kind == GateKind::sqrt_not ? 0.5 : 1.0;
  if (g.duration != default_duration) j["duration"] = g.duration;
  return j;
}

GateSpec gate_from_json(const Json& j) {
  const std::string where = gate_where(j);
  std::string name = need_string(j, "gate", where);
  GateSpec g;
  if (name == "not") {
    only_keys(j, {"gate", "target", "duration"}, where);
    g = not_gate(need_string(j, "target", where));
  } else if (name == "sqrt_not") {
    only_keys(j, {"gate", "target", "duration"}, where);
    g = sqrt_not_gate(need_string(j, "target", where));
  } else if (name.starts_with("rot_x")) {
    only_keys(j, {"gate", "target", "angle", "duration"}, where);
    double angle = 0.0;
    if (name == "rot_x") {
      angle = need_number(j, "angle", where);
    } else if (name.size() > 7 && name[5] == '(' && name.back() == ')') {
      angle = parse_angle(std::string_view(name).substr(6, name.size() - 7), where);
    } else {
      throw ParseError(where + ": expected rot_x(angle)");
    }
    g = rot_x_gate(need_string(j, "target", where), angle);
  } else if (name == "wire") {
    only_keys(j, {"gate", "target", "duration"}, where);
    g = wire_gate(need_string(j, "target", where));
  } else if (name == "cnot") {
    only_keys(j, {"gate", "control", "target", "reference", "duration"}, where);
    g = cnot_gate(need_string(j, "control", where), need_string(j, "target", where),
                  need_string(j, "reference", where));
  } else if (name == "ccnot") {
    only_keys(j, {"gate", "controls", "target", "references", "duration"}, where);
    const auto cs = string_list(need(j, "controls", where), where);
    const auto rs = string_list(need(j, "references", where), where);
    if (cs.size() != 2 || rs.size() != 2) throw ParseError(where + ": ccnot needs two controls and two references");
    g = ccnot_gate(cs[0], cs[1], need_string(j, "target", where), rs[0], rs[1]);
  } else if (name == "hamiltonian") {
    only_keys(j, {"gate", "name", "hamiltonians", "duration"}, where);
    const Json& hs = need(j, "hamiltonians", where);
    if (!hs.is_object()) throw ParseError(where + ": 'hamiltonians' must map qubit ids to expressions");
    HamiltonianMap m;
    for (const auto& [id, e] : hs.items()) m.emplace(id, expr_from_json(e));
    const std::string label = j.contains("name") ? need_string(j, "name", where) : "hamiltonian";
    g = hamiltonian_gate(label, std::move(m), j.contains("duration") ? need_number(j, "duration", where) : 1.0);
  } else {
    throw ParseError(where + ": unknown gate '" + name + "'");
  }
  if (j.contains("duration")) g.duration = need_number(j, "duration", where);
  if (!(g.duration > 0.0)) throw ParseError(where + ": duration must be positive");
  return g;
}

NetworkSpec network_spec_from_json(const Json& j) {
  only_keys(j, {"qubits", "state", "schedule", "ctc", "description"}, "network spec");
  NetworkSpec spec;
  const Json& qs = need(j, "qubits", "network spec");
  if (!qs.is_array() || qs.empty()) throw ParseError("'qubits' must be a non-empty array");
  for (const auto& q : qs) spec.qubits.push_back(preset_from_json(q));

  if (j.contains("state")) {
    const Json& s = j["state"];
    only_keys(s, {"sharp_z", "amplitudes"}, "state");
    if (s.contains("sharp_z") == s.contains("amplitudes")) {
      throw ParseError("state: give exactly one of 'sharp_z' or 'amplitudes'");
    }
    if (s.contains("sharp_z")) {
      spec.state.kind = StateSpec::Kind::sharp_z;
      spec.state.sharp_z = string_list(s["sharp_z"], "state.sharp_z");
    } else {
      spec.state.kind = StateSpec::Kind::amplitudes;
      const Json& a = s["amplitudes"];
      if (!a.is_array() || a.empty()) throw ParseError("state.amplitudes must be a non-empty array");
      spec.state.amplitudes.resize(static_cast<Eigen::Index>(a.size()));
      for (std::size_t k = 0; k < a.size(); ++k)
        spec.state.amplitudes(static_cast<Eigen::Index>(k)) = complex_from_json(a[k]);
    }
  }

  if (j.contains("schedule")) {
    const Json& sch = j["schedule"];
    if (!sch.is_array()) throw ParseError("'schedule' must be an array of slots");
    for (const auto& s : sch) {
      only_keys(s, {"time", "gates"}, "schedule slot");
      ScheduleSlot slot;
      const Json& t = need(s, "time", "schedule slot");
      if (!t.is_number_integer()) throw ParseError("schedule slot time must be an integer");
      slot.time = t.get<int>();
      const Json& gs = need(s, "gates", "schedule slot");
      if (!gs.is_array()) throw ParseError("schedule slot 'gates' must be an array");
      for (const auto& g : gs) slot.gates.push_back(gate_from_json(g));
      spec.schedule.push_back(std::move(slot));
    }
  }

  if (j.contains("ctc")) {
    const Json& c = j["ctc"];
    only_keys(c, {"pairs", "T"}, "ctc");
    CtcSpec ctc;
    ctc.T = need_number(c, "T", "ctc");
    const Json& ps = need(c, "pairs", "ctc");
    if (!ps.is_array()) throw ParseError("ctc.pairs must be an array");
    for (const auto& p : ps) {
      only_keys(p, {"young", "old"}, "ctc pair");
      ctc.pairs.push_back({need_string(p, "young", "ctc pair"), need_string(p, "old", "ctc pair")});
    }
    spec.ctc = std::move(ctc);
  }
  return spec;
}

NetworkSpec parse_network_spec(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return network_spec_from_json(j);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed network spec: ") + e.what());
  }
}

NetworkSpec load_network_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_network_spec(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Json network_to_json(const NetworkState& net) {
  Json j;
  Json qs = Json::array();
  for (const auto& id : net.order) {
    const DescriptorTriple& t = net.qubit(id);
    qs.push_back({{"id", id},
                  {"preset", "explicit"},
                  {"x", matrix_to_json(t.x)},
                  {"y", matrix_to_json(t.y)},
                  {"z", matrix_to_json(t.z)}});
  }
  j["qubits"] = std::move(qs);
  Json amps = Json::array();
  for (Eigen::Index k = 0; k < net.state.amplitudes().size(); ++k)
    amps.push_back(complex_to_json(net.state.amplitudes()(k)));
  j["state"] = {{"amplitudes", std::move(amps)}};
  Json sch = Json::array();
  for (const auto& s : net.schedule) {
    Json gs = Json::array();
    for (const auto& g : s.gates) gs.push_back(gate_to_json(g));
    sch.push_back({{"time", s.time}, {"gates", std::move(gs)}});
  }
  j["schedule"] = std::move(sch);
  if (net.ctc) {
    Json ps = Json::array();
    for (const auto& p : net.ctc->pairs) ps.push_back({{"young", p.young}, {"old", p.old}});
    j["ctc"] = {{"pairs", std::move(ps)}, {"T", net.ctc->T}};
  }
  return j;
}

Json report_to_json(const NetworkReport& rep) {
  Json j;
  j["time"] = rep.time;
  Json qs = Json::array();
  for (const auto& q : rep.qubits) {
    qs.push_back({{"id", q.id},
                  {"expectation", {{"x", q.expectation[0]}, {"y", q.expectation[1]}, {"z", q.expectation[2]}}},
                  {"sharp", {{"x", q.sharp[0]}, {"y", q.sharp[1]}, {"z", q.sharp[2]}}},
                  {"attribute", std::string(attribute_name(q.attribute))},
                  {"pauli_residual", q.pauli_residual}});
  }
  j["qubits"] = std::move(qs);
  Json ps = Json::array();
  for (const auto& p : rep.pairs) ps.push_back({{"a", p.a}, {"b", p.b}, {"class", std::string(pair_class_name(p.cls))}});
  j["pairs"] = std::move(ps);
  j["algebra"] = {{"dimension", rep.algebra_dim},
                  {"hermitian_real_dimension", rep.hermitian_dim},
                  {"carrier_dimension", rep.hilbert.carrier_dim},
                  {"full", rep.hilbert.full},
                  {"factor", rep.hilbert.factor},
                  {"hilbert_dimension", rep.hilbert.hilbert_dim ? Json(*rep.hilbert.hilbert_dim) : Json(nullptr)}};
  return j;
}

}  // namespace uqsim
