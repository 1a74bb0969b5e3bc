#include "uqsim/network.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include "uqsim/error.hpp"

namespace uqsim {
namespace {

constexpr double kTimeEps = 1e-12;

std::string slot_label(const ScheduleSlot& s) { return "slot at t=" + std::to_string(s.time); }

std::string gate_label(const GateSpec& g) {
  std::string s = g.name.empty() ? std::string(gate_kind_name(g.kind)) : g.name;
  s += "(";
  bool first = true;
  for (const auto& p : g.participants) {
    if (!first) s += ",";
    s += p.qubit;
    first = false;
  }
  return s + ")";
}

double slot_end(const ScheduleSlot& s) {
  double end = s.time;
  for (const auto& g : s.gates) end = std::max(end, s.time + g.duration);
  return end;
}

template <class E>
[[noreturn]] void rethrow_with(const std::string& where, const E& e) {
  throw E(where + ": " + e.what());
}

}  // namespace

const DescriptorTriple& NetworkState::qubit(std::string_view id) const {
  auto it = qubits.find(id);
  if (it == qubits.end()) throw ValidationError("unknown qubit '" + std::string(id) + "'");
  return it->second;
}

double schedule_end(const NetworkState& net) {
  double end = 0.0;
  for (const auto& s : net.schedule) end = std::max(end, slot_end(s));
  return end;
}

DescriptorTriple tensor_slot_triple(std::size_t slot, std::size_t n, std::string label) {
  if (n == 0 || slot >= n) throw ValidationError("tensor slot " + std::to_string(slot) + " out of range for " +
                                                 std::to_string(n) + " factors");
  DescriptorTriple t;
  t.label = std::move(label);
  for (Axis ax : kAxes) {
    QNumber acc = slot == 0 ? QNumber::pauli(ax) : QNumber::identity(2);
    for (std::size_t k = 1; k < n; ++k) acc = kron(acc, k == slot ? QNumber::pauli(ax) : QNumber::identity(2));
    t[ax] = std::move(acc);
  }
  return t;
}

DescriptorTriple hilbert_creation_triple(int role, std::string label) {
  const QNumber one = QNumber::identity(2);
  const QNumber sx = QNumber::pauli(Axis::x), sy = QNumber::pauli(Axis::y), sz = QNumber::pauli(Axis::z);
  switch (role) {
    case 1:
    case 2:
      return {kron(sx, one), kron(sy, one), kron(sz, one), std::move(label)};
    case 3:
      return {kron(sx, one), kron(sy, sz), kron(sz, sz), std::move(label)};
    case 4:
      return {kron(sx, sx), kron(sy, sx), kron(sz, one), std::move(label)};
    default:
      throw ValidationError("hilbert-creation role must be 1..4, got " + std::to_string(role));
  }
}

DescriptorTriple make_preset(const QubitPreset& p, const TripleMap& earlier) {
  DescriptorTriple t;
  switch (p.kind) {
    case QubitPreset::Kind::pauli:
      t = pauli_triple();
      break;
    case QubitPreset::Kind::tensor_slot:
      t = tensor_slot_triple(p.slot, p.of);
      break;
    case QubitPreset::Kind::copy_of: {
      auto it = earlier.find(p.source);
      if (it == earlier.end()) {
        throw ValidationError("qubit '" + p.id + "' copies '" + p.source + "', which is not declared before it");
      }
      t = it->second;
      break;
    }
    case QubitPreset::Kind::explicit_matrices:
      t = {p.matrices[0], p.matrices[1], p.matrices[2], {}};
      break;
    case QubitPreset::Kind::hilbert_creation_slot:
      t = hilbert_creation_triple(p.role);
      break;
  }
  t.label = p.id;
  if (p.rotation) {
    const Eigen::Matrix3d& r = *p.rotation;
    if ((r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > tol::exact ||
        std::abs(r.determinant() - 1.0) > tol::exact) {
      throw ValidationError("qubit '" + p.id + "': rotation is not a proper rotation matrix");
    }
    t = apply_rotation(r, t);
  }
  return t;
}

void check_schedule_shape(const NetworkState& net) {
  double prev_end = -std::numeric_limits<double>::infinity();
  int prev_time = std::numeric_limits<int>::min();
  bool first = true;
  for (const auto& slot : net.schedule) {
    if (!first && slot.time <= prev_time) throw ValidationError("schedule slots must be strictly increasing");
    if (slot.time + kTimeEps < prev_end) {
      throw ValidationError(slot_label(slot) + " starts before the previous slot's gates finish");
    }
    std::set<std::string> used;
    for (const auto& g : slot.gates) {
      if (!(g.duration > 0.0)) throw ValidationError(slot_label(slot) + ": gate duration must be positive");
      for (const auto& id : g.qubit_ids()) {
        if (!net.qubits.contains(id)) {
          throw ValidationError(slot_label(slot) + ": " + gate_label(g) + " uses unknown qubit '" + id + "'");
        }
        if (!used.insert(id).second) {
          throw ValidationError(slot_label(slot) + ": qubit '" + id + "' participates in two simultaneous gates");
        }
      }
      for (const auto& [id, h] : g.hamiltonians) {
        if (!net.qubits.contains(id)) throw ValidationError(gate_label(g) + ": Hamiltonian for unknown qubit '" + id + "'");
        for (const auto& ref : h.qubits())
          if (!net.qubits.contains(ref))
            throw ValidationError(gate_label(g) + ": Hamiltonian references unknown qubit '" + ref + "'");
      }
    }
    prev_time = slot.time;
    prev_end = slot_end(slot);
    first = false;
  }
  if (net.ctc) {
    if (!(net.ctc->T > 0.0)) throw ValidationError("ctc: T must be positive");
    std::set<std::string> seen;
    for (const auto& p : net.ctc->pairs) {
      if (p.young == p.old) throw ValidationError("ctc: qubit '" + p.young + "' is identified with itself");
      for (const auto* id : {&p.young, &p.old}) {
        if (!net.qubits.contains(*id)) throw ValidationError("ctc: unknown qubit '" + *id + "'");
        if (!seen.insert(*id).second) throw ValidationError("ctc: qubit '" + *id + "' appears in two pairs");
      }
    }
  }
}

RunResult run_schedule(const NetworkState& net, const RunOptions& options) {
  const double start = net.time;
  const double end = std::isfinite(options.t1) ? options.t1 : std::max(start, schedule_end(net));
  if (end < start) throw ValidationError("run: end time precedes the network time");

  std::set<double> marks{start, end};
  for (double t = std::ceil(start); t < end; t += 1.0) marks.insert(t);
  for (const auto& s : net.schedule)
    for (const auto& g : s.gates) {
      marks.insert(s.time);
      marks.insert(s.time + g.duration);
    }
  if (options.sample_dt > 0.0) {
    for (long k = 1;; ++k) {
      const double t = start + static_cast<double>(k) * options.sample_dt;
      if (t >= end - kTimeEps) break;
      marks.insert(t);
    }
  }
  std::vector<double> times;
  for (double t : marks)
    if (t >= start - kTimeEps && t <= end + kTimeEps && (times.empty() || t - times.back() > kTimeEps))
      times.push_back(t);

  RunResult out;
  out.final = net;
  out.snapshots.push_back({start, net.qubits});
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const double a = times[k], b = times[k + 1];
    HamiltonianMap merged;
    std::string where;
    for (const auto& s : net.schedule)
      for (const auto& g : s.gates) {
        if (s.time <= a + kTimeEps && s.time + g.duration >= b - kTimeEps) {
          for (const auto& [id, h] : g.hamiltonians) merged.emplace(id, h);
          where += (where.empty() ? "" : ", ") + gate_label(g) + " in " + slot_label(s);
        }
      }
    try {
      EvolveResult r = evolve(out.final.qubits, merged, a, b, options.evolve);
      out.closed_form = out.closed_form && r.closed_form;
      out.final.qubits = std::move(r.descriptors);
    } catch (const NumericalError& e) {
      rethrow_with(where, e);
    } catch (const ValidationError& e) {
      rethrow_with(where, e);
    }
    out.final.time = b;
    out.snapshots.push_back({b, out.final.qubits});
  }
  out.final.time = end;
  return out;
}

std::vector<std::string> validate_schedule(const NetworkState& net, const EvolveOptions& options) {
  std::vector<std::string> failures;
  NetworkState cur = net;
  cur.schedule.clear();
  for (const auto& slot : net.schedule) {
    if (cur.time < slot.time) cur.time = slot.time;
    for (const auto& g : slot.gates) {
      const ValidationReport rep = validate_gate(cur.qubits, cur.state, g, options);
      if (!rep.pass) failures.push_back(slot_label(slot) + ": " + gate_label(g) + ": " + rep.summary());
    }
    if (!failures.empty()) break;
    NetworkState one = cur;
    one.schedule = {slot};
    RunOptions ro;
    ro.evolve = options;
    try {
      cur.qubits = run_schedule(one, ro).final.qubits;
    } catch (const Error& e) {
      failures.push_back(e.what());
      break;
    }
    cur.time = slot_end(slot);
  }
  return failures;
}

NetworkState assemble_network(std::vector<DescriptorTriple> triples, HeisenbergState state,
                              std::vector<ScheduleSlot> schedule, std::optional<CtcSpec> ctc,
                              const BuildOptions& options) {
  if (triples.empty()) throw ValidationError("network has no qubits");
  NetworkState net;
  net.hilbert_dim = triples.front().dim();
  for (auto& t : triples) {
    if (t.label.empty()) throw ValidationError("every qubit needs an id");
    if (t.dim() != net.hilbert_dim) {
      throw DimensionError("qubit '" + t.label + "' has dimension " + std::to_string(t.dim()) + ", expected " +
                           std::to_string(net.hilbert_dim));
    }
    const PauliReport rep = validate_pauli_triple(t);
    if (!rep.pass) throw ValidationError("qubit '" + t.label + "' violates the Pauli algebra: " + rep.detail);
    net.order.push_back(t.label);
    const std::string id = t.label;
    if (!net.qubits.emplace(id, std::move(t)).second) throw ValidationError("duplicate qubit id '" + id + "'");
  }
  if (state.dim() != net.hilbert_dim) {
    throw DimensionError("state has dimension " + std::to_string(state.dim()) + ", network has " +
                         std::to_string(net.hilbert_dim));
  }
  net.state = std::move(state);
  net.schedule = std::move(schedule);
  net.ctc = std::move(ctc);
  check_schedule_shape(net);
  if (options.dry_run) {
    const auto failures = validate_schedule(net, options.evolve);
    if (!failures.empty()) throw ValidationError(failures.front());
  }
  return net;
}

NetworkState build_network(const NetworkSpec& spec, const BuildOptions& options) {
  TripleMap made;
  std::vector<DescriptorTriple> triples;
  for (const auto& p : spec.qubits) {
    if (p.id.empty()) throw ValidationError("every qubit needs an id");
    DescriptorTriple t = make_preset(p, made);
    made.emplace(p.id, t);
    triples.push_back(std::move(t));
  }
  if (triples.empty()) throw ValidationError("network has no qubits");
  HeisenbergState state;
  switch (spec.state.kind) {
    case StateSpec::Kind::amplitudes:
      state = HeisenbergState(spec.state.amplitudes);
      break;
    case StateSpec::Kind::all_z:
    case StateSpec::Kind::sharp_z: {
      std::vector<QNumber> zs;
      if (spec.state.kind == StateSpec::Kind::all_z) {
        for (const auto& t : triples) zs.push_back(t.z);
      } else {
        for (const auto& id : spec.state.sharp_z) {
          auto it = made.find(id);
          if (it == made.end()) throw ValidationError("state: unknown qubit '" + id + "'");
          zs.push_back(it->second.z);
        }
      }
      const std::size_t dim = triples.front().dim();
      for (const auto& z : zs)
        if (z.dim() != dim) throw DimensionError("state: z-observables have different dimensions");
      state = common_plus_one_state(zs);
      break;
    }
  }
  return assemble_network(std::move(triples), std::move(state), spec.schedule, spec.ctc, options);
}

NetworkState with_qubit(NetworkState net, const std::string& id, DescriptorTriple triple) {
  auto it = net.qubits.find(id);
  if (it == net.qubits.end()) throw ValidationError("unknown qubit '" + id + "'");
  if (triple.dim() != net.hilbert_dim) throw DimensionError("replacement triple for '" + id + "' has the wrong dimension");
  triple.label = id;
  it->second = std::move(triple);
  return net;
}

NetworkReport report(const NetworkState& net, const ReportOptions& options) {
  NetworkReport rep;
  rep.time = net.time;
  std::vector<QNumber> gens;
  for (const auto& id : net.order) {
    const DescriptorTriple& t = net.qubit(id);
    QubitReport q;
    q.id = id;
    for (int k = 0; k < 3; ++k) {
      q.expectation[k] = expectation(t[k], net.state, options.tolerance);
      q.sharp[k] = is_sharp(t[k], net.state, options.tolerance);
    }
    q.attribute = attribute_of(t, net.state, options.tolerance);
    q.pauli_residual = validate_pauli_triple(t, options.tolerance).worst_residual;
    rep.qubits.push_back(q);
    gens.push_back(t.x);
    gens.push_back(t.y);
    gens.push_back(t.z);
  }
  for (std::size_t i = 0; i < net.order.size(); ++i)
    for (std::size_t j = i + 1; j < net.order.size(); ++j)
      rep.pairs.push_back({net.order[i], net.order[j],
                           classify_pair(net.qubit(net.order[i]), net.qubit(net.order[j]), options.tolerance)});
  const AlgebraSpan alg = generated_algebra(gens, options.rank_tol);
  rep.algebra_dim = alg.dimension();
  rep.hermitian_dim = hermitian_real_dimension(alg, options.rank_tol);
  rep.hilbert = hilbert_dimension(alg, options.rank_tol);
  return rep;
}

void write_csv(std::ostream& os, const std::vector<Snapshot>& snapshots, const NetworkState& net, double tolerance) {
  os << "time,qubit,axis,expectation,sharp\n";
  const auto old_flags = os.flags();
  const auto old_prec = os.precision();
  os << std::setprecision(12);
  for (const auto& snap : snapshots)
    for (const auto& id : net.order) {
      auto it = snap.qubits.find(id);
      if (it == snap.qubits.end()) continue;
      for (Axis ax : kAxes) {
        const QNumber& q = it->second[ax];
        os << snap.time << ',' << id << ',' << axis_name(ax) << ',' << expectation(q, net.state, tolerance) << ','
           << (is_sharp(q, net.state, tolerance) ? 1 : 0) << '\n';
      }
    }
  os.flags(old_flags);
  os.precision(old_prec);
}

}  // namespace uqsim
