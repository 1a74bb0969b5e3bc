#include "uqsim/scenarios.hpp"

#include <cmath>
#include <numbers>

#include "uqsim/error.hpp"
#include "uqsim/scenario_data.hpp"
#include "uqsim/spec_io.hpp"

namespace uqsim {
namespace {

constexpr double pi = std::numbers::pi;

DescriptorTriple with_axes(const QNumber& x, const QNumber& y, const QNumber& z) { return {x, y, z, {}}; }

HilbertDimension pair_hilbert(const DescriptorTriple& a, const DescriptorTriple& b, std::size_t* dim) {
  const std::vector<QNumber> gens{a.x, a.y, a.z, b.x, b.y, b.z};
  const AlgebraSpan alg = generated_algebra(gens);
  if (dim) *dim = alg.dimension();
  return hilbert_dimension(alg);
}

const CtcPair& single_pair(const NetworkState& net) {
  if (!net.ctc || net.ctc->pairs.size() != 1) throw ValidationError("expected exactly one ctc pair");
  return net.ctc->pairs.front();
}

}  // namespace

const std::vector<std::string_view>& scenario_names() {
  static const std::vector<std::string_view> names{"grandfather", "hilbert-creation", "hilbert-destruction",
                                                   "model-theory", "classical-grandfather"};
  return names;
}

std::string_view scenario_spec(std::string_view name) {
  if (name == "model-theory") return embedded::model_theory;
  if (name == "grandfather") return embedded::grandfather;
  if (name == "hilbert-creation") return embedded::hilbert_creation;
  throw ValidationError("no embedded spec for scenario '" + std::string(name) + "'");
}

NetworkSpec scenario_network_spec(std::string_view name) { return parse_network_spec(scenario_spec(name)); }

DescriptorTriple grandfather_candidate(const NetworkState& net, double phi) {
  return rotate_x(rotate_x(net.qubit(single_pair(net).young), phi), pi);
}

double grandfather_phi_map(const NetworkState& net, double phi) {
  const CtcPair& pair = single_pair(net);
  if (net.schedule.empty() || net.schedule.front().gates.empty()) throw ValidationError("schedule is empty");
  const GateSpec& gate = net.schedule.front().gates.front();
  auto it = gate.hamiltonians.find(pair.young);
  if (it == gate.hamiltonians.end()) throw ValidationError("first gate does not act on the young qubit");
  TripleMap qs = net.qubits;
  qs[pair.old] = grandfather_candidate(net, phi);
  const QNumber h = it->second.eval(qs, net.hilbert_dim);
  const double coeff = trace_product(h, qs.at(pair.young).x).real() / double(net.hilbert_dim);
  return 2.0 * gate.duration * coeff;
}

ScenarioResult run_model_theory_scenario(const ScenarioOptions& opt) {
  ScenarioResult res;
  res.name = "model-theory";
  const NetworkState net = build_network(scenario_network_spec("model-theory"));
  RunOptions run;
  run.evolve.path = EvolvePath::ode;
  run.evolve.step = opt.step;
  run.sample_dt = 0.01;
  const RunResult rr = run_schedule(net, run);
  const DescriptorTriple q1_0 = net.qubit("q1");
  const DescriptorTriple q2_0 = net.qubit("q2");
  double err = 0.0, q2_err = 0.0, exp_err = 0.0;
  for (const auto& snap : rr.snapshots) {
    const double alpha = model_alpha(snap.time);
    const DescriptorTriple& q1 = snap.qubits.at("q1");
    const DescriptorTriple& q2 = snap.qubits.at("q2");
    err = std::max(err, triple_distance(q1, rotate_x(q1_0, alpha)));
    q2_err = std::max(q2_err, triple_max_abs_diff(q2, q2_0));
    const double want1[3] = {0.0, std::sin(alpha), std::cos(alpha)};
    const double want2[3] = {0.0, 0.0, 1.0};
    for (int k = 0; k < 3; ++k) {
      exp_err = std::max(exp_err, std::abs(expectation(q1[k], net.state, tol::evolved) - want1[k]));
      exp_err = std::max(exp_err, std::abs(expectation(q2[k], net.state, tol::evolved) - want2[k]));
    }
  }
  res.final_descriptors = rr.final.qubits;
  res.initial_descriptors = net.qubits;
  res.parameters["max_trace_norm_error"] = err;
  res.parameters["alpha(3)"] = model_alpha(3.0);
  res.parameters["snapshots"] = static_cast<double>(rr.snapshots.size());
  res.check_within("q1(t) matches the x-rotation by alpha(t)", err, opt.tol);
  res.check_within("q2(t) stays fixed", q2_err, opt.tol);
  res.check_within("<q1> = (0, sin a, cos a), <q2> = (0, 0, 1)", exp_err, opt.tol);
  res.check_within("q1(3) satisfies the Pauli algebra",
                   validate_pauli_triple(rr.final.qubit("q1"), tol::evolved).worst_residual, tol::evolved);

  EvolveOptions eo;
  eo.step = opt.step;
  eo.record = true;
  const EvolveResult traj = evolve(net.qubits, net.schedule.front().gates.front().hamiltonians, 0.0, 1.5, eo);
  const double t = 1.0;
  const QNumber g = generator_from_trajectory(traj.trajectories.at("q1"), t);
  const QNumber want = std::cos(model_alpha(t)) * q1_0.x;
  res.check_within("generator at t = 1 equals cos(alpha) q1x", max_abs_diff(g, want), 1e-4);

  res.residual = err;
  res.solved = true;
  return res;
}

ScenarioResult run_grandfather_scenario(const ScenarioOptions& opt) {
  ScenarioResult res;
  res.name = "grandfather";
  const NetworkState net = build_network(scenario_network_spec("grandfather"));
  const CtcPair pair = single_pair(net);
  const std::string& ref = "q3";

  const double phi = scalar_self_consistency([&](double p) { return grandfather_phi_map(net, p); }, 0.0, pi, 1e-12);
  res.parameters["phi"] = phi;
  double map_dev = 0.0;
  for (double p : {0.0, 0.4, 1.1, 2.0, 3.0})
    map_dev = std::max(map_dev, std::abs(grandfather_phi_map(net, p) - (pi / 2) * (1.0 + std::cos(p))));
  res.check_within("phi map equals (pi/2)(1 + cos phi)", map_dev, 1e-12);
  res.check_within("phi = pi/2", std::abs(phi - pi / 2), 1e-9);

  const NetworkState solved = with_qubit(net, pair.old, grandfather_candidate(net, phi));
  RunOptions run;
  run.evolve.step = opt.step;
  const RunResult rr = run_schedule(solved, run);
  auto at = [&](double t) -> const TripleMap& {
    for (const auto& s : rr.snapshots)
      if (std::abs(s.time - t) < 1e-12) return s.qubits;
    throw Error("missing snapshot");
  };
  const QNumber sx = QNumber::pauli(Axis::x), sy = QNumber::pauli(Axis::y), sz = QNumber::pauli(Axis::z);
  const DescriptorTriple sigma = with_axes(sx, sy, sz);
  const DescriptorTriple q2_expected = with_axes(sx, -sz, sy);
  const DescriptorTriple q1_mid = with_axes(sx, sz, -sy);
  double table = 0.0;
  table = std::max(table, triple_max_abs_diff(at(0).at("q1"), sigma));
  table = std::max(table, triple_max_abs_diff(at(1).at("q1"), q1_mid));
  table = std::max(table, triple_max_abs_diff(at(2).at("q1"), q2_expected));
  for (double t : {0.0, 1.0, 2.0}) table = std::max(table, triple_max_abs_diff(at(t).at("q2"), q2_expected));
  res.check_within("descriptor table at t = 0, 1, 2", table, opt.tol);
  double q3_dev = 0.0;
  for (const auto& s : rr.snapshots) q3_dev = std::max(q3_dev, triple_max_abs_diff(s.qubits.at(ref), sigma));
  res.check_within("reference q3 unchanged throughout", q3_dev, opt.tol);

  const QNumber& q2z = solved.qubit(pair.old).z;
  res.check_within("<q2z(0)> = 0", std::abs(expectation(q2z, solved.state)), opt.tol);
  res.check("q2z(0) is not sharp", !is_sharp(q2z, solved.state, opt.tol));
  res.check("q2 has no attribute", !attribute_of(solved.qubit(pair.old), solved.state, opt.tol).has_value());

  const double residual = consistency_residual(solved, run);
  res.check_within("consistency residual at the solution", residual, opt.tol);
  const double wrong = consistency_residual(with_qubit(net, pair.old, grandfather_candidate(net, 0.0)), run);
  res.check("consistency residual for phi = 0 exceeds 0.5", wrong > 0.5, wrong);
  res.parameters["residual_at_phi_0"] = wrong;

  FixedPointOptions fp;
  fp.tol = opt.tol;
  fp.run = run;
  const ScenarioResult iter = fixed_point_solve(net, fp);
  res.parameters["fixed_point_iterations"] = iter.iterations;
  res.check("fixed-point iteration from (sx, sy, sz) converges", iter.solved, iter.residual, opt.tol, iter.message);
  if (iter.solved) {
    res.check_within("fixed-point solution equals (sx, -sz, sy)",
                     triple_max_abs_diff(iter.initial_descriptors.at(pair.old), q2_expected), 10 * opt.tol);
  }

  res.residual = residual;
  res.iterations = iter.iterations;
  res.solved = residual <= opt.tol;
  res.initial_descriptors = solved.qubits;
  res.final_descriptors = rr.final.qubits;
  return res;
}

ScenarioResult run_hilbert_creation_scenario(Direction direction, double tol) {
  ScenarioResult res;
  NetworkSpec spec = scenario_network_spec("hilbert-creation");
  const DescriptorTriple young = hilbert_creation_triple(1);
  const DescriptorTriple old3 = hilbert_creation_triple(3);
  const DescriptorTriple old4 = hilbert_creation_triple(4);
  if (direction == Direction::reverse) {
    res.name = "hilbert-destruction";
    spec.qubits[0].role = 3;
    spec.qubits[1].role = 4;
    for (auto& slot : spec.schedule)
      for (auto& g : slot.gates) {
        HamiltonianMap negated;
        for (const auto& [id, h] : g.hamiltonians) negated.emplace(id, -HamiltonianExpr(h));
        g = hamiltonian_gate(g.name, std::move(negated), g.duration);
      }
    spec.ctc.reset();
  } else {
    res.name = "hilbert-creation";
  }
  const NetworkState net = build_network(spec);
  RunOptions run;
  run.evolve.path = EvolvePath::closed_form;
  const RunResult rr = run_schedule(net, run);
  res.check("closed-form propagation", rr.closed_form);
  const TripleMap& out = rr.final.qubits;

  std::size_t before_dim = 0, after_dim = 0;
  const HilbertDimension before = pair_hilbert(net.qubit("q1"), net.qubit("q2"), &before_dim);
  res.parameters["young_pair_algebra_dim_t0"] = static_cast<double>(before_dim);

  if (direction == Direction::forward) {
    double dev = 0.0;
    dev = std::max(dev, triple_max_abs_diff(out.at("q1"), old3));
    dev = std::max(dev, triple_max_abs_diff(out.at("q2"), old4));
    dev = std::max(dev, triple_max_abs_diff(out.at("q3"), old3));
    dev = std::max(dev, triple_max_abs_diff(out.at("q4"), old4));
    res.check_within("outputs at t = 1 match the expected representation", dev, tol);
    res.residual = consistency_residual(net, run);
    res.check_within("consistency residual", res.residual, tol);
    const HilbertDimension after = pair_hilbert(out.at("q3"), out.at("q4"), &after_dim);
    res.parameters["old_pair_algebra_dim_t1"] = static_cast<double>(after_dim);
    res.check("young pair q1(0), q2(0) has Hilbert dimension 2", before.hilbert_dim == 2u,
              static_cast<double>(before.hilbert_dim.value_or(0)));
    res.check("old pair q3(1), q4(1) spans 16 basis elements", after_dim == 16, static_cast<double>(after_dim));
    res.check("old pair q3(1), q4(1) has Hilbert dimension 4", after.hilbert_dim == 4u,
              static_cast<double>(after.hilbert_dim.value_or(0)));
    res.solved = res.residual <= tol;
  } else {
    double dev = 0.0;
    dev = std::max(dev, triple_max_abs_diff(out.at("q1"), young));
    dev = std::max(dev, triple_max_abs_diff(out.at("q2"), young));
    res.check_within("q1(1), q2(1) return to the young representation", dev, tol);
    const HilbertDimension after = pair_hilbert(out.at("q1"), out.at("q2"), &after_dim);
    res.parameters["pair_algebra_dim_t1"] = static_cast<double>(after_dim);
    res.check("pair q1(0), q2(0) has Hilbert dimension 4", before.hilbert_dim == 4u,
              static_cast<double>(before.hilbert_dim.value_or(0)));
    res.check("pair q1(1), q2(1) has Hilbert dimension 2", after.hilbert_dim == 2u,
              static_cast<double>(after.hilbert_dim.value_or(0)));
    res.residual = dev;
    res.solved = dev <= tol;
  }
  res.initial_descriptors = net.qubits;
  res.final_descriptors = out;
  return res;
}

ClassicalCtcProblem classical_grandfather_problem() {
  ClassicalCtcProblem p;
  p.n_bits = 2;
  p.gate_map = [](const std::vector<int>& x) { return std::vector<int>{-x[0] * x[1], x[1]}; };
  p.identifications = {{0, 1}};
  return p;
}

ScenarioResult run_classical_grandfather_scenario() {
  ScenarioResult res;
  res.name = "classical-grandfather";
  const auto all = classical_ctc_enumerate(classical_grandfather_problem());
  int plus = 0, minus = 0;
  for (const auto& a : all) (a[0] == 1 ? plus : minus)++;
  res.parameters["consistent_with_x1=+1"] = plus;
  res.parameters["consistent_with_x1=-1"] = minus;
  res.check("no consistent x2 when x1 = +1", plus == 0, plus);
  res.check("both values of x2 consistent when x1 = -1", minus == 2, minus);
  res.solved = true;
  res.residual = 0.0;
  return res;
}

ScenarioResult run_scenario(std::string_view name, const ScenarioOptions& options) {
  if (name == "grandfather") return run_grandfather_scenario(options);
  if (name == "hilbert-creation") return run_hilbert_creation_scenario(Direction::forward);
  if (name == "hilbert-destruction") return run_hilbert_creation_scenario(Direction::reverse);
  if (name == "model-theory") return run_model_theory_scenario(options);
  if (name == "classical-grandfather") return run_classical_grandfather_scenario();
  throw ValidationError("unknown scenario '" + std::string(name) + "'");
}

}  // namespace uqsim
