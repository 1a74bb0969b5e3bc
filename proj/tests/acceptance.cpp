// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"
#include "uqsim/algebra.hpp"
#include "uqsim/ctc.hpp"
#include "uqsim/dynamics.hpp"
#include "uqsim/error.hpp"
#include "uqsim/gates.hpp"
#include "uqsim/scenarios.hpp"

using namespace testing;
using namespace uqsim;
using H = HamiltonianExpr;

namespace {

namespace limit {
constexpr double model_error = 1e-6;
constexpr double model_seconds = 5.0;
constexpr double ode = 1e-6;
constexpr double closed = 1e-12;
constexpr double pbar_exact = 1e-12;
constexpr double pbar_scalar = 1e-9;
constexpr double gate_expectation = 1e-6;
constexpr double phi = 1e-9;
constexpr double table = 1e-6;
constexpr double creation = 1e-9;
constexpr double rotation_round_trip = 1e-9;
constexpr double convergence_ratio = 8.0;
}  // namespace limit

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

HeisenbergState up_state(std::size_t n) {
  std::vector<QNumber> zs;
  for (std::size_t k = 0; k < n; ++k) zs.push_back(tensor_slot_triple(k, n).z);
  return common_plus_one_state(zs);
}

DescriptorTriple flip_if(DescriptorTriple t, int bit) { return bit < 0 ? rotate_x(t, pi) : t; }

TripleMap model_initial() {
  TripleMap m;
  m["q1"] = sigma("q1");
  m["q2"] = sigma("q2");
  return m;
}

HamiltonianMap model_hamiltonians() {
  HamiltonianMap hs;
  hs["q1"] = 0.25 * H::anticommutator(H::anticommutator(H::ref("q1", Axis::z), H::ref("q2", Axis::z)),
                                      H::ref("q1", Axis::x));
  return hs;
}

// Max componentwise trace-norm error against the closed-form rotation.
double model_error(double step) {
  const auto r = evolve(model_initial(), model_hamiltonians(), 0.0, 3.0, {.step = step});
  const double a = 2.0 * std::atan(std::tanh(3.0));
  return triple_distance(r.descriptors.at("q1"),
                         triple(sx(), std::cos(a) * sy() + std::sin(a) * sz(), std::cos(a) * sz() - std::sin(a) * sy()));
}

Outcome model_theory() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto init = model_initial();
  double err = 0.0, eerr = 0.0;
  const auto s = up_state(1);
  double prev = 0.0;
  TripleMap cur = init;
  for (int k = 1; k <= 30; ++k) {
    const double t = 0.1 * k;
    cur = evolve(cur, model_hamiltonians(), prev, t, {.step = 1e-3}).descriptors;
    prev = t;
    const double a = 2.0 * std::atan(std::tanh(t));
    const auto want = triple(sx(), std::cos(a) * sy() + std::sin(a) * sz(), std::cos(a) * sz() - std::sin(a) * sy());
    err = std::max(err, triple_distance(cur.at("q1"), want));
    const double e1[3] = {0.0, std::sin(a), std::cos(a)}, e2[3] = {0.0, 0.0, 1.0};
    for (int i = 0; i < 3; ++i) {
      eerr = std::max(eerr, std::abs(expectation(cur.at("q1")[i], s) - e1[i]));
      eerr = std::max(eerr, std::abs(expectation(cur.at("q2")[i], s) - e2[i]));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(err <= limit::model_error, "trace-norm error over [0, 3] " + fmt(err));
  o.require(eerr <= limit::model_error, "expectation error " + fmt(eerr));
  o.require(secs < limit::model_seconds, "runtime " + fmt(secs) + " s");
  return o;
}

Outcome not_gate_check() {
  Outcome o;
  TripleMap m;
  m["a"] = sigma("a");
  const auto ode = apply_gate(m, not_gate("a"), {.path = EvolvePath::ode}).descriptors.at("a");
  const auto cf = apply_gate(m, not_gate("a"), {.path = EvolvePath::closed_form}).descriptors.at("a");
  const double e_ode = triple_diff(ode, sx(), -sy(), -sz()), e_cf = triple_diff(cf, sx(), -sy(), -sz());
  o.require(e_ode <= limit::ode, "ODE path " + fmt(e_ode));
  o.require(e_cf <= limit::closed, "closed form " + fmt(e_cf));
  const auto half = apply_gate(m, sqrt_not_gate("a"), {.path = EvolvePath::ode}).descriptors;
  const auto twice = apply_gate(half, sqrt_not_gate("a"), {.path = EvolvePath::ode}).descriptors.at("a");
  const double e2 = triple_max_abs_diff(twice, ode);
  o.require(e2 <= limit::ode, "sqrt_not twice vs not " + fmt(e2));
  return o;
}

Outcome pbar_check() {
  Outcome o;
  Rng rng(3);
  double aligned = 0.0, anti = 0.0, scalar = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto a = rotated(rng.rotation(), sx(), sy(), sz());
    aligned = std::max(aligned, p_bar(a.z, a.z).max_abs());
    anti = std::max(anti, max_diff(p_bar(a.z, -a.z), id(2)));
    const auto b = rotated(rng.rotation(), sx(), sy(), sz());
    const Mat p = p_bar(a.z, b.z).matrix();
    scalar = std::max(scalar, max_diff(p, p(0, 0) * id(2)));
  }
  const Mat z1 = kron(sz(), id(2));
  aligned = std::max(aligned, p_bar(Q(z1), Q(z1)).max_abs());
  anti = std::max(anti, max_diff(p_bar(Q(z1), Q(-z1)), id(4)));
  o.require(aligned <= limit::pbar_exact, "aligned -> 0 " + fmt(aligned));
  o.require(anti <= limit::pbar_exact, "anti-aligned -> 1 " + fmt(anti));
  o.require(scalar <= limit::pbar_scalar, "maximally non-commuting -> scalar " + fmt(scalar));
  return o;
}

Outcome cnot_check() {
  Outcome o;
  double worst[2] = {0.0, 0.0};
  for (int config = 0; config < 2; ++config) {
    const auto s = up_state(config == 0 ? 2 : 1);
    for (int a : {1, -1})
      for (int b : {1, -1}) {
        TripleMap m;
        if (config == 0) {
          m["a"] = flip_if(tensor_slot_triple(0, 2, "a"), a);
          m["b"] = flip_if(tensor_slot_triple(1, 2, "b"), b);
          m["c"] = tensor_slot_triple(0, 2, "c");
        } else {
          m["a"] = flip_if(sigma("a"), a);
          m["b"] = flip_if(sigma("b"), b);
          m["c"] = sigma("c");
        }
        const auto out = apply_gate(m, cnot_gate("a", "b", "c")).descriptors;
        worst[config] = std::max({worst[config], std::abs(expectation(out.at("a").z, s) - a),
                                  std::abs(expectation(out.at("b").z, s) - a * b)});
      }
  }
  o.require(worst[0] <= limit::gate_expectation, "truth table, commuting control/target " + fmt(worst[0]));
  o.require(worst[1] <= limit::gate_expectation, "truth table, maximally non-commuting control/target " + fmt(worst[1]));

  Rng rng(4);
  const auto s = up_state(1);
  double imprint = 0.0, law = 0.0;
  for (int k = 0; k < 20; ++k) {
    TripleMap m;
    m["a"] = rotated(rng.rotation(), sx(), sy(), sz(), "a");
    m["b"] = sigma("b");
    m["c"] = sigma("c");
    const double n = expectation(m.at("a").z, s);
    const double bz = expectation(apply_gate(m, cnot_gate("a", "b", "c")).descriptors.at("b").z, s);
    imprint = std::max(imprint, std::abs(bz - n));
    law = std::max(law, std::abs(bz - std::cos(pi * (1.0 - n) / 2.0)));
  }
  o.require(imprint <= limit::gate_expectation,
            "imprint <q_bz(t+1)> = <q_az(t)> over 20 random controls, worst deviation " + fmt(imprint));
  o.notes.push_back("info <q_bz(t+1)> = cos(pi (1 - <q_az(t)>) / 2) holds to " + fmt(law));
  return o;
}

Outcome ccnot_check() {
  Outcome o;
  double worst = 0.0;
  for (bool commuting : {true, false}) {
    const auto s = up_state(commuting ? 3 : 1);
    for (int a : {1, -1})
      for (int b : {1, -1})
        for (int c : {1, -1}) {
          auto base = [&](std::size_t slot, const char* id) {
            return commuting ? tensor_slot_triple(slot, 3, id) : sigma(id);
          };
          TripleMap m;
          m["a"] = flip_if(base(0, "a"), a);
          m["b"] = flip_if(base(1, "b"), b);
          m["c"] = flip_if(base(2, "c"), c);
          m["d"] = base(0, "d");
          m["e"] = base(1, "e");
          const auto out = apply_gate(m, ccnot_gate("a", "b", "c", "d", "e")).descriptors;
          const int want = (a < 0 && b < 0) ? -c : c;
          worst = std::max({worst, std::abs(expectation(out.at("a").z, s) - a),
                            std::abs(expectation(out.at("b").z, s) - b),
                            std::abs(expectation(out.at("c").z, s) - want)});
        }
  }
  o.require(worst <= limit::gate_expectation, "8 combinations in both configurations " + fmt(worst));
  return o;
}

Outcome grandfather_check() {
  Outcome o;
  const NetworkState net = build_network(scenario_network_spec("grandfather"));
  const double phi = scalar_self_consistency([&](double p) { return grandfather_phi_map(net, p); }, 0.1, 3.0);
  o.require(std::abs(phi - pi / 2) <= limit::phi, "scalar solver phi - pi/2 = " + fmt(phi - pi / 2));

  const auto fp = fixed_point_solve(net);
  o.require(fp.solved, "fixed-point solver converged in " + std::to_string(fp.iterations) + " iterations");
  const NetworkState solved = with_qubit(net, "q2", fp.initial_descriptors.at("q2"));
  RunOptions ro;
  ro.sample_dt = 1.0;
  const auto run = run_schedule(solved, ro);
  double dev = 1e300;
  double q3dev = 0.0;
  if (run.snapshots.size() == 3) {
    const auto& s0 = run.snapshots[0].qubits;
    const auto& s1 = run.snapshots[1].qubits;
    const auto& s2 = run.snapshots[2].qubits;
    dev = std::max({triple_diff(s0.at("q1"), sx(), sy(), sz()), triple_diff(s0.at("q2"), sx(), -sz(), sy()),
                    triple_diff(s1.at("q1"), sx(), sz(), -sy()), triple_diff(s1.at("q2"), sx(), -sz(), sy()),
                    triple_diff(s2.at("q1"), sx(), -sz(), sy()), triple_diff(s2.at("q2"), sx(), -sz(), sy())});
    for (const auto& snap : run.snapshots) q3dev = std::max(q3dev, triple_diff(snap.qubits.at("q3"), sx(), sy(), sz()));
  }
  o.require(dev <= limit::table, "descriptor table at t = 0, 1, 2 " + fmt(dev));
  o.require(q3dev <= limit::table, "reference q3 invariant " + fmt(q3dev));
  const QNumber& q2z = solved.qubit("q2").z;
  const double ez = expectation(q2z, solved.state, tol::evolved);
  o.require(std::abs(ez) <= limit::table && !is_sharp(q2z, solved.state, tol::evolved),
            "<q2z(0)> = " + fmt(ez) + ", not sharp");

  const auto sols = classical_ctc_enumerate(classical_grandfather_problem());
  int plus = 0, minus = 0;
  for (const auto& v : sols) (v[0] > 0 ? plus : minus)++;
  o.require(plus == 0 && minus == 2,
            "classical assignments: " + std::to_string(plus) + " for x1 = 1, " + std::to_string(minus) + " for x1 = -1");
  return o;
}

Outcome creation_check() {
  Outcome o;
  const NetworkState net = build_network(scenario_network_spec("hilbert-creation"));
  RunOptions ro;
  ro.evolve.path = EvolvePath::closed_form;
  const auto run = run_schedule(net, ro);
  const Mat one = id(2);
  const auto& out = run.final.qubits;
  const double dev = std::max({triple_diff(out.at("q1"), kron(sx(), one), kron(sy(), sz()), kron(sz(), sz())),
                               triple_diff(out.at("q2"), kron(sx(), sx()), kron(sy(), sx()), kron(sz(), one)),
                               triple_diff(out.at("q3"), kron(sx(), one), kron(sy(), sz()), kron(sz(), sz())),
                               triple_diff(out.at("q4"), kron(sx(), sx()), kron(sy(), sx()), kron(sz(), one))});
  o.require(run.closed_form && dev <= limit::creation, "closed-form outputs " + fmt(dev));
  const double res = consistency_residual(net, ro);
  o.require(res <= limit::creation, "consistency residual " + fmt(res));

  auto pair_dim = [](const DescriptorTriple& a, const DescriptorTriple& b) {
    const std::vector<DescriptorTriple> ts{a, b};
    return hilbert_dimension(generated_algebra(all_components(ts)));
  };
  const auto young = pair_dim(net.qubit("q1"), net.qubit("q2"));
  const auto old = pair_dim(out.at("q3"), out.at("q4"));
  o.require(young.hilbert_dim == 2u, "young pair Hilbert dimension " + std::to_string(young.hilbert_dim.value_or(0)));
  o.require(old.algebra_dim == 16 && old.hilbert_dim == 4u,
            "old pair: " + std::to_string(old.algebra_dim) + " basis elements, Hilbert dimension " +
                std::to_string(old.hilbert_dim.value_or(0)));
  const auto rev = run_hilbert_creation_scenario(Direction::reverse);
  o.require(rev.passed(), "reverse protocol 4 -> 2");
  return o;
}

Outcome closure_check() {
  Outcome o;
  Rng rng(8);
  int bad = 0;
  for (int k = 0; k < 25; ++k) {
    const auto net = random_network(rng);
    const auto r = evolve(net.qubits, net.hamiltonians, 0.0, rng.uniform(0.2, 1.0), {.step = 1e-3});
    const auto before = network_algebra_dimension(net.qubits, tol::rank_evolved);
    const auto after = network_algebra_dimension(r.descriptors, tol::rank_evolved);
    if (before != after) {
      ++bad;
      o.notes.push_back("     network " + std::to_string(k) + ": " + std::to_string(before) + " -> " +
                        std::to_string(after));
    }
  }
  o.require(bad == 0, "25 random networks, " + std::to_string(bad) + " changed dimension");
  return o;
}

Outcome swap_check() {
  Outcome o;
  TripleMap m;
  m["a"] = tensor_slot_triple(0, 2, "a");
  m["b"] = tensor_slot_triple(1, 2, "b");
  const auto r = validate_unitary_gate(m, swap_with_wire(m, "a", "b"));
  o.require(!r.pass && r.algebra_dim_after < r.algebra_dim_before,
            "swap plus wire rejected, algebra " + std::to_string(r.algebra_dim_before) + " -> " +
                std::to_string(r.algebra_dim_after));
  return o;
}

Outcome property_check() {
  Outcome o;
  Rng rng(10);
  int fuzz_bad = 0;
  for (int k = 0; k < 200; ++k) {
    const auto n = std::size_t(rng.integer(1, 3));
    const auto t = conjugate(tensor_slot_triple(std::size_t(rng.integer(0, int(n) - 1)), n),
                             Q(rng.unitary(Eigen::Index(1) << n)));
    if (!validate_pauli_triple(t).pass) ++fuzz_bad;
    // Odd corruptions: one sign flip or one transposition.
    const int i = rng.integer(0, 2), j = (i + 1 + rng.integer(0, 1)) % 3;
    DescriptorTriple c = t;
    if (rng.integer(0, 1)) {
      c[Axis(i)] = -c[Axis(i)];
    } else {
      std::swap(c[Axis(i)], c[Axis(j)]);
    }
    if (validate_pauli_triple(c).pass) ++fuzz_bad;
  }
  o.require(fuzz_bad == 0, "Pauli fuzzing, 200 valid and 200 corrupted triples, " + std::to_string(fuzz_bad) +
                               " misclassified");

  double rt = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Eigen::Matrix3d r = rng.rotation();
    const auto p = rotation_parameters(rotated(r, sx(), sy(), sz()), sigma());
    rt = std::max(rt, (RotationParameters::from_angles(p.theta, p.phi, p.psi).r - r).cwiseAbs().maxCoeff());
  }
  o.require(rt <= limit::rotation_round_trip, "rotation round trip over 100 rotations " + fmt(rt));

  const double e1 = model_error(0.1), e2 = model_error(0.05);
  o.require(e1 / e2 >= limit::convergence_ratio, "step halving 0.1 -> 0.05 reduces the error by " + fmt(e1 / e2));

  const bool table = parameter_count(1, Regime::maximally_noncommuting) == 3 &&
                     parameter_count(1, Regime::orthodox) == 3 &&
                     parameter_count(3, Regime::maximally_noncommuting) == 9 &&
                     parameter_count(3, Regime::orthodox) == 63;
  o.require(table, "parameter counts (1,3) (1,3) (3,9) (3,63)");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"model theory trajectory", model_theory},
      {"not gate", not_gate_check},
      {"p-bar projector", pbar_check},
      {"cnot truth table and imprint", cnot_check},
      {"ccnot truth table", ccnot_check},
      {"grandfather loop", grandfather_check},
      {"hilbert space creation", creation_check},
      {"closure invariance", closure_check},
      {"invalid gate rejection", swap_check},
      {"property suites", property_check},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("FAIL exception: ") + e.what());
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str());
    for (const auto& n : o.notes) std::printf("        %s\n", n.c_str());
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
