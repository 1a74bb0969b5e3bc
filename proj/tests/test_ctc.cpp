#include "doctest.h"
#include "support.hpp"
#include "uqsim/ctc.hpp"
#include "uqsim/error.hpp"
#include "uqsim/scenarios.hpp"
#include "uqsim/spec_io.hpp"

using namespace testing;
using namespace uqsim;

namespace {

NetworkState grandfather() { return build_network(scenario_network_spec("grandfather")); }

NetworkState idle_loop() {
  return build_network(parse_network_spec(R"({"qubits": [{"id": "a"}, {"id": "b", "preset": "copy-of", "source": "a"}],
    "schedule": [{"time": 0, "gates": [{"gate": "wire", "target": "a"}]}],
    "ctc": {"pairs": [{"young": "a", "old": "b"}], "T": 1}})"));
}

}  // namespace

TEST_CASE("consistency residuals") {
  CHECK(consistency_residual(build_network(scenario_network_spec("hilbert-creation"))) <= 1e-9);
  CHECK(consistency_residual(idle_loop()) <= 1e-12);
  const double r0 = consistency_residual(grandfather());
  CHECK(r0 > 0.5);
  const auto solved = with_qubit(grandfather(), "q2", triple(sx(), -sz(), sy(), "q2"));
  CHECK(consistency_residual(solved) < 1e-6);
  CHECK_THROWS_AS(consistency_residual(build_network(parse_network_spec(R"({"qubits": [{"id": "a"}]})"))),
                  ValidationError);
}

TEST_CASE("fixed point of the grandfather loop") {
  const auto r = fixed_point_solve(grandfather());
  REQUIRE(r.solved);
  CHECK(r.residual <= 1e-6);
  CHECK(triple_diff(r.initial_descriptors.at("q2"), sx(), -sz(), sy()) < 1e-6);
  bool rechecked = false;
  for (const auto& c : r.checks) rechecked = rechecked || c.name.find("re-simulation") != std::string::npos;
  CHECK(rechecked);
}

TEST_CASE("a loop without gates converges at once") {
  const auto r = fixed_point_solve(idle_loop());
  CHECK(r.solved);
  CHECK(r.iterations <= 1);
  CHECK(r.residual <= 1e-12);
}

TEST_CASE("restricting to sharp z cannot resolve the grandfather loop") {
  FixedPointOptions o;
  o.sharp_z = true;
  o.max_iter = 50;
  const auto r = fixed_point_solve(grandfather(), o);
  CHECK_FALSE(r.solved);
  CHECK(r.residual > 0.5);
}

TEST_CASE("the solution is stable under a small perturbation") {
  Rng rng(51);
  const auto base = triple(sx(), -sz(), sy(), "q2");
  for (int k = 0; k < 5; ++k) {
    Eigen::Vector3d axis(rng.normal(), rng.normal(), rng.normal());
    const Eigen::Matrix3d r = Eigen::AngleAxisd(1e-3, axis.normalized()).toRotationMatrix();
    const auto start = with_qubit(grandfather(), "q2", apply_rotation(r, base));
    const auto res = fixed_point_solve(start);
    CHECK(res.solved);
    CHECK(res.residual <= 1e-6);
    CHECK(triple_diff(res.initial_descriptors.at("q2"), sx(), -sz(), sy()) < 1e-5);
  }
}

TEST_CASE("multistart is deterministic for a fixed seed") {
  FixedPointOptions o;
  o.multistart = 4;
  o.seed = 7;
  const auto a = fixed_point_solve(grandfather(), o);
  const auto b = fixed_point_solve(grandfather(), o);
  CHECK(a.solved);
  CHECK(a.distinct_solutions.size() >= 1);
  REQUIRE(a.distinct_solutions.size() == b.distinct_solutions.size());
  for (std::size_t k = 0; k < a.distinct_solutions.size(); ++k)
    CHECK(triple_max_abs_diff(a.distinct_solutions[k].at("q2"), b.distinct_solutions[k].at("q2")) == 0.0);
}

TEST_CASE("scalar self-consistency") {
  const double dottie = scalar_self_consistency([](double x) { return std::cos(x); }, 0.0, 1.0);
  CHECK(std::abs(dottie - 0.7390851332151607) < 1e-9);
  CHECK(std::abs(scalar_self_consistency([](double x) { return std::cos(x); }, 1.0, 0.0) - dottie) < 1e-12);
  double x = 0.5;
  for (int k = 0; k < 200; ++k) x = std::cos(x);
  CHECK(std::abs(x - dottie) < 1e-9);

  CHECK(std::abs(scalar_self_consistency([](double v) { return 0.5 * v + 1.0; }, 0.0, 5.0) - 2.0) < 1e-9);
  CHECK_THROWS_AS(scalar_self_consistency([](double v) { return v + 1.0; }, 0.0, 1.0), SolverError);

  const auto net = grandfather();
  const double phi = scalar_self_consistency([&](double p) { return grandfather_phi_map(net, p); }, 0.1, 3.0);
  CHECK(std::abs(phi - pi / 2) < 1e-9);
}

TEST_CASE("classical enumeration") {
  const auto g = classical_grandfather_problem();
  const auto sols = classical_ctc_enumerate(g);
  int with_plus = 0, with_minus = 0;
  for (const auto& s : sols) (s[0] > 0 ? with_plus : with_minus)++;
  CHECK(with_plus == 0);
  CHECK(with_minus == 2);

  for (std::size_t k = 1; k <= 4; ++k) {
    ClassicalCtcProblem id;
    id.n_bits = k;
    id.gate_map = [](const std::vector<int>& v) { return v; };
    for (std::size_t b = 0; b < k; ++b) id.identifications.push_back({b, b});
    CHECK(classical_ctc_enumerate(id).size() == std::size_t(1) << k);
  }

  ClassicalCtcProblem flip;
  flip.n_bits = 1;
  flip.gate_map = [](const std::vector<int>& v) { return std::vector<int>{-v[0]}; };
  flip.identifications = {{0, 0}};
  CHECK(classical_ctc_enumerate(flip).empty());
}

TEST_CASE("rotation helpers") {
  std::mt19937_64 gen(3);
  for (int k = 0; k < 10; ++k) {
    const Eigen::Matrix3d r = random_rotation(gen), s = random_rotation(gen);
    CHECK((r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(r.determinant() - 1.0) < 1e-12);
    CHECK((rotation_geodesic(r, s, 0.0) - r).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((rotation_geodesic(r, s, 1.0) - s).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("built-in scenarios pass") {
  for (auto name : scenario_names()) {
    CAPTURE(name);
    const auto r = run_scenario(name);
    CHECK(r.passed());
  }
  CHECK_THROWS_AS(run_scenario("nonexistent"), ValidationError);
}

TEST_CASE("the printed creation hamiltonians, used verbatim, break the loop") {
  // Second qubit driven by the same p-bar(q3z, q4z) factor as the first.
  auto spec = parse_network_spec(scenario_spec("hilbert-creation"));
  auto& gate = spec.schedule.at(0).gates.at(0);
  const auto literal = Json::parse(R"(["scale", 0.7853981633974483, ["anti", "q2.x", ["pbar", "q3.z", "q4.z"]]])");
  HamiltonianMap hs = gate.hamiltonians;
  hs.at("q2") = expr_from_json(literal);
  gate = hamiltonian_gate(gate.name, hs, gate.duration);
  const auto net = build_network(spec);
  RunOptions o;
  o.evolve.path = EvolvePath::closed_form;
  const auto out = run_schedule(net, o).final.qubits;
  CHECK(triple_max_abs_diff(out.at("q2"), out.at("q1")) < 1e-12);
  CHECK(triple_max_abs_diff(out.at("q2"), hilbert_creation_triple(4)) > 0.5);
  CHECK(consistency_residual(net, o) > 0.5);
}
