// uqsim: command-line front end for network specs and the built-in scenarios.
//
// Exit codes: 0 success, 1 validation or verification failure, 2 usage error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <numbers>

#include "uqsim/ctc.hpp"
#include "uqsim/error.hpp"
#include "uqsim/kernels.hpp"
#include "uqsim/scenarios.hpp"
#include "uqsim/spec_io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

uqsim::NetworkState load(const std::string& path) { return uqsim::build_network(uqsim::load_network_spec(path)); }

// Network advanced to time t with the given options.
uqsim::NetworkState advance(const uqsim::NetworkState& net, double t, const uqsim::RunOptions& base) {
  if (t <= net.time) return net;
  uqsim::RunOptions ro = base;
  ro.t1 = t;
  ro.sample_dt = 0.0;
  return uqsim::run_schedule(net, ro).final;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heisenberg-picture simulator for unorthodox qubit networks"};
  app.require_subcommand(1);

  std::string spec_path;
  double step = 1e-3;
  bool force_ode = false;

  auto* validate = app.add_subcommand("validate", "Build a network spec and check every qubit, the state and each gate");
  validate->add_option("spec", spec_path, "Network spec (JSON)")->required()->check(CLI::ExistingFile);

  double t0 = 0.0, t1 = -1.0, sample_dt = 0.0;
  std::string csv_path;
  auto* run = app.add_subcommand("run", "Run the schedule and print the final report");
  run->add_option("spec", spec_path, "Network spec (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--step", step, "RK4 step")->check(CLI::PositiveNumber);
  run->add_option("--t0", t0, "Start recording at this time")->check(CLI::NonNegativeNumber);
  run->add_option("--t1", t1, "Stop at this time (default: end of schedule)");
  run->add_option("--sample-dt", sample_dt, "Extra CSV samples every dt")->check(CLI::NonNegativeNumber);
  run->add_option("--csv", csv_path, "Write time,qubit,axis,expectation,sharp rows here");
  run->add_flag("--ode", force_ode, "Integrate every segment, even when the closed form applies");

  double at_time = 0.0;
  auto* algebra = app.add_subcommand("algebra", "Report algebra dimensions and pair classes");
  algebra->add_option("spec", spec_path, "Network spec (JSON)")->required()->check(CLI::ExistingFile);
  algebra->add_option("--t", at_time, "Time at which to report")->check(CLI::NonNegativeNumber);
  algebra->add_option("--step", step, "RK4 step")->check(CLI::PositiveNumber);

  std::string qubit, axis;
  auto* expect = app.add_subcommand("expect", "Expectation value of one descriptor");
  expect->add_option("spec", spec_path, "Network spec (JSON)")->required()->check(CLI::ExistingFile);
  expect->add_option("--qubit", qubit, "Qubit id")->required();
  expect->add_option("--axis", axis, "x, y or z")->required()->check(CLI::IsMember({"x", "y", "z"}));
  expect->add_option("--t", at_time, "Time")->check(CLI::NonNegativeNumber);
  expect->add_option("--step", step, "RK4 step")->check(CLI::PositiveNumber);

  uqsim::FixedPointOptions fp;
  std::size_t multistart = 0;
  std::uint64_t seed = 0;
  auto* solve = app.add_subcommand("ctc-solve", "Solve the spec's ctc identifications by damped fixed-point iteration");
  auto* spec_opt = solve->add_option("spec", spec_path, "Network spec (JSON)")->check(CLI::ExistingFile);
  auto* net_opt = solve->add_option("--network", spec_path, "Network spec (JSON)")->check(CLI::ExistingFile);
  spec_opt->excludes(net_opt);
  solve->add_option("--tol", fp.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  solve->add_option("--damping", fp.damping, "Geodesic damping in (0, 1]")->check(CLI::Range(1e-6, 1.0));
  solve->add_option("--max-iter", fp.max_iter, "Iteration limit")->check(CLI::PositiveNumber);
  solve->add_option("--multistart", multistart, "Extra random starts");
  solve->add_option("--seed", seed, "Seed for the random starts");
  solve->add_flag("--sharp-z", fp.sharp_z, "Only allow iterates whose z-observable is +-z of the start");
  solve->add_option("--step", step, "RK4 step")->check(CLI::PositiveNumber);

  std::string scenario_name;
  uqsim::ScenarioOptions sopt;
  auto* scenario = app.add_subcommand("scenario", "Run a built-in scenario and print a pass/fail report");
  scenario->add_option("name", scenario_name, "Scenario")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(uqsim::scenario_names().begin(), uqsim::scenario_names().end())));
  scenario->add_option("--step", sopt.step, "RK4 step")->check(CLI::PositiveNumber);
  scenario->add_option("--tol", sopt.tol, "Verification tolerance")->check(CLI::PositiveNumber);

  auto* info = app.add_subcommand("info", "Show the active numeric kernels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  uqsim::RunOptions ro;
  ro.evolve.step = step;
  ro.evolve.path = force_ode ? uqsim::EvolvePath::ode : uqsim::EvolvePath::automatic;

  try {
    if (*validate) {
      const auto net = load(spec_path);
      std::size_t gates = 0;
      for (const auto& s : net.schedule) gates += s.gates.size();
      std::cout << "ok: " << net.order.size() << " qubits, dimension " << net.hilbert_dim << ", " << net.schedule.size()
                << " slots, " << gates << " gates";
      if (net.ctc) std::cout << ", " << net.ctc->pairs.size() << " ctc pairs";
      std::cout << "\n";
      return kOk;
    }
    if (*run) {
      const auto net = load(spec_path);
      const auto start = advance(net, t0, ro);
      uqsim::RunOptions r = ro;
      if (t1 >= 0.0) {
        if (t1 < t0) {
          std::cerr << "error: --t1 precedes --t0\n";
          return kUsage;
        }
        r.t1 = t1;
      }
      r.sample_dt = sample_dt;
      const auto result = uqsim::run_schedule(start, r);
      if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw uqsim::Error("cannot write " + csv_path);
        uqsim::write_csv(out, result.snapshots, result.final);
      }
      auto j = uqsim::report_to_json(uqsim::report(result.final));
      j["closed_form"] = result.closed_form;
      std::cout << j.dump(2) << "\n";
      return kOk;
    }
    if (*algebra) {
      const auto net = advance(load(spec_path), at_time, ro);
      std::cout << uqsim::report_to_json(uqsim::report(net)).dump(2) << "\n";
      return kOk;
    }
    if (*expect) {
      const auto net = advance(load(spec_path), at_time, ro);
      const auto& q = net.qubit(qubit)[uqsim::parse_axis(axis)];
      std::cout.precision(12);
      std::cout << uqsim::expectation(q, net.state, uqsim::tol::evolved)
                << (uqsim::is_sharp(q, net.state, uqsim::tol::evolved) ? " sharp" : " non-sharp") << "\n";
      return kOk;
    }
    if (*solve) {
      if (spec_path.empty()) {
        std::cerr << "error: ctc-solve needs a spec (positional or --network)\n";
        return kUsage;
      }
      fp.run = ro;
      fp.multistart = multistart;
      fp.seed = seed;
      const auto net = load(spec_path);
      uqsim::ScenarioResult res = uqsim::fixed_point_solve(net, fp);
      res.name = spec_path;
      uqsim::print_result(std::cout, res);
      if (res.solved) {
        for (const auto& p : net.ctc->pairs) {
          const auto rp = uqsim::rotation_parameters(res.initial_descriptors.at(p.old), net.qubit(p.old),
                                                     uqsim::tol::evolved);
          std::cout << "  " << p.old << "(0) = R(theta=" << rp.theta << ", phi=" << rp.phi << ", psi=" << rp.psi
                    << ") applied to its starting triple\n";
        }
      }
      return res.passed() ? kOk : kFailed;
    }
    if (*scenario) {
      const auto res = uqsim::run_scenario(scenario_name, sopt);
      uqsim::print_result(std::cout, res);
      return res.passed() ? kOk : kFailed;
    }
    if (*info) {
      std::cout << "active kernels: " << uqsim::kernels::active().name << "\n";
      for (const auto* t : uqsim::kernels::available_tables()) std::cout << "available: " << t->name << "\n";
      return kOk;
    }
  } catch (const uqsim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
