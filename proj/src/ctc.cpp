#include "uqsim/ctc.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "uqsim/error.hpp"

namespace uqsim {
namespace {

struct Unknown {
  std::string old;
  std::string young;
  DescriptorTriple reference;
  Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
};

Eigen::Matrix3d snap_sharp_z(const Eigen::Matrix3d& r) {
  const double s = r(2, 2) < 0.0 ? -1.0 : 1.0;
  const double psi = std::atan2(r(0, 1), r(0, 0));
  const Eigen::Vector3d x(std::cos(psi), std::sin(psi), 0.0);
  const Eigen::Vector3d z(0.0, 0.0, s);
  Eigen::Matrix3d out;
  out.row(0) = x;
  out.row(1) = z.cross(x);
  out.row(2) = z;
  return out;
}

struct Attempt {
  bool solved = false;
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
  NetworkState start;
  TripleMap final_descriptors;
};

Attempt iterate(const NetworkState& net, const CtcSpec& ctc, std::vector<Unknown> unknowns,
                const FixedPointOptions& opt) {
  Attempt a;
  RunOptions run = opt.run;
  run.t1 = ctc.T;
  for (int it = 1; it <= opt.max_iter; ++it) {
    NetworkState cur = net;
    for (const auto& u : unknowns) cur = with_qubit(std::move(cur), u.old, apply_rotation(u.r, u.reference));
    const RunResult rr = run_schedule(cur, run);
    double residual = 0.0;
    for (const auto& u : unknowns)
      residual = std::max(residual, triple_distance(cur.qubit(u.old), rr.final.qubit(u.young)));
    a.iterations = it;
    a.residual = residual;
    a.start = cur;
    a.final_descriptors = rr.final.qubits;
    if (residual <= opt.tol) {
      a.solved = true;
      return a;
    }
    for (auto& u : unknowns) {
      RotationParameters out;
      try {
        out = rotation_parameters(rr.final.qubit(u.young), u.reference, tol::evolved);
      } catch (const ValidationError& e) {
        throw SolverError("iteration " + std::to_string(it) + ": output of '" + u.young +
                          "' is not a rotation of the starting triple of '" + u.old + "' (" + e.what() + ")");
      }
      u.r = rotation_geodesic(u.r, out.r, opt.damping);
      if (opt.sharp_z) u.r = snap_sharp_z(u.r);
    }
  }
  return a;
}

}  // namespace

bool ScenarioResult::passed() const {
  return solved && std::all_of(checks.begin(), checks.end(), [](const ScenarioCheck& c) { return c.pass; });
}

void ScenarioResult::check(std::string n, bool pass, double value, double tolerance, std::string detail) {
  checks.push_back({std::move(n), pass, value, tolerance, std::move(detail)});
}

void ScenarioResult::check_within(std::string n, double value, double tolerance) {
  check(std::move(n), value <= tolerance, value, tolerance);
}

void print_result(std::ostream& os, const ScenarioResult& r) {
  const auto flags = os.flags();
  os << std::setprecision(6);
  os << "scenario " << r.name << ": " << (r.passed() ? "PASS" : "FAIL") << "\n";
  os << "  solved=" << (r.solved ? "yes" : "no") << " residual=" << r.residual << " iterations=" << r.iterations
     << "\n";
  for (const auto& [k, v] : r.parameters) os << "  " << k << " = " << std::setprecision(12) << v << "\n";
  os << std::setprecision(3);
  for (const auto& c : r.checks) {
    os << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name;
    if (c.tolerance > 0.0) os << "  (" << std::scientific << c.value << " <= " << c.tolerance << std::defaultfloat << ")";
    if (!c.detail.empty()) os << "  " << c.detail;
    os << "\n";
  }
  if (!r.message.empty()) os << "  " << r.message << "\n";
  os.flags(flags);
}

double consistency_residual(const NetworkState& net, const CtcSpec& ctc, const RunOptions& options) {
  RunOptions run = options;
  run.t1 = ctc.T;
  const RunResult rr = run_schedule(net, run);
  double residual = 0.0;
  for (const auto& p : ctc.pairs)
    residual = std::max(residual, triple_distance(net.qubit(p.old), rr.final.qubit(p.young)));
  return residual;
}

double consistency_residual(const NetworkState& net, const RunOptions& options) {
  if (!net.ctc) throw ValidationError("network has no ctc identifications");
  return consistency_residual(net, *net.ctc, options);
}

Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
  q.normalize();
  return q.toRotationMatrix();
}

Eigen::Matrix3d rotation_geodesic(const Eigen::Matrix3d& r, const Eigen::Matrix3d& s, double t) {
  Eigen::AngleAxisd aa(r.transpose() * s);
  Eigen::Vector3d axis = aa.axis();
  if (std::abs(aa.angle() - std::numbers::pi) < 1e-9) {
    Eigen::Index big = 0;
    axis.cwiseAbs().maxCoeff(&big);
    if (axis(big) < 0.0) axis = -axis;
  }
  return r * Eigen::AngleAxisd(t * aa.angle(), axis).toRotationMatrix();
}

ScenarioResult fixed_point_solve(const NetworkState& net, const FixedPointOptions& opt) {
  if (!net.ctc || net.ctc->pairs.empty()) throw ValidationError("fixed_point_solve: network has no ctc pairs");
  if (!(opt.damping > 0.0 && opt.damping <= 1.0)) throw ValidationError("fixed_point_solve: damping must be in (0, 1]");
  if (opt.max_iter < 1) throw ValidationError("fixed_point_solve: max_iter must be positive");
  const CtcSpec& ctc = *net.ctc;
  std::vector<Unknown> unknowns;
  for (const auto& p : ctc.pairs) {
    const DescriptorTriple& guess = net.qubit(p.old);
    const PauliReport rep = validate_pauli_triple(guess);
    if (!rep.pass) throw ValidationError("initial guess for '" + p.old + "' violates the Pauli algebra: " + rep.detail);
    unknowns.push_back({p.old, p.young, guess, Eigen::Matrix3d::Identity()});
    if (opt.sharp_z) unknowns.back().r = snap_sharp_z(unknowns.back().r);
  }

  ScenarioResult res;
  res.name = "fixed-point";
  Attempt a = iterate(net, ctc, unknowns, opt);
  res.iterations = a.iterations;
  res.residual = a.residual;
  res.initial_descriptors = a.start.qubits;
  res.final_descriptors = a.final_descriptors;
  res.solved = a.solved;
  if (a.solved) {
    RunOptions recheck = opt.run;
    recheck.evolve.path = opt.run.evolve.path == EvolvePath::ode ? EvolvePath::automatic : EvolvePath::ode;
    const double again = consistency_residual(a.start, ctc, recheck);
    res.check_within("independent re-simulation residual", again, std::max(opt.tol, 1e-9));
    if (again > std::max(opt.tol, 1e-9)) {
      res.solved = false;
      res.message = "re-simulation did not confirm the fixed point";
    }
  } else {
    std::ostringstream os;
    os << "no fixed point within " << opt.max_iter << " iterations (last residual " << a.residual << ")";
    res.message = os.str();
  }

  if (opt.multistart > 0) {
    std::mt19937_64 rng(opt.seed);
    std::vector<TripleMap> found;
    auto remember = [&](const NetworkState& s) {
      TripleMap olds;
      for (const auto& u : unknowns) olds.emplace(u.old, s.qubit(u.old));
      for (const auto& f : found) {
        double d = 0.0;
        for (const auto& [id, t] : olds) d = std::max(d, triple_distance(t, f.at(id)));
        if (d <= 1e-4) return;
      }
      found.push_back(std::move(olds));
    };
    if (a.solved) remember(a.start);
    for (std::size_t k = 0; k < opt.multistart; ++k) {
      std::vector<Unknown> start = unknowns;
      for (auto& u : start) {
        u.r = random_rotation(rng);
        if (opt.sharp_z) u.r = snap_sharp_z(u.r);
      }
      try {
        const Attempt b = iterate(net, ctc, start, opt);
        if (b.solved) remember(b.start);
      } catch (const SolverError&) {
      }
    }
    res.distinct_solutions = std::move(found);
    res.parameters["multistart_runs"] = static_cast<double>(opt.multistart);
    res.parameters["distinct_fixed_points"] = static_cast<double>(res.distinct_solutions.size());
  }
  return res;
}

double scalar_self_consistency(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (lo > hi) std::swap(lo, hi);
  auto g = [&](double x) { return x - f(x); };
  double glo = g(lo), ghi = g(hi);
  if (!std::isfinite(glo) || !std::isfinite(ghi)) throw SolverError("self-consistency map is not finite at the bracket ends");
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo < 0.0) == (ghi < 0.0)) {
    std::ostringstream os;
    os << "x - f(x) does not change sign on [" << lo << ", " << hi << "]";
    throw SolverError(os.str());
  }
  double mid = lo;
  for (int it = 0; it < 400; ++it) {
    mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  const double x = std::abs(glo) <= std::abs(g(hi)) ? lo : hi;
  if (std::abs(g(x)) > tol) {
    std::ostringstream os;
    os << "bisection stalled with |x - f(x)| = " << std::abs(g(x)) << " above " << tol;
    throw SolverError(os.str());
  }
  return x;
}

std::vector<std::vector<int>> classical_ctc_enumerate(const ClassicalCtcProblem& p) {
  if (p.n_bits == 0 || p.n_bits > 20) throw ValidationError("classical_ctc_enumerate: need 1..20 bits");
  if (!p.gate_map) throw ValidationError("classical_ctc_enumerate: missing gate map");
  for (const auto& [out, in] : p.identifications)
    if (out >= p.n_bits || in >= p.n_bits) throw ValidationError("classical_ctc_enumerate: slot out of range");
  std::vector<std::vector<int>> consistent;
  std::vector<int> bits(p.n_bits);
  for (std::uint32_t mask = 0; mask < (1u << p.n_bits); ++mask) {
    for (std::size_t k = 0; k < p.n_bits; ++k) bits[k] = (mask >> k) & 1u ? -1 : 1;
    const std::vector<int> out = p.gate_map(bits);
    if (out.size() != p.n_bits) throw ValidationError("classical_ctc_enumerate: gate map changed the bit count");
    bool ok = true;
    for (const auto& [o, i] : p.identifications) ok = ok && out[o] == bits[i];
    if (ok) consistent.push_back(bits);
  }
  return consistent;
}

}  // namespace uqsim
