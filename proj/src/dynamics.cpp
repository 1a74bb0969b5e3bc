#include "uqsim/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>

#include "uqsim/error.hpp"

namespace uqsim {
namespace {

struct Active {
  std::string id;
  const HamiltonianExpr* h;
  const DescriptorTriple* q0;
};

std::size_t carrier_dim(const TripleMap& m) {
  if (m.empty()) throw ValidationError("evolve: no qubits");
  const std::size_t n = m.begin()->second.dim();
  for (const auto& [id, t] : m)
    if (t.dim() != n) throw DimensionError("evolve: qubit '" + id + "' has a different dimension");
  return n;
}

std::vector<Active> active_set(const TripleMap& initial, const HamiltonianMap& hs) {
  std::vector<Active> out;
  for (const auto& [id, h] : hs) {
    if (h.is_zero()) continue;
    auto it = initial.find(id);
    if (it == initial.end()) throw ValidationError("Hamiltonian given for unknown qubit '" + id + "'");
    out.push_back({id, &h, &it->second});
  }
  return out;
}

// Descriptors seen by the Hamiltonians when the active qubits carry `us`.
TripleMap descriptors_at(const TripleMap& initial, const std::vector<Active>& act,
                         const std::vector<QNumber>& us) {
  TripleMap cur = initial;
  for (std::size_t k = 0; k < act.size(); ++k) cur[act[k].id] = conjugate(*act[k].q0, us[k]);
  return cur;
}

std::vector<QNumber> eval_all(const std::vector<Active>& act, const TripleMap& cur, std::size_t dim,
                              double herm_tol) {
  std::vector<QNumber> hs;
  hs.reserve(act.size());
  for (const auto& a : act) hs.push_back(a.h->eval(cur, dim, herm_tol));
  return hs;
}

// k = -i H U
std::vector<QNumber> rhs(const std::vector<Active>& act, const TripleMap& initial, const std::vector<QNumber>& us,
                         std::size_t dim, double herm_tol) {
  const TripleMap cur = descriptors_at(initial, act, us);
  std::vector<QNumber> hs = eval_all(act, cur, dim, herm_tol);
  std::vector<QNumber> ks;
  ks.reserve(act.size());
  for (std::size_t k = 0; k < act.size(); ++k) ks.push_back(cplx(0.0, -1.0) * (hs[k] * us[k]));
  return ks;
}

std::vector<QNumber> shifted(const std::vector<QNumber>& us, const std::vector<QNumber>& ks, double h) {
  std::vector<QNumber> out = us;
  for (std::size_t k = 0; k < us.size(); ++k) out[k].add_scaled(h, ks[k]);
  return out;
}

EvolveResult finish(const TripleMap& initial, const std::vector<Active>& act, const std::vector<QNumber>& us) {
  EvolveResult r;
  r.descriptors = descriptors_at(initial, act, us);
  return r;
}

std::optional<EvolveResult> try_closed_form(const TripleMap& initial, const std::vector<Active>& act,
                                            std::size_t dim, double t0, double t1, const EvolveOptions& opt) {
  const std::vector<QNumber> h0 = eval_all(act, initial, dim, opt.herm_tol);
  const double span = t1 - t0;
  constexpr int kProbes = 8;
  for (int s = 1; s <= kProbes; ++s) {
    const double tau = span * s / kProbes;
    std::vector<QNumber> us;
    for (const QNumber& h : h0) us.push_back(unitary_exp(h, tau));
    const TripleMap cur = descriptors_at(initial, act, us);
    for (std::size_t k = 0; k < act.size(); ++k) {
      const QNumber h = act[k].h->eval_raw(cur, dim);
      if (max_abs_diff(h, h0[k]) > tol::exact * std::max(1.0, h0[k].max_abs())) return std::nullopt;
    }
  }
  std::vector<QNumber> us;
  for (const QNumber& h : h0) us.push_back(unitary_exp(h, span));
  EvolveResult r = finish(initial, act, us);
  r.closed_form = true;
  for (std::size_t k = 0; k < act.size(); ++k) {
    UnitaryTrajectory traj;
    traj.step = span;
    traj.times = {t0, t1};
    traj.u = {QNumber::identity(dim), us[k]};
    r.trajectories.emplace(act[k].id, std::move(traj));
  }
  return r;
}

}  // namespace

QNumber unitary_exp(const QNumber& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (h.matrix() + h.matrix().adjoint()));
  if (es.info() != Eigen::Success) throw NumericalError("unitary_exp: eigendecomposition failed");
  const Eigen::VectorXcd phases = (es.eigenvalues() * (-t)).unaryExpr([](double a) { return std::polar(1.0, a); });
  return QNumber(es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
}

QNumber polar_unitary(const QNumber& u) {
  const Eigen::MatrixXcd g = u.matrix().adjoint() * u.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (g + g.adjoint()));
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
    throw NumericalError("polar_unitary: matrix is singular");
  }
  const Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return QNumber(u.matrix() * es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint());
}

double unitarity_residual(const QNumber& u) {
  return max_abs_diff(u.adjoint() * u, QNumber::identity(u.dim()));
}

EvolveResult evolve(const TripleMap& initial, const HamiltonianMap& hamiltonians, double t0, double t1,
                    const EvolveOptions& opt) {
  if (!(opt.step > 0.0)) throw ValidationError("evolve: step must be positive");
  if (t1 < t0) throw ValidationError("evolve: t1 < t0");
  const std::size_t dim = carrier_dim(initial);
  const std::vector<Active> act = active_set(initial, hamiltonians);
  if (act.empty() || t1 == t0) {
    EvolveResult r;
    r.descriptors = initial;
    r.closed_form = opt.path != EvolvePath::ode;
    return r;
  }
  if (opt.path != EvolvePath::ode) {
    if (auto r = try_closed_form(initial, act, dim, t0, t1, opt)) return std::move(*r);
    if (opt.path == EvolvePath::closed_form) {
      throw NumericalError("evolve: Hamiltonians are not constant along the closed-form trajectory");
    }
  }

  const auto n_steps = static_cast<std::size_t>(std::ceil((t1 - t0) / opt.step - 1e-9));
  const double h = (t1 - t0) / static_cast<double>(std::max<std::size_t>(n_steps, 1));
  std::vector<QNumber> us(act.size(), QNumber::identity(dim));
  std::vector<UnitaryTrajectory> trajs(act.size());
  auto record = [&](double t) {
    if (!opt.record) return;
    for (std::size_t k = 0; k < act.size(); ++k) {
      trajs[k].times.push_back(t);
      trajs[k].u.push_back(us[k]);
    }
  };
  record(t0);
  for (std::size_t s = 0; s < n_steps; ++s) {
    const double t = t0 + static_cast<double>(s) * h;
    try {
      const auto k1 = rhs(act, initial, us, dim, opt.herm_tol);
      const auto k2 = rhs(act, initial, shifted(us, k1, h / 2), dim, opt.herm_tol);
      const auto k3 = rhs(act, initial, shifted(us, k2, h / 2), dim, opt.herm_tol);
      const auto k4 = rhs(act, initial, shifted(us, k3, h), dim, opt.herm_tol);
      for (std::size_t k = 0; k < act.size(); ++k) {
        us[k].add_scaled(h / 6, k1[k]);
        us[k].add_scaled(h / 3, k2[k]);
        us[k].add_scaled(h / 3, k3[k]);
        us[k].add_scaled(h / 6, k4[k]);
        const double drift = unitarity_residual(us[k]);
        if (drift > opt.drift_bound) {
          std::ostringstream os;
          os << "unitarity drift " << drift << " for qubit '" << act[k].id << "' exceeds " << opt.drift_bound
             << "; reduce the step";
          throw NumericalError(os.str());
        }
        us[k] = polar_unitary(us[k]);
      }
    } catch (const ValidationError& e) {
      std::ostringstream os;
      os << "at t = " << t << ": " << e.what();
      throw ValidationError(os.str());
    }
    record(s + 1 == n_steps ? t1 : t0 + static_cast<double>(s + 1) * h);
  }
  EvolveResult r = finish(initial, act, us);
  r.steps = n_steps;
  for (std::size_t k = 0; k < act.size(); ++k) {
    trajs[k].step = h;
    if (!opt.record) {
      trajs[k].times = {t0, t1};
      trajs[k].u = {QNumber::identity(dim), us[k]};
    }
    r.trajectories.emplace(act[k].id, std::move(trajs[k]));
  }
  return r;
}

DescriptorTriple rotate_x(const DescriptorTriple& t, double angle) {
  return apply_rotation(axis_rotation(Axis::x, angle), t);
}

QNumber generator_from_trajectory(const UnitaryTrajectory& traj, double t) {
  const auto& ts = traj.times;
  if (ts.size() < 4 || traj.u.size() != ts.size()) {
    throw ValidationError("generator_from_trajectory: need at least four samples");
  }
  if (!(t > ts[1] - 1e-12 && t < ts[ts.size() - 2] + 1e-12)) {
    std::ostringstream os;
    os << "generator_from_trajectory: t = " << t << " outside [" << ts[1] << ", " << ts[ts.size() - 2] << "]";
    throw ValidationError(os.str());
  }
  auto at_sample = [&](std::size_t k) {
    const double dt = ts[k + 1] - ts[k - 1];
    const QNumber dud = (1.0 / dt) * (traj.u[k + 1].adjoint() - traj.u[k - 1].adjoint());
    return cplx(0.0, -1.0) * (dud * traj.u[k]);
  };
  auto hi = std::upper_bound(ts.begin(), ts.end(), t);
  std::size_t k = static_cast<std::size_t>(std::distance(ts.begin(), hi));
  k = std::clamp<std::size_t>(k == 0 ? 0 : k - 1, 1, ts.size() - 3);
  const double w = std::clamp((t - ts[k]) / (ts[k + 1] - ts[k]), 0.0, 1.0);
  QNumber g = (1.0 - w) * at_sample(k);
  if (w > 0.0) g.add_scaled(w, at_sample(k + 1));
  return g;
}

double model_alpha(double t) {
  if (t < 0.0) throw ValidationError("model_alpha: t must be non-negative");
  return 2.0 * std::atan(std::tanh(t));
}

}  // namespace uqsim
