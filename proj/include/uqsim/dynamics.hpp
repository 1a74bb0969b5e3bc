#pragma once

// Time evolution of per-qubit unitaries and descriptors.
//
// Each qubit a carries a unitary U_a(t) with U_a(t0) = 1 and
//   i dU_a/dt = H_a(q_1(t), ..., q_n(t)) U_a,   q_a(t) = U_a q_a(t0) U_a^dagger,
// so that dq_a/dt = i [q_a, H_a]. A positive H = (w/2) q_x turns q_y toward q_z.

#include <map>
#include <string>
#include <vector>

#include "uqsim/hamiltonian.hpp"

namespace uqsim {

struct UnitaryTrajectory {
  double step = 0.0;
  std::vector<double> times;
  std::vector<QNumber> u;
};

enum class EvolvePath {
  ode,          // fixed-step RK4 with polar re-unitarisation
  closed_form,  // exp(-i H (t - t0)); NumericalError unless every H stays constant
  automatic,    // closed form when valid, ODE otherwise
};

struct EvolveOptions {
  double step = 1e-3;
  double drift_bound = 1e-4;  // max |U^dagger U - 1| tolerated before re-unitarising
  double herm_tol = tol::evolved;
  EvolvePath path = EvolvePath::ode;
  bool record = false;  // keep every step's unitaries
};

struct EvolveResult {
  TripleMap descriptors;
  std::map<std::string, UnitaryTrajectory, std::less<>> trajectories;  // qubits with a nonzero Hamiltonian
  bool closed_form = false;
  std::size_t steps = 0;
};

// Hamiltonians absent from the map (or structurally zero) are zero; those
// qubits come back bit-identical.
EvolveResult evolve(const TripleMap& initial, const HamiltonianMap& hamiltonians, double t0, double t1,
                    const EvolveOptions& options = {});

// exp(-i h t) for Hermitian h.
QNumber unitary_exp(const QNumber& h, double t);

// U (U^dagger U)^(-1/2)
QNumber polar_unitary(const QNumber& u);

// max |U^dagger U - 1|
double unitarity_residual(const QNumber& u);

// Rotation of the triple about its own x-axis.
DescriptorTriple rotate_x(const DescriptorTriple& t, double angle);

// -i (dU^dagger/dt) U by central differences, linearly interpolated between
// neighbouring samples. Throws ValidationError unless t lies strictly inside
// the sampled range with one sample of margin on each side.
QNumber generator_from_trajectory(const UnitaryTrajectory& traj, double t);

// Self-consistent rotation angle of the one-qubit model with H = {{q1z, q2z}, q1x} / 4.
double model_alpha(double t);

}  // namespace uqsim
