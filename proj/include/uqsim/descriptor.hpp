#pragma once

// Descriptor triples, the Heisenberg state, and rotation parametrisation of
// triples that live on a common two-dimensional Pauli span.

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "uqsim/qnumber.hpp"

namespace uqsim {

// Levi-Civita symbol eps[i][j][k] over (x, y, z).
inline constexpr int kLeviCivita[3][3][3] = {
    {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
    {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
    {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}},
};

inline constexpr int kronecker_delta(int i, int j) { return i == j ? 1 : 0; }

// The (x, y, z) descriptors of one qubit.
struct DescriptorTriple {
  QNumber x, y, z;
  std::string label;

  const QNumber& operator[](Axis a) const;
  QNumber& operator[](Axis a);
  const QNumber& operator[](int i) const { return (*this)[static_cast<Axis>(i)]; }

  std::size_t dim() const { return x.dim(); }
};

// (sigma_x, sigma_y, sigma_z) on a 2-dimensional carrier.
DescriptorTriple pauli_triple(std::string label = {});

struct PauliReport {
  bool pass = false;
  double worst_residual = 0.0;
  std::string detail;  // first failing relation, empty on pass
};

// Checks hermiticity and q_i q_j = delta_ij 1 + i eps_ijk q_k for all nine
// ordered pairs. Throws DimensionError when components differ in size.
PauliReport validate_pauli_triple(const DescriptorTriple& t, double tolerance = tol::exact);

// Max over components of the trace-norm distance.
double triple_distance(const DescriptorTriple& a, const DescriptorTriple& b);
// Max entrywise deviation over components.
double triple_max_abs_diff(const DescriptorTriple& a, const DescriptorTriple& b);

// Conjugate every component: U q U^dagger.
DescriptorTriple conjugate(const DescriptorTriple& t, const QNumber& u);

// Coefficient matrix of the triple rotated by `angle` about `axis`, in the
// orientation used by the dynamics (a positive x rotation sends y toward z).
Eigen::Matrix3d axis_rotation(Axis axis, double angle);

// q_i = sum_j R_ij ref_j
DescriptorTriple apply_rotation(const Eigen::Matrix3d& r, const DescriptorTriple& reference);

// Closest proper rotation in the Frobenius sense.
Eigen::Matrix3d nearest_rotation(const Eigen::Matrix3d& m);

// R = axis_rotation(x, theta) * axis_rotation(y, phi) * axis_rotation(z, psi):
// rotate about x first, then y, then z (fixed reference axes). Angles are in
// [0, 2pi). At the gimbal-lock point (|cos phi| ~ 0) theta is set to 0.
struct RotationParameters {
  Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
  double theta = 0.0;
  double phi = 0.0;
  double psi = 0.0;

  static RotationParameters from_angles(double theta, double phi, double psi);
  static RotationParameters from_matrix(const Eigen::Matrix3d& r);
};

// Expresses `triple` as a rigid rotation of `reference`. Throws
// ValidationError if the triple is not (within tolerance) such a rotation.
RotationParameters rotation_parameters(const DescriptorTriple& triple,
                                       const DescriptorTriple& reference,
                                       double tolerance = tol::exact);

// The fixed Heisenberg state |Psi>.
class HeisenbergState {
 public:
  HeisenbergState() = default;
  // Throws ValidationError unless | |v| - 1 | <= norm_tol.
  explicit HeisenbergState(Eigen::VectorXcd amplitudes, double norm_tol = tol::exact);

  std::size_t dim() const { return static_cast<std::size_t>(amp_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }

 private:
  Eigen::VectorXcd amp_;
};

// The unique unit vector with q v = v for every input (global phase fixed so
// the largest component is real and positive). Inputs must be Hermitian,
// share one dimension and commute. Throws ValidationError if no joint +1
// eigenvector exists or if the joint eigenspace is degenerate.
HeisenbergState common_plus_one_state(std::span<const QNumber> z_observables,
                                      double tolerance = tol::exact);

// <Psi|A|Psi>; throws ValidationError for non-Hermitian A or a complex result.
double expectation(const QNumber& a, const HeisenbergState& state, double tolerance = tol::exact);

// |<A>^2 - <A^2>| <= tolerance
bool is_sharp(const QNumber& a, const HeisenbergState& state, double tolerance = tol::exact);

}  // namespace uqsim
