#include "uqsim/descriptor.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "uqsim/error.hpp"

namespace uqsim {

const QNumber& DescriptorTriple::operator[](Axis a) const {
  switch (a) {
    case Axis::x:
      return x;
    case Axis::y:
      return y;
    case Axis::z:
      break;
  }
  return z;
}

QNumber& DescriptorTriple::operator[](Axis a) {
  return const_cast<QNumber&>(static_cast<const DescriptorTriple&>(*this)[a]);
}

DescriptorTriple pauli_triple(std::string label) {
  return {QNumber::pauli(Axis::x), QNumber::pauli(Axis::y), QNumber::pauli(Axis::z),
          std::move(label)};
}

PauliReport validate_pauli_triple(const DescriptorTriple& t, double tolerance) {
  const std::size_t n = t.x.dim();
  if (t.y.dim() != n || t.z.dim() != n) {
    throw DimensionError("descriptor triple '" + t.label + "' has components of different size");
  }
  PauliReport rep;
  const cplx i_unit{0.0, 1.0};
  const QNumber one = QNumber::identity(n);
  auto note = [&](double residual, const std::string& what) {
    if (residual > rep.worst_residual) rep.worst_residual = residual;
    if (residual > tolerance && rep.detail.empty()) {
      std::ostringstream os;
      os << what << " off by " << residual;
      rep.detail = os.str();
    }
  };
  for (int i = 0; i < 3; ++i) {
    note(t[i].hermitian_residual(), std::string("hermiticity of q") += axis_name(static_cast<Axis>(i)));
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      QNumber expected = static_cast<double>(kronecker_delta(i, j)) * one;
      for (int k = 0; k < 3; ++k) {
        if (kLeviCivita[i][j][k] != 0) expected.add_scaled(i_unit * double(kLeviCivita[i][j][k]), t[k]);
      }
      std::string what = "q";
      what += axis_name(static_cast<Axis>(i));
      what += " q";
      what += axis_name(static_cast<Axis>(j));
      note(max_abs_diff(t[i] * t[j], expected), what);
    }
  }
  rep.pass = rep.worst_residual <= tolerance;
  return rep;
}

double triple_distance(const DescriptorTriple& a, const DescriptorTriple& b) {
  double d = 0.0;
  for (Axis ax : kAxes) d = std::max(d, trace_norm(a[ax] - b[ax]));
  return d;
}

double triple_max_abs_diff(const DescriptorTriple& a, const DescriptorTriple& b) {
  double d = 0.0;
  for (Axis ax : kAxes) d = std::max(d, max_abs_diff(a[ax], b[ax]));
  return d;
}

DescriptorTriple conjugate(const DescriptorTriple& t, const QNumber& u) {
  const QNumber ud = u.adjoint();
  return {u * t.x * ud, u * t.y * ud, u * t.z * ud, t.label};
}

Eigen::Matrix3d axis_rotation(Axis axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix3d m;
  switch (axis) {
    case Axis::x:
      m << 1, 0, 0, 0, c, s, 0, -s, c;
      break;
    case Axis::y:
      m << c, 0, -s, 0, 1, 0, s, 0, c;
      break;
    case Axis::z:
      m << c, s, 0, -s, c, 0, 0, 0, 1;
      break;
  }
  return m;
}

DescriptorTriple apply_rotation(const Eigen::Matrix3d& r, const DescriptorTriple& reference) {
  DescriptorTriple out;
  out.label = reference.label;
  for (int i = 0; i < 3; ++i) {
    QNumber q = QNumber::zero(reference.dim());
    for (int j = 0; j < 3; ++j) q.add_scaled(cplx(r(i, j), 0.0), reference[j]);
    out[static_cast<Axis>(i)] = std::move(q);
  }
  return out;
}

Eigen::Matrix3d nearest_rotation(const Eigen::Matrix3d& m) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
  d(2, 2) = (svd.matrixU() * svd.matrixV().transpose()).determinant() < 0 ? -1.0 : 1.0;
  return svd.matrixU() * d * svd.matrixV().transpose();
}

namespace {

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a < 0) a += two_pi;
  if (a >= two_pi) a = 0.0;
  return a;
}

}  // namespace

RotationParameters RotationParameters::from_angles(double theta, double phi, double psi) {
  RotationParameters p;
  p.r = axis_rotation(Axis::x, theta) * axis_rotation(Axis::y, phi) * axis_rotation(Axis::z, psi);
  p.theta = wrap_angle(theta);
  p.phi = wrap_angle(phi);
  p.psi = wrap_angle(psi);
  return p;
}

RotationParameters RotationParameters::from_matrix(const Eigen::Matrix3d& r) {
  // r^T = Rz(psi) Ry(phi) Rx(theta) in the usual active convention.
  const Eigen::Matrix3d s = r.transpose();
  RotationParameters p;
  p.r = r;
  const double sin_phi = std::clamp(-s(2, 0), -1.0, 1.0);
  const double cos_phi = std::hypot(s(2, 1), s(2, 2));
  double theta = 0.0;
  double psi = 0.0;
  const double phi = std::atan2(sin_phi, cos_phi);
  if (cos_phi > 1e-12) {
    theta = std::atan2(s(2, 1), s(2, 2));
    psi = std::atan2(s(1, 0), s(0, 0));
  } else {
    psi = std::atan2(-s(0, 1), s(1, 1));
  }
  p.theta = wrap_angle(theta);
  p.phi = wrap_angle(phi);
  p.psi = wrap_angle(psi);
  return p;
}

RotationParameters rotation_parameters(const DescriptorTriple& triple,
                                       const DescriptorTriple& reference, double tolerance) {
  const std::size_t n = reference.dim();
  if (triple.dim() != n) throw DimensionError("rotation_parameters: dimension mismatch");
  if (!validate_pauli_triple(reference, tolerance).pass) {
    throw ValidationError("rotation_parameters: reference triple is not Pauli-valid");
  }
  Eigen::Matrix3d r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = trace_product(triple[i], reference[j]).real() / double(n);
  const DescriptorTriple rebuilt = apply_rotation(r, reference);
  const double residual = triple_max_abs_diff(rebuilt, triple);
  const double ortho = (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  const double det = std::abs(r.determinant() - 1.0);
  if (residual > tolerance || ortho > tolerance || det > tolerance) {
    std::ostringstream os;
    os << "triple is not a rotation of the reference (span residual " << residual
       << ", orthogonality " << ortho << ", det " << det << ")";
    throw ValidationError(os.str());
  }
  return RotationParameters::from_matrix(r);
}

HeisenbergState::HeisenbergState(Eigen::VectorXcd amplitudes, double norm_tol)
    : amp_(std::move(amplitudes)) {
  const double norm = amp_.norm();
  if (std::abs(norm - 1.0) > norm_tol) {
    std::ostringstream os;
    os << "Heisenberg state must have unit norm, got " << norm;
    throw ValidationError(os.str());
  }
}

HeisenbergState common_plus_one_state(std::span<const QNumber> z_observables, double tolerance) {
  if (z_observables.empty()) throw ValidationError("common_plus_one_state: no observables given");
  const std::size_t n = z_observables.front().dim();
  for (const QNumber& q : z_observables) {
    require_same_dim(q, z_observables.front(), "common_plus_one_state");
    if (!q.is_hermitian(tolerance)) throw ValidationError("common_plus_one_state: non-Hermitian input");
  }
  for (std::size_t a = 0; a < z_observables.size(); ++a)
    for (std::size_t b = a + 1; b < z_observables.size(); ++b)
      if (commutator(z_observables[a], z_observables[b]).max_abs() > tolerance)
        throw ValidationError("common_plus_one_state: z-observables do not commute");

  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd stacked(nn * static_cast<Eigen::Index>(z_observables.size()), nn);
  for (std::size_t a = 0; a < z_observables.size(); ++a)
    stacked.middleRows(static_cast<Eigen::Index>(a) * nn, nn) =
        z_observables[a].matrix() - Eigen::MatrixXcd::Identity(nn, nn);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = std::sqrt(tolerance) * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index nullity = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) <= cut) ++nullity;
  if (nullity == 0) throw ValidationError("common_plus_one_state: no common +1 eigenvector");
  if (nullity > 1) {
    throw ValidationError("common_plus_one_state: joint +1 eigenspace has dimension " +
                          std::to_string(nullity) + "; supply the state explicitly");
  }
  Eigen::VectorXcd v = svd.matrixV().col(nn - 1);
  Eigen::Index big = 0;
  v.cwiseAbs().maxCoeff(&big);
  v *= std::conj(v(big)) / std::abs(v(big));
  v.normalize();
  for (const QNumber& q : z_observables) {
    if ((q.matrix() * v - v).cwiseAbs().maxCoeff() > tolerance)
      throw ValidationError("common_plus_one_state: eigenvector residual above tolerance");
  }
  return HeisenbergState(std::move(v));
}

double expectation(const QNumber& a, const HeisenbergState& state, double tolerance) {
  if (a.dim() != state.dim()) {
    throw DimensionError("expectation: operator dim " + std::to_string(a.dim()) + " vs state dim " +
                         std::to_string(state.dim()));
  }
  const double scale = std::max(1.0, a.max_abs());
  if (a.hermitian_residual() > tolerance * scale) throw ValidationError("expectation: non-Hermitian operator");
  const cplx raw = state.amplitudes().dot(a.matrix() * state.amplitudes());
  if (std::abs(raw.imag()) > tolerance * scale) {
    throw ValidationError("expectation: imaginary part above tolerance");
  }
  return raw.real();
}

bool is_sharp(const QNumber& a, const HeisenbergState& state, double tolerance) {
  const double mean = expectation(a, state, tolerance);
  const double mean_sq = expectation(a * a, state, tolerance);
  return std::abs(mean * mean - mean_sq) <= tolerance;
}

}  // namespace uqsim
