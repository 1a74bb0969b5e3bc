#include "uqsim/qnumber.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <string>

#include "uqsim/error.hpp"
#include "uqsim/kernels.hpp"

namespace uqsim {

std::string_view axis_name(Axis a) {
  switch (a) {
    case Axis::x:
      return "x";
    case Axis::y:
      return "y";
    case Axis::z:
      return "z";
  }
  return "?";
}

Axis parse_axis(std::string_view s) {
  if (s == "x") return Axis::x;
  if (s == "y") return Axis::y;
  if (s == "z") return Axis::z;
  throw ParseError("unknown axis '" + std::string(s) + "' (expected x, y or z)");
}

QNumber::QNumber(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw DimensionError("q-number must be square, got " + std::to_string(m_.rows()) + "x" +
                         std::to_string(m_.cols()));
  }
}

QNumber QNumber::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return QNumber(Matrix::Identity(n, n));
}

QNumber QNumber::zero(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return QNumber(Matrix::Zero(n, n));
}

QNumber QNumber::pauli(Axis a) {
  Matrix m(2, 2);
  const cplx i{0.0, 1.0};
  switch (a) {
    case Axis::x:
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    case Axis::y:
      m << 0.0, -i, i, 0.0;
      break;
    case Axis::z:
      m << 1.0, 0.0, 0.0, -1.0;
      break;
  }
  return QNumber(std::move(m));
}

QNumber QNumber::adjoint() const { return QNumber(m_.adjoint()); }

double QNumber::hermitian_residual() const {
  double worst = 0.0;
  const Eigen::Index n = m_.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i <= j; ++i)
      worst = std::max(worst, std::abs(m_(i, j) - std::conj(m_(j, i))));
  return worst;
}

double QNumber::max_abs() const { return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff(); }

QNumber& QNumber::operator+=(const QNumber& o) { return add_scaled(cplx(1.0, 0.0), o); }

QNumber& QNumber::operator-=(const QNumber& o) { return add_scaled(cplx(-1.0, 0.0), o); }

QNumber& QNumber::operator*=(cplx s) {
  m_ *= s;
  return *this;
}

QNumber& QNumber::add_scaled(cplx alpha, const QNumber& x) {
  require_same_dim(*this, x, "add");
  kernels::active().axpy(x.size(), alpha, x.data(), data());
  return *this;
}

QNumber operator*(const QNumber& a, const QNumber& b) {
  require_same_dim(a, b, "multiply");
  QNumber c = QNumber::zero(a.dim());
  kernels::active().gemm(a.dim(), a.data(), b.data(), c.data());
  return c;
}

void require_same_dim(const QNumber& a, const QNumber& b, std::string_view what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch " + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()));
  }
}

QNumber commutator(const QNumber& a, const QNumber& b) { return a * b - b * a; }

QNumber anticommutator(const QNumber& a, const QNumber& b) { return a * b + b * a; }

QNumber kron(const QNumber& a, const QNumber& b) {
  const Eigen::Index na = a.matrix().rows();
  const Eigen::Index nb = b.matrix().rows();
  QNumber::Matrix m(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < na; ++j) m.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
  return QNumber(std::move(m));
}

cplx trace_product(const QNumber& a, const QNumber& b) {
  require_same_dim(a, b, "trace_product");
  // Tr(ab) = sum_ij a_ij b_ji = <conj(a), b^T>
  return hs_inner(a.adjoint(), b);
}

cplx hs_inner(const QNumber& a, const QNumber& b) {
  require_same_dim(a, b, "hs_inner");
  return kernels::active().dotc(a.size(), a.data(), b.data());
}

double frobenius_norm(const QNumber& a) { return std::sqrt(std::abs(hs_inner(a, a))); }

double trace_norm(const QNumber& a) {
  if (a.dim() == 0) return 0.0;
  if (a.is_hermitian(1e-14)) {
    Eigen::SelfAdjointEigenSolver<QNumber::Matrix> es(a.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<QNumber::Matrix> svd(a.matrix());
  return svd.singularValues().sum();
}

double max_abs_diff(const QNumber& a, const QNumber& b) {
  require_same_dim(a, b, "max_abs_diff");
  return kernels::active().max_abs_diff(a.size(), a.data(), b.data());
}

}  // namespace uqsim
