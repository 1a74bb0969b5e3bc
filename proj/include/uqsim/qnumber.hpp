#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <string_view>

namespace uqsim {

using cplx = std::complex<double>;

namespace tol {
// Exactly constructed matrices (Pauli, tensor products, closed forms).
inline constexpr double exact = 1e-9;
// Quantities carried through ODE integration.
inline constexpr double evolved = 1e-6;
// Relative singular-value threshold for rank decisions.
inline constexpr double rank = 1e-8;
inline constexpr double rank_evolved = 1e-6;
}  // namespace tol

enum class Axis { x = 0, y = 1, z = 2 };

inline constexpr Axis kAxes[3] = {Axis::x, Axis::y, Axis::z};

std::string_view axis_name(Axis a);
Axis parse_axis(std::string_view s);

// A q-number: a square complex matrix on the network's Hilbert space.
class QNumber {
 public:
  using Matrix = Eigen::MatrixXcd;

  QNumber() = default;
  explicit QNumber(Matrix m);

  static QNumber identity(std::size_t dim);
  static QNumber zero(std::size_t dim);
  static QNumber pauli(Axis a);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  cplx operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const cplx* data() const { return m_.data(); }
  cplx* data() { return m_.data(); }
  std::size_t size() const { return static_cast<std::size_t>(m_.size()); }

  QNumber adjoint() const;
  cplx trace() const { return m_.trace(); }

  // max |A_ij - conj(A_ji)|
  double hermitian_residual() const;
  bool is_hermitian(double tolerance = tol::exact) const {
    return hermitian_residual() <= tolerance;
  }
  double max_abs() const;

  QNumber& operator+=(const QNumber& o);
  QNumber& operator-=(const QNumber& o);
  QNumber& operator*=(cplx s);
  // this += alpha * x
  QNumber& add_scaled(cplx alpha, const QNumber& x);

  friend QNumber operator+(QNumber a, const QNumber& b) { return a += b; }
  friend QNumber operator-(QNumber a, const QNumber& b) { return a -= b; }
  friend QNumber operator*(QNumber a, cplx s) { return a *= s; }
  friend QNumber operator*(cplx s, QNumber a) { return a *= s; }
  friend QNumber operator*(double s, QNumber a) { return a *= cplx(s, 0.0); }
  friend QNumber operator*(QNumber a, double s) { return a *= cplx(s, 0.0); }
  friend QNumber operator-(QNumber a) { return a *= cplx(-1.0, 0.0); }
  friend QNumber operator*(const QNumber& a, const QNumber& b);

 private:
  Matrix m_;
};

void require_same_dim(const QNumber& a, const QNumber& b, std::string_view what);

QNumber commutator(const QNumber& a, const QNumber& b);
QNumber anticommutator(const QNumber& a, const QNumber& b);
QNumber kron(const QNumber& a, const QNumber& b);

// Tr(a b)
cplx trace_product(const QNumber& a, const QNumber& b);
// Tr(a^dagger b), the Hilbert-Schmidt inner product.
cplx hs_inner(const QNumber& a, const QNumber& b);
double frobenius_norm(const QNumber& a);
// Sum of singular values.
double trace_norm(const QNumber& a);
double max_abs_diff(const QNumber& a, const QNumber& b);

}  // namespace uqsim
