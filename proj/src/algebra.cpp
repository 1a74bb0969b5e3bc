#include "uqsim/algebra.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "uqsim/error.hpp"

namespace uqsim {
namespace {

using Mat = Eigen::MatrixXcd;

Eigen::Index sq(std::size_t n) { return static_cast<Eigen::Index>(n * n); }

Eigen::Map<const Eigen::VectorXcd> vec(const QNumber& q) {
  return {q.data(), static_cast<Eigen::Index>(q.size())};
}

QNumber unvec(const Eigen::Ref<const Eigen::VectorXcd>& v, std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  return QNumber(Eigen::Map<const Mat>(v.data(), nn, nn));
}

std::size_t common_dim(std::span<const QNumber> xs, const char* what) {
  if (xs.empty()) throw ValidationError(std::string(what) + ": empty input");
  for (const QNumber& q : xs) require_same_dim(q, xs.front(), what);
  return xs.front().dim();
}

// Orthonormal basis of the column span of `m` (columns are vectorised
// matrices). Rank from singular values relative to the largest.
std::vector<QNumber> orthonormal_columns(const Mat& m, std::size_t n, double rank_tol) {
  std::vector<QNumber> out;
  if (m.cols() == 0) return out;
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return out;
  const double cut = rank_tol * s(0);
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > cut) out.push_back(unvec(svd.matrixU().col(k), n));
  }
  return out;
}

Mat stack(std::span<const QNumber> xs, std::size_t n) {
  Mat m(sq(n), static_cast<Eigen::Index>(xs.size()));
  for (std::size_t k = 0; k < xs.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = vec(xs[k]);
  return m;
}

// Orthonormal basis of the null space of m (as coefficient vectors).
Mat null_space(const Mat& m, double rank_tol) {
  if (m.cols() == 0) return Mat(0, 0);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double top = s.size() ? s(0) : 0.0;
  const double cut = rank_tol * std::max(top, 1.0);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > cut) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

}  // namespace

double AlgebraSpan::distance_to(const QNumber& x) const {
  QNumber r = x;
  for (const QNumber& b : basis) r.add_scaled(-hs_inner(b, x), b);
  return frobenius_norm(r);
}

bool AlgebraSpan::contains(const QNumber& x, double tolerance) const {
  return distance_to(x) <= tolerance * std::max(1.0, frobenius_norm(x));
}

AlgebraSpan linear_span(std::span<const QNumber> elements, double rank_tol) {
  const std::size_t n = common_dim(elements, "linear_span");
  return {n, orthonormal_columns(stack(elements, n), n, rank_tol), SpanKind::linear_span};
}

AlgebraSpan generated_algebra(std::span<const QNumber> generators, double rank_tol) {
  const std::size_t n = common_dim(generators, "generated_algebra");
  std::vector<QNumber> seed{QNumber::identity(n)};
  seed.insert(seed.end(), generators.begin(), generators.end());
  std::vector<QNumber> basis = orthonormal_columns(stack(seed, n), n, rank_tol);
  // Grow by left multiplication with the generators until the span is stable.
  for (;;) {
    std::vector<QNumber> candidates = basis;
    candidates.reserve(basis.size() * (generators.size() + 1));
    for (const QNumber& g : generators)
      for (const QNumber& b : basis) candidates.push_back(g * b);
    std::vector<QNumber> next = orthonormal_columns(stack(candidates, n), n, rank_tol);
    const bool stable = next.size() == basis.size();
    basis = std::move(next);
    if (stable || basis.size() >= n * n) break;
  }
  return {n, std::move(basis), SpanKind::generated_algebra};
}

AlgebraSpan commutant(const AlgebraSpan& sub, const AlgebraSpan& within, double rank_tol) {
  if (sub.dim_hilbert != within.dim_hilbert) throw DimensionError("commutant: dimension mismatch");
  const std::size_t n = within.dim_hilbert;
  const auto rows_per = sq(n);
  Mat m(rows_per * static_cast<Eigen::Index>(std::max<std::size_t>(sub.basis.size(), 1)),
        static_cast<Eigen::Index>(within.basis.size()));
  m.setZero();
  for (std::size_t j = 0; j < within.basis.size(); ++j)
    for (std::size_t i = 0; i < sub.basis.size(); ++i)
      m.block(static_cast<Eigen::Index>(i) * rows_per, static_cast<Eigen::Index>(j), rows_per, 1) =
          vec(commutator(within.basis[j], sub.basis[i]));
  const Mat coeffs = null_space(m, rank_tol);
  std::vector<QNumber> basis;
  for (Eigen::Index c = 0; c < coeffs.cols(); ++c) {
    QNumber x = QNumber::zero(n);
    for (std::size_t j = 0; j < within.basis.size(); ++j)
      x.add_scaled(coeffs(static_cast<Eigen::Index>(j), c), within.basis[j]);
    basis.push_back(std::move(x));
  }
  return {n, std::move(basis), within.kind};
}

AlgebraSpan span_intersection(const AlgebraSpan& a, const AlgebraSpan& b, double rank_tol) {
  if (a.dim_hilbert != b.dim_hilbert) throw DimensionError("span_intersection: dimension mismatch");
  const std::size_t n = a.dim_hilbert;
  const auto ka = static_cast<Eigen::Index>(a.basis.size());
  const auto kb = static_cast<Eigen::Index>(b.basis.size());
  AlgebraSpan out{n, {}, SpanKind::linear_span};
  if (ka == 0 || kb == 0) return out;
  Mat m(sq(n), ka + kb);
  m.leftCols(ka) = stack(a.basis, n);
  m.rightCols(kb) = -stack(b.basis, n);
  const Mat coeffs = null_space(m, rank_tol);
  if (coeffs.cols() == 0) return out;
  const Mat elems = stack(a.basis, n) * coeffs.topRows(ka);
  out.basis = orthonormal_columns(elems, n, rank_tol);
  return out;
}

bool same_span(const AlgebraSpan& a, const AlgebraSpan& b, double tolerance) {
  if (a.dim_hilbert != b.dim_hilbert || a.dimension() != b.dimension()) return false;
  for (const QNumber& x : a.basis)
    if (!b.contains(x, tolerance)) return false;
  for (const QNumber& x : b.basis)
    if (!a.contains(x, tolerance)) return false;
  return true;
}

AlgebraSpan full_matrix_algebra(std::size_t n) {
  AlgebraSpan s{n, {}, SpanKind::generated_algebra};
  const auto nn = static_cast<Eigen::Index>(n);
  for (Eigen::Index j = 0; j < nn; ++j)
    for (Eigen::Index i = 0; i < nn; ++i) {
      Mat e = Mat::Zero(nn, nn);
      e(i, j) = 1.0;
      s.basis.emplace_back(std::move(e));
    }
  return s;
}

std::size_t hermitian_real_dimension(const AlgebraSpan& s, double rank_tol) {
  if (s.basis.empty()) return 0;
  const auto len = sq(s.dim_hilbert);
  // Real-vectorise (X + X^dagger)/2 and (X - X^dagger)/(2i) for every basis element.
  Eigen::MatrixXd m(2 * len, 2 * static_cast<Eigen::Index>(s.basis.size()));
  Eigen::Index col = 0;
  for (const QNumber& x : s.basis) {
    const Mat xd = x.matrix().adjoint();
    const Mat herm[2] = {0.5 * (x.matrix() + xd), cplx(0.0, -0.5) * (x.matrix() - xd)};
    for (const Mat& h : herm) {
      Eigen::Map<const Eigen::VectorXcd> v(h.data(), len);
      m.col(col).head(len) = v.real();
      m.col(col).tail(len) = v.imag();
      ++col;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > rank_tol * sv(0)) ++r;
  return r;
}

std::vector<QNumber> triple_components(const DescriptorTriple& t) { return {t.x, t.y, t.z}; }

std::vector<QNumber> all_components(std::span<const DescriptorTriple> triples) {
  std::vector<QNumber> out;
  out.reserve(3 * triples.size());
  for (const DescriptorTriple& t : triples) {
    out.push_back(t.x);
    out.push_back(t.y);
    out.push_back(t.z);
  }
  return out;
}

std::string_view pair_class_name(PairClass c) {
  switch (c) {
    case PairClass::commuting:
      return "commuting";
    case PairClass::maximally_noncommuting:
      return "maximally-noncommuting";
    case PairClass::general:
      return "general";
  }
  return "?";
}

PairClass classify_pair(const DescriptorTriple& a, const DescriptorTriple& b, double tolerance) {
  if (a.dim() != b.dim()) throw DimensionError("classify_pair: dimension mismatch");
  double worst = 0.0;
  for (Axis i : kAxes)
    for (Axis j : kAxes) worst = std::max(worst, commutator(a[i], b[j]).max_abs());
  if (worst <= tolerance) return PairClass::commuting;
  const auto ca = triple_components(a);
  const auto cb = triple_components(b);
  const double span_tol = std::max(tolerance, 1e-12) * 100.0;
  if (same_span(linear_span(ca), linear_span(cb), span_tol)) return PairClass::maximally_noncommuting;
  return PairClass::general;
}

HilbertDimension hilbert_dimension(const AlgebraSpan& alg, double rank_tol) {
  if (alg.kind != SpanKind::generated_algebra) {
    throw ValidationError("hilbert_dimension: requires a generated algebra");
  }
  HilbertDimension h;
  h.algebra_dim = alg.dimension();
  h.carrier_dim = alg.dim_hilbert;
  if (h.algebra_dim == h.carrier_dim * h.carrier_dim) {
    h.full = true;
    h.factor = true;
    h.hilbert_dim = h.carrier_dim;
    return h;
  }
  const AlgebraSpan centre = commutant(alg, alg, rank_tol);
  const auto m = static_cast<std::size_t>(std::llround(std::sqrt(double(h.algebra_dim))));
  if (centre.dimension() == 1 && m * m == h.algebra_dim) {
    h.factor = true;
    h.hilbert_dim = m;
  }
  return h;
}

AnticommutatorCheck anticommutator_trace_check(const QNumber& a, const QNumber& b, double tolerance) {
  require_same_dim(a, b, "anticommutator_trace_check");
  if (a.dim() != 2) {
    throw ValidationError("anticommutator_trace_check: identity holds only on a 2-dimensional carrier");
  }
  if (!a.is_hermitian(tolerance) || !b.is_hermitian(tolerance)) {
    throw ValidationError("anticommutator_trace_check: inputs must be Hermitian");
  }
  AnticommutatorCheck c;
  c.scalar = trace_product(a, b).real();
  c.residual = max_abs_diff(anticommutator(a, b), c.scalar * QNumber::identity(2));
  c.holds = c.residual <= tolerance;
  return c;
}

std::uint64_t parameter_count(unsigned n_qubits, Regime regime) {
  if (n_qubits == 0) throw ValidationError("parameter_count: need at least one qubit");
  if (regime == Regime::maximally_noncommuting) return 3ull * n_qubits;
  if (n_qubits > 31) throw ValidationError("parameter_count: 4^n - 1 overflows for n > 31");
  return (std::uint64_t{1} << (2 * n_qubits)) - 1;
}

}  // namespace uqsim
