#pragma once

// Linear spans and generated associative algebras of q-numbers, commutants,
// intersections, pair classification and Hilbert-dimension inference.
//
// All spans are complex-linear. Bases are orthonormal under the
// Hilbert-Schmidt inner product Tr(A^dagger B); rank decisions use singular
// values relative to the largest one.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "uqsim/descriptor.hpp"

namespace uqsim {

enum class SpanKind { linear_span, generated_algebra };

struct AlgebraSpan {
  std::size_t dim_hilbert = 0;  // carrier dimension N
  std::vector<QNumber> basis;
  SpanKind kind = SpanKind::linear_span;

  std::size_t dimension() const { return basis.size(); }
  // Distance from x to the span (Frobenius norm of the orthogonal residual).
  double distance_to(const QNumber& x) const;
  bool contains(const QNumber& x, double tolerance = 1e-7) const;
};

AlgebraSpan linear_span(std::span<const QNumber> elements, double rank_tol = tol::rank);

// Smallest algebra containing 1 and the generators.
AlgebraSpan generated_algebra(std::span<const QNumber> generators, double rank_tol = tol::rank);

// {X in within : [X, B] = 0 for all B in sub}
AlgebraSpan commutant(const AlgebraSpan& sub, const AlgebraSpan& within, double rank_tol = tol::rank);

AlgebraSpan span_intersection(const AlgebraSpan& a, const AlgebraSpan& b, double rank_tol = tol::rank);

// Mutual containment within tolerance.
bool same_span(const AlgebraSpan& a, const AlgebraSpan& b, double tolerance = 1e-7);

// The full matrix algebra M_N with the matrix-unit basis.
AlgebraSpan full_matrix_algebra(std::size_t n);

// Real dimension of the Hermitian elements of the span.
std::size_t hermitian_real_dimension(const AlgebraSpan& s, double rank_tol = tol::rank);

std::vector<QNumber> triple_components(const DescriptorTriple& t);
std::vector<QNumber> all_components(std::span<const DescriptorTriple> triples);

enum class PairClass { commuting, maximally_noncommuting, general };

std::string_view pair_class_name(PairClass c);

PairClass classify_pair(const DescriptorTriple& a, const DescriptorTriple& b, double tolerance = tol::exact);

struct HilbertDimension {
  std::size_t algebra_dim = 0;
  std::size_t carrier_dim = 0;
  bool full = false;    // algebra is all of M_N
  bool factor = false;  // trivial centre, algebra isomorphic to M_m
  std::optional<std::size_t> hilbert_dim;  // N when full, m for a factor
};

// Requires kind == generated_algebra (ValidationError otherwise).
HilbertDimension hilbert_dimension(const AlgebraSpan& alg, double rank_tol = tol::rank);

struct AnticommutatorCheck {
  bool holds = false;
  double residual = 0.0;
  double scalar = 0.0;  // Tr(a b)
};

// {a, b} == Tr(a b) 1 on a two-dimensional carrier (ValidationError otherwise).
AnticommutatorCheck anticommutator_trace_check(const QNumber& a, const QNumber& b,
                                               double tolerance = tol::exact);

enum class Regime { maximally_noncommuting, orthodox };

// 3n for maximally non-commuting arrays, 4^n - 1 for orthodox ones.
std::uint64_t parameter_count(unsigned n_qubits, Regime regime);

}  // namespace uqsim
