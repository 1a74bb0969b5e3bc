#pragma once

// Hamiltonians as expression trees over descriptor symbols, evaluated against
// the current descriptors of a network.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "uqsim/descriptor.hpp"

namespace uqsim {

using TripleMap = std::map<std::string, DescriptorTriple, std::less<>>;

class HamiltonianExpr {
 public:
  enum class Op { ref, identity, scale, sum, product, anticommutator, i_commutator };

  // The zero expression (an empty sum).
  HamiltonianExpr();

  static HamiltonianExpr ref(std::string qubit, Axis axis);
  static HamiltonianExpr identity();
  static HamiltonianExpr constant(double c);  // c * 1
  static HamiltonianExpr sum(std::vector<HamiltonianExpr> terms);
  static HamiltonianExpr product(HamiltonianExpr l, HamiltonianExpr r);
  static HamiltonianExpr anticommutator(HamiltonianExpr l, HamiltonianExpr r);
  // i [l, r], Hermitian when l and r are.
  static HamiltonianExpr i_commutator(HamiltonianExpr l, HamiltonianExpr r);
  // (2*1 - {a, c}) / 4
  static HamiltonianExpr pbar(HamiltonianExpr a, HamiltonianExpr c);

  friend HamiltonianExpr operator*(double c, HamiltonianExpr e);
  friend HamiltonianExpr operator+(HamiltonianExpr a, HamiltonianExpr b);
  friend HamiltonianExpr operator-(HamiltonianExpr e) { return -1.0 * std::move(e); }

  Op op() const;
  bool is_zero() const;  // structurally zero
  std::set<std::string> qubits() const;

  // Throws ValidationError for unknown qubits or a non-Hermitian result
  // (hermiticity residual above herm_tol * max(1, max|H|)).
  QNumber eval(const TripleMap& descriptors, std::size_t dim, double herm_tol = tol::exact) const;
  // Same without the hermiticity check.
  QNumber eval_raw(const TripleMap& descriptors, std::size_t dim) const;

  std::string to_string() const;

  // Node accessors for serialisation.
  const std::string& qubit() const;  // ref nodes
  Axis axis() const;                 // ref nodes
  double coeff() const;              // scale nodes
  const std::vector<HamiltonianExpr>& children() const;

 private:
  struct Node;
  explicit HamiltonianExpr(std::shared_ptr<const Node> n);
  std::shared_ptr<const Node> node_;
};

using HamiltonianMap = std::map<std::string, HamiltonianExpr, std::less<>>;

}  // namespace uqsim
