#include "uqsim/hamiltonian.hpp"

#include <algorithm>
#include <sstream>

#include "uqsim/error.hpp"

namespace uqsim {

struct HamiltonianExpr::Node {
  Op op = Op::sum;
  std::string qubit;
  Axis axis = Axis::x;
  double coeff = 1.0;
  std::vector<HamiltonianExpr> children;
};

HamiltonianExpr::HamiltonianExpr() : node_(std::make_shared<Node>()) {}

HamiltonianExpr::HamiltonianExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

HamiltonianExpr HamiltonianExpr::ref(std::string qubit, Axis axis) {
  if (qubit.empty()) throw ValidationError("descriptor reference needs a qubit id");
  auto n = std::make_shared<Node>();
  n->op = Op::ref;
  n->qubit = std::move(qubit);
  n->axis = axis;
  return HamiltonianExpr(std::move(n));
}

HamiltonianExpr HamiltonianExpr::identity() {
  auto n = std::make_shared<Node>();
  n->op = Op::identity;
  return HamiltonianExpr(std::move(n));
}

HamiltonianExpr HamiltonianExpr::constant(double c) { return c * identity(); }

HamiltonianExpr HamiltonianExpr::sum(std::vector<HamiltonianExpr> terms) {
  auto n = std::make_shared<Node>();
  n->op = Op::sum;
  for (auto& t : terms)
    if (!t.is_zero()) n->children.push_back(std::move(t));
  if (n->children.size() == 1) return n->children.front();
  return HamiltonianExpr(std::move(n));
}

HamiltonianExpr HamiltonianExpr::product(HamiltonianExpr l, HamiltonianExpr r) {
  if (l.is_zero() || r.is_zero()) return {};
  auto n = std::make_shared<Node>();
  n->op = Op::product;
  n->children = {std::move(l), std::move(r)};
  return HamiltonianExpr(std::move(n));
}

HamiltonianExpr HamiltonianExpr::anticommutator(HamiltonianExpr l, HamiltonianExpr r) {
  if (l.is_zero() || r.is_zero()) return {};
  auto n = std::make_shared<Node>();
  n->op = Op::anticommutator;
  n->children = {std::move(l), std::move(r)};
  return HamiltonianExpr(std::move(n));
}

HamiltonianExpr HamiltonianExpr::i_commutator(HamiltonianExpr l, HamiltonianExpr r) {
  if (l.is_zero() || r.is_zero()) return {};
  auto n = std::make_shared<Node>();
  n->op = Op::i_commutator;
  n->children = {std::move(l), std::move(r)};
  return HamiltonianExpr(std::move(n));
}

HamiltonianExpr HamiltonianExpr::pbar(HamiltonianExpr a, HamiltonianExpr c) {
  return 0.25 * sum({constant(2.0), -anticommutator(std::move(a), std::move(c))});
}

HamiltonianExpr operator*(double c, HamiltonianExpr e) {
  if (c == 0.0 || e.is_zero()) return {};
  if (c == 1.0) return e;
  auto n = std::make_shared<HamiltonianExpr::Node>();
  n->op = HamiltonianExpr::Op::scale;
  if (e.op() == HamiltonianExpr::Op::scale) {
    n->coeff = c * e.node_->coeff;
    n->children = e.node_->children;
  } else {
    n->coeff = c;
    n->children = {std::move(e)};
  }
  return HamiltonianExpr(std::move(n));
}

HamiltonianExpr operator+(HamiltonianExpr a, HamiltonianExpr b) {
  return HamiltonianExpr::sum({std::move(a), std::move(b)});
}

HamiltonianExpr::Op HamiltonianExpr::op() const { return node_->op; }

bool HamiltonianExpr::is_zero() const { return node_->op == Op::sum && node_->children.empty(); }

std::set<std::string> HamiltonianExpr::qubits() const {
  std::set<std::string> out;
  if (node_->op == Op::ref) out.insert(node_->qubit);
  for (const auto& c : node_->children) out.merge(c.qubits());
  return out;
}

QNumber HamiltonianExpr::eval_raw(const TripleMap& descriptors, std::size_t dim) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::ref: {
      auto it = descriptors.find(n.qubit);
      if (it == descriptors.end()) throw ValidationError("Hamiltonian references unknown qubit '" + n.qubit + "'");
      const QNumber& q = it->second[n.axis];
      if (q.dim() != dim) throw DimensionError("Hamiltonian: descriptor dimension mismatch");
      return q;
    }
    case Op::identity:
      return QNumber::identity(dim);
    case Op::scale:
      return n.coeff * n.children.front().eval_raw(descriptors, dim);
    case Op::sum: {
      QNumber acc = QNumber::zero(dim);
      for (const auto& c : n.children) acc += c.eval_raw(descriptors, dim);
      return acc;
    }
    case Op::product:
      return n.children[0].eval_raw(descriptors, dim) * n.children[1].eval_raw(descriptors, dim);
    case Op::anticommutator:
      return uqsim::anticommutator(n.children[0].eval_raw(descriptors, dim),
                                   n.children[1].eval_raw(descriptors, dim));
    case Op::i_commutator:
      return cplx(0.0, 1.0) * commutator(n.children[0].eval_raw(descriptors, dim),
                                         n.children[1].eval_raw(descriptors, dim));
  }
  throw Error("unreachable Hamiltonian node");
}

QNumber HamiltonianExpr::eval(const TripleMap& descriptors, std::size_t dim, double herm_tol) const {
  QNumber h = eval_raw(descriptors, dim);
  const double residual = h.hermitian_residual();
  if (residual > herm_tol * std::max(1.0, h.max_abs())) {
    std::ostringstream os;
    os << "Hamiltonian " << to_string() << " is not Hermitian (residual " << residual << ")";
    throw ValidationError(os.str());
  }
  return h;
}

std::string HamiltonianExpr::to_string() const {
  const Node& n = *node_;
  auto two = [&](const char* open, const char* mid, const char* close) {
    return std::string(open) + n.children[0].to_string() + mid + n.children[1].to_string() + close;
  };
  switch (n.op) {
    case Op::ref:
      return n.qubit + "." + std::string(axis_name(n.axis));
    case Op::identity:
      return "1";
    case Op::scale: {
      std::ostringstream os;
      os << n.coeff << "*" << n.children.front().to_string();
      return os.str();
    }
    case Op::sum: {
      if (n.children.empty()) return "0";
      std::string s = "(";
      for (std::size_t k = 0; k < n.children.size(); ++k) {
        if (k) s += " + ";
        s += n.children[k].to_string();
      }
      return s + ")";
    }
    case Op::product:
      return two("(", " ", ")");
    case Op::anticommutator:
      return two("{", ", ", "}");
    case Op::i_commutator:
      return two("i[", ", ", "]");
  }
  return "?";
}

const std::string& HamiltonianExpr::qubit() const { return node_->qubit; }
Axis HamiltonianExpr::axis() const { return node_->axis; }
double HamiltonianExpr::coeff() const { return node_->coeff; }
const std::vector<HamiltonianExpr>& HamiltonianExpr::children() const { return node_->children; }

}  // namespace uqsim
