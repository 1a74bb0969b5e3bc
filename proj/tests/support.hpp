#pragma once

// Independent oracles and random generators shared by the test binaries.

#include <Eigen/Dense>
#include <Eigen/QR>
#include <cmath>
#include <numbers>
#include <random>

#include "uqsim/descriptor.hpp"
#include "uqsim/hamiltonian.hpp"
#include "uqsim/network.hpp"
#include "uqsim/kernels.hpp"

namespace testing {

using uqsim::cplx;
using uqsim::QNumber;
using Mat = Eigen::MatrixXcd;

inline constexpr double pi = std::numbers::pi;
inline const cplx I{0.0, 1.0};

inline Mat sx() { return (Mat(2, 2) << 0, 1, 1, 0).finished(); }
inline Mat sy() { return (Mat(2, 2) << 0, -I, I, 0).finished(); }
inline Mat sz() { return (Mat(2, 2) << 1, 0, 0, -1).finished(); }
inline Mat id(Eigen::Index n) { return Mat::Identity(n, n); }

// Block-wise Kronecker product, written out independently of the library.
inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline QNumber Q(const Mat& m) { return QNumber(m); }

inline uqsim::DescriptorTriple triple(const Mat& x, const Mat& y, const Mat& z, std::string label = {}) {
  return {QNumber(x), QNumber(y), QNumber(z), std::move(label)};
}

inline uqsim::DescriptorTriple sigma(std::string label = {}) { return triple(sx(), sy(), sz(), std::move(label)); }

inline double max_diff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }
inline double max_diff(const QNumber& a, const Mat& b) { return max_diff(a.matrix(), b); }

inline double triple_diff(const uqsim::DescriptorTriple& t, const Mat& x, const Mat& y, const Mat& z) {
  return std::max({max_diff(t.x, x), max_diff(t.y, y), max_diff(t.z, z)});
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  double normal() { return std::normal_distribution<double>()(gen); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }

  Mat complex_gaussian(Eigen::Index n, Eigen::Index m) {
    Mat a(n, m);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < m; ++j) a(i, j) = cplx(normal(), normal());
    return a;
  }

  Mat hermitian(Eigen::Index n) {
    const Mat a = complex_gaussian(n, n);
    return 0.5 * (a + a.adjoint());
  }

  // Haar-random unitary (QR with phase-corrected diagonal).
  Mat unitary(Eigen::Index n) {
    Eigen::HouseholderQR<Mat> qr(complex_gaussian(n, n));
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) q.col(k) *= std::polar(1.0, std::arg(r(k, k)));
    return q;
  }

  // Rotation from Gram-Schmidt of a Gaussian matrix, determinant fixed to +1.
  Eigen::Matrix3d rotation() {
    Eigen::Matrix3d a;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) = normal();
    Eigen::HouseholderQR<Eigen::Matrix3d> qr(a);
    Eigen::Matrix3d q = qr.householderQ();
    if (q.determinant() < 0) q.col(0) = -q.col(0);
    return q;
  }
};

// q_i = sum_j R_ij ref_j computed directly on matrices.
inline uqsim::DescriptorTriple rotated(const Eigen::Matrix3d& r, const Mat& x, const Mat& y, const Mat& z,
                                       std::string label = {}) {
  const Mat* ref[3] = {&x, &y, &z};
  Mat out[3];
  for (int i = 0; i < 3; ++i) {
    out[i] = Mat::Zero(x.rows(), x.cols());
    for (int j = 0; j < 3; ++j) out[i] += r(i, j) * *ref[j];
  }
  return triple(out[0], out[1], out[2], std::move(label));
}

// Rotation about x that turns y toward z by angle a.
inline Eigen::Matrix3d rot_x_matrix(double a) {
  Eigen::Matrix3d m;
  m << 1, 0, 0, 0, std::cos(a), std::sin(a), 0, -std::sin(a), std::cos(a);
  return m;
}

// Hermitian-valued expression over the given qubits, depth at most `depth`.
inline uqsim::HamiltonianExpr random_expr(Rng& rng, const std::vector<std::string>& ids, int depth) {
  using H = uqsim::HamiltonianExpr;
  auto leaf = [&] {
    return H::ref(ids[std::size_t(rng.integer(0, int(ids.size()) - 1))], uqsim::kAxes[rng.integer(0, 2)]);
  };
  if (depth <= 0) return leaf();
  switch (rng.integer(0, 5)) {
    case 0:
      return leaf();
    case 1:
      return rng.uniform(-1.0, 1.0) * random_expr(rng, ids, depth - 1);
    case 2:
      return random_expr(rng, ids, depth - 1) + random_expr(rng, ids, depth - 1);
    case 3:
      return 0.5 * H::anticommutator(random_expr(rng, ids, depth - 1), random_expr(rng, ids, depth - 1));
    case 4:
      return 0.5 * H::i_commutator(random_expr(rng, ids, depth - 1), random_expr(rng, ids, depth - 1));
    default:
      return H::pbar(leaf(), leaf());
  }
}

struct RandomNetwork {
  uqsim::TripleMap qubits;
  uqsim::HamiltonianMap hamiltonians;
};

// Up to three qubits in a random mix of shared and separate factors, each
// with a random Hamiltonian (possibly zero).
inline RandomNetwork random_network(Rng& rng) {
  RandomNetwork net;
  const int n = rng.integer(1, 3);
  const int factors = rng.integer(1, n);
  std::vector<std::string> ids;
  for (int k = 0; k < n; ++k) {
    const std::string id = "q" + std::to_string(k + 1);
    ids.push_back(id);
    const std::size_t slot = k < factors ? std::size_t(k) : std::size_t(rng.integer(0, factors - 1));
    net.qubits[id] = rotated(rng.rotation(), uqsim::tensor_slot_triple(slot, std::size_t(factors)).x.matrix(),
                             uqsim::tensor_slot_triple(slot, std::size_t(factors)).y.matrix(),
                             uqsim::tensor_slot_triple(slot, std::size_t(factors)).z.matrix(), id);
  }
  for (const auto& id : ids)
    if (rng.integer(0, 3) > 0) net.hamiltonians[id] = random_expr(rng, ids, 2);
  return net;
}

}  // namespace testing
