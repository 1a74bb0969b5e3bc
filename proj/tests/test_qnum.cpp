#include "doctest.h"
#include "support.hpp"
#include "uqsim/error.hpp"

using namespace testing;
using namespace uqsim;

TEST_CASE("pauli triple satisfies the algebra") {
  const auto r = validate_pauli_triple(sigma());
  CHECK(r.pass);
  CHECK(r.worst_residual < 1e-15);
  CHECK(triple_diff(pauli_triple(), sx(), sy(), sz()) == 0.0);
}

TEST_CASE("swapping y and z breaks the algebra") {
  const auto r = validate_pauli_triple(triple(sx(), sz(), sy()));
  CHECK_FALSE(r.pass);
  CHECK(r.worst_residual > 1.0);
  CHECK_FALSE(r.detail.empty());
}

TEST_CASE("two-factor triples built by tensor products pass") {
  const Mat one = id(2);
  CHECK(validate_pauli_triple(triple(kron(sx(), one), kron(sy(), one), kron(sz(), one))).pass);
  CHECK(validate_pauli_triple(triple(kron(one, sx()), kron(one, sy()), kron(one, sz()))).pass);
  // Mixed factors: x and y on the first factor, z product of both.
  CHECK(validate_pauli_triple(triple(kron(sx(), sz()), kron(sy(), sz()), kron(sz(), one))).pass);
}

TEST_CASE("non-hermitian or mismatched triples") {
  CHECK_FALSE(validate_pauli_triple(triple(sx(), I * sy(), sz())).pass);
  CHECK_THROWS_AS(validate_pauli_triple(triple(sx(), sy(), kron(sz(), id(2)))), DimensionError);
}

TEST_CASE("common +1 eigenvector") {
  SUBCASE("single qubit") {
    const std::vector<QNumber> zs{Q(sz())};
    const auto s = common_plus_one_state(zs);
    CHECK(std::abs(s.amplitudes()(0) - 1.0) < 1e-12);
    CHECK(std::abs(s.amplitudes()(1)) < 1e-12);
  }
  SUBCASE("two factors") {
    const std::vector<QNumber> zs{Q(kron(sz(), id(2))), Q(kron(id(2), sz()))};
    const auto s = common_plus_one_state(zs);
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(4);
    e0(0) = 1.0;
    CHECK((s.amplitudes() - e0).norm() < 1e-12);
  }
  SUBCASE("repeated observable") {
    const std::vector<QNumber> zs{Q(sz()), Q(sz())};
    CHECK(std::abs(common_plus_one_state(zs).amplitudes()(0) - 1.0) < 1e-12);
  }
  SUBCASE("x eigenvector has equal real components") {
    const std::vector<QNumber> zs{Q(sx())};
    const auto a = common_plus_one_state(zs).amplitudes();
    CHECK(std::abs(a(0) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(a(1) - 1.0 / std::sqrt(2.0)) < 1e-12);
  }
  SUBCASE("no joint eigenvector") {
    const std::vector<QNumber> zs{Q(sz()), Q(-sz())};
    CHECK_THROWS_AS(common_plus_one_state(zs), ValidationError);
  }
  SUBCASE("degenerate") {
    const std::vector<QNumber> zs{Q(kron(sz(), id(2)))};
    CHECK_THROWS_AS(common_plus_one_state(zs), ValidationError);
  }
  SUBCASE("non-commuting inputs") {
    const std::vector<QNumber> zs{Q(sz()), Q(sx())};
    CHECK_THROWS_AS(common_plus_one_state(zs), ValidationError);
  }
  SUBCASE("non-hermitian input") {
    const std::vector<QNumber> zs{Q(I * sz())};
    CHECK_THROWS_AS(common_plus_one_state(zs), ValidationError);
  }
}

TEST_CASE("heisenberg state requires unit norm") {
  Eigen::VectorXcd v(2);
  v << 1.0, 1.0;
  CHECK_THROWS_AS(HeisenbergState{v}, ValidationError);
  v /= std::sqrt(2.0);
  CHECK_NOTHROW(HeisenbergState{v});
}

TEST_CASE("expectation values") {
  const std::vector<QNumber> zs{Q(sz())};
  const auto up = common_plus_one_state(zs);
  CHECK(std::abs(expectation(Q(sz()), up) - 1.0) < 1e-12);
  CHECK(std::abs(expectation(Q(sx()), up)) < 1e-12);
  CHECK(std::abs(expectation(Q(sy()), up)) < 1e-12);
  for (double a : {0.0, 0.3, 1.1, pi / 2}) {
    // y-descriptor rotated toward z by a.
    const Mat qy = std::cos(a) * sy() + std::sin(a) * sz();
    CHECK(std::abs(expectation(Q(qy), up) - std::sin(a)) < 1e-12);
  }
  CHECK_THROWS_AS(expectation(Q(I * sz()), up), ValidationError);
  CHECK_THROWS_AS(expectation(Q(kron(sz(), sz())), up), DimensionError);
}

TEST_CASE("sharpness") {
  const std::vector<QNumber> zs{Q(sz())};
  const auto up = common_plus_one_state(zs);
  CHECK(is_sharp(Q(sz()), up));
  CHECK(is_sharp(Q(-sz()), up));
  CHECK(is_sharp(Q(id(2)), up));
  CHECK_FALSE(is_sharp(Q(sy()), up));
  CHECK_FALSE(is_sharp(Q(sx()), up));
  CHECK_FALSE(is_sharp(Q(0.6 * sz() + 0.8 * sx()), up));
}

TEST_CASE("rotation parameters of the identity") {
  const auto p = rotation_parameters(sigma(), sigma());
  CHECK((p.r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(p.theta == doctest::Approx(0.0));
  CHECK(p.phi == doctest::Approx(0.0));
  CHECK(p.psi == doctest::Approx(0.0));
}

TEST_CASE("rotation about x") {
  for (double phi : {0.2, pi / 2, 2.5, 4.0}) {
    const Mat qy = std::cos(phi) * sy() + std::sin(phi) * sz();
    const Mat qz = std::cos(phi) * sz() - std::sin(phi) * sy();
    const auto p = rotation_parameters(triple(sx(), qy, qz), sigma());
    CHECK((p.r - rot_x_matrix(phi)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(p.theta == doctest::Approx(phi).epsilon(1e-12));
    CHECK(std::abs(std::sin(p.phi)) < 1e-12);
    CHECK(std::abs(std::sin(p.psi)) < 1e-12);
    CHECK((axis_rotation(Axis::x, phi) - rot_x_matrix(phi)).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("euler angles reproduce the composed matrix") {
  Rng rng(11);
  for (int k = 0; k < 20; ++k) {
    const double th = rng.uniform(0, 2 * pi), ph = rng.uniform(-1.4, 1.4), ps = rng.uniform(0, 2 * pi);
    const auto p = RotationParameters::from_angles(th, ph, ps);
    const Eigen::Matrix3d expect = axis_rotation(Axis::x, th) * axis_rotation(Axis::y, ph) * axis_rotation(Axis::z, ps);
    CHECK((p.r - expect).cwiseAbs().maxCoeff() < 1e-12);
    const auto back = RotationParameters::from_matrix(p.r);
    CHECK((RotationParameters::from_angles(back.theta, back.phi, back.psi).r - p.r).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("rotation recovery on random rotations") {
  Rng rng(12);
  for (int k = 0; k < 20; ++k) {
    const Eigen::Matrix3d r = rng.rotation();
    const auto p = rotation_parameters(rotated(r, sx(), sy(), sz()), sigma());
    CHECK((p.r - r).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("non-rotations are rejected") {
  CHECK_THROWS_AS(rotation_parameters(triple(sx(), sz(), sy()), sigma()), ValidationError);
  CHECK_THROWS_AS(rotation_parameters(triple(2 * sx(), sy(), sz()), sigma()), ValidationError);
  CHECK_THROWS_AS(rotation_parameters(triple(kron(sx(), id(2)), kron(sy(), id(2)), kron(sz(), id(2))), sigma()),
                  DimensionError);
}

TEST_CASE("qnumber basics") {
  CHECK_THROWS_AS(QNumber(Mat(2, 3)), DimensionError);
  CHECK(std::abs(trace_norm(Q(sx())) - 2.0) < 1e-12);
  CHECK(std::abs(hs_inner(Q(sy()), Q(sy())) - cplx(2.0)) < 1e-12);
  CHECK(std::abs(trace_product(Q(sx()), Q(sy()))) < 1e-12);
  CHECK(max_diff(commutator(Q(sx()), Q(sy())), 2.0 * I * sz()) < 1e-15);
  CHECK(max_diff(anticommutator(Q(sx()), Q(sy())), Mat::Zero(2, 2)) < 1e-15);
  CHECK(max_diff(kron(Q(sx()), Q(sz())), testing::kron(sx(), sz())) == 0.0);
  CHECK(max_diff(QNumber::pauli(Axis::y), sy()) == 0.0);
  CHECK(parse_axis("z") == Axis::z);
  CHECK_THROWS_AS(parse_axis("w"), ParseError);
  CHECK_THROWS_AS(Q(sx()) + Q(id(4)), DimensionError);
}

TEST_CASE("conjugation preserves the algebra") {
  Rng rng(13);
  for (int k = 0; k < 10; ++k) {
    const auto u = Q(rng.unitary(4));
    const auto t = conjugate(triple(kron(sx(), id(2)), kron(sy(), id(2)), kron(sz(), id(2))), u);
    CHECK(validate_pauli_triple(t).pass);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(trace_product(t[i], t[j]) - cplx(i == j ? 4.0 : 0.0)) < 1e-10);
  }
}
