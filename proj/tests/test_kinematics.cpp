#include <doctest.h>

#include "test_support.hpp"
#include "wigner/kinematics.hpp"

using namespace wigner;
using wigner::testing::max_abs;

namespace {

// X = p0 I + sigma.p; an SL(2,C) element acts as X -> A X A^dagger.
Matrix2cd hermitian_form(const Vector4<double>& p) {
  return p(0) * Matrix2cd::Identity() + pauli_dot(p.tail<3>());
}

Vector4<double> from_hermitian_form(const Matrix2cd& x) {
  return {0.5 * x.trace().real(), x(1, 0).real(), x(1, 0).imag(), 0.5 * (x(0, 0) - x(1, 1)).real()};
}

double special_unitary_defect(const Matrix2cd& d) {
  return std::max(max_abs(d.adjoint() * d - Matrix2cd::Identity()), std::abs(d.determinant() - 1.0));
}

}  // namespace

TEST_CASE("FourMomentum stays on the mass shell") {
  const FourMomentumd q(2.0, Vector3d(0.3, -1.2, 0.5));
  CHECK(q.energy() == doctest::Approx(std::sqrt(4.0 + 0.09 + 1.44 + 0.25)).epsilon(1e-15));
  CHECK(q.energy() >= q.mass());
  CHECK_THROWS_AS(FourMomentumd(0.0, Vector3d::Zero()), std::invalid_argument);
  CHECK_THROWS_AS(FourMomentumd(-1.0, Vector3d::Zero()), std::invalid_argument);
}

TEST_CASE("LorentzElement accessors") {
  const LorentzElementd b = LorentzElementd::boost(Vector3d(0.0, 3.0, 4.0), 0.8);
  CHECK(b.kind() == LorentzKind::Boost);
  CHECK(std::abs(b.axis().norm() - 1.0) <= 1e-14);
  CHECK(b.beta() == doctest::Approx(std::tanh(0.8)));
  CHECK(b.gamma() == doctest::Approx(1.0 / std::sqrt(1.0 - std::tanh(0.8) * std::tanh(0.8))));
  CHECK(b.gamma() >= 1.0);
  CHECK(std::abs(b.beta()) < 1.0);
  CHECK_THROWS_AS(LorentzElementd::boost(Vector3d::Zero(), 1.0), std::invalid_argument);

  const LorentzElementd r = LorentzElementd::rotation(Vector3d::UnitZ(), 0.3);
  CHECK(r.kind() == LorentzKind::Rotation);
  CHECK(r.angle() == 0.3);
  CHECK(r.rapidity() == 0.0);

  const LorentzElementd c = r * b;
  CHECK(c.kind() == LorentzKind::Composite);
  REQUIRE(c.factors().size() == 2);
  CHECK(c.factors()[0].kind() == LorentzKind::Boost);
  CHECK(c.factors()[1].kind() == LorentzKind::Rotation);
  CHECK((c * c).factors().size() == 4);
}

TEST_CASE("boost_momentum examples") {
  const FourMomentumd rest = FourMomentumd::at_rest(1.0);
  const FourMomentumd same = boost_momentum(LorentzElementd::identity(), rest);
  CHECK(same.momentum().norm() == 0.0);
  CHECK(same.energy() == 1.0);

  const double alpha = 0.9;
  const FourMomentumd moved = boost_momentum(LorentzElementd::boost(Vector3d::UnitX(), alpha), rest);
  CHECK(moved.momentum().x() == doctest::Approx(std::sinh(alpha)).epsilon(1e-15));
  CHECK(std::abs(moved.momentum().y()) < 1e-300);
  CHECK(std::abs(moved.momentum().z()) < 1e-300);
  CHECK(moved.energy() == doctest::Approx(std::cosh(alpha)).epsilon(1e-15));
}

TEST_CASE("boost_momentum composes like the 4x4 matrices") {
  wigner::testing::Random rng(11);
  for (int i = 0; i < 200; ++i) {
    const LorentzElementd l1 = i % 3 ? rng.boost(2.0) : rng.rotation();
    const LorentzElementd l2 = rng.boost(2.0) * rng.rotation();
    const FourMomentumd q = rng.momentum(rng.uniform(0.2, 3.0), 3.0);
    // Oracle: raw matrix products applied to the component vector.
    const Vector4<double> oracle = l2.matrix() * (l1.matrix() * q.components());
    const FourMomentumd nested = boost_momentum(l2, boost_momentum(l1, q));
    const FourMomentumd composed = boost_momentum(l2 * l1, q);
    const double scale = oracle(0);
    CHECK((nested.components() - oracle).cwiseAbs().maxCoeff() / scale <= 1e-12);
    CHECK((composed.components() - oracle).cwiseAbs().maxCoeff() / scale <= 1e-12);
  }
}

TEST_CASE("inverse round trip and Minkowski norm") {
  wigner::testing::Random rng(12);
  for (int i = 0; i < 200; ++i) {
    const LorentzElementd l = rng.boost(3.0) * rng.rotation() * rng.boost(1.0);
    const FourMomentumd q = rng.momentum(1.0, 2.0);
    const FourMomentumd back = boost_momentum(l.inverse(), boost_momentum(l, q));
    CHECK((back.components() - q.components()).cwiseAbs().maxCoeff() / q.energy() <= 1e-12);

    const Vector4<double> v = l.matrix() * q.components();
    CHECK(std::abs(v(0) * v(0) - v.tail<3>().squaredNorm() - 1.0) <= 1e-12 * v(0) * v(0));
  }
}

TEST_CASE("collinear rapidities add") {
  const Vector3d axis = Vector3d(1.0, -2.0, 0.5).normalized();
  const LorentzElementd sum = LorentzElementd::boost(axis, 0.4) * LorentzElementd::boost(axis, 1.1);
  const LorentzElementd direct = LorentzElementd::boost(axis, 1.5);
  CHECK((sum.matrix() - direct.matrix()).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK(max_abs(sum.sl2() - direct.sl2()) <= 1e-13);
}

TEST_CASE("SL(2,C) image and 4x4 matrix describe the same transformation") {
  wigner::testing::Random rng(13);
  for (int i = 0; i < 100; ++i) {
    const LorentzElementd l = rng.boost(2.0) * rng.rotation();
    const FourMomentumd q = rng.momentum(1.0, 2.0);
    const Matrix2cd x = l.sl2() * hermitian_form(q.components()) * l.sl2().adjoint();
    const Vector4<double> via_sl2 = from_hermitian_form(x);
    const Vector4<double> via_matrix = l.matrix() * q.components();
    CHECK((via_sl2 - via_matrix).cwiseAbs().maxCoeff() / via_matrix(0) <= 1e-12);
    CHECK(std::abs(l.sl2().determinant() - 1.0) <= 1e-12);
  }
}

TEST_CASE("standard boost") {
  SUBCASE("rest momentum gives the identity") {
    CHECK(max_abs(standard_boost_sl2(FourMomentumd::at_rest(1.7)) - Matrix2cd::Identity()) <= 1e-15);
  }
  SUBCASE("eigenvalues exp(+-alpha/2) along x") {
    const double alpha = 1.3;
    const Matrix2cd h = standard_boost_sl2(FourMomentumd(1.0, Vector3d(std::sinh(alpha), 0, 0)));
    Eigen::SelfAdjointEigenSolver<Matrix2cd> solver(h);
    CHECK(solver.eigenvalues()(0) == doctest::Approx(std::exp(-alpha / 2)).epsilon(1e-13));
    CHECK(solver.eigenvalues()(1) == doctest::Approx(std::exp(alpha / 2)).epsilon(1e-13));
  }
  SUBCASE("Hermitian, positive, unimodular for random momenta") {
    wigner::testing::Random rng(14);
    for (int i = 0; i < 100; ++i) {
      const FourMomentumd q = rng.momentum(rng.uniform(0.1, 5.0), 10.0);
      const Matrix2cd h = standard_boost_sl2(q);
      CHECK(max_abs(h - h.adjoint()) <= 1e-14 * max_abs(h));
      CHECK(std::abs(h.determinant() - 1.0) <= 1e-12);
      Eigen::SelfAdjointEigenSolver<Matrix2cd> solver(h);
      CHECK(solver.eigenvalues()(0) > 0.0);
      CHECK(max_abs(h * inverse_standard_boost_sl2(q) - Matrix2cd::Identity()) <= 1e-12);
      // H(q) takes the rest momentum to q.
      const Matrix2cd x = h * (q.mass() * Matrix2cd::Identity()) * h.adjoint();
      CHECK((from_hermitian_form(x) - q.components()).cwiseAbs().maxCoeff() <= 1e-12 * q.energy());
    }
  }
}

TEST_CASE("wigner_rotation examples") {
  wigner::testing::Random rng(15);
  const FourMomentumd q = rng.momentum(1.0, 1.0);
  CHECK(max_abs(wigner_rotation(LorentzElementd::identity(), q) - Matrix2cd::Identity()) <= 1e-15);

  const FourMomentumd rest = FourMomentumd::at_rest(1.0);
  CHECK(max_abs(wigner_rotation(LorentzElementd::boost(Vector3d::UnitX(), 1.4), rest) -
                Matrix2cd::Identity()) <= 1e-14);

  SUBCASE("pure rotations act on spin independently of momentum") {
    for (int i = 0; i < 50; ++i) {
      const LorentzElementd r = rng.rotation();
      const FourMomentumd k = rng.momentum(rng.uniform(0.5, 2.0), 4.0);
      CHECK(max_abs(wigner_rotation(r, k) - r.sl2()) <= 1e-12);
    }
  }
}

TEST_CASE("Wigner matrices are special unitary") {
  wigner::testing::Random rng(16);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const LorentzElementd l = i % 2 ? rng.boost(3.0) : rng.boost(2.0) * rng.rotation() * rng.boost(1.0);
    worst = std::max(worst, special_unitary_defect(wigner_rotation(l, rng.momentum(rng.uniform(0.3, 2.0), 5.0))));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("Wigner composition law") {
  wigner::testing::Random rng(17);
  auto defect = [](const LorentzElementd& l2, const LorentzElementd& l1, const FourMomentumd& q) {
    return max_abs(wigner_rotation(l2 * l1, q) -
                   wigner_rotation(l2, boost_momentum(l1, q)) * wigner_rotation(l1, q));
  };
  double worst = 0.0;
  for (int i = 0; i < 150; ++i) {
    const FourMomentumd q = rng.momentum(1.0, 2.0);
    const LorentzElementd l1 = rng.boost(1.5);
    // Collinear boosts.
    worst = std::max(worst, defect(LorentzElementd::boost(l1.axis(), rng.uniform(-1.5, 1.5)), l1, q));
    // boost o rotation composites.
    worst = std::max(worst, defect(rng.boost(1.5) * rng.rotation(), rng.rotation() * l1, q));
    // Non-collinear boosts.
    worst = std::max(worst, defect(rng.boost(1.5), l1, q));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("explicit x-boost formulas") {
  SUBCASE("alpha = 0 leaves the state unchanged") {
    const FourMomentumd q(1.0, Vector3d(0.2, -0.1, 0.4));
    const std::complex<double> a1(0.3, -0.7);
    const auto r = explicit_boost_x(0.0, q, a1);
    CHECK(std::abs(r.b1 - a1) <= 1e-15);
    CHECK(std::abs(r.b2) == 0.0);
    CHECK(r.jacobian_factor == doctest::Approx(1.0));
  }
  SUBCASE("spin stays up for a particle at rest") {
    const auto r = explicit_boost_x(1.2, FourMomentumd::at_rest(1.0), {1.0, 0.0});
    CHECK(std::abs(r.b2) == 0.0);
  }
  SUBCASE("b2 is linear in q_z") {
    const double alpha = 0.8;
    const FourMomentumd q1(1.0, Vector3d(0.1, 0.2, 0.3));
    const auto r = explicit_boost_x(alpha, q1, {1.0, 0.0});
    const double q0 = q1.energy();
    const double p0 = std::cosh(alpha) * q0 + std::sinh(alpha) * 0.1;
    const double k = std::sqrt(q0 / (p0 * (q0 + 1.0) * (p0 + 1.0)));
    CHECK(r.b2.real() == doctest::Approx(k * std::sinh(alpha / 2) * 0.3).epsilon(1e-14));
  }
  SUBCASE("agrees with the general construction") {
    wigner::testing::Random rng(18);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double alpha = rng.uniform(-3.0, 3.0);
      const FourMomentumd q = rng.momentum(rng.uniform(0.3, 3.0), 3.0);
      const std::complex<double> a1 = rng.complex();
      const auto closed = explicit_boost_x(alpha, q, a1);
      const LorentzElementd l = LorentzElementd::boost(Vector3d::UnitX(), alpha);
      const FourMomentumd p = boost_momentum(l, q);
      CHECK(closed.jacobian_factor == doctest::Approx(std::sqrt(q.energy() / p.energy())).epsilon(1e-14));
      const Spinord general = closed.jacobian_factor * (wigner_rotation(l, q) * Spinord(a1, 0.0));
      worst = std::max({worst, std::abs(general(0) - closed.b1), std::abs(general(1) - closed.b2)});
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("kinematics is usable at long double precision") {
  using L = LorentzElement<long double>;
  const FourMomentum<long double> q(1.0L, Vector3<long double>(0.1L, 0.2L, 0.3L));
  const L l = L::boost(Vector3<long double>::UnitX(), 0.7L);
  const Matrix2c<long double> d = wigner_rotation(l, q);
  CHECK(std::abs(d.determinant() - 1.0L) <= 1e-17L);
}
