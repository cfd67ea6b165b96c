#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "wigner/transform.hpp"

using namespace wigner;
using wigner::testing::Random;

namespace {

double spinor_distance(const Spinord& a, const Spinord& b) { return (a - b).cwiseAbs().maxCoeff(); }

Matrix2cd sigma_dot(const Vector3d& v) {
  Matrix2cd s;
  s << v.z(), std::complex<double>(v.x(), -v.y()),
       std::complex<double>(v.x(), v.y()), -v.z();
  return s;
}

// Transformation law for a boost of rapidity alpha along x, written out with
// explicit 4x4 and 2x2 algebra and a generic matrix inverse.
Spinord x_boost_oracle(double alpha, double m, const SpinorPacket& psi, const Vector3d& p) {
  Eigen::Matrix4d inv = Eigen::Matrix4d::Identity();
  inv(0, 0) = inv(1, 1) = std::cosh(alpha);
  inv(0, 1) = inv(1, 0) = -std::sinh(alpha);
  const double p0 = std::sqrt(m * m + p.squaredNorm());
  const Eigen::Vector4d q4 = inv * Eigen::Vector4d(p0, p.x(), p.y(), p.z());
  const Vector3d q = q4.tail<3>();
  auto h = [m](double e, const Vector3d& k) -> Matrix2cd {
    return ((e + m) * Matrix2cd::Identity() + sigma_dot(k)) / std::sqrt(2 * m * (e + m));
  };
  const Matrix2cd s = std::cosh(alpha / 2) * Matrix2cd::Identity() + std::sinh(alpha / 2) * sigma_dot(Vector3d::UnitX());
  const Matrix2cd d = h(p0, p).inverse() * s * h(q4(0), q);
  return std::sqrt(q4(0) / p0) * (d * psi(q));
}

}  // namespace

TEST_CASE("identity leaves the amplitude unchanged") {
  Random rng(11);
  const auto psi = gaussian_packet(1.0, 0.1, rng.spinor());
  const auto same = boost_state(LorentzElementd::identity(), psi);
  for (int i = 0; i < 200; ++i) {
    const Vector3d p = rng.vector(0.4);
    CHECK(spinor_distance(same(p), psi(p)) <= 1e-14);
  }
}

TEST_CASE("boost along x agrees with the written-out law") {
  Random rng(12);
  for (double alpha : {-2.0, -0.3, 0.6931471805599453, 1.5}) {
    const auto psi = gaussian_packet(1.0, 0.2, rng.spinor());
    const auto boosted = boost_state(LorentzElementd::boost(Vector3d::UnitX(), alpha), psi);
    for (int i = 0; i < 200; ++i) {
      const Vector3d p = boosted.center_hint() + rng.vector(0.6);
      CHECK(spinor_distance(boosted(p), x_boost_oracle(alpha, 1.0, psi, p)) <= 1e-12);
    }
  }
}

TEST_CASE("transform_factors") {
  Random rng(13);
  for (int i = 0; i < 200; ++i) {
    const LorentzElementd l = rng.boost(2.0) * rng.rotation();
    const FourMomentumd p = rng.momentum(1.0, 2.0);
    const TransformFactors f = transform_factors(l, p);
    CHECK((boost_momentum(l, f.source).momentum() - p.momentum()).norm() <= 1e-12);
    CHECK(f.jacobian == doctest::Approx(std::sqrt(f.source.energy() / p.energy())).epsilon(1e-15));
    CHECK(wigner::testing::max_abs(f.rotation * f.rotation.adjoint() - Matrix2cd::Identity()) <= 1e-12);
  }
}

TEST_CASE("boost round trip and composition") {
  Random rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const auto psi = gaussian_packet(1.0, 0.15, rng.spinor());
    const LorentzElementd l1 = rng.boost(1.5);
    const LorentzElementd l2 = rng.rotation() * rng.boost(1.5);
    const auto back = boost_state(l1.inverse(), boost_state(l1, psi));
    const auto chained = boost_state(l2, boost_state(l1, psi));
    const auto direct = boost_state(l2 * l1, psi);
    for (int i = 0; i < 50; ++i) {
      const Vector3d p = rng.vector(0.5);
      CHECK(spinor_distance(back(p), psi(p)) <= 1e-12);
      const Vector3d p2 = direct.center_hint() + rng.vector(0.5);
      CHECK(spinor_distance(chained(p2), direct(p2)) <= 1e-12);
    }
  }
}

TEST_CASE("boosts preserve the norm (property)") {
  Random rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    const double w = rng.uniform(0.02, 0.2);
    const auto psi = gaussian_packet(1.0, w, rng.spinor());
    const LorentzElementd l = LorentzElementd::boost(rng.direction(), rng.uniform(-3.0, 3.0));
    QuadratureSpec spec = default_spec(boost_state(l, psi));
    // The node-halving estimate is pessimistic for strongly boosted packets,
    // so only the value is held to the tight bound.
    spec.tolerance = 1e-6;
    const auto n = norm(boost_state(l, psi), spec);
    CHECK(std::abs(n.value - 1.0) <= 1e-8);
  }
}

TEST_CASE("hints follow the boost") {
  const double w = 0.1;
  const double alpha = 0.8;
  const auto psi = gaussian_packet(1.0, w, spin_up());
  const auto boosted = boost_state(LorentzElementd::boost(Vector3d::UnitX(), alpha), psi);
  CHECK((boosted.center_hint() - Vector3d(std::sinh(alpha), 0, 0)).norm() <= 1e-15);
  CHECK(boosted.scale_hint() == doctest::Approx(std::cosh(alpha) * w).epsilon(1e-14));
  const Eigen::Matrix3d stretched = boosted.scale_hint() * boosted.axes_hint();
  CHECK(stretched(0, 0) == doctest::Approx(std::cosh(alpha) * w).epsilon(1e-14));
  CHECK(stretched(1, 1) == doctest::Approx(w).epsilon(1e-14));
  CHECK(stretched(2, 2) == doctest::Approx(w).epsilon(1e-14));
}

TEST_CASE("long chains are flattened") {
  Random rng(16);
  const auto psi = gaussian_packet(1.0, 0.1, rng.spinor());
  BoostOptions shallow;
  shallow.flatten_depth = 2;
  SpinorPacket nested = psi;
  SpinorPacket flat = psi;
  for (int i = 0; i < 6; ++i) {
    const LorentzElementd l = rng.boost(0.3);
    nested = boost_state(l, nested, BoostOptions{100});
    flat = boost_state(l, flat, shallow);
    CHECK(flat.nesting_depth() <= 2);
  }
  CHECK(nested.nesting_depth() == 6);
  for (int i = 0; i < 100; ++i) {
    const Vector3d p = flat.center_hint() + rng.vector(0.3);
    CHECK(spinor_distance(nested(p), flat(p)) <= 1e-12);
  }
}

TEST_CASE("boost_ensemble boosts members and keeps weights") {
  Random rng(17);
  const Ensemble e({{0.3, gaussian_packet(1.0, 0.1, spin_up())}, {0.7, gaussian_packet(1.0, 0.05, rng.spinor())}});
  const LorentzElementd l = rng.boost(1.0);
  const Ensemble b = boost_ensemble(l, e);
  REQUIRE(b.size() == 2);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(b.members()[j].weight == e.members()[j].weight);
    const auto single = boost_state(l, e.members()[j].packet);
    const Vector3d p = single.center_hint() + rng.vector(0.1);
    CHECK(spinor_distance(b.members()[j].packet(p), single(p)) == 0.0);
  }
}
