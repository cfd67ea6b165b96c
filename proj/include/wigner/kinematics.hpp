#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace wigner {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;
template <typename Scalar>
using Spinor = Eigen::Matrix<std::complex<Scalar>, 2, 1>;
template <typename Scalar>
using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

/// Spin-1/2 representation of a little-group element; special unitary.
template <typename Scalar>
using WignerMatrix = Matrix2c<Scalar>;

/// sigma . v for the Pauli matrices.
template <typename Derived>
Matrix2c<typename Derived::Scalar> pauli_dot(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  using C = std::complex<Scalar>;
  Matrix2c<Scalar> s;
  s << C(v(2), 0), C(v(0), -v(1)),
       C(v(0), v(1)), C(-v(2), 0);
  return s;
}

/*!
 * On-shell four-momentum of a massive particle, c = 1.
 *
 * The energy is always derived from the mass shell, p0 = sqrt(m^2 + |p|^2),
 * so no operation can produce an off-shell value.
 */
template <typename Scalar>
class FourMomentum {
 public:
  FourMomentum(Scalar mass, const Vector3<Scalar>& momentum)
      : mass_(mass), momentum_(momentum) {
    if (!(mass > Scalar(0)) || !std::isfinite(mass)) {
      throw std::invalid_argument("FourMomentum: mass must be positive and finite");
    }
    if (!momentum.allFinite()) {
      throw std::invalid_argument("FourMomentum: momentum must be finite");
    }
    energy_ = std::sqrt(mass * mass + momentum.squaredNorm());
  }

  static FourMomentum at_rest(Scalar mass) { return FourMomentum(mass, Vector3<Scalar>::Zero()); }

  Scalar mass() const { return mass_; }
  const Vector3<Scalar>& momentum() const { return momentum_; }
  Scalar energy() const { return energy_; }

  /// (p0, px, py, pz)
  Vector4<Scalar> components() const {
    Vector4<Scalar> v;
    v << energy_, momentum_;
    return v;
  }

 private:
  Scalar mass_;
  Vector3<Scalar> momentum_;
  Scalar energy_;
};

enum class LorentzKind { Boost, Rotation, Composite };

/*!
 * Proper orthochronous Lorentz transformation, kept simultaneously as its
 * 4x4 vector representation and its SL(2,C) image.
 *
 * Convention (used everywhere in this library): an element maps momenta of
 * the preparer's frame to momenta of the new observer's frame, p = L q.
 * A pure boost with rapidity a along unit axis e is active: it takes the
 * rest momentum (m, 0) to (m cosh a, m sinh a e), and its SL(2,C) image is
 * exp(a sigma.e / 2). A rotation by angle theta about e rotates momenta
 * counter-clockwise, with image exp(-i theta sigma.e / 2).
 *
 * Composites store their factors in application order: compose(b, a)
 * applies a first.
 */
template <typename Scalar>
class LorentzElement {
 public:
  static LorentzElement identity() { return boost(Vector3<Scalar>::UnitX(), Scalar(0)); }

  static LorentzElement boost(const Vector3<Scalar>& axis, Scalar rapidity) {
    LorentzElement e(LorentzKind::Boost, unit_axis(axis), rapidity);
    e.fill_boost();
    return e;
  }

  /// Pure boost from a rapidity vector (direction = axis, length = rapidity).
  static LorentzElement boost(const Vector3<Scalar>& rapidity_vector) {
    const Scalar a = rapidity_vector.norm();
    if (a == Scalar(0)) return identity();
    return boost(rapidity_vector / a, a);
  }

  static LorentzElement rotation(const Vector3<Scalar>& axis, Scalar angle) {
    LorentzElement e(LorentzKind::Rotation, unit_axis(axis), angle);
    e.fill_rotation();
    return e;
  }

  /// later o earlier: apply `earlier` first.
  static LorentzElement compose(const LorentzElement& later, const LorentzElement& earlier) {
    LorentzElement e(LorentzKind::Composite, Vector3<Scalar>::UnitX(), Scalar(0));
    e.append(earlier);
    e.append(later);
    e.matrix_ = later.matrix_ * earlier.matrix_;
    e.sl2_ = later.sl2_ * earlier.sl2_;
    return e;
  }

  LorentzElement inverse() const {
    switch (kind_) {
      case LorentzKind::Boost:
        return boost(axis_, -parameter_);
      case LorentzKind::Rotation:
        return rotation(axis_, -parameter_);
      case LorentzKind::Composite:
        break;
    }
    LorentzElement e(LorentzKind::Composite, Vector3<Scalar>::UnitX(), Scalar(0));
    e.matrix_.setIdentity();
    e.sl2_.setIdentity();
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
      LorentzElement inv = it->inverse();
      e.matrix_ = inv.matrix_ * e.matrix_;
      e.sl2_ = inv.sl2_ * e.sl2_;
      e.factors_.push_back(std::move(inv));
    }
    return e;
  }

  LorentzKind kind() const { return kind_; }
  /// Unit axis of a boost or rotation; unspecified for composites.
  const Vector3<Scalar>& axis() const { return axis_; }
  /// Rapidity of a pure boost (0 otherwise).
  Scalar rapidity() const { return kind_ == LorentzKind::Boost ? parameter_ : Scalar(0); }
  /// Rotation angle of a pure rotation (0 otherwise).
  Scalar angle() const { return kind_ == LorentzKind::Rotation ? parameter_ : Scalar(0); }
  Scalar beta() const { return std::tanh(rapidity()); }
  Scalar gamma() const { return std::cosh(rapidity()); }
  Vector3<Scalar> rapidity_vector() const { return rapidity() * axis_; }

  /// Primitive factors in application order; empty unless composite.
  const std::vector<LorentzElement>& factors() const { return factors_; }

  const Matrix4<Scalar>& matrix() const { return matrix_; }
  const Matrix2c<Scalar>& sl2() const { return sl2_; }

 private:
  LorentzElement(LorentzKind kind, const Vector3<Scalar>& axis, Scalar parameter)
      : kind_(kind), axis_(axis), parameter_(parameter) {
    if (!std::isfinite(parameter)) {
      throw std::invalid_argument("LorentzElement: parameter must be finite");
    }
  }

  static Vector3<Scalar> unit_axis(const Vector3<Scalar>& axis) {
    const Scalar n = axis.norm();
    if (!(n > Scalar(0)) || !axis.allFinite()) {
      throw std::invalid_argument("LorentzElement: axis must be a finite non-zero vector");
    }
    return axis / n;
  }

  void append(const LorentzElement& e) {
    if (e.kind_ == LorentzKind::Composite) {
      factors_.insert(factors_.end(), e.factors_.begin(), e.factors_.end());
    } else {
      factors_.push_back(e);
    }
  }

  void fill_boost() {
    const Scalar ch = std::cosh(parameter_);
    const Scalar sh = std::sinh(parameter_);
    matrix_.setIdentity();
    matrix_(0, 0) = ch;
    matrix_.template block<1, 3>(0, 1) = sh * axis_.transpose();
    matrix_.template block<3, 1>(1, 0) = sh * axis_;
    matrix_.template block<3, 3>(1, 1) += (ch - Scalar(1)) * axis_ * axis_.transpose();
    sl2_ = std::cosh(parameter_ / 2) * Matrix2c<Scalar>::Identity() +
           std::sinh(parameter_ / 2) * pauli_dot(axis_);
  }

  void fill_rotation() {
    matrix_.setIdentity();
    matrix_.template block<3, 3>(1, 1) =
        Eigen::AngleAxis<Scalar>(parameter_, axis_).toRotationMatrix();
    const std::complex<Scalar> minus_i(0, -1);
    sl2_ = std::cos(parameter_ / 2) * Matrix2c<Scalar>::Identity() +
           (minus_i * std::sin(parameter_ / 2)) * pauli_dot(axis_);
  }

  LorentzKind kind_;
  Vector3<Scalar> axis_;
  Scalar parameter_;
  std::vector<LorentzElement> factors_;
  Matrix4<Scalar> matrix_;
  Matrix2c<Scalar> sl2_;
};

template <typename Scalar>
LorentzElement<Scalar> operator*(const LorentzElement<Scalar>& later,
                                 const LorentzElement<Scalar>& earlier) {
  return LorentzElement<Scalar>::compose(later, earlier);
}

/// L q. The energy of the result is re-derived from the mass shell.
template <typename Scalar>
FourMomentum<Scalar> boost_momentum(const LorentzElement<Scalar>& lambda,
                                    const FourMomentum<Scalar>& q) {
  const Matrix4<Scalar>& L = lambda.matrix();
  const Vector3<Scalar> p =
      L.template block<3, 1>(1, 0) * q.energy() + L.template block<3, 3>(1, 1) * q.momentum();
  return FourMomentum<Scalar>(q.mass(), p);
}

/*!
 * Standard boost H(q) = (q0 + m + sigma.q) / sqrt(2 m (q0 + m)).
 *
 * Hermitian, positive definite, unimodular; maps the rest momentum to q
 * under X -> H X H^dagger.
 */
template <typename Scalar>
Matrix2c<Scalar> standard_boost_sl2(const FourMomentum<Scalar>& q) {
  const Scalar m = q.mass();
  const Scalar e = q.energy() + m;
  const Scalar norm = std::sqrt(Scalar(2) * m * e);
  return (e * Matrix2c<Scalar>::Identity() + pauli_dot(q.momentum())) / norm;
}

/// H(q)^{-1}, in closed form.
template <typename Scalar>
Matrix2c<Scalar> inverse_standard_boost_sl2(const FourMomentum<Scalar>& q) {
  const Scalar m = q.mass();
  const Scalar e = q.energy() + m;
  const Scalar norm = std::sqrt(Scalar(2) * m * e);
  return (e * Matrix2c<Scalar>::Identity() - pauli_dot(q.momentum())) / norm;
}

/// D(L, q) = H(L q)^{-1} S(L) H(q).
template <typename Scalar>
WignerMatrix<Scalar> wigner_rotation(const LorentzElement<Scalar>& lambda,
                                     const FourMomentum<Scalar>& q) {
  const FourMomentum<Scalar> p = boost_momentum(lambda, q);
  return inverse_standard_boost_sl2(p) * lambda.sl2() * standard_boost_sl2(q);
}

template <typename Scalar>
struct ExplicitBoostX {
  std::complex<Scalar> b1;
  std::complex<Scalar> b2;
  /// sqrt(q0 / p0), the measure factor of the transformation law.
  Scalar jacobian_factor;
};

/*!
 * Closed-form amplitudes for a spin-up state (a2 = 0) boosted with
 * rapidity `alpha` along +x, evaluated at p = L q:
 *
 *   b1 = K [C (q0 + m) + S (qx + i qy)] a1,   b2 = K S qz a1,
 *   C = cosh(alpha/2), S = sinh(alpha/2),
 *   K = sqrt(q0 / (p0 (q0 + m) (p0 + m))).
 *
 * Independent of the SL(2,C) construction; used as its cross-check.
 */
template <typename Scalar>
ExplicitBoostX<Scalar> explicit_boost_x(Scalar alpha, const FourMomentum<Scalar>& q,
                                        std::complex<Scalar> a1) {
  const Scalar m = q.mass();
  const Scalar q0 = q.energy();
  const Vector3<Scalar>& qv = q.momentum();
  const Scalar p0 = std::cosh(alpha) * q0 + std::sinh(alpha) * qv.x();
  const Scalar c = std::cosh(alpha / 2);
  const Scalar s = std::sinh(alpha / 2);
  const Scalar k = std::sqrt(q0 / (p0 * (q0 + m) * (p0 + m)));
  ExplicitBoostX<Scalar> out;
  out.b1 = k * (c * (q0 + m) + s * std::complex<Scalar>(qv.x(), qv.y())) * a1;
  out.b2 = k * s * qv.z() * a1;
  out.jacobian_factor = std::sqrt(q0 / p0);
  return out;
}

using FourMomentumd = FourMomentum<double>;
using LorentzElementd = LorentzElement<double>;
using Vector3d = Vector3<double>;
using Spinord = Spinor<double>;
using Matrix2cd = Matrix2c<double>;

}  // namespace wigner
