#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "wigner/kinematics.hpp"
#include "wigner/quadrature.hpp"

namespace wigner {

/// Momentum-space amplitude p -> (a1(p), a2(p)). Must be safe to call
/// concurrently.
using AmplitudeFn = std::function<Spinord(const Vector3d&)>;

class SpinorPacket;

/// Records that a packet is the image of `source` under `lambda`.
struct PacketPullback;

/*!
 * Normalizable two-component spinor wave packet of a particle of mass m,
 * held as an evaluable amplitude (never as a sampled grid).
 *
 * The hints only place quadrature nodes: the packet is expected to look
 * like a Gaussian of width `scale_hint` centred on `center_hint` after the
 * linear map `axes_hint`. Immutable after construction.
 */
class SpinorPacket {
 public:
  SpinorPacket(double mass, AmplitudeFn amplitude, const Vector3d& center_hint, double scale_hint,
               const Eigen::Matrix3d& axes_hint = Eigen::Matrix3d::Identity(),
               std::shared_ptr<const PacketPullback> pullback = nullptr);

  Spinord amplitude(const Vector3d& p) const { return amplitude_(p); }
  Spinord operator()(const Vector3d& p) const { return amplitude_(p); }

  double mass() const { return mass_; }
  const Vector3d& center_hint() const { return center_hint_; }
  double scale_hint() const { return scale_hint_; }
  const Eigen::Matrix3d& axes_hint() const { return axes_hint_; }

  /// Non-null when this packet was produced by boosting another packet.
  const PacketPullback* pullback() const { return pullback_.get(); }
  /// Number of nested pullbacks between this packet and its root.
  int nesting_depth() const;

 private:
  double mass_;
  AmplitudeFn amplitude_;
  Vector3d center_hint_;
  double scale_hint_;
  Eigen::Matrix3d axes_hint_;
  std::shared_ptr<const PacketPullback> pullback_;
};

struct PacketPullback {
  LorentzElementd lambda;
  SpinorPacket source;
};

/// Finite convex combination sum_j c_j |psi_j><psi_j| of pure packets.
class Ensemble {
 public:
  struct Member {
    double weight;
    SpinorPacket packet;
  };

  /// Throws std::invalid_argument on negative weights, an empty list, or
  /// weights not summing to 1 within 1e-12.
  explicit Ensemble(std::vector<Member> members);

  static Ensemble single(const SpinorPacket& packet) { return Ensemble({{1.0, packet}}); }

  const std::vector<Member>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

 private:
  std::vector<Member> members_;
};

/// (1, 0)
inline Spinord spin_up() { return Spinord(1.0, 0.0); }
/// (0, 1)
inline Spinord spin_down() { return Spinord(0.0, 1.0); }

/*!
 * Minimum-uncertainty packet (pi w^2)^{-3/4} exp(-|p|^2 / 2w^2) * chi.
 *
 * The prefactor is the one that makes the norm exactly 1. Rejects m <= 0,
 * w <= 0 and |chi| != 1 (within 1e-12).
 */
SpinorPacket gaussian_packet(double mass, double width, const Spinord& chi);

/// Quadrature grid matching the packet's hints (48 nodes per axis).
QuadratureSpec default_spec(const SpinorPacket& packet);

struct RealIntegral {
  double value = 0.0;
  double error_estimate = 0.0;
};

struct VectorIntegral {
  Vector3d value = Vector3d::Zero();
  double error_estimate = 0.0;
};

/// sum_r int |a_r(p)|^2 d^3p. Throws NonConvergentError.
RealIntegral norm(const SpinorPacket& packet, const QuadratureSpec& spec);
RealIntegral norm(const SpinorPacket& packet);

/// <p> = sum_r int p |a_r(p)|^2 d^3p. Throws NonConvergentError.
VectorIntegral mean_momentum(const SpinorPacket& packet, const QuadratureSpec& spec);
VectorIntegral mean_momentum(const SpinorPacket& packet);

}  // namespace wigner
