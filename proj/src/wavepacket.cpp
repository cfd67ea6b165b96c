#include "wigner/wavepacket.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wigner {

SpinorPacket::SpinorPacket(double mass, AmplitudeFn amplitude, const Vector3d& center_hint,
                           double scale_hint, const Eigen::Matrix3d& axes_hint,
                           std::shared_ptr<const PacketPullback> pullback)
    : mass_(mass),
      amplitude_(std::move(amplitude)),
      center_hint_(center_hint),
      scale_hint_(scale_hint),
      axes_hint_(axes_hint),
      pullback_(std::move(pullback)) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("SpinorPacket: mass must be positive");
  }
  if (!amplitude_) throw std::invalid_argument("SpinorPacket: empty amplitude");
  if (!(scale_hint > 0.0) || !std::isfinite(scale_hint)) {
    throw std::invalid_argument("SpinorPacket: scale hint must be positive");
  }
}

int SpinorPacket::nesting_depth() const {
  int depth = 0;
  for (const PacketPullback* pb = pullback(); pb != nullptr; pb = pb->source.pullback()) ++depth;
  return depth;
}

Ensemble::Ensemble(std::vector<Member> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("Ensemble: no members");
  double total = 0.0;
  for (const auto& m : members_) {
    if (!(m.weight >= 0.0)) throw std::invalid_argument("Ensemble: negative weight");
    total += m.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("Ensemble: weights must sum to 1");
  }
}

SpinorPacket gaussian_packet(double mass, double width, const Spinord& chi) {
  if (!(mass > 0.0)) throw std::invalid_argument("gaussian_packet: mass must be positive");
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw std::invalid_argument("gaussian_packet: width must be positive");
  }
  if (!chi.allFinite() || std::abs(chi.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("gaussian_packet: spinor must have unit norm");
  }
  const double prefactor = std::pow(std::numbers::pi * width * width, -0.75);
  const double inv_two_w2 = 1.0 / (2.0 * width * width);
  AmplitudeFn amplitude = [prefactor, inv_two_w2, chi](const Vector3d& p) -> Spinord {
    return (prefactor * std::exp(-p.squaredNorm() * inv_two_w2)) * chi;
  };
  return SpinorPacket(mass, std::move(amplitude), Vector3d::Zero(), width);
}

QuadratureSpec default_spec(const SpinorPacket& packet) {
  QuadratureSpec spec;
  spec.center = packet.center_hint();
  spec.scale = packet.scale_hint();
  spec.axes = packet.axes_hint();
  return spec;
}

RealIntegral norm(const SpinorPacket& packet, const QuadratureSpec& spec) {
  auto r = integrate_vector<1>(
      [&packet](const Vector3d& p) {
        Eigen::Matrix<std::complex<double>, 1, 1> v;
        v(0) = packet.amplitude(p).squaredNorm();
        return v;
      },
      spec);
  return {r.value(0).real(), r.error_estimate};
}

RealIntegral norm(const SpinorPacket& packet) { return norm(packet, default_spec(packet)); }

VectorIntegral mean_momentum(const SpinorPacket& packet, const QuadratureSpec& spec) {
  auto r = integrate_vector<3>(
      [&packet](const Vector3d& p) {
        const double density = packet.amplitude(p).squaredNorm();
        return Eigen::Matrix<std::complex<double>, 3, 1>((density * p).cast<std::complex<double>>());
      },
      spec);
  return {r.value.real(), r.error_estimate};
}

VectorIntegral mean_momentum(const SpinorPacket& packet) {
  return mean_momentum(packet, default_spec(packet));
}

}  // namespace wigner
