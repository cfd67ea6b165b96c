#include "wigner/transform.hpp"

#include <cmath>

namespace wigner {

namespace {

SpinorPacket pullback_of(const LorentzElementd& lambda, const SpinorPacket& source) {
  auto record = std::make_shared<const PacketPullback>(PacketPullback{lambda, source});
  const LorentzElementd inverse = lambda.inverse();
  const double mass = source.mass();

  AmplitudeFn amplitude = [record, inverse, mass](const Vector3d& p) -> Spinord {
    const FourMomentumd pm(mass, p);
    const FourMomentumd q = boost_momentum(inverse, pm);
    const Matrix2cd d =
        inverse_standard_boost_sl2(pm) * record->lambda.sl2() * standard_boost_sl2(q);
    return std::sqrt(q.energy() / pm.energy()) * (d * record->source.amplitude(q.momentum()));
  };

  // Linearise p(q) about the source centre to carry the grid along.
  const FourMomentumd qc(mass, source.center_hint());
  const FourMomentumd pc = boost_momentum(lambda, qc);
  const Matrix4<double>& L = lambda.matrix();
  const Eigen::Matrix3d jac =
      L.block<3, 3>(1, 1) + L.block<3, 1>(1, 0) * qc.momentum().transpose() / qc.energy();
  const Eigen::Matrix3d map = jac * (source.scale_hint() * source.axes_hint());
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> gram(jac * jac.transpose(),
                                                            Eigen::EigenvaluesOnly);
  const double stretch = std::sqrt(gram.eigenvalues()(2));
  const double scale = source.scale_hint() * stretch;

  return SpinorPacket(mass, std::move(amplitude), pc.momentum(), scale, map / scale, record);
}

}  // namespace

TransformFactors transform_factors(const LorentzElementd& lambda, const FourMomentumd& p) {
  const FourMomentumd q = boost_momentum(lambda.inverse(), p);
  return {q, std::sqrt(q.energy() / p.energy()), wigner_rotation(lambda, q)};
}

SpinorPacket boost_state(const LorentzElementd& lambda, const SpinorPacket& packet,
                         const BoostOptions& options) {
  if (packet.nesting_depth() + 1 <= options.flatten_depth) return pullback_of(lambda, packet);

  LorentzElementd total = lambda;
  const SpinorPacket* root = &packet;
  while (const PacketPullback* pb = root->pullback()) {
    total = total * pb->lambda;
    root = &pb->source;
  }
  return pullback_of(total, *root);
}

Ensemble boost_ensemble(const LorentzElementd& lambda, const Ensemble& ensemble,
                        const BoostOptions& options) {
  std::vector<Ensemble::Member> members;
  members.reserve(ensemble.size());
  for (const auto& m : ensemble.members()) {
    members.push_back({m.weight, boost_state(lambda, m.packet, options)});
  }
  return Ensemble(std::move(members));
}

}  // namespace wigner
