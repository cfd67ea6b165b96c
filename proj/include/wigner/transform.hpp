#pragma once

#include "wigner/kinematics.hpp"
#include "wigner/wavepacket.hpp"

namespace wigner {

struct BoostOptions {
  /// Maximum pullback nesting; deeper chains are collapsed into a single
  /// composite Lorentz element applied to the root packet.
  int flatten_depth = 8;
};

/// The two factors of the transformation law at a new-frame momentum p.
struct TransformFactors {
  /// q = L^{-1} p, the momentum in the preparer's frame.
  FourMomentumd source;
  /// sqrt(q0 / p0)
  double jacobian = 1.0;
  /// D(L, q)
  WignerMatrix<double> rotation;
};

TransformFactors transform_factors(const LorentzElementd& lambda, const FourMomentumd& p);

/*!
 * Image of a packet in the frame reached by `lambda`:
 *
 *   b(p) = sqrt(q0 / p0) D(L, q) a(q),   q = L^{-1} p.
 *
 * Lazy: the returned amplitude evaluates the source at q on demand. Hints
 * follow the Jacobian dp/dq at the source's centre.
 */
SpinorPacket boost_state(const LorentzElementd& lambda, const SpinorPacket& packet,
                         const BoostOptions& options = {});

/// Boosts every member; weights are copied unchanged.
Ensemble boost_ensemble(const LorentzElementd& lambda, const Ensemble& ensemble,
                        const BoostOptions& options = {});

}  // namespace wigner
