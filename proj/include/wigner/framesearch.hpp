#pragma once

#include <functional>

#include "wigner/kinematics.hpp"
#include "wigner/wavepacket.hpp"

namespace wigner {

struct FrameSearchOptions {
  /// Entropy evaluations shared by both simplex runs.
  int max_evaluations = 500;
  int max_rest_iterations = 50;
  /// Stop when every vertex lies within this rapidity distance of the best.
  double simplex_diameter = 1e-4;
  /// ... or when the entropies on the simplex differ by less than this.
  double entropy_spread = 1e-10;
  double initial_step = 0.1;
  /// Rest frame accepted when |<p>| <= rest_tolerance * (narrowest hinted width).
  double rest_tolerance = 1e-6;
  int nodes_per_axis = 48;
};

struct FrameSearchResult {
  /// Pure boost from the packet's frame to the located frame.
  LorentzElementd boost = LorentzElementd::identity();
  Vector3d rapidity = Vector3d::Zero();
  /// Entropy in the located frame.
  double entropy = 0.0;
  /// <p> in the located frame.
  Vector3d residual_mean_momentum = Vector3d::Zero();
  /// Entropy evaluations (min-entropy search) or fixed-point steps (rest frame).
  int evaluations = 0;
  bool converged = false;
};

/*!
 * Pure boost to the frame where <p> = 0, by damped fixed-point iteration on
 * the rapidity vector: each step moves by -asinh(|<p>|/m) along <p>, halving
 * the step while the residual grows. `converged` is false after
 * max_rest_iterations steps.
 */
FrameSearchResult rest_frame(const SpinorPacket& packet, const FrameSearchOptions& options = {});

/*!
 * Pure boost minimising the spin entropy, by Nelder-Mead over rapidity
 * vectors started from the rest frame and from the identity; the better of
 * the two optima is returned. `converged` is false when the evaluation
 * budget runs out before either termination test is met.
 */
FrameSearchResult min_entropy_frame(const SpinorPacket& packet,
                                    const FrameSearchOptions& options = {});

/// Spin entropy of `packet` seen from the frame reached by the pure boost
/// with the given rapidity vector.
double entropy_in_frame(const SpinorPacket& packet, const Vector3d& rapidity, int nodes_per_axis = 48);

struct SimplexResult {
  Vector3d argmin = Vector3d::Zero();
  double minimum = 0.0;
  int evaluations = 0;
  bool converged = false;
};

struct SimplexOptions {
  int max_evaluations = 500;
  double diameter = 1e-4;
  double spread = 1e-10;
  double initial_step = 0.1;
};

/// Nelder-Mead on R^3 with the standard coefficients (1, 2, 1/2, 1/2).
SimplexResult minimize_simplex(const std::function<double(const Vector3d&)>& objective,
                               const Vector3d& start, const SimplexOptions& options);

}  // namespace wigner
