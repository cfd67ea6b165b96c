#pragma once

#include <span>

#include "wigner/kinematics.hpp"
#include "wigner/spinstate.hpp"
#include "wigner/wavepacket.hpp"

namespace wigner {

/*!
 * Small-width prediction for a spin-z Gaussian of width w and mass m boosted
 * with rapidity alpha perpendicular to the spin:
 *
 *   t    = w^2 tanh^2(alpha/2) / (8 m^2)
 *   n_z  = 1 - (w tanh(alpha/2) / (2m))^2 = 1 - 2t
 *   S    = t (1 - ln t)
 */
struct LeadingOrder {
  double width = 0.0;
  double mass = 0.0;
  double rapidity = 0.0;
  double t = 0.0;
  double nz = 1.0;
  double entropy = 0.0;
};

/// Throws std::invalid_argument for w <= 0 or m <= 0.
LeadingOrder leading_order(double width, double mass, double rapidity);

/// Gaussian -> boost -> reduced density, at fixed node count.
struct PipelineParams {
  double mass = 1.0;
  double width = 0.1;
  double rapidity = 0.0;
  Vector3d axis = Vector3d::UnitX();
  Spinord spin = spin_up();
  int nodes_per_axis = 48;
  double tolerance = 1e-10;
};

struct PipelinePoint {
  LeadingOrder leading;
  SpinDensity density;
  EntropyReport report;
  /// 2 tau_22, i.e. 1 - n_z without cancellation.
  double one_minus_nz = 0.0;
};

PipelinePoint run_pipeline(const PipelineParams& params);

/// Least-squares slope of log(1 - n_z) against log w over the full
/// pipeline. Widths must be strictly decreasing and at most 0.1 m.
double convergence_order(double mass, double rapidity, std::span<const double> widths,
                         int nodes_per_axis = 48);

}  // namespace wigner
