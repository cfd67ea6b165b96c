#pragma once

#include <stdexcept>
#include <string>

#include "wigner/kinematics.hpp"
#include "wigner/quadrature.hpp"
#include "wigner/wavepacket.hpp"

namespace wigner {

class NotNormalizedError : public std::runtime_error {
 public:
  NotNormalizedError(const std::string& what, double norm)
      : std::runtime_error(what), norm_(norm) {}
  double norm() const { return norm_; }

 private:
  double norm_;
};

/*!
 * Qubit density matrix tau = (I + n.sigma) / 2.
 *
 * Construction validates Hermiticity, unit trace and positivity to 1e-12
 * and throws std::invalid_argument otherwise.
 */
class SpinDensity {
 public:
  static SpinDensity from_matrix(const Matrix2cd& tau, double quadrature_error = 0.0);
  /// Requires |n| <= 1 + 1e-10.
  static SpinDensity from_bloch(const Vector3d& bloch, double quadrature_error = 0.0);

  const Matrix2cd& matrix() const { return tau_; }
  const Vector3d& bloch() const { return bloch_; }
  double quadrature_error() const { return quadrature_error_; }

 private:
  SpinDensity(const Matrix2cd& tau, const Vector3d& bloch, double quadrature_error)
      : tau_(tau), bloch_(bloch), quadrature_error_(quadrature_error) {}

  Matrix2cd tau_;
  Vector3d bloch_;
  double quadrature_error_;
};

struct EntropyReport {
  /// von Neumann entropy in nats.
  double entropy = 0.0;
  double lambda_plus = 1.0;
  double lambda_minus = 0.0;
  double bloch_norm = 1.0;
  double quadrature_error = 0.0;
};

/*!
 * tau_rs = int a_r(p) a_s(p)^* d^3p / N, with N the computed norm.
 *
 * Dividing by the quadrature norm keeps the trace exactly 1. Throws
 * NotNormalizedError if |N - 1| > 1e-4 and NonConvergentError from the
 * quadrature.
 */
SpinDensity reduced_density(const SpinorPacket& packet, const QuadratureSpec& spec);
SpinDensity reduced_density(const SpinorPacket& packet);

/// sum_j c_j tau_j, each member on its own default grid.
SpinDensity ensemble_reduced(const Ensemble& ensemble);
/// sum_j c_j tau_j, all members on `spec`.
SpinDensity ensemble_reduced(const Ensemble& ensemble, const QuadratureSpec& spec);

/// S = -sum lambda ln lambda with lambda = (1 +- |n|)/2 and 0 ln 0 = 0.
EntropyReport entropy(const SpinDensity& tau);

/// -tr(tau ln tau) from a numerical eigendecomposition of tau.
double eigen_entropy_crosscheck(const SpinDensity& tau);

}  // namespace wigner
