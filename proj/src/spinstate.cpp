#include "wigner/spinstate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wigner {

namespace {

constexpr double kMatrixTolerance = 1e-12;
constexpr double kBlochTolerance = 1e-10;
constexpr double kNormTolerance = 1e-4;

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

Vector3d bloch_of(const Matrix2cd& tau) {
  return {2.0 * tau(0, 1).real(), -2.0 * tau(0, 1).imag(), (tau(0, 0) - tau(1, 1)).real()};
}

}  // namespace

SpinDensity SpinDensity::from_matrix(const Matrix2cd& tau, double quadrature_error) {
  if (!tau.allFinite()) throw std::invalid_argument("SpinDensity: non-finite entries");
  if ((tau - tau.adjoint()).cwiseAbs().maxCoeff() > kMatrixTolerance) {
    throw std::invalid_argument("SpinDensity: matrix is not Hermitian");
  }
  if (std::abs(tau.trace() - 1.0) > kMatrixTolerance) {
    throw std::invalid_argument("SpinDensity: trace differs from 1");
  }
  const Matrix2cd herm = 0.5 * (tau + tau.adjoint());
  const double det = (herm(0, 0) * herm(1, 1)).real() - std::norm(herm(0, 1));
  // For a 2x2 Hermitian matrix with unit trace, PSD <=> det >= 0 and both
  // diagonals >= 0.
  if (det < -kMatrixTolerance || herm(0, 0).real() < -kMatrixTolerance ||
      herm(1, 1).real() < -kMatrixTolerance) {
    throw std::invalid_argument("SpinDensity: matrix is not positive semidefinite");
  }
  return SpinDensity(herm, bloch_of(herm), quadrature_error);
}

SpinDensity SpinDensity::from_bloch(const Vector3d& bloch, double quadrature_error) {
  if (!bloch.allFinite() || bloch.norm() > 1.0 + kBlochTolerance) {
    throw std::invalid_argument("SpinDensity: Bloch vector longer than 1");
  }
  const Matrix2cd tau = 0.5 * (Matrix2cd::Identity() + pauli_dot(bloch));
  return SpinDensity(tau, bloch, quadrature_error);
}

SpinDensity reduced_density(const SpinorPacket& packet, const QuadratureSpec& spec) {
  using Row = Eigen::Matrix<std::complex<double>, 3, 1>;
  auto r = integrate_vector<3>(
      [&packet](const Vector3d& p) {
        const Spinord a = packet.amplitude(p);
        return Row(std::norm(a(0)), std::norm(a(1)), a(0) * std::conj(a(1)));
      },
      spec);
  const double up = r.value(0).real();
  const double down = r.value(1).real();
  const double n = up + down;
  if (!(std::abs(n - 1.0) <= kNormTolerance)) {
    std::ostringstream msg;
    msg << "reduced_density: packet norm " << n << " deviates from 1 by more than "
        << kNormTolerance;
    throw NotNormalizedError(msg.str(), n);
  }
  Matrix2cd tau;
  tau << up / n, r.value(2) / n,
         std::conj(r.value(2)) / n, down / n;
  return SpinDensity::from_matrix(tau, r.error_estimate);
}

SpinDensity reduced_density(const SpinorPacket& packet) {
  return reduced_density(packet, default_spec(packet));
}

namespace {

template <typename Reduce>
SpinDensity mix(const Ensemble& ensemble, Reduce&& reduce) {
  Matrix2cd tau = Matrix2cd::Zero();
  double error = 0.0;
  for (const auto& m : ensemble.members()) {
    const SpinDensity member = reduce(m.packet);
    tau += m.weight * member.matrix();
    error += m.weight * member.quadrature_error();
  }
  return SpinDensity::from_matrix(tau, error);
}

}  // namespace

SpinDensity ensemble_reduced(const Ensemble& ensemble) {
  return mix(ensemble, [](const SpinorPacket& p) { return reduced_density(p); });
}

SpinDensity ensemble_reduced(const Ensemble& ensemble, const QuadratureSpec& spec) {
  return mix(ensemble, [&spec](const SpinorPacket& p) { return reduced_density(p, spec); });
}

EntropyReport entropy(const SpinDensity& tau) {
  EntropyReport report;
  report.quadrature_error = tau.quadrature_error();
  report.bloch_norm = tau.bloch().norm();
  report.lambda_plus = std::clamp(0.5 * (1.0 + report.bloch_norm), 0.0, 1.0);
  // lambda_minus = det(tau) / lambda_plus is accurate when the state is
  // nearly pure; (1 - |n|) / 2 would cancel.
  const Matrix2cd& m = tau.matrix();
  const double det = (m(0, 0) * m(1, 1)).real() - std::norm(m(0, 1));
  report.lambda_minus = std::clamp(det / report.lambda_plus, 0.0, 1.0);
  report.entropy = -(xlogx(report.lambda_plus) + xlogx(report.lambda_minus));
  report.entropy = std::max(0.0, report.entropy);
  return report;
}

double eigen_entropy_crosscheck(const SpinDensity& tau) {
  Eigen::SelfAdjointEigenSolver<Matrix2cd> solver(tau.matrix(), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < 2; ++i) s -= xlogx(std::clamp(solver.eigenvalues()(i), 0.0, 1.0));
  return s;
}

}  // namespace wigner
