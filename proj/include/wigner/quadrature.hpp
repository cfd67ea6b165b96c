#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wigner {

enum class QuadratureScheme { GaussHermiteTensor, AdaptiveRefinement };

std::string to_string(QuadratureScheme scheme);

/*!
 * Grid placement for a 3-D momentum integral.
 *
 * Nodes x of the reference rule are mapped to p = center + scale * axes * x.
 * For the Gauss-Hermite scheme the reference weight is exp(-|x|^2), so an
 * integrand that is a Gaussian of width `scale` around `center` (after the
 * linear map `axes`) is integrated exactly up to its polynomial factor.
 */
struct QuadratureSpec {
  int nodes_per_axis = 48;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double scale = 1.0;
  Eigen::Matrix3d axes = Eigen::Matrix3d::Identity();
  QuadratureScheme scheme = QuadratureScheme::GaussHermiteTensor;
  double tolerance = 1e-10;

  /// Throws std::invalid_argument unless nodes_per_axis >= 8, scale > 0,
  /// tolerance > 0 and axes is invertible.
  void validate() const;
};

/// One-dimensional rule on nodes/weights, sorted by node.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Hermite rule for the weight exp(-x^2). Cached; thread-safe.
const QuadratureRule& gauss_hermite_rule(int n);

/// Gauss-Legendre rule on [-1, 1]. Cached; thread-safe.
const QuadratureRule& gauss_legendre_rule(int n);

template <int Rows>
struct QuadratureResult {
  Eigen::Matrix<std::complex<double>, Rows, 1> value;
  /// |I(fine) - I(coarse)| (max over components).
  double error_estimate = 0.0;
  bool converged = true;
};

class NonConvergentError : public std::runtime_error {
 public:
  NonConvergentError(const std::string& what, double error_estimate, double magnitude)
      : std::runtime_error(what), error_estimate_(error_estimate), magnitude_(magnitude) {}

  double error_estimate() const { return error_estimate_; }
  double magnitude() const { return magnitude_; }

 private:
  double error_estimate_;
  double magnitude_;
};

namespace detail {

using ComponentIntegrand = std::function<void(const Eigen::Vector3d&, std::complex<double>*)>;

struct DynamicResult {
  std::vector<std::complex<double>> value;
  double error_estimate = 0.0;
  bool converged = true;
};

DynamicResult integrate_components(const ComponentIntegrand& f, int rows,
                                   const QuadratureSpec& spec);

[[noreturn]] void throw_non_convergent(double error_estimate, double magnitude,
                                       const QuadratureSpec& spec);

}  // namespace detail

/*!
 * Integrate a vector-valued integrand without throwing; the result carries
 * the convergence verdict. `f` maps an Eigen::Vector3d momentum to an
 * Eigen::Matrix<std::complex<double>, Rows, 1>.
 */
template <int Rows, typename F>
QuadratureResult<Rows> evaluate_integral(F&& f, const QuadratureSpec& spec) {
  detail::ComponentIntegrand fn = [&f](const Eigen::Vector3d& p, std::complex<double>* out) {
    const Eigen::Matrix<std::complex<double>, Rows, 1> v = f(p);
    for (int r = 0; r < Rows; ++r) out[r] = v(r);
  };
  detail::DynamicResult raw = detail::integrate_components(fn, Rows, spec);
  QuadratureResult<Rows> result;
  for (int r = 0; r < Rows; ++r) result.value(r) = raw.value[static_cast<std::size_t>(r)];
  result.error_estimate = raw.error_estimate;
  result.converged = raw.converged;
  return result;
}

/// As evaluate_integral, but throws NonConvergentError when the node-halving
/// estimate exceeds tolerance * max(1, |value|).
template <int Rows, typename F>
QuadratureResult<Rows> integrate_vector(F&& f, const QuadratureSpec& spec) {
  QuadratureResult<Rows> result = evaluate_integral<Rows>(std::forward<F>(f), spec);
  if (!result.converged) {
    detail::throw_non_convergent(result.error_estimate, result.value.cwiseAbs().maxCoeff(), spec);
  }
  return result;
}

struct ScalarIntegral {
  std::complex<double> value;
  double error_estimate = 0.0;
};

/// Scalar complex integrand; throws NonConvergentError.
ScalarIntegral integrate(const std::function<std::complex<double>(const Eigen::Vector3d&)>& f,
                         const QuadratureSpec& spec);

}  // namespace wigner
