#include "wigner/analytics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wigner/transform.hpp"

namespace wigner {

LeadingOrder leading_order(double width, double mass, double rapidity) {
  if (!(width > 0.0)) throw std::invalid_argument("leading_order: width must be positive");
  if (!(mass > 0.0)) throw std::invalid_argument("leading_order: mass must be positive");
  LeadingOrder lo;
  lo.width = width;
  lo.mass = mass;
  lo.rapidity = rapidity;
  const double th = std::tanh(rapidity / 2.0);
  lo.t = width * width * th * th / (8.0 * mass * mass);
  lo.nz = 1.0 - 2.0 * lo.t;
  lo.entropy = lo.t > 0.0 ? lo.t * (1.0 - std::log(lo.t)) : 0.0;
  return lo;
}

PipelinePoint run_pipeline(const PipelineParams& params) {
  const SpinorPacket rest = gaussian_packet(params.mass, params.width, params.spin);
  const SpinorPacket moved =
      boost_state(LorentzElementd::boost(params.axis, params.rapidity), rest);
  QuadratureSpec spec = default_spec(moved);
  spec.nodes_per_axis = params.nodes_per_axis;
  spec.tolerance = params.tolerance;
  SpinDensity density = reduced_density(moved, spec);
  EntropyReport report = entropy(density);
  const double one_minus_nz = 2.0 * density.matrix()(1, 1).real();
  return {leading_order(params.width, params.mass, params.rapidity), std::move(density), report,
          one_minus_nz};
}

double convergence_order(double mass, double rapidity, std::span<const double> widths,
                         int nodes_per_axis) {
  if (widths.size() < 2) throw std::invalid_argument("convergence_order: need at least two widths");
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (!(widths[i] > 0.0) || widths[i] > 0.1 * mass) {
      throw std::invalid_argument("convergence_order: widths must lie in (0, 0.1 m]");
    }
    if (i > 0 && !(widths[i] < widths[i - 1])) {
      throw std::invalid_argument("convergence_order: widths must be strictly decreasing");
    }
  }
  const auto n = static_cast<Eigen::Index>(widths.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    PipelineParams params;
    params.mass = mass;
    params.width = widths[static_cast<std::size_t>(i)];
    params.rapidity = rapidity;
    params.nodes_per_axis = nodes_per_axis;
    const PipelinePoint point = run_pipeline(params);
    design(i, 0) = std::log(params.width);
    design(i, 1) = 1.0;
    rhs(i) = std::log(point.one_minus_nz);
  }
  const Eigen::Vector2d fit = design.colPivHouseholderQr().solve(rhs);
  return fit(0);
}

}  // namespace wigner
