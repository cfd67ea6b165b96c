#include "wigner/framesearch.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "wigner/spinstate.hpp"
#include "wigner/transform.hpp"

namespace wigner {

namespace {

// Chains are collapsed at once so every objective evaluation costs a single
// Wigner rotation per node.
constexpr BoostOptions kCollapse{1};

SpinorPacket seen_from(const SpinorPacket& packet, const Vector3d& rapidity) {
  return boost_state(LorentzElementd::boost(rapidity), packet, kCollapse);
}

QuadratureSpec grid_for(const SpinorPacket& packet, int nodes) {
  QuadratureSpec spec = default_spec(packet);
  spec.nodes_per_axis = nodes;
  return spec;
}

double narrowest_width(const SpinorPacket& packet) {
  const Eigen::Matrix3d map = packet.scale_hint() * packet.axes_hint();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> gram(map * map.transpose(),
                                                            Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(gram.eigenvalues()(0), 0.0));
}

Vector3d normalized_mean(const SpinorPacket& packet, int nodes) {
  const QuadratureSpec spec = grid_for(packet, nodes);
  return mean_momentum(packet, spec).value / norm(packet, spec).value;
}

}  // namespace

double entropy_in_frame(const SpinorPacket& packet, const Vector3d& rapidity, int nodes_per_axis) {
  const SpinorPacket moved = seen_from(packet, rapidity);
  return entropy(reduced_density(moved, grid_for(moved, nodes_per_axis))).entropy;
}

FrameSearchResult rest_frame(const SpinorPacket& packet, const FrameSearchOptions& options) {
  const double tolerance = options.rest_tolerance * narrowest_width(packet);
  FrameSearchResult result;
  Vector3d v = Vector3d::Zero();
  Vector3d mean = normalized_mean(packet, options.nodes_per_axis);
  while (true) {
    if (mean.norm() <= tolerance) {
      result.converged = true;
      break;
    }
    if (result.evaluations >= options.max_rest_iterations) break;
    ++result.evaluations;
    const Vector3d step = -std::asinh(mean.norm() / packet.mass()) * mean.normalized();
    double damping = 1.0;
    Vector3d candidate = v + step;
    Vector3d candidate_mean = normalized_mean(seen_from(packet, candidate), options.nodes_per_axis);
    for (int halvings = 0; halvings < 8 && candidate_mean.norm() > mean.norm(); ++halvings) {
      damping *= 0.5;
      candidate = v + damping * step;
      candidate_mean = normalized_mean(seen_from(packet, candidate), options.nodes_per_axis);
    }
    v = candidate;
    mean = candidate_mean;
  }
  result.rapidity = v;
  result.boost = LorentzElementd::boost(v);
  result.residual_mean_momentum = mean;
  result.entropy = entropy_in_frame(packet, v, options.nodes_per_axis);
  return result;
}

FrameSearchResult min_entropy_frame(const SpinorPacket& packet,
                                    const FrameSearchOptions& options) {
  const FrameSearchResult rest = rest_frame(packet, options);
  auto objective = [&](const Vector3d& v) {
    return entropy_in_frame(packet, v, options.nodes_per_axis);
  };

  SimplexOptions simplex;
  simplex.diameter = options.simplex_diameter;
  simplex.spread = options.entropy_spread;
  simplex.initial_step = options.initial_step;

  simplex.max_evaluations = options.max_evaluations;
  const SimplexResult from_rest = minimize_simplex(objective, rest.rapidity, simplex);
  simplex.max_evaluations = std::max(0, options.max_evaluations - from_rest.evaluations);
  const SimplexResult from_identity = minimize_simplex(objective, Vector3d::Zero(), simplex);

  const SimplexResult& best =
      from_identity.minimum < from_rest.minimum ? from_identity : from_rest;
  FrameSearchResult result;
  result.rapidity = best.argmin;
  result.boost = LorentzElementd::boost(best.argmin);
  result.entropy = best.minimum;
  result.evaluations = from_rest.evaluations + from_identity.evaluations;
  result.converged = best.converged;
  result.residual_mean_momentum =
      normalized_mean(seen_from(packet, best.argmin), options.nodes_per_axis);
  return result;
}

SimplexResult minimize_simplex(const std::function<double(const Vector3d&)>& objective,
                               const Vector3d& start, const SimplexOptions& options) {
  constexpr int kVertices = 4;
  std::array<Vector3d, kVertices> x;
  std::array<double, kVertices> f{};
  SimplexResult result;
  const auto eval = [&](const Vector3d& v) {
    ++result.evaluations;
    return objective(v);
  };
  const auto budget_left = [&] { return result.evaluations < options.max_evaluations; };

  x[0] = start;
  for (int i = 1; i < kVertices; ++i) {
    x[i] = start;
    x[i](i - 1) += options.initial_step;
  }
  int filled = 0;
  for (; filled < kVertices && budget_left(); ++filled) f[filled] = eval(x[filled]);
  if (filled < kVertices) {
    // Budget exhausted while building the simplex.
    result.argmin = start;
    result.minimum = std::numeric_limits<double>::infinity();
    for (int i = 0; i < filled; ++i) {
      if (f[i] < result.minimum) {
        result.minimum = f[i];
        result.argmin = x[i];
      }
    }
    return result;
  }

  std::array<int, kVertices> order{};
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
    const int best = order[0];
    const int worst = order[kVertices - 1];
    const int second_worst = order[kVertices - 2];

    double diameter = 0.0;
    for (int i = 0; i < kVertices; ++i) diameter = std::max(diameter, (x[i] - x[best]).norm());
    if (diameter < options.diameter || f[worst] - f[best] < options.spread) {
      result.converged = true;
      break;
    }
    if (!budget_left()) break;

    Vector3d centroid = Vector3d::Zero();
    for (int i = 0; i < kVertices; ++i) {
      if (i != worst) centroid += x[i];
    }
    centroid /= kVertices - 1;

    const Vector3d reflected = centroid + (centroid - x[worst]);
    const double f_reflected = eval(reflected);
    if (f_reflected < f[best]) {
      if (!budget_left()) {
        x[worst] = reflected;
        f[worst] = f_reflected;
        continue;
      }
      const Vector3d expanded = centroid + 2.0 * (centroid - x[worst]);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        x[worst] = expanded;
        f[worst] = f_expanded;
      } else {
        x[worst] = reflected;
        f[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < f[second_worst]) {
      x[worst] = reflected;
      f[worst] = f_reflected;
      continue;
    }
    if (!budget_left()) continue;

    const bool outside = f_reflected < f[worst];
    const Vector3d contracted = outside ? centroid + 0.5 * (reflected - centroid)
                                        : centroid + 0.5 * (x[worst] - centroid);
    const double f_contracted = eval(contracted);
    if (f_contracted < std::min(f_reflected, f[worst])) {
      x[worst] = contracted;
      f[worst] = f_contracted;
      continue;
    }
    for (int i = 0; i < kVertices && budget_left(); ++i) {
      if (i == best) continue;
      x[i] = x[best] + 0.5 * (x[i] - x[best]);
      f[i] = eval(x[i]);
    }
  }

  const int best = static_cast<int>(std::min_element(f.begin(), f.end()) - f.begin());
  result.argmin = x[best];
  result.minimum = f[best];
  return result;
}

}  // namespace wigner
