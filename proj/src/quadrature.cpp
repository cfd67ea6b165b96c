#include "wigner/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace wigner {

namespace {

constexpr double kNewtonTolerance = 1e-15;
constexpr int kNewtonMaxIterations = 100;

// Half-width (in reference coordinates) of the box used by the refinement
// scheme, and its per-cell Gauss-Legendre order.
constexpr double kRefinementHalfWidth = 6.0;
constexpr int kRefinementCellOrder = 8;
constexpr int kRefinementMaxCells = 16;

QuadratureRule build_gauss_hermite(int n) {
  // Newton iteration on orthonormal Hermite polynomials, starting from the
  // usual asymptotic guesses for the largest roots.
  const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> w(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[static_cast<std::size_t>(i - 2)];
    }
    double pp = 0.0;
    for (int it = 0; it < kNewtonMaxIterations; ++it) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= kNewtonTolerance * std::max(1.0, std::abs(z))) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    x[static_cast<std::size_t>(n - 1 - i)] = -z;
    w[static_cast<std::size_t>(i)] = 2.0 / (pp * pp);
    w[static_cast<std::size_t>(n - 1 - i)] = w[static_cast<std::size_t>(i)];
  }
  if (n % 2 == 1) x[static_cast<std::size_t>(n / 2)] = 0.0;
  std::reverse(x.begin(), x.end());
  std::reverse(w.begin(), w.end());
  return {std::move(x), std::move(w)};
}

QuadratureRule build_gauss_legendre(int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> w(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < kNewtonMaxIterations; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= kNewtonTolerance) break;
    }
    x[static_cast<std::size_t>(i)] = -z;
    x[static_cast<std::size_t>(n - 1 - i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[static_cast<std::size_t>(n - 1 - i)] = w[static_cast<std::size_t>(i)];
  }
  if (n % 2 == 1) x[static_cast<std::size_t>(n / 2)] = 0.0;
  return {std::move(x), std::move(w)};
}

const QuadratureRule& cached_rule(int n, bool hermite) {
  static std::mutex mutex;
  static std::map<std::pair<int, bool>, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(n, hermite);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, hermite ? build_gauss_hermite(n) : build_gauss_legendre(n)).first;
  }
  return it->second;
}

// Reference-coordinate nodes and total weights along one axis.
struct AxisGrid {
  std::vector<double> x;
  std::vector<double> weight;
};

AxisGrid hermite_axis(int n) {
  const QuadratureRule& rule = gauss_hermite_rule(n);
  AxisGrid g;
  g.x = rule.nodes;
  g.weight.resize(rule.weights.size());
  // The integrand is not factored by the weight function, so fold exp(x^2)
  // back into the weights.
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    g.weight[i] = rule.weights[i] * std::exp(rule.nodes[i] * rule.nodes[i]);
  }
  return g;
}

AxisGrid legendre_axis(int cells) {
  const QuadratureRule& rule = gauss_legendre_rule(kRefinementCellOrder);
  const double h = 2.0 * kRefinementHalfWidth / cells;
  AxisGrid g;
  for (int c = 0; c < cells; ++c) {
    const double a = -kRefinementHalfWidth + c * h;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      g.x.push_back(a + 0.5 * h * (1.0 + rule.nodes[i]));
      g.weight.push_back(0.5 * h * rule.weights[i]);
    }
  }
  return g;
}

std::vector<std::complex<double>> tensor_sum(const detail::ComponentIntegrand& f, int rows,
                                             const QuadratureSpec& spec, const AxisGrid& g) {
  const Eigen::Matrix3d map = spec.scale * spec.axes;
  const double jacobian = std::abs(map.determinant());
  const std::size_t n = g.x.size();
  const std::size_t r = static_cast<std::size_t>(rows);
  std::vector<std::complex<double>> total(r, 0.0);
  std::vector<std::complex<double>> slab(r);
  std::vector<std::complex<double>> row(r);
  std::vector<std::complex<double>> sample(r);
  // Fixed i-j-k order with per-slab partial sums: the result depends only on
  // the inputs.
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(slab.begin(), slab.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      std::fill(row.begin(), row.end(), 0.0);
      const Eigen::Vector3d partial =
          spec.center + map.col(0) * g.x[i] + map.col(1) * g.x[j];
      for (std::size_t k = 0; k < n; ++k) {
        const Eigen::Vector3d p = partial + map.col(2) * g.x[k];
        f(p, sample.data());
        for (std::size_t c = 0; c < r; ++c) row[c] += g.weight[k] * sample[c];
      }
      for (std::size_t c = 0; c < r; ++c) slab[c] += g.weight[j] * row[c];
    }
    for (std::size_t c = 0; c < r; ++c) total[c] += g.weight[i] * slab[c];
  }
  for (auto& v : total) v *= jacobian;
  return total;
}

double max_abs_difference(const std::vector<std::complex<double>>& a,
                          const std::vector<std::complex<double>>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double max_abs(const std::vector<std::complex<double>>& a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

std::string to_string(QuadratureScheme scheme) {
  switch (scheme) {
    case QuadratureScheme::GaussHermiteTensor:
      return "gauss-hermite-tensor";
    case QuadratureScheme::AdaptiveRefinement:
      return "adaptive-refinement";
  }
  return "unknown";
}

void QuadratureSpec::validate() const {
  if (nodes_per_axis < 8) {
    throw std::invalid_argument("QuadratureSpec: nodes_per_axis must be at least 8");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("QuadratureSpec: scale must be positive");
  }
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("QuadratureSpec: tolerance must be positive");
  }
  if (!center.allFinite() || !axes.allFinite() || std::abs(axes.determinant()) == 0.0) {
    throw std::invalid_argument("QuadratureSpec: axes must be finite and invertible");
  }
}

const QuadratureRule& gauss_hermite_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite_rule: n must be positive");
  return cached_rule(n, true);
}

const QuadratureRule& gauss_legendre_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_rule: n must be positive");
  return cached_rule(n, false);
}

namespace detail {

DynamicResult integrate_components(const ComponentIntegrand& f, int rows,
                                   const QuadratureSpec& spec) {
  spec.validate();
  DynamicResult result;
  if (spec.scheme == QuadratureScheme::GaussHermiteTensor) {
    result.value = tensor_sum(f, rows, spec, hermite_axis(spec.nodes_per_axis));
    const auto coarse = tensor_sum(f, rows, spec, hermite_axis(spec.nodes_per_axis / 2));
    result.error_estimate = max_abs_difference(result.value, coarse);
    result.converged =
        result.error_estimate <= spec.tolerance * std::max(1.0, max_abs(result.value));
    return result;
  }

  // Global h-refinement of a composite Gauss-Legendre rule: double the cells
  // per axis until two successive levels agree.
  std::vector<std::complex<double>> previous = tensor_sum(f, rows, spec, legendre_axis(2));
  for (int cells = 4; cells <= kRefinementMaxCells; cells *= 2) {
    result.value = tensor_sum(f, rows, spec, legendre_axis(cells));
    result.error_estimate = max_abs_difference(result.value, previous);
    result.converged =
        result.error_estimate <= spec.tolerance * std::max(1.0, max_abs(result.value));
    if (result.converged) return result;
    previous = result.value;
  }
  return result;
}

void throw_non_convergent(double error_estimate, double magnitude, const QuadratureSpec& spec) {
  std::ostringstream msg;
  msg << "quadrature did not converge: error estimate " << error_estimate << " exceeds tolerance "
      << spec.tolerance << " (scheme " << to_string(spec.scheme) << ", "
      << spec.nodes_per_axis << " nodes per axis)";
  throw NonConvergentError(msg.str(), error_estimate, magnitude);
}

}  // namespace detail

ScalarIntegral integrate(const std::function<std::complex<double>(const Eigen::Vector3d&)>& f,
                         const QuadratureSpec& spec) {
  auto r = integrate_vector<1>(
      [&f](const Eigen::Vector3d& p) {
        Eigen::Matrix<std::complex<double>, 1, 1> v;
        v(0) = f(p);
        return v;
      },
      spec);
  return {r.value(0), r.error_estimate};
}

}  // namespace wigner
