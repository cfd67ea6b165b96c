#include "wigner/verify.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "wigner/analytics.hpp"
#include "wigner/framesearch.hpp"
#include "wigner/spinstate.hpp"
#include "wigner/transform.hpp"

namespace wigner {

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

  Vector3d direction() {
    std::normal_distribution<double> normal;
    Vector3d v;
    do {
      v = Vector3d(normal(engine_), normal(engine_), normal(engine_));
    } while (v.norm() < 1e-3);
    return v.normalized();
  }

  FourMomentumd momentum(double mass, double spread) {
    return FourMomentumd(mass, uniform(0.0, spread) * direction());
  }

  LorentzElementd boost(double max_rapidity) {
    return LorentzElementd::boost(direction(), uniform(-max_rapidity, max_rapidity));
  }

  LorentzElementd rotation() { return LorentzElementd::rotation(direction(), uniform(-M_PI, M_PI)); }

  Spinord spinor() {
    Spinord chi(std::complex<double>(uniform(-1, 1), uniform(-1, 1)),
                std::complex<double>(uniform(-1, 1), uniform(-1, 1)));
    return chi.normalized();
  }

 private:
  std::mt19937_64 engine_;
};

double unitarity_defect(const Matrix2cd& d) {
  return std::max((d.adjoint() * d - Matrix2cd::Identity()).cwiseAbs().maxCoeff(),
                  std::abs(d.determinant() - 1.0));
}

CheckResult run_check(const std::string& name, CheckCategory category, double threshold,
                      const std::string& relation, const std::function<double()>& measure) {
  CheckResult r;
  r.name = name;
  r.category = category;
  r.threshold = threshold;
  r.relation = relation;
  try {
    r.measured = measure();
    r.passed = relation == ">" ? r.measured > threshold : r.measured <= threshold;
    if (!std::isfinite(r.measured)) r.passed = false;
  } catch (const NonConvergentError& e) {
    r.passed = false;
    r.measured = std::nan("");
    r.detail = std::string("quadrature: ") + e.what();
  } catch (const NotNormalizedError& e) {
    r.passed = false;
    r.measured = std::nan("");
    r.detail = std::string("normalization: ") + e.what();
  }
  return r;
}

PipelinePoint pipeline(double width, double rapidity, const Vector3d& axis, int nodes) {
  PipelineParams p;
  p.width = width;
  p.rapidity = rapidity;
  p.axis = axis;
  p.nodes_per_axis = nodes;
  return run_pipeline(p);
}

QuadratureSpec grid(const SpinorPacket& packet, int nodes) {
  QuadratureSpec spec = default_spec(packet);
  spec.nodes_per_axis = nodes;
  return spec;
}

}  // namespace

std::string to_string(CheckCategory category) {
  return category == CheckCategory::Algebraic ? "algebraic" : "quadrature";
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  const int nodes = options.nodes_per_axis;
  const double beta_alpha = std::atanh(0.6);
  std::vector<CheckResult> out;
  Sampler sampler(options.seed);

  out.push_back(run_check("wigner_special_unitary", CheckCategory::Algebraic, 1e-12, "<=", [&] {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const LorentzElementd l = i % 2 ? sampler.boost(3.0) : sampler.boost(2.0) * sampler.rotation();
      worst = std::max(worst, unitarity_defect(wigner_rotation(l, sampler.momentum(1.0, 3.0))));
    }
    return worst;
  }));

  out.push_back(run_check("wigner_composition", CheckCategory::Algebraic, 1e-10, "<=", [&] {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      LorentzElementd first = sampler.boost(1.5);
      LorentzElementd second = i % 2 ? LorentzElementd::boost(first.axis(), sampler.uniform(-1.5, 1.5))
                                     : sampler.boost(1.5) * sampler.rotation();
      const FourMomentumd q = sampler.momentum(1.0, 2.0);
      const Matrix2cd lhs = wigner_rotation(second * first, q);
      const Matrix2cd rhs =
          wigner_rotation(second, boost_momentum(first, q)) * wigner_rotation(first, q);
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    return worst;
  }));

  out.push_back(run_check("explicit_x_boost_agreement", CheckCategory::Algebraic, 1e-12, "<=", [&] {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double alpha = sampler.uniform(-3.0, 3.0);
      const FourMomentumd q = sampler.momentum(sampler.uniform(0.5, 2.0), 2.0);
      const std::complex<double> a1(sampler.uniform(-1, 1), sampler.uniform(-1, 1));
      const ExplicitBoostX<double> closed = explicit_boost_x(alpha, q, a1);
      const LorentzElementd l = LorentzElementd::boost(Vector3d::UnitX(), alpha);
      const Spinord general = closed.jacobian_factor * (wigner_rotation(l, q) * Spinord(a1, 0.0));
      worst = std::max({worst, std::abs(general(0) - closed.b1), std::abs(general(1) - closed.b2)});
    }
    return worst;
  }));

  out.push_back(run_check("minkowski_norm", CheckCategory::Algebraic, 1e-12, "<=", [&] {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const FourMomentumd q = sampler.momentum(1.0, 3.0);
      const LorentzElementd l = sampler.boost(2.0) * sampler.rotation();
      // boost_momentum re-derives the energy from the mass shell; compare it
      // with the raw 4x4 action.
      const Vector4<double> v = l.matrix() * q.components();
      const double m2 = v(0) * v(0) - v.tail<3>().squaredNorm();
      const FourMomentumd p = boost_momentum(l, q);
      worst = std::max({worst, std::abs(m2 - 1.0), std::abs(p.energy() - v(0)) / v(0)});
    }
    return worst;
  }));

  out.push_back(run_check("amplitude_round_trip", CheckCategory::Algebraic, 1e-10, "<=", [&] {
    const SpinorPacket psi = gaussian_packet(1.0, 0.1, sampler.spinor());
    const LorentzElementd l = sampler.boost(2.0) * sampler.rotation();
    const SpinorPacket back = boost_state(l.inverse(), boost_state(l, psi));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Vector3d p = sampler.uniform(0.0, 0.3) * sampler.direction();
      worst = std::max(worst, (back(p) - psi(p)).cwiseAbs().maxCoeff() /
                                  std::max(1.0, psi(p).cwiseAbs().maxCoeff()));
    }
    return worst;
  }));

  out.push_back(run_check("entropy_formula_equivalence", CheckCategory::Algebraic, 1e-12, "<=", [&] {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const SpinDensity tau = SpinDensity::from_bloch(sampler.uniform(0.0, 1.0) * sampler.direction());
      worst = std::max(worst, std::abs(entropy(tau).entropy - eigen_entropy_crosscheck(tau)));
    }
    return worst;
  }));

  out.push_back(run_check("preparer_frame_purity", CheckCategory::Quadrature, 1e-12, "<=", [&] {
    const SpinorPacket psi = gaussian_packet(1.0, 0.2, spin_up());
    return entropy(reduced_density(psi, grid(psi, nodes))).entropy;
  }));

  out.push_back(run_check("norm_preservation", CheckCategory::Quadrature, 1e-8, "<=", [&] {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
      const SpinorPacket moved = boost_state(sampler.boost(2.0), gaussian_packet(1.0, 0.1, spin_up()));
      worst = std::max(worst, std::abs(norm(moved, grid(moved, nodes)).value - 1.0));
    }
    return worst;
  }));

  out.push_back(run_check("density_round_trip", CheckCategory::Quadrature, 1e-8, "<=", [&] {
    const SpinorPacket psi = gaussian_packet(1.0, 0.1, sampler.spinor());
    const LorentzElementd l = sampler.boost(1.5);
    const SpinorPacket there = boost_state(l, psi);
    const SpinorPacket back = boost_state(l.inverse(), there);
    const SpinDensity original = reduced_density(psi, grid(psi, nodes));
    const SpinDensity returned = reduced_density(back, grid(back, nodes));
    return (original.matrix() - returned.matrix()).cwiseAbs().maxCoeff();
  }));

  out.push_back(run_check("leading_nz_w0.1", CheckCategory::Quadrature, 0.10, "<=", [&] {
    const PipelinePoint p = pipeline(0.1, beta_alpha, Vector3d::UnitX(), nodes);
    return std::abs(p.one_minus_nz / (1.0 - p.leading.nz) - 1.0);
  }));

  out.push_back(run_check("leading_nz_w0.02", CheckCategory::Quadrature, 0.02, "<=", [&] {
    const PipelinePoint p = pipeline(0.02, beta_alpha, Vector3d::UnitX(), nodes);
    return std::abs(p.one_minus_nz / (1.0 - p.leading.nz) - 1.0);
  }));

  out.push_back(run_check("leading_entropy_w0.1", CheckCategory::Quadrature, 0.10, "<=", [&] {
    const PipelinePoint p = pipeline(0.1, beta_alpha, Vector3d::UnitX(), nodes);
    return std::abs(p.report.entropy / p.leading.entropy - 1.0);
  }));

  out.push_back(run_check("leading_entropy_w0.02", CheckCategory::Quadrature, 0.03, "<=", [&] {
    const PipelinePoint p = pipeline(0.02, beta_alpha, Vector3d::UnitX(), nodes);
    return std::abs(p.report.entropy / p.leading.entropy - 1.0);
  }));

  out.push_back(run_check("convergence_order", CheckCategory::Quadrature, 0.05, "<=", [&] {
    const double widths[] = {0.08, 0.04, 0.02};
    return std::abs(convergence_order(1.0, 1.0, widths, nodes) - 2.0);
  }));

  out.push_back(run_check("transverse_bloch_zero", CheckCategory::Quadrature, 1e-10, "<=", [&] {
    const PipelinePoint p = pipeline(0.1, beta_alpha, Vector3d::UnitX(), nodes);
    return std::max(std::abs(p.density.bloch().x()), std::abs(p.density.bloch().y()));
  }));

  out.push_back(run_check("boost_isotropy", CheckCategory::Quadrature, 1e-10, "<=", [&] {
    const double sx = pipeline(0.1, 1.0, Vector3d::UnitX(), nodes).report.entropy;
    const double sy = pipeline(0.1, 1.0, Vector3d::UnitY(), nodes).report.entropy;
    return std::abs(sx - sy);
  }));

  out.push_back(run_check("non_covariance_ratio", CheckCategory::Quadrature, 2.0, ">", [&] {
    const double narrow = pipeline(0.05, 1.0, Vector3d::UnitX(), nodes).report.entropy;
    const double wide = pipeline(0.10, 1.0, Vector3d::UnitX(), nodes).report.entropy;
    return wide / narrow;
  }));

  out.push_back(run_check("mixture_linearity", CheckCategory::Quadrature, 1e-12, "<=", [&] {
    const double w0 = sampler.uniform(0.1, 1.0);
    const double w1 = sampler.uniform(0.1, 1.0);
    const double w2 = sampler.uniform(0.1, 1.0);
    const double total = w0 + w1 + w2;
    std::vector<Ensemble::Member> members;
    for (double w : {w0, w1}) members.push_back({w / total, gaussian_packet(1.0, 0.1, sampler.spinor())});
    members.push_back({1.0 - members[0].weight - members[1].weight,
                       gaussian_packet(1.0, 0.1, sampler.spinor())});
    const Ensemble ensemble(std::move(members));
    const Ensemble moved = boost_ensemble(sampler.boost(1.0), ensemble);
    double worst = 0.0;
    for (const Ensemble* e : {&ensemble, &moved}) {
      // Integrate the mixed density sum_j c_j a_j a_j^dagger directly on one grid.
      const QuadratureSpec spec = grid(e->members()[0].packet, nodes);
      auto direct = integrate_vector<4>(
          [e](const Vector3d& p) {
            Matrix2cd rho = Matrix2cd::Zero();
            for (const auto& m : e->members()) {
              const Spinord a = m.packet(p);
              rho += m.weight * (a * a.adjoint());
            }
            return Eigen::Matrix<std::complex<double>, 4, 1>(rho(0, 0), rho(0, 1), rho(1, 0), rho(1, 1));
          },
          spec);
      Matrix2cd tau;
      tau << direct.value(0), direct.value(1), direct.value(2), direct.value(3);
      tau /= tau.trace();
      worst = std::max(worst, (ensemble_reduced(*e, spec).matrix() - tau).cwiseAbs().maxCoeff());
    }
    return worst;
  }));

  if (options.include_frame_search) {
    out.push_back(run_check("min_entropy_frame", CheckCategory::Quadrature, 1e-3, "<=", [&] {
      const SpinorPacket moved =
          boost_state(LorentzElementd::boost(Vector3d::UnitX(), 1.0), gaussian_packet(1.0, 0.1, spin_up()));
      FrameSearchOptions fo;
      fo.nodes_per_axis = nodes;
      const FrameSearchResult r = min_entropy_frame(moved, fo);
      if (!(r.entropy < 1e-6) || !r.converged) return std::numeric_limits<double>::infinity();
      return (r.rapidity - Vector3d(-1.0, 0.0, 0.0)).norm();
    }));
  }
  return out;
}

}  // namespace wigner
