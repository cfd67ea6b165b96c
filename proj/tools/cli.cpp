#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "wigner/analytics.hpp"
#include "wigner/framesearch.hpp"
#include "wigner/spinstate.hpp"
#include "wigner/transform.hpp"
#include "wigner/verify.hpp"

namespace wigner::cli {

namespace {

using nlohmann::ordered_json;

constexpr int kDefaultNodes = 48;
constexpr const char* kNodesEnv = "WIGNER_ENTROPY_NODES";

constexpr const char* kUnitsNote =
    "Natural units (c = 1): mass and width share one arbitrary unit; only w/m and the "
    "rapidity are physical.";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_double(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

struct PacketArgs {
  double mass = 1.0;
  double width = 0.1;
  std::optional<double> rapidity;
  std::optional<double> beta;
  std::string axis = "x";
  bool spin_up = false;
  std::string spin;
  int nodes = 0;
  std::string format = "json";
};

void add_packet_options(CLI::App* cmd, PacketArgs& args) {
  cmd->add_option("--mass", args.mass, "Particle mass m > 0")->capture_default_str();
  cmd->add_option("--width", args.width, "Gaussian momentum width w > 0")->capture_default_str();
  auto* rapidity = cmd->add_option("--rapidity", args.rapidity, "Boost rapidity (default 0)");
  auto* beta = cmd->add_option("--beta", args.beta, "Boost velocity, |beta| < 1 (alternative to --rapidity)");
  rapidity->excludes(beta);
  cmd->add_option("--axis", args.axis, "Boost axis")
      ->check(CLI::IsMember({"x", "y", "z"}))
      ->capture_default_str();
  auto* up = cmd->add_flag("--spin-up", args.spin_up, "Spin state (1, 0) (default)");
  auto* spin = cmd->add_option("--spin", args.spin, "Spin state chi1,chi2 (complex, unit norm)");
  up->excludes(spin);
  cmd->add_option("--nodes", args.nodes, "Gauss-Hermite nodes per axis (default 48, or $WIGNER_ENTROPY_NODES)");
}

struct ResolvedPacket {
  double mass;
  double width;
  double rapidity;
  Vector3d axis;
  Spinord spin;
  int nodes;
};

int resolve_nodes(int flag) {
  int nodes = flag;
  if (nodes <= 0) {
    nodes = kDefaultNodes;
    if (const char* env = std::getenv(kNodesEnv); env != nullptr && *env != '\0') {
      try {
        nodes = static_cast<int>(parse_double(env));
      } catch (const std::invalid_argument&) {
        throw UsageError(std::string("invalid ") + kNodesEnv + "='" + env + "'");
      }
    }
  }
  if (nodes < 8) throw UsageError("node count must be at least 8 (got " + std::to_string(nodes) + ")");
  return nodes;
}

ResolvedPacket resolve(const PacketArgs& args) {
  if (!(args.mass > 0.0)) throw UsageError("invalid --mass " + format_number(args.mass) + ": must be positive");
  if (!(args.width > 0.0)) throw UsageError("invalid --width " + format_number(args.width) + ": must be positive");
  double rapidity = args.rapidity.value_or(0.0);
  if (args.beta) {
    if (!(std::abs(*args.beta) < 1.0)) {
      throw UsageError("invalid --beta " + format_number(*args.beta) + ": |beta| must be < 1");
    }
    rapidity = std::atanh(*args.beta);
  }
  if (!std::isfinite(rapidity)) throw UsageError("invalid --rapidity: must be finite");

  Vector3d axis = args.axis == "x" ? Vector3d::UnitX() : args.axis == "y" ? Vector3d::UnitY() : Vector3d::UnitZ();

  Spinord spin = spin_up();
  if (!args.spin.empty()) {
    const auto comma = args.spin.find(',');
    if (comma == std::string::npos) throw UsageError("invalid --spin '" + args.spin + "': expected chi1,chi2");
    try {
      spin = Spinord(parse_complex(args.spin.substr(0, comma)), parse_complex(args.spin.substr(comma + 1)));
    } catch (const std::invalid_argument& e) {
      throw UsageError("invalid --spin '" + args.spin + "': " + e.what());
    }
    if (std::abs(spin.norm() - 1.0) > 1e-12) {
      throw UsageError("invalid --spin '" + args.spin + "': spinor must have unit norm");
    }
  }
  return {args.mass, args.width, rapidity, axis, spin, resolve_nodes(args.nodes)};
}

SpinorPacket boosted_packet(const ResolvedPacket& r) {
  return boost_state(LorentzElementd::boost(r.axis, r.rapidity), gaussian_packet(r.mass, r.width, r.spin));
}

ordered_json vector_json(const Vector3d& v) { return ordered_json::array({v.x(), v.y(), v.z()}); }

// --- entropy ---------------------------------------------------------------

int cmd_entropy(const PacketArgs& args, std::ostream& out) {
  const ResolvedPacket r = resolve(args);
  PipelineParams params;
  params.mass = r.mass;
  params.width = r.width;
  params.rapidity = r.rapidity;
  params.axis = r.axis;
  params.spin = r.spin;
  params.nodes_per_axis = r.nodes;
  const PipelinePoint point = run_pipeline(params);
  const Vector3d& n = point.density.bloch();
  const double deviation = point.leading.entropy > 0.0
                               ? (point.report.entropy - point.leading.entropy) / point.leading.entropy
                               : 0.0;

  ordered_json report;
  report["w"] = r.width;
  report["m"] = r.mass;
  report["alpha"] = r.rapidity;
  report["t"] = point.leading.t;
  report["S_numeric"] = point.report.entropy;
  report["S_leading"] = point.leading.entropy;
  report["nz_numeric"] = n.z();
  report["nz_leading"] = point.leading.nz;
  report["quad_error"] = point.report.quadrature_error;
  report["n_x"] = n.x();
  report["n_y"] = n.y();
  report["n_z"] = n.z();
  report["lambda_plus"] = point.report.lambda_plus;
  report["lambda_minus"] = point.report.lambda_minus;
  report["relative_deviation"] = deviation;

  if (args.format == "csv") {
    std::string header;
    std::string row;
    for (const auto& [key, value] : report.items()) {
      header += (header.empty() ? "" : ",") + key;
      row += (row.empty() ? "" : ",") + format_number(value.get<double>());
    }
    out << header << '\n' << row << '\n';
    return kOk;
  }
  report["quadrature"] = {{"scheme", to_string(QuadratureScheme::GaussHermiteTensor)},
                          {"nodes_per_axis", r.nodes},
                          {"tolerance", QuadratureSpec{}.tolerance},
                          {"error_estimate", point.report.quadrature_error}};
  out << report.dump(2) << '\n';
  return kOk;
}

// --- scan ------------------------------------------------------------------

struct ScanArgs {
  double mass = 1.0;
  std::vector<double> widths{0.02, 0.05, 0.1};
  std::vector<double> rapidities{0.5, 1.0, 2.0};
  std::string axis = "x";
  int nodes = 0;
};

int cmd_scan(const ScanArgs& args, std::ostream& out) {
  if (!(args.mass > 0.0)) throw UsageError("invalid --mass: must be positive");
  for (double w : args.widths) {
    if (!(w > 0.0)) throw UsageError("invalid width " + format_number(w) + ": must be positive");
  }
  const int nodes = resolve_nodes(args.nodes);
  const Vector3d axis = args.axis == "x" ? Vector3d::UnitX() : args.axis == "y" ? Vector3d::UnitY() : Vector3d::UnitZ();

  std::ostringstream table;
  const auto& columns = scan_columns();
  for (std::size_t i = 0; i < columns.size(); ++i) table << (i ? "," : "") << columns[i];
  table << '\n';
  for (double w : args.widths) {
    for (double alpha : args.rapidities) {
      PipelineParams params;
      params.mass = args.mass;
      params.width = w;
      params.rapidity = alpha;
      params.axis = axis;
      params.nodes_per_axis = nodes;
      const PipelinePoint p = run_pipeline(params);
      const double row[] = {w,
                            args.mass,
                            alpha,
                            p.leading.t,
                            p.report.entropy,
                            p.leading.entropy,
                            p.density.bloch().z(),
                            p.leading.nz,
                            p.report.quadrature_error};
      for (std::size_t i = 0; i < std::size(row); ++i) table << (i ? "," : "") << format_number(row[i]);
      table << '\n';
    }
  }
  out << table.str();
  return kOk;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::uint64_t seed = 1;
  int nodes = 0;
  bool skip_frame_search = false;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  VerifyOptions options;
  options.seed = args.seed;
  options.nodes_per_axis = resolve_nodes(args.nodes);
  options.include_frame_search = !args.skip_frame_search;
  const auto results = run_verification(options);
  int failed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << " [" << to_string(r.category)
        << "] measured=" << format_number(r.measured) << ' ' << r.relation << ' '
        << format_number(r.threshold);
    if (!r.detail.empty()) out << " (" << r.detail << ')';
    out << '\n';
    if (!r.passed) ++failed;
  }
  out << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << '\n';
  return failed == 0 ? kOk : kQuadrature;
}

// --- minframe / restframe --------------------------------------------------

struct SearchArgs {
  PacketArgs packet;
  int max_evaluations = 500;
};

int cmd_search(const SearchArgs& args, bool minimise_entropy, std::ostream& out) {
  const ResolvedPacket r = resolve(args.packet);
  FrameSearchOptions options;
  options.nodes_per_axis = r.nodes;
  options.max_evaluations = args.max_evaluations;
  const SpinorPacket packet = boosted_packet(r);
  const FrameSearchResult result =
      minimise_entropy ? min_entropy_frame(packet, options) : rest_frame(packet, options);

  ordered_json report;
  report["search"] = minimise_entropy ? "min_entropy" : "rest_frame";
  report["rapidity"] = vector_json(result.rapidity);
  report["rapidity_norm"] = result.rapidity.norm();
  const char* entropy_key = minimise_entropy ? "S_min" : "S";
  report[entropy_key] = result.entropy;
  report["residual_mean_momentum"] = vector_json(result.residual_mean_momentum);
  report["evaluations"] = result.evaluations;
  report["converged"] = result.converged;
  if (args.packet.format == "csv") {
    out << "rapidity_x,rapidity_y,rapidity_z," << entropy_key
        << ",residual_x,residual_y,residual_z,evaluations,converged\n";
    out << format_number(result.rapidity.x()) << ',' << format_number(result.rapidity.y()) << ','
        << format_number(result.rapidity.z()) << ',' << format_number(result.entropy) << ','
        << format_number(result.residual_mean_momentum.x()) << ','
        << format_number(result.residual_mean_momentum.y()) << ','
        << format_number(result.residual_mean_momentum.z()) << ',' << result.evaluations << ','
        << (result.converged ? 1 : 0) << '\n';
  } else {
    out << report.dump(2) << '\n';
  }
  return result.converged ? kOk : kSearchNotConverged;
}

}  // namespace

const std::vector<std::string>& scan_columns() {
  static const std::vector<std::string> columns{"w",         "m",          "alpha",
                                                "t",         "S_numeric",  "S_leading",
                                                "nz_numeric", "nz_leading", "quad_error"};
  return columns;
}

std::complex<double> parse_complex(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (c != ' ') text += c;
  }
  if (text.empty()) throw std::invalid_argument("empty complex number");
  if (text.back() != 'i') return {parse_double(text), 0.0};

  const std::string body = text.substr(0, text.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string real = split == std::string::npos ? "" : body.substr(0, split);
  std::string imag = split == std::string::npos ? body : body.substr(split);
  if (imag.empty() || imag == "+") imag = "1";
  if (imag == "-") imag = "-1";
  return {real.empty() ? 0.0 : parse_double(real), parse_double(imag)};
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{std::string("Spin entropy of boosted spin-1/2 wave packets.\n") + kUnitsNote,
               "wigner_entropy"};
  app.require_subcommand(1);

  PacketArgs entropy_args;
  auto* entropy_cmd = app.add_subcommand("entropy", "Spin entropy of a boosted Gaussian packet");
  add_packet_options(entropy_cmd, entropy_args);
  entropy_cmd->add_option("--format", entropy_args.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  ScanArgs scan_args;
  auto* scan_cmd = app.add_subcommand("scan", "CSV sweep over widths (outer) and rapidities (inner)");
  scan_cmd->add_option("--mass", scan_args.mass, "Particle mass")->capture_default_str();
  scan_cmd->add_option("--widths", scan_args.widths, "Comma-separated widths")->delimiter(',');
  scan_cmd->add_option("--rapidities", scan_args.rapidities, "Comma-separated rapidities")->delimiter(',');
  scan_cmd->add_option("--axis", scan_args.axis, "Boost axis")->check(CLI::IsMember({"x", "y", "z"}));
  scan_cmd->add_option("--nodes", scan_args.nodes, "Gauss-Hermite nodes per axis");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Run the built-in consistency checks");
  verify_cmd->add_option("--seed", verify_args.seed, "Seed for the randomised checks")->capture_default_str();
  verify_cmd->add_option("--nodes", verify_args.nodes, "Gauss-Hermite nodes per axis");
  verify_cmd->add_flag("--skip-frame-search", verify_args.skip_frame_search, "Skip the frame search check");

  SearchArgs min_args;
  auto* min_cmd = app.add_subcommand("minframe", "Find the boost minimising the spin entropy");
  SearchArgs rest_args;
  auto* rest_cmd = app.add_subcommand("restframe", "Find the boost to the frame where <p> = 0");
  for (auto [cmd, args] : {std::pair{min_cmd, &min_args}, std::pair{rest_cmd, &rest_args}}) {
    add_packet_options(cmd, args->packet);
    cmd->add_option("--format", args->packet.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--max-evaluations", args->max_evaluations, "Entropy evaluation budget")
        ->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (entropy_cmd->parsed()) return cmd_entropy(entropy_args, out);
    if (scan_cmd->parsed()) return cmd_scan(scan_args, out);
    if (verify_cmd->parsed()) return cmd_verify(verify_args, out);
    if (min_cmd->parsed()) return cmd_search(min_args, true, out);
    if (rest_cmd->parsed()) return cmd_search(rest_args, false, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NonConvergentError& e) {
    err << "error: " << e.what() << '\n';
    return kQuadrature;
  } catch (const NotNormalizedError& e) {
    err << "error: " << e.what() << '\n';
    return kQuadrature;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace wigner::cli
