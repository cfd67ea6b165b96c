#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace wigner::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kQuadrature = 2,
  kSearchNotConverged = 3,
};

/// CSV column order of the scan table (and the flat keys of the JSON report).
const std::vector<std::string>& scan_columns();

/// Parses "0.6", "-0.8i", "0.3+0.4i", "1e-3-2i".
std::complex<double> parse_complex(const std::string& text);

/// Shortest round-trip decimal form, independent of the C++ locale.
std::string format_number(double value);

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wigner::cli
