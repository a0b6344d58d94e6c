#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "defourier/de_maps.hpp"
#include "defourier/quadrature.hpp"

namespace defourier::cli {

enum class Command { Eval, Sweep, Auto, AutoSweep, Poles, Tables };

/// Exit codes of the defourier tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Invalid flag combination or unknown name; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunSpec {
  Command command = Command::Eval;
  std::string integrand = "f1";
  double delta = 1.5;
  TransformKind kind = TransformKind::Cosine;
  std::vector<MapKind> maps = {MapKind::Phi1, MapKind::Phi2};
  std::optional<double> omega;
  std::optional<double> omega_min;
  std::optional<double> omega_max;
  long omega_steps = 10;
  long n = 40;
  long n_min = 10;
  long n_max = 60;
  double eta = 1e-7;
  long n1 = 10;
  double gamma = 1.2;
  std::vector<double> h_grid = {0.2, 0.1, 0.05, 0.02, 0.01};
  std::optional<std::complex<double>> z0;
  std::string out;
  /// Worker threads for row-parallel commands; 0 runs sequentially.
  unsigned threads = 0;
};

/// Throws UsageError when required flags are missing or inconsistent, or
/// when the integrand lacks the metadata the command needs.
void validate(const RunSpec& spec);

// Each command returns the full CSV text (header + rows, LF endings).
std::string cmd_eval(const RunSpec& spec);
std::string cmd_sweep(const RunSpec& spec);
std::string cmd_auto(const RunSpec& spec);
std::string cmd_autosweep(const RunSpec& spec);
std::string cmd_poles(const RunSpec& spec);
std::string cmd_tables(const RunSpec& spec);

std::string run_command(const RunSpec& spec);

/// Parses arguments, runs the command, writes CSV to --out or `out`, and
/// returns the exit code. Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace defourier::cli
