#pragma once

// Subcommands of the `cbs` tool. Each writes a CSV (curves) and a JSON
// sidecar (scalar summaries) and returns the sidecar.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cbs/two_atom.hpp"
#include "cbs/verify.hpp"

namespace cbs::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kNumericError = 3 };

struct SpectrumConfig {
  std::vector<double> deltas{0.0, 2.0};
  double s = 0.1;
  std::size_t points = 4001;
  std::optional<double> half_width;
  std::string out = "spectrum.csv";
};

struct EnhancementConfig {
  double delta = 10.0;
  std::vector<double> s0;  ///< empty selects 0, 0.1, ..., 8
  std::string out = "enhancement.csv";
};

struct ConeConfig {
  double delta = 0.0;
  double s = 0.05;
  std::optional<double> s0;  ///< overrides s when set
  double r12_wavelengths = 8.0;
  std::optional<double> r_perp_wavelengths;  ///< defaults to r12
  double laser_offset = 0.5;  ///< omega_D - omega_L of the fixed-frequency panel
  std::optional<double> theta_max;  ///< defaults to three cone zeros
  std::size_t points = 601;
  two_atom::PropagationMode mode = two_atom::PropagationMode::phase_neglect;
  std::string out = "cone.csv";
};

struct VerifyCommandConfig {
  verify::VerifyConfig suite;
  std::optional<int> criterion;
  std::string out = "verify.json";
};

nlohmann::ordered_json cmd_spectrum(const SpectrumConfig& config);
nlohmann::ordered_json cmd_enhancement(const EnhancementConfig& config);
nlohmann::ordered_json cmd_cone(const ConeConfig& config);
/// Writes the JSON report and returns it with the pass/fail flag.
verify::Report cmd_verify(const VerifyCommandConfig& config);

/// Parses arguments (and an optional --config file), runs the subcommand and
/// maps errors to exit codes.
int run(int argc, char** argv);

}  // namespace cbs::cli
