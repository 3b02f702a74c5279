#pragma once

// The acceptance suite: every closed form is recomputed by an independent
// numerical route (quadrature, Monte Carlo, exact rationals) and compared
// with a pinned tolerance.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cbs::verify {

inline constexpr int kCriterionCount = 13;
inline constexpr std::uint64_t kDefaultSeed = 20011112;

/// One comparison. Diagnostic checks are reported but never decide the
/// criterion's outcome.
struct Check {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool relative = false;   ///< deviation is |m - e|/|e| rather than |m - e|
  double deviation = 0.0;
  bool passed = false;
  bool diagnostic = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::vector<Check> checks;
  std::vector<std::string> notes;
};

struct VerifyConfig {
  std::uint64_t seed = kDefaultSeed;
  /// Replaces every pinned tolerance; 0 turns the suite into a reporter self-test.
  std::optional<double> tolerance_override;
  unsigned shards = 1;
};

struct Report {
  VerifyConfig config;
  std::vector<CriterionResult> criteria;
  bool all_passed() const noexcept;
};

/// Runs criterion `id` in [1, kCriterionCount]; throws DomainError otherwise.
CriterionResult run_criterion(int id, const VerifyConfig& config);
Report run_all(const VerifyConfig& config);

/// Deterministic JSON text of the report (same config and seed, same bytes).
std::string to_json(const Report& report);
/// "PASS  3  Bloch consistency  (worst ...)" style summary line.
std::string summary_line(const CriterionResult& result);
/// Indented lines for failed checks, diagnostic checks and notes.
std::vector<std::string> detail_lines(const CriterionResult& result);

}  // namespace cbs::verify
