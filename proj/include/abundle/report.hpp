#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abundle/calculus.hpp"
#include "abundle/fixture.hpp"

namespace abundle {

inline constexpr std::string_view kReportVersion = "abundle-report/1";

struct RunOptions {
  double step = kDefaultStep;
  // Overrides the finite-difference tolerance (calculus, leibniz,
  // compatibility). Exact-arithmetic suites keep their own tolerances.
  std::optional<double> tol;
  std::size_t samples = 32;
  std::size_t directions = 8;
  std::uint64_t seed = kDefaultSeed;
  bool diagonal_only = true;
};

struct ReportEntry {
  std::string suite;
  std::string id;
  // The identity under test, written out.
  std::string anchor;
  double residual = 0.0;
  std::optional<double> tolerance;
  // For ratio checks: residual must fall within [lo, hi].
  std::optional<std::pair<double, double>> bounds;
  bool passed = false;
  // Informative entries carry no pass bar and do not affect the verdict.
  bool informative = false;
  std::string detail;
  std::vector<double> samples;
};

struct VerificationReport {
  std::string fixture;
  std::vector<ReportEntry> entries;
  double seconds = 0.0;

  bool passed() const;
  const ReportEntry* find(std::string_view id) const;
};

const std::vector<std::string>& suite_names();

// `selector` is "all" or a comma-separated list of suite names. Throws
// InvalidArgument for unknown suite names; failures inside a suite become
// failing entries.
VerificationReport run_suite(const Fixture& fixture, std::string_view selector,
                             const RunOptions& options = {});

// Entries are ordered by suite and id. With include_timing = false the output
// is a deterministic function of the fixture and options.
std::string serialize_report(const VerificationReport& report, bool include_timing = true);

}  // namespace abundle
