#include "abundle/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "json_io.hpp"

namespace abundle {

namespace {

using json_io::json;

constexpr int kLowestDecade = -17;

json histogram(const std::vector<double>& values) {
  std::map<int, std::size_t> bins;
  for (double v : values) {
    int decade = kLowestDecade;
    if (v > 0.0 && std::isfinite(v)) {
      decade = std::max(kLowestDecade, static_cast<int>(std::floor(std::log10(v))));
    } else if (!std::isfinite(v)) {
      decade = 99;
    }
    ++bins[decade];
  }
  json out = json::array();
  for (const auto& [decade, count] : bins) out.push_back({{"decade", decade}, {"count", count}});
  return out;
}

json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const ReportEntry& e) { return e.informative || e.passed; });
}

const ReportEntry* VerificationReport::find(std::string_view id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::string serialize_report(const VerificationReport& report, bool include_timing) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    json j = {{"suite", e.suite},
              {"id", e.id},
              {"anchor", e.anchor},
              {"residual", number_or_string(e.residual)},
              {"pass", e.passed},
              {"informative", e.informative}};
    j["tolerance"] = e.tolerance ? json(*e.tolerance) : json(nullptr);
    if (e.bounds) j["bounds"] = {e.bounds->first, e.bounds->second};
    if (!e.detail.empty()) j["detail"] = e.detail;
    if (!e.samples.empty()) {
      j["sample_count"] = e.samples.size();
      j["histogram"] = histogram(e.samples);
    }
    entries.push_back(std::move(j));
  }
  json out = {{"version", std::string(kReportVersion)},
              {"fixture", report.fixture},
              {"verdict", report.passed() ? "pass" : "fail"},
              {"entries", std::move(entries)}};
  if (include_timing) out["timing"] = {{"seconds", report.seconds}};
  return out.dump(2) + "\n";
}

}  // namespace abundle
