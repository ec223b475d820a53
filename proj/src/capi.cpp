#include "abundle/abundle.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "abundle/error.hpp"
#include "abundle/fixture.hpp"
#include "abundle/report.hpp"

struct abundle_fixture {
  abundle::Fixture value;
};

struct abundle_report {
  abundle::VerificationReport value;
};

namespace {

thread_local std::string last_error;

abundle_status record(abundle_status status, const char* what) {
  last_error = what;
  return status;
}

template <typename Fn>
abundle_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return ABUNDLE_OK;
  } catch (const abundle::Error& e) {
    return record(static_cast<abundle_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(ABUNDLE_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(ABUNDLE_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

abundle_status null_argument(const char* name) {
  return record(ABUNDLE_INVALID_ARGUMENT, (std::string(name) + " is null").c_str());
}

}  // namespace

extern "C" {

const char* abundle_version(void) { return "0.1.0"; }

const char* abundle_status_string(abundle_status status) {
  if (status == ABUNDLE_OK) return "Ok";
  if (status == ABUNDLE_INTERNAL) return "Internal";
  if (status < ABUNDLE_INVALID_ARGUMENT || status > ABUNDLE_PARSE_ERROR) return "Unknown";
  return abundle::to_string(static_cast<abundle::ErrorCode>(status));
}

const char* abundle_last_error(void) { return last_error.c_str(); }

size_t abundle_fixture_name_count(void) { return abundle::fixture_names().size(); }

const char* abundle_fixture_name_at(size_t index) {
  const auto& names = abundle::fixture_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

size_t abundle_suite_count(void) { return abundle::suite_names().size(); }

const char* abundle_suite_name_at(size_t index) {
  const auto& names = abundle::suite_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

abundle_status abundle_fixture_build(const char* name, uint64_t seed, size_t grid_size,
                                     abundle_fixture** out) {
  if (name == nullptr) return null_argument("name");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new abundle_fixture{abundle::build_fixture(name, seed, grid_size)}; });
}

abundle_status abundle_fixture_parse(const char* text, abundle_fixture** out) {
  if (text == nullptr) return null_argument("text");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new abundle_fixture{abundle::parse_fixture(text)}; });
}

abundle_status abundle_fixture_serialize(const abundle_fixture* fixture, char** out) {
  if (fixture == nullptr) return null_argument("fixture");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = copy_string(abundle::serialize_fixture(fixture->value)); });
}

const char* abundle_fixture_name(const abundle_fixture* fixture) {
  return fixture == nullptr ? nullptr : fixture->value.name().c_str();
}

void abundle_fixture_free(abundle_fixture* fixture) { delete fixture; }

void abundle_run_options_default(abundle_run_options* options) {
  if (options == nullptr) return;
  const abundle::RunOptions defaults;
  options->step = defaults.step;
  options->tol = 0.0;
  options->has_tol = 0;
  options->samples = defaults.samples;
  options->directions = defaults.directions;
  options->seed = defaults.seed;
  options->diagonal_only = defaults.diagonal_only ? 1 : 0;
}

abundle_status abundle_run_suite(const abundle_fixture* fixture, const char* selector,
                                 const abundle_run_options* options, abundle_report** out) {
  if (fixture == nullptr) return null_argument("fixture");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  abundle::RunOptions opts;
  if (options != nullptr) {
    opts.step = options->step;
    if (options->has_tol) opts.tol = options->tol;
    opts.samples = options->samples;
    opts.directions = options->directions;
    opts.seed = options->seed;
    opts.diagonal_only = options->diagonal_only != 0;
  }
  const char* sel = selector == nullptr ? "all" : selector;
  return guarded([&] {
    *out = new abundle_report{abundle::run_suite(fixture->value, sel, opts)};
  });
}

int abundle_report_passed(const abundle_report* report) {
  return report != nullptr && report->value.passed() ? 1 : 0;
}

size_t abundle_report_entry_count(const abundle_report* report) {
  return report == nullptr ? 0 : report->value.entries.size();
}

abundle_status abundle_report_entry(const abundle_report* report, size_t index,
                                    abundle_entry* out) {
  if (report == nullptr) return null_argument("report");
  if (out == nullptr) return null_argument("out");
  if (index >= report->value.entries.size()) {
    return record(ABUNDLE_INVALID_ARGUMENT, "entry index out of range");
  }
  const abundle::ReportEntry& e = report->value.entries[index];
  out->suite = e.suite.c_str();
  out->id = e.id.c_str();
  out->anchor = e.anchor.c_str();
  out->detail = e.detail.c_str();
  out->residual = e.residual;
  out->tolerance = e.tolerance.value_or(0.0);
  out->has_tolerance = e.tolerance.has_value() ? 1 : 0;
  out->lower = e.bounds ? e.bounds->first : 0.0;
  out->upper = e.bounds ? e.bounds->second : 0.0;
  out->has_bounds = e.bounds.has_value() ? 1 : 0;
  out->passed = e.passed ? 1 : 0;
  out->informative = e.informative ? 1 : 0;
  last_error.clear();
  return ABUNDLE_OK;
}

double abundle_report_seconds(const abundle_report* report) {
  return report == nullptr ? 0.0 : report->value.seconds;
}

abundle_status abundle_report_serialize(const abundle_report* report, int include_timing,
                                        char** out) {
  if (report == nullptr) return null_argument("report");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded(
      [&] { *out = copy_string(abundle::serialize_report(report->value, include_timing != 0)); });
}

void abundle_report_free(abundle_report* report) { delete report; }

void abundle_string_free(char* text) { std::free(text); }

}  // extern "C"
