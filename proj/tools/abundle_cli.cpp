#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "abundle/abundle.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct FixtureDeleter {
  void operator()(abundle_fixture* f) const { abundle_fixture_free(f); }
};
struct ReportDeleter {
  void operator()(abundle_report* r) const { abundle_report_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { abundle_string_free(s); }
};
using FixturePtr = std::unique_ptr<abundle_fixture, FixtureDeleter>;
using ReportPtr = std::unique_ptr<abundle_report, ReportDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct Failure {
  std::string message;
};

void check(abundle_status status, const std::string& context) {
  if (status != ABUNDLE_OK) {
    throw Failure{context + ": " + abundle_status_string(status) + ": " + abundle_last_error()};
  }
}

bool is_named_fixture(const std::string& name) {
  for (size_t i = 0; i < abundle_fixture_name_count(); ++i) {
    if (name == abundle_fixture_name_at(i)) return true;
  }
  return false;
}

FixturePtr load_fixture(const std::string& source, uint64_t seed, size_t grid_size) {
  abundle_fixture* raw = nullptr;
  if (is_named_fixture(source) || !std::filesystem::exists(source)) {
    check(abundle_fixture_build(source.c_str(), seed, grid_size, &raw), "build " + source);
    return FixturePtr(raw);
  }
  std::ifstream in(source, std::ios::binary);
  if (!in) throw Failure{"cannot read " + source};
  std::stringstream text;
  text << in.rdbuf();
  check(abundle_fixture_parse(text.str().c_str(), &raw), "parse " + source);
  return FixturePtr(raw);
}

std::filesystem::path resolve_report_path(const std::string& path) {
  std::filesystem::path p(path);
  const char* dir = std::getenv("ABUNDLE_REPORT_DIR");
  if (p.is_relative() && dir != nullptr && *dir != '\0') p = std::filesystem::path(dir) / p;
  return p;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << '\n';
    return;
  }
  const std::filesystem::path p = resolve_report_path(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Failure{"cannot write " + p.string()};
  out << text << '\n';
}

void print_summary(const abundle_report* report, const std::string& fixture) {
  const size_t n = abundle_report_entry_count(report);
  for (size_t i = 0; i < n; ++i) {
    abundle_entry e;
    check(abundle_report_entry(report, i, &e), "entry");
    const char* mark = e.informative ? "INFO" : (e.passed ? "PASS" : "FAIL");
    std::printf("%-4s  %-42s %11.3e", mark, e.id, e.residual);
    if (e.has_tolerance) std::printf("  <= %.0e", e.tolerance);
    if (e.has_bounds) std::printf("  in [%g, %g]", e.lower, e.upper);
    std::printf("\n");
    if (!e.passed && e.detail[0] != '\0') std::printf("      %s\n", e.detail);
  }
  std::printf("%s: %s (%zu entries, %.2fs)\n", fixture.c_str(),
              abundle_report_passed(report) ? "pass" : "fail", n, abundle_report_seconds(report));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermitian structures and connections on A-bundles over C^n"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(abundle_version()));

  std::string fixture;
  uint64_t seed = 7;
  size_t grid_size = 8;
  std::string output = "-";

  auto* list = app.add_subcommand("list", "List named fixtures and suites");

  auto* build = app.add_subcommand("build", "Write a named fixture as JSON");
  build->add_option("--fixture", fixture, "Fixture name")->required();
  build->add_option("--seed", seed, "Fixture seed")->capture_default_str();
  build->add_option("--grid-size", grid_size, "Grid size n of A = C^n")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  build->add_option("-o,--output", output, "Output path, - for stdout")->capture_default_str();

  abundle_run_options options;
  abundle_run_options_default(&options);
  std::string suite = "all";
  std::string report_path;
  double tol = 0.0;
  bool timing = true;
  bool quiet = false;
  bool diagonal_only = options.diagonal_only != 0;

  auto* run = app.add_subcommand("run", "Run verification suites on a fixture");
  run->add_option("--fixture", fixture, "Fixture name or fixture file")->required();
  run->add_option("--seed", seed, "Fixture and sampling seed")->capture_default_str();
  run->add_option("--grid-size", grid_size, "Grid size for named fixtures")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--suite", suite, "all or a comma-separated list of suites")
      ->capture_default_str();
  run->add_option("--step", options.step, "Finite-difference step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* tol_opt = run->add_option("--tol", tol, "Finite-difference tolerance override")
                      ->check(CLI::NonNegativeNumber);
  run->add_option("--samples", options.samples, "Sample points per suite")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--directions", options.directions, "Tangent directions per point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_flag("--diagonal-only,!--all-tangents", diagonal_only,
                "Assert compatibility on diagonal tangent vectors only")
      ->capture_default_str();
  run->add_option("--report", report_path, "Write the JSON report here, - for stdout");
  run->add_flag("!--no-timing", timing, "Omit timing from the report");
  run->add_flag("-q,--quiet", quiet, "Print only the verdict line");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      std::printf("fixtures:\n");
      for (size_t i = 0; i < abundle_fixture_name_count(); ++i) {
        std::printf("  %s\n", abundle_fixture_name_at(i));
      }
      std::printf("suites:\n");
      for (size_t i = 0; i < abundle_suite_count(); ++i) {
        std::printf("  %s\n", abundle_suite_name_at(i));
      }
      return 0;
    }

    const FixturePtr f = load_fixture(fixture, seed, grid_size);

    if (*build) {
      char* raw = nullptr;
      check(abundle_fixture_serialize(f.get(), &raw), "serialize");
      const StringPtr text(raw);
      write_text(output, text.get());
      return 0;
    }

    options.seed = seed;
    options.diagonal_only = diagonal_only ? 1 : 0;
    if (*tol_opt) {
      options.tol = tol;
      options.has_tol = 1;
    }
    abundle_report* raw_report = nullptr;
    check(abundle_run_suite(f.get(), suite.c_str(), &options, &raw_report), "run");
    const ReportPtr report(raw_report);
    if (!report_path.empty()) {
      char* raw = nullptr;
      check(abundle_report_serialize(report.get(), timing ? 1 : 0, &raw), "serialize report");
      const StringPtr text(raw);
      write_text(report_path, text.get());
    }
    if (report_path != "-") {
      if (quiet) {
        std::printf("%s: %s\n", abundle_fixture_name(f.get()),
                    abundle_report_passed(report.get()) ? "pass" : "fail");
      } else {
        print_summary(report.get(), abundle_fixture_name(f.get()));
      }
    }
    return abundle_report_passed(report.get()) ? 0 : kExitFail;
  } catch (const Failure& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
}
