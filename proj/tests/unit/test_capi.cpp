#include <cstring>
#include <string>

#include <gtest/gtest.h>

#include "abundle/abundle.h"

namespace {

TEST(CApi, StatusStrings) {
  EXPECT_STREQ(abundle_status_string(ABUNDLE_OK), "Ok");
  EXPECT_STREQ(abundle_status_string(ABUNDLE_NOT_REDUCED), "NotReduced");
  EXPECT_STREQ(abundle_status_string(ABUNDLE_PARSE_ERROR), "ParseError");
  EXPECT_STREQ(abundle_status_string(static_cast<abundle_status>(77)), "Unknown");
  EXPECT_NE(std::string(abundle_version()), "");
}

TEST(CApi, Listings) {
  ASSERT_EQ(abundle_fixture_name_count(), 7u);
  EXPECT_STREQ(abundle_fixture_name_at(0), "trivial-line");
  EXPECT_EQ(abundle_fixture_name_at(99), nullptr);
  ASSERT_EQ(abundle_suite_count(), 10u);
  EXPECT_STREQ(abundle_suite_name_at(0), "axioms");
}

TEST(CApi, BuildSerializeParseRoundTrip) {
  abundle_fixture* f = nullptr;
  ASSERT_EQ(abundle_fixture_build("phase-two-chart", 7, 8, &f), ABUNDLE_OK);
  EXPECT_STREQ(abundle_fixture_name(f), "phase-two-chart");
  char* text = nullptr;
  ASSERT_EQ(abundle_fixture_serialize(f, &text), ABUNDLE_OK);
  abundle_fixture* g = nullptr;
  ASSERT_EQ(abundle_fixture_parse(text, &g), ABUNDLE_OK);
  char* again = nullptr;
  ASSERT_EQ(abundle_fixture_serialize(g, &again), ABUNDLE_OK);
  EXPECT_STREQ(text, again);
  abundle_string_free(text);
  abundle_string_free(again);
  abundle_fixture_free(f);
  abundle_fixture_free(g);
}

TEST(CApi, ErrorsCarryCodesAndMessages) {
  abundle_fixture* f = reinterpret_cast<abundle_fixture*>(0x1);
  EXPECT_EQ(abundle_fixture_build("nope", 7, 8, &f), ABUNDLE_UNKNOWN_FIXTURE);
  EXPECT_EQ(f, nullptr);
  EXPECT_NE(std::string(abundle_last_error()).find("nope"), std::string::npos);
  EXPECT_EQ(abundle_fixture_parse("{", &f), ABUNDLE_PARSE_ERROR);
  EXPECT_EQ(abundle_fixture_build(nullptr, 7, 8, &f), ABUNDLE_INVALID_ARGUMENT);
  EXPECT_EQ(abundle_fixture_build("trivial-line", 7, 8, nullptr), ABUNDLE_INVALID_ARGUMENT);
  ASSERT_EQ(abundle_fixture_build("trivial-line", 7, 8, &f), ABUNDLE_OK);
  EXPECT_STREQ(abundle_last_error(), "");
  abundle_report* r = nullptr;
  EXPECT_EQ(abundle_run_suite(f, "bogus", nullptr, &r), ABUNDLE_INVALID_ARGUMENT);
  EXPECT_EQ(r, nullptr);
  abundle_fixture_free(f);
  abundle_fixture_free(nullptr);
  abundle_report_free(nullptr);
  abundle_string_free(nullptr);
}

TEST(CApi, RunSuiteAndInspectEntries) {
  abundle_fixture* f = nullptr;
  ASSERT_EQ(abundle_fixture_build("broken-cocycle", 7, 8, &f), ABUNDLE_OK);
  abundle_run_options opts;
  abundle_run_options_default(&opts);
  EXPECT_DOUBLE_EQ(opts.step, 1e-4);
  EXPECT_EQ(opts.samples, 32u);
  EXPECT_EQ(opts.diagonal_only, 1);
  abundle_report* r = nullptr;
  ASSERT_EQ(abundle_run_suite(f, "cocycle", &opts, &r), ABUNDLE_OK);
  EXPECT_EQ(abundle_report_passed(r), 0);
  ASSERT_EQ(abundle_report_entry_count(r), 2u);
  abundle_entry e;
  ASSERT_EQ(abundle_report_entry(r, 1, &e), ABUNDLE_OK);
  EXPECT_STREQ(e.id, "cocycle.triple");
  EXPECT_EQ(e.passed, 0);
  EXPECT_EQ(e.has_tolerance, 1);
  EXPECT_NEAR(e.residual, 1.0, 1e-9);
  EXPECT_EQ(abundle_report_entry(r, 2, &e), ABUNDLE_INVALID_ARGUMENT);
  char* json = nullptr;
  ASSERT_EQ(abundle_report_serialize(r, 0, &json), ABUNDLE_OK);
  EXPECT_NE(std::strstr(json, "\"verdict\": \"fail\""), nullptr);
  EXPECT_EQ(std::strstr(json, "timing"), nullptr);
  abundle_string_free(json);
  abundle_report_free(r);
  abundle_fixture_free(f);
}

}  // namespace
