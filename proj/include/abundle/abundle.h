#ifndef ABUNDLE_ABUNDLE_H
#define ABUNDLE_ABUNDLE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ABUNDLE_API __declspec(dllexport)
#else
#define ABUNDLE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct abundle_fixture abundle_fixture;
typedef struct abundle_report abundle_report;

typedef enum abundle_status {
  ABUNDLE_OK = 0,
  ABUNDLE_INVALID_ARGUMENT = 1,
  ABUNDLE_NOT_POSITIVE = 2,
  ABUNDLE_NOT_INVERTIBLE = 3,
  ABUNDLE_DOMAIN_ESCAPE = 4,
  ABUNDLE_MALFORMED_IDEMPOTENT = 5,
  ABUNDLE_MODULE_MISMATCH = 6,
  ABUNDLE_DEGENERATE = 7,
  ABUNDLE_PIVOT_NOT_INVERTIBLE = 8,
  ABUNDLE_NOT_AUTOMORPHISM = 9,
  ABUNDLE_NORMALIZER_NOT_INVERTIBLE = 10,
  ABUNDLE_NOT_REDUCED = 11,
  ABUNDLE_CHART_MISMATCH = 12,
  ABUNDLE_FRAME_UNAVAILABLE = 13,
  ABUNDLE_UNKNOWN_FIXTURE = 14,
  ABUNDLE_PARSE_ERROR = 15,
  ABUNDLE_INTERNAL = 100
} abundle_status;

typedef struct abundle_run_options {
  double step;
  /* Used only when has_tol is nonzero. */
  double tol;
  int has_tol;
  size_t samples;
  size_t directions;
  uint64_t seed;
  int diagonal_only;
} abundle_run_options;

/* Borrowed view of one report entry; valid while the report lives. */
typedef struct abundle_entry {
  const char* suite;
  const char* id;
  const char* anchor;
  const char* detail;
  double residual;
  double tolerance;
  int has_tolerance;
  double lower;
  double upper;
  int has_bounds;
  int passed;
  int informative;
} abundle_entry;

ABUNDLE_API const char* abundle_version(void);
ABUNDLE_API const char* abundle_status_string(abundle_status status);

/* Message of the last failing call on this thread, or "". */
ABUNDLE_API const char* abundle_last_error(void);

ABUNDLE_API size_t abundle_fixture_name_count(void);
ABUNDLE_API const char* abundle_fixture_name_at(size_t index);
ABUNDLE_API size_t abundle_suite_count(void);
ABUNDLE_API const char* abundle_suite_name_at(size_t index);

ABUNDLE_API abundle_status abundle_fixture_build(const char* name, uint64_t seed, size_t grid_size,
                                                 abundle_fixture** out);
ABUNDLE_API abundle_status abundle_fixture_parse(const char* text, abundle_fixture** out);
/* *out is released with abundle_string_free. */
ABUNDLE_API abundle_status abundle_fixture_serialize(const abundle_fixture* fixture, char** out);
ABUNDLE_API const char* abundle_fixture_name(const abundle_fixture* fixture);
ABUNDLE_API void abundle_fixture_free(abundle_fixture* fixture);

ABUNDLE_API void abundle_run_options_default(abundle_run_options* options);

/* selector is "all" or a comma-separated list of suite names. options may be NULL. */
ABUNDLE_API abundle_status abundle_run_suite(const abundle_fixture* fixture, const char* selector,
                                             const abundle_run_options* options,
                                             abundle_report** out);

ABUNDLE_API int abundle_report_passed(const abundle_report* report);
ABUNDLE_API size_t abundle_report_entry_count(const abundle_report* report);
ABUNDLE_API abundle_status abundle_report_entry(const abundle_report* report, size_t index,
                                                abundle_entry* out);
ABUNDLE_API double abundle_report_seconds(const abundle_report* report);
ABUNDLE_API abundle_status abundle_report_serialize(const abundle_report* report,
                                                    int include_timing, char** out);
ABUNDLE_API void abundle_report_free(abundle_report* report);

ABUNDLE_API void abundle_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif
