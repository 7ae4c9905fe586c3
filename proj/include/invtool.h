#ifndef INVTOOL_H
#define INVTOOL_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define INVT_API __declspec(dllexport)
#else
#define INVT_API __attribute__((visibility("default")))
#endif

/* Error codes. Values match the library's internal codes. */
typedef enum invt_error {
  INVT_OK = 0,
  INVT_ERR_PARSE = 1,
  INVT_ERR_PRECONDITION = 2,
  INVT_ERR_NOT_A_ROOT_OF_UNITY = 10,
  INVT_ERR_NOT_IN_ROOT_GROUP = 11,
  INVT_ERR_CONDUCTOR_MISMATCH = 12,
  INVT_ERR_NOT_IRREDUCIBLE = 13,
  INVT_ERR_CAP_EXCEEDED = 20,
  INVT_ERR_NOT_INVERTIBLE = 21,
  INVT_ERR_NOT_REGULAR = 22,
  INVT_ERR_NOT_SEMISIMPLE = 23,
  INVT_ERR_FIBER_NOT_C_STABLE = 30,
  INVT_ERR_TOO_LARGE = 31,
  INVT_ERR_ACTION_MISMATCH = 32,
  INVT_ERR_CHARACTER_LENGTH_MISMATCH = 40,
  INVT_ERR_NO_STABILIZATION = 41,
  INVT_ERR_DIVISION_BY_ZERO_SERIES = 42,
  INVT_ERR_POLE_AT_POINT = 43,
  INVT_ERR_NOT_AN_R_MODULE = 50,
  INVT_ERR_TRUNCATION_TOO_SMALL = 51,
  INVT_ERR_NOT_THETA_STABLE = 52,
  INVT_ERR_NOT_P_REGULAR = 60,
  INVT_ERR_UNSUPPORTED_GROUP_FOR_INEQUALITY = 61,
  INVT_ERR_HYPOTHESIS_FAILURE = 62,
  INVT_ERR_NON_POLYNOMIAL_X = 70,
  INVT_ERR_IO = 80,
  INVT_ERR_INVALID_ARGUMENT = 98,
  INVT_ERR_INTERNAL = 99
} invt_error;

typedef enum invt_format { INVT_FORMAT_TEXT = 0, INVT_FORMAT_JSON = 1, INVT_FORMAT_CSV = 2 } invt_format;

typedef enum invt_status {
  INVT_STATUS_PASS = 0,
  INVT_STATUS_EXPECTED_FAILURE = 1,
  INVT_STATUS_NOT_CHECKABLE = 2,
  INVT_STATUS_FAIL = 3,
  INVT_STATUS_HYPOTHESIS_FAILURE = 4,
  INVT_STATUS_ERROR = 5
} invt_status;

typedef struct invt_scenario invt_scenario;
typedef struct invt_report invt_report;

typedef struct invt_run_options {
  int jobs;              /* >= 1 */
  int truncation;        /* 0 keeps the scenario's value */
  const char* data_path; /* NULL reads INVTOOL_DATA */
} invt_run_options;

INVT_API const char* invt_version(void);
INVT_API void invt_run_options_init(invt_run_options* opt);

/* Message of the last error on the calling thread; never NULL. */
INVT_API const char* invt_last_error(void);
INVT_API const char* invt_error_name(invt_error code);
INVT_API const char* invt_status_name(invt_status status);

INVT_API invt_error invt_scenario_load_file(const char* path, invt_scenario** out);
INVT_API invt_error invt_scenario_load_string(const char* json, invt_scenario** out);
INVT_API void invt_scenario_free(invt_scenario* s);
INVT_API const char* invt_scenario_name(const invt_scenario* s);
INVT_API const char* invt_scenario_description(const invt_scenario* s);
INVT_API size_t invt_scenario_task_count(const invt_scenario* s);

INVT_API invt_error invt_scenario_run(const invt_scenario* s, const invt_run_options* opt, invt_report** out);
INVT_API void invt_report_free(invt_report* r);
INVT_API invt_status invt_report_overall(const invt_report* r);
INVT_API size_t invt_report_task_count(const invt_report* r);
INVT_API invt_status invt_report_task_status(const invt_report* r, size_t index);
/* 0 when every verdict passes, 2 on hypothesis failures, 1 otherwise. */
INVT_API int invt_report_exit_code(const invt_report* r);
/* Non-empty when the scenario was skipped (e.g. a data file is missing). */
INVT_API const char* invt_report_notice(const invt_report* r);
/* The returned buffer is owned by the report and valid until the next render or free. */
INVT_API invt_error invt_report_render(invt_report* r, invt_format format, const char** out, size_t* length);

#ifdef __cplusplus
}
#endif

#endif
