#include <stdio.h>
#include <string.h>

#include "invtool.h"

static int failures = 0;

#define EXPECT(cond)                                               \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                  \
    }                                                              \
  } while (0)

static const char* example =
    "{\"schema\": 1, \"name\": \"odd\", \"field\": {\"characteristic\": 0}, \"truncation\": 9,\n"
    " \"groups\": {\"G\": {\"generators\": [[[\"-1\", \"0\"], [\"0\", \"-1\"]]]}},\n"
    " \"modules\": {\"minus\": {\"group\": \"G\", \"matrices\": [[[\"-1\"]]]}},\n"
    " \"tasks\": [{\"type\": \"tor\", \"module\": \"minus\"}]}";

int main(void) {
  EXPECT(strlen(invt_version()) > 0);
  EXPECT(strcmp(invt_error_name(INVT_ERR_PARSE), "ParseError") == 0);

  invt_scenario* s = NULL;
  EXPECT(invt_scenario_load_string(example, &s) == INVT_OK);
  EXPECT(s != NULL);
  if (s) {
    EXPECT(strcmp(invt_scenario_name(s), "odd") == 0);
    EXPECT(invt_scenario_task_count(s) == 1);
    invt_run_options opt;
    invt_run_options_init(&opt);
    invt_report* r = NULL;
    EXPECT(invt_scenario_run(s, &opt, &r) == INVT_OK);
    if (r) {
      const char* csv = NULL;
      size_t len = 0;
      EXPECT(invt_report_overall(r) == INVT_STATUS_PASS);
      EXPECT(invt_report_exit_code(r) == 0);
      EXPECT(invt_report_task_count(r) == 1);
      EXPECT(invt_report_task_status(r, 0) == INVT_STATUS_PASS);
      EXPECT(invt_report_task_status(r, 7) == INVT_STATUS_ERROR);
      EXPECT(invt_report_render(r, INVT_FORMAT_CSV, &csv, &len) == INVT_OK);
      EXPECT(csv && len == strlen(csv));
      EXPECT(csv && strstr(csv, "\n0,1,2,") != NULL);
      EXPECT(csv && strstr(csv, "\n1,3,2,") != NULL);
      EXPECT(csv && strstr(csv, "\n2,5,2,") != NULL);
      EXPECT(invt_report_render(r, (invt_format)7, &csv, &len) == INVT_ERR_INVALID_ARGUMENT);
      invt_report_free(r);
    }
    /* Truncation override below the scenario value. */
    opt.truncation = 3;
    r = NULL;
    EXPECT(invt_scenario_run(s, &opt, &r) == INVT_OK);
    if (r) {
      const char* js = NULL;
      EXPECT(invt_report_render(r, INVT_FORMAT_JSON, &js, NULL) == INVT_OK);
      EXPECT(js && strstr(js, "\"truncation\": 3") != NULL);
      invt_report_free(r);
    }
    opt.jobs = 0;
    r = NULL;
    EXPECT(invt_scenario_run(s, &opt, &r) == INVT_ERR_PRECONDITION);
    EXPECT(r == NULL);
    invt_scenario_free(s);
  }

  s = NULL;
  EXPECT(invt_scenario_load_string("{\n  \"schema\": 1,\n  \"name\": oops\n}", &s) == INVT_ERR_PARSE);
  EXPECT(s == NULL);
  EXPECT(strstr(invt_last_error(), "line 3") != NULL);

  EXPECT(invt_scenario_load_string("{\"schema\": 2, \"name\": \"x\"}", &s) == INVT_ERR_PARSE);
  EXPECT(strstr(invt_last_error(), "schema") != NULL);
  EXPECT(invt_scenario_load_string("{\"schema\": 1, \"name\": \"x\", \"truncation\": 4}", &s) ==
         INVT_ERR_PRECONDITION);
  EXPECT(strstr(invt_last_error(), "field") != NULL);
  EXPECT(invt_scenario_load_file("/nonexistent/scenario.json", &s) == INVT_ERR_IO);
  EXPECT(invt_scenario_load_string(NULL, &s) == INVT_ERR_INVALID_ARGUMENT);
  EXPECT(invt_scenario_run(NULL, NULL, NULL) == INVT_ERR_INVALID_ARGUMENT);
  invt_scenario_free(NULL);
  invt_report_free(NULL);

  if (failures) fprintf(stderr, "%d checks failed\n", failures);
  else printf("capi: all checks passed\n");
  return failures ? 1 : 0;
}
