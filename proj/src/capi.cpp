#include <cstdlib>
#include <string>

#include "invt/scenario.hpp"
#include "invtool.h"

struct invt_scenario {
  invt::Scenario s;
  std::string name, description;
};

struct invt_report {
  invt::ScenarioReport r;
  std::string rendered;
};

namespace {

thread_local std::string last_error;

invt_error set_error(invt_error code, const std::string& msg) {
  last_error = msg;
  return code;
}

template <class Fn>
invt_error guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return INVT_OK;
  } catch (const invt::Error& e) {
    return set_error(static_cast<invt_error>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(INVT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(INVT_ERR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* invt_version(void) { return "1.0.0"; }

void invt_run_options_init(invt_run_options* opt) {
  if (!opt) return;
  opt->jobs = 1;
  opt->truncation = 0;
  opt->data_path = nullptr;
}

const char* invt_last_error(void) { return last_error.c_str(); }

const char* invt_error_name(invt_error code) {
  if (code == INVT_ERR_INVALID_ARGUMENT) return "InvalidArgument";
  return invt::error_code_name(static_cast<invt::ErrorCode>(code));
}

const char* invt_status_name(invt_status status) { return invt::status_name(static_cast<invt::Status>(status)); }

invt_error invt_scenario_load_file(const char* path, invt_scenario** out) {
  if (!path || !out) return set_error(INVT_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto s = invt::Scenario::from_file(path);
    *out = new invt_scenario{s, s.name(), s.description()};
  });
}

invt_error invt_scenario_load_string(const char* json, invt_scenario** out) {
  if (!json || !out) return set_error(INVT_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto s = invt::Scenario::from_string(json);
    *out = new invt_scenario{s, s.name(), s.description()};
  });
}

void invt_scenario_free(invt_scenario* s) { delete s; }

const char* invt_scenario_name(const invt_scenario* s) { return s ? s->name.c_str() : ""; }

const char* invt_scenario_description(const invt_scenario* s) { return s ? s->description.c_str() : ""; }

size_t invt_scenario_task_count(const invt_scenario* s) { return s ? s->s.task_count() : 0; }

invt_error invt_scenario_run(const invt_scenario* s, const invt_run_options* opt, invt_report** out) {
  if (!s || !out) return set_error(INVT_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  invt::RunOptions o;
  if (opt) {
    o.jobs = opt->jobs;
    if (opt->truncation > 0) o.truncation = opt->truncation;
    if (opt->truncation < 0) return set_error(INVT_ERR_INVALID_ARGUMENT, "truncation must be positive");
  }
  const char* data = opt && opt->data_path ? opt->data_path : std::getenv("INVTOOL_DATA");
  if (data) o.data_path = data;
  return guarded([&] { *out = new invt_report{s->s.run(o), {}}; });
}

void invt_report_free(invt_report* r) { delete r; }

invt_status invt_report_overall(const invt_report* r) {
  return r ? static_cast<invt_status>(r->r.overall) : INVT_STATUS_ERROR;
}

size_t invt_report_task_count(const invt_report* r) { return r ? r->r.tasks.size() : 0; }

invt_status invt_report_task_status(const invt_report* r, size_t index) {
  if (!r || index >= r->r.tasks.size()) return INVT_STATUS_ERROR;
  return static_cast<invt_status>(r->r.tasks[index].status);
}

int invt_report_exit_code(const invt_report* r) { return r ? r->r.exit_code() : 1; }

const char* invt_report_notice(const invt_report* r) { return r ? r->r.notice.c_str() : ""; }

invt_error invt_report_render(invt_report* r, invt_format format, const char** out, size_t* length) {
  if (!r || !out) return set_error(INVT_ERR_INVALID_ARGUMENT, "null argument");
  if (format < INVT_FORMAT_TEXT || format > INVT_FORMAT_CSV) return set_error(INVT_ERR_INVALID_ARGUMENT, "unknown format");
  return guarded([&] {
    r->rendered = r->r.render(static_cast<invt::Format>(format));
    *out = r->rendered.c_str();
    if (length) *length = r->rendered.size();
  });
}

}  // extern "C"
