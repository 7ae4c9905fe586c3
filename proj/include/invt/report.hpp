#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace invt {

using Json = nlohmann::ordered_json;

/// Verdict of a task or check, ordered from best to worst.
enum class Status { Pass = 0, ExpectedFailure = 1, NotCheckable = 2, Fail = 3, HypothesisFailure = 4, Error = 5 };

const char* status_name(Status s) noexcept;
Status worst(Status a, Status b) noexcept;
/// Pass, ExpectedFailure and NotCheckable count as passing.
inline bool passing(Status s) { return s == Status::Pass || s == Status::ExpectedFailure || s == Status::NotCheckable; }

/// One task's outcome: machine-readable data, a text rendering and optional CSV rows.
struct TaskResult {
  std::string task;
  Status status = Status::Pass;
  Json data = Json::object();
  std::string text;
  std::string csv;

  void note(Status s) { status = worst(status, s); }
};

/// Hypothesis checklist item: verified, failed or not checkable at scale.
struct Hypothesis {
  std::string name;
  std::string state;  // "verified" | "failed" | "not-checkable-at-scale"
  std::string detail;
  Json to_json() const { return Json{{"name", name}, {"state", state}, {"detail", detail}}; }
};

}  // namespace invt
