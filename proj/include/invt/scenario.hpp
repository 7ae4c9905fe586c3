#pragma once

#include <optional>
#include <string>
#include <vector>

#include "invt/error.hpp"
#include "invt/report.hpp"

namespace invt {

inline constexpr int kScenarioSchema = 1;

enum class Format { Text, Json, Csv };

std::optional<Format> parse_format(const std::string& name);

struct RunOptions {
  int jobs = 1;
  std::optional<int> truncation;  // overrides the scenario value
  std::string data_path;          // file or directory holding data files; empty disables data blocks
};

/// Outcome of one scenario run. Reports carry no timing, so equal inputs render equal bytes.
struct ScenarioReport {
  Json header = Json::object();
  std::vector<Json> echoes;
  std::vector<TaskResult> tasks;
  Status overall = Status::Pass;
  std::string notice;  // set when the scenario was skipped

  std::string render(Format f) const;
  /// 0 when every verdict passes, 2 on hypothesis failures, 1 otherwise.
  int exit_code() const;
};

class Scenario {
 public:
  /// Parse errors carry "line L, column C" of the offending byte.
  static Scenario from_file(const std::string& path);
  static Scenario from_string(const std::string& text, const std::string& source = "<string>");

  const Json& document() const { return doc_; }
  std::string name() const;
  std::string description() const;
  std::size_t task_count() const;

  ScenarioReport run(const RunOptions& opt) const;

 private:
  Json doc_;
  std::string source_;
};

/// Line and column (both 1-based) of a byte offset in text.
std::pair<int, int> line_column(const std::string& text, std::size_t offset);

}  // namespace invt
