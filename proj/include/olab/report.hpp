#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace olab {

enum class Status { Pass, Fail, Error };

std::string_view status_name(Status s);

struct ReportRecord {
  std::string check;
  Status status = Status::Pass;
  /// Structured payload; always present for Fail and Error.
  nlohmann::json witness;
  double elapsed_ms = 0.0;
};

/// A list of check results. Emission is line-delimited JSON sorted by check
/// name so that independently produced reports merge deterministically.
class Report {
 public:
  void pass(std::string check, nlohmann::json info = nullptr);
  void fail(std::string check, nlohmann::json witness);
  void error(std::string check, nlohmann::json witness);
  void add(ReportRecord r);
  void merge(const Report& other);
  /// Prefixes every check name with "prefix/".
  void prefix(std::string_view prefix);
  /// Sets elapsed_ms on every record that has none.
  void set_elapsed(double ms);

  bool ok() const;
  const std::vector<ReportRecord>& records() const { return records_; }
  std::size_t failures() const;
  /// First non-passing record, or nullptr.
  const ReportRecord* first_failure() const;

  /// One JSON object per line, stably sorted by check name. Timings are
  /// omitted unless requested, which keeps reruns byte-identical.
  std::string to_jsonl(bool with_timings = false) const;
  nlohmann::json to_json(bool with_timings = false) const;

 private:
  std::vector<ReportRecord> records_;
};

nlohmann::json to_json(const ReportRecord& r, bool with_timings);

}  // namespace olab
