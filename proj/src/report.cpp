#include "olab/report.hpp"

#include <algorithm>

namespace olab {

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
  }
  return "error";
}

void Report::pass(std::string check, nlohmann::json info) {
  records_.push_back({std::move(check), Status::Pass, std::move(info), 0.0});
}

void Report::fail(std::string check, nlohmann::json witness) {
  if (witness.is_null()) witness = "unspecified failure";
  records_.push_back({std::move(check), Status::Fail, std::move(witness), 0.0});
}

void Report::error(std::string check, nlohmann::json witness) {
  if (witness.is_null()) witness = "unspecified error";
  records_.push_back({std::move(check), Status::Error, std::move(witness), 0.0});
}

void Report::add(ReportRecord r) { records_.push_back(std::move(r)); }

void Report::merge(const Report& other) {
  records_.insert(records_.end(), other.records_.begin(), other.records_.end());
}

void Report::prefix(std::string_view p) {
  for (auto& r : records_) r.check = std::string(p) + "/" + r.check;
}

void Report::set_elapsed(double ms) {
  for (auto& r : records_)
    if (r.elapsed_ms == 0.0) r.elapsed_ms = ms;
}

bool Report::ok() const { return failures() == 0; }

std::size_t Report::failures() const {
  return static_cast<std::size_t>(std::count_if(
      records_.begin(), records_.end(), [](const auto& r) { return r.status != Status::Pass; }));
}

const ReportRecord* Report::first_failure() const {
  for (const auto& r : records_)
    if (r.status != Status::Pass) return &r;
  return nullptr;
}

nlohmann::json to_json(const ReportRecord& r, bool with_timings) {
  nlohmann::json j = {{"check", r.check}, {"status", status_name(r.status)}};
  if (!r.witness.is_null()) j["witness"] = r.witness;
  if (with_timings) j["elapsed"] = r.elapsed_ms;
  return j;
}

nlohmann::json Report::to_json(bool with_timings) const {
  std::vector<const ReportRecord*> sorted;
  for (const auto& r : records_) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto* a, const auto* b) { return a->check < b->check; });
  auto out = nlohmann::json::array();
  for (const auto* r : sorted) out.push_back(olab::to_json(*r, with_timings));
  return out;
}

std::string Report::to_jsonl(bool with_timings) const {
  std::string out;
  for (const auto& j : to_json(with_timings)) out += j.dump() + "\n";
  return out;
}

}  // namespace olab
