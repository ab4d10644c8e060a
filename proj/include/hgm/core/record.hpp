#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace hgm {

enum class Status { pass, fail, skipped, error };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
    case Status::error: return "error";
  }
  return "error";
}

inline Status status_from_string(const std::string& s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "skipped") return Status::skipped;
  return Status::error;
}

/// One identity instance: both sides, the comparison modulus or tolerance, and the outcome.
struct VerificationRecord {
  std::string check_id;
  std::vector<std::pair<std::string, std::string>> params;
  std::string lhs;
  std::string rhs;
  std::string modulus_or_tolerance;
  Status status = Status::error;
  std::string error_bound = "0";
  long long elapsed_ms = 0;
  std::string note;

  VerificationRecord& param(std::string key, std::string value) {
    params.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  VerificationRecord& param(std::string key, long long value) { return param(std::move(key), std::to_string(value)); }

  bool passed() const { return status == Status::pass; }
  bool bad() const { return status == Status::fail || status == Status::error; }
};

inline nlohmann::ordered_json to_json(const VerificationRecord& r, bool with_timing = true) {
  nlohmann::ordered_json j;
  j["check_id"] = r.check_id;
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) p[k] = v;
  j["params"] = p;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["modulus_or_tolerance"] = r.modulus_or_tolerance;
  j["status"] = to_string(r.status);
  j["error_bound"] = r.error_bound;
  if (with_timing) j["elapsed_ms"] = r.elapsed_ms;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline VerificationRecord record_from_json(const nlohmann::ordered_json& j) {
  VerificationRecord r;
  r.check_id = j.at("check_id").get<std::string>();
  for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it)
    r.params.emplace_back(it.key(), it.value().get<std::string>());
  r.lhs = j.at("lhs").get<std::string>();
  r.rhs = j.at("rhs").get<std::string>();
  r.modulus_or_tolerance = j.at("modulus_or_tolerance").get<std::string>();
  r.status = status_from_string(j.at("status").get<std::string>());
  r.error_bound = j.at("error_bound").get<std::string>();
  if (j.contains("elapsed_ms")) r.elapsed_ms = j.at("elapsed_ms").get<long long>();
  if (j.contains("note")) r.note = j.at("note").get<std::string>();
  return r;
}

// Scoped wall clock that stamps elapsed_ms on the record it watches.
class RecordTimer {
 public:
  explicit RecordTimer(VerificationRecord& r) : rec_(r), t0_(std::chrono::steady_clock::now()) {}
  ~RecordTimer() {
    rec_.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  VerificationRecord& rec_;
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace hgm
