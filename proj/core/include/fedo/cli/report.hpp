#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace fedo::cli {

using Value = std::variant<bool, std::int64_t, double, std::string>;

struct Field {
  std::string key;
  Value value;
};

enum class Status { Pass, Fail, Measured };
const char* to_string(Status s);

struct Check {
  std::string name;
  Status status = Status::Measured;
  std::string detail;
  std::vector<Field> payload;

  Check& add(std::string key, Value v) {
    payload.push_back({std::move(key), std::move(v)});
    return *this;
  }
};

/// Outcome of one command: the checks it ran and their payloads. Payloads
/// depend only on the command and seed; wall time is reported separately.
struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  int threads = 1;
  std::vector<Check> checks;
  std::vector<Field> info;
  std::vector<std::string> notes;
  double wall_seconds = 0;

  Check& check(std::string name, Status status, std::string detail = {});
  Check& pass_if(std::string name, bool ok, std::string detail = {}) {
    return check(std::move(name), ok ? Status::Pass : Status::Fail, std::move(detail));
  }
  bool passed() const;
  /// 0 when no check failed, 1 otherwise.
  int exit_code() const { return passed() ? 0 : 1; }

  std::string text() const;
  /// Structured form; `include_timing` = false yields a seed-reproducible document.
  std::string json(bool include_timing = true) const;
};

}  // namespace fedo::cli
