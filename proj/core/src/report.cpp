#include "fedo/cli/report.hpp"

#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

namespace fedo::cli {

namespace {

std::string value_text(const Value& v) {
  struct Visitor {
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const {
      std::ostringstream os;
      os << std::setprecision(12) << d;
      return os.str();
    }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, v);
}

nlohmann::ordered_json value_json(const Value& v) {
  return std::visit([](const auto& x) { return nlohmann::ordered_json(x); }, v);
}

nlohmann::ordered_json fields_json(const std::vector<Field>& fields) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& f : fields) j[f.key] = value_json(f.value);
  return j;
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Measured:
      return "measured";
  }
  return "?";
}

Check& RunReport::check(std::string name, Status status, std::string detail) {
  checks.push_back({std::move(name), status, std::move(detail), {}});
  return checks.back();
}

bool RunReport::passed() const {
  for (const auto& c : checks)
    if (c.status == Status::Fail) return false;
  return true;
}

std::string RunReport::text() const {
  std::ostringstream os;
  os << "command: " << command << '\n';
  os << "seed: " << seed << '\n';
  for (const auto& f : info) os << f.key << ": " << value_text(f.value) << '\n';
  for (const auto& c : checks) {
    os << '[' << to_string(c.status) << "] " << c.name;
    if (!c.detail.empty()) os << " -- " << c.detail;
    os << '\n';
    for (const auto& f : c.payload) {
      const std::string v = value_text(f.value);
      if (v.find('\n') == std::string::npos) {
        os << "    " << f.key << " = " << v << '\n';
      } else {
        os << "    " << f.key << ":\n";
        std::istringstream lines(v);
        std::string line;
        while (std::getline(lines, line)) os << "      " << line << '\n';
      }
    }
  }
  for (const auto& n : notes) os << "note: " << n << '\n';
  os << "result: " << (passed() ? "PASS" : "FAIL") << '\n';
  os << std::fixed << std::setprecision(3) << "wall time: " << wall_seconds << " s\n";
  return os.str();
}

std::string RunReport::json(bool include_timing) const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["seed"] = seed;
  j["info"] = fields_json(info);
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["status"] = to_string(c.status);
    if (!c.detail.empty()) cj["detail"] = c.detail;
    cj["payload"] = fields_json(c.payload);
    arr.push_back(std::move(cj));
  }
  j["notes"] = notes;
  j["passed"] = passed();
  if (include_timing) {
    j["threads"] = threads;
    j["wall_seconds"] = wall_seconds;
  }
  return j.dump(2) + "\n";
}

}  // namespace fedo::cli
