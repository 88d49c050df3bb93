#pragma once

#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace sga::cli {

/// Machine-readable outcome of one CLI command. Schema in docs/report-schema.md.
struct RunReport {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json result = nlohmann::json::object();
  std::vector<std::pair<std::string, std::size_t>> stages;  ///< Term counts after each stage.
  std::map<std::string, std::size_t> counters;              ///< Operator-application counters.
  double wall_time_ms = 0.0;
  std::vector<std::string> text;  ///< Human-readable lines for --format text; not serialized.

  friend bool operator==(const RunReport& a, const RunReport& b) {
    return a.command == b.command && a.params == b.params && a.result == b.result && a.stages == b.stages &&
           a.counters == b.counters && a.wall_time_ms == b.wall_time_ms;
  }
};

inline nlohmann::json to_json(const RunReport& r) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& [name, terms] : r.stages) stages.push_back({{"stage", name}, {"terms", terms}});
  return {{"command", r.command}, {"params", r.params},     {"result", r.result},
          {"stages", stages},     {"counters", r.counters}, {"wall_time_ms", r.wall_time_ms}};
}

inline RunReport report_from_json(const nlohmann::json& j) {
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.params = j.at("params");
  r.result = j.at("result");
  for (const auto& s : j.at("stages")) r.stages.emplace_back(s.at("stage").get<std::string>(), s.at("terms").get<std::size_t>());
  r.counters = j.at("counters").get<std::map<std::string, std::size_t>>();
  r.wall_time_ms = j.at("wall_time_ms").get<double>();
  return r;
}

inline std::string render_text(const RunReport& r) {
  std::ostringstream out;
  for (const auto& line : r.text) out << line << '\n';
  if (!r.stages.empty()) {
    out << "stages:";
    for (const auto& [name, terms] : r.stages) out << ' ' << name << '=' << terms;
    out << '\n';
  }
  for (const auto& [name, n] : r.counters) out << name << ": " << n << '\n';
  return out.str();
}

}  // namespace sga::cli
