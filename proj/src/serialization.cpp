#include "fairshare/serialization.hpp"

namespace fairshare {

namespace {

std::vector<double> number_array(const nlohmann::json& j, const char* field) {
  if (!j.is_array()) {
    throw ParseError(std::string(field) + " must be an array of numbers");
  }
  std::vector<double> values;
  values.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw ParseError(std::string(field) + " must contain only numbers");
    }
    values.push_back(v.get<double>());
  }
  return values;
}

}  // namespace

nlohmann::ordered_json instance_to_json(const Instance& instance) {
  nlohmann::ordered_json j;
  j["demands"] = instance.demands;
  j["work"] = instance.work;
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("demands") || !j.contains("work")) {
    throw ParseError("instance JSON needs \"demands\" and \"work\"");
  }
  if (!j["demands"].is_array()) {
    throw ParseError("\"demands\" must be an array of rows");
  }
  std::vector<std::vector<double>> demands;
  demands.reserve(j["demands"].size());
  for (const auto& row : j["demands"]) {
    demands.push_back(number_array(row, "demands row"));
  }
  std::vector<double> work = number_array(j["work"], "work");
  return validate_instance(std::move(demands), std::move(work));
}

nlohmann::ordered_json schedule_to_json(const Schedule& schedule) {
  nlohmann::ordered_json j;
  j["segments"] = nlohmann::ordered_json::array();
  for (const Segment& seg : schedule.segments) {
    nlohmann::ordered_json js;
    js["start"] = seg.start;
    js["end"] = seg.end;
    js["shares"] = seg.shares.shares;
    j["segments"].push_back(std::move(js));
  }
  j["completion_times"] = schedule.completion_times;
  return j;
}

Schedule schedule_from_json(const Instance& instance, const nlohmann::json& j,
                            const Tolerances& tol) {
  if (!j.is_object() || !j.contains("segments") ||
      !j.contains("completion_times")) {
    throw ParseError(
        "schedule JSON needs \"segments\" and \"completion_times\"");
  }
  Schedule schedule;
  for (const auto& js : j["segments"]) {
    if (!js.contains("start") || !js.contains("end") || !js.contains("shares")) {
      throw ParseError("segment needs \"start\", \"end\" and \"shares\"");
    }
    Segment seg;
    seg.start = js["start"].get<double>();
    seg.end = js["end"].get<double>();
    seg.shares = make_share_vector(number_array(js["shares"], "shares"), tol);
    schedule.segments.push_back(std::move(seg));
  }
  schedule.completion_times = number_array(j["completion_times"], "completion_times");
  validate_schedule(instance, schedule, tol);
  return schedule;
}

nlohmann::ordered_json audit_report_to_json(const AuditReport& report) {
  nlohmann::ordered_json j;
  j["envy_pairs"] = nlohmann::ordered_json::array();
  for (const EnvyPair& pair : report.envy_pairs) {
    nlohmann::ordered_json jp;
    jp["envious"] = pair.envious + 1;
    jp["envied"] = pair.envied + 1;
    jp["own_cost"] = pair.own_cost;
    jp["other_cost"] = pair.other_cost;
    j["envy_pairs"].push_back(std::move(jp));
  }
  j["ef"] = report.ef;
  j["ef_in_expectation"] = report.ef_in_expectation;
  j["si_violations"] = nlohmann::ordered_json::array();
  for (const SiViolation& v : report.si_violations) {
    nlohmann::ordered_json jv;
    jv["agent"] = v.agent + 1;
    jv["cost"] = v.cost;
    jv["equal_split"] = v.equal_split;
    j["si_violations"].push_back(std::move(jv));
  }
  j["si"] = report.si;
  j["makespan"] = report.makespan;
  j["mean_completion"] = report.mean_completion;
  return j;
}

nlohmann::json parse_json(const std::string& text, const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

}  // namespace fairshare
