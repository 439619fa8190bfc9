#ifndef FAIRSHARE_SERIALIZATION_HPP_
#define FAIRSHARE_SERIALIZATION_HPP_

#include <string>

#include "json.hpp"

#include "fairshare/audit.hpp"
#include "fairshare/core.hpp"

namespace fairshare {

// Field order is fixed so repeated dumps are byte-identical.
nlohmann::ordered_json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::ordered_json schedule_to_json(const Schedule& schedule);
// Validates segment shapes and consistency against the instance.
Schedule schedule_from_json(const Instance& instance, const nlohmann::json& j,
                            const Tolerances& tol = {});

// Agent indices in reports are 1-based, matching the CLI output.
nlohmann::ordered_json audit_report_to_json(const AuditReport& report);

// Parses text as JSON, wrapping parse failures in ParseError.
nlohmann::json parse_json(const std::string& text, const std::string& origin);

}  // namespace fairshare

#endif  // FAIRSHARE_SERIALIZATION_HPP_
