#pragma once

#include <json.hpp>
#include <string>

#include "kakeya/besicovitch.hpp"
#include "kakeya/report.hpp"
#include "kakeya/tube.hpp"

namespace kakeya {

using Json = nlohmann::json;

Json family_to_json(const TubeFamily& f);
TubeFamily family_from_json(const Json& j);

Json report_to_json(const BoundReport& r);
BoundReport report_from_json(const Json& j);

Json curve_to_json(const FCurve& c);
FCurve curve_from_json(const Json& j);

/// CSV with columns k, delta, epsilon, err, certificate.
void write_curve_csv(const std::string& path, const FCurve& c);
FCurve read_curve_csv(const std::string& path);

void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

}  // namespace kakeya
