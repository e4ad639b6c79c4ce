#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "orad/grassmann_mc.hpp"
#include "orad/identities.hpp"

namespace orad::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

json to_json(const GrassmannConfig& cfg);
json to_json(const IdentityReport& r);
json to_json(const MCEstimate& e);

/// Shortest text that reads back to the same double.
std::string number(double v);

/// CSV with the meta object as "# key=value" lines, then a header row.
void write_csv(std::ostream& os, const json& meta, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

}  // namespace orad::cli
