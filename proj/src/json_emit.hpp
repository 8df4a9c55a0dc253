#pragma once

#include <string>

#include <json.hpp>

namespace kembed::json {

using Json = nlohmann::ordered_json;

/// Serializes with two-space indentation, insertion-ordered keys, and every
/// floating-point number printed as %.17g. Non-finite numbers become null.
std::string dump(const Json& value);

}  // namespace kembed::json
