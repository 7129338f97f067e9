#pragma once

#include <json.hpp>

#include "cas/wire.hpp"

namespace cas {

/// Structural JSON dump of a value. Integers and rational coefficients are
/// written as decimal strings so no precision is lost.
nlohmann::json to_json(const WireValue& value);

}  // namespace cas
