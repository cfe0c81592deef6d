#pragma once
#include <json.hpp>

namespace sbp {
using nlohmann::json;
using ordered_json = nlohmann::ordered_json;
}  // namespace sbp
