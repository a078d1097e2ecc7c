// JSON serialization with every floating value written at 17 significant
// digits, so artifacts round-trip bit-exactly and reruns are byte-identical.
#pragma once

#include <json.hpp>

#include <string>

namespace meanco {

std::string dump_json17(const nlohmann::ordered_json& j, int indent = 0);
void write_json17(const nlohmann::ordered_json& j, const std::string& path);
nlohmann::ordered_json read_json(const std::string& path);

}  // namespace meanco
