#pragma once

#include <string>

#include <json.hpp>

#include "delk/tri.hpp"

namespace delk {

/// Point configurations serialize as
///   {"gauge": ["0", "1", "inf"], "free": [[x, y], ...]}
/// where gauge entries are the literal string "inf" for the infinite
/// vertex, a numeric string for real gauge points, or an [x, y] pair.
nlohmann::json config_to_json(const PointConfiguration& cfg);
PointConfiguration config_from_json(const nlohmann::json& j);

/// Triangulations serialize with a vertex table, face triples ("inf"
/// allowed as a vertex entry) and the edge list with theta values.
nlohmann::json triangulation_to_json(const Triangulation& t);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace delk
