#pragma once

#include <json.hpp>
#include <string>

#include "gcoh/tropical.hpp"

namespace gcoh {

// {"vertices":[{"id":"R","weight":"27"},...],"edges":[["R","G"],...]}
WeightedGraph graph_from_json(const nlohmann::json& doc);
WeightedGraph parse_graph(const std::string& text);
WeightedGraph load_graph(const std::string& path);
nlohmann::json graph_to_json(const WeightedGraph& g);

// {"R": 3, "G": 0, ...} with nonnegative integer values.
Assignment parse_assignment(const std::string& text);
Assignment load_assignment(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace gcoh
