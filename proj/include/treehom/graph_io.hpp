#pragma once

#include "treehom/graph.hpp"

#include <string>

namespace treehom {

// Graph documents are JSON with a fixed key order so serialization is byte
// stable. Target fields: vertices, edges (list of [u,v] with u<v), loops,
// and depth_tags when present. Tree fields: vertices, root, parent (entry i
// is the parent of vertex i, -1 for the root).

std::string write_target(const TargetGraph& h);
TargetGraph read_target(const std::string& text);

std::string write_tree(const SourceTree& t);
SourceTree read_tree(const std::string& text);

} // namespace treehom
