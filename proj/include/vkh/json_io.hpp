#pragma once

#include <string>

#include "vkh/diagram.hpp"

namespace vkh {

// Diagram file schema:
// {"name": str, "free_loops": int,
//  "crossings": [{"id": int, "kind": "classical"|"virtual", "darts": [int,int,int,int]}],
//  "edges": [{"tail": int, "head": int}],
//  "outer_face_dart": int, "crossing_order": [int,...]}
Diagram parse_diagram(const std::string& json_text);
Diagram load_diagram(const std::string& path);
std::string diagram_to_json(const Diagram& d);

}  // namespace vkh
