#pragma once

#include <optional>
#include <vector>

#include "vkh/diagram.hpp"

namespace vkh {

enum class MoveType { R1, R2, R3, VR1, VR2, VR3, Mixed };

// A move location. Insert moves name edges; remove moves name crossings;
// triangle moves name a face.
struct MoveInstance {
    MoveType type;
    bool insert = true;  // triangle moves ignore this (self-inverse)
    // R1 insert: edge, kink_sign (+1/-1), over_first (side of the loop)
    // VR1 insert: edge
    // R2/VR2 insert: edge_a (strand pushed over), edge_b, face with both edges
    // R1/VR1 remove: crossing id
    // R2/VR2 remove: two crossing ids
    // R3/VR3/Mixed: a dart on the triangle face
    int edge_a = -1, edge_b = -1, face_dart = -1;
    int crossing_a = -1, crossing_b = -1;
    int kink_sign = +1;
    bool over_first = true;
};

Diagram apply_move(const Diagram& d, const MoveInstance& mv);

// Inverse instance for an applied move (insert <-> remove at the location
// the move created). Returned together by this helper.
struct AppliedMove {
    Diagram result;
    MoveInstance inverse;
};
AppliedMove apply_move_tracked(const Diagram& d, const MoveInstance& mv);

// All triangle faces admitting the given triangle move type.
std::vector<MoveInstance> find_triangle_moves(const Diagram& d, MoveType t);

}  // namespace vkh
