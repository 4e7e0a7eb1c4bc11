#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vkh {

// Raised when an input diagram fails schema or map validation. The message
// names the offending crossing or edge.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an internal invariant is violated (a bug, not bad input).
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CrossingKind { Classical, Virtual };

struct Crossing {
    int id = -1;
    CrossingKind kind = CrossingKind::Classical;
    // Dart ids in cyclic order around the vertex. For classical crossings
    // slot 0 is the incoming over-strand dart (so slot 2 is the outgoing
    // over-strand dart); the under-strand occupies slots 1 and 3.
    std::array<int, 4> darts{};
};

struct Edge {
    int tail = -1;  // dart at the crossing the edge leaves
    int head = -1;  // dart at the crossing the edge enters
};

enum class FaceColor : uint8_t { White, Black };

struct FaceColoring {
    std::vector<FaceColor> color;  // indexed by face id
};

// An oriented virtual link diagram as a combinatorial map on the sphere.
// Construction validates all invariants; instances are immutable afterwards.
class Diagram {
public:
    std::string name;
    int free_loops = 0;
    std::vector<Crossing> crossings;
    std::vector<Edge> edges;
    int outer_face_dart = -1;  // any dart on the outer face; -1 iff no crossings
    std::vector<int> crossing_order;  // classical crossing ids, cube order

    Diagram() = default;
    Diagram(std::string name, int free_loops, std::vector<Crossing> crossings,
            std::vector<Edge> edges, int outer_face_dart,
            std::vector<int> crossing_order);

    int num_crossings() const { return (int)crossings.size(); }
    int num_classical() const { return (int)crossing_order.size(); }
    int num_darts() const { return (int)dart_ids_.size(); }
    int num_edges() const { return (int)edges.size(); }
    int num_faces() const { return face_count_; }  // rotation-system faces only

    // Dense dart indices (0..num_darts-1) from external dart ids.
    int dart_index(int dart_id) const;
    int dart_id(int idx) const { return dart_ids_[idx]; }

    int crossing_of(int didx) const { return crossing_of_[didx]; }
    int slot_of(int didx) const { return slot_of_[didx]; }
    int theta(int didx) const { return theta_[didx]; }      // other end of edge
    int edge_of(int didx) const { return edge_of_[didx]; }
    bool is_head(int didx) const { return is_head_[didx]; }
    int rot_next(int didx) const;  // next dart in stored cyclic order
    int rot_prev(int didx) const;

    // Face machinery (faces of the 4-valent map; free loops are counted
    // separately as one extra face each).
    int face_of(int didx) const { return face_of_[didx]; }
    const std::vector<std::vector<int>>& face_darts() const { return face_darts_; }
    int outer_face() const { return outer_face_; }
    int total_faces() const { return face_count_ + free_loops; }

    // Face two-coloring with the outer face white.
    FaceColoring checkerboard() const;
    // Color of the corner between slots k and k+1 (mod 4) at crossing c.
    FaceColor corner_color(const FaceColoring& col, int cidx, int k) const;

    // +1 / -1 per classical crossing, by the under-strand entry slot rule.
    int crossing_sign(int cidx) const;
    std::pair<int, int> crossing_counts() const;  // (n+, n-)

    // Position of classical crossing id in crossing_order (0-based).
    int order_pos(int crossing_id) const;
    // Classical crossing index (into crossings) for cube bit b.
    int classical_at(int order_pos) const { return classical_idx_[order_pos]; }

    // Lexicographically minimal relabeling over all dart seeds; used for
    // diagram equality in move round-trip tests. Small diagrams only.
    std::string canonical_form() const;

    // All component orientations reversed (every edge flipped). Over-strand
    // slots are re-normalized so slot 0 is again the incoming over dart.
    Diagram reversed() const;
    // Mirror image: over/under swapped at every classical crossing.
    Diagram mirrored() const;

private:
    void validate_and_index();

    std::vector<int> dart_ids_;
    std::map<int, int> dart_index_;
    std::vector<int> crossing_of_, slot_of_, theta_, edge_of_, face_of_;
    std::vector<char> is_head_;
    std::vector<std::vector<int>> face_darts_;
    std::vector<int> classical_idx_;
    std::map<int, int> order_pos_;
    int face_count_ = 0;
    int outer_face_ = 0;
};

}  // namespace vkh
