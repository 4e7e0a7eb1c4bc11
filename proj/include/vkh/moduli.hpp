#pragma once

#include "vkh/complex.hpp"

namespace vkh {

enum class CellKind { Empty, Square, Ladybug, QuasiLadybug };

struct BrokenFlow {
    Generator w;
    int sign1;  // c[y -> w]
    int sign2;  // c[w -> x]
};

// An index-2 cell: the moduli data between generators two homological
// degrees apart at equal quantum grading.
struct Index2Cell {
    Generator y, x;
    std::vector<BrokenFlow> flows;
    CellKind kind = CellKind::Empty;
    // For 4-flow cells: the two admissible interval pairings (flow-index
    // pairs); pairing_a joins the split circles sharing the first traversal
    // piece, pairing_b the complementary one. For ladybugs right_is_a tells
    // which one the right-pair rule selects.
    std::array<std::pair<int, int>, 2> pairing_a{}, pairing_b{};
    bool right_is_a = true;

    // The intervals of this cell under a matching choice (for squares the
    // unique pairing; use_alternate applies only to quasi-ladybug cells,
    // left_pair only to ladybugs).
    std::vector<std::pair<int, int>> intervals(bool use_alternate,
                                               bool left_pair = false) const;
};

Index2Cell classify_index2(const KhovanovComplex& c, const Generator& y,
                           const Generator& x);

// The right-pair matching of a ladybug cell (or the left pair on request).
std::vector<std::pair<int, int>> right_pair(const Index2Cell& cell,
                                            bool left = false);

// All nonempty index-2 cells of the complex, ordered deterministically.
std::vector<Index2Cell> all_index2_cells(const KhovanovComplex& c);

// The space of matching choices: one binary choice per quasi-ladybug cell.
struct MatchingSpace {
    std::vector<Index2Cell> quasi;        // deterministic order
    uint64_t count() const { return uint64_t(1) << quasi.size(); }
    bool alternate(uint64_t choice, const Generator& y, const Generator& x) const;
};
MatchingSpace enumerate_matchings(const KhovanovComplex& c, uint64_t cap = 64);

struct MatchingChoice {
    const MatchingSpace* space = nullptr;
    uint64_t choice = 0;
    bool left_pair = false;
    bool alternate(const Generator& y, const Generator& x) const {
        return space && space->alternate(choice, y, x);
    }
};

// Index-3 check: the 1-complex glued from the index-2 intervals around a
// pair (y, x) with gr_h x - gr_h y = 3 decomposes into circles (every
// broken-flow vertex has degree exactly 2). Returns the circles as lists of
// vertex indices; throws InternalError on a degree violation.
struct Index3Result {
    int vertices = 0;
    std::vector<std::vector<int>> circles;
};
Index3Result index3_boundary_check(const KhovanovComplex& c, const Generator& y,
                                   const Generator& x, const MatchingChoice& mc);

// Index-4 check: the closed surface glued from index-3 discs along index-2
// intervals is orientable (Claim 10.12's sign rule). Returns the number of
// surface components; throws on a non-orientable component or if some
// 1-cell does not bound exactly two 2-cells.
int index4_orientability_check(const KhovanovComplex& c, const Generator& y,
                               const Generator& x, const MatchingChoice& mc);

// Generic signed-incidence orientability check (used directly by the
// synthetic RP^2 fixture): edges as (face_a, face_b, relative_sign) where
// relative_sign = -1 means the gluing is orientation-compatible.
bool surface_orientable(int faces,
                        const std::vector<std::tuple<int, int, int>>& edges);

}  // namespace vkh
