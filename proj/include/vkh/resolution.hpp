#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vkh/diagram.hpp"

namespace vkh {

// One item met while walking a state circle. Classical smoothing-arc
// passages carry the arrow induced by the checkerboard coloring and, for
// 0-resolved sites, one end of the surgery arc. Cut loci are inserted
// between arrow passages whose directions disagree.
struct Feature {
    enum Kind : uint8_t { Pass, Virt, Cut };
    Kind kind = Pass;
    int site = -1;        // crossing index into Diagram::crossings
    uint8_t pair_k = 0;   // smoothing arc joins slots (pair_k, pair_k+1 mod 4)
    bool fwd = false;       // traversal runs slot pair_k -> pair_k+1
    bool arrow_fwd = false; // arrow agrees with traversal direction
    bool has_arc = false;   // site is 0-resolved (surgery arc end here)
};

// A state circle: features in traversal order plus the starting star.
// The star sits in the gap after feats[star_slot] (and before the cyclically
// next feature); -1 for featureless circles.
struct Circle {
    std::vector<Feature> feats;
    std::vector<int> darts;  // arrival darts (dense indices), traversal order
    std::string key;         // canonical identity across resolutions
    int star_slot = -1;
    bool free_loop = false;

    std::string to_string(const Diagram& d) const;  // debug dump, one line
    int cut_count() const;
};

// Star and orientation policy. Both the star slot and the traversal
// direction of a circle are pure functions of the circle's key, so one
// geometric circle gets the same data in every resolution of the cube
// (Theorem 3.21 makes every such choice valid; randomized policies are
// used to test that independence).
struct StarPolicy {
    bool seeded = false;
    uint64_t seed = 0;
    static StarPolicy canonical() { return {}; }
    static StarPolicy random(uint64_t seed) { return {true, seed}; }
};

struct ArcEndRef {
    int circle = -1;
    int feat = -1;
};

// Resolution configuration for one cube vertex: state circles plus the
// surgery arcs at the 0-bits (ordered by the global crossing order).
struct Resolution {
    uint64_t vec = 0;
    std::vector<Circle> circles;
    std::map<int, std::array<ArcEndRef, 2>> arcs;  // order position -> ends
    std::vector<int8_t> arrival;   // per dense dart: 1 iff an arrival dart
    std::vector<int> circle_of;    // per dense dart: owning circle index

    int index() const { return (int)arcs.size(); }
};

Resolution resolve(const Diagram& d, uint64_t vec, const FaceColoring& col,
                   const StarPolicy& policy = StarPolicy::canonical());
Resolution resolve(const Diagram& d, uint64_t vec);

// Surgery along the arc at classical order position `pos` (a 0-bit of
// c.vec); returns the resolution with that bit set to 1.
Resolution surger(const Diagram& d, const Resolution& c, int pos,
                  const FaceColoring& col,
                  const StarPolicy& policy = StarPolicy::canonical());

enum class SurgeryKind { Multiplication, Comultiplication, SingleCycle };

// Correspondence between the circles of a resolution and the resolution
// obtained by one surgery. Surviving circles match by key; the 1-2 circles
// on each side touching the surgered site are listed separately.
struct SurgeryInfo {
    SurgeryKind kind;
    std::vector<int> src;            // non-surviving circles in the source
    std::vector<int> dst;            // non-surviving circles in the target
    std::vector<int> survivor_map;   // source circle -> target circle, -1 if in src
};

SurgeryInfo classify_surgery(const Resolution& from, const Resolution& to);

// Labeled resolution configuration: mask bit b set <=> circle b gets x+.
struct Generator {
    uint64_t vec = 0;
    uint32_t mask = 0;
};

// Partial-order covering relation on labeled configurations (one
// multiplication or comultiplication surgery with the matching label rule).
bool covers(const Diagram& d, const Generator& g, const Generator& h);

// Local Frobenius rules: may `labels_out` follow `labels_in` across one
// surgery of the given kind? Labels are x+ = true.
bool local_rule_mult(bool in1, bool in2, bool out);
bool local_rule_comult(bool in1, bool out1, bool out2);

struct GeneratorGradings {
    int gr_h;
    int gr_q;
};
GeneratorGradings gradings(const Diagram& d, const Resolution& r, uint32_t mask);

// All labeled resolution configurations of d, sorted by (vec, mask).
std::vector<Generator> enumerate_generators(const Diagram& d, int max_crossings);

// Interval poset of a decorated resolution configuration: all labeled
// configurations z with (bottom) <= z <= (top). Empty if the pair is not
// related. `bottom` and `top` live on resolutions of the same diagram.
std::vector<Generator> poset_interval(const Diagram& d, const Generator& bottom,
                                      const Generator& top);

}  // namespace vkh
