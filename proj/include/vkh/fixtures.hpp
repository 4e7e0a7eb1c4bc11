#pragma once

#include <vector>

#include "vkh/diagram.hpp"

namespace vkh {

// One braid letter: position in 1..strands-1; kind +1 (positive crossing),
// -1 (negative), 0 (virtual).
struct BraidLetter {
    int pos;
    int kind;
};

// Plat-free closure of a braid word, strands oriented downward, closure
// arcs nested around the right side. Positions never used become free loops.
Diagram braid_closure(const std::string& name, int strands,
                      const std::vector<BraidLetter>& word);

// K with a small ring component crossing one edge of K twice: once
// classically (ring over) and once virtually. The result is a two-component
// diagram with exactly one virtual crossing between the components.
Diagram with_virtual_ring(const Diagram& k, int edge_index);

// The shipped corpus.
Diagram fx_unknot();          // U0: one free loop
Diagram fx_u1_plus();         // positive kink
Diagram fx_u1_minus();        // negative kink
Diagram fx_hopf_plus();       // both crossings positive
Diagram fx_hopf_minus();
Diagram fx_trefoil_right();
Diagram fx_trefoil_left();
Diagram fx_figure8();
Diagram fx_virtual_trefoil();  // 2 classical + 1 virtual
Diagram fx_kishino_style();    // 4 classical + 2 virtual
Diagram fx_ring_unknot();      // Fig-10.11 pattern over a plain circle
Diagram fx_ring_trefoil();     // Fig-10.11 pattern over a trefoil
Diagram fx_torus_3_4();        // T(3,4), 8 positive crossings

std::vector<Diagram> fixture_corpus();        // everything except T(3,4)
std::vector<Diagram> classical_fixtures();    // the classical subset

}  // namespace vkh
