#pragma once

#include "vkh/homology.hpp"

namespace vkh {

// Independently coded classical Khovanov homology for diagrams without
// virtual crossings: its own state/circle tracing (union-find over darts)
// and the textbook differential with standard cube signs, no cut-locus
// machinery. Only the Smith normal form code is shared.
HomologyTable classical_oracle_Z(const Diagram& d);
Z2Table classical_oracle_Z2(const Diagram& d);

}  // namespace vkh
