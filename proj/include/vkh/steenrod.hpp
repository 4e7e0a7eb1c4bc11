#pragma once

#include "vkh/homology.hpp"
#include "vkh/moduli.hpp"

namespace vkh {

// A Steenrod operator between two fixed homology bidegrees, as a matrix
// over GF(2) in the chosen homology bases (columns = source classes).
struct SteenrodOperator {
    int q = 0, m = 0, degree = 1;
    int src_dim = 0, dst_dim = 0;
    std::vector<std::vector<char>> matrix;  // dst_dim rows x src_dim cols
    bool zero() const;
    bool operator==(const SteenrodOperator& o) const;
    bool operator<(const SteenrodOperator& o) const;
    std::string to_string() const;
};

// First Steenrod square (Bockstein): Kh^{q,m}(;Z2) -> Kh^{q,m+1}(;Z2),
// computed by lifting cocycles to integer cochains.
SteenrodOperator sq1(const KhovanovComplex& c, int q, int m);

// Abstract three-layer stable cell data: boundary matrices between the
// cell layers plus the eta matrix of framed-circle attachments.
struct StableCellData3 {
    int dim_bottom = 0, dim_mid = 0, dim_top = 0;
    std::vector<SparseEntry> d1;  // bottom -> mid (as differential)
    std::vector<SparseEntry> d2;  // mid -> top
};

// Sq^2 of a wedge-like three-layer complex with explicit eta data
// (eta[z][y] = 1 iff the top cell z attaches over the bottom cell y with
// the nontrivial framing). Requires d1 = d2 = 0.
SteenrodOperator sq2_cells(const StableCellData3& data,
                           const std::vector<std::vector<char>>& eta);

// Second Steenrod square under a matching choice. The weight rule for the
// glued interval manifold is the frozen convention (see README/check).
SteenrodOperator sq2(const KhovanovComplex& c, const MatchingChoice& mc, int q,
                     int m);

// The set of operators over all matching choices, deduplicated.
struct Sq2Set {
    std::vector<SteenrodOperator> ops;  // sorted, unique
    bool operator==(const Sq2Set& o) const { return ops == o.ops; }
};
Sq2Set sq2_set(const KhovanovComplex& c, int q, int m, uint64_t cap = 64,
               bool left_pair = false);

// Z2 homology basis of one bidegree, with coordinates for cocycles.
QuotientBasis kh2_basis(const KhovanovComplex& c, int q, int m);
BitMatrix mod2_matrix(const KhovanovComplex& c, int q, int m);

}  // namespace vkh
