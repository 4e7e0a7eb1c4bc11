#pragma once

#include "vkh/resolution.hpp"

namespace vkh {

// How the juxtaposed xi factors in Definition 3.16(3) cases (2)/(3) combine.
// Sum (XOR in Z_2) is the reading under which delta^2 = 0 holds and star
// moves flip exactly the coefficients of created/destroyed x- circles;
// Product is kept as a diagnostic for the convention sweep.
enum class ZetaReading { Sum, Product };

// Optional weight in the xi diagnostic: whether a virtual pass flips the
// orientation parity along the walk (it flips the checkerboard side).
struct SignRule {
    bool xi_counts_virtual = false;
};

// Arrow and cut-locus summary of a resolution, exposed for tests and the
// moduli report. Arrows and cut loci themselves live on the circles.
struct SignContext {
    int arrows = 0;
    int cut_loci = 0;
    std::vector<int> cuts_per_circle;
};

SignContext sign_context(const Resolution& r);

// Parity of cut loci (and, per the frozen convention, virtual passes)
// between the starting star of `c` and the first arrow of `site` (a
// crossing index) met walking in the traversal direction. Asserts that the
// opposite walk gives the same parity.
int xi(const Circle& c, int site, const SignRule& rule = SignRule{});

// Standard sign assignment on the cube edge v -> u = v + e_pos.
int s0(uint64_t u, uint64_t v);

// The zeta corrections are per cube edge and per local label case, exactly
// the case table of Definition 3.16(3). The three cases per edge:
//   comultiplication: 0 = x+ lands on the first new circle, 1 = on the
//   second, 2 = the x- -> x- x- case;
//   multiplication: 0 = x- on the first old circle, 1 = on the second,
//   2 = the x+ x+ -> x+ case.
// Their values are pinned by the delta^2 = 0 requirement (Theorem 3.19, the
// construction's own ground truth): the square relations form a small
// linear system over GF(2) that is solved once per diagram.
struct ZetaTable {
    // (order position << 2 | case) -> bit, keyed per source vector
    std::vector<uint8_t> bits;  // indexed by edge_case_index
    int n = 0;
    int index(uint64_t v, int pos, int cse) const {
        return (int)((v * n + pos) * 3 + cse);
    }
    int value(uint64_t v, int pos, int cse) const {
        return bits[index(v, pos, cse)];
    }
};

// Experiment knob for the constraint sweep in cmd_check: which paper
// relations to impose beyond the square relations.
extern int g_zeta_extra;
extern int g_zeta_xi_virts;

// Solve the square relations for a diagram. Throws InternalError if the
// system is infeasible (a structural bug, not bad input).
ZetaTable solve_zeta(const Diagram& d, const std::vector<Resolution>& res);

// Forced extra relations: each row is (variable indices, constant). Used by
// the pinnedness diagnostics; throws on infeasibility like solve_zeta.
struct ZetaForced {
    std::vector<std::pair<std::vector<int>, int>> rows;
};
ZetaTable solve_zeta_forced(const Diagram& d, const std::vector<Resolution>& res,
                            const ZetaForced& forced);

// Label transitions of one surgery edge: (target mask, case id) pairs for a
// given source mask.
void edge_transitions(const SurgeryInfo& info, uint32_t source_mask,
                      int ncirc_from, std::vector<std::pair<uint32_t, int>>& out);

// Integer coefficient c[g; h] of the differential, 0 unless h covers g.
// Convenience form: builds the (small) complex machinery internally.
int coefficient(const Diagram& d, const Generator& g, const Generator& h);

// zeta exponent of a covering pair, recovered as exponent - s0.
int zeta_of(const Diagram& d, const Generator& g, const Generator& h);

}  // namespace vkh
