#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "vkh/signs.hpp"

namespace vkh {

struct SparseEntry {
    int row;  // index in the (q, h+1) block
    int col;  // index in the (q, h) block
    int val;  // always +1 or -1
};

struct BuildOptions {
    StarPolicy star = StarPolicy::canonical();
    bool check_delta_squared = true;
    int max_crossings = 20;
};

// The Khovanov chain complex of a diagram: generators grouped by
// (quantum grading q, homological grading h) with sparse differentials
// D[q][h] : C^{q,h} -> C^{q,h+1}. Immutable after construction.
class KhovanovComplex {
public:
    KhovanovComplex(const Diagram& d, const BuildOptions& opts = {});

    const Diagram& diagram() const { return *d_; }
    const Resolution& resolution(uint64_t v) const { return res_[v]; }
    int n() const { return n_; }
    int npos() const { return npos_; }
    int nneg() const { return nneg_; }

    std::vector<int> quantum_gradings() const;
    std::pair<int, int> h_range() const { return {h_min_, h_max_}; }

    const std::vector<Generator>& block(int q, int h) const;
    int block_size(int q, int h) const;
    const std::vector<SparseEntry>& matrix(int q, int h) const;  // D[q][h]

    // Index of a generator inside its block, plus its gradings.
    struct Located {
        int q, h, idx;
    };
    Located locate(const Generator& g) const;

    // Verifies D[q][h+1] * D[q][h] = 0 for all blocks; throws InternalError
    // naming a violating (q, h, column) otherwise.
    void verify_delta_squared() const;

    // Cube edges classified as single cycle surgeries: (v, order position).
    const std::vector<std::pair<uint64_t, int>>& single_cycle_edges() const {
        return scs_edges_;
    }

    // Solved zeta corrections and direct coefficient lookup.
    const ZetaTable& zeta_table() const { return zeta_; }
    int coefficient(const Generator& g, const Generator& h) const;

    const BuildOptions& options() const { return opts_; }

private:
    const Diagram* d_;
    BuildOptions opts_;
    int n_, npos_, nneg_, h_min_ = 0, h_max_ = 0;
    std::vector<Resolution> res_;
    std::map<int, std::map<int, std::vector<Generator>>> gens_;
    std::map<int, std::map<int, std::vector<SparseEntry>>> diff_;
    std::vector<std::vector<int>> idx_of_mask_;  // per vec, per mask
    std::vector<std::pair<uint64_t, int>> scs_edges_;
    ZetaTable zeta_;
};

// Dual Khovanov chain complex: same generators, transposed matrices,
// reversed partial order. d[q][h] : C_{q,h+1} -> C_{q,h}.
struct DualComplex {
    std::map<int, std::map<int, std::vector<SparseEntry>>> diff;
    std::map<int, std::map<int, int>> sizes;  // block sizes copied over
};

DualComplex dualize(const KhovanovComplex& c);
DualComplex dualize(const DualComplex& c);  // involution check helper

// Entry list of D[q][h] reduced mod 2 (values all 1).
std::vector<SparseEntry> reduce_mod2(const std::vector<SparseEntry>& entries);

}  // namespace vkh
