#include "vkh/complex.hpp"

#include <algorithm>

namespace vkh {

KhovanovComplex::KhovanovComplex(const Diagram& d, const BuildOptions& opts)
    : d_(&d), opts_(opts) {
    n_ = d.num_classical();
    if (n_ > opts.max_crossings)
        throw ValidationError("crossing cap exceeded: " + std::to_string(n_));
    auto [np, nm] = d.crossing_counts();
    npos_ = np;
    nneg_ = nm;
    h_min_ = -nm;
    h_max_ = n_ - nm;

    FaceColoring col = d.checkerboard();
    uint64_t nstates = uint64_t(1) << n_;
    res_.reserve(nstates);
    for (uint64_t v = 0; v < nstates; ++v)
        res_.push_back(resolve(d, v, col, opts.star));

    idx_of_mask_.resize(nstates);
    for (uint64_t v = 0; v < nstates; ++v) {
        int nc = (int)res_[v].circles.size();
        if (nc > 30) throw ValidationError("too many state circles");
        int h = -nm + (int)__builtin_popcountll(v);
        int q0 = np - 2 * nm + (int)__builtin_popcountll(v) - nc;
        idx_of_mask_[v].assign(uint32_t(1) << nc, -1);
        for (uint32_t m = 0; m < (uint32_t(1) << nc); ++m) {
            int q = q0 + 2 * (int)__builtin_popcount(m);
            auto& blk = gens_[q][h];
            idx_of_mask_[v][m] = (int)blk.size();
            blk.push_back({v, m});
        }
    }

    // Differential, one cube edge at a time, with the zeta corrections
    // solved from the square relations.
    zeta_ = solve_zeta(d, res_);
    std::vector<std::pair<uint32_t, int>> trans;
    for (uint64_t v = 0; v < nstates; ++v) {
        const Resolution& rv = res_[v];
        int cv = (int)rv.circles.size();
        int hv = -nm + (int)__builtin_popcountll(v);
        int q0v = np - 2 * nm + (int)__builtin_popcountll(v) - cv;
        for (int pos = 0; pos < n_; ++pos) {
            if ((v >> pos) & 1) continue;
            uint64_t u = v | (uint64_t(1) << pos);
            SurgeryInfo info = classify_surgery(rv, res_[u]);
            if (info.kind == SurgeryKind::SingleCycle) {
                scs_edges_.push_back({v, pos});
                continue;
            }
            int sign0 = s0(u, v);
            for (uint32_t mv = 0; mv < (uint32_t(1) << cv); ++mv) {
                edge_transitions(info, mv, cv, trans);
                int q = q0v + 2 * (int)__builtin_popcount(mv);
                for (auto& [mu, cse] : trans) {
                    int zbit = zeta_.value(v, pos, cse);
                    int val = ((sign0 ^ zbit) & 1) ? -1 : +1;
                    diff_[q][hv].push_back(
                        {idx_of_mask_[u][mu], idx_of_mask_[v][mv], val});
                }
            }
        }
    }

    if (opts.check_delta_squared) verify_delta_squared();
}

std::vector<int> KhovanovComplex::quantum_gradings() const {
    std::vector<int> qs;
    for (auto& [q, _] : gens_) qs.push_back(q);
    return qs;
}

static const std::vector<Generator> kEmptyGens;
static const std::vector<SparseEntry> kEmptyEntries;

const std::vector<Generator>& KhovanovComplex::block(int q, int h) const {
    auto it = gens_.find(q);
    if (it == gens_.end()) return kEmptyGens;
    auto jt = it->second.find(h);
    return jt == it->second.end() ? kEmptyGens : jt->second;
}

int KhovanovComplex::block_size(int q, int h) const {
    return (int)block(q, h).size();
}

const std::vector<SparseEntry>& KhovanovComplex::matrix(int q, int h) const {
    auto it = diff_.find(q);
    if (it == diff_.end()) return kEmptyEntries;
    auto jt = it->second.find(h);
    return jt == it->second.end() ? kEmptyEntries : jt->second;
}

int KhovanovComplex::coefficient(const Generator& g, const Generator& h) const {
    uint64_t diff = g.vec ^ h.vec;
    if ((g.vec & h.vec) != g.vec || __builtin_popcountll(diff) != 1) return 0;
    int pos = __builtin_ctzll(diff);
    SurgeryInfo info = classify_surgery(res_[g.vec], res_[h.vec]);
    if (info.kind == SurgeryKind::SingleCycle) return 0;
    std::vector<std::pair<uint32_t, int>> trans;
    edge_transitions(info, g.mask, (int)res_[g.vec].circles.size(), trans);
    for (auto& [mu, cse] : trans)
        if (mu == h.mask) {
            int e = (s0(h.vec, g.vec) + zeta_.value(g.vec, pos, cse)) & 1;
            return e ? -1 : 1;
        }
    return 0;
}

KhovanovComplex::Located KhovanovComplex::locate(const Generator& g) const {
    const Resolution& r = res_[g.vec];
    GeneratorGradings gr = gradings(*d_, r, g.mask);
    return {gr.gr_q, gr.gr_h, idx_of_mask_[g.vec][g.mask]};
}

void KhovanovComplex::verify_delta_squared() const {
    for (auto& [q, byh] : diff_) {
        for (auto& [h, entries] : byh) {
            auto it2 = byh.find(h + 1);
            if (it2 == byh.end()) continue;
            // rows of D[h] feed columns of D[h+1]
            std::map<int, std::vector<std::pair<int, int>>> next_by_col;
            for (auto& e : it2->second) next_by_col[e.col].push_back({e.row, e.val});
            std::map<std::pair<int, int>, long long> acc;
            for (auto& e : entries) {
                auto nb = next_by_col.find(e.row);
                if (nb == next_by_col.end()) continue;
                for (auto& [r2, v2] : nb->second) acc[{r2, e.col}] += (long long)e.val * v2;
            }
            for (auto& [rc, sum] : acc)
                if (sum != 0)
                    throw InternalError("delta^2 != 0 at q=" + std::to_string(q) +
                                        " h=" + std::to_string(h) +
                                        " column=" + std::to_string(rc.second));
        }
    }
}

DualComplex dualize(const KhovanovComplex& c) {
    DualComplex dc;
    for (int q : c.quantum_gradings()) {
        auto [hmin, hmax] = c.h_range();
        for (int h = hmin; h <= hmax; ++h) {
            dc.sizes[q][h] = c.block_size(q, h);
            for (auto& e : c.matrix(q, h))
                dc.diff[q][h].push_back({e.col, e.row, e.val});
        }
    }
    return dc;
}

DualComplex dualize(const DualComplex& c) {
    DualComplex dc;
    dc.sizes = c.sizes;
    for (auto& [q, byh] : c.diff)
        for (auto& [h, entries] : byh)
            for (auto& e : entries) dc.diff[q][h].push_back({e.col, e.row, e.val});
    return dc;
}

std::vector<SparseEntry> reduce_mod2(const std::vector<SparseEntry>& entries) {
    std::vector<SparseEntry> out;
    for (auto& e : entries) out.push_back({e.row, e.col, 1});
    return out;
}

}  // namespace vkh
