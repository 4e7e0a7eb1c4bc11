#include "vkh/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace vkh {

namespace {

struct DSU {
    std::vector<int> p;
    explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

// Circles of a state, as sorted component representatives over darts.
std::vector<int> state_circles(const Diagram& d, uint64_t v, std::vector<int>& comp) {
    int nd = d.num_darts();
    DSU dsu(nd);
    for (int x = 0; x < nd; ++x) dsu.unite(x, d.theta(x));
    for (size_t ci = 0; ci < d.crossings.size(); ++ci) {
        const Crossing& c = d.crossings[ci];
        auto di = [&](int s) { return d.dart_index(c.darts[s]); };
        if (c.kind == CrossingKind::Virtual) {
            dsu.unite(di(0), di(2));
            dsu.unite(di(1), di(3));
        } else {
            int bit = (int)((v >> d.order_pos(c.id)) & 1);
            if (bit == 0) {
                dsu.unite(di(0), di(1));
                dsu.unite(di(2), di(3));
            } else {
                dsu.unite(di(1), di(2));
                dsu.unite(di(3), di(0));
            }
        }
    }
    std::vector<int> reps;
    comp.assign(nd, -1);
    for (int x = 0; x < nd; ++x)
        if (dsu.find(x) == x) reps.push_back(x);
    std::sort(reps.begin(), reps.end());
    for (int x = 0; x < nd; ++x) {
        int r = dsu.find(x);
        comp[x] = (int)(std::lower_bound(reps.begin(), reps.end(), r) - reps.begin());
    }
    return reps;
}

struct OracleComplex {
    std::map<int, std::map<int, int>> sizes;
    std::map<int, std::map<int, std::vector<SparseEntry>>> diff;
    std::pair<int, int> hrange;
    std::vector<int> qs;
};

OracleComplex build(const Diagram& d) {
    for (auto& c : d.crossings)
        if (c.kind == CrossingKind::Virtual)
            throw ValidationError("classical oracle on a virtual diagram");
    int n = d.num_classical();
    auto [np, nm] = d.crossing_counts();
    uint64_t nstates = uint64_t(1) << n;

    std::vector<std::vector<int>> comps(nstates);
    std::vector<int> ncirc(nstates);
    std::vector<std::vector<int>> idx_of_mask(nstates);
    std::map<int, std::map<int, int>> sizes;
    for (uint64_t v = 0; v < nstates; ++v) {
        std::vector<int> comp;
        auto reps = state_circles(d, v, comp);
        comps[v] = comp;
        ncirc[v] = (int)reps.size() + d.free_loops;
        int h = -nm + (int)__builtin_popcountll(v);
        int q0 = np - 2 * nm + (int)__builtin_popcountll(v) - ncirc[v];
        idx_of_mask[v].assign(uint32_t(1) << ncirc[v], -1);
        for (uint32_t m = 0; m < (uint32_t(1) << ncirc[v]); ++m) {
            int q = q0 + 2 * (int)__builtin_popcount(m);
            idx_of_mask[v][m] = sizes[q][h]++;
        }
    }

    OracleComplex oc;
    oc.sizes = sizes;
    oc.hrange = {-nm, n - nm};
    for (auto& [q, _] : sizes) oc.qs.push_back(q);

    for (uint64_t v = 0; v < nstates; ++v) {
        int hv = -nm + (int)__builtin_popcountll(v);
        int q0v = np - 2 * nm + (int)__builtin_popcountll(v) - ncirc[v];
        for (int pos = 0; pos < n; ++pos) {
            if ((v >> pos) & 1) continue;
            uint64_t u = v | (uint64_t(1) << pos);
            // Circle correspondence: merge-or-split located via shared darts.
            const std::vector<int>& cv = comps[v];
            const std::vector<int>& cu = comps[u];
            int nv = ncirc[v] - d.free_loops, nu = ncirc[u] - d.free_loops;
            std::vector<int> image(nv, -1);  // v-circle -> u-circle (by any dart)
            std::vector<int> count_to(nu, 0);
            for (int x = 0; x < d.num_darts(); ++x) image[cv[x]] = cu[x];
            std::vector<std::vector<int>> pre(nu);
            for (int i = 0; i < nv; ++i) pre[image[i]].push_back(i);
            int s0v = (int)(__builtin_popcountll(v & ((uint64_t(1) << pos) - 1)) & 1);
            int sgn = s0v ? -1 : 1;
            if (nu == nv - 1) {
                // merge: the u-circle with two preimages
                int t = -1;
                for (int j = 0; j < nu; ++j)
                    if (pre[j].size() == 2) t = j;
                int a = pre[t][0], b = pre[t][1];
                for (uint32_t mv = 0; mv < (uint32_t(1) << ncirc[v]); ++mv) {
                    uint32_t base = 0;
                    for (int i = 0; i < nv; ++i)
                        if (((mv >> i) & 1) && (i != a && i != b))
                            base |= uint32_t(1) << image[i];
                    for (int fl = 0; fl < d.free_loops; ++fl)
                        if ((mv >> (nv + fl)) & 1) base |= uint32_t(1) << (nu + fl);
                    bool pa = (mv >> a) & 1, pb = (mv >> b) & 1;
                    int q = q0v + 2 * (int)__builtin_popcount(mv);
                    if (pa && pb)
                        oc.diff[q][hv].push_back(
                            {idx_of_mask[u][base | (uint32_t(1) << t)],
                             idx_of_mask[v][mv], sgn});
                    else if (pa != pb)
                        oc.diff[q][hv].push_back(
                            {idx_of_mask[u][base], idx_of_mask[v][mv], sgn});
                }
            } else if (nu == nv + 1) {
                // split: exactly one v-circle maps onto two u-circles
                int s = -1, t1 = -1, t2 = -1;
                std::vector<std::vector<int>> targets(nv);
                for (int x = 0; x < d.num_darts(); ++x) {
                    auto& tg = targets[cv[x]];
                    if (std::find(tg.begin(), tg.end(), cu[x]) == tg.end())
                        tg.push_back(cu[x]);
                }
                for (int i = 0; i < nv; ++i)
                    if (targets[i].size() == 2) {
                        s = i;
                        t1 = targets[i][0];
                        t2 = targets[i][1];
                    }
                for (uint32_t mv = 0; mv < (uint32_t(1) << ncirc[v]); ++mv) {
                    uint32_t base = 0;
                    for (int i = 0; i < nv; ++i)
                        if (((mv >> i) & 1) && i != s)
                            base |= uint32_t(1) << targets[i][0];
                    for (int fl = 0; fl < d.free_loops; ++fl)
                        if ((mv >> (nv + fl)) & 1) base |= uint32_t(1) << (nu + fl);
                    int q = q0v + 2 * (int)__builtin_popcount(mv);
                    if ((mv >> s) & 1) {
                        oc.diff[q][hv].push_back(
                            {idx_of_mask[u][base | (uint32_t(1) << t1)],
                             idx_of_mask[v][mv], sgn});
                        oc.diff[q][hv].push_back(
                            {idx_of_mask[u][base | (uint32_t(1) << t2)],
                             idx_of_mask[v][mv], sgn});
                    } else {
                        oc.diff[q][hv].push_back(
                            {idx_of_mask[u][base], idx_of_mask[v][mv], sgn});
                    }
                }
            } else {
                throw InternalError("classical oracle: impossible circle change");
            }
        }
    }
    return oc;
}

}  // namespace

HomologyTable classical_oracle_Z(const Diagram& d) {
    OracleComplex oc = build(d);
    HomologyTable table;
    for (int q : oc.qs) {
        std::map<int, SnfResult> snf;
        for (int h = oc.hrange.first; h <= oc.hrange.second; ++h) {
            int rows = oc.sizes[q].count(h + 1) ? oc.sizes[q][h + 1] : 0;
            int cols = oc.sizes[q].count(h) ? oc.sizes[q][h] : 0;
            if (rows == 0 || cols == 0 || !oc.diff[q].count(h)) {
                snf[h] = SnfResult{};
                continue;
            }
            std::vector<std::vector<bigint>> m(rows, std::vector<bigint>(cols, 0));
            for (auto& e : oc.diff[q][h]) m[e.row][e.col] += e.val;
            snf[h] = smith_normal_form(m);
        }
        for (int h = oc.hrange.first; h <= oc.hrange.second; ++h) {
            int dim = oc.sizes[q].count(h) ? oc.sizes[q][h] : 0;
            if (!dim) continue;
            HomologyGroup g;
            g.free_rank = dim - snf[h].rank - snf[h - 1].rank;
            for (auto& dv : snf[h - 1].divisors)
                if (dv > 1) {
                    bigint n2 = dv;
                    for (bigint p = 2; p * p <= n2; ++p)
                        if (n2 % p == 0) {
                            bigint pk = 1;
                            while (n2 % p == 0) {
                                pk *= p;
                                n2 /= p;
                            }
                            g.torsion.push_back(pk);
                        }
                    if (n2 > 1) g.torsion.push_back(n2);
                }
            std::sort(g.torsion.begin(), g.torsion.end());
            if (!g.trivial()) table.groups[{q, h}] = g;
        }
    }
    return table;
}

Z2Table classical_oracle_Z2(const Diagram& d) {
    OracleComplex oc = build(d);
    Z2Table table;
    for (int q : oc.qs) {
        std::map<int, int> rk;
        for (int h = oc.hrange.first; h <= oc.hrange.second; ++h) {
            int rows = oc.sizes[q].count(h + 1) ? oc.sizes[q][h + 1] : 0;
            int cols = oc.sizes[q].count(h) ? oc.sizes[q][h] : 0;
            rk[h] = 0;
            if (rows && cols && oc.diff[q].count(h)) {
                BitMatrix m(rows, cols);
                for (auto& e : oc.diff[q][h])
                    if (e.val & 1) m.flip(e.row, e.col);
                rk[h] = m.rank();
            }
        }
        for (int h = oc.hrange.first; h <= oc.hrange.second; ++h) {
            int dim = oc.sizes[q].count(h) ? oc.sizes[q][h] : 0;
            if (!dim) continue;
            int d2 = dim - rk[h] - (rk.count(h - 1) ? rk[h - 1] : 0);
            if (d2) table.dims[{q, h}] = d2;
        }
    }
    return table;
}

}  // namespace vkh
