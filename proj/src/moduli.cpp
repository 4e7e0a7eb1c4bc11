#include "vkh/moduli.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace vkh {

std::vector<std::pair<int, int>> Index2Cell::intervals(bool use_alternate,
                                                       bool left_pair) const {
    if (flows.size() == 2) return {{0, 1}};
    if (flows.size() != 4) throw InternalError("intervals of a degenerate cell");
    bool pick_a;
    if (kind == CellKind::Ladybug)
        pick_a = left_pair ? !right_is_a : right_is_a;
    else
        pick_a = !use_alternate;
    const auto& p = pick_a ? pairing_a : pairing_b;
    return {p[0], p[1]};
}

Index2Cell classify_index2(const KhovanovComplex& c, const Generator& y,
                           const Generator& x) {
    Index2Cell cell;
    cell.y = y;
    cell.x = x;
    uint64_t diff = x.vec & ~y.vec;
    if ((y.vec & x.vec) != y.vec || __builtin_popcountll(diff) != 2)
        throw InternalError("classify_index2: gradings not two apart");
    const Diagram& d = c.diagram();
    int bits[2], nb = 0;
    for (int b = 0; b < 64; ++b)
        if ((diff >> b) & 1) bits[nb++] = b;
    for (int pick : {0, 1}) {
        uint64_t wv = y.vec | (uint64_t(1) << bits[pick]);
        const Resolution& rw = c.resolution(wv);
        for (uint32_t mw = 0; mw < (uint32_t(1) << rw.circles.size()); ++mw) {
            Generator w{wv, mw};
            int c1 = c.coefficient(y, w);
            if (!c1) continue;
            int c2 = c.coefficient(w, x);
            if (!c2) continue;
            cell.flows.push_back({w, c1, c2});
        }
    }
    size_t nf = cell.flows.size();
    if (nf != 0 && nf != 2 && nf != 4)
        throw InternalError("index-2 cell with " + std::to_string(nf) +
                            " broken flows");
    if (nf == 0) {
        cell.kind = CellKind::Empty;
        return cell;
    }
    if (nf == 2) {
        cell.kind = CellKind::Square;
        return cell;
    }

    // Four flows: a ladybug or quasi-ladybug configuration. The bottom
    // resolution has one circle carrying both surgery arcs.
    const Resolution& ry = c.resolution(y.vec);
    int site[2];
    for (int k = 0; k < 2; ++k) {
        site[k] = -1;
        for (size_t ci = 0; ci < d.crossings.size(); ++ci)
            if (d.crossings[ci].kind == CrossingKind::Classical &&
                d.order_pos(d.crossings[ci].id) == bits[k])
                site[k] = (int)ci;
    }
    auto& arcs = ry.arcs;
    auto e0 = arcs.at(bits[0]), e1 = arcs.at(bits[1]);
    int circle = e0[0].circle;
    if (e0[1].circle != circle || e1[0].circle != circle || e1[1].circle != circle)
        throw InternalError("4-flow cell whose arcs do not share one circle");
    const Circle& C = ry.circles[circle];

    // passages of the two sites along the circle, in traversal order
    struct Pas {
        int feat;
        int which;  // 0 or 1 (site index)
        bool side_right;
    };
    std::vector<Pas> ps;
    for (size_t f = 0; f < C.feats.size(); ++f) {
        const Feature& ft = C.feats[f];
        if (ft.kind != Feature::Pass || !ft.has_arc) continue;
        for (int k = 0; k < 2; ++k)
            if (ft.site == site[k]) ps.push_back({(int)f, k, ft.fwd});
    }
    if (ps.size() != 4) throw InternalError("4-flow cell without 4 arc ends");
    bool alternating = ps[0].which != ps[1].which && ps[1].which != ps[2].which &&
                       ps[2].which != ps[3].which;
    if (!alternating)
        throw InternalError("4-flow cell with non-alternating arc ends");
    bool side0 = ps[0].side_right, side1 = ps[1].side_right;
    // each arc sees the circle on one side at both its endpoints
    for (auto& p : ps)
        if (p.side_right != (p.which == ps[0].which ? side0 : side1))
            throw InternalError("mc arc with mixed endpoint sides");
    cell.kind = side0 == side1 ? CellKind::QuasiLadybug : CellKind::Ladybug;

    // Identify each flow by (site index, split circle with x+).
    // flows: indices 0,1 are over bits[0] (enumeration order), 2,3 over bits[1].
    auto flow_plus_circle = [&](const BrokenFlow& f) {
        uint64_t wv = f.w.vec;
        SurgeryInfo info = classify_surgery(ry, c.resolution(wv));
        for (int t : info.dst)
            if ((f.w.mask >> t) & 1) return std::pair{(int)(wv != (y.vec | (uint64_t(1) << bits[0]))), t};
        throw InternalError("split without an x+ circle");
    };
    // piece k runs from passage k to passage k+1; locate its darts' circle in
    // each split resolution
    const Resolution& r0 = c.resolution(y.vec | (uint64_t(1) << bits[0]));
    const Resolution& r1 = c.resolution(y.vec | (uint64_t(1) << bits[1]));
    auto piece_circle = [&](int k, const Resolution& r) {
        int n = (int)C.feats.size();
        int from = ps[k].feat, to = ps[(k + 1) % 4].feat;
        // count arrival darts strictly inside the piece: features between
        // from (exclusive) and to (inclusive) that are passages carry an
        // arrival dart each; map feature index -> dart via traversal order
        std::vector<int> pass_feats;
        for (int f2 = 0; f2 < n; ++f2)
            if (C.feats[f2].kind == Feature::Pass || C.feats[f2].kind == Feature::Virt)
                pass_feats.push_back(f2);
        // darts[i] corresponds to the i-th passage-or-virt feature
        for (size_t i = 0; i < pass_feats.size(); ++i) {
            int f2 = pass_feats[i];
            bool inside = false;
            for (int step = 1; step < n; ++step) {
                int idx = (from + step) % n;
                if (idx == to) break;
                if (idx == f2) {
                    inside = true;
                    break;
                }
            }
            if (inside) return r.circle_of[C.darts[i]];
        }
        // no feature strictly inside: use the arrival dart of the landing
        // passage (its edge lies in the piece)
        for (size_t i = 0; i < pass_feats.size(); ++i)
            if (pass_feats[i] == to) return r.circle_of[C.darts[i]];
        throw InternalError("piece without darts");
    };
    // right pieces start at a right-side passage
    std::vector<int> right_pieces;
    for (int k = 0; k < 4; ++k)
        if (ps[k].side_right) right_pieces.push_back(k);
    // bijection via the shared piece: split circle of r_first containing
    // piece p corresponds to split circle of r_second containing p
    auto pairing_from_piece = [&](int piece) {
        int ca = piece_circle(piece, r0);
        int cb = piece_circle(piece, r1);
        // flows with x+ on ca (over bits[0]) pair with x+ on cb (over bits[1]);
        // the complementary circles pair likewise
        std::array<std::pair<int, int>, 2> pairing;
        int put = 0;
        for (int fa = 0; fa < 4; ++fa) {
            auto [wa, ta] = flow_plus_circle(cell.flows[fa]);
            if (wa != 0) continue;
            for (int fb = 0; fb < 4; ++fb) {
                auto [wb, tb] = flow_plus_circle(cell.flows[fb]);
                if (wb != 1) continue;
                if ((ta == ca) == (tb == cb)) {
                    if (put < 2) pairing[put++] = {fa, fb};
                }
            }
        }
        if (put != 2) throw InternalError("ladybug pairing not found");
        return pairing;
    };
    cell.pairing_a = pairing_from_piece(0);
    cell.pairing_b = [&] {
        // the complementary admissible pairing
        std::array<std::pair<int, int>, 2> p;
        p[0] = {cell.pairing_a[0].first, cell.pairing_a[1].second};
        p[1] = {cell.pairing_a[1].first, cell.pairing_a[0].second};
        return p;
    }();
    if (cell.kind == CellKind::Ladybug) {
        auto rp = pairing_from_piece(right_pieces.empty() ? 1 : right_pieces[0]);
        cell.right_is_a = rp == cell.pairing_a;
        // traversal independence: the other right piece gives the same pairing
        if (!right_pieces.empty() && right_pieces.size() == 2) {
            auto rp2 = pairing_from_piece(right_pieces[1]);
            if (!(rp2 == rp)) throw InternalError("right pair not traversal-invariant");
        }
    }
    return cell;
}

std::vector<std::pair<int, int>> right_pair(const Index2Cell& cell, bool left) {
    if (cell.kind != CellKind::Ladybug)
        throw ValidationError("right_pair: cell is not a ladybug");
    return cell.intervals(false, left);
}

std::vector<Index2Cell> all_index2_cells(const KhovanovComplex& c) {
    std::vector<Index2Cell> out;
    const Diagram& d = c.diagram();
    int n = c.n();
    for (uint64_t v = 0; v < (uint64_t(1) << n); ++v) {
        const Resolution& rv = c.resolution(v);
        for (uint32_t mv = 0; mv < (uint32_t(1) << rv.circles.size()); ++mv) {
            Generator y{v, mv};
            // vectors two above
            std::vector<int> zeros;
            for (int b = 0; b < n; ++b)
                if (!((v >> b) & 1)) zeros.push_back(b);
            for (size_t i = 0; i < zeros.size(); ++i)
                for (size_t j = i + 1; j < zeros.size(); ++j) {
                    uint64_t xv = v | (uint64_t(1) << zeros[i]) |
                                  (uint64_t(1) << zeros[j]);
                    const Resolution& rx = c.resolution(xv);
                    for (uint32_t mx = 0; mx < (uint32_t(1) << rx.circles.size());
                         ++mx) {
                        Generator x{xv, mx};
                        GeneratorGradings gy = gradings(d, rv, mv);
                        GeneratorGradings gx = gradings(d, rx, mx);
                        if (gy.gr_q != gx.gr_q) continue;
                        Index2Cell cell = classify_index2(c, y, x);
                        if (cell.kind != CellKind::Empty) out.push_back(std::move(cell));
                    }
                }
        }
    }
    return out;
}

MatchingSpace enumerate_matchings(const KhovanovComplex& c, uint64_t cap) {
    MatchingSpace sp;
    for (auto& cell : all_index2_cells(c))
        if (cell.kind == CellKind::QuasiLadybug) sp.quasi.push_back(cell);
    if (sp.quasi.size() >= 63 || sp.count() > cap)
        throw ValidationError("matching choice cap exceeded: 2^" +
                              std::to_string(sp.quasi.size()) + " choices");
    return sp;
}

bool MatchingSpace::alternate(uint64_t choice, const Generator& y,
                              const Generator& x) const {
    for (size_t i = 0; i < quasi.size(); ++i)
        if (quasi[i].y.vec == y.vec && quasi[i].y.mask == y.mask &&
            quasi[i].x.vec == x.vec && quasi[i].x.mask == x.mask)
            return (choice >> i) & 1;
    return false;
}

namespace {

std::vector<std::pair<int, int>> cell_intervals(const KhovanovComplex& c,
                                                const Generator& y,
                                                const Generator& x,
                                                const MatchingChoice& mc,
                                                std::vector<BrokenFlow>& flows) {
    Index2Cell cell = classify_index2(c, y, x);
    flows = cell.flows;
    if (cell.kind == CellKind::Empty) return {};
    return cell.intervals(mc.alternate(y, x), mc.left_pair);
}

}  // namespace

Index3Result index3_boundary_check(const KhovanovComplex& c, const Generator& y,
                                   const Generator& x, const MatchingChoice& mc) {
    uint64_t diff = x.vec & ~y.vec;
    if ((y.vec & x.vec) != y.vec || __builtin_popcountll(diff) != 3)
        throw InternalError("index3: gradings not three apart");
    // vertices: chains y -> w1 -> w2 -> x with all coefficients nonzero
    struct Vertex {
        Generator w1, w2;
    };
    std::vector<Vertex> verts;
    std::map<std::pair<std::pair<uint64_t, uint32_t>, std::pair<uint64_t, uint32_t>>,
             int>
        vid;
    int n = c.n();
    for (int b1 = 0; b1 < n; ++b1) {
        if (!((diff >> b1) & 1)) continue;
        uint64_t v1 = y.vec | (uint64_t(1) << b1);
        const Resolution& r1 = c.resolution(v1);
        for (uint32_t m1 = 0; m1 < (uint32_t(1) << r1.circles.size()); ++m1) {
            Generator w1{v1, m1};
            if (!c.coefficient(y, w1)) continue;
            for (int b2 = 0; b2 < n; ++b2) {
                if (!((diff >> b2) & 1) || b2 == b1) continue;
                uint64_t v2 = v1 | (uint64_t(1) << b2);
                const Resolution& r2 = c.resolution(v2);
                for (uint32_t m2 = 0; m2 < (uint32_t(1) << r2.circles.size());
                     ++m2) {
                    Generator w2{v2, m2};
                    if (!c.coefficient(w1, w2)) continue;
                    if (!c.coefficient(w2, x)) continue;
                    vid[{{v1, m1}, {v2, m2}}] = (int)verts.size();
                    verts.push_back({w1, w2});
                }
            }
        }
    }
    // edges of type A: intervals of cells (w1, x); type B: of cells (y, w2)
    std::vector<std::vector<int>> adj(verts.size());
    auto add_edges = [&](bool type_a) {
        std::set<std::pair<uint64_t, uint32_t>> seen;
        for (auto& vtx : verts) {
            Generator mid = type_a ? vtx.w1 : vtx.w2;
            if (!seen.insert({mid.vec, mid.mask}).second) continue;
            std::vector<BrokenFlow> flows;
            auto ivals = type_a ? cell_intervals(c, mid, x, mc, flows)
                                : cell_intervals(c, y, mid, mc, flows);
            for (auto& [f1, f2] : ivals) {
                auto key = [&](const BrokenFlow& f) {
                    return type_a
                               ? vid.at({{mid.vec, mid.mask}, {f.w.vec, f.w.mask}})
                               : vid.at({{f.w.vec, f.w.mask}, {mid.vec, mid.mask}});
                };
                int a = key(flows[f1]), b = key(flows[f2]);
                adj[a].push_back(b);
                adj[b].push_back(a);
            }
        }
    };
    add_edges(true);
    add_edges(false);
    for (size_t vv = 0; vv < verts.size(); ++vv)
        if (adj[vv].size() != 2)
            throw InternalError("index3: vertex of degree " +
                                std::to_string(adj[vv].size()));
    Index3Result res;
    res.vertices = (int)verts.size();
    std::vector<char> used(verts.size(), 0);
    for (size_t s = 0; s < verts.size(); ++s) {
        if (used[s]) continue;
        std::vector<int> circle;
        int prev = -1, cur = (int)s;
        while (!used[cur]) {
            used[cur] = 1;
            circle.push_back(cur);
            int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = nxt;
        }
        res.circles.push_back(std::move(circle));
    }
    return res;
}

bool surface_orientable(int faces,
                        const std::vector<std::tuple<int, int, int>>& edges) {
    std::vector<int> orient(faces, 0);
    std::vector<std::vector<std::pair<int, int>>> adj(faces);
    for (auto& [a, b, s] : edges) {
        adj[a].push_back({b, s});
        adj[b].push_back({a, s});
    }
    for (int s0 = 0; s0 < faces; ++s0) {
        if (orient[s0]) continue;
        orient[s0] = 1;
        std::vector<int> stack{s0};
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (auto& [g, sign] : adj[f]) {
                int want = sign < 0 ? orient[f] : -orient[f];
                if (orient[g] == 0) {
                    orient[g] = want;
                    stack.push_back(g);
                } else if (orient[g] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

int index4_orientability_check(const KhovanovComplex& c, const Generator& y,
                               const Generator& x, const MatchingChoice& mc) {
    uint64_t diff = x.vec & ~y.vec;
    if ((y.vec & x.vec) != y.vec || __builtin_popcountll(diff) != 4)
        throw InternalError("index4: gradings not four apart");
    int n = c.n();
    // faces: (g at level +1 above y, disc of the index-3 structure (g, x))
    struct Face {
        Generator g;
        int disc;
    };
    std::vector<Face> faces;
    // per g: for each interval of each (w,x) cell, which disc contains it;
    // identify intervals by (w, flow pair)
    using IKey = std::tuple<uint64_t, uint32_t, uint64_t, uint32_t, uint64_t,
                            uint32_t>;  // w, flow1.w, flow2.w
    std::map<IKey, std::vector<std::pair<int, int>>> incident;  // -> (face, sign)
    for (int b = 0; b < n; ++b) {
        if (!((diff >> b) & 1)) continue;
        uint64_t gv = y.vec | (uint64_t(1) << b);
        const Resolution& rg = c.resolution(gv);
        for (uint32_t gm = 0; gm < (uint32_t(1) << rg.circles.size()); ++gm) {
            Generator g{gv, gm};
            int cyg = c.coefficient(y, g);
            if (!cyg) continue;
            Index3Result i3 = index3_boundary_check(c, g, x, mc);
            if (i3.vertices == 0) continue;
            // rebuild the vertex list exactly as index3 does, to map circle
            // vertices back to (w1, w2) chains
            std::vector<std::pair<Generator, Generator>> verts;
            uint64_t d3 = x.vec & ~gv;
            for (int b1 = 0; b1 < n; ++b1) {
                if (!((d3 >> b1) & 1)) continue;
                uint64_t v1 = gv | (uint64_t(1) << b1);
                const Resolution& r1 = c.resolution(v1);
                for (uint32_t m1 = 0; m1 < (uint32_t(1) << r1.circles.size());
                     ++m1) {
                    Generator w1{v1, m1};
                    if (!c.coefficient(g, w1)) continue;
                    for (int b2 = 0; b2 < n; ++b2) {
                        if (!((d3 >> b2) & 1) || b2 == b1) continue;
                        uint64_t v2 = v1 | (uint64_t(1) << b2);
                        const Resolution& r2 = c.resolution(v2);
                        for (uint32_t m2 = 0;
                             m2 < (uint32_t(1) << r2.circles.size()); ++m2) {
                            Generator w2{v2, m2};
                            if (!c.coefficient(w1, w2)) continue;
                            if (!c.coefficient(w2, x)) continue;
                            verts.push_back({w1, w2});
                        }
                    }
                }
            }
            for (size_t disc = 0; disc < i3.circles.size(); ++disc) {
                int fid = (int)faces.size();
                faces.push_back({g, (int)disc});
                // A-edges on this disc: consecutive vertices sharing w1
                auto& circ = i3.circles[disc];
                int len = (int)circ.size();
                for (int k = 0; k < len; ++k) {
                    auto& vA = verts[circ[k]];
                    auto& vB = verts[circ[(k + 1) % len]];
                    if (vA.first.vec == vB.first.vec &&
                        vA.first.mask == vB.first.mask) {
                        // interval of cell (w1, x) joining w2-flows
                        Generator w1 = vA.first;
                        IKey key{w1.vec, w1.mask, vA.second.vec, vA.second.mask,
                                 vB.second.vec, vB.second.mask};
                        IKey key2{w1.vec, w1.mask, vB.second.vec, vB.second.mask,
                                  vA.second.vec, vA.second.mask};
                        if (incident.count(key2)) key = key2;
                        int sgn = cyg * c.coefficient(g, w1);
                        incident[key].push_back({fid, sgn});
                    }
                }
            }
        }
    }
    // each interval (1-cell) must bound exactly two discs; gluing is
    // orientation-compatible iff the two side products are opposite
    std::vector<std::tuple<int, int, int>> edges;
    for (auto& [key, inc] : incident) {
        if (inc.size() != 2)
            throw InternalError("index4: 1-cell bounding " +
                                std::to_string(inc.size()) + " discs");
        int rel = inc[0].second * inc[1].second;  // -1 = compatible
        edges.push_back({inc[0].first, inc[1].first, rel});
    }
    if (!surface_orientable((int)faces.size(), edges))
        throw InternalError("index4: non-orientable component");
    // count components
    std::vector<int> comp(faces.size(), -1);
    int ncomp = 0;
    std::vector<std::vector<int>> fadj(faces.size());
    for (auto& [a, b, s] : edges) {
        fadj[a].push_back(b);
        fadj[b].push_back(a);
    }
    for (size_t f = 0; f < faces.size(); ++f) {
        if (comp[f] >= 0) continue;
        std::vector<int> st{(int)f};
        comp[f] = ncomp;
        while (!st.empty()) {
            int cur = st.back();
            st.pop_back();
            for (int g2 : fadj[cur])
                if (comp[g2] < 0) {
                    comp[g2] = ncomp;
                    st.push_back(g2);
                }
        }
        ++ncomp;
    }
    return ncomp;
}

}  // namespace vkh
