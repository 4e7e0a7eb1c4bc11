#include "vkh/moves.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace vkh {

namespace {

struct Builder {
    std::string name;
    int free_loops;
    std::vector<Crossing> crossings;
    std::vector<Edge> edges;
    int outer_face_dart;
    std::vector<int> order;

    explicit Builder(const Diagram& d)
        : name(d.name),
          free_loops(d.free_loops),
          crossings(d.crossings),
          edges(d.edges),
          outer_face_dart(d.outer_face_dart),
          order(d.crossing_order) {}

    int fresh_dart() const {
        int m = -1;
        for (auto& c : crossings)
            for (int s = 0; s < 4; ++s) m = std::max(m, c.darts[s]);
        return m + 1;
    }
    int fresh_id() const {
        int m = -1;
        for (auto& c : crossings) m = std::max(m, c.id);
        return m + 1;
    }
    Diagram build() const {
        int outer = outer_face_dart;
        bool ok = false;
        for (auto& c : crossings)
            for (int s = 0; s < 4; ++s) ok |= c.darts[s] == outer;
        if (!ok) outer = crossings.empty() ? -1 : crossings[0].darts[0];
        return Diagram(name, free_loops, crossings, edges, outer, order);
    }
};

// Remove crossings, reconnecting strands via `through` (in-dart -> out-dart).
void splice_out(Builder& b, const std::set<int>& removed_ids,
                const std::map<int, int>& through) {
    std::map<int, int> head_of_tail;  // tail dart -> head dart
    std::set<int> removed_darts;
    std::map<int, const Crossing*> by_id;
    for (auto& c : b.crossings) by_id[c.id] = &c;
    for (int id : removed_ids)
        for (int s = 0; s < 4; ++s) removed_darts.insert(by_id.at(id)->darts[s]);
    for (auto& e : b.edges) head_of_tail[e.tail] = e.head;

    std::vector<Edge> new_edges;
    std::set<int> visited_ins;
    for (auto& e : b.edges) {
        if (removed_darts.count(e.tail)) continue;  // reached via walking
        int h = e.head;
        while (removed_darts.count(h)) {
            visited_ins.insert(h);
            int out = through.at(h);
            h = head_of_tail.at(out);
        }
        new_edges.push_back({e.tail, h});
    }
    // Strands living entirely on removed crossings become free loops.
    std::set<int> seen;
    for (auto& [in, out] : through) {
        if (seen.count(in) || visited_ins.count(in)) continue;
        int h = in;
        while (!seen.count(h)) {
            seen.insert(h);
            h = head_of_tail.at(through.at(h));
            if (!removed_darts.count(h)) break;
        }
        if (h == in) b.free_loops++;
    }
    b.edges = std::move(new_edges);
    b.crossings.erase(std::remove_if(b.crossings.begin(), b.crossings.end(),
                                     [&](const Crossing& c) {
                                         return removed_ids.count(c.id) > 0;
                                     }),
                      b.crossings.end());
    b.order.erase(std::remove_if(b.order.begin(), b.order.end(),
                                 [&](int id) { return removed_ids.count(id) > 0; }),
                  b.order.end());
}

Diagram r1_insert(const Diagram& d, int edge_idx, int sign, bool over_first,
                  bool virt, MoveInstance* inv) {
    Builder b(d);
    if (edge_idx < 0 || edge_idx >= (int)b.edges.size())
        throw ValidationError("R1 insert: bad edge");
    Edge old = b.edges[edge_idx];
    int base = b.fresh_dart(), id = b.fresh_id();
    Crossing c;
    c.id = id;
    c.kind = virt ? CrossingKind::Virtual : CrossingKind::Classical;
    c.darts = {base, base + 1, base + 2, base + 3};
    b.crossings.push_back(c);
    if (!virt) b.order.push_back(id);
    b.edges.erase(b.edges.begin() + edge_idx);
    if (virt) {
        // strand passes slots 0->2, loops 2->1, passes 1->3
        b.edges.push_back({old.tail, base + 0});
        b.edges.push_back({base + 2, base + 1});
        b.edges.push_back({base + 3, old.head});
    } else if (sign > 0 && over_first) {
        b.edges.push_back({old.tail, base + 0});
        b.edges.push_back({base + 2, base + 3});
        b.edges.push_back({base + 1, old.head});
    } else if (sign > 0 && !over_first) {
        b.edges.push_back({old.tail, base + 3});
        b.edges.push_back({base + 1, base + 0});
        b.edges.push_back({base + 2, old.head});
    } else if (sign < 0 && over_first) {
        b.edges.push_back({old.tail, base + 0});
        b.edges.push_back({base + 2, base + 1});
        b.edges.push_back({base + 3, old.head});
    } else {
        b.edges.push_back({old.tail, base + 1});
        b.edges.push_back({base + 3, base + 0});
        b.edges.push_back({base + 2, old.head});
    }
    if (inv) {
        inv->type = virt ? MoveType::VR1 : MoveType::R1;
        inv->insert = false;
        inv->crossing_a = id;
    }
    return b.build();
}

Diagram r1_remove(const Diagram& d, int crossing_id, MoveInstance* inv) {
    Builder b(d);
    const Crossing* cr = nullptr;
    for (auto& c : b.crossings)
        if (c.id == crossing_id) cr = &c;
    if (!cr) throw ValidationError("R1 remove: no such crossing");
    int loop_k = -1;
    for (int k = 0; k < 4; ++k) {
        int a = cr->darts[k], bb = cr->darts[(k + 1) & 3];
        for (auto& e : d.edges)
            if ((e.tail == a && e.head == bb) || (e.tail == bb && e.head == a))
                loop_k = k;
    }
    if (loop_k < 0) throw ValidationError("R1 remove: crossing is not a kink");
    int p = cr->darts[(loop_k + 2) & 3], q = cr->darts[(loop_k + 3) & 3];
    int in_dart = d.is_head(d.dart_index(p)) ? p : q;
    int out_dart = in_dart == p ? q : p;
    std::map<int, int> through{{in_dart, out_dart}};
    splice_out(b, {crossing_id}, through);
    if (inv) {
        inv->type = cr->kind == CrossingKind::Virtual ? MoveType::VR1 : MoveType::R1;
        inv->insert = true;
    }
    return b.build();
}

Diagram r2_insert(const Diagram& d, int ea, int eb, bool virt, MoveInstance* inv) {
    if (ea == eb) throw ValidationError("R2 insert: edges must differ");
    if (ea < 0 || eb < 0 || ea >= (int)d.edges.size() || eb >= (int)d.edges.size())
        throw ValidationError("R2 insert: bad edge");
    int da = -1, db = -1;
    for (int f = 0; f < d.num_faces() && da < 0; ++f) {
        int ca = -1, cb = -1;
        for (int dd : d.face_darts()[f]) {
            if (d.edge_of(dd) == ea) ca = dd;
            if (d.edge_of(dd) == eb) cb = dd;
        }
        if (ca >= 0 && cb >= 0) {
            da = ca;
            db = cb;
        }
    }
    if (da < 0) throw ValidationError("R2 insert: edges do not share a face");
    Builder b(d);
    Edge A = b.edges[ea], B = b.edges[eb];
    bool dirA = d.dart_id(da) == A.tail;  // strand a flows along the face walk
    bool dirB = d.dart_id(db) == B.tail;
    int base = b.fresh_dart(), id = b.fresh_id();
    int PN = base, PE = base + 1, PS = base + 2, PW = base + 3;
    int QN = base + 4, QE = base + 5, QS = base + 6, QW = base + 7;
    // the shared face lies to the RIGHT of the boundary walk, so strand a
    // runs along the far side and its finger dips through N first
    if (dirA) {
        b.edges.push_back({A.tail, PN});
        b.edges.push_back({PS, QS});
        b.edges.push_back({QN, A.head});
    } else {
        b.edges.push_back({A.tail, QN});
        b.edges.push_back({QS, PS});
        b.edges.push_back({PN, A.head});
    }
    if (dirB) {
        b.edges.push_back({B.tail, QE});
        b.edges.push_back({QW, PE});
        b.edges.push_back({PW, B.head});
    } else {
        b.edges.push_back({B.tail, PW});
        b.edges.push_back({PE, QW});
        b.edges.push_back({QE, B.head});
    }
    for (int idx : {std::max(ea, eb), std::min(ea, eb)})
        b.edges.erase(b.edges.begin() + idx);
    auto make = [&](int id_, int n, int e, int s, int w, int over_in) {
        Crossing c;
        c.id = id_;
        c.kind = virt ? CrossingKind::Virtual : CrossingKind::Classical;
        std::array<int, 4> cw{n, e, s, w};
        int r = 0;
        for (int i = 0; i < 4; ++i)
            if (cw[i] == over_in) r = i;
        for (int i = 0; i < 4; ++i) c.darts[i] = cw[(r + i) & 3];
        return c;
    };
    int a_in_P = dirA ? PN : PS, a_in_Q = dirA ? QS : QN;
    Crossing P = make(id, PN, PE, PS, PW, virt ? PN : a_in_P);
    Crossing Q = make(id + 1, QN, QE, QS, QW, virt ? QN : a_in_Q);
    b.crossings.push_back(P);
    b.crossings.push_back(Q);
    if (!virt) {
        b.order.push_back(P.id);
        b.order.push_back(Q.id);
    }
    if (inv) {
        inv->type = virt ? MoveType::VR2 : MoveType::R2;
        inv->insert = false;
        inv->crossing_a = P.id;
        inv->crossing_b = Q.id;
    }
    return b.build();
}

Diagram r2_remove(const Diagram& d, int ida, int idb, MoveInstance* inv) {
    const Crossing *P = nullptr, *Q = nullptr;
    for (auto& c : d.crossings) {
        if (c.id == ida) P = &c;
        if (c.id == idb) Q = &c;
    }
    if (!P || !Q || P == Q) throw ValidationError("R2 remove: bad crossings");
    if (P->kind != Q->kind) throw ValidationError("R2 remove: kind mismatch");
    bool found = false;
    for (int f = 0; f < d.num_faces() && !found; ++f) {
        auto& fd = d.face_darts()[f];
        if (fd.size() != 2) continue;
        int c1 = d.crossing_of(fd[0]), c2 = d.crossing_of(fd[1]);
        if ((d.crossings[c1].id == ida && d.crossings[c2].id == idb) ||
            (d.crossings[c1].id == idb && d.crossings[c2].id == ida))
            found = true;
    }
    if (!found) throw ValidationError("R2 remove: no bigon between crossings");
    if (P->kind == CrossingKind::Classical) {
        auto slot_at = [&](const Crossing* c, int dart) {
            for (int s = 0; s < 4; ++s)
                if (c->darts[s] == dart) return s;
            return -1;
        };
        auto over = [](int s) { return s == 0 || s == 2; };
        for (auto& e : d.edges) {
            int st = slot_at(P, e.tail), sh = slot_at(Q, e.head);
            if (st >= 0 && sh >= 0 && over(st) != over(sh))
                throw ValidationError("R2 remove: over/under pattern mismatch");
            int st2 = slot_at(Q, e.tail), sh2 = slot_at(P, e.head);
            if (st2 >= 0 && sh2 >= 0 && over(st2) != over(sh2))
                throw ValidationError("R2 remove: over/under pattern mismatch");
        }
    }
    Builder b(d);
    std::map<int, int> through;
    for (auto* c : {P, Q})
        for (int s = 0; s < 2; ++s) {
            int u = c->darts[s], v = c->darts[s + 2];
            if (d.is_head(d.dart_index(u)))
                through[u] = v;
            else
                through[v] = u;
        }
    splice_out(b, {ida, idb}, through);
    if (inv) {
        inv->type = P->kind == CrossingKind::Virtual ? MoveType::VR2 : MoveType::R2;
        inv->insert = true;
    }
    return b.build();
}

// The triangle move swaps, for each of the three strands, the order of its
// two crossings; the rotation data at the crossings is untouched.
Diagram triangle_move(const Diagram& d, int face_dart_id, MoveType t,
                      MoveInstance* inv) {
    int didx = d.dart_index(face_dart_id);
    int f = d.face_of(didx);
    auto& fd = d.face_darts()[f];
    if (fd.size() != 3) throw ValidationError("triangle move: face is not a triangle");
    std::array<int, 3> cr{d.crossing_of(fd[0]), d.crossing_of(fd[1]),
                          d.crossing_of(fd[2])};
    if (cr[0] == cr[1] || cr[1] == cr[2] || cr[0] == cr[2])
        throw ValidationError("triangle move: face revisits a crossing");
    int nclassical = 0;
    for (int c : cr)
        nclassical += d.crossings[c].kind == CrossingKind::Classical;
    if (t == MoveType::R3 && nclassical != 3)
        throw ValidationError("R3: need three classical crossings");
    if (t == MoveType::VR3 && nclassical != 0)
        throw ValidationError("vR3: need three virtual crossings");
    if (t == MoveType::Mixed && nclassical != 1)
        throw ValidationError("mixed move: need exactly one classical crossing");

    struct Side {
        int eidx;
        int c_from, c_to;  // crossings in the edge's own direction
    };
    std::vector<Side> sides;
    for (int x : fd) {
        int e = d.edge_of(x);
        int ct = d.crossing_of(d.dart_index(d.edges[e].tail));
        int ch = d.crossing_of(d.dart_index(d.edges[e].head));
        sides.push_back({e, ct, ch});
    }

    auto strand_darts = [&](int eidx, int cidx) -> std::pair<int, int> {
        // (in_dart, out_dart) of the strand through cidx that contains an
        // end of edge eidx
        const Crossing& c = d.crossings[cidx];
        int end = -1;
        for (int dart : {d.edges[eidx].tail, d.edges[eidx].head})
            for (int s = 0; s < 4; ++s)
                if (c.darts[s] == dart) end = s;
        if (end < 0) throw InternalError("triangle: edge end not on crossing");
        int a = c.darts[end], b2 = c.darts[(end + 2) & 3];
        if (d.is_head(d.dart_index(a))) return {a, b2};
        return {b2, a};
    };

    if (t == MoveType::R3) {
        // the over/under relations of the three strands must be acyclic
        int beats[3][3] = {};
        for (int ci = 0; ci < 3; ++ci) {
            int c = cr[ci];
            std::vector<int> inc;
            for (int s = 0; s < 3; ++s)
                if (sides[s].c_from == c || sides[s].c_to == c) inc.push_back(s);
            if (inc.size() != 2) throw ValidationError("triangle: bad incidence");
            auto over_strand = [&](int s) {
                auto [in, out] = strand_darts(sides[s].eidx, c);
                for (int k : {0, 2})
                    if (d.crossings[c].darts[k] == in ||
                        d.crossings[c].darts[k] == out)
                        return true;
                return false;
            };
            bool o0 = over_strand(inc[0]);
            bool o1 = over_strand(inc[1]);
            if (o0 == o1) throw InternalError("triangle: both strands over");
            if (o0)
                beats[inc[0]][inc[1]] = 1;
            else
                beats[inc[1]][inc[0]] = 1;
        }
        bool cyclic = (beats[0][1] && beats[1][2] && beats[2][0]) ||
                      (beats[1][0] && beats[2][1] && beats[0][2]);
        if (cyclic) throw ValidationError("R3: cyclic over/under pattern");
    }

    Builder b(d);
    std::map<int, int> new_head_of_tail;
    for (auto& e : b.edges) new_head_of_tail[e.tail] = e.head;
    for (auto& s : sides) {
        auto [inP, outP] = strand_darts(s.eidx, s.c_from);
        auto [inQ, outQ] = strand_darts(s.eidx, s.c_to);
        int ext_in_tail = -1, ext_out_head = -1;
        for (auto& e : d.edges) {
            if (e.head == inP) ext_in_tail = e.tail;
            if (e.tail == outQ) ext_out_head = e.head;
        }
        if (ext_in_tail < 0 || ext_out_head < 0)
            throw InternalError("triangle: external edges missing");
        if (ext_in_tail == outQ) continue;  // two-crossing strand: unchanged
        new_head_of_tail[ext_in_tail] = inQ;
        new_head_of_tail[outQ] = inP;
        new_head_of_tail[outP] = ext_out_head;
    }
    b.edges.clear();
    for (auto& [t2, h2] : new_head_of_tail) b.edges.push_back({t2, h2});
    if (inv) {
        *inv = MoveInstance{};
        inv->type = t;
    }
    return b.build();
}

}  // namespace

Diagram apply_move(const Diagram& d, const MoveInstance& mv) {
    return apply_move_tracked(d, mv).result;
}

AppliedMove apply_move_tracked(const Diagram& d, const MoveInstance& mv) {
    MoveInstance inv;
    Diagram out = [&]() -> Diagram {
        switch (mv.type) {
            case MoveType::R1:
                return mv.insert
                           ? r1_insert(d, mv.edge_a, mv.kink_sign, mv.over_first,
                                       false, &inv)
                           : r1_remove(d, mv.crossing_a, &inv);
            case MoveType::VR1:
                return mv.insert ? r1_insert(d, mv.edge_a, 0, true, true, &inv)
                                 : r1_remove(d, mv.crossing_a, &inv);
            case MoveType::R2:
                return mv.insert ? r2_insert(d, mv.edge_a, mv.edge_b, false, &inv)
                                 : r2_remove(d, mv.crossing_a, mv.crossing_b, &inv);
            case MoveType::VR2:
                return mv.insert ? r2_insert(d, mv.edge_a, mv.edge_b, true, &inv)
                                 : r2_remove(d, mv.crossing_a, mv.crossing_b, &inv);
            case MoveType::R3:
            case MoveType::VR3:
            case MoveType::Mixed:
                return triangle_move(d, mv.face_dart, mv.type, &inv);
        }
        throw ValidationError("unknown move type");
    }();
    return {std::move(out), inv};
}

std::vector<MoveInstance> find_triangle_moves(const Diagram& d, MoveType t) {
    std::vector<MoveInstance> out;
    for (int f = 0; f < d.num_faces(); ++f) {
        auto& fd = d.face_darts()[f];
        if (fd.size() != 3) continue;
        MoveInstance mv;
        mv.type = t;
        mv.face_dart = d.dart_id(fd[0]);
        try {
            apply_move(d, mv);
            out.push_back(mv);
        } catch (const ValidationError&) {
        } catch (const InternalError&) {
        }
    }
    return out;
}

}  // namespace vkh
