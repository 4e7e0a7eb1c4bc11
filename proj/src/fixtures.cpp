#include "vkh/fixtures.hpp"

#include <map>

namespace vkh {

Diagram braid_closure(const std::string& name, int strands,
                      const std::vector<BraidLetter>& word) {
    std::vector<Crossing> crossings;
    std::vector<Edge> edges;
    std::vector<int> order;
    std::map<int, int> dangling, top_need;
    int next_dart = 0;
    for (size_t k = 0; k < word.size(); ++k) {
        const auto& [pos, kind] = word[k];
        if (pos < 1 || pos >= strands) throw ValidationError("bad braid position");
        Crossing c;
        c.id = (int)k;
        int base = next_dart;
        next_dart += 4;
        int in_l, in_r, out_l, out_r;
        if (kind > 0) {
            // positive: over-in is the upper-right end; stored order is
            // [NE, SE, SW, NW] around the vertex
            c.kind = CrossingKind::Classical;
            c.darts = {base + 0, base + 1, base + 2, base + 3};
            in_r = base + 0;
            out_r = base + 1;
            out_l = base + 2;
            in_l = base + 3;
        } else {
            // negative and virtual share the [NW, NE, SE, SW] layout
            c.kind = kind < 0 ? CrossingKind::Classical : CrossingKind::Virtual;
            c.darts = {base + 0, base + 1, base + 2, base + 3};
            in_l = base + 0;
            in_r = base + 1;
            out_r = base + 2;
            out_l = base + 3;
        }
        crossings.push_back(c);
        if (kind != 0) order.push_back((int)k);
        for (auto [p, din, dout] : {std::tuple{pos, in_l, out_l},
                                    std::tuple{pos + 1, in_r, out_r}}) {
            if (dangling.count(p))
                edges.push_back({dangling[p], din});
            else
                top_need[p] = din;
            dangling[p] = dout;
        }
    }
    int free_loops = 0;
    for (int p = 1; p <= strands; ++p) {
        if (dangling.count(p))
            edges.push_back({dangling[p], top_need[p]});
        else
            ++free_loops;
    }
    int outer = crossings.empty() ? -1 : crossings[0].darts[0];
    // Prefer a dart on the left flank of a position-1 crossing.
    for (size_t k = 0; k < word.size(); ++k)
        if (word[k].pos == 1) {
            outer = word[k].kind > 0 ? crossings[k].darts[3] : crossings[k].darts[0];
            break;
        }
    return Diagram(name, free_loops, std::move(crossings), std::move(edges), outer,
                   std::move(order));
}

Diagram with_virtual_ring(const Diagram& k, int edge_index) {
    if (edge_index < 0 || edge_index >= (int)k.edges.size())
        throw ValidationError("with_virtual_ring: bad edge index");
    int max_dart = -1, max_id = -1;
    for (auto& c : k.crossings) {
        max_id = std::max(max_id, c.id);
        for (int s = 0; s < 4; ++s) max_dart = std::max(max_dart, c.darts[s]);
    }
    int b = max_dart + 1;
    std::vector<Crossing> crossings = k.crossings;
    std::vector<Edge> edges = k.edges;
    std::vector<int> order = k.crossing_order;
    // C1: classical, ring passes over the K strand.
    Crossing c1;
    c1.id = max_id + 1;
    c1.kind = CrossingKind::Classical;
    c1.darts = {b + 0, b + 1, b + 2, b + 3};  // [ring-in N, K-out E, ring-out S, K-in W]
    // C2: virtual.
    Crossing c2;
    c2.id = max_id + 2;
    c2.kind = CrossingKind::Virtual;
    c2.darts = {b + 4, b + 5, b + 6, b + 7};  // [ring-out N, K-out E, ring-in S, K-in W]
    crossings.push_back(c1);
    crossings.push_back(c2);
    Edge old = edges[edge_index];
    edges[edge_index] = {old.tail, b + 3};         // t -> C1.K-in
    edges.push_back({b + 1, b + 7});               // C1.K-out -> C2.K-in
    edges.push_back({b + 5, old.head});            // C2.K-out -> h
    edges.push_back({b + 2, b + 6});               // C1.ring-out -> C2.ring-in (lower arc)
    edges.push_back({b + 4, b + 0});               // C2.ring-out -> C1.ring-in (upper arc)
    order.push_back(c1.id);
    return Diagram(k.name + "+ring", k.free_loops, std::move(crossings),
                   std::move(edges), k.outer_face_dart < 0 ? old.tail : k.outer_face_dart,
                   std::move(order));
}

Diagram fx_unknot() { return Diagram("unknot", 1, {}, {}, -1, {}); }

Diagram fx_u1_plus() {
    Crossing c;
    c.id = 0;
    c.kind = CrossingKind::Classical;
    c.darts = {0, 1, 2, 3};
    return Diagram("u1_plus", 0, {c}, {{2, 3}, {1, 0}}, 1, {0});
}

Diagram fx_u1_minus() {
    Crossing c;
    c.id = 0;
    c.kind = CrossingKind::Classical;
    c.darts = {0, 1, 2, 3};
    return Diagram("u1_minus", 0, {c}, {{2, 1}, {3, 0}}, 3, {0});
}

Diagram fx_hopf_plus() {
    return braid_closure("hopf_plus", 2, {{1, 1}, {1, 1}});
}
Diagram fx_hopf_minus() {
    return braid_closure("hopf_minus", 2, {{1, -1}, {1, -1}});
}
Diagram fx_trefoil_right() {
    return braid_closure("trefoil_right", 2, {{1, 1}, {1, 1}, {1, 1}});
}
Diagram fx_trefoil_left() {
    return braid_closure("trefoil_left", 2, {{1, -1}, {1, -1}, {1, -1}});
}
Diagram fx_figure8() {
    return braid_closure("figure8", 3, {{1, 1}, {2, -1}, {1, 1}, {2, -1}});
}
Diagram fx_virtual_trefoil() {
    return braid_closure("virtual_trefoil", 2, {{1, 1}, {1, 1}, {1, 0}});
}
Diagram fx_kishino_style() {
    return braid_closure("kishino", 2,
                         {{1, 1}, {1, 0}, {1, 1}, {1, -1}, {1, 0}, {1, -1}});
}
Diagram fx_ring_unknot() {
    // A plain circle through both ring crossings; no kink needed.
    Crossing c1;
    c1.id = 0;
    c1.kind = CrossingKind::Classical;
    c1.darts = {0, 1, 2, 3};  // [ring-in N, K-out E, ring-out S, K-in W]
    Crossing c2;
    c2.id = 1;
    c2.kind = CrossingKind::Virtual;
    c2.darts = {4, 5, 6, 7};  // [ring-out N, K-out E, ring-in S, K-in W]
    return Diagram("ring_unknot", 0, {c1, c2},
                   {{1, 7}, {5, 3}, {2, 6}, {4, 0}}, 5, {0});
}
Diagram fx_ring_trefoil() {
    Diagram t = fx_trefoil_right();
    Diagram d = with_virtual_ring(t, 0);
    return Diagram("ring_trefoil", d.free_loops, d.crossings, d.edges,
                   d.outer_face_dart, d.crossing_order);
}
Diagram fx_torus_3_4() {
    return braid_closure("torus_3_4", 3,
                         {{1, 1}, {2, 1}, {1, 1}, {2, 1}, {1, 1}, {2, 1}, {1, 1}, {2, 1}});
}

std::vector<Diagram> fixture_corpus() {
    return {fx_unknot(),        fx_u1_plus(),  fx_u1_minus(),      fx_hopf_plus(),
            fx_hopf_minus(),    fx_trefoil_right(), fx_trefoil_left(), fx_figure8(),
            fx_virtual_trefoil(), fx_kishino_style(), fx_ring_unknot(), fx_ring_trefoil()};
}

std::vector<Diagram> classical_fixtures() {
    return {fx_unknot(),     fx_u1_plus(),       fx_u1_minus(),     fx_hopf_plus(),
            fx_hopf_minus(), fx_trefoil_right(), fx_trefoil_left(), fx_figure8()};
}

}  // namespace vkh
