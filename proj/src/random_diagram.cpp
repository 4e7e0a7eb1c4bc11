#include "vkh/random_diagram.hpp"

#include <algorithm>

namespace vkh {

namespace {

// Cross two distinct edges that share a face; the new crossing is classical
// (random over strand) or virtual. Planarity is preserved since the finger
// stays inside the shared face.
Diagram pierce(const Diagram& d, int ea, int eb, int kind, bool over_a,
               std::mt19937_64& rng) {
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
    if (da < 0) throw ValidationError("pierce: edges do not share a face");
    (void)rng;
    Edge A = d.edges[ea], B = d.edges[eb];
    bool dirA = d.dart_id(da) == A.tail;
    bool dirB = d.dart_id(db) == B.tail;
    int base = -1, id = -1;
    for (auto& c : d.crossings) {
        id = std::max(id, c.id);
        for (int s = 0; s < 4; ++s) base = std::max(base, c.darts[s]);
    }
    ++base;
    ++id;
    int N = base, E = base + 1, S = base + 2, W = base + 3;
    std::vector<Edge> edges = d.edges;
    std::vector<Crossing> crossings = d.crossings;
    std::vector<int> order = d.crossing_order;
    // strand a crosses vertically (S<->N), strand b horizontally (E<->W)
    int a_in = dirA ? S : N, a_out = dirA ? N : S;
    int b_in = dirB ? E : W, b_out = dirB ? W : E;
    edges.push_back({A.tail, a_in});
    edges.push_back({a_out, A.head});
    edges.push_back({B.tail, b_in});
    edges.push_back({b_out, B.head});
    for (int idx : {std::max(ea, eb), std::min(ea, eb)})
        edges.erase(edges.begin() + idx);
    Crossing c;
    c.id = id;
    c.kind = kind == 0 ? CrossingKind::Virtual : CrossingKind::Classical;
    std::array<int, 4> cw{N, E, S, W};
    int over_in = over_a ? a_in : b_in;
    int r = 0;
    if (c.kind == CrossingKind::Classical) {
        for (int i = 0; i < 4; ++i)
            if (cw[i] == over_in) r = i;
    }
    for (int i = 0; i < 4; ++i) c.darts[i] = cw[(r + i) & 3];
    crossings.push_back(c);
    if (c.kind == CrossingKind::Classical) order.push_back(id);
    return Diagram(d.name, d.free_loops, std::move(crossings), std::move(edges),
                   d.outer_face_dart >= 0 ? d.outer_face_dart : c.darts[0],
                   std::move(order));
}

// Attach a crossing-free component as a small ring crossing an existing
// edge twice (a closed curve must cross another one an even number of
// times on the sphere), with selectable kinds and over strands.
Diagram hook_loop(const Diagram& d, int ea, int kind1, int kind2, bool over1,
                  bool over2) {
    if (d.free_loops <= 0) throw ValidationError("hook_loop: no free loop");
    Edge A = d.edges[ea];
    int base = -1, id = -1;
    for (auto& c : d.crossings) {
        id = std::max(id, c.id);
        for (int s = 0; s < 4; ++s) base = std::max(base, c.darts[s]);
    }
    ++base;
    ++id;
    // C1 roles: N ring-in, E strand-out, S ring-out, W strand-in
    // C2 roles: N ring-out, E strand-out, S ring-in, W strand-in
    int N1 = base, E1 = base + 1, S1 = base + 2, W1 = base + 3;
    int N2 = base + 4, E2 = base + 5, S2 = base + 6, W2 = base + 7;
    std::vector<Edge> edges = d.edges;
    std::vector<Crossing> crossings = d.crossings;
    std::vector<int> order = d.crossing_order;
    edges[ea] = {A.tail, W1};
    edges.push_back({E1, W2});
    edges.push_back({E2, A.head});
    edges.push_back({S1, S2});
    edges.push_back({N2, N1});
    auto make = [&](int id_, int kind, int n, int e, int s, int w, int over_in) {
        Crossing c;
        c.id = id_;
        c.kind = kind == 0 ? CrossingKind::Virtual : CrossingKind::Classical;
        std::array<int, 4> cw{n, e, s, w};
        int r = 0;
        if (c.kind == CrossingKind::Classical)
            for (int i = 0; i < 4; ++i)
                if (cw[i] == over_in) r = i;
        for (int i = 0; i < 4; ++i) c.darts[i] = cw[(r + i) & 3];
        return c;
    };
    Crossing c1 = make(id, kind1, N1, E1, S1, W1, over1 ? N1 : W1);
    Crossing c2 = make(id + 1, kind2, N2, E2, S2, W2, over2 ? S2 : W2);
    crossings.push_back(c1);
    crossings.push_back(c2);
    if (c1.kind == CrossingKind::Classical) order.push_back(c1.id);
    if (c2.kind == CrossingKind::Classical) order.push_back(c2.id);
    return Diagram(d.name, d.free_loops - 1, std::move(crossings), std::move(edges),
                   d.outer_face_dart >= 0 ? d.outer_face_dart : c1.darts[0],
                   std::move(order));
}

}  // namespace

Diagram random_diagram(const RandomParams& p, uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 0xbf58476d1ce4e5b9ull);
    auto pick = [&](int n) { return (int)(rng() % (uint64_t)std::max(n, 1)); };
    for (int attempt = 0; attempt < 64; ++attempt) {
        try {
            int want_c = p.classical, want_v = p.virtual_;
            if (want_c + want_v < 1) return Diagram("random", p.components, {}, {}, -1, {});
            Diagram d("random", p.components, {}, {}, -1, {});
            int have_c = 0, have_v = 0;
            // seed component: a kink
            {
                bool virt = want_c == 0;
                Crossing c;
                c.id = 0;
                c.kind = virt ? CrossingKind::Virtual : CrossingKind::Classical;
                c.darts = {0, 1, 2, 3};
                std::vector<Edge> edges =
                    virt ? std::vector<Edge>{{2, 1}, {3, 0}}
                         : std::vector<Edge>{{2, 3}, {1, 0}};
                d = Diagram("random", p.components - 1, {c}, edges, 1,
                            virt ? std::vector<int>{} : std::vector<int>{0});
                (virt ? have_v : have_c)++;
            }
            int guard = 0;
            while ((have_c < want_c || have_v < want_v || d.free_loops > 0) &&
                   ++guard < 400) {
                bool need_virtual;
                if (have_c >= want_c)
                    need_virtual = true;
                else if (have_v >= want_v)
                    need_virtual = false;
                else
                    need_virtual = pick(want_c + want_v - have_c - have_v) <
                                   (want_v - have_v);
                int kind = need_virtual ? 0 : 1;
                if (d.free_loops > 0) {
                    // a ring needs two crossings; draw the second kind from
                    // whatever budget remains
                    int rem_c = want_c - have_c - (kind ? 1 : 0);
                    int rem_v = want_v - have_v - (kind ? 0 : 1);
                    if (rem_c + rem_v < 1) break;  // cannot attach this loop
                    bool second_virtual =
                        rem_c == 0 ? true
                                   : (rem_v == 0 ? false : pick(rem_c + rem_v) < rem_v);
                    d = hook_loop(d, pick(d.num_edges()), kind,
                                  second_virtual ? 0 : 1, pick(2), pick(2));
                    (second_virtual ? have_v : have_c)++;
                } else {
                    int op = pick(3);
                    if (op == 0) {
                        MoveInstance mv;
                        mv.type = need_virtual ? MoveType::VR1 : MoveType::R1;
                        mv.insert = true;
                        mv.edge_a = pick(d.num_edges());
                        mv.kink_sign = pick(2) ? 1 : -1;
                        mv.over_first = pick(2);
                        d = apply_move(d, mv);
                    } else {
                        int ea = pick(d.num_edges()), eb = pick(d.num_edges());
                        if (ea == eb) continue;
                        try {
                            d = pierce(d, ea, eb, kind, pick(2), rng);
                        } catch (const ValidationError&) {
                            continue;  // not on a common face
                        }
                    }
                }
                (need_virtual ? have_v : have_c)++;
            }
            if (have_c == want_c && have_v == want_v && d.free_loops == 0) {
                // round-trip through the constructor re-validates everything
                return Diagram("random-" + std::to_string(seed), 0, d.crossings,
                               d.edges, d.outer_face_dart, d.crossing_order);
            }
        } catch (const ValidationError&) {
        }
        rng.discard(13);
    }
    throw ValidationError("random_diagram: sampling budget exhausted");
}

std::optional<MoveInstance> random_move(const Diagram& d, MoveType t,
                                        std::mt19937_64& rng) {
    auto pick = [&](int n) { return (int)(rng() % (uint64_t)std::max(n, 1)); };
    MoveInstance mv;
    mv.type = t;
    switch (t) {
        case MoveType::R1:
            if (d.num_edges() == 0) return std::nullopt;
            mv.edge_a = pick(d.num_edges());
            mv.kink_sign = pick(2) ? 1 : -1;
            mv.over_first = pick(2);
            return mv;
        case MoveType::VR1:
            if (d.num_edges() == 0) return std::nullopt;
            mv.edge_a = pick(d.num_edges());
            return mv;
        case MoveType::R2:
        case MoveType::VR2: {
            // pick a face with two distinct boundary edges
            std::vector<std::pair<int, int>> options;
            for (int f = 0; f < d.num_faces(); ++f) {
                auto& fd = d.face_darts()[f];
                for (size_t i = 0; i < fd.size(); ++i)
                    for (size_t j = i + 1; j < fd.size(); ++j)
                        if (d.edge_of(fd[i]) != d.edge_of(fd[j]))
                            options.push_back({d.edge_of(fd[i]), d.edge_of(fd[j])});
            }
            if (options.empty()) return std::nullopt;
            auto [a, b] = options[pick((int)options.size())];
            mv.edge_a = a;
            mv.edge_b = b;
            return mv;
        }
        case MoveType::R3:
        case MoveType::VR3:
        case MoveType::Mixed: {
            auto opts = find_triangle_moves(d, t);
            if (opts.empty()) return std::nullopt;
            return opts[pick((int)opts.size())];
        }
    }
    return std::nullopt;
}

}  // namespace vkh
