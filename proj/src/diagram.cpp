#include "vkh/diagram.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

namespace vkh {

Diagram::Diagram(std::string name_, int free_loops_, std::vector<Crossing> crossings_,
                 std::vector<Edge> edges_, int outer_face_dart_,
                 std::vector<int> crossing_order_)
    : name(std::move(name_)),
      free_loops(free_loops_),
      crossings(std::move(crossings_)),
      edges(std::move(edges_)),
      outer_face_dart(outer_face_dart_),
      crossing_order(std::move(crossing_order_)) {
    validate_and_index();
}

int Diagram::dart_index(int dart_id) const {
    auto it = dart_index_.find(dart_id);
    if (it == dart_index_.end())
        throw ValidationError("unknown dart id " + std::to_string(dart_id));
    return it->second;
}

int Diagram::rot_next(int didx) const {
    int c = crossing_of_[didx], s = slot_of_[didx];
    return dart_index_.at(crossings[c].darts[(s + 1) & 3]);
}

int Diagram::rot_prev(int didx) const {
    int c = crossing_of_[didx], s = slot_of_[didx];
    return dart_index_.at(crossings[c].darts[(s + 3) & 3]);
}

void Diagram::validate_and_index() {
    if (free_loops < 0) throw ValidationError("free_loops must be nonnegative");

    std::set<int> seen_ids;
    for (auto& c : crossings)
        if (!seen_ids.insert(c.id).second)
            throw ValidationError("duplicate crossing id " + std::to_string(c.id));

    // Index darts from crossing slots.
    for (size_t ci = 0; ci < crossings.size(); ++ci) {
        for (int s = 0; s < 4; ++s) {
            int d = crossings[ci].darts[s];
            if (d < 0) throw ValidationError("negative dart id at crossing " +
                                             std::to_string(crossings[ci].id));
            if (dart_index_.count(d))
                throw ValidationError("dart " + std::to_string(d) +
                                      " used twice (crossing " +
                                      std::to_string(crossings[ci].id) + ")");
            dart_index_[d] = 0;
        }
    }
    dart_ids_.reserve(dart_index_.size());
    for (auto& [id, idx] : dart_index_) {
        idx = (int)dart_ids_.size();
        dart_ids_.push_back(id);
    }

    int nd = num_darts();
    crossing_of_.assign(nd, -1);
    slot_of_.assign(nd, -1);
    for (size_t ci = 0; ci < crossings.size(); ++ci)
        for (int s = 0; s < 4; ++s) {
            int di = dart_index_.at(crossings[ci].darts[s]);
            crossing_of_[di] = (int)ci;
            slot_of_[di] = s;
        }

    // Edge ends: each dart exactly once.
    theta_.assign(nd, -1);
    edge_of_.assign(nd, -1);
    is_head_.assign(nd, 0);
    if ((int)edges.size() * 2 != nd)
        throw ValidationError("edge count does not match dart count");
    for (size_t ei = 0; ei < edges.size(); ++ei) {
        auto [t, h] = std::pair(edges[ei].tail, edges[ei].head);
        auto it_t = dart_index_.find(t), it_h = dart_index_.find(h);
        if (it_t == dart_index_.end() || it_h == dart_index_.end())
            throw ValidationError("edge " + std::to_string(ei) +
                                  " references unknown dart");
        int ti = it_t->second, hi = it_h->second;
        if (edge_of_[ti] != -1 || edge_of_[hi] != -1 || ti == hi)
            throw ValidationError("dart reused by edge " + std::to_string(ei));
        edge_of_[ti] = edge_of_[hi] = (int)ei;
        theta_[ti] = hi;
        theta_[hi] = ti;
        is_head_[hi] = 1;
    }
    for (int d = 0; d < nd; ++d)
        if (edge_of_[d] == -1)
            throw ValidationError("dart " + std::to_string(dart_ids_[d]) +
                                  " is not an edge end");

    // Strand direction consistency: slots k and k+2 carry one strand through
    // the crossing, so exactly one of the pair is an in-dart.
    for (size_t ci = 0; ci < crossings.size(); ++ci) {
        for (int s = 0; s < 2; ++s) {
            int a = dart_index_.at(crossings[ci].darts[s]);
            int b = dart_index_.at(crossings[ci].darts[s + 2]);
            if (is_head_[a] == is_head_[b])
                throw ValidationError("inconsistent strand directions at crossing " +
                                      std::to_string(crossings[ci].id));
        }
        if (crossings[ci].kind == CrossingKind::Classical &&
            !is_head_[dart_index_.at(crossings[ci].darts[0])])
            throw ValidationError("slot 0 of classical crossing " +
                                  std::to_string(crossings[ci].id) +
                                  " must be the incoming over dart");
    }

    // Faces: orbits of d -> rot_prev(theta(d)).
    face_of_.assign(nd, -1);
    for (int d = 0; d < nd; ++d) {
        if (face_of_[d] != -1) continue;
        int f = face_count_++;
        face_darts_.emplace_back();
        int cur = d;
        while (face_of_[cur] == -1) {
            face_of_[cur] = f;
            face_darts_[f].push_back(cur);
            cur = rot_prev(theta_[cur]);
        }
        if (cur != d) throw InternalError("face traversal did not close");
    }
    // Sphere check: V - E + F = 2 with E = 2V.
    if (!crossings.empty()) {
        int V = num_crossings(), E = num_edges(), F = face_count_;
        if (V - E + F != 2)
            throw ValidationError("rotation system is not spherical (V-E+F = " +
                                  std::to_string(V - E + F) + ")");
        if (outer_face_dart < 0 || !dart_index_.count(outer_face_dart))
            throw ValidationError("outer_face_dart is not a dart of the diagram");
        outer_face_ = face_of_[dart_index_.at(outer_face_dart)];
    } else {
        if (free_loops <= 0 && edges.empty())
            throw ValidationError("empty diagram (no crossings, no free loops)");
        face_count_ = 1;  // the sphere itself
        outer_face_ = 0;
    }

    // crossing_order lists every classical crossing id exactly once.
    std::set<int> classical_ids;
    for (auto& c : crossings)
        if (c.kind == CrossingKind::Classical) classical_ids.insert(c.id);
    if (crossing_order.size() != classical_ids.size())
        throw ValidationError("crossing_order must list every classical crossing");
    std::map<int, int> id_to_idx;
    for (size_t ci = 0; ci < crossings.size(); ++ci) id_to_idx[crossings[ci].id] = (int)ci;
    for (size_t p = 0; p < crossing_order.size(); ++p) {
        int id = crossing_order[p];
        if (!classical_ids.count(id))
            throw ValidationError("crossing_order entry " + std::to_string(id) +
                                  " is not a classical crossing");
        if (order_pos_.count(id))
            throw ValidationError("crossing_order repeats id " + std::to_string(id));
        order_pos_[id] = (int)p;
        classical_idx_.push_back(id_to_idx.at(id));
    }
}

FaceColoring Diagram::checkerboard() const {
    FaceColoring col;
    col.color.assign(std::max(face_count_, 1), FaceColor::White);
    if (crossings.empty()) return col;  // free loops handled by caller
    std::vector<int> state(face_count_, -1);
    std::queue<int> q;
    state[outer_face_] = 0;  // 0 = white
    q.push(outer_face_);
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (int d : face_darts_[f]) {
            int g = face_of_[theta_[d]];
            if (state[g] == -1) {
                state[g] = 1 - state[f];
                q.push(g);
            } else if (state[g] == state[f]) {
                throw InternalError("map is not checkerboard colorable");
            }
        }
    }
    for (int f = 0; f < face_count_; ++f) {
        if (state[f] == -1) throw InternalError("disconnected face graph");
        col.color[f] = state[f] == 0 ? FaceColor::White : FaceColor::Black;
    }
    return col;
}

FaceColor Diagram::corner_color(const FaceColoring& col, int cidx, int k) const {
    int d = dart_index_.at(crossings[cidx].darts[k]);
    return col.color[face_of_[d]];
}

int Diagram::crossing_sign(int cidx) const {
    const Crossing& c = crossings[cidx];
    if (c.kind != CrossingKind::Classical)
        throw InternalError("sign of a virtual crossing");
    return is_head_[dart_index_.at(c.darts[3])] ? +1 : -1;
}

std::pair<int, int> Diagram::crossing_counts() const {
    int np = 0, nm = 0;
    for (size_t ci = 0; ci < crossings.size(); ++ci)
        if (crossings[ci].kind == CrossingKind::Classical)
            (crossing_sign((int)ci) > 0 ? np : nm)++;
    return {np, nm};
}

int Diagram::order_pos(int crossing_id) const {
    auto it = order_pos_.find(crossing_id);
    if (it == order_pos_.end())
        throw InternalError("crossing id not in order: " + std::to_string(crossing_id));
    return it->second;
}

std::string Diagram::canonical_form() const {
    int nd = num_darts();
    std::string best;
    for (int seed = 0; seed < std::max(nd, 1); ++seed) {
        std::vector<int> relabel(nd, -1);
        std::vector<int> order;
        int next_id = 0;
        if (nd > 0) {
            // Deterministic traversal: visit theta then rotation successor.
            std::vector<int> stack{seed};
            relabel[seed] = next_id++;
            order.push_back(seed);
            size_t qi = 0;
            while (qi < order.size()) {
                int d = order[qi++];
                for (int nb : {theta_[d], rot_next(d)}) {
                    if (relabel[nb] == -1) {
                        relabel[nb] = next_id++;
                        order.push_back(nb);
                    }
                }
            }
            if (next_id != nd) continue;  // disconnected map: seed covers one part
        }
        std::ostringstream os;
        os << free_loops << ';';
        std::vector<std::string> cr;
        for (auto& c : crossings) {
            std::array<int, 4> re{};
            for (int s = 0; s < 4; ++s) re[s] = relabel[dart_index_.at(c.darts[s])];
            // Rotate so the smallest relabeled dart leads, preserving the
            // over-slot parity for classical crossings.
            int base = 0;
            for (int s = 1; s < 4; ++s)
                if (re[s] < re[base]) base = s;
            if (c.kind == CrossingKind::Classical && (base & 1)) base = (base + 2) & 3;
            std::ostringstream cs;
            cs << (c.kind == CrossingKind::Classical ? 'c' : 'v');
            if (c.kind == CrossingKind::Classical)
                cs << (is_head_[dart_index_.at(c.darts[base])] &&
                               (slot_of_[dart_index_.at(c.darts[base])] == 0 ||
                                slot_of_[dart_index_.at(c.darts[base])] == 2)
                           ? 'o'
                           : 'u');
            for (int s = 0; s < 4; ++s) cs << ',' << re[(base + s) & 3];
            cr.push_back(cs.str());
        }
        std::sort(cr.begin(), cr.end());
        for (auto& s : cr) os << s << '|';
        std::vector<std::string> es;
        for (auto& e : edges) {
            std::ostringstream s;
            s << relabel[dart_index_.at(e.tail)] << '>' << relabel[dart_index_.at(e.head)];
            es.push_back(s.str());
        }
        std::sort(es.begin(), es.end());
        os << '#';
        for (auto& s : es) os << s << '|';
        std::string enc = os.str();
        if (best.empty() || enc < best) best = enc;
    }
    if (best.empty()) {
        // No darts at all.
        return "loops:" + std::to_string(free_loops);
    }
    return best;
}

Diagram Diagram::reversed() const {
    std::vector<Edge> rev;
    rev.reserve(edges.size());
    for (auto& e : edges) rev.push_back({e.head, e.tail});
    std::vector<Crossing> cr = crossings;
    // After reversal the over strand enters at old slot 2.
    for (auto& c : cr)
        if (c.kind == CrossingKind::Classical)
            c.darts = {c.darts[2], c.darts[3], c.darts[0], c.darts[1]};
    return Diagram(name + "-rev", free_loops, std::move(cr), std::move(rev),
                   outer_face_dart, crossing_order);
}

Diagram Diagram::mirrored() const {
    std::vector<Crossing> cr = crossings;
    // Swapping over/under makes the old under in-dart (slot 1 or 3) the new
    // over in-dart; rotate so it sits at slot 0.
    for (auto& c : cr) {
        if (c.kind != CrossingKind::Classical) continue;
        int ui = is_head_[dart_index_.at(c.darts[1])] ? 1 : 3;
        std::array<int, 4> nd{};
        for (int s = 0; s < 4; ++s) nd[s] = c.darts[(ui + s) & 3];
        c.darts = nd;
    }
    return Diagram(name + "-mirror", free_loops, std::move(cr), edges,
                   outer_face_dart, crossing_order);
}

}  // namespace vkh
