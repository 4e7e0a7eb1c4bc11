#include "vkh/resolution.hpp"

#include <algorithm>
#include <sstream>

namespace vkh {

namespace {

// Smoothing partner of dart `didx` at its crossing, given the cube vector.
// Classical bit 0 joins slot pairs (0,1),(2,3); bit 1 joins (1,2),(3,0).
// Virtual crossings pass straight through: (0,2),(1,3).
int smooth_partner(const Diagram& d, uint64_t vec, int didx) {
    int c = d.crossing_of(didx), s = d.slot_of(didx);
    const Crossing& cr = d.crossings[c];
    if (cr.kind == CrossingKind::Virtual)
        return d.dart_index(cr.darts[(s + 2) & 3]);
    int bit = (int)((vec >> d.order_pos(cr.id)) & 1);
    int partner;
    if (bit == 0)
        partner = s ^ 1;              // (0,1) and (2,3)
    else
        partner = (s & 1) ? (s + 1) & 3 : (s + 3) & 3;  // (1,2) and (3,0)
    return d.dart_index(cr.darts[partner]);
}

uint64_t fnv1a(const std::string& s, uint64_t seed) {
    uint64_t h = 1469598103934665603ull ^ seed;
    for (char ch : s) {
        h ^= (unsigned char)ch;
        h *= 1099511628211ull;
    }
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return h;
}

}  // namespace

int Circle::cut_count() const {
    int n = 0;
    for (auto& f : feats) n += f.kind == Feature::Cut;
    return n;
}

std::string Circle::to_string(const Diagram& d) const {
    std::ostringstream os;
    if (free_loop) return "O(free)";
    for (size_t i = 0; i < feats.size(); ++i) {
        const Feature& f = feats[i];
        switch (f.kind) {
            case Feature::Pass:
                os << (f.fwd ? '>' : '<') << 'P' << d.crossings[f.site].id << '['
                   << int(f.pair_k) << (f.arrow_fwd ? "+" : "-")
                   << (f.has_arc ? "a" : "") << ']';
                break;
            case Feature::Virt:
                os << 'V' << d.crossings[f.site].id;
                break;
            case Feature::Cut:
                os << 'x';
                break;
        }
        if ((int)i == star_slot) os << '*';
        os << ' ';
    }
    if (star_slot == -1) os << '*';
    return os.str();
}

Resolution resolve(const Diagram& d, uint64_t vec) {
    return resolve(d, vec, d.checkerboard());
}

Resolution resolve(const Diagram& d, uint64_t vec, const FaceColoring& col,
                   const StarPolicy& policy) {
    Resolution out;
    out.vec = vec;
    int nd = d.num_darts();
    std::vector<int> partner(nd), nxt(nd);
    for (int x = 0; x < nd; ++x) partner[x] = smooth_partner(d, vec, x);
    for (int x = 0; x < nd; ++x) nxt[x] = d.theta(partner[x]);

    std::vector<int> orbit_of(nd, -1);
    std::vector<std::vector<int>> orbits;
    for (int x = 0; x < nd; ++x) {
        if (orbit_of[x] != -1) continue;
        int id = (int)orbits.size();
        orbits.emplace_back();
        for (int cur = x; orbit_of[cur] == -1; cur = nxt[cur]) {
            orbit_of[cur] = id;
            orbits[id].push_back(cur);
        }
    }

    // Each geometric circle appears as two orbits (the two traversal
    // directions). The canonical direction makes the minimal dart an
    // arrival dart; a seeded policy may flip it (the circle's identity key
    // stays canonical so the flip is consistent across the whole cube).
    std::vector<char> used(orbits.size(), 0);
    struct PickedCircle {
        std::vector<int> darts;
        std::string key;
    };
    std::vector<PickedCircle> picked;
    auto rotate_to_min = [](const std::vector<int>& o) {
        int start = *std::min_element(o.begin(), o.end());
        auto it = std::find(o.begin(), o.end(), start);
        std::vector<int> rot(it, o.end());
        rot.insert(rot.end(), o.begin(), it);
        return rot;
    };
    for (size_t i = 0; i < orbits.size(); ++i) {
        if (used[i]) continue;
        int rev = orbit_of[partner[orbits[i][0]]];
        if (rev == (int)i) throw InternalError("orbit equals its reverse");
        used[i] = used[rev] = 1;
        int mi = *std::min_element(orbits[i].begin(), orbits[i].end());
        int mr = *std::min_element(orbits[rev].begin(), orbits[rev].end());
        const std::vector<int>& canon = mi < mr ? orbits[i] : orbits[rev];
        const std::vector<int>& other = mi < mr ? orbits[rev] : orbits[i];
        std::vector<int> rot = rotate_to_min(canon);
        std::ostringstream key;
        key << 'k';
        for (int din : rot) key << ':' << d.dart_id(din);
        PickedCircle pc;
        pc.key = key.str();
        bool flip = policy.seeded && ((fnv1a(pc.key, policy.seed) >> 32) & 1);
        pc.darts = flip ? rotate_to_min(other) : std::move(rot);
        picked.push_back(std::move(pc));
    }
    std::sort(picked.begin(), picked.end(),
              [](auto& a, auto& b) { return a.key < b.key; });

    for (auto& pc : picked) {
        Circle c;
        c.darts = pc.darts;
        c.key = pc.key;
        std::vector<Feature> raw;
        for (int din : c.darts) {
            int site = d.crossing_of(din);
            const Crossing& cr = d.crossings[site];
            int dout = partner[din];
            Feature f;
            f.site = site;
            if (cr.kind == CrossingKind::Virtual) {
                f.kind = Feature::Virt;
            } else {
                f.kind = Feature::Pass;
                int bit = (int)((vec >> d.order_pos(cr.id)) & 1);
                int k = -1;
                for (int cand : {bit, bit + 2}) {
                    int a = d.dart_index(cr.darts[cand & 3]);
                    int b = d.dart_index(cr.darts[(cand + 1) & 3]);
                    if ((a == din && b == dout) || (a == dout && b == din)) {
                        k = cand & 3;
                        f.fwd = (a == din);
                        break;
                    }
                }
                if (k < 0) throw InternalError("smoothing pair not found");
                f.pair_k = (uint8_t)k;
                bool arrow_stored = d.corner_color(col, site, k) == FaceColor::Black;
                f.arrow_fwd = (f.fwd == arrow_stored);
                f.has_arc = (bit == 0);
            }
            raw.push_back(f);
        }

        // Cut loci: one in each gap between consecutive arrows whose
        // directions disagree, placed right after the earlier arrow.
        std::vector<int> passes;
        for (size_t i = 0; i < raw.size(); ++i)
            if (raw[i].kind == Feature::Pass) passes.push_back((int)i);
        std::vector<char> cut_after(raw.size(), 0);
        for (size_t pi = 0; pi < passes.size(); ++pi) {
            const Feature& a = raw[passes[pi]];
            const Feature& b = raw[passes[(pi + 1) % passes.size()]];
            if (a.arrow_fwd != b.arrow_fwd) cut_after[passes[pi]] = 1;
        }
        for (size_t i = 0; i < raw.size(); ++i) {
            c.feats.push_back(raw[i]);
            if (cut_after[i]) {
                Feature cut;
                cut.kind = Feature::Cut;
                c.feats.push_back(cut);
            }
        }
        if (c.cut_count() % 2 != 0)
            throw InternalError("odd cut locus count on a circle");

        if (!c.feats.empty()) {
            if (policy.seeded)
                c.star_slot = (int)(fnv1a(c.key, policy.seed) % c.feats.size());
            else
                c.star_slot = (int)c.feats.size() - 1;
        }
        out.circles.push_back(std::move(c));
    }

    for (int fl = 0; fl < d.free_loops; ++fl) {
        Circle c;
        c.free_loop = true;
        c.key = "free:" + std::to_string(fl);
        out.circles.push_back(std::move(c));
    }

    out.arrival.assign(nd, 0);
    out.circle_of.assign(nd, -1);
    for (size_t ci = 0; ci < out.circles.size(); ++ci)
        for (int din : out.circles[ci].darts) {
            out.arrival[din] = 1;
            out.circle_of[din] = (int)ci;
            out.circle_of[partner[din]] = (int)ci;
        }

    for (size_t ci = 0; ci < out.circles.size(); ++ci) {
        const Circle& c = out.circles[ci];
        for (size_t fi = 0; fi < c.feats.size(); ++fi) {
            const Feature& f = c.feats[fi];
            if (f.kind == Feature::Pass && f.has_arc) {
                int pos = d.order_pos(d.crossings[f.site].id);
                auto& ends = out.arcs[pos];
                if (ends[0].circle == -1)
                    ends[0] = {(int)ci, (int)fi};
                else if (ends[1].circle == -1)
                    ends[1] = {(int)ci, (int)fi};
                else
                    throw InternalError("arc with more than two ends");
            }
        }
    }
    for (auto& [pos, ends] : out.arcs)
        if (ends[1].circle == -1) throw InternalError("arc with one end");
    return out;
}

Resolution surger(const Diagram& d, const Resolution& c, int pos,
                  const FaceColoring& col, const StarPolicy& policy) {
    if (!c.arcs.count(pos)) throw InternalError("surger: no arc at position");
    return resolve(d, c.vec | (uint64_t(1) << pos), col, policy);
}

SurgeryInfo classify_surgery(const Resolution& from, const Resolution& to) {
    SurgeryInfo info;
    std::map<std::string, int> to_idx;
    for (size_t i = 0; i < to.circles.size(); ++i) to_idx[to.circles[i].key] = (int)i;
    info.survivor_map.assign(from.circles.size(), -1);
    std::vector<char> matched(to.circles.size(), 0);
    for (size_t i = 0; i < from.circles.size(); ++i) {
        auto it = to_idx.find(from.circles[i].key);
        if (it != to_idx.end()) {
            info.survivor_map[i] = it->second;
            matched[it->second] = 1;
        } else {
            info.src.push_back((int)i);
        }
    }
    for (size_t i = 0; i < to.circles.size(); ++i)
        if (!matched[i]) info.dst.push_back((int)i);
    int ds = (int)info.src.size(), dt = (int)info.dst.size();
    if (ds == 1 && dt == 2)
        info.kind = SurgeryKind::Comultiplication;
    else if (ds == 2 && dt == 1)
        info.kind = SurgeryKind::Multiplication;
    else if (ds == 1 && dt == 1)
        info.kind = SurgeryKind::SingleCycle;
    else
        throw InternalError("surgery changed " + std::to_string(ds) + "->" +
                            std::to_string(dt) + " circles");
    return info;
}

bool local_rule_mult(bool in1, bool in2, bool out) {
    if (in1 && in2) return out;            // x+ x+ -> x+
    if (in1 != in2) return !out;           // x+ x- -> x-
    return false;                          // x- x- -> 0
}

bool local_rule_comult(bool in, bool out1, bool out2) {
    if (in) return out1 != out2;           // x+ -> x+ x- + x- x+
    return !out1 && !out2;                 // x- -> x- x-
}

GeneratorGradings gradings(const Diagram& d, const Resolution& r, uint32_t mask) {
    auto [np, nm] = d.crossing_counts();
    int weight = (int)__builtin_popcountll(r.vec);
    int nc = (int)r.circles.size();
    int plus = (int)__builtin_popcount(mask);
    return {-nm + weight, np - 2 * nm + weight + 2 * plus - nc};
}

bool covers(const Diagram& d, const Generator& g, const Generator& h) {
    uint64_t diff = g.vec ^ h.vec;
    if ((g.vec & h.vec) != g.vec || __builtin_popcountll(diff) != 1) return false;
    FaceColoring col = d.checkerboard();
    Resolution rv = resolve(d, g.vec, col);
    Resolution ru = resolve(d, h.vec, col);
    SurgeryInfo info = classify_surgery(rv, ru);
    if (info.kind == SurgeryKind::SingleCycle) return false;
    // Surviving circles keep their labels.
    for (size_t i = 0; i < rv.circles.size(); ++i) {
        int j = info.survivor_map[i];
        if (j < 0) continue;
        if (((g.mask >> i) & 1) != ((h.mask >> j) & 1)) return false;
    }
    auto bit = [](uint32_t m, int i) { return bool((m >> i) & 1); };
    if (info.kind == SurgeryKind::Multiplication)
        return local_rule_mult(bit(g.mask, info.src[0]), bit(g.mask, info.src[1]),
                               bit(h.mask, info.dst[0]));
    return local_rule_comult(bit(g.mask, info.src[0]), bit(h.mask, info.dst[0]),
                             bit(h.mask, info.dst[1]));
}

std::vector<Generator> enumerate_generators(const Diagram& d, int max_crossings) {
    int n = d.num_classical();
    if (n > max_crossings)
        throw ValidationError("diagram has " + std::to_string(n) +
                              " classical crossings; cap is " +
                              std::to_string(max_crossings));
    FaceColoring col = d.checkerboard();
    std::vector<Generator> gens;
    for (uint64_t v = 0; v < (uint64_t(1) << n); ++v) {
        Resolution r = resolve(d, v, col);
        for (uint32_t m = 0; m < (uint32_t(1) << r.circles.size()); ++m)
            gens.push_back({v, m});
    }
    return gens;
}

std::vector<Generator> poset_interval(const Diagram& d, const Generator& bottom,
                                      const Generator& top) {
    uint64_t lo = bottom.vec, hi = top.vec;
    if ((lo & hi) != lo) return {};
    FaceColoring col = d.checkerboard();
    // Reachability upward from bottom, restricted to the subcube [lo, hi].
    std::map<std::pair<uint64_t, uint32_t>, bool> up;
    std::vector<Generator> layer{bottom}, all{bottom};
    up[{bottom.vec, bottom.mask}] = true;
    uint64_t free_bits = hi & ~lo;
    while (!layer.empty()) {
        std::vector<Generator> next_layer;
        for (auto& g : layer) {
            uint64_t rem = free_bits & ~g.vec;
            for (int b = 0; b < 64; ++b) {
                if (!((rem >> b) & 1)) continue;
                Resolution ru = resolve(d, g.vec | (uint64_t(1) << b), col);
                for (uint32_t m = 0; m < (uint32_t(1) << ru.circles.size()); ++m) {
                    Generator h{g.vec | (uint64_t(1) << b), m};
                    if (up.count({h.vec, h.mask})) continue;
                    if (covers(d, g, h)) {
                        up[{h.vec, h.mask}] = true;
                        next_layer.push_back(h);
                        all.push_back(h);
                    }
                }
            }
        }
        layer = std::move(next_layer);
    }
    if (!up.count({top.vec, top.mask})) return {};
    // Downward reachability from top among the upward-reachable set.
    std::map<std::pair<uint64_t, uint32_t>, bool> down;
    down[{top.vec, top.mask}] = true;
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& g : all) {
            if (down.count({g.vec, g.mask})) continue;
            for (auto& h : all) {
                if (!down.count({h.vec, h.mask})) continue;
                if (covers(d, g, h)) {
                    down[{g.vec, g.mask}] = true;
                    changed = true;
                    break;
                }
            }
        }
    }
    std::vector<Generator> out;
    for (auto& g : all)
        if (down.count({g.vec, g.mask})) out.push_back(g);
    std::sort(out.begin(), out.end(), [](const Generator& a, const Generator& b) {
        return a.vec != b.vec ? a.vec < b.vec : a.mask < b.mask;
    });
    return out;
}

}  // namespace vkh
