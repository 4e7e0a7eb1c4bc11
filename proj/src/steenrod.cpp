#include "vkh/steenrod.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace vkh {

bool SteenrodOperator::zero() const {
    for (auto& row : matrix)
        for (char x : row)
            if (x) return false;
    return true;
}

bool SteenrodOperator::operator==(const SteenrodOperator& o) const {
    return q == o.q && m == o.m && degree == o.degree && src_dim == o.src_dim &&
           dst_dim == o.dst_dim && matrix == o.matrix;
}

bool SteenrodOperator::operator<(const SteenrodOperator& o) const {
    auto key = [](const SteenrodOperator& s) {
        return std::tuple(s.q, s.m, s.degree, s.src_dim, s.dst_dim, s.matrix);
    };
    return key(*this) < key(o);
}

std::string SteenrodOperator::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int r = 0; r < dst_dim; ++r) {
        if (r) os << "; ";
        for (int cc = 0; cc < src_dim; ++cc) os << (matrix[r][cc] ? '1' : '0');
    }
    os << "]";
    return os.str();
}

BitMatrix mod2_matrix(const KhovanovComplex& c, int q, int m) {
    int rows = c.block_size(q, m + 1), cols = c.block_size(q, m);
    BitMatrix mt(rows, cols);
    for (auto& e : c.matrix(q, m))
        if (e.val & 1) mt.flip(e.row, e.col);
    return mt;
}

QuotientBasis kh2_basis(const KhovanovComplex& c, int q, int m) {
    BitMatrix below = mod2_matrix(c, q, m);
    BitMatrix above = mod2_matrix(c, q, m - 1);
    if (below.cols() == 0) {
        // no generators at (q, m)
        QuotientBasis qb;
        return qb;
    }
    return quotient_basis(below, above);
}

SteenrodOperator sq1(const KhovanovComplex& c, int q, int m) {
    SteenrodOperator op;
    op.q = q;
    op.m = m;
    op.degree = 1;
    QuotientBasis src = kh2_basis(c, q, m);
    QuotientBasis dst = kh2_basis(c, q, m + 1);
    op.src_dim = src.dim;
    op.dst_dim = dst.dim;
    op.matrix.assign(dst.dim, std::vector<char>(src.dim, 0));
    if (src.dim == 0 || dst.dim == 0) return op;
    int dim_next = c.block_size(q, m + 1);
    for (int col = 0; col < src.dim; ++col) {
        const std::vector<char>& rep = src.reps[col];
        // integral lift = 0/1 entries; delta of the lift is even
        std::vector<long long> dz(dim_next, 0);
        for (auto& e : c.matrix(q, m))
            if (rep[e.col]) dz[e.row] += e.val;
        std::vector<char> u(dim_next, 0);
        for (int r = 0; r < dim_next; ++r) {
            if (dz[r] % 2 != 0) throw InternalError("sq1: lift not a cocycle");
            u[r] = (char)(((dz[r] / 2) % 2 + 2) % 2);
        }
        std::vector<char> coords = dst.coords(u);
        for (int r = 0; r < dst.dim; ++r) op.matrix[r][col] = coords[r];
    }
    return op;
}

SteenrodOperator sq2_cells(const StableCellData3& data,
                           const std::vector<std::vector<char>>& eta) {
    if (!data.d1.empty() || !data.d2.empty())
        throw ValidationError("sq2_cells: boundary matrices must vanish");
    SteenrodOperator op;
    op.degree = 2;
    op.src_dim = data.dim_bottom;
    op.dst_dim = data.dim_top;
    op.matrix.assign(op.dst_dim, std::vector<char>(op.src_dim, 0));
    for (int z = 0; z < data.dim_top; ++z)
        for (int y = 0; y < data.dim_bottom; ++y)
            op.matrix[z][y] = eta[z][y] & 1;
    return op;
}

namespace {

// One glued-boundary evaluation: value of Sq^2[c] on the top generator z.
// The 1-manifold is glued from the index-2 cell intervals (under mc) and a
// boundary matching at each intermediate w; its components are weighted by
// the interval sign rule. The result is independent of the boundary
// matching (asserted cheap invariants) and of the representative (tested).
int sq2_value(const KhovanovComplex& c, const MatchingChoice& mc,
              const std::vector<Generator>& supp, const Generator& z) {
    struct Flow {
        int cell;   // index into supp
        Generator w;
        int s1, s2;
    };
    std::vector<Flow> flows;
    std::vector<std::vector<std::pair<int, int>>> a_edges;  // per cell: flow idx pairs
    for (size_t yi = 0; yi < supp.size(); ++yi) {
        Index2Cell cell = classify_index2(c, supp[yi], z);
        if (cell.kind == CellKind::Empty) {
            a_edges.push_back({});
            continue;
        }
        int base = (int)flows.size();
        for (auto& f : cell.flows) flows.push_back({(int)yi, f.w, f.sign1, f.sign2});
        std::vector<std::pair<int, int>> iv;
        for (auto& [p, q2] : cell.intervals(mc.alternate(supp[yi], z), mc.left_pair))
            iv.push_back({base + p, base + q2});
        a_edges.push_back(iv);
    }
    // boundary matching at each intermediate generator w: even flow count
    std::map<std::pair<uint64_t, uint32_t>, std::vector<int>> at_w;
    for (size_t fi = 0; fi < flows.size(); ++fi)
        at_w[{flows[fi].w.vec, flows[fi].w.mask}].push_back((int)fi);
    std::vector<int> b_partner(flows.size(), -1);
    int same_sign_pairs = 0;
    for (auto& [w, fs] : at_w) {
        if (fs.size() % 2 != 0)
            throw InternalError("sq2: odd flow count at an intermediate (not a cocycle?)");
        for (size_t k = 0; k + 1 < fs.size(); k += 2) {
            b_partner[fs[k]] = fs[k + 1];
            b_partner[fs[k + 1]] = fs[k];
            int p1 = flows[fs[k]].s1 * flows[fs[k]].s2;
            int p2 = flows[fs[k + 1]].s1 * flows[fs[k + 1]].s2;
            if (p1 == p2) ++same_sign_pairs;
        }
    }
    if (same_sign_pairs % 2 != 0)
        throw InternalError("sq2: odd same-sign matching count");
    std::vector<int> a_partner(flows.size(), -1);
    for (auto& iv : a_edges)
        for (auto& [p, q2] : iv) {
            a_partner[p] = q2;
            a_partner[q2] = p;
        }
    for (size_t fi = 0; fi < flows.size(); ++fi)
        if (a_partner[fi] < 0 || b_partner[fi] < 0)
            throw InternalError("sq2: unmatched broken flow");
    // walk the glued circles; weight = parity of intervals joining flows
    // with equal top-coefficient signs
    std::vector<char> used(flows.size(), 0);
    int value = 0;
    for (size_t s = 0; s < flows.size(); ++s) {
        if (used[s]) continue;
        int weight = 0;
        int cur = (int)s;
        bool via_a = true;
        do {
            used[cur] = 1;
            int nxt = via_a ? a_partner[cur] : b_partner[cur];
            if (via_a && flows[cur].s2 == flows[nxt].s2) weight ^= 1;
            used[nxt] = 1;
            cur = nxt;
            via_a = !via_a;
        } while (cur != (int)s || !via_a);
        value ^= weight;
    }
    return value;
}

}  // namespace

SteenrodOperator sq2(const KhovanovComplex& c, const MatchingChoice& mc, int q,
                     int m) {
    SteenrodOperator op;
    op.q = q;
    op.m = m;
    op.degree = 2;
    QuotientBasis src = kh2_basis(c, q, m);
    QuotientBasis dst = kh2_basis(c, q, m + 2);
    op.src_dim = src.dim;
    op.dst_dim = dst.dim;
    op.matrix.assign(dst.dim, std::vector<char>(src.dim, 0));
    if (src.dim == 0 || dst.dim == 0) return op;
    const auto& ygens = c.block(q, m);
    const auto& zgens = c.block(q, m + 2);
    for (int col = 0; col < src.dim; ++col) {
        std::vector<Generator> supp;
        for (size_t i = 0; i < ygens.size(); ++i)
            if (src.reps[col][i]) supp.push_back(ygens[i]);
        std::vector<char> result(zgens.size(), 0);
        for (size_t zi = 0; zi < zgens.size(); ++zi)
            result[zi] = (char)sq2_value(c, mc, supp, zgens[zi]);
        std::vector<char> coords = dst.coords(result);  // asserts cocycle
        for (int r = 0; r < dst.dim; ++r) op.matrix[r][col] = coords[r];
    }
    return op;
}

Sq2Set sq2_set(const KhovanovComplex& c, int q, int m, uint64_t cap,
               bool left_pair) {
    MatchingSpace sp = enumerate_matchings(c, cap);
    Sq2Set out;
    for (uint64_t choice = 0; choice < sp.count(); ++choice) {
        MatchingChoice mc{&sp, choice, left_pair};
        out.ops.push_back(sq2(c, mc, q, m));
    }
    std::sort(out.ops.begin(), out.ops.end());
    out.ops.erase(std::unique(out.ops.begin(), out.ops.end()), out.ops.end());
    return out;
}

}  // namespace vkh
