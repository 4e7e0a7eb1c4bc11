#include "vkh/homology.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace vkh {

bool HomologyTable::operator==(const HomologyTable& o) const {
    auto nontrivial = [](const HomologyTable& t) {
        std::map<std::pair<int, int>, HomologyGroup> m;
        for (auto& [k, g] : t.groups)
            if (!g.trivial()) m[k] = g;
        return m;
    };
    return nontrivial(*this) == nontrivial(o);
}

std::string HomologyTable::to_string() const {
    std::ostringstream os;
    for (auto& [k, g] : groups) {
        if (g.trivial()) continue;
        os << "(q=" << k.first << ",h=" << k.second << "): ";
        bool first = true;
        if (g.free_rank) {
            os << "Z";
            if (g.free_rank > 1) os << "^" << g.free_rank;
            first = false;
        }
        for (auto& t : g.torsion) {
            if (!first) os << " + ";
            os << "Z/" << t;
            first = false;
        }
        os << "\n";
    }
    return os.str();
}

std::string Z2Table::to_string() const {
    std::ostringstream os;
    for (auto& [k, d] : dims)
        if (d) os << "(q=" << k.first << ",h=" << k.second << "): " << d << "\n";
    return os.str();
}

namespace {

std::vector<std::vector<bigint>> dense(const std::vector<SparseEntry>& e, int rows,
                                       int cols) {
    std::vector<std::vector<bigint>> m(rows, std::vector<bigint>(cols, 0));
    for (auto& x : e) m[x.row][x.col] += x.val;
    return m;
}

std::vector<bigint> prime_power_split(const bigint& d) {
    std::vector<bigint> out;
    bigint n = d;
    for (bigint p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            bigint pk = 1;
            while (n % p == 0) {
                pk *= p;
                n /= p;
            }
            out.push_back(pk);
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

HomologyTable homology_Z(const KhovanovComplex& c) {
    HomologyTable table;
    auto [hmin, hmax] = c.h_range();
    for (int q : c.quantum_gradings()) {
        std::map<int, SnfResult> snf;
        for (int h = hmin; h <= hmax; ++h) {
            int rows = c.block_size(q, h + 1), cols = c.block_size(q, h);
            if (rows == 0 || cols == 0 || c.matrix(q, h).empty()) {
                snf[h] = SnfResult{};
                continue;
            }
            snf[h] = smith_normal_form(dense(c.matrix(q, h), rows, cols));
        }
        for (int h = hmin; h <= hmax; ++h) {
            int dim = c.block_size(q, h);
            if (dim == 0) continue;
            int r_out = snf.count(h) ? snf[h].rank : 0;
            int r_in = snf.count(h - 1) ? snf[h - 1].rank : 0;
            HomologyGroup g;
            g.free_rank = dim - r_out - r_in;
            if (g.free_rank < 0) throw InternalError("negative homology rank");
            if (snf.count(h - 1))
                for (auto& d : snf[h - 1].divisors)
                    if (d > 1)
                        for (auto& pk : prime_power_split(d)) g.torsion.push_back(pk);
            std::sort(g.torsion.begin(), g.torsion.end());
            if (!g.trivial()) table.groups[{q, h}] = g;
        }
    }
    return table;
}

Z2Table homology_Z2(const KhovanovComplex& c) {
    Z2Table table;
    auto [hmin, hmax] = c.h_range();
    for (int q : c.quantum_gradings()) {
        std::map<int, int> rank2;
        for (int h = hmin; h <= hmax; ++h) {
            int rows = c.block_size(q, h + 1), cols = c.block_size(q, h);
            if (rows == 0 || cols == 0) {
                rank2[h] = 0;
                continue;
            }
            BitMatrix m(rows, cols);
            for (auto& e : c.matrix(q, h))
                if (e.val & 1) m.flip(e.row, e.col);
            rank2[h] = m.rank();
        }
        for (int h = hmin; h <= hmax; ++h) {
            int dim = c.block_size(q, h);
            if (dim == 0) continue;
            int d2 = dim - rank2[h] - (rank2.count(h - 1) ? rank2[h - 1] : 0);
            if (d2 < 0) throw InternalError("negative Z2 dimension");
            if (d2) table.dims[{q, h}] = d2;
        }
    }
    return table;
}

bool universal_coefficients_ok(const HomologyTable& z, const Z2Table& z2) {
    std::set<std::pair<int, int>> keys;
    for (auto& [k, g] : z.groups) {
        keys.insert(k);
        keys.insert({k.first, k.second - 1});
    }
    for (auto& [k, d] : z2.dims) keys.insert(k);
    auto even_torsion = [&](int q, int h) {
        auto it = z.groups.find({q, h});
        if (it == z.groups.end()) return 0;
        int n = 0;
        for (auto& t : it->second.torsion)
            if (t % 2 == 0) ++n;
        return n;
    };
    for (auto& [q, h] : keys) {
        int rank = 0;
        auto it = z.groups.find({q, h});
        if (it != z.groups.end()) rank = it->second.free_rank;
        int expect = rank + even_torsion(q, h) + even_torsion(q, h + 1);
        auto jt = z2.dims.find({q, h});
        int got = jt == z2.dims.end() ? 0 : jt->second;
        if (expect != got) return false;
    }
    return true;
}

void LaurentPoly::add(int exp, long long c) {
    if (c == 0) return;
    auto it = coeff.find(exp);
    if (it == coeff.end())
        coeff[exp] = c;
    else {
        it->second += c;
        if (it->second == 0) coeff.erase(it);
    }
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly out;
    for (auto& [e1, c1] : coeff)
        for (auto& [e2, c2] : o.coeff) out.add(e1 + e2, c1 * c2);
    return out;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly out = *this;
    for (auto& [e, c] : o.coeff) out.add(e, c);
    return out;
}

std::string LaurentPoly::to_string(const std::string& var) const {
    if (coeff.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : coeff) {
        long long a = c;
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        long long mag = a < 0 ? -a : a;
        if (mag != 1 || e == 0) os << mag;
        if (e != 0) {
            if (mag != 1) os << "*";
            os << var;
            if (e != 1) os << "^" << e;
        }
        first = false;
    }
    return os.str();
}

LaurentPoly jones(const HomologyTable& t) {
    LaurentPoly p;
    for (auto& [k, g] : t.groups) {
        long long sign = (k.second % 2 == 0) ? 1 : -1;
        p.add(k.first, sign * g.free_rank);
    }
    return p;
}

LaurentPoly chain_euler(const KhovanovComplex& c) {
    LaurentPoly p;
    auto [hmin, hmax] = c.h_range();
    for (int q : c.quantum_gradings())
        for (int h = hmin; h <= hmax; ++h) {
            long long sign = ((h % 2) + 2) % 2 == 0 ? 1 : -1;
            p.add(q, sign * c.block_size(q, h));
        }
    return p;
}

LaurentPoly bracket_oracle(const Diagram& d) {
    int n = d.num_classical();
    auto [np, nm] = d.crossing_counts();
    int w = np - nm;
    FaceColoring col = d.checkerboard();
    LaurentPoly delta;  // -A^2 - A^-2
    delta.add(2, -1);
    delta.add(-2, -1);
    LaurentPoly sum;
    for (uint64_t v = 0; v < (uint64_t(1) << n); ++v) {
        Resolution r = resolve(d, v, col);
        int circles = (int)r.circles.size();
        LaurentPoly term;
        term.add(n - 2 * (int)__builtin_popcountll(v), 1);  // A^(#A - #B)
        for (int i = 0; i < circles - 1; ++i) term = term * delta;
        sum = sum + term;
    }
    LaurentPoly norm;  // (-A)^{-3w} = (-1)^w A^{-3w}
    norm.add(-3 * w, (w % 2 != 0) ? -1 : 1);
    return sum * norm;
}

LaurentPoly jones_from_bracket(const Diagram& d) {
    LaurentPoly f = bracket_oracle(d);
    LaurentPoly g;
    for (auto& [e, c] : f.coeff) {
        if (e % 2 != 0) throw InternalError("normalized bracket has odd exponent");
        int m = e / 2;  // A^{2m} -> (-1)^m q^{-m}
        g.add(-m, (m % 2 != 0) ? -c : c);
    }
    LaurentPoly unknot;
    unknot.add(1, 1);
    unknot.add(-1, 1);
    return g * unknot;
}

}  // namespace vkh
