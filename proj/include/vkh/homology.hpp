#pragma once

#include <map>
#include <string>

#include "vkh/complex.hpp"
#include "vkh/linalg.hpp"

namespace vkh {

struct HomologyGroup {
    int free_rank = 0;
    std::vector<bigint> torsion;  // prime-power orders, ascending
    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const HomologyGroup& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
};

struct HomologyTable {
    std::map<std::pair<int, int>, HomologyGroup> groups;  // (q, h) -> group
    bool operator==(const HomologyTable& o) const;
    std::string to_string() const;
};

struct Z2Table {
    std::map<std::pair<int, int>, int> dims;  // (q, h) -> dim
    bool operator==(const Z2Table& o) const { return dims == o.dims; }
    std::string to_string() const;
};

HomologyTable homology_Z(const KhovanovComplex& c);
Z2Table homology_Z2(const KhovanovComplex& c);

// Universal-coefficients consistency between the two tables.
bool universal_coefficients_ok(const HomologyTable& z, const Z2Table& z2);

// Integer Laurent polynomials in one variable.
struct LaurentPoly {
    std::map<int, long long> coeff;  // exponent -> coefficient
    void add(int exp, long long c);
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator+(const LaurentPoly& o) const;
    bool operator==(const LaurentPoly& o) const { return coeff == o.coeff; }
    std::string to_string(const std::string& var = "q") const;
};

// Graded Euler characteristic of the homology table (variable q).
LaurentPoly jones(const HomologyTable& t);
// Chain-level graded Euler characteristic; equals jones() exactly.
LaurentPoly chain_euler(const KhovanovComplex& c);

// Kauffman bracket state sum, writhe-normalized: (-A)^{-3w} <L> (variable A).
LaurentPoly bracket_oracle(const Diagram& d);
// The ledger substitution A^2 -> -1/q applied to the normalized bracket,
// times (q + 1/q); equals jones() for every diagram.
LaurentPoly jones_from_bracket(const Diagram& d);

}  // namespace vkh
