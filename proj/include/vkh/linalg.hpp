#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace vkh {

using bigint = boost::multiprecision::cpp_int;

// Dense matrix over GF(2), rows packed into 64-bit words.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool get(int r, int c) const;
    void set(int r, int c, bool v);
    void flip(int r, int c);
    void xor_row(int dst, int src);

    BitMatrix transposed() const;
    static BitMatrix mul(const BitMatrix& a, const BitMatrix& b);
    static BitMatrix identity(int n);

    int rank() const;
    // Basis of the right kernel (vectors x with Mx = 0), as rows.
    BitMatrix kernel() const;
    // Basis of the column space, as rows (each row one basis vector).
    BitMatrix column_space() const;
    // Solve Mx = b; returns false if inconsistent.
    bool solve(const std::vector<uint64_t>& b_bits, std::vector<char>& x) const;

    std::vector<uint64_t>& row_words(int r) { return words_[r]; }
    const std::vector<uint64_t>& row_words(int r) const { return words_[r]; }

private:
    int rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::vector<uint64_t>> words_;
};

// Quotient-space helper: basis of ker(below) modulo im(above), with
// coordinates. Used for homology over GF(2) and Steenrod operators.
struct QuotientBasis {
    int dim = 0;
    std::vector<std::vector<char>> reps;   // cocycle representatives (length = #gens)
    // Express a cocycle vector in the quotient basis; throws if not a cocycle.
    std::vector<char> coords(const std::vector<char>& v) const;

    // internal solver data
    BitMatrix span;               // rows: im basis then quotient reps
    int im_dim = 0;
    BitMatrix cocycle_check;      // the "below" matrix for membership tests
};

// ker(below: C -> C') / im(above: C'' -> C); matrices given as (rows x cols).
QuotientBasis quotient_basis(const BitMatrix& below, const BitMatrix& above);

// Smith normal form of an integer matrix (destructive on a copy).
// Returns the nonzero diagonal entries d1 | d2 | ... (all positive).
struct SnfResult {
    std::vector<bigint> divisors;
    int rank = 0;
};
SnfResult smith_normal_form(std::vector<std::vector<bigint>> m,
                            bool verify_transforms = false);

}  // namespace vkh
