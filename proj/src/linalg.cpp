#include "vkh/linalg.hpp"

#include <stdexcept>

namespace vkh {

BitMatrix::BitMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64) {
    words_.assign(rows, std::vector<uint64_t>(std::max(wpr_, 1), 0));
}

bool BitMatrix::get(int r, int c) const { return (words_[r][c >> 6] >> (c & 63)) & 1; }
void BitMatrix::set(int r, int c, bool v) {
    uint64_t m = uint64_t(1) << (c & 63);
    if (v)
        words_[r][c >> 6] |= m;
    else
        words_[r][c >> 6] &= ~m;
}
void BitMatrix::flip(int r, int c) { words_[r][c >> 6] ^= uint64_t(1) << (c & 63); }
void BitMatrix::xor_row(int dst, int src) {
    for (int w = 0; w < wpr_; ++w) words_[dst][w] ^= words_[src][w];
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int w = 0; w < wpr_; ++w) {
            uint64_t bits = words_[r][w];
            while (bits) {
                int b = __builtin_ctzll(bits);
                bits &= bits - 1;
                t.set(w * 64 + b, r, true);
            }
        }
    return t;
}

BitMatrix BitMatrix::mul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("BitMatrix::mul shape");
    BitMatrix c(a.rows_, b.cols_);
    for (int r = 0; r < a.rows_; ++r)
        for (int w = 0; w < a.wpr_; ++w) {
            uint64_t bits = a.words_[r][w];
            while (bits) {
                int k = __builtin_ctzll(bits);
                bits &= bits - 1;
                for (int ww = 0; ww < c.wpr_; ++ww)
                    c.words_[r][ww] ^= b.words_[w * 64 + k][ww];
            }
        }
    return c;
}

BitMatrix BitMatrix::identity(int n) {
    BitMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

namespace {

// Row echelon over GF(2); returns pivot columns. Destructive.
std::vector<int> echelon(BitMatrix& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.get(i, c)) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m.row_words(p), m.row_words(r));
        for (int i = 0; i < m.rows(); ++i)
            if (i != r && m.get(i, c)) m.xor_row(i, r);
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

int BitMatrix::rank() const {
    BitMatrix m = *this;
    return (int)echelon(m).size();
}

BitMatrix BitMatrix::kernel() const {
    BitMatrix m = *this;
    std::vector<int> pivots = echelon(m);
    std::vector<char> is_pivot(cols_, 0);
    for (size_t i = 0; i < pivots.size(); ++i) is_pivot[pivots[i]] = 1;
    std::vector<int> free_cols;
    for (int c = 0; c < cols_; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    BitMatrix ker((int)free_cols.size(), cols_);
    for (size_t fi = 0; fi < free_cols.size(); ++fi) {
        int fc = free_cols[fi];
        ker.set((int)fi, fc, true);
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            if (m.get((int)pi, fc)) ker.set((int)fi, pivots[pi], true);
    }
    return ker;
}

BitMatrix BitMatrix::column_space() const {
    BitMatrix t = transposed();
    std::vector<int> pivots = echelon(t);
    BitMatrix basis((int)pivots.size(), rows_);
    for (size_t i = 0; i < pivots.size(); ++i) basis.row_words((int)i) = t.row_words((int)i);
    return basis;
}

bool BitMatrix::solve(const std::vector<uint64_t>& b_bits, std::vector<char>& x) const {
    // Augmented elimination.
    BitMatrix m(rows_, cols_ + 1);
    for (int r = 0; r < rows_; ++r) {
        for (int w = 0; w < wpr_; ++w) m.row_words(r)[w] = words_[r][w];
        if ((b_bits[r >> 6] >> (r & 63)) & 1) m.set(r, cols_, true);
    }
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
        int p = -1;
        for (int i = r; i < rows_; ++i)
            if (m.get(i, c)) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m.row_words(p), m.row_words(r));
        for (int i = 0; i < rows_; ++i)
            if (i != r && m.get(i, c)) m.xor_row(i, r);
        pivots.push_back(c);
        ++r;
    }
    for (int i = r; i < rows_; ++i)
        if (m.get(i, cols_)) return false;
    x.assign(cols_, 0);
    for (int i = 0; i < (int)pivots.size(); ++i) x[pivots[i]] = m.get(i, cols_);
    return true;
}

std::vector<char> QuotientBasis::coords(const std::vector<char>& v) const {
    // Membership in ker(below).
    if (cocycle_check.rows() > 0) {
        std::vector<char> img(cocycle_check.rows(), 0);
        for (int r = 0; r < cocycle_check.rows(); ++r) {
            int acc = 0;
            for (int c = 0; c < cocycle_check.cols(); ++c)
                acc ^= (cocycle_check.get(r, c) & v[c]);
            if (acc) throw std::invalid_argument("vector is not a cocycle");
        }
    }
    // Solve span^T * y = v, then read the quotient coordinates.
    BitMatrix st = span.transposed();
    std::vector<uint64_t> b((st.rows() + 63) / 64 + 1, 0);
    for (int i = 0; i < (int)v.size(); ++i)
        if (v[i]) b[i >> 6] |= uint64_t(1) << (i & 63);
    std::vector<char> y;
    if (!st.solve(b, y)) throw std::invalid_argument("vector outside cocycle span");
    return std::vector<char>(y.begin() + im_dim, y.end());
}

QuotientBasis quotient_basis(const BitMatrix& below, const BitMatrix& above) {
    QuotientBasis out;
    int ngen = below.cols() > 0 ? below.cols() : above.rows();
    BitMatrix ker = below.rows() > 0 && below.cols() > 0
                        ? below.kernel()
                        : BitMatrix::identity(ngen);
    BitMatrix im = above.rows() > 0 && above.cols() > 0 ? above.column_space()
                                                        : BitMatrix(0, ngen);
    // Greedy completion of the image basis to a kernel basis.
    std::vector<int> keep;
    std::vector<std::vector<uint64_t>> rows_acc;
    for (int i = 0; i < im.rows(); ++i) rows_acc.push_back(im.row_words(i));
    auto current_rank = [&]() {
        BitMatrix t((int)rows_acc.size(), ngen);
        for (size_t j = 0; j < rows_acc.size(); ++j) t.row_words((int)j) = rows_acc[j];
        return t.rank();
    };
    int base_rank = current_rank();
    out.im_dim = base_rank;
    for (int i = 0; i < ker.rows(); ++i) {
        rows_acc.push_back(ker.row_words(i));
        int nr = current_rank();
        if (nr > base_rank) {
            base_rank = nr;
            keep.push_back(i);
        } else {
            rows_acc.pop_back();
        }
    }
    out.dim = (int)keep.size();
    for (int i : keep) {
        std::vector<char> rep(ngen, 0);
        for (int c = 0; c < ngen; ++c) rep[c] = ker.get(i, c);
        out.reps.push_back(rep);
    }
    out.span = BitMatrix((int)rows_acc.size(), ngen);
    for (size_t i = 0; i < rows_acc.size(); ++i) out.span.row_words((int)i) = rows_acc[i];
    out.cocycle_check = below;
    return out;
}

SnfResult smith_normal_form(std::vector<std::vector<bigint>> m, bool verify_transforms) {
    SnfResult res;
    int rows = (int)m.size();
    int cols = rows ? (int)m[0].size() : 0;
    std::vector<std::vector<bigint>> orig;
    std::vector<std::vector<bigint>> U, V;
    if (verify_transforms) {
        orig = m;
        U.assign(rows, std::vector<bigint>(rows, 0));
        V.assign(cols, std::vector<bigint>(cols, 0));
        for (int i = 0; i < rows; ++i) U[i][i] = 1;
        for (int i = 0; i < cols; ++i) V[i][i] = 1;
    }
    auto row_op = [&](int dst, int src, const bigint& q) {  // row dst -= q*src
        for (int c = 0; c < cols; ++c) m[dst][c] -= q * m[src][c];
        if (verify_transforms)
            for (int c = 0; c < rows; ++c) U[dst][c] -= q * U[src][c];
    };
    auto col_op = [&](int dst, int src, const bigint& q) {
        for (int r = 0; r < rows; ++r) m[r][dst] -= q * m[r][src];
        if (verify_transforms)
            for (int r = 0; r < cols; ++r) V[r][dst] -= q * V[r][src];
    };

    int t = 0;
    while (true) {
        int pr = -1, pc = -1;
        bigint best = 0;
        for (int r = t; r < rows; ++r)
            for (int c = t; c < cols; ++c)
                if (m[r][c] != 0) {
                    bigint a = abs(m[r][c]);
                    if (pr < 0 || a < best) {
                        best = a;
                        pr = r;
                        pc = c;
                    }
                }
        if (pr < 0) break;
        std::swap(m[t], m[pr]);
        if (verify_transforms) std::swap(U[t], U[pr]);
        for (int r = 0; r < rows; ++r) std::swap(m[r][t], m[r][pc]);
        if (verify_transforms)
            for (int r = 0; r < cols; ++r) std::swap(V[r][t], V[r][pc]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int r = t + 1; r < rows; ++r) {
                if (m[r][t] == 0) continue;
                bigint q = m[r][t] / m[t][t];
                row_op(r, t, q);
                if (m[r][t] != 0) {  // remainder smaller than pivot
                    std::swap(m[t], m[r]);
                    if (verify_transforms) std::swap(U[t], U[r]);
                    clean = false;
                }
            }
            for (int c = t + 1; c < cols; ++c) {
                if (m[t][c] == 0) continue;
                bigint q = m[t][c] / m[t][t];
                col_op(c, t, q);
                if (m[t][c] != 0) {
                    for (int r = 0; r < rows; ++r) std::swap(m[r][t], m[r][c]);
                    if (verify_transforms)
                        for (int r = 0; r < cols; ++r) std::swap(V[r][t], V[r][c]);
                    clean = false;
                }
            }
            if (clean) {
                // Enforce the divisibility chain.
                for (int r = t + 1; r < rows && clean; ++r)
                    for (int c = t + 1; c < cols && clean; ++c)
                        if (m[r][c] % m[t][t] != 0) {
                            row_op(t, r, bigint(-1));  // row t += row r
                            clean = false;
                        }
            }
        }
        if (m[t][t] < 0) {
            for (int c = 0; c < cols; ++c) m[t][c] = -m[t][c];
            if (verify_transforms)
                for (int c = 0; c < rows; ++c) U[t][c] = -U[t][c];
        }
        res.divisors.push_back(m[t][t]);
        ++t;
        if (t >= rows || t >= cols) break;
    }
    res.rank = (int)res.divisors.size();
    if (verify_transforms) {
        // U * orig * V should reproduce the diagonal.
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                bigint acc = 0;
                for (int k = 0; k < rows; ++k)
                    if (U[r][k] != 0)
                        for (int l = 0; l < cols; ++l)
                            if (orig[k][l] != 0 && V[l][c] != 0)
                                acc += U[r][k] * orig[k][l] * V[l][c];
                bigint want = (r == c && r < res.rank) ? res.divisors[r] : bigint(0);
                if (acc != want) throw std::logic_error("SNF transform verification failed");
            }
    }
    return res;
}

}  // namespace vkh
