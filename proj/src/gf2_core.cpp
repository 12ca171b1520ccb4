#include "stabloc/gf2_core.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

namespace stabloc {

BitVec::BitVec(std::size_t len, std::initializer_list<int> values) : BitVec(len) {
    std::size_t i = 0;
    for (int v : values) {
        if (i >= len) throw std::invalid_argument("BitVec: too many initializers");
        set(i++, v != 0);
    }
}

BitVec& BitVec::operator^=(const BitVec& other) {
    assert(len_ == other.len_);
    for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] ^= other.bits_[w];
    return *this;
}

bool BitVec::dot(const BitVec& other) const {
    return dot_int(other) % 2 != 0;
}

std::size_t BitVec::dot_int(const BitVec& other) const {
    assert(len_ == other.len_);
    std::size_t acc = 0;
    for (std::size_t w = 0; w < bits_.size(); ++w)
        acc += std::popcount(bits_[w] & other.bits_[w]);
    return acc;
}

std::size_t BitVec::popcount() const {
    std::size_t acc = 0;
    for (std::uint64_t w : bits_) acc += std::popcount(w);
    return acc;
}

bool BitVec::any() const {
    for (std::uint64_t w : bits_)
        if (w) return true;
    return false;
}

void BitVec::clear() {
    for (auto& w : bits_) w = 0;
}

std::string BitVec::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

void BitMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) {
        bool bi = get(r, i), bj = get(r, j);
        set(r, i, bj);
        set(r, j, bi);
    }
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r, true);
    return t;
}

BitMatrix BitMatrix::operator*(const BitMatrix& other) const {
    assert(cols_ == other.rows_);
    BitMatrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k)
            if (get(r, k)) out.data_[r] ^= other.data_[k];
    return out;
}

BitVec operator*(const BitVec& v, const BitMatrix& m) {
    assert(v.size() == m.rows());
    BitVec out(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (v.get(r)) out ^= m.row(r);
    return out;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

RrefResult rref(const BitMatrix& m) {
    RrefResult res{m, {}, {}};
    BitMatrix& a = res.reduced;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
        std::size_t sel = a.rows();
        for (std::size_t r = pivot_row; r < a.rows(); ++r)
            if (a.get(r, col)) {
                sel = r;
                break;
            }
        if (sel == a.rows()) continue;
        if (sel != pivot_row) {
            a.swap_rows(sel, pivot_row);
            res.row_ops.push_back({RowOp::Kind::Swap, sel, pivot_row});
        }
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (r != pivot_row && a.get(r, col)) {
                a.add_row(pivot_row, r);
                res.row_ops.push_back({RowOp::Kind::Add, pivot_row, r});
            }
        res.pivot_cols.push_back(col);
        ++pivot_row;
    }
    return res;
}

void replay_row_ops(const std::vector<RowOp>& ops, BitMatrix& m) {
    for (const RowOp& op : ops) {
        if (op.kind == RowOp::Kind::Swap)
            m.swap_rows(op.a, op.b);
        else
            m.add_row(op.a, op.b);
    }
}

std::vector<BitVec> nullspace_basis(const BitMatrix& m) {
    RrefResult res = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : res.pivot_cols) is_pivot[c] = true;

    std::vector<BitVec> basis;
    for (std::size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        BitVec v(n);
        v.set(free_col, true);
        for (std::size_t r = 0; r < res.pivot_cols.size(); ++r)
            if (res.reduced.get(r, free_col)) v.set(res.pivot_cols[r], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank(const BitMatrix& m) {
    return rref(m).pivot_cols.size();
}

std::optional<BitVec> solve_xA_eq_b(const BitMatrix& A, const BitVec& b) {
    // Transpose to the column form Aᵀ xᵀ = bᵀ and reduce the augmented system.
    BitMatrix aug(A.cols(), A.rows() + 1);
    for (std::size_t r = 0; r < A.rows(); ++r)
        for (std::size_t c = 0; c < A.cols(); ++c)
            if (A.get(r, c)) aug.set(c, r, true);
    for (std::size_t c = 0; c < A.cols(); ++c)
        if (b.get(c)) aug.set(c, A.rows(), true);

    RrefResult res = rref(aug);
    BitVec x(A.rows());
    for (std::size_t i = 0; i < res.pivot_cols.size(); ++i) {
        std::size_t pc = res.pivot_cols[i];
        if (pc == A.rows()) return std::nullopt;  // pivot in augmented column
        x.set(pc, res.reduced.get(i, A.rows()));
    }
    return x;
}

}  // namespace stabloc
