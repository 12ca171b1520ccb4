#pragma once

// Dense GF(2) linear algebra: bit vectors, bit matrices, reduced row echelon
// form with a replayable row-operation log, and nullspace bases.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stabloc {

// Fixed-length vector over GF(2), packed into 64-bit words.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t len) : len_(len), bits_((len + 63) / 64, 0) {}
    BitVec(std::size_t len, std::initializer_list<int> values);

    std::size_t size() const { return len_; }

    bool get(std::size_t i) const {
        return (bits_[i / 64] >> (i % 64)) & 1u;
    }
    void set(std::size_t i, bool v) {
        std::uint64_t mask = std::uint64_t(1) << (i % 64);
        if (v)
            bits_[i / 64] |= mask;
        else
            bits_[i / 64] &= ~mask;
    }
    void flip(std::size_t i) { bits_[i / 64] ^= std::uint64_t(1) << (i % 64); }

    BitVec& operator^=(const BitVec& other);
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

    // Dot product over GF(2).
    bool dot(const BitVec& other) const;
    // Integer dot product (number of positions where both are 1).
    std::size_t dot_int(const BitVec& other) const;

    std::size_t popcount() const;
    bool any() const;
    void clear();

    bool operator==(const BitVec& other) const = default;

    std::string to_string() const;  // e.g. "01101"

private:
    friend class BitMatrix;
    std::size_t len_ = 0;
    std::vector<std::uint64_t> bits_;
};

// Row-major matrix over GF(2).
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows, BitVec(cols)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v) { data_[r].set(c, v); }
    void flip(std::size_t r, std::size_t c) { data_[r].flip(c); }

    const BitVec& row(std::size_t r) const { return data_[r]; }
    BitVec& row(std::size_t r) { return data_[r]; }

    void swap_rows(std::size_t i, std::size_t j) { std::swap(data_[i], data_[j]); }
    void add_row(std::size_t src, std::size_t dst) { data_[dst] ^= data_[src]; }
    void swap_cols(std::size_t i, std::size_t j);

    BitMatrix transposed() const;
    // Matrix product over GF(2).
    BitMatrix operator*(const BitMatrix& other) const;
    // Row vector times matrix over GF(2).
    friend BitVec operator*(const BitVec& v, const BitMatrix& m);

    bool operator==(const BitMatrix& other) const = default;

    static BitMatrix identity(std::size_t n);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BitVec> data_;
};

// Elementary row operation, recorded during row reduction so the same
// sequence can be replayed on another matrix (or reinterpreted, e.g. to
// track how stabilizer generators were recombined).
struct RowOp {
    enum class Kind { Swap, Add } kind;
    std::size_t a;  // Swap: first row.  Add: source row.
    std::size_t b;  // Swap: second row. Add: destination row (dst ^= src).
};

struct RrefResult {
    BitMatrix reduced;
    std::vector<std::size_t> pivot_cols;  // pivot column of row i, in row order
    std::vector<RowOp> row_ops;
};

// Reduced row echelon form over GF(2). Pivot selection: leftmost column
// first, and within a column the lowest-index candidate row.
RrefResult rref(const BitMatrix& m);

// Apply a recorded row-operation sequence to another matrix in place.
void replay_row_ops(const std::vector<RowOp>& ops, BitMatrix& m);

// Basis of { v : m vᵀ = 0 } over GF(2), in reduced echelon form: each basis
// vector owns one free coordinate that is zero in every other basis vector.
std::vector<BitVec> nullspace_basis(const BitMatrix& m);

std::size_t rank(const BitMatrix& m);

// Solve x·A = b over GF(2) (x: rows(A) unknowns). Returns one solution or
// nothing when the system is inconsistent.
std::optional<BitVec> solve_xA_eq_b(const BitMatrix& A, const BitVec& b);

}  // namespace stabloc
