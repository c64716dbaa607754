#pragma once

// Dense bit-packed linear algebra over F2.
//
// Rows are packed into 64-bit words, row-major. Bits past the logical end of a
// row (or vector) are always zero, so word-level comparisons and popcounts are
// exact.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cohqec {

inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t word_count(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(std::size_t len) : len_(len), words_(word_count(len), 0) {}

    /// Parses a string of '0'/'1' characters, index 0 first.
    static BitVector from_string(std::string_view bits);

    std::size_t size() const { return len_; }
    bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
    void set(std::size_t i, bool value = true) {
        std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
        if (value) {
            words_[i / kWordBits] |= mask;
        } else {
            words_[i / kWordBits] &= ~mask;
        }
    }
    void flip(std::size_t i) { words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits); }

    BitVector& operator^=(const BitVector& other);
    BitVector& operator&=(const BitVector& other);
    std::size_t popcount() const;
    bool any() const;
    bool none() const { return !any(); }
    /// Index of the lowest set bit, or size() when empty.
    std::size_t first_set() const;

    std::span<std::uint64_t> words() { return words_; }
    std::span<const std::uint64_t> words() const { return words_; }

    std::string to_string() const;

    friend bool operator==(const BitVector&, const BitVector&) = default;

   private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

BitVector operator^(BitVector a, const BitVector& b);
BitVector operator&(BitVector a, const BitVector& b);
/// Parity of the bitwise AND.
bool dot(const BitVector& a, const BitVector& b);

class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_(word_count(cols)), data_(rows * stride_, 0) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix from_rows(std::span<const BitVector> rows, std::size_t cols);
    /// One string of '0'/'1' per row; all rows must have equal length.
    static BitMatrix from_strings(std::span<const std::string_view> rows);
    static BitMatrix from_strings(std::initializer_list<std::string_view> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t row_words() const { return stride_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool value = true) {
        std::uint64_t mask = std::uint64_t{1} << (c % kWordBits);
        std::uint64_t& w = data_[r * stride_ + c / kWordBits];
        w = value ? (w | mask) : (w & ~mask);
    }
    void flip(std::size_t r, std::size_t c) {
        data_[r * stride_ + c / kWordBits] ^= std::uint64_t{1} << (c % kWordBits);
    }

    std::span<std::uint64_t> row(std::size_t r) { return {data_.data() + r * stride_, stride_}; }
    std::span<const std::uint64_t> row(std::size_t r) const { return {data_.data() + r * stride_, stride_}; }
    BitVector row_vector(std::size_t r) const;
    void set_row(std::size_t r, const BitVector& v);
    void append_row(const BitVector& v);
    bool row_is_zero(std::size_t r) const;

    /// row[dst] ^= row[src]
    void xor_row(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);

    BitMatrix transpose() const;
    BitMatrix select_columns(std::span<const std::size_t> columns) const;
    BitMatrix select_rows(std::span<const std::size_t> rows) const;
    /// Columns [first, first + count).
    BitMatrix column_range(std::size_t first, std::size_t count) const;
    BitMatrix hstack(const BitMatrix& right) const;
    BitMatrix vstack(const BitMatrix& below) const;

    /// Matrix-vector product M x.
    BitVector multiply(const BitVector& x) const;

    std::string to_string() const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> data_;
};

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);

struct RowEchelon {
    BitMatrix matrix;
    std::vector<std::size_t> pivots;
};

/// Row echelon form together with the row operations that produced it:
/// transform * input == reduced.
struct TrackedEchelon {
    BitMatrix reduced;
    BitMatrix transform;
    std::vector<std::size_t> pivots;
};

std::size_t rank(BitMatrix m);

/// Reduced row-echelon form. Zero rows are dropped, so the result has exactly
/// rank(m) rows.
RowEchelon rref(BitMatrix m);

/// Full reduction keeping every row (zero rows last).
TrackedEchelon rref_tracked(const BitMatrix& m);

/// Basis (in rref) of {v : v^T M = 0}.
BitMatrix left_null_space(const BitMatrix& m);

/// Basis (in rref) of {x : M x = 0}.
BitMatrix null_space(const BitMatrix& m);

/// Some x with M x = b, or nullopt when the system is inconsistent.
/// Throws std::invalid_argument if b.size() != m.rows().
std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b);

/// Incrementally grown span of vectors, kept in echelon form.
class XorBasis {
   public:
    explicit XorBasis(std::size_t bits) : bits_(bits) {}

    /// Adds v to the span. Returns false (and leaves the basis unchanged) when v
    /// was already in it.
    bool insert(BitVector v);
    bool contains(BitVector v) const;
    BitVector reduce(BitVector v) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t bits() const { return bits_; }

   private:
    std::size_t bits_;
    std::vector<BitVector> rows_;
    std::vector<std::size_t> pivots_;
};

/// Expresses vectors as combinations of a fixed list of rows.
class RowDecomposer {
   public:
    explicit RowDecomposer(const BitMatrix& rows);

    /// Coefficients c (length rows()) with sum_i c_i row_i == v, or nullopt when
    /// v lies outside the row space. Not unique when the rows are dependent.
    std::optional<BitVector> coefficients(const BitVector& v) const;
    std::size_t rank() const { return rank_; }

   private:
    TrackedEchelon echelon_;
    std::size_t rank_ = 0;
};

}  // namespace cohqec
