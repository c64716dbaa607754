#include "cohqec/bitlinalg.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cohqec {

namespace {

// Writes `nbits` bits of `src` (starting at bit 0) into `dst` starting at bit
// `offset`. Destination bits in that range are assumed to be zero.
void or_bits_at(std::span<std::uint64_t> dst, std::size_t offset, std::span<const std::uint64_t> src,
                std::size_t nbits) {
    if (nbits == 0) {
        return;
    }
    std::size_t shift = offset % kWordBits;
    std::size_t base = offset / kWordBits;
    std::size_t nwords = word_count(nbits);
    for (std::size_t k = 0; k < nwords; ++k) {
        std::uint64_t w = src[k];
        if (k + 1 == nwords && nbits % kWordBits != 0) {
            w &= (std::uint64_t{1} << (nbits % kWordBits)) - 1;
        }
        dst[base + k] |= w << shift;
        if (shift != 0 && base + k + 1 < dst.size()) {
            dst[base + k + 1] |= w >> (kWordBits - shift);
        }
    }
}

// Gaussian elimination choosing pivots among the first `pivot_cols` columns;
// all columns are carried along. Pivot i ends up in row i. With `full`, pivot
// columns are cleared in every other row (rref); otherwise only below.
std::vector<std::size_t> eliminate(BitMatrix& m, std::size_t pivot_cols, bool full) {
    std::vector<std::size_t> pivots;
    const std::size_t rows = m.rows();
    const std::size_t stride = m.row_words();
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
        const std::size_t w = c / kWordBits;
        const std::uint64_t bit = std::uint64_t{1} << (c % kWordBits);
        std::size_t p = r;
        while (p < rows && !(m.row(p)[w] & bit)) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        if (p != r) {
            m.swap_rows(p, r);
        }
        // Bits of the pivot row left of column c are zero, so XOR can start at word w.
        auto pivot_row = m.row(r);
        for (std::size_t i = full ? 0 : r + 1; i < rows; ++i) {
            if (i == r) {
                continue;
            }
            auto target = m.row(i);
            if (target[w] & bit) {
                for (std::size_t k = w; k < stride; ++k) {
                    target[k] ^= pivot_row[k];
                }
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

// ---------------------------------------------------------------- BitVector

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("BitVector::from_string: expected '0' or '1'");
        }
    }
    return v;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (other.len_ != len_) {
        throw std::invalid_argument("BitVector length mismatch");
    }
    for (std::size_t k = 0; k < words_.size(); ++k) {
        words_[k] ^= other.words_[k];
    }
    return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
    if (other.len_ != len_) {
        throw std::invalid_argument("BitVector length mismatch");
    }
    for (std::size_t k = 0; k < words_.size(); ++k) {
        words_[k] &= other.words_[k];
    }
    return *this;
}

std::size_t BitVector::popcount() const {
    std::size_t total = 0;
    for (auto w : words_) {
        total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
}

bool BitVector::any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t BitVector::first_set() const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
        if (words_[k] != 0) {
            return k * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[k]));
        }
    }
    return len_;
}

std::string BitVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

BitVector operator^(BitVector a, const BitVector& b) {
    a ^= b;
    return a;
}

BitVector operator&(BitVector a, const BitVector& b) {
    a &= b;
    return a;
}

bool dot(const BitVector& a, const BitVector& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dot: length mismatch");
    }
    auto wa = a.words();
    auto wb = b.words();
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < wa.size(); ++k) {
        acc ^= wa[k] & wb[k];
    }
    return std::popcount(acc) & 1;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i);
    }
    return m;
}

BitMatrix BitMatrix::from_rows(std::span<const BitVector> rows, std::size_t cols) {
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        m.set_row(r, rows[r]);
    }
    return m;
}

BitMatrix BitMatrix::from_strings(std::span<const std::string_view> rows) {
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw std::invalid_argument("BitMatrix::from_strings: ragged rows");
        }
        m.set_row(r, BitVector::from_string(rows[r]));
    }
    return m;
}

BitMatrix BitMatrix::from_strings(std::initializer_list<std::string_view> rows) {
    std::vector<std::string_view> v(rows);
    return from_strings(std::span<const std::string_view>(v));
}

BitVector BitMatrix::row_vector(std::size_t r) const {
    BitVector v(cols_);
    auto src = row(r);
    std::copy(src.begin(), src.end(), v.words().begin());
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
    if (v.size() != cols_) {
        throw std::invalid_argument("BitMatrix::set_row: length mismatch");
    }
    auto src = v.words();
    std::copy(src.begin(), src.end(), row(r).begin());
}

void BitMatrix::append_row(const BitVector& v) {
    if (v.size() != cols_) {
        throw std::invalid_argument("BitMatrix::append_row: length mismatch");
    }
    data_.insert(data_.end(), v.words().begin(), v.words().end());
    ++rows_;
}

bool BitMatrix::row_is_zero(std::size_t r) const {
    auto w = row(r);
    return std::all_of(w.begin(), w.end(), [](std::uint64_t x) { return x == 0; });
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) {
    auto d = row(dst);
    auto s = row(src);
    for (std::size_t k = 0; k < stride_; ++k) {
        d[k] ^= s[k];
    }
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto w = row(r);
        for (std::size_t k = 0; k < stride_; ++k) {
            std::uint64_t bits = w[k];
            while (bits != 0) {
                std::size_t c = k * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
                t.set(c, r);
                bits &= bits - 1;
            }
        }
    }
    return t;
}

BitMatrix BitMatrix::select_columns(std::span<const std::size_t> columns) const {
    BitMatrix out(rows_, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j] >= cols_) {
            throw std::out_of_range("BitMatrix::select_columns: column out of range");
        }
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (get(r, columns[j])) {
                out.set(r, j);
            }
        }
    }
    return out;
}

BitMatrix BitMatrix::select_rows(std::span<const std::size_t> rows) const {
    BitMatrix out(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] >= rows_) {
            throw std::out_of_range("BitMatrix::select_rows: row out of range");
        }
        auto src = row(rows[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

BitMatrix BitMatrix::column_range(std::size_t first, std::size_t count) const {
    if (first + count > cols_) {
        throw std::out_of_range("BitMatrix::column_range");
    }
    BitMatrix out(rows_, count);
    if (count == 0) {
        return out;
    }
    const std::size_t shift = first % kWordBits;
    const std::size_t base = first / kWordBits;
    const std::size_t out_words = out.stride_;
    for (std::size_t r = 0; r < rows_; ++r) {
        auto src = row(r);
        auto dst = out.row(r);
        for (std::size_t k = 0; k < out_words; ++k) {
            std::uint64_t w = src[base + k] >> shift;
            if (shift != 0 && base + k + 1 < stride_) {
                w |= src[base + k + 1] << (kWordBits - shift);
            }
            dst[k] = w;
        }
        if (count % kWordBits != 0) {
            dst[out_words - 1] &= (std::uint64_t{1} << (count % kWordBits)) - 1;
        }
    }
    return out;
}

BitMatrix BitMatrix::hstack(const BitMatrix& right) const {
    if (right.rows_ != rows_) {
        throw std::invalid_argument("BitMatrix::hstack: row count mismatch");
    }
    BitMatrix out(rows_, cols_ + right.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        or_bits_at(out.row(r), 0, row(r), cols_);
        or_bits_at(out.row(r), cols_, right.row(r), right.cols_);
    }
    return out;
}

BitMatrix BitMatrix::vstack(const BitMatrix& below) const {
    if (below.cols_ != cols_) {
        throw std::invalid_argument("BitMatrix::vstack: column count mismatch");
    }
    BitMatrix out = *this;
    out.data_.insert(out.data_.end(), below.data_.begin(), below.data_.end());
    out.rows_ += below.rows_;
    return out;
}

BitVector BitMatrix::multiply(const BitVector& x) const {
    if (x.size() != cols_) {
        throw std::invalid_argument("BitMatrix::multiply: length mismatch");
    }
    BitVector y(rows_);
    auto xw = x.words();
    for (std::size_t r = 0; r < rows_; ++r) {
        auto w = row(r);
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < stride_; ++k) {
            acc ^= w[k] & xw[k];
        }
        if (std::popcount(acc) & 1) {
            y.set(r);
        }
    }
    return y;
}

std::string BitMatrix::to_string() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
        s += row_vector(r).to_string();
        s += '\n';
    }
    return s;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("BitMatrix product: dimension mismatch");
    }
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto dst = out.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.get(i, j)) {
                auto src = b.row(j);
                for (std::size_t k = 0; k < dst.size(); ++k) {
                    dst[k] ^= src[k];
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- kernels

std::size_t rank(BitMatrix m) { return eliminate(m, m.cols(), false).size(); }

RowEchelon rref(BitMatrix m) {
    auto pivots = eliminate(m, m.cols(), true);
    std::vector<std::size_t> keep(pivots.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        keep[i] = i;
    }
    return {m.select_rows(keep), std::move(pivots)};
}

TrackedEchelon rref_tracked(const BitMatrix& m) {
    BitMatrix aug = m.hstack(BitMatrix::identity(m.rows()));
    auto pivots = eliminate(aug, m.cols(), true);
    return {aug.column_range(0, m.cols()), aug.column_range(m.cols(), m.rows()), std::move(pivots)};
}

BitMatrix left_null_space(const BitMatrix& m) {
    BitMatrix aug = m.hstack(BitMatrix::identity(m.rows()));
    std::size_t r = eliminate(aug, m.cols(), false).size();
    std::vector<std::size_t> tail;
    for (std::size_t i = r; i < m.rows(); ++i) {
        tail.push_back(i);
    }
    BitMatrix basis = aug.select_rows(tail).column_range(m.cols(), m.rows());
    return rref(std::move(basis)).matrix;
}

BitMatrix null_space(const BitMatrix& m) { return left_null_space(m.transpose()); }

std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b) {
    if (b.size() != m.rows()) {
        throw std::invalid_argument("solve: right-hand side length must equal row count");
    }
    BitMatrix rhs(m.rows(), 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        rhs.set(r, 0, b.get(r));
    }
    BitMatrix aug = m.hstack(rhs);
    auto pivots = eliminate(aug, m.cols(), true);
    for (std::size_t r = pivots.size(); r < m.rows(); ++r) {
        if (aug.get(r, m.cols())) {
            return std::nullopt;
        }
    }
    BitVector x(m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        x.set(pivots[i], aug.get(i, m.cols()));
    }
    return x;
}

// ---------------------------------------------------------------- XorBasis

BitVector XorBasis::reduce(BitVector v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (v.get(pivots_[i])) {
            v ^= rows_[i];
        }
    }
    return v;
}

bool XorBasis::insert(BitVector v) {
    if (v.size() != bits_) {
        throw std::invalid_argument("XorBasis::insert: length mismatch");
    }
    v = reduce(std::move(v));
    std::size_t pivot = v.first_set();
    if (pivot == bits_) {
        return false;
    }
    pivots_.push_back(pivot);
    rows_.push_back(std::move(v));
    return true;
}

bool XorBasis::contains(BitVector v) const { return reduce(std::move(v)).none(); }

// ---------------------------------------------------------------- RowDecomposer

RowDecomposer::RowDecomposer(const BitMatrix& rows) : echelon_(rref_tracked(rows)), rank_(echelon_.pivots.size()) {}

std::optional<BitVector> RowDecomposer::coefficients(const BitVector& v) const {
    if (v.size() != echelon_.reduced.cols()) {
        throw std::invalid_argument("RowDecomposer: length mismatch");
    }
    BitVector residual = v;
    BitVector coeff(echelon_.transform.cols());
    for (std::size_t i = 0; i < rank_; ++i) {
        if (residual.get(echelon_.pivots[i])) {
            auto red = echelon_.reduced.row(i);
            auto rw = residual.words();
            for (std::size_t k = 0; k < rw.size(); ++k) {
                rw[k] ^= red[k];
            }
            auto tr = echelon_.transform.row(i);
            auto cw = coeff.words();
            for (std::size_t k = 0; k < cw.size(); ++k) {
                cw[k] ^= tr[k];
            }
        }
    }
    if (residual.any()) {
        return std::nullopt;
    }
    return coeff;
}

}  // namespace cohqec
