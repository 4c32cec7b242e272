#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

#include "gb/errors.hpp"

namespace gb {

// Dense matrix over {+1, -1}, packed one bit per entry (bit set <=> +1).
// Rows are stored in 64-bit words; bits past the column count are kept zero
// so whole-word XOR / popcount tricks and operator== need no masking.
class SignMatrix {
public:
    SignMatrix() : rows_(0), cols_(0), wpr_(0) {}

    SignMatrix(std::size_t rows, std::size_t cols, int fill = +1)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64),
          bits_(rows * ((cols + 63) / 64), 0) {
        if (rows == 0 || cols == 0)
            throw ShapeError("SignMatrix: dimensions must be positive");
        if (fill != +1 && fill != -1)
            throw ShapeError("SignMatrix: fill must be +1 or -1");
        if (fill == +1) {
            for (std::size_t i = 0; i < rows_; ++i)
                for (std::size_t j = 0; j < cols_; ++j)
                    bits_[i * wpr_ + j / 64] |= std::uint64_t{1} << (j % 64);
        }
    }

    static SignMatrix from_rows(const std::vector<std::vector<int>>& rows) {
        if (rows.empty() || rows.front().empty())
            throw ShapeError("SignMatrix: empty row list");
        SignMatrix m(rows.size(), rows.front().size(), -1);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw ShapeError("SignMatrix: ragged row list");
            for (std::size_t j = 0; j < m.cols_; ++j) {
                int v = rows[i][j];
                if (v != +1 && v != -1)
                    throw ShapeError("SignMatrix: entries must be +1 or -1");
                if (v == +1) m.set(i, j, +1);
            }
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    int at(std::size_t i, std::size_t j) const {
        return (bits_[i * wpr_ + j / 64] >> (j % 64)) & 1 ? +1 : -1;
    }

    void set(std::size_t i, std::size_t j, int sign) {
        std::uint64_t mask = std::uint64_t{1} << (j % 64);
        if (sign == +1)
            bits_[i * wpr_ + j / 64] |= mask;
        else
            bits_[i * wpr_ + j / 64] &= ~mask;
    }

    void flip(std::size_t i, std::size_t j) {
        bits_[i * wpr_ + j / 64] ^= std::uint64_t{1} << (j % 64);
    }

    std::size_t words_per_row() const noexcept { return wpr_; }
    const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * wpr_; }

    // Low n columns of row i as a bit mask; only valid for cols <= 32.
    std::uint32_t row_bits32(std::size_t i) const {
        return static_cast<std::uint32_t>(bits_[i * wpr_]);
    }

    // Exact integer inner product of rows i and k: cols - 2*popcount(xor).
    long long row_dot(std::size_t i, std::size_t k) const {
        const std::uint64_t* a = row(i);
        const std::uint64_t* b = row(k);
        long long diff = 0;
        for (std::size_t w = 0; w < wpr_; ++w)
            diff += std::popcount(a[w] ^ b[w]);
        return static_cast<long long>(cols_) - 2 * diff;
    }

    SignMatrix transposed() const {
        SignMatrix t(cols_, rows_, -1);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) == +1) t.set(j, i, +1);
        return t;
    }

    SignMatrix leading_block(std::size_t r, std::size_t c) const {
        if (r > rows_ || c > cols_)
            throw ShapeError("SignMatrix: leading block exceeds matrix");
        SignMatrix b(r, c, -1);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (at(i, j) == +1) b.set(i, j, +1);
        return b;
    }

    friend bool operator==(const SignMatrix& a, const SignMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.bits_ == b.bits_;
    }

private:
    std::size_t rows_, cols_, wpr_;
    std::vector<std::uint64_t> bits_;
};

}  // namespace gb
