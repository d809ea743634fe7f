#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "abloc/arith.hpp"

namespace abloc {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix transposed() const;
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += factor * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& factor);
    void add_col(std::size_t dst, std::size_t src, const Integer& factor);
    void negate_row(std::size_t r);

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

struct SmithForm {
    IntMatrix diagonal;  ///< same shape as the input, nonzero only on the diagonal
    IntMatrix left;      ///< U, unimodular
    IntMatrix right;     ///< V, unimodular
    /// Nonnegative diagonal entries d_1 | d_2 | ... (length min(rows, cols)).
    std::vector<Integer> invariants() const;
};

/// U * m * V = D with d_1 | d_2 | ... >= 0.  Pivot: smallest nonzero absolute
/// value in the active block, ties to the lowest (row, col).
SmithForm smith_normal_form(const IntMatrix& m);

/// Inverse of a unimodular matrix (exact; throws if not unimodular).
IntMatrix unimodular_inverse(const IntMatrix& m);

}  // namespace abloc
