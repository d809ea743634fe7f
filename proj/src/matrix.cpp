#include "abloc/matrix.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace abloc {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0)
{
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw std::invalid_argument("ragged matrix literal");
        for (long v : row)
            data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transposed() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const Integer& factor)
{
    for (std::size_t j = 0; j < cols_; ++j)
        (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const Integer& factor)
{
    for (std::size_t i = 0; i < rows_; ++i)
        (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r)
{
    for (std::size_t j = 0; j < cols_; ++j)
        (*this)(r, j) = -(*this)(r, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product: dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

std::vector<Integer> SmithForm::invariants() const
{
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(diagonal.rows(), diagonal.cols()); ++i)
        out.push_back(diagonal(i, i));
    return out;
}

namespace {

struct Pos {
    std::size_t row, col;
};

std::optional<Pos> smallest_entry(const IntMatrix& a, std::size_t t)
{
    std::optional<Pos> best;
    for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j) {
            if (a(i, j) == 0)
                continue;
            if (!best || mpz_cmpabs(a(i, j).get_mpz_t(), a(best->row, best->col).get_mpz_t()) < 0)
                best = Pos{i, j};
        }
    return best;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m)
{
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    IntMatrix v = IntMatrix::identity(m.cols());
    const std::size_t diag = std::min(m.rows(), m.cols());

    for (std::size_t t = 0; t < diag; ++t) {
        auto pivot = smallest_entry(a, t);
        if (!pivot)
            break;
        while (true) {
            a.swap_rows(t, pivot->row);
            u.swap_rows(t, pivot->row);
            a.swap_cols(t, pivot->col);
            v.swap_cols(t, pivot->col);

            bool clean = true;
            for (std::size_t i = t + 1; i < a.rows(); ++i) {
                if (a(i, t) == 0)
                    continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                a.add_row(i, t, -q);
                u.add_row(i, t, -q);
                clean = clean && a(i, t) == 0;
            }
            for (std::size_t j = t + 1; j < a.cols(); ++j) {
                if (a(t, j) == 0)
                    continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                a.add_col(j, t, -q);
                v.add_col(j, t, -q);
                clean = clean && a(t, j) == 0;
            }
            if (clean) {
                // Divisibility: fold an offending row into the pivot row and retry.
                std::optional<std::size_t> offending;
                for (std::size_t i = t + 1; i < a.rows() && !offending; ++i)
                    for (std::size_t j = t + 1; j < a.cols(); ++j)
                        if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                            offending = i;
                            break;
                        }
                if (!offending)
                    break;
                a.add_row(t, *offending, 1);
                u.add_row(t, *offending, 1);
            }
            pivot = smallest_entry(a, t);
        }
        if (a(t, t) < 0) {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    return {std::move(a), std::move(u), std::move(v)};
}

IntMatrix unimodular_inverse(const IntMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("unimodular_inverse: matrix not square");
    // Row-reduce [m | I] using only unimodular operations.
    const std::size_t n = m.rows();
    IntMatrix a = m;
    IntMatrix inv = IntMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        while (true) {
            std::optional<std::size_t> best;
            for (std::size_t i = c; i < n; ++i)
                if (a(i, c) != 0 && (!best || mpz_cmpabs(a(i, c).get_mpz_t(), a(*best, c).get_mpz_t()) < 0))
                    best = i;
            if (!best)
                throw std::domain_error("unimodular_inverse: singular matrix");
            a.swap_rows(c, *best);
            inv.swap_rows(c, *best);
            bool done = true;
            for (std::size_t i = c + 1; i < n; ++i) {
                if (a(i, c) == 0)
                    continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(c, c).get_mpz_t());
                a.add_row(i, c, -q);
                inv.add_row(i, c, -q);
                done = done && a(i, c) == 0;
            }
            if (done)
                break;
        }
        if (abs(a(c, c)) != 1)
            throw std::domain_error("unimodular_inverse: determinant is not +-1");
        if (a(c, c) < 0) {
            a.negate_row(c);
            inv.negate_row(c);
        }
    }
    for (std::size_t c = n; c-- > 0;)
        for (std::size_t i = 0; i < c; ++i)
            if (a(i, c) != 0) {
                Integer q = a(i, c);
                a.add_row(i, c, -q);
                inv.add_row(i, c, -q);
            }
    return inv;
}

}  // namespace abloc
