#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <vertexflow/gauss_rational.hpp>

namespace vertexflow {

// Sparse row over Q(i): strictly increasing column indices, no zero entries.
using SparseRow = std::vector<std::pair<int, GaussRational>>;

// Incremental Gauss-Jordan elimination. Column index order is pivot priority: the
// leading (smallest) column of a new independent row becomes its pivot, and every
// stored row is kept fully reduced against all other pivots. Consequently, if
// columns are sorted by decreasing weight, the rows whose pivot lies in a
// low-weight block span exactly the intersection of the row space with that block.
class RowReducer {
public:
    explicit RowReducer(std::size_t ncols, bool track_combinations = false);

    std::size_t ncols() const noexcept { return ncols_; }
    std::size_t rank() const noexcept { return rows_.size(); }

    // Returns true when the row increases the rank. `tag` names the input row in
    // recorded combinations.
    bool add(const SparseRow &row, int tag = -1);

    // Residual of `row` after subtracting its projection on the span; only free
    // columns can survive. When `combination` is given (and tracking is on) it
    // receives coefficients c_t with row = residual + sum_t c_t * input_t.
    SparseRow reduce(const SparseRow &row, SparseRow *combination = nullptr) const;
    bool in_span(const SparseRow &row) const { return reduce(row).empty(); }

    bool is_pivot(int col) const { return pivot_of_col_[static_cast<std::size_t>(col)] >= 0; }
    // Stored reduced rows, and their pivot columns (parallel arrays).
    const std::vector<SparseRow> &rows() const noexcept { return rows_; }
    const std::vector<int> &pivots() const noexcept { return pivots_; }
    std::vector<int> free_columns() const;

private:
    std::size_t ncols_;
    bool track_;
    std::vector<SparseRow> rows_;
    std::vector<SparseRow> combos_;
    std::vector<int> pivots_;
    std::vector<int> pivot_of_col_;
};

SparseRow axpy(const SparseRow &x, const GaussRational &a, const SparseRow &y); // x + a*y

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    GaussRational &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const GaussRational &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const;
    friend bool operator==(const Matrix &a, const Matrix &b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator+(const Matrix &a, const Matrix &b);
    friend Matrix operator-(const Matrix &a, const Matrix &b);
    friend Matrix operator*(const Matrix &a, const Matrix &b);
    friend Matrix operator*(const GaussRational &s, const Matrix &a);

    std::size_t rank() const;
    // Basis of {x : A x = 0}, one column vector per entry.
    std::vector<std::vector<GaussRational>> kernel() const;
    // Throws std::domain_error when singular.
    Matrix inverse() const;
    Matrix pow(unsigned e) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<GaussRational> data_;
};

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix &m);

} // namespace vertexflow
