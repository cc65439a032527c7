#include <vertexflow/linalg.hpp>

#include <algorithm>
#include <stdexcept>

namespace vertexflow {

namespace {

// Dense accumulator that remembers which slots were touched.
class Accumulator {
public:
    explicit Accumulator(std::size_t n) : vals_(n), used_(n, 0) {}

    void add(int col, const GaussRational &v)
    {
        auto c = static_cast<std::size_t>(col);
        if (!used_[c]) {
            used_[c] = 1;
            touched_.push_back(col);
            vals_[c] = v;
        } else {
            vals_[c] += v;
        }
    }

    SparseRow extract()
    {
        std::sort(touched_.begin(), touched_.end());
        SparseRow out;
        out.reserve(touched_.size());
        for (int col : touched_) {
            auto c = static_cast<std::size_t>(col);
            if (!vals_[c].is_zero()) out.emplace_back(col, std::move(vals_[c]));
            vals_[c] = GaussRational{};
            used_[c] = 0;
        }
        touched_.clear();
        return out;
    }

private:
    std::vector<GaussRational> vals_;
    std::vector<char> used_;
    std::vector<int> touched_;
};

const GaussRational *find_entry(const SparseRow &row, int col)
{
    auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto &e, int c) { return e.first < c; });
    if (it != row.end() && it->first == col) return &it->second;
    return nullptr;
}

SparseRow scaled(const SparseRow &row, const GaussRational &s)
{
    SparseRow out;
    out.reserve(row.size());
    for (const auto &[c, v] : row) out.emplace_back(c, v * s);
    return out;
}

} // namespace

SparseRow axpy(const SparseRow &x, const GaussRational &a, const SparseRow &y)
{
    SparseRow out;
    out.reserve(x.size() + y.size());
    auto ix = x.begin();
    auto iy = y.begin();
    while (ix != x.end() || iy != y.end()) {
        if (iy == y.end() || (ix != x.end() && ix->first < iy->first)) {
            out.push_back(*ix++);
        } else if (ix == x.end() || iy->first < ix->first) {
            out.emplace_back(iy->first, a * iy->second);
            ++iy;
        } else {
            GaussRational v = ix->second + a * iy->second;
            if (!v.is_zero()) out.emplace_back(ix->first, std::move(v));
            ++ix;
            ++iy;
        }
    }
    return out;
}

RowReducer::RowReducer(std::size_t ncols, bool track_combinations)
    : ncols_(ncols), track_(track_combinations), pivot_of_col_(ncols, -1)
{
}

SparseRow RowReducer::reduce(const SparseRow &row, SparseRow *combination) const
{
    Accumulator acc(ncols_);
    for (const auto &[c, v] : row) acc.add(c, v);
    SparseRow combo;
    for (const auto &[c, v] : row) {
        const int r = pivot_of_col_[static_cast<std::size_t>(c)];
        if (r < 0) continue;
        const GaussRational f = -v;
        for (const auto &[c2, v2] : rows_[static_cast<std::size_t>(r)]) acc.add(c2, f * v2);
        if (combination != nullptr && track_) combo = axpy(combo, v, combos_[static_cast<std::size_t>(r)]);
    }
    if (combination != nullptr) *combination = std::move(combo);
    return acc.extract();
}

bool RowReducer::add(const SparseRow &row, int tag)
{
    SparseRow combo;
    SparseRow res = reduce(row, track_ ? &combo : nullptr);
    if (res.empty()) return false;
    const int pivot = res.front().first;
    const GaussRational inv = res.front().second.inverse();
    res = scaled(res, inv);
    if (track_) {
        // residual = row - combo, so the new stored row corresponds to (e_tag - combo) * inv.
        SparseRow own{{tag, GaussRational(1)}};
        combo = scaled(axpy(own, GaussRational(-1), combo), inv);
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const GaussRational *e = find_entry(rows_[r], pivot);
        if (e == nullptr) continue;
        const GaussRational f = -*e;
        rows_[r] = axpy(rows_[r], f, res);
        if (track_) combos_[r] = axpy(combos_[r], f, combo);
    }
    pivot_of_col_[static_cast<std::size_t>(pivot)] = static_cast<int>(rows_.size());
    pivots_.push_back(pivot);
    rows_.push_back(std::move(res));
    if (track_) combos_.push_back(std::move(combo));
    return true;
}

std::vector<int> RowReducer::free_columns() const
{
    std::vector<int> out;
    for (std::size_t c = 0; c < ncols_; ++c) {
        if (pivot_of_col_[c] < 0) out.push_back(static_cast<int>(c));
    }
    return out;
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = GaussRational(1);
    return m;
}

bool Matrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const GaussRational &x) { return x.is_zero(); });
}

Matrix operator+(const Matrix &a, const Matrix &b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
}

Matrix operator-(const Matrix &a, const Matrix &b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
}

Matrix operator*(const Matrix &a, const Matrix &b)
{
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const GaussRational &x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
            }
        }
    }
    return out;
}

Matrix operator*(const GaussRational &s, const Matrix &a)
{
    Matrix out = a;
    for (auto &x : out.data_) x *= s;
    return out;
}

std::vector<std::size_t> rref(Matrix &m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row) {
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
        }
        const GaussRational inv = m(row, col).inverse();
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero()) continue;
            const GaussRational f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) {
                if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t Matrix::rank() const
{
    Matrix tmp = *this;
    return rref(tmp).size();
}

std::vector<std::vector<GaussRational>> Matrix::kernel() const
{
    Matrix tmp = *this;
    const auto pivots = rref(tmp);
    std::vector<char> is_pivot(cols_, 0);
    for (auto p : pivots) is_pivot[p] = 1;
    std::vector<std::vector<GaussRational>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        std::vector<GaussRational> v(cols_);
        v[f] = GaussRational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -tmp(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

Matrix Matrix::inverse() const
{
    if (rows_ != cols_) throw std::domain_error("inverse of non-square matrix");
    const std::size_t n = rows_;
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
        aug(i, n + i) = GaussRational(1);
    }
    const auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw std::domain_error("singular matrix");
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    }
    return out;
}

Matrix Matrix::pow(unsigned e) const
{
    Matrix out = identity(rows_);
    for (unsigned k = 0; k < e; ++k) out = out * (*this);
    return out;
}

} // namespace vertexflow
