#pragma once

#include "scalar.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace periodpoly {

template <class F>
struct Matrix {
    size_t rows = 0, cols = 0;
    std::vector<F> data;

    Matrix() = default;
    Matrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, F(0)) {}

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }
    static Matrix from_columns(const std::vector<std::vector<F>>& cols, size_t nrows) {
        Matrix m(nrows, cols.size());
        for (size_t j = 0; j < cols.size(); ++j)
            for (size_t i = 0; i < nrows; ++i) m(i, j) = cols[j][i];
        return m;
    }

    F& operator()(size_t i, size_t j) { return data[i * cols + j]; }
    const F& operator()(size_t i, size_t j) const { return data[i * cols + j]; }

    std::vector<F> column(size_t j) const {
        std::vector<F> v(rows);
        for (size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }
    std::vector<F> row(size_t i) const { return {data.begin() + i * cols, data.begin() + (i + 1) * cols}; }

    F trace() const {
        F t(0);
        for (size_t i = 0; i < std::min(rows, cols); ++i) t += (*this)(i, i);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols != b.rows) throw std::invalid_argument("matrix product: dimension mismatch");
        Matrix r(a.rows, b.cols);
        for (size_t i = 0; i < a.rows; ++i)
            for (size_t k = 0; k < a.cols; ++k) {
                const F& x = a(i, k);
                if (is_zero(x)) continue;
                for (size_t j = 0; j < b.cols; ++j) r(i, j) += x * b(k, j);
            }
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("matrix difference: dimension mismatch");
        Matrix r = a;
        for (size_t i = 0; i < r.data.size(); ++i) r.data[i] -= b.data[i];
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
    }
    bool is_zero_matrix() const {
        for (auto& x : data)
            if (!is_zero(x)) return false;
        return true;
    }
};

template <class F>
using SparseRow = std::vector<std::pair<size_t, F>>;

template <class F>
SparseRow<F> to_sparse(const std::vector<F>& v) {
    SparseRow<F> r;
    for (size_t i = 0; i < v.size(); ++i)
        if (!is_zero(v[i])) r.emplace_back(i, v[i]);
    return r;
}

// Incremental exact Gauss-Jordan elimination over row-sparse storage.
// Pivoting is by leftmost nonzero column; pivot rows are stored monic.
template <class F>
class RowEchelon {
public:
    explicit RowEchelon(size_t ncols) : ncols_(ncols), row_of_col_(ncols, -1), acc_(ncols, F(0)), mark_(ncols, 0) {}

    static RowEchelon from_rows(size_t ncols, const std::vector<std::vector<F>>& rows) {
        RowEchelon e(ncols);
        for (auto& r : rows) e.insert_dense(r);
        return e;
    }

    size_t ncols() const { return ncols_; }
    size_t rank() const { return rows_.size(); }

    // Returns true when the row was independent of the rows inserted so far.
    bool insert(const SparseRow<F>& row) {
        SparseRow<F> r = reduce(row, [](long) { return true; });
        if (r.empty()) return false;
        F lead = r.front().second;
        if (!(lead == F(1))) {
            F inv = F(1) / lead;
            for (auto& e : r) e.second *= inv;
        }
        row_of_col_[r.front().first] = static_cast<long>(rows_.size());
        rows_.push_back(std::move(r));
        finalized_ = false;
        return true;
    }
    bool insert_dense(const std::vector<F>& v) { return insert(to_sparse(v)); }

    // Reduces to reduced row echelon form and sorts rows by pivot column.
    void finalize() {
        if (finalized_) return;
        for (long i = static_cast<long>(rows_.size()) - 1; i >= 0; --i)
            rows_[i] = reduce(rows_[i], [i](long r) { return r > i; });
        std::sort(rows_.begin(), rows_.end(), [](const SparseRow<F>& a, const SparseRow<F>& b) {
            return a.front().first < b.front().first;
        });
        std::fill(row_of_col_.begin(), row_of_col_.end(), -1);
        for (size_t i = 0; i < rows_.size(); ++i) row_of_col_[rows_[i].front().first] = static_cast<long>(i);
        finalized_ = true;
    }

    const std::vector<SparseRow<F>>& rows() const { return rows_; }
    std::vector<size_t> pivots() const {
        std::vector<size_t> p;
        for (auto& r : rows_) p.push_back(r.front().first);
        return p;
    }
    bool is_pivot(size_t col) const { return row_of_col_[col] >= 0; }

    // Residual of v after reduction by the current rows (empty iff v is in the span).
    SparseRow<F> residual(const SparseRow<F>& v) { return reduce(v, [](long) { return true; }); }

    std::vector<std::vector<F>> dense_rows() const {
        std::vector<std::vector<F>> out;
        for (auto& r : rows_) {
            std::vector<F> v(ncols_, F(0));
            for (auto& [j, x] : r) v[j] = x;
            out.push_back(std::move(v));
        }
        return out;
    }

    // Basis of the right null space, returned in reduced echelon form.
    std::vector<std::vector<F>> kernel() {
        finalize();
        std::vector<long> free_index(ncols_, -1);
        size_t nfree = 0;
        for (size_t c = 0; c < ncols_; ++c)
            if (row_of_col_[c] < 0) free_index[c] = static_cast<long>(nfree++);
        std::vector<SparseRow<F>> vecs(nfree);
        for (size_t c = 0; c < ncols_; ++c)
            if (free_index[c] >= 0) vecs[free_index[c]].emplace_back(c, F(1));
        for (auto& r : rows_) {
            size_t p = r.front().first;
            for (auto& [j, x] : r)
                if (j != p) vecs[free_index[j]].emplace_back(p, -x);
        }
        RowEchelon<F> out(ncols_);
        for (auto& v : vecs) {
            std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            out.insert(v);
        }
        out.finalize();
        return out.dense_rows();
    }

private:
    template <class Allow>
    SparseRow<F> reduce(const SparseRow<F>& row, Allow allow) {
        std::priority_queue<size_t, std::vector<size_t>, std::greater<size_t>> heap;
        std::vector<size_t> touched;
        for (auto& [c, v] : row) {
            if (!mark_[c]) {
                mark_[c] = 1;
                touched.push_back(c);
                heap.push(c);
            }
            acc_[c] += v;
        }
        while (!heap.empty()) {
            size_t c = heap.top();
            heap.pop();
            if (is_zero(acc_[c])) continue;
            long r = row_of_col_[c];
            if (r < 0 || !allow(r)) continue;
            F f = acc_[c];
            for (auto& [j, v] : rows_[r]) {
                if (!mark_[j]) {
                    mark_[j] = 1;
                    touched.push_back(j);
                    heap.push(j);
                }
                acc_[j] -= f * v;
            }
        }
        std::sort(touched.begin(), touched.end());
        SparseRow<F> out;
        for (size_t c : touched) {
            if (!is_zero(acc_[c])) out.emplace_back(c, std::move(acc_[c]));
            acc_[c] = F(0);
            mark_[c] = 0;
        }
        return out;
    }

    size_t ncols_;
    std::vector<SparseRow<F>> rows_;
    std::vector<long> row_of_col_;
    std::vector<F> acc_;
    std::vector<char> mark_;
    bool finalized_ = true;
};

template <class F>
RowEchelon<F> echelon_of(const Matrix<F>& m) {
    RowEchelon<F> e(m.cols);
    for (size_t i = 0; i < m.rows; ++i) e.insert_dense(m.row(i));
    e.finalize();
    return e;
}

template <class F>
size_t rank(const Matrix<F>& m) {
    static_assert(is_exact_field<F>::value, "rank is defined over exact fields only");
    return echelon_of(m).rank();
}

template <class F>
std::pair<Matrix<F>, std::vector<size_t>> rref(const Matrix<F>& m) {
    auto e = echelon_of(m);
    Matrix<F> r(e.rank(), m.cols);
    auto rows = e.dense_rows();
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < m.cols; ++j) r(i, j) = rows[i][j];
    return {r, e.pivots()};
}

// Columns of the result span the right null space (reduced column-echelon form).
template <class F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
    static_assert(is_exact_field<F>::value, "kernels are exact-only");
    auto e = echelon_of(m);
    return Matrix<F>::from_columns(e.kernel(), m.cols);
}

template <class F>
Matrix<F> eigen_kernel(const Matrix<F>& m, const F& lam) {
    if (m.rows != m.cols) throw std::invalid_argument("eigen_kernel: matrix is not square");
    Matrix<F> a = m;
    for (size_t i = 0; i < m.rows; ++i) a(i, i) -= lam;
    return kernel_basis(a);
}

// Solves a x = b exactly; returns nullopt-like empty vector flag via bool.
template <class F>
bool solve(const Matrix<F>& a, const std::vector<F>& b, std::vector<F>& x) {
    Matrix<F> aug(a.rows, a.cols + 1);
    for (size_t i = 0; i < a.rows; ++i) {
        for (size_t j = 0; j < a.cols; ++j) aug(i, j) = a(i, j);
        aug(i, a.cols) = b[i];
    }
    auto e = echelon_of(aug);
    x.assign(a.cols, F(0));
    for (auto& r : e.rows()) {
        size_t p = r.front().first;
        if (p == a.cols) return false;
        for (auto& [j, v] : r)
            if (j == a.cols) x[p] = v;
    }
    return true;
}

// Run-time tagged dense matrix over one scalar field.
class DenseMatrix {
public:
    using Storage = std::variant<Matrix<Rational>, Matrix<Cyclotomic>, Matrix<ComplexBall>>;

    DenseMatrix() : m_(Matrix<Rational>()) {}
    template <class F>
    DenseMatrix(Matrix<F> m) : m_(std::move(m)) {}

    FieldKind field() const { return static_cast<FieldKind>(m_.index()); }
    size_t rows() const {
        return std::visit([](const auto& m) { return m.rows; }, m_);
    }
    size_t cols() const {
        return std::visit([](const auto& m) { return m.cols; }, m_);
    }
    Scalar at(size_t i, size_t j) const {
        return std::visit([&](const auto& m) -> Scalar { return m(i, j); }, m_);
    }
    const Storage& storage() const { return m_; }
    template <class F>
    const Matrix<F>& as() const { return std::get<Matrix<F>>(m_); }

private:
    Storage m_;
};

inline DenseMatrix kernel_basis(const DenseMatrix& m) {
    return std::visit(
        [](const auto& x) -> DenseMatrix {
            using M = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<M, Matrix<ComplexBall>>) {
                throw std::invalid_argument("kernel_basis: complex-float entries are not exact");
            } else {
                return DenseMatrix(kernel_basis(x));
            }
        },
        m.storage());
}

inline DenseMatrix eigen_kernel(const DenseMatrix& m, const Scalar& lam) {
    return std::visit(
        [&](const auto& x) -> DenseMatrix {
            using M = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<M, Matrix<ComplexBall>>) {
                throw std::invalid_argument("eigen_kernel: complex-float entries are not exact");
            } else if constexpr (std::is_same_v<M, Matrix<Rational>>) {
                if (std::holds_alternative<Rational>(lam)) return DenseMatrix(eigen_kernel(x, std::get<Rational>(lam)));
                if (std::holds_alternative<Cyclotomic>(lam)) {
                    Matrix<Cyclotomic> y(x.rows, x.cols);
                    for (size_t i = 0; i < x.data.size(); ++i) y.data[i] = Cyclotomic(x.data[i]);
                    return DenseMatrix(eigen_kernel(y, std::get<Cyclotomic>(lam)));
                }
                throw std::invalid_argument("eigen_kernel: eigenvalue field mismatch");
            } else {
                Cyclotomic l = std::holds_alternative<Rational>(lam) ? Cyclotomic(std::get<Rational>(lam))
                                                                      : std::get<Cyclotomic>(lam);
                return DenseMatrix(eigen_kernel(x, l));
            }
        },
        m.storage());
}

}  // namespace periodpoly
