#include "frob/spmat.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "frob/summation.hpp"

namespace frob {

SpMat SpMat::from_dense(int rows, int cols, const Vec& row_major) {
    if (static_cast<std::size_t>(rows) * cols != row_major.size())
        throw std::invalid_argument("from_dense: size mismatch");
    SpMat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        m.begin_row();
        for (int c = 0; c < cols; ++c) {
            double v = row_major[static_cast<std::size_t>(r) * cols + c];
            if (v != 0.0) m.push(c, v);
        }
    }
    m.finalize();
    return m;
}

SpMat SpMat::identity(int n) {
    SpMat m(n, n);
    for (int r = 0; r < n; ++r) {
        m.begin_row();
        m.push(r, 1.0);
    }
    m.finalize();
    return m;
}

void SpMat::begin_row() {
    ++build_row_;
    if (build_row_ >= rows_) throw std::logic_error("SpMat: too many rows");
    row_start_[build_row_ + 1] = row_start_[build_row_];
}

void SpMat::push(int col, double value) {
    if (build_row_ < 0) throw std::logic_error("SpMat: push before begin_row");
    if (col < 0 || col >= cols_) throw std::out_of_range("SpMat: column out of range");
    const std::size_t end = row_start_[build_row_ + 1];
    if (end > row_start_[build_row_] && col_[end - 1] >= col)
        throw std::logic_error("SpMat: columns must be strictly ascending within a row");
    col_.push_back(col);
    val_.push_back(value);
    ++row_start_[build_row_ + 1];
}

void SpMat::finalize() {
    for (int r = build_row_ + 1; r < rows_; ++r) row_start_[r + 1] = row_start_[r];
    build_row_ = rows_ - 1;
    finalized_ = true;
}

void SpMat::apply(const double* x, double* y) const {
    for (int r = 0; r < rows_; ++r) {
        double acc = 0.0;
        for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) acc += val_[k] * x[col_[k]];
        y[r] = acc;
    }
}

Vec SpMat::apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("SpMat::apply: dimension mismatch");
    Vec y(rows_);
    apply(x.data(), y.data());
    return y;
}

double SpMat::frobenius_sq() const {
    KahanSum s;
    for (double v : val_) s.add(v * v);
    return s.value();
}

double SpMat::frobenius() const { return std::sqrt(frobenius_sq()); }

SpMat SpMat::multiply(const SpMat& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("SpMat::multiply: dimension mismatch");
    SpMat out(rows_, rhs.cols_);
    out.reserve(nnz());
    std::vector<double> acc(rhs.cols_, 0.0);
    std::vector<char> used(rhs.cols_, 0);
    std::vector<int> touched;
    for (int r = 0; r < rows_; ++r) {
        touched.clear();
        for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
            const int w = col_[k];
            const double a = val_[k];
            for (std::size_t j = rhs.row_start_[w]; j < rhs.row_start_[w + 1]; ++j) {
                const int m = rhs.col_[j];
                if (!used[m]) {
                    used[m] = 1;
                    acc[m] = 0.0;
                    touched.push_back(m);
                }
                acc[m] += a * rhs.val_[j];
            }
        }
        std::sort(touched.begin(), touched.end());
        out.begin_row();
        for (int m : touched) {
            out.push(m, acc[m]);
            used[m] = 0;
        }
    }
    out.finalize();
    return out;
}

SpMat SpMat::scaled(double c) const {
    SpMat out = *this;
    for (auto& v : out.val_) v *= c;
    return out;
}

SpMat SpMat::negated() const {
    SpMat out = *this;
    for (auto& v : out.val_) v = -v;
    return out;
}

Vec SpMat::to_dense() const {
    Vec d(static_cast<std::size_t>(rows_) * cols_, 0.0);
    for_each([&](int r, int c, double v) { d[static_cast<std::size_t>(r) * cols_ + c] = v; });
    return d;
}

bool SpMat::all_finite() const {
    for (double v : val_)
        if (!std::isfinite(v)) return false;
    return true;
}

SpMat vstack(const std::vector<const SpMat*>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("vstack: empty");
    const int cols = blocks[0]->cols();
    int rows = 0;
    std::size_t nnz = 0;
    for (const auto* b : blocks) {
        if (b->cols() != cols) throw std::invalid_argument("vstack: column mismatch");
        rows += b->rows();
        nnz += b->nnz();
    }
    SpMat out(rows, cols);
    out.reserve(nnz);
    for (const auto* b : blocks) {
        for (int r = 0; r < b->rows(); ++r) {
            out.begin_row();
            for (std::size_t k = b->row_begin(r); k < b->row_end(r); ++k)
                out.push(b->entry_col(k), b->entry_val(k));
        }
    }
    out.finalize();
    return out;
}

SpMat hstack(const std::vector<const SpMat*>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("hstack: empty");
    const int rows = blocks[0]->rows();
    int cols = 0;
    std::size_t nnz = 0;
    for (const auto* b : blocks) {
        if (b->rows() != rows) throw std::invalid_argument("hstack: row mismatch");
        cols += b->cols();
        nnz += b->nnz();
    }
    SpMat out(rows, cols);
    out.reserve(nnz);
    for (int r = 0; r < rows; ++r) {
        out.begin_row();
        int offset = 0;
        for (const auto* b : blocks) {
            for (std::size_t k = b->row_begin(r); k < b->row_end(r); ++k)
                out.push(offset + b->entry_col(k), b->entry_val(k));
            offset += b->cols();
        }
    }
    out.finalize();
    return out;
}

SpMat block_diag(const std::vector<const SpMat*>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("block_diag: empty");
    int rows = 0, cols = 0;
    std::size_t nnz = 0;
    for (const auto* b : blocks) {
        rows += b->rows();
        cols += b->cols();
        nnz += b->nnz();
    }
    SpMat out(rows, cols);
    out.reserve(nnz);
    int col_offset = 0;
    for (const auto* b : blocks) {
        for (int r = 0; r < b->rows(); ++r) {
            out.begin_row();
            for (std::size_t k = b->row_begin(r); k < b->row_end(r); ++k)
                out.push(col_offset + b->entry_col(k), b->entry_val(k));
        }
        col_offset += b->cols();
    }
    out.finalize();
    return out;
}

SpMat scatter_columns(const SpMat& a, int total_cols, const std::vector<int>& col_map) {
    if (static_cast<int>(col_map.size()) != a.cols())
        throw std::invalid_argument("scatter_columns: map size mismatch");
    {
        std::vector<int> sorted = col_map;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t j = 1; j < sorted.size(); ++j)
            if (sorted[j] == sorted[j - 1]) throw std::invalid_argument("scatter_columns: map must be injective");
    }
    SpMat out(a.rows(), total_cols);
    out.reserve(a.nnz());
    std::vector<std::pair<int, double>> row;
    for (int r = 0; r < a.rows(); ++r) {
        row.clear();
        for (std::size_t k = a.row_begin(r); k < a.row_end(r); ++k)
            row.emplace_back(col_map[a.entry_col(k)], a.entry_val(k));
        std::sort(row.begin(), row.end());
        out.begin_row();
        for (const auto& [c, v] : row) out.push(c, v);
    }
    out.finalize();
    return out;
}

} // namespace frob
