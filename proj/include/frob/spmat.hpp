#pragma once

#include <cstdint>
#include <vector>

namespace frob {

using Vec = std::vector<double>;

// Row-major sparse matrix (CSR with per-row column-sorted entries).
//
// Compiled networks are mostly block-diagonal, so dense storage of the big
// combined layers is out of reach; CSR keeps the cost proportional to the
// structural weight count. Evaluation accumulates each row strictly in
// column order, which the assembly code relies on for exact cancellation of
// paired +/- units.
class SpMat {
public:
    SpMat() : rows_(0), cols_(0) {}
    SpMat(int rows, int cols) : rows_(rows), cols_(cols), row_start_(rows + 1, 0) {}

    static SpMat from_dense(int rows, int cols, const Vec& row_major);
    static SpMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t nnz() const { return col_.size(); }

    // Builder interface: push entries row by row, columns ascending within a
    // row. finalize() checks ordering.
    void begin_row();
    void push(int col, double value);
    void finalize();
    bool finalized() const { return finalized_; }

    // y = A x   (y sized rows(), overwritten)
    void apply(const double* x, double* y) const;
    Vec apply(const Vec& x) const;

    double frobenius_sq() const;
    double frobenius() const;

    SpMat multiply(const SpMat& rhs) const; // this * rhs
    SpMat scaled(double c) const;
    SpMat negated() const;

    Vec to_dense() const; // row-major, rows*cols entries

    bool all_finite() const;

    // Entry access for audits/serialization.
    template <typename F>
    void for_each(F&& f) const {
        for (int r = 0; r < rows_; ++r)
            for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) f(r, col_[k], val_[k]);
    }

    std::size_t row_begin(int r) const { return row_start_[r]; }
    std::size_t row_end(int r) const { return row_start_[r + 1]; }
    int entry_col(std::size_t k) const { return col_[k]; }
    double entry_val(std::size_t k) const { return val_[k]; }
    double& entry_val_mut(std::size_t k) { return val_[k]; }

    void reserve(std::size_t n) {
        col_.reserve(n);
        val_.reserve(n);
    }

private:
    int rows_, cols_;
    std::vector<std::size_t> row_start_;
    std::vector<int> col_;
    std::vector<double> val_;
    int build_row_ = -1;
    bool finalized_ = false;
};

// Structural combinators used by the network algebra.
//
// vstack: [A; B] (same cols). hstack: [A, B] (same rows).
// block_diag: diag(A_1, ..., A_n).
SpMat vstack(const std::vector<const SpMat*>& blocks);
SpMat hstack(const std::vector<const SpMat*>& blocks);
SpMat block_diag(const std::vector<const SpMat*>& blocks);

// Column scatter: place the columns of A into a wider matrix with
// total_cols columns, column j of A landing at col_map[j].
SpMat scatter_columns(const SpMat& a, int total_cols, const std::vector<int>& col_map);

} // namespace frob
