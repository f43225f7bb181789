#pragma once

#include "btt/scalar.hpp"

#include <map>
#include <vector>

namespace btt {

// Sparse matrix over an exact field. Rows are maps col -> nonzero scalar;
// stored entries are always nonzero and indices stay within bounds.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(const FieldSpec& f, int rows, int cols);

    static SparseMatrix identity(const FieldSpec& f, int n);
    static SparseMatrix from_dense(const FieldSpec& f, const std::vector<Vec>& rows);
    static SparseMatrix from_rows(const FieldSpec& f, const std::vector<Vec>& rows, int cols);
    static SparseMatrix from_cols(const FieldSpec& f, const std::vector<Vec>& cols, int rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }

    Scalar at(int i, int j) const;
    void set(int i, int j, const Scalar& v);
    void add_to(int i, int j, const Scalar& v);
    const std::map<int, Scalar>& row(int i) const;

    bool is_zero() const;
    int nnz() const;

    Vec apply(const Vec& x) const;
    Vec row_vec(int i) const;
    Vec col_vec(int j) const;

    SparseMatrix operator+(const SparseMatrix& o) const;
    SparseMatrix operator-(const SparseMatrix& o) const;
    SparseMatrix scaled(const Scalar& c) const;
    // Matrix product this * o (composition: apply o first).
    SparseMatrix operator*(const SparseMatrix& o) const;
    SparseMatrix transpose() const;

    bool operator==(const SparseMatrix& o) const;
    bool operator!=(const SparseMatrix& o) const { return !(*this == o); }

    static SparseMatrix vstack(const SparseMatrix& top, const SparseMatrix& bottom);
    static SparseMatrix hstack(const SparseMatrix& left, const SparseMatrix& right);

    std::string str() const;

private:
    void check_index(int i, int j) const;

    FieldSpec field_;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::map<int, Scalar>> data_;
};

} // namespace btt
