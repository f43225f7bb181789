#include "btt/sparse.hpp"

#include <sstream>

namespace btt {

SparseMatrix::SparseMatrix(const FieldSpec& f, int rows, int cols)
    : field_(f), rows_(rows), cols_(cols), data_(static_cast<size_t>(rows))
{
    BTT_REQUIRE(rows >= 0 && cols >= 0, "negative matrix dimension");
}

SparseMatrix SparseMatrix::identity(const FieldSpec& f, int n)
{
    SparseMatrix m(f, n, n);
    for (int i = 0; i < n; ++i)
        m.set(i, i, Scalar::one(f));
    return m;
}

SparseMatrix SparseMatrix::from_dense(const FieldSpec& f, const std::vector<Vec>& rows)
{
    int nc = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    return from_rows(f, rows, nc);
}

SparseMatrix SparseMatrix::from_rows(const FieldSpec& f, const std::vector<Vec>& rows, int cols)
{
    SparseMatrix m(f, static_cast<int>(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        BTT_REQUIRE(static_cast<int>(rows[i].size()) == cols, "row length mismatch");
        for (int j = 0; j < cols; ++j)
            if (!rows[i][j].is_zero())
                m.data_[i].emplace(j, rows[i][j]);
    }
    return m;
}

SparseMatrix SparseMatrix::from_cols(const FieldSpec& f, const std::vector<Vec>& cols, int rows)
{
    SparseMatrix m(f, rows, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) {
        BTT_REQUIRE(static_cast<int>(cols[j].size()) == rows, "column length mismatch");
        for (int i = 0; i < rows; ++i)
            if (!cols[j][i].is_zero())
                m.data_[static_cast<size_t>(i)].emplace(static_cast<int>(j), cols[j][i]);
    }
    return m;
}

void SparseMatrix::check_index(int i, int j) const
{
    BTT_REQUIRE(i >= 0 && i < rows_ && j >= 0 && j < cols_, "matrix index out of range");
}

Scalar SparseMatrix::at(int i, int j) const
{
    check_index(i, j);
    auto it = data_[static_cast<size_t>(i)].find(j);
    return it == data_[static_cast<size_t>(i)].end() ? Scalar::zero(field_) : it->second;
}

void SparseMatrix::set(int i, int j, const Scalar& v)
{
    check_index(i, j);
    if (v.is_zero())
        data_[static_cast<size_t>(i)].erase(j);
    else
        data_[static_cast<size_t>(i)][j] = v;
}

void SparseMatrix::add_to(int i, int j, const Scalar& v)
{
    set(i, j, at(i, j) + v);
}

const std::map<int, Scalar>& SparseMatrix::row(int i) const
{
    BTT_REQUIRE(i >= 0 && i < rows_, "row index out of range");
    return data_[static_cast<size_t>(i)];
}

bool SparseMatrix::is_zero() const
{
    for (const auto& r : data_)
        if (!r.empty())
            return false;
    return true;
}

int SparseMatrix::nnz() const
{
    int n = 0;
    for (const auto& r : data_)
        n += static_cast<int>(r.size());
    return n;
}

Vec SparseMatrix::apply(const Vec& x) const
{
    BTT_REQUIRE(static_cast<int>(x.size()) == cols_, "matrix-vector dimension mismatch");
    Vec y = zero_vec(field_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (const auto& [j, v] : data_[static_cast<size_t>(i)])
            y[static_cast<size_t>(i)] += v * x[static_cast<size_t>(j)];
    return y;
}

Vec SparseMatrix::row_vec(int i) const
{
    Vec r = zero_vec(field_, cols_);
    for (const auto& [j, v] : row(i))
        r[static_cast<size_t>(j)] = v;
    return r;
}

Vec SparseMatrix::col_vec(int j) const
{
    BTT_REQUIRE(j >= 0 && j < cols_, "column index out of range");
    Vec c = zero_vec(field_, rows_);
    for (int i = 0; i < rows_; ++i) {
        auto it = data_[static_cast<size_t>(i)].find(j);
        if (it != data_[static_cast<size_t>(i)].end())
            c[static_cast<size_t>(i)] = it->second;
    }
    return c;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const
{
    BTT_REQUIRE(rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_,
                "matrix shape/field mismatch in addition");
    SparseMatrix m(*this);
    for (int i = 0; i < rows_; ++i)
        for (const auto& [j, v] : o.data_[static_cast<size_t>(i)])
            m.add_to(i, j, v);
    return m;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const
{
    return *this + o.scaled(-Scalar::one(field_));
}

SparseMatrix SparseMatrix::scaled(const Scalar& c) const
{
    SparseMatrix m(field_, rows_, cols_);
    if (c.is_zero())
        return m;
    for (int i = 0; i < rows_; ++i)
        for (const auto& [j, v] : data_[static_cast<size_t>(i)])
            m.data_[static_cast<size_t>(i)].emplace(j, c * v);
    return m;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const
{
    BTT_REQUIRE(cols_ == o.rows_ && field_ == o.field_, "matrix shape/field mismatch in product");
    SparseMatrix m(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (const auto& [k, v] : data_[static_cast<size_t>(i)])
            for (const auto& [j, w] : o.data_[static_cast<size_t>(k)])
                m.add_to(i, j, v * w);
    return m;
}

SparseMatrix SparseMatrix::transpose() const
{
    SparseMatrix m(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (const auto& [j, v] : data_[static_cast<size_t>(i)])
            m.data_[static_cast<size_t>(j)].emplace(i, v);
    return m;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_)
        return false;
    for (int i = 0; i < rows_; ++i)
        if (data_[static_cast<size_t>(i)] != o.data_[static_cast<size_t>(i)])
            return false;
    return true;
}

SparseMatrix SparseMatrix::vstack(const SparseMatrix& top, const SparseMatrix& bottom)
{
    BTT_REQUIRE(top.cols_ == bottom.cols_ && top.field_ == bottom.field_, "vstack mismatch");
    SparseMatrix m(top.field_, top.rows_ + bottom.rows_, top.cols_);
    for (int i = 0; i < top.rows_; ++i)
        m.data_[static_cast<size_t>(i)] = top.data_[static_cast<size_t>(i)];
    for (int i = 0; i < bottom.rows_; ++i)
        m.data_[static_cast<size_t>(top.rows_ + i)] = bottom.data_[static_cast<size_t>(i)];
    return m;
}

SparseMatrix SparseMatrix::hstack(const SparseMatrix& left, const SparseMatrix& right)
{
    BTT_REQUIRE(left.rows_ == right.rows_ && left.field_ == right.field_, "hstack mismatch");
    SparseMatrix m(left.field_, left.rows_, left.cols_ + right.cols_);
    for (int i = 0; i < left.rows_; ++i) {
        m.data_[static_cast<size_t>(i)] = left.data_[static_cast<size_t>(i)];
        for (const auto& [j, v] : right.data_[static_cast<size_t>(i)])
            m.data_[static_cast<size_t>(i)].emplace(left.cols_ + j, v);
    }
    return m;
}

std::string SparseMatrix::str() const
{
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << "[";
        for (int j = 0; j < cols_; ++j)
            os << (j ? " " : "") << at(i, j).str();
        os << "]\n";
    }
    return os.str();
}

} // namespace btt
