#include "btt/linalg.hpp"

#include <algorithm>

namespace btt {

namespace {

// Dense elimination for small matrices, map-based rows above that; the pivot
// policy is identical so both paths produce the same (canonical) RREF.
constexpr int kDenseLimit = 64;

Echelon echelon_dense(const SparseMatrix& m)
{
    const FieldSpec f = m.field();
    const int nr = m.rows(), nc = m.cols();
    std::vector<Vec> a;
    a.reserve(static_cast<size_t>(nr));
    for (int i = 0; i < nr; ++i)
        a.push_back(m.row_vec(i));

    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < nc && r < nr; ++c) {
        int p = -1;
        for (int i = r; i < nr; ++i)
            if (!a[static_cast<size_t>(i)][static_cast<size_t>(c)].is_zero()) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        std::swap(a[static_cast<size_t>(r)], a[static_cast<size_t>(p)]);
        Scalar inv = a[static_cast<size_t>(r)][static_cast<size_t>(c)].inverse();
        for (int j = c; j < nc; ++j)
            a[static_cast<size_t>(r)][static_cast<size_t>(j)] *= inv;
        for (int i = 0; i < nr; ++i) {
            if (i == r)
                continue;
            Scalar v = a[static_cast<size_t>(i)][static_cast<size_t>(c)];
            if (v.is_zero())
                continue;
            for (int j = c; j < nc; ++j)
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                    v * a[static_cast<size_t>(r)][static_cast<size_t>(j)];
        }
        pivots.push_back(c);
        ++r;
    }
    Echelon e;
    e.rref = SparseMatrix::from_rows(f, a, nc);
    e.pivot_cols = std::move(pivots);
    e.rank = r;
    return e;
}

Echelon echelon_sparse(const SparseMatrix& m)
{
    const FieldSpec f = m.field();
    const int nr = m.rows(), nc = m.cols();
    std::vector<std::map<int, Scalar>> a;
    a.reserve(static_cast<size_t>(nr));
    for (int i = 0; i < nr; ++i)
        a.push_back(m.row(i));

    auto axpy = [](std::map<int, Scalar>& dst, const Scalar& c, const std::map<int, Scalar>& src) {
        for (const auto& [j, v] : src) {
            auto it = dst.find(j);
            if (it == dst.end()) {
                Scalar w = c * v;
                if (!w.is_zero())
                    dst.emplace(j, w);
            } else {
                it->second += c * v;
                if (it->second.is_zero())
                    dst.erase(it);
            }
        }
    };

    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < nc && r < nr; ++c) {
        int p = -1;
        for (int i = r; i < nr; ++i) {
            auto it = a[static_cast<size_t>(i)].find(c);
            if (it != a[static_cast<size_t>(i)].end()) {
                p = i;
                break;
            }
        }
        if (p < 0)
            continue;
        std::swap(a[static_cast<size_t>(r)], a[static_cast<size_t>(p)]);
        Scalar inv = a[static_cast<size_t>(r)].at(c).inverse();
        if (!inv.is_one()) {
            for (auto& [j, v] : a[static_cast<size_t>(r)])
                v *= inv;
        }
        for (int i = 0; i < nr; ++i) {
            if (i == r)
                continue;
            auto it = a[static_cast<size_t>(i)].find(c);
            if (it == a[static_cast<size_t>(i)].end())
                continue;
            Scalar coef = -it->second;
            axpy(a[static_cast<size_t>(i)], coef, a[static_cast<size_t>(r)]);
        }
        pivots.push_back(c);
        ++r;
    }

    Echelon e;
    e.rref = SparseMatrix(f, nr, nc);
    for (int i = 0; i < nr; ++i)
        for (const auto& [j, v] : a[static_cast<size_t>(i)])
            e.rref.set(i, j, v);
    e.pivot_cols = std::move(pivots);
    e.rank = r;
    return e;
}

} // namespace

Echelon echelon_form(const SparseMatrix& m)
{
    if (m.rows() < kDenseLimit && m.cols() < kDenseLimit)
        return echelon_dense(m);
    return echelon_sparse(m);
}

int rank(const SparseMatrix& m)
{
    return echelon_form(m).rank;
}

std::optional<Vec> solve(const SparseMatrix& m, const Vec& b)
{
    BTT_REQUIRE(static_cast<int>(b.size()) == m.rows(), "solve: right-hand side length mismatch");
    const FieldSpec f = m.field();
    SparseMatrix rhs = SparseMatrix::from_cols(f, {b}, m.rows());
    Echelon e = echelon_form(SparseMatrix::hstack(m, rhs));
    const int bcol = m.cols();
    for (int c : e.pivot_cols)
        if (c == bcol)
            return std::nullopt; // b not in the image
    Vec x = zero_vec(f, m.cols());
    for (int i = 0; i < e.rank; ++i)
        x[static_cast<size_t>(e.pivot_cols[static_cast<size_t>(i)])] = e.rref.at(i, bcol);
    return x;
}

std::vector<Vec> kernel_basis(const SparseMatrix& m)
{
    const FieldSpec f = m.field();
    Echelon e = echelon_form(m);
    std::vector<bool> is_pivot(static_cast<size_t>(m.cols()), false);
    for (int c : e.pivot_cols)
        is_pivot[static_cast<size_t>(c)] = true;
    std::vector<Vec> basis;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[static_cast<size_t>(c)])
            continue;
        Vec v = zero_vec(f, m.cols());
        v[static_cast<size_t>(c)] = Scalar::one(f);
        for (int i = 0; i < e.rank; ++i) {
            Scalar coef = e.rref.at(i, c);
            if (!coef.is_zero())
                v[static_cast<size_t>(e.pivot_cols[static_cast<size_t>(i)])] = -coef;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Vec> image_basis(const SparseMatrix& m)
{
    Echelon e = echelon_form(m.transpose());
    std::vector<Vec> basis;
    for (int i = 0; i < e.rank; ++i)
        basis.push_back(e.rref.row_vec(i));
    return basis;
}

std::vector<Vec> quotient_basis(const std::vector<Vec>& sub, int ambient_dim, const FieldSpec& f)
{
    Echelon e = echelon_form(SparseMatrix::from_rows(f, sub, ambient_dim));
    std::vector<bool> is_pivot(static_cast<size_t>(ambient_dim), false);
    for (int c : e.pivot_cols)
        is_pivot[static_cast<size_t>(c)] = true;
    std::vector<Vec> reps;
    for (int c = 0; c < ambient_dim; ++c) {
        if (is_pivot[static_cast<size_t>(c)])
            continue;
        Vec v = zero_vec(f, ambient_dim);
        v[static_cast<size_t>(c)] = Scalar::one(f);
        reps.push_back(std::move(v));
    }
    return reps;
}

std::vector<Vec> span_echelon(const std::vector<Vec>& vecs, int ambient_dim, const FieldSpec& f)
{
    Echelon e = echelon_form(SparseMatrix::from_rows(f, vecs, ambient_dim));
    std::vector<Vec> basis;
    for (int i = 0; i < e.rank; ++i)
        basis.push_back(e.rref.row_vec(i));
    return basis;
}

int span_rank(const std::vector<Vec>& vecs, int ambient_dim, const FieldSpec& f)
{
    return rank(SparseMatrix::from_rows(f, vecs, ambient_dim));
}

std::vector<Vec> subspace_sum(const std::vector<Vec>& a, const std::vector<Vec>& b, int ambient_dim,
                              const FieldSpec& f)
{
    std::vector<Vec> all(a);
    all.insert(all.end(), b.begin(), b.end());
    return span_echelon(all, ambient_dim, f);
}

std::vector<Vec> subspace_intersection(const std::vector<Vec>& a, const std::vector<Vec>& b,
                                       int ambient_dim, const FieldSpec& f)
{
    if (a.empty() || b.empty())
        return {};
    // x in span(a) ∩ span(b)  iff  x = A c = B d: kernel of [A | -B] column-wise.
    SparseMatrix A = SparseMatrix::from_cols(f, a, ambient_dim);
    SparseMatrix B = SparseMatrix::from_cols(f, b, ambient_dim);
    SparseMatrix stacked = SparseMatrix::hstack(A, B.scaled(-Scalar::one(f)));
    std::vector<Vec> inter;
    for (const Vec& k : kernel_basis(stacked)) {
        Vec c(k.begin(), k.begin() + static_cast<long>(a.size()));
        inter.push_back(A.apply(c));
    }
    return span_echelon(inter, ambient_dim, f);
}

bool subspace_contained(const std::vector<Vec>& a, const std::vector<Vec>& b, int ambient_dim,
                        const FieldSpec& f)
{
    int rb = span_rank(b, ambient_dim, f);
    std::vector<Vec> all(b);
    all.insert(all.end(), a.begin(), a.end());
    return span_rank(all, ambient_dim, f) == rb;
}

bool subspaces_equal(const std::vector<Vec>& a, const std::vector<Vec>& b, int ambient_dim,
                     const FieldSpec& f)
{
    return subspace_contained(a, b, ambient_dim, f) && subspace_contained(b, a, ambient_dim, f);
}

bool in_span(const Vec& v, const std::vector<Vec>& space, int ambient_dim, const FieldSpec& f)
{
    if (vec_is_zero(v))
        return true;
    return subspace_contained({v}, space, ambient_dim, f);
}

std::vector<Vec> complement_reps(const std::vector<Vec>& space, const std::vector<Vec>& sub)
{
    auto leading = [](const Vec& v) {
        for (size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero())
                return static_cast<int>(j);
        return -1;
    };
    std::vector<int> sub_pivots;
    for (const Vec& s : sub)
        sub_pivots.push_back(leading(s));
    std::vector<Vec> reps;
    for (const Vec& z : space)
        if (std::find(sub_pivots.begin(), sub_pivots.end(), leading(z)) == sub_pivots.end())
            reps.push_back(z);
    return reps;
}

Homology::Homology(const SparseMatrix& d_in, const SparseMatrix& d_out)
    : field_(d_out.field()), ambient_(d_out.cols())
{
    BTT_REQUIRE(d_in.rows() == d_out.cols(), "homology: chain space dimension mismatch");
    BTT_REQUIRE((d_out * d_in).is_zero(), "not a complex: d_out ∘ d_in != 0");

    boundaries_ = image_basis(d_in);
    std::vector<Vec> cycles = span_echelon(kernel_basis(d_out), ambient_, field_);

    auto leading = [](const Vec& v) {
        for (size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero())
                return static_cast<int>(j);
        return -1;
    };
    for (const Vec& b : boundaries_)
        boundary_pivots_.push_back(leading(b));

    // Boundary pivots are a subset of cycle pivots; the cycles at the
    // remaining pivot positions are the canonical homology representatives.
    for (const Vec& z : cycles) {
        int p = leading(z);
        if (std::find(boundary_pivots_.begin(), boundary_pivots_.end(), p) == boundary_pivots_.end()) {
            reps_.push_back(z);
            rep_pivots_.push_back(p);
        }
    }
    BTT_ASSERT(static_cast<int>(reps_.size()) ==
                   static_cast<int>(cycles.size()) - static_cast<int>(boundaries_.size()),
               "homology dimension bookkeeping broke");
}

Vec Homology::project(const Vec& closed) const
{
    BTT_REQUIRE(static_cast<int>(closed.size()) == ambient_, "project: vector length mismatch");
    Vec coords = zero_vec(field_, dim());
    Vec v = closed;
    // Both families are echelon with pairwise distinct pivots, so repeatedly
    // clearing the leading coordinate terminates.
    while (!vec_is_zero(v)) {
        int lead = -1;
        for (size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero()) {
                lead = static_cast<int>(j);
                break;
            }
        bool used = false;
        for (size_t i = 0; i < reps_.size(); ++i)
            if (rep_pivots_[i] == lead) {
                Scalar c = v[static_cast<size_t>(lead)];
                coords[i] += c;
                v = vec_sub(v, vec_scale(c, reps_[i]));
                used = true;
                break;
            }
        if (used)
            continue;
        for (size_t i = 0; i < boundaries_.size(); ++i)
            if (boundary_pivots_[i] == lead) {
                v = vec_sub(v, vec_scale(v[static_cast<size_t>(lead)], boundaries_[i]));
                used = true;
                break;
            }
        BTT_ASSERT(used, "project: vector is not a cycle");
    }
    return coords;
}

Vec Homology::lift(const Vec& coords) const
{
    BTT_REQUIRE(static_cast<int>(coords.size()) == dim(), "lift: coordinate length mismatch");
    Vec v = zero_vec(field_, ambient_);
    for (size_t i = 0; i < reps_.size(); ++i)
        v = vec_add(v, vec_scale(coords[i], reps_[i]));
    return v;
}

} // namespace btt
