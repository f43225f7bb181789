#pragma once

#include "btt/sparse.hpp"

#include <optional>

namespace btt {

// Reduced row echelon form with the fixed pivot policy: scan columns left to
// right, pick the not-yet-used row of smallest index with a nonzero entry in
// the current column, scale it to pivot 1 and clear the column everywhere.
// This policy makes every basis and certificate downstream deterministic.
struct Echelon {
    SparseMatrix rref;
    std::vector<int> pivot_cols; // ascending
    int rank = 0;
};

Echelon echelon_form(const SparseMatrix& m);

int rank(const SparseMatrix& m);

// Some x with m*x = b if b lies in the image, none otherwise. The returned
// solution is the unique one whose coordinates vanish on non-pivot columns.
std::optional<Vec> solve(const SparseMatrix& m, const Vec& b);

// Kernel basis, one vector per free column, ascending.
std::vector<Vec> kernel_basis(const SparseMatrix& m);

// Canonical echelon basis of the column space.
std::vector<Vec> image_basis(const SparseMatrix& m);

// Coset representatives for ambient/span(sub): the standard basis vectors at
// the non-pivot coordinates of the subspace's echelon form.
std::vector<Vec> quotient_basis(const std::vector<Vec>& sub, int ambient_dim, const FieldSpec& f);

// Subspaces handed around as spanning sets; canonical form is the echelon
// basis of the span.
std::vector<Vec> span_echelon(const std::vector<Vec>& vecs, int ambient_dim, const FieldSpec& f);
int span_rank(const std::vector<Vec>& vecs, int ambient_dim, const FieldSpec& f);
std::vector<Vec> subspace_sum(const std::vector<Vec>& a, const std::vector<Vec>& b, int ambient_dim,
                              const FieldSpec& f);
std::vector<Vec> subspace_intersection(const std::vector<Vec>& a, const std::vector<Vec>& b,
                                       int ambient_dim, const FieldSpec& f);
bool subspace_contained(const std::vector<Vec>& a, const std::vector<Vec>& b, int ambient_dim,
                        const FieldSpec& f);
bool subspaces_equal(const std::vector<Vec>& a, const std::vector<Vec>& b, int ambient_dim,
                     const FieldSpec& f);
bool in_span(const Vec& v, const std::vector<Vec>& space, int ambient_dim, const FieldSpec& f);

// Echelon vectors of `space` whose pivots do not occur among the pivots of
// the echelon family `sub`; for sub ⊆ space these represent space/sub.
std::vector<Vec> complement_reps(const std::vector<Vec>& space, const std::vector<Vec>& sub);

// H = Ker(d_out) / Im(d_in), with canonical closed representatives and exact
// projection of any closed vector onto the representative basis.
class Homology {
public:
    // d_in: prev -> here, d_out: here -> next; requires d_out * d_in == 0.
    Homology(const SparseMatrix& d_in, const SparseMatrix& d_out);

    int dim() const { return static_cast<int>(reps_.size()); }
    int ambient_dim() const { return ambient_; }
    const std::vector<Vec>& representatives() const { return reps_; }
    const std::vector<Vec>& boundary_basis() const { return boundaries_; }

    Vec project(const Vec& closed) const;
    // The representative of a coordinate vector in this basis.
    Vec lift(const Vec& coords) const;

private:
    FieldSpec field_;
    int ambient_ = 0;
    std::vector<Vec> boundaries_; // echelon basis of Im(d_in)
    std::vector<Vec> reps_;       // echelon cycles whose pivots avoid the boundary pivots
    std::vector<int> boundary_pivots_;
    std::vector<int> rep_pivots_;
};

} // namespace btt
