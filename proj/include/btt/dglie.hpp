#pragma once

#include "btt/bv.hpp"

namespace btt {

// A finite-dimensional dg-Lie algebra with differential of degree +1,
// bracket of degree 0, and Maurer-Cartan elements in degree 1. Construction
// validates ∂² = 0, graded antisymmetry, graded Jacobi and the derivation
// rule on all basis tuples.
class DgLie {
public:
    // brackets[{p,q}][a] is the matrix of [e_a, -]: L^q -> L^{p+q} for the
    // a-th basis vector of L^p; pairs and slots not stored are zero.
    using BracketTable = std::map<std::pair<int, int>, std::vector<SparseMatrix>>;

    static DgLie make(FieldSpec field, std::map<int, int> dims,
                      std::map<int, SparseMatrix> differential, BracketTable brackets,
                      std::map<int, std::vector<std::string>> labels = {}, bool validate = true);

    const FieldSpec& field() const { return field_; }
    int dim(int n) const;
    const std::map<int, int>& dims() const { return dims_; }
    SparseMatrix diff(int n) const; // ∂: L^n -> L^{n+1}, zero-shaped when absent
    Vec bracket(int p, const Vec& x, int q, const Vec& y) const;
    std::string label(int n, int i) const;

    Homology homology(int n) const;

    // Entrywise reduction of a rational dg-Lie algebra mod p.
    DgLie reduce_mod(std::uint32_t p) const;

private:
    FieldSpec field_;
    std::map<int, int> dims_;
    std::map<int, SparseMatrix> diff_;
    BracketTable brackets_;
    std::map<int, std::vector<std::string>> labels_;
};

// The dg-Lie algebra on L^n := A^{n+1} with ∂ = d and the derived bracket;
// restrict_first_bidegree selects the monomials whose first bidegree
// component is 1 (the bigraded column the deformation problem lives in),
// verifying that d and the bracket preserve it.
DgLie to_dg_lie(const BVStructure& b, bool restrict_first_bidegree = false, bool check_bv = true);

} // namespace btt
