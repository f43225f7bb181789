#pragma once

#include "btt/operators.hpp"

namespace btt {

// Element of the exterior algebra on the duals of the degree-1 generators,
// homogeneous of a fixed arity. Terms are ascending index tuples.
class MultiVector {
public:
    MultiVector() = default;
    MultiVector(AlgebraRef alg, int arity);

    static MultiVector zero(const AlgebraRef& alg, int arity) { return MultiVector(alg, arity); }
    static MultiVector basis_vector(const AlgebraRef& alg, const std::vector<int>& indices);

    const AlgebraRef& algebra() const { return alg_; }
    int arity() const { return arity_; }
    const std::map<std::vector<int>, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Adds c * (dual_{i1} ∧ ... ∧ dual_{ik}); indices need not be sorted,
    // repeats kill the term, sorting contributes the permutation sign.
    void add_term(const std::vector<int>& indices, const Scalar& c);

    MultiVector operator+(const MultiVector& o) const;
    MultiVector operator-(const MultiVector& o) const;
    MultiVector scaled(const Scalar& c) const;
    MultiVector wedge(const MultiVector& o) const;
    bool operator==(const MultiVector& o) const;
    bool operator!=(const MultiVector& o) const { return !(*this == o); }

    std::string str() const;

private:
    AlgebraRef alg_;
    int arity_ = 0;
    std::map<std::vector<int>, Scalar> terms_;
};

// Lie algebra structure constants over the degree-1 generator set:
// [X_i, X_j] = sum_k c^k_ij X_k.
class LieStructure {
public:
    LieStructure(AlgebraRef alg, std::map<std::pair<int, int>, std::map<int, Scalar>> c);

    // Reads the constants off a degree +1 derivation: c^k_ij is the
    // coefficient of e^i e^j (i < j) in d(e^k).
    static LieStructure from_differential(const GradedOperator& d);

    const AlgebraRef& algebra() const { return alg_; }
    // [X_i, X_j] as a 1-vector.
    MultiVector bracket(int i, int j) const;

    // Antisymmetry and the Jacobi identity on all triples; throws on failure.
    void check() const;

private:
    AlgebraRef alg_;
    std::map<std::pair<int, int>, std::map<int, Scalar>> c_;
};

// Biderivation extension of the Lie bracket from 1-vectors to multivectors,
// arity (j,k) -> j+k-1; see docs/conventions.md for the sign convention.
MultiVector schouten(const MultiVector& v, const MultiVector& w, const LieStructure& lie);

// Contraction operator of degree -arity: on a decomposable dual word the
// composition of single contractions, i_{X∧Y} = i_X ∘ i_Y.
GradedOperator interior_product(const MultiVector& v);

} // namespace btt
