#pragma once

#include "btt/algebra.hpp"
#include "btt/linalg.hpp"

#include <functional>

namespace btt {

// Degree-homogeneous linear map, stored blockwise per source degree in the
// monomial bases. Blocks absent for empty source or target degrees.
class GradedOperator {
public:
    GradedOperator() = default;
    GradedOperator(AlgebraRef alg, int degree);

    static GradedOperator zero(const AlgebraRef& alg, int degree);
    static GradedOperator identity(const AlgebraRef& alg);
    // Blocks computed by evaluating fn on every basis monomial; images must be
    // homogeneous of the right degree.
    static GradedOperator from_function(const AlgebraRef& alg, int degree,
                                        const std::function<Element(const Element&)>& fn);
    static GradedOperator from_monomial_images(const AlgebraRef& alg, int degree,
                                               const std::vector<std::pair<Monomial, Element>>& images);

    const AlgebraRef& algebra() const { return alg_; }
    int degree() const { return degree_; }
    const SparseMatrix& block(int source_degree) const;
    // The stored block, or a zero matrix of the right shape.
    SparseMatrix block_or_zero(int source_degree) const;
    void set_block(int source_degree, const SparseMatrix& m);
    const std::map<int, SparseMatrix>& blocks() const { return blocks_; }

    Element apply(const Element& x) const;
    Element operator()(const Element& x) const { return apply(x); }

    bool is_zero() const;
    GradedOperator operator+(const GradedOperator& o) const;
    GradedOperator operator-(const GradedOperator& o) const;
    GradedOperator scaled(const Scalar& c) const;
    // Composition this ∘ o.
    GradedOperator operator*(const GradedOperator& o) const;
    bool operator==(const GradedOperator& o) const;
    bool operator!=(const GradedOperator& o) const { return !(*this == o); }

private:
    void check_compatible(const GradedOperator& o, const char* what) const;

    AlgebraRef alg_;
    int degree_ = 0;
    std::map<int, SparseMatrix> blocks_;
    static const SparseMatrix empty_block_;
};

// The unique degree-homogeneous graded derivation extending the given
// generator images by the Leibniz rule.
GradedOperator derivation_from_images(const AlgebraRef& alg,
                                      const std::vector<Element>& generator_images, int degree);

// Left multiplication by a homogeneous element.
GradedOperator multiplication_operator(const Element& a);

// [s,t] = s∘t − (−1)^{|s||t|} t∘s.
GradedOperator graded_commutator(const GradedOperator& s, const GradedOperator& t);

// Koszul operator order: the smallest k <= k_max such that every (k+1)-fold
// iterated commutator [...[[t, L_a], L_b]..., L_c] with left multiplications
// vanishes. Multiplicativity of a -> L_a reduces the check to generator
// slots; see docs/conventions.md. Returns nullopt when the order exceeds k_max.
std::optional<int> koszul_order(const GradedOperator& t, int k_max);

// eta^{-1} ∘ t ∘ eta; eta must be invertible blockwise.
GradedOperator conjugate(const GradedOperator& eta, const GradedOperator& t);

// Blockwise transpose w.r.t. the orthonormal monomial basis.
GradedOperator adjoint(const GradedOperator& t);

} // namespace btt
