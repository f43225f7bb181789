#pragma once

#include "btt/multivector.hpp"

namespace btt {

struct CheckItem {
    std::string name;
    bool pass = true;
    std::string witness;
};

struct VerifyReport {
    std::vector<CheckItem> checks;

    bool pass() const
    {
        for (const auto& c : checks)
            if (!c.pass)
                return false;
        return true;
    }
    void add(const std::string& name, bool ok, const std::string& witness = "")
    {
        checks.push_back({name, ok, ok ? "" : witness});
    }
};

// A graded-commutative dg-algebra with a differential and a family of
// Δ-operators. Δ1 (when present) has degree -1; higher Δ_k carry whatever
// degree their construction dictates. d is validated to be a square-zero
// degree +1 derivation at construction.
class BVStructure {
public:
    static BVStructure make(AlgebraRef alg, GradedOperator d, std::vector<GradedOperator> deltas,
                            std::optional<GradedOperator> lambda = std::nullopt);

    const AlgebraRef& algebra() const { return alg_; }
    const GradedOperator& d() const { return d_; }
    const std::vector<GradedOperator>& deltas() const { return deltas_; }
    const std::optional<GradedOperator>& lambda() const { return lambda_; }

    // Δ1, the zero operator of degree -1 when no deltas are present.
    GradedOperator delta1() const;
    bool higher_deltas_vanish() const;

private:
    BVStructure() = default;

    AlgebraRef alg_;
    GradedOperator d_;
    std::vector<GradedOperator> deltas_;
    std::optional<GradedOperator> lambda_;
};

// Δ_k := (1/k!) ad_Λ^k(d) for a degree -2 operator Λ of order <= 2.
BVStructure build_hierarchy(const AlgebraRef& alg, const GradedOperator& d,
                            const GradedOperator& lambda);

// (i) Σ_{i+j=n} Δ_i Δ_j = 0 for every n, with Δ_0 := d, checked blockwise per
// degree; (ii) koszul_order(Δ_k) <= k+1. Failures carry a witness.
VerifyReport verify_bv_infinity(const BVStructure& b);

// Coefficientwise identity e^{zΛ} d e^{-zΛ} = Σ_k z^k Δ_k of polynomials in z
// (finite: Λ is nilpotent for degree reasons). Independent oracle for
// build_hierarchy and the BV∞ relations.
VerifyReport verify_conjugation_identity(const BVStructure& b);

// The bracket defined by the failure of Δ1 to be a derivation:
//   [α,β] = (-1)^{|α|} (Δ(α∧β) − Δ(α)∧β − (-1)^{|α|} α∧Δ(β)),
// extended bilinearly over homogeneous components of α.
Element derived_bracket(const BVStructure& b, const Element& alpha, const Element& beta);

// Classical BV verification (requires Δ_k = 0 for k >= 2): Δ² = 0, [d,Δ] = 0,
// order(Δ) <= 2, and the derived bracket satisfies graded Jacobi and Leibniz
// on all monomial pairs/triples.
VerifyReport verify_bv(const BVStructure& b);

// Δ1 = [i_π, d], Δ2 = -i_η i_π; requires the multivector identities
// [π,π] = 2 η∧π and [π,η] = 0 for the Lie structure read off d.
BVStructure jacobi_structure(const AlgebraRef& alg, const GradedOperator& d, const MultiVector& pi,
                             const MultiVector& eta);

// Δ_k := [i_{π_k}, d] with π_k of arity k+1.
BVStructure generalized_poisson(const AlgebraRef& alg, const GradedOperator& d,
                                const std::vector<MultiVector>& pis);

} // namespace btt
