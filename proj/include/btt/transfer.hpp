#pragma once

#include "btt/dglie.hpp"

namespace btt {

// Deformation retract of (L, ∂) onto its homology: q∘i = id,
// id − i∘q = ∂h + h∂, with the side conditions h² = 0, h∘i = 0, q∘h = 0,
// all enforced by the echelon splitting L = Im∂ ⊕ (reps) ⊕ (preimages).
struct Contraction {
    std::map<int, int> hdims;          // dim H^n
    std::map<int, SparseMatrix> incl;  // H^n -> L^n
    std::map<int, SparseMatrix> proj;  // L^n -> H^n
    std::map<int, SparseMatrix> h;     // L^n -> L^{n-1}

    int hdim(int n) const
    {
        auto it = hdims.find(n);
        return it == hdims.end() ? 0 : it->second;
    }
    SparseMatrix incl_at(int n, const DgLie& l) const;
    SparseMatrix proj_at(int n, const DgLie& l) const;
    SparseMatrix h_at(int n, const DgLie& l) const;
};

// The deterministic echelon splitting; works over any field.
Contraction build_splitting(const DgLie& l);

// Public transfer entry point; characteristic 0 only.
Contraction build_contraction(const DgLie& l);

// Transferred L∞ brackets ℓ_2, ℓ_3, ℓ_4 on H from the rooted-tree sums with
// h on internal edges; coefficients exact. Values are stored on all basis
// tuples; slot i of a key is the (degree, index) of an H basis vector.
struct TransferredBrackets {
    int arity_max = 2;
    using Key = std::vector<std::pair<int, int>>;
    std::map<int, std::map<Key, Vec>> values; // arity -> tuple -> H coords (target degree Σ+2-k)

    bool arity_is_zero(int k) const
    {
        auto it = values.find(k);
        if (it == values.end())
            return true;
        for (const auto& [key, v] : it->second)
            if (!vec_is_zero(v))
                return false;
        return true;
    }
};

TransferredBrackets transferred_brackets(const DgLie& l, const Contraction& c, int arity_max);

} // namespace btt
