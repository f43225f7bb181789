#pragma once

#include "btt/dglie.hpp"
#include "btt/quasiabelian.hpp"

#include <variant>

namespace btt {

// Truncated Maurer-Cartan solution ξ(t) = Σ ξ_k t^k with ξ_k in L^1;
// ∂ξ(t) + ½[ξ(t),ξ(t)] ≡ 0 mod t^{order+1}, re-verified by substitution.
struct DeformationSeries {
    int order = 0;
    std::vector<Vec> coefficients; // coefficients[k-1] = ξ_k
    bool tt_fallback = false;      // tt solver had to fall back to the generic one
};

// First failing order of the recursion, with the d-closed right-hand side
// R_k and its nonzero class in H².
struct Obstruction {
    int order = 0;
    Vec rhs;
    Vec h2_class;
};

using McOutcome = std::variant<DeformationSeries, Obstruction>;

bool mc_solved(const McOutcome& o);

// Pivot: ξ_k is the deterministic elimination solution of ∂ξ_k = R_k.
// Homotopy: ξ_k = h(R_k) for the fixed contraction built from the echelon
// splitting; the two modes may legitimately disagree beyond the first order
// on non-dΔ inputs.
enum class McMode { Pivot, Homotopy };

// Order-by-order solution of ∂ξ + ½[ξ,ξ] = 0 with [ξ_1] = alpha (coordinates
// in the canonical H¹ basis). Characteristic 2 unsupported.
McOutcome solve_mc(const DgLie& l, const Vec& alpha, int order, McMode mode = McMode::Pivot);

// The dΔ route: ξ_1 a d- and Δ-closed representative, ξ_k = Δσ_k where
// dΔσ_k = R_k; keeps Δξ_k = 0 for all k and ξ_k ∈ Im Δ for k >= 2.
// Requires dd_lemma(b) to pass. Coordinates live in A^2 = L^1 of to_dg_lie(b).
DeformationSeries tt_solve_mc(const BVStructure& b, const Vec& alpha, int order);

// solve_mc to order p-1 for every basis class of H¹ over F_p, p >= 5.
struct CharPReport {
    std::uint32_t p = 0;
    int order = 0;
    struct ClassResult {
        Vec alpha;
        McOutcome outcome;
    };
    std::vector<ClassResult> classes;
    bool all_solved = true;
};

CharPReport char_p_probe(const DgLie& l);

} // namespace btt
