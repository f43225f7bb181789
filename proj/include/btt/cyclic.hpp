#pragma once

#include "btt/bv.hpp"

namespace btt {

// Basis items of (A ⊗ K[u]/u^{M+1}, d + uΔ) in total degree n: u^j times the
// idx-th monomial of A^{n-2j}; u has cohomological degree +2.
struct CyclicBasisItem {
    int j;
    int adeg;
    int idx;
};

class NegativeCyclicComplex {
public:
    // Requires verify_bv(b) to pass (Δ² = 0, [d,Δ] = 0); uses Δ := Δ1.
    static NegativeCyclicComplex build(const BVStructure& b, int truncation);

    const BVStructure& base() const { return *base_; }
    const FieldSpec& field() const;
    int truncation() const { return M_; }
    int min_total() const { return min_total_; }
    int max_total() const { return max_total_; }

    const std::vector<CyclicBasisItem>& basis(int n) const;
    int dim(int n) const { return static_cast<int>(basis(n).size()); }
    // Total differential d + uΔ from degree n to n+1.
    SparseMatrix differential(int n) const;

    // {x ∈ F^{max(p_low,0)} V_n : D x ∈ F^{p_target} V_{n+1}}, echelon basis
    // in the coordinates of V_n. F^p is spanned by the items with j >= p.
    std::vector<Vec> z_space(int n, int p_low, int p_target) const;
    std::vector<Vec> filtration(int n, int p) const;

    std::string item_str(int n, int k) const;

private:
    std::shared_ptr<const BVStructure> base_;
    int M_ = 0;
    int min_total_ = 0;
    int max_total_ = 0;
    std::map<int, std::vector<CyclicBasisItem>> bases_;
    std::vector<CyclicBasisItem> empty_;
};

// One page of the u-filtration spectral sequence: per-bidegree dimensions and
// subquotient bases Z_r/(B + lower filtration) in total-complex coordinates.
struct SpectralPage {
    int r = 0;
    std::map<std::pair<int, int>, int> dims;
    std::map<std::pair<int, int>, std::vector<Vec>> bases;

    int dim(int p, int q) const
    {
        auto it = dims.find({p, q});
        return it == dims.end() ? 0 : it->second;
    }
};

// Pages r = 0 .. M+2 (differentials of longer length leave the truncated
// window, so the last page is E_infinity); stabilization_index is the first r
// whose dimensions already equal the final page everywhere.
struct SpectralSequence {
    std::vector<SpectralPage> pages;
    int stabilization_index = 0;
};

SpectralSequence spectral_pages(const NegativeCyclicComplex& c);

enum class TriState { True, False, Inconclusive };

std::string tristate_str(TriState t);

struct DegenerationCertificate {
    TriState verdict = TriState::Inconclusive;
    int truncation = 0;
    int window = 0; // bidegrees with p <= window carry the verdict
    std::map<std::pair<int, int>, int> e1_dims;
    std::map<std::pair<int, int>, int> einf_dims;
    std::string detail;
};

// E1-degeneration of the u-filtration spectral sequence, decided on a window
// of columns where the truncated computation agrees with any larger
// truncation, with a stabilization re-check at M+1.
DegenerationCertificate degenerates_at_E1(const BVStructure& b, int max_truncation = 0);

struct FreenessCertificate {
    TriState verdict = TriState::Inconclusive;
    int truncation = 0;
    int total_length = 0;
    int generator_count = 0;          // dim H / uH
    std::map<int, int> generator_degrees; // degree -> generators
    std::string detail;
};

// Freeness of H(A ⊗ K[u]/u^{M+1}, d + uΔ) over K[u]/u^{M+1}: the K-length
// equals (M+1) times the number of module generators exactly when the module
// is free.
FreenessCertificate u_freeness(const BVStructure& b, int truncation);
FreenessCertificate u_freeness_auto(const BVStructure& b, int max_truncation = 0);

// Default start M = ceil(cap/2) + 1, raised so the decision window is exact.
int default_truncation(const BVStructure& b);

} // namespace btt
