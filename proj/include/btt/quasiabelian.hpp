#pragma once

#include "btt/bv.hpp"

namespace btt {

// Per-degree certificate of Ker(d)∩Im(Δ) = Ker(Δ)∩Im(d) = Im(dΔ), decided by
// mutual containment of exact subspace bases.
struct DdCertificate {
    struct DegreeData {
        std::vector<Vec> ker_d_im_delta;
        std::vector<Vec> ker_delta_im_d;
        std::vector<Vec> im_d_delta;
        bool equal = true;
    };

    bool pass = true;
    std::optional<int> failing_degree;
    std::map<int, DegreeData> degrees;
};

DdCertificate dd_lemma(const BVStructure& b);

// The explicit quasi-abelianness witness: Ker(Δ) is a subcomplex closed under
// the derived bracket, the inclusion into A and the projection onto
// H_Δ(A) = Ker(Δ)/Im(Δ) are quasi-isomorphisms, and every bracket of Ker(Δ)
// elements dies in H_Δ(A).
struct ZigZagCertificate {
    bool valid = false;
    std::string failure;

    std::map<int, std::vector<Vec>> ker_delta; // echelon basis per degree
    std::map<int, SparseMatrix> inclusion;     // K^n -> A^n
    std::map<int, SparseMatrix> projection;    // K^n -> H_Δ^n
    std::map<int, int> betti_A, betti_K, betti_H;

    bool subcomplex = false;
    bool inclusion_chain_map = false;
    bool projection_chain_map = false;
    bool inclusion_qis = false;
    bool projection_qis = false;
    bool brackets_in_im_delta = false;
};

ZigZagCertificate zigzag_certificate(const BVStructure& b);

// Brackets of closed representatives projected back to H(A,d).
struct InducedBracket {
    bool is_zero = true;
    std::map<int, int> homology_dims;
    // values[{p,q}][i][j] = class of [rep_i^p, rep_j^q] in H^{p+q-1}.
    std::map<std::pair<int, int>, std::vector<std::vector<Vec>>> values;
};

InducedBracket induced_bracket_on_homology(const BVStructure& b);

} // namespace btt
