#pragma once

#include "btt/bv.hpp"
#include "btt/dglie.hpp"

namespace btt {

struct OperatorDecl {
    std::string name;
    int degree = 0;
    std::vector<std::pair<Monomial, Element>> images; // canonically sorted
};

struct MultiVectorDecl {
    std::string name;
    MultiVector mv;
};

struct StructureDecl {
    enum class Kind { None, Bv, BvInfinity, DgLie };
    enum class Mode { None, Delta, Koszul, Lambda, Deltas, Jacobi, Poisson };

    Kind kind = Kind::None;
    Mode mode = Mode::None;
    std::vector<std::string> names;
    std::optional<int> column;
};

// One parsed input file: algebra presentation, differential images, named
// operators and multivectors, and the structure selection.
struct InputDocument {
    FieldSpec field;
    std::vector<GeneratorDecl> gens;
    int cap = 0;
    bool cap_explicit = false;
    AlgebraRef algebra;
    std::vector<std::pair<std::string, Element>> d_images; // nonzero images, generator order
    std::vector<OperatorDecl> operators;
    std::vector<MultiVectorDecl> multivectors;
    StructureDecl structure;

    GradedOperator differential() const;
    const OperatorDecl* find_operator(const std::string& name) const;
    const MultiVectorDecl* find_multivector(const std::string& name) const;
    GradedOperator build_operator(const OperatorDecl& decl) const;
};

// Line-oriented grammar; see README for the statement forms. Errors carry
// 1-based line numbers.
InputDocument parse_document(const std::string& text);

// Canonical text; parse(print(x)) reproduces x (and reprints identically).
std::string print_document(const InputDocument& doc);

bool documents_equal(const InputDocument& a, const InputDocument& b);

// Entrywise reduction of a rational document mod p; fails on denominators
// divisible by p.
InputDocument reduce_document_mod(const InputDocument& doc, std::uint32_t p);

// Realize the declared structure.
BVStructure make_bv_structure(const InputDocument& doc);
DgLie make_dg_lie(const InputDocument& doc);

} // namespace btt
