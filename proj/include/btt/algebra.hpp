#pragma once

#include "btt/scalar.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace btt {

struct GeneratorDecl {
    std::string name;
    int degree = 0;
    std::optional<std::pair<int, int>> bidegree; // (p, q) with p + q = degree
    std::optional<int> nilpotent;                // smallest e with g^e = 0 (required for even degree)
};

// A monomial is an exponent vector over the declared generators; odd-degree
// generators carry exponent 0 or 1.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<int> exps) : exps_(std::move(exps)) {}
    static Monomial unit(size_t ngens) { return Monomial(std::vector<int>(ngens, 0)); }

    int exp(size_t i) const { return exps_[i]; }
    size_t size() const { return exps_.size(); }
    const std::vector<int>& exps() const { return exps_; }
    bool is_unit() const;

    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
    bool operator!=(const Monomial& o) const { return exps_ != o.exps_; }
    // Graded-lexicographic: by total exponent-weighted degree externally; the
    // raw order here is lex-descending on exponents, which sorts each fixed
    // degree the way the bases are listed.
    bool operator<(const Monomial& o) const;

private:
    std::vector<int> exps_;
};

class Algebra;
using AlgebraRef = std::shared_ptr<const Algebra>;

// A finite-dimensional free graded-commutative algebra: exterior on the
// odd-degree generators, nilpotent-truncated polynomial on the even ones,
// with everything above the degree cap declared zero.
class Algebra : public std::enable_shared_from_this<Algebra> {
public:
    static AlgebraRef make(FieldSpec field, std::vector<GeneratorDecl> gens,
                           std::optional<int> degree_cap = std::nullopt);

    const FieldSpec& field() const { return field_; }
    const std::vector<GeneratorDecl>& generators() const { return gens_; }
    size_t num_generators() const { return gens_.size(); }
    int degree_cap() const { return cap_; }
    int generator_index(const std::string& name) const; // -1 when unknown
    int generator_degree(size_t i) const { return gens_[i].degree; }
    bool generator_odd(size_t i) const { return gens_[i].degree % 2 != 0; }
    int exponent_bound(size_t i) const;
    bool bigraded() const;

    int min_degree() const { return min_degree_; }
    int max_degree() const { return max_degree_; }

    int degree_of(const Monomial& m) const;
    std::pair<int, int> bidegree_of(const Monomial& m) const;
    bool in_basis(const Monomial& m) const; // respects bounds and cap

    // All monomials of the given total degree, graded-lex by declaration order.
    const std::vector<Monomial>& basis(int degree) const;
    int dim(int degree) const { return static_cast<int>(basis(degree).size()); }
    int total_dim() const;
    // Index of a monomial within basis(degree_of(m)); -1 if absent.
    int basis_index(const Monomial& m) const;

    std::string monomial_str(const Monomial& m) const;

private:
    Algebra() = default;

    FieldSpec field_;
    std::vector<GeneratorDecl> gens_;
    int cap_ = 0;
    int min_degree_ = 0;
    int max_degree_ = 0;
    std::map<int, std::vector<Monomial>> bases_;
    std::map<Monomial, int> index_;
    std::vector<Monomial> empty_;
};

// Scalar combination of monomials; stored coefficients are always nonzero.
class Element {
public:
    Element() = default;
    explicit Element(AlgebraRef alg) : alg_(std::move(alg)) {}
    Element(AlgebraRef alg, const Monomial& m, const Scalar& c);

    static Element zero(const AlgebraRef& alg) { return Element(alg); }
    static Element unit(const AlgebraRef& alg);
    static Element generator(const AlgebraRef& alg, size_t i);

    const AlgebraRef& algebra() const { return alg_; }
    const std::map<Monomial, Scalar>& terms() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    Scalar coeff(const Monomial& m) const;

    // Homogeneous degree; nullopt for 0 or mixed-degree elements.
    std::optional<int> degree() const;
    bool is_homogeneous() const { return coeffs_.empty() || degree().has_value(); }

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element scaled(const Scalar& c) const;
    Element operator*(const Element& o) const; // graded-commutative product

    bool operator==(const Element& o) const;
    bool operator!=(const Element& o) const { return !(*this == o); }

    // Homogeneous components, ascending degree.
    std::vector<std::pair<int, Element>> decompose() const;
    Element component(int degree) const;

    // Coordinates in basis(degree); requires homogeneity of that degree.
    Vec coords(int degree) const;
    static Element from_coords(const AlgebraRef& alg, int degree, const Vec& coords);

    std::string str() const;

private:
    void add_term(const Monomial& m, const Scalar& c);
    void check_same_algebra(const Element& o) const;

    AlgebraRef alg_;
    std::map<Monomial, Scalar> coeffs_;

    friend Element multiply_monomials(const AlgebraRef&, const Monomial&, const Scalar&,
                                      const Monomial&, const Scalar&);
};

} // namespace btt
