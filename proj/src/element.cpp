#include "btt/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace btt {

Element::Element(AlgebraRef alg, const Monomial& m, const Scalar& c) : alg_(std::move(alg))
{
    BTT_REQUIRE(alg_->in_basis(m), "monomial outside the algebra basis");
    add_term(m, c);
}

Element Element::unit(const AlgebraRef& alg)
{
    return Element(alg, Monomial::unit(alg->num_generators()), Scalar::one(alg->field()));
}

Element Element::generator(const AlgebraRef& alg, size_t i)
{
    std::vector<int> exps(alg->num_generators(), 0);
    exps[i] = 1;
    return Element(alg, Monomial(exps), Scalar::one(alg->field()));
}

Scalar Element::coeff(const Monomial& m) const
{
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? Scalar::zero(alg_->field()) : it->second;
}

std::optional<int> Element::degree() const
{
    std::optional<int> d;
    for (const auto& [m, c] : coeffs_) {
        int dm = alg_->degree_of(m);
        if (!d)
            d = dm;
        else if (*d != dm)
            return std::nullopt;
    }
    return d;
}

void Element::add_term(const Monomial& m, const Scalar& c)
{
    if (c.is_zero())
        return;
    auto [it, fresh] = coeffs_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero())
            coeffs_.erase(it);
    }
}

void Element::check_same_algebra(const Element& o) const
{
    BTT_REQUIRE(alg_ == o.alg_, "elements of different algebras");
}

Element Element::operator+(const Element& o) const
{
    check_same_algebra(o);
    Element r(*this);
    for (const auto& [m, c] : o.coeffs_)
        r.add_term(m, c);
    return r;
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator-() const { return scaled(-Scalar::one(alg_->field())); }

Element Element::scaled(const Scalar& c) const
{
    Element r(alg_);
    if (c.is_zero())
        return r;
    for (const auto& [m, v] : coeffs_)
        r.coeffs_.emplace(m, c * v);
    return r;
}

// Product of two monomial terms with the Koszul sign of interleaving: each
// odd factor of the right word hops over the left word's odd factors with
// strictly larger generator index.
Element multiply_monomials(const AlgebraRef& alg, const Monomial& m1, const Scalar& c1,
                           const Monomial& m2, const Scalar& c2)
{
    const size_t n = alg->num_generators();
    std::vector<int> exps(n);
    for (size_t i = 0; i < n; ++i) {
        exps[i] = m1.exp(i) + m2.exp(i);
        if (exps[i] > alg->exponent_bound(i))
            return Element::zero(alg);
    }
    Monomial prod(std::move(exps));
    if (!alg->in_basis(prod))
        return Element::zero(alg); // over the degree cap

    int sign_exp = 0;
    int odd_tail = 0; // number of odd factors of m1 with index > j
    for (size_t j = n; j-- > 0;) {
        if (alg->generator_odd(j)) {
            sign_exp += m2.exp(j) * odd_tail;
            odd_tail += m1.exp(j);
        }
    }
    Scalar c = c1 * c2;
    if (sign_exp % 2)
        c = -c;
    return Element(alg, prod, c);
}

Element Element::operator*(const Element& o) const
{
    check_same_algebra(o);
    Element r(alg_);
    for (const auto& [m1, c1] : coeffs_)
        for (const auto& [m2, c2] : o.coeffs_)
            r = r + multiply_monomials(alg_, m1, c1, m2, c2);
    return r;
}

bool Element::operator==(const Element& o) const
{
    check_same_algebra(o);
    return coeffs_ == o.coeffs_;
}

std::vector<std::pair<int, Element>> Element::decompose() const
{
    std::map<int, Element> parts;
    for (const auto& [m, c] : coeffs_) {
        int d = alg_->degree_of(m);
        auto it = parts.find(d);
        if (it == parts.end())
            it = parts.emplace(d, Element(alg_)).first;
        it->second.add_term(m, c);
    }
    std::vector<std::pair<int, Element>> out;
    for (auto& [d, e] : parts)
        out.emplace_back(d, std::move(e));
    return out;
}

Element Element::component(int degree) const
{
    Element r(alg_);
    for (const auto& [m, c] : coeffs_)
        if (alg_->degree_of(m) == degree)
            r.add_term(m, c);
    return r;
}

Vec Element::coords(int degree) const
{
    const auto& basis = alg_->basis(degree);
    Vec v = zero_vec(alg_->field(), static_cast<int>(basis.size()));
    for (const auto& [m, c] : coeffs_) {
        BTT_REQUIRE(alg_->degree_of(m) == degree, "coords: element not homogeneous of that degree");
        v[static_cast<size_t>(alg_->basis_index(m))] = c;
    }
    return v;
}

Element Element::from_coords(const AlgebraRef& alg, int degree, const Vec& coords)
{
    const auto& basis = alg->basis(degree);
    BTT_REQUIRE(coords.size() == basis.size(), "from_coords: length mismatch");
    Element r(alg);
    for (size_t k = 0; k < basis.size(); ++k)
        r.add_term(basis[k], coords[k]);
    return r;
}

std::string Element::str() const
{
    if (coeffs_.empty())
        return "0";
    // Canonical order: ascending degree, then basis position.
    std::vector<std::pair<std::pair<int, int>, const Monomial*>> order;
    for (const auto& [m, c] : coeffs_)
        order.push_back({{alg_->degree_of(m), alg_->basis_index(m)}, &m});
    std::sort(order.begin(), order.end());

    std::ostringstream os;
    bool first = true;
    for (const auto& [key, mp] : order) {
        Scalar c = coeffs_.at(*mp);
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            os << (neg ? "- " : "") << (neg ? cs.substr(1) : cs);
            first = false;
        } else {
            os << (neg ? " - " : " + ") << (neg ? cs.substr(1) : cs);
        }
        if (!mp->is_unit())
            os << " " << alg_->monomial_str(*mp);
    }
    return os.str();
}

} // namespace btt
