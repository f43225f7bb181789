#include "btt/multivector.hpp"

#include <algorithm>
#include <sstream>

namespace btt {

namespace {

// Sorts indices ascending; returns the permutation parity, or nullopt when an
// index repeats (the exterior term vanishes).
std::optional<bool> sort_indices(std::vector<int>& idx)
{
    bool odd = false;
    for (size_t i = 1; i < idx.size(); ++i)
        for (size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j])
                return std::nullopt;
            std::swap(idx[j - 1], idx[j]);
            odd = !odd;
        }
    return odd;
}

} // namespace

MultiVector::MultiVector(AlgebraRef alg, int arity) : alg_(std::move(alg)), arity_(arity)
{
    BTT_REQUIRE(arity >= 0, "negative multivector arity");
}

MultiVector MultiVector::basis_vector(const AlgebraRef& alg, const std::vector<int>& indices)
{
    MultiVector v(alg, static_cast<int>(indices.size()));
    v.add_term(indices, Scalar::one(alg->field()));
    return v;
}

void MultiVector::add_term(const std::vector<int>& indices, const Scalar& c)
{
    BTT_REQUIRE(static_cast<int>(indices.size()) == arity_, "multivector arity mismatch");
    if (c.is_zero())
        return;
    for (int i : indices) {
        BTT_REQUIRE(i >= 0 && i < static_cast<int>(alg_->num_generators()),
                    "multivector index out of range");
        BTT_REQUIRE(alg_->generator_degree(static_cast<size_t>(i)) == 1,
                    "multivectors pair with degree-1 generators only");
    }
    std::vector<int> sorted(indices);
    auto parity = sort_indices(sorted);
    if (!parity)
        return;
    Scalar v = *parity ? -c : c;
    auto [it, fresh] = terms_.emplace(std::move(sorted), v);
    if (!fresh) {
        it->second += v;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

MultiVector MultiVector::operator+(const MultiVector& o) const
{
    BTT_REQUIRE(alg_ == o.alg_ && arity_ == o.arity_, "multivector mismatch in sum");
    MultiVector r(*this);
    for (const auto& [idx, c] : o.terms_) {
        auto [it, fresh] = r.terms_.emplace(idx, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero())
                r.terms_.erase(it);
        }
    }
    return r;
}

MultiVector MultiVector::operator-(const MultiVector& o) const
{
    return *this + o.scaled(-Scalar::one(alg_->field()));
}

MultiVector MultiVector::scaled(const Scalar& c) const
{
    MultiVector r(alg_, arity_);
    if (c.is_zero())
        return r;
    for (const auto& [idx, v] : terms_)
        r.terms_.emplace(idx, c * v);
    return r;
}

MultiVector MultiVector::wedge(const MultiVector& o) const
{
    BTT_REQUIRE(alg_ == o.alg_, "multivector mismatch in wedge");
    MultiVector r(alg_, arity_ + o.arity_);
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_) {
            std::vector<int> idx(a);
            idx.insert(idx.end(), b.begin(), b.end());
            r.add_term(idx, ca * cb);
        }
    return r;
}

bool MultiVector::operator==(const MultiVector& o) const
{
    BTT_REQUIRE(alg_ == o.alg_, "multivector comparison across algebras");
    return arity_ == o.arity_ && terms_ == o.terms_;
}

std::string MultiVector::str() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, c] : terms_) {
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (first)
            os << (neg ? "- " : "") << (neg ? cs.substr(1) : cs);
        else
            os << (neg ? " - " : " + ") << (neg ? cs.substr(1) : cs);
        first = false;
        for (int i : idx)
            os << " " << alg_->generators()[static_cast<size_t>(i)].name;
    }
    return os.str();
}

LieStructure::LieStructure(AlgebraRef alg, std::map<std::pair<int, int>, std::map<int, Scalar>> c)
    : alg_(std::move(alg)), c_(std::move(c))
{
}

LieStructure LieStructure::from_differential(const GradedOperator& d)
{
    const AlgebraRef& alg = d.algebra();
    BTT_REQUIRE(d.degree() == 1, "structure constants come from a degree +1 differential");
    std::map<std::pair<int, int>, std::map<int, Scalar>> c;
    const size_t n = alg->num_generators();
    for (size_t k = 0; k < n; ++k) {
        if (alg->generator_degree(k) != 1)
            continue;
        Element image = d(Element::generator(alg, k));
        for (const auto& [m, coef] : image.terms()) {
            // A degree-2 monomial e^i e^j of degree-1 generators.
            std::vector<int> idx;
            for (size_t i = 0; i < n; ++i)
                for (int e = 0; e < m.exp(i); ++e)
                    idx.push_back(static_cast<int>(i));
            if (idx.size() != 2 || alg->generator_degree(static_cast<size_t>(idx[0])) != 1 ||
                alg->generator_degree(static_cast<size_t>(idx[1])) != 1)
                continue;
            c[{idx[0], idx[1]}][static_cast<int>(k)] = coef;
            c[{idx[1], idx[0]}][static_cast<int>(k)] = -coef;
        }
    }
    return LieStructure(alg, std::move(c));
}

MultiVector LieStructure::bracket(int i, int j) const
{
    MultiVector v(alg_, 1);
    auto it = c_.find({i, j});
    if (it != c_.end())
        for (const auto& [k, coef] : it->second)
            v.add_term({k}, coef);
    return v;
}

void LieStructure::check() const
{
    const size_t n = alg_->num_generators();
    std::vector<int> vecs;
    for (size_t i = 0; i < n; ++i)
        if (alg_->generator_degree(i) == 1)
            vecs.push_back(static_cast<int>(i));

    for (int i : vecs)
        for (int j : vecs) {
            MultiVector anti = bracket(i, j) + bracket(j, i);
            BTT_REQUIRE(anti.is_zero(), "structure constants are not antisymmetric");
        }
    auto ad = [&](int i, const MultiVector& v) {
        MultiVector out(alg_, 1);
        for (const auto& [idx, c] : v.terms()) {
            MultiVector b = bracket(i, idx[0]).scaled(c);
            out = out + b;
        }
        return out;
    };
    for (int i : vecs)
        for (int j : vecs)
            for (int k : vecs) {
                // [X_i,[X_j,X_k]] - [[X_i,X_j],X_k] - [X_j,[X_i,X_k]] = 0
                MultiVector lhs = ad(i, bracket(j, k));
                MultiVector bij = bracket(i, j);
                MultiVector r1(alg_, 1);
                for (const auto& [idx, c] : bij.terms())
                    r1 = r1 + ad(idx[0], MultiVector::basis_vector(alg_, {k})).scaled(c);
                MultiVector r2 = ad(j, bracket(i, k));
                BTT_REQUIRE((lhs - r1 - r2).is_zero(),
                            "Jacobi identity fails for the structure constants");
            }
}

MultiVector schouten(const MultiVector& v, const MultiVector& w, const LieStructure& lie)
{
    const AlgebraRef& alg = v.algebra();
    BTT_REQUIRE(alg == w.algebra(), "schouten across algebras");
    lie.check();
    const int p = v.arity(), q = w.arity();
    BTT_REQUIRE(p >= 1 && q >= 1, "schouten needs arities >= 1");
    MultiVector out(alg, p + q - 1);

    // [a_1∧..∧a_p, b_1∧..∧b_q] = sum_{s,t} (-1)^{s+t} [a_s,b_t] ∧ rest.
    for (const auto& [a, ca] : v.terms())
        for (const auto& [b, cb] : w.terms())
            for (int s = 0; s < p; ++s)
                for (int t = 0; t < q; ++t) {
                    MultiVector br = lie.bracket(a[static_cast<size_t>(s)], b[static_cast<size_t>(t)]);
                    if (br.is_zero())
                        continue;
                    std::vector<int> rest;
                    for (int i = 0; i < p; ++i)
                        if (i != s)
                            rest.push_back(a[static_cast<size_t>(i)]);
                    for (int i = 0; i < q; ++i)
                        if (i != t)
                            rest.push_back(b[static_cast<size_t>(i)]);
                    Scalar c = ca * cb;
                    if ((s + t) % 2 != 0) // (-1)^{(s+1)+(t+1)} with 1-based s,t
                        c = -c;
                    for (const auto& [bk, bc] : br.terms()) {
                        std::vector<int> idx{bk[0]};
                        idx.insert(idx.end(), rest.begin(), rest.end());
                        out.add_term(idx, c * bc);
                    }
                }
    return out;
}

GradedOperator interior_product(const MultiVector& v)
{
    const AlgebraRef& alg = v.algebra();
    const FieldSpec& f = alg->field();
    const size_t n = alg->num_generators();

    auto single_contraction = [&](int dual_index) {
        std::vector<Element> images;
        for (size_t i = 0; i < n; ++i) {
            if (alg->generator_degree(i) == 1 && static_cast<int>(i) == dual_index)
                images.push_back(Element::unit(alg));
            else
                images.push_back(Element::zero(alg));
        }
        return derivation_from_images(alg, images, -1);
    };

    GradedOperator out = GradedOperator::zero(alg, -v.arity());
    for (const auto& [idx, c] : v.terms()) {
        GradedOperator term = GradedOperator::identity(alg);
        for (int i : idx)
            term = term * single_contraction(i);
        out = out + term.scaled(c);
    }
    return out;
}

} // namespace btt
