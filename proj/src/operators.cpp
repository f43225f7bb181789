#include "btt/operators.hpp"

namespace btt {

const SparseMatrix GradedOperator::empty_block_{};

GradedOperator::GradedOperator(AlgebraRef alg, int degree) : alg_(std::move(alg)), degree_(degree) {}

GradedOperator GradedOperator::zero(const AlgebraRef& alg, int degree)
{
    return GradedOperator(alg, degree);
}

GradedOperator GradedOperator::identity(const AlgebraRef& alg)
{
    GradedOperator t(alg, 0);
    for (int n = alg->min_degree(); n <= alg->max_degree(); ++n)
        if (alg->dim(n) > 0)
            t.blocks_.emplace(n, SparseMatrix::identity(alg->field(), alg->dim(n)));
    return t;
}

GradedOperator GradedOperator::from_function(const AlgebraRef& alg, int degree,
                                             const std::function<Element(const Element&)>& fn)
{
    GradedOperator t(alg, degree);
    for (int n = alg->min_degree(); n <= alg->max_degree(); ++n) {
        const auto& basis = alg->basis(n);
        if (basis.empty())
            continue;
        SparseMatrix block(alg->field(), alg->dim(n + degree), static_cast<int>(basis.size()));
        bool nonzero = false;
        for (size_t k = 0; k < basis.size(); ++k) {
            Element img = fn(Element(alg, basis[k], Scalar::one(alg->field())));
            if (img.is_zero())
                continue;
            auto deg = img.degree();
            BTT_REQUIRE(deg && *deg == n + degree,
                        "operator image of a degree-" + std::to_string(n) +
                            " monomial is not homogeneous of degree " + std::to_string(n + degree));
            Vec col = img.coords(n + degree);
            for (size_t i = 0; i < col.size(); ++i)
                if (!col[i].is_zero()) {
                    block.set(static_cast<int>(i), static_cast<int>(k), col[i]);
                    nonzero = true;
                }
        }
        if (nonzero)
            t.blocks_.emplace(n, std::move(block));
    }
    return t;
}

GradedOperator GradedOperator::from_monomial_images(
    const AlgebraRef& alg, int degree, const std::vector<std::pair<Monomial, Element>>& images)
{
    std::map<Monomial, const Element*> table;
    for (const auto& [m, e] : images) {
        BTT_REQUIRE(alg->in_basis(m), "operator image given for a monomial outside the basis");
        BTT_REQUIRE(table.emplace(m, &e).second, "duplicate operator image");
    }
    return from_function(alg, degree, [&](const Element& x) {
        const Monomial& m = x.terms().begin()->first;
        auto it = table.find(m);
        return it == table.end() ? Element::zero(alg) : *it->second;
    });
}

const SparseMatrix& GradedOperator::block(int source_degree) const
{
    auto it = blocks_.find(source_degree);
    return it == blocks_.end() ? empty_block_ : it->second;
}

SparseMatrix GradedOperator::block_or_zero(int source_degree) const
{
    auto it = blocks_.find(source_degree);
    if (it != blocks_.end())
        return it->second;
    return SparseMatrix(alg_->field(), alg_->dim(source_degree + degree_), alg_->dim(source_degree));
}

void GradedOperator::set_block(int source_degree, const SparseMatrix& m)
{
    BTT_REQUIRE(m.cols() == alg_->dim(source_degree) && m.rows() == alg_->dim(source_degree + degree_),
                "block shape mismatch");
    if (m.is_zero())
        blocks_.erase(source_degree);
    else
        blocks_[source_degree] = m;
}

Element GradedOperator::apply(const Element& x) const
{
    BTT_REQUIRE(alg_ == x.algebra(), "operator applied to an element of another algebra");
    Element out(alg_);
    for (const auto& [n, part] : x.decompose()) {
        auto it = blocks_.find(n);
        if (it == blocks_.end())
            continue;
        out = out + Element::from_coords(alg_, n + degree_, it->second.apply(part.coords(n)));
    }
    return out;
}

bool GradedOperator::is_zero() const
{
    for (const auto& [n, b] : blocks_)
        if (!b.is_zero())
            return false;
    return true;
}

void GradedOperator::check_compatible(const GradedOperator& o, const char* what) const
{
    BTT_REQUIRE(alg_ == o.alg_, std::string("operator algebra mismatch in ") + what);
}

GradedOperator GradedOperator::operator+(const GradedOperator& o) const
{
    check_compatible(o, "sum");
    BTT_REQUIRE(degree_ == o.degree_, "operator degree mismatch in sum");
    GradedOperator t(alg_, degree_);
    for (int n = alg_->min_degree(); n <= alg_->max_degree(); ++n) {
        bool has_a = blocks_.count(n), has_b = o.blocks_.count(n);
        if (!has_a && !has_b)
            continue;
        SparseMatrix m(alg_->field(), alg_->dim(n + degree_), alg_->dim(n));
        if (has_a)
            m = m + blocks_.at(n);
        if (has_b)
            m = m + o.blocks_.at(n);
        t.set_block(n, m);
    }
    return t;
}

GradedOperator GradedOperator::operator-(const GradedOperator& o) const
{
    return *this + o.scaled(-Scalar::one(alg_->field()));
}

GradedOperator GradedOperator::scaled(const Scalar& c) const
{
    GradedOperator t(alg_, degree_);
    if (c.is_zero())
        return t;
    for (const auto& [n, b] : blocks_)
        t.blocks_.emplace(n, b.scaled(c));
    return t;
}

GradedOperator GradedOperator::operator*(const GradedOperator& o) const
{
    check_compatible(o, "composition");
    GradedOperator t(alg_, degree_ + o.degree_);
    for (const auto& [n, inner] : o.blocks_) {
        auto it = blocks_.find(n + o.degree_);
        if (it == blocks_.end())
            continue;
        SparseMatrix prod = it->second * inner;
        if (!prod.is_zero())
            t.blocks_.emplace(n, std::move(prod));
    }
    return t;
}

bool GradedOperator::operator==(const GradedOperator& o) const
{
    if (alg_ != o.alg_ || degree_ != o.degree_)
        return false;
    return (*this - o).is_zero();
}

GradedOperator derivation_from_images(const AlgebraRef& alg,
                                      const std::vector<Element>& generator_images, int degree)
{
    BTT_REQUIRE(generator_images.size() == alg->num_generators(),
                "derivation needs one image per generator");
    for (size_t i = 0; i < generator_images.size(); ++i) {
        const Element& img = generator_images[i];
        if (img.is_zero())
            continue;
        auto d = img.degree();
        BTT_REQUIRE(d && *d == alg->generator_degree(i) + degree,
                    "derivation image of generator '" + alg->generators()[i].name +
                        "' is not homogeneous of degree " +
                        std::to_string(alg->generator_degree(i) + degree));
    }

    // Leibniz on the sorted factor word: D(x1...xm) = sum_i ± x1..D(x_i)..xm
    // with the sign (-1)^{|D| * deg(prefix)}; element products supply the
    // remaining Koszul reordering signs.
    auto apply = [&](const Element& x) {
        const Monomial& m = x.terms().begin()->first;
        std::vector<size_t> word;
        for (size_t i = 0; i < alg->num_generators(); ++i)
            for (int e = 0; e < m.exp(i); ++e)
                word.push_back(i);
        Element out(alg);
        const FieldSpec& f = alg->field();
        for (size_t pos = 0; pos < word.size(); ++pos) {
            if (generator_images[word[pos]].is_zero())
                continue;
            int prefix_deg = 0;
            std::vector<int> pre(alg->num_generators(), 0), suf(alg->num_generators(), 0);
            for (size_t k = 0; k < pos; ++k) {
                pre[word[k]]++;
                prefix_deg += alg->generator_degree(word[k]);
            }
            for (size_t k = pos + 1; k < word.size(); ++k)
                suf[word[k]]++;
            Scalar sign = Scalar::one(f);
            if ((degree * prefix_deg) % 2 != 0)
                sign = -sign;
            Element term = Element(alg, Monomial(pre), sign) * generator_images[word[pos]] *
                           Element(alg, Monomial(suf), Scalar::one(f));
            out = out + term;
        }
        return out;
    };
    return GradedOperator::from_function(alg, degree, apply);
}

GradedOperator multiplication_operator(const Element& a)
{
    const AlgebraRef& alg = a.algebra();
    auto d = a.degree();
    BTT_REQUIRE(a.is_zero() || d.has_value(), "multiplication operator needs a homogeneous element");
    return GradedOperator::from_function(alg, a.is_zero() ? 0 : *d,
                                         [&](const Element& x) { return a * x; });
}

GradedOperator graded_commutator(const GradedOperator& s, const GradedOperator& t)
{
    GradedOperator st = s * t;
    GradedOperator ts = t * s;
    if ((s.degree() * t.degree()) % 2 != 0)
        return st + ts;
    return st - ts;
}

std::optional<int> koszul_order(const GradedOperator& t, int k_max)
{
    const AlgebraRef& alg = t.algebra();
    std::vector<GradedOperator> mults;
    for (size_t i = 0; i < alg->num_generators(); ++i)
        mults.push_back(multiplication_operator(Element::generator(alg, i)));

    std::vector<GradedOperator> level{t};
    for (int k = 0; k <= k_max; ++k) {
        std::vector<GradedOperator> next;
        for (const auto& u : level)
            for (const auto& m : mults) {
                GradedOperator c = graded_commutator(u, m);
                if (!c.is_zero())
                    next.push_back(std::move(c));
            }
        if (next.empty())
            return k;
        level = std::move(next);
    }
    return std::nullopt;
}

GradedOperator conjugate(const GradedOperator& eta, const GradedOperator& t)
{
    const AlgebraRef& alg = t.algebra();
    BTT_REQUIRE(alg == eta.algebra(), "conjugation across algebras");
    const int e = eta.degree();

    GradedOperator eta_inv(alg, -e);
    for (int n = alg->min_degree(); n <= alg->max_degree(); ++n) {
        int dn = alg->dim(n), dm = alg->dim(n + e);
        if (dn == 0 && dm == 0)
            continue;
        BTT_REQUIRE(dn == dm, "eta is not invertible: dim mismatch at degree " + std::to_string(n));
        if (dn == 0)
            continue;
        const SparseMatrix& b = eta.block(n);
        BTT_REQUIRE(b.rows() == dn, "eta is not invertible: missing block at degree " + std::to_string(n));
        SparseMatrix inv(alg->field(), dn, dn);
        for (int j = 0; j < dn; ++j) {
            Vec ej = zero_vec(alg->field(), dn);
            ej[static_cast<size_t>(j)] = Scalar::one(alg->field());
            auto x = solve(b, ej);
            BTT_REQUIRE(x.has_value(),
                        "eta is not invertible at degree " + std::to_string(n));
            for (int i = 0; i < dn; ++i)
                if (!(*x)[static_cast<size_t>(i)].is_zero())
                    inv.set(i, j, (*x)[static_cast<size_t>(i)]);
        }
        eta_inv.set_block(n + e, inv);
    }
    return eta_inv * t * eta;
}

GradedOperator adjoint(const GradedOperator& t)
{
    const AlgebraRef& alg = t.algebra();
    GradedOperator a(alg, -t.degree());
    for (const auto& [n, b] : t.blocks())
        if (!b.is_zero())
            a.set_block(n + t.degree(), b.transpose());
    return a;
}

} // namespace btt
