#include "btt/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace btt {

bool Monomial::is_unit() const
{
    for (int e : exps_)
        if (e)
            return false;
    return true;
}

bool Monomial::operator<(const Monomial& o) const
{
    if (exps_.size() != o.exps_.size())
        return exps_.size() < o.exps_.size();
    // Lex-descending: the monomial using earlier generators more comes first.
    for (size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] != o.exps_[i])
            return exps_[i] > o.exps_[i];
    return false;
}

namespace {
constexpr long kMaxBasisSize = 1 << 20;
} // namespace

AlgebraRef Algebra::make(FieldSpec field, std::vector<GeneratorDecl> gens,
                         std::optional<int> degree_cap)
{
    auto alg = std::shared_ptr<Algebra>(new Algebra());
    alg->field_ = field;

    std::set<std::string> names;
    bool any_bi = false, all_bi = true;
    for (const auto& g : gens) {
        BTT_REQUIRE(!g.name.empty(), "generator with empty name");
        BTT_REQUIRE(names.insert(g.name).second, "duplicate generator name '" + g.name + "'");
        if (g.degree % 2 == 0)
            BTT_REQUIRE(g.nilpotent.has_value(),
                        "even-degree generator '" + g.name + "' needs a nilpotency exponent");
        if (g.nilpotent) {
            BTT_REQUIRE(*g.nilpotent >= 1, "nilpotency exponent must be >= 1");
            if (g.degree % 2 != 0)
                BTT_REQUIRE(*g.nilpotent <= 2,
                            "odd-degree generator '" + g.name + "' already squares to zero");
        }
        if (g.bidegree) {
            any_bi = true;
            BTT_REQUIRE(g.bidegree->first + g.bidegree->second == g.degree,
                        "bidegree of '" + g.name + "' does not sum to its total degree");
        } else {
            all_bi = false;
        }
    }
    BTT_REQUIRE(!any_bi || all_bi, "either all generators carry a bidegree or none do");
    alg->gens_ = std::move(gens);

    long size = 1;
    int max_deg = 0;
    for (size_t i = 0; i < alg->gens_.size(); ++i) {
        size *= alg->exponent_bound(i) + 1;
        BTT_REQUIRE(size <= kMaxBasisSize, "algebra basis too large");
        int top = alg->exponent_bound(i) * alg->gens_[i].degree;
        if (top > 0)
            max_deg += top;
    }
    alg->cap_ = degree_cap.value_or(max_deg);
    BTT_REQUIRE(alg->cap_ >= 0, "degree cap must be nonnegative");

    // Enumerate every in-bounds exponent vector; recursion keeps the
    // per-degree lists in graded-lex (lex-descending) order automatically
    // because higher exponents on earlier generators are visited first.
    std::vector<int> exps(alg->gens_.size(), 0);
    auto enumerate = [&](auto&& self, size_t i) -> void {
        if (i == alg->gens_.size()) {
            Monomial m(exps);
            int d = alg->degree_of(m);
            if (d <= alg->cap_)
                alg->bases_[d].push_back(m);
            return;
        }
        for (int e = alg->exponent_bound(i); e >= 0; --e) {
            exps[i] = e;
            self(self, i + 1);
        }
        exps[i] = 0;
    };
    enumerate(enumerate, 0);

    for (auto& [d, list] : alg->bases_) {
        std::sort(list.begin(), list.end());
        for (size_t k = 0; k < list.size(); ++k)
            alg->index_[list[k]] = static_cast<int>(k);
    }
    alg->min_degree_ = alg->bases_.begin()->first;
    alg->max_degree_ = alg->bases_.rbegin()->first;
    return alg;
}

int Algebra::generator_index(const std::string& name) const
{
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name)
            return static_cast<int>(i);
    return -1;
}

int Algebra::exponent_bound(size_t i) const
{
    const auto& g = gens_[i];
    if (g.degree % 2 != 0)
        return g.nilpotent ? std::min(1, *g.nilpotent - 1) : 1;
    return *g.nilpotent - 1;
}

bool Algebra::bigraded() const
{
    return !gens_.empty() && gens_[0].bidegree.has_value();
}

int Algebra::degree_of(const Monomial& m) const
{
    BTT_REQUIRE(m.size() == gens_.size(), "monomial size mismatch");
    int d = 0;
    for (size_t i = 0; i < gens_.size(); ++i)
        d += m.exp(i) * gens_[i].degree;
    return d;
}

std::pair<int, int> Algebra::bidegree_of(const Monomial& m) const
{
    BTT_REQUIRE(bigraded(), "algebra is not bigraded");
    int p = 0, q = 0;
    for (size_t i = 0; i < gens_.size(); ++i) {
        p += m.exp(i) * gens_[i].bidegree->first;
        q += m.exp(i) * gens_[i].bidegree->second;
    }
    return {p, q};
}

bool Algebra::in_basis(const Monomial& m) const
{
    return index_.find(m) != index_.end();
}

const std::vector<Monomial>& Algebra::basis(int degree) const
{
    auto it = bases_.find(degree);
    return it == bases_.end() ? empty_ : it->second;
}

int Algebra::total_dim() const
{
    int n = 0;
    for (const auto& [d, list] : bases_)
        n += static_cast<int>(list.size());
    return n;
}

int Algebra::basis_index(const Monomial& m) const
{
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
}

std::string Algebra::monomial_str(const Monomial& m) const
{
    if (m.is_unit())
        return "1";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < gens_.size(); ++i)
        for (int e = 0; e < m.exp(i); ++e) {
            if (!first)
                os << " ";
            os << gens_[i].name;
            first = false;
        }
    return os.str();
}

} // namespace btt
