// Independent reference implementations the test suites check the library
// against. Everything here deliberately avoids the library's elimination,
// deviation and expansion code paths.
#pragma once

#include "btt/bv.hpp"
#include "btt/dglie.hpp"
#include "btt/multivector.hpp"

#include <gmpxx.h>

#include <random>

namespace oracle {

using btt::AlgebraRef;
using btt::Element;
using btt::FieldSpec;
using btt::GradedOperator;
using btt::Monomial;
using btt::MultiVector;
using btt::Scalar;
using btt::SparseMatrix;
using btt::Vec;

// --- dense textbook Gaussian elimination, straight over GMP rationals or
// --- machine residues, no pivot policy shared with the library ------------

inline int dense_rank_q(std::vector<std::vector<mpq_class>> a)
{
    const size_t nr = a.size();
    const size_t nc = nr ? a[0].size() : 0;
    int rank = 0;
    for (size_t col = 0; col < nc; ++col) {
        size_t piv = nr;
        for (size_t r = static_cast<size_t>(rank); r < nr; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv == nr)
            continue;
        std::swap(a[static_cast<size_t>(rank)], a[piv]);
        for (size_t r = 0; r < nr; ++r) {
            if (r == static_cast<size_t>(rank) || a[r][col] == 0)
                continue;
            mpq_class factor = a[r][col] / a[static_cast<size_t>(rank)][col];
            for (size_t cc = col; cc < nc; ++cc)
                a[r][cc] -= factor * a[static_cast<size_t>(rank)][cc];
        }
        ++rank;
    }
    return rank;
}

inline int dense_rank_modp(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p)
{
    const size_t nr = a.size();
    const size_t nc = nr ? a[0].size() : 0;
    auto inv = [&](std::uint64_t x) {
        std::uint64_t r = 1, b = x % p, e = p - 2;
        while (e) {
            if (e & 1)
                r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    int rank = 0;
    for (size_t col = 0; col < nc; ++col) {
        size_t piv = nr;
        for (size_t r = static_cast<size_t>(rank); r < nr; ++r)
            if (a[r][col] % p != 0) {
                piv = r;
                break;
            }
        if (piv == nr)
            continue;
        std::swap(a[static_cast<size_t>(rank)], a[piv]);
        std::uint64_t f = inv(a[static_cast<size_t>(rank)][col]);
        for (size_t r = 0; r < nr; ++r) {
            if (r == static_cast<size_t>(rank) || a[r][col] % p == 0)
                continue;
            std::uint64_t factor = a[r][col] % p * f % p;
            for (size_t cc = col; cc < nc; ++cc)
                a[r][cc] = (a[r][cc] + (p - factor) * (a[static_cast<size_t>(rank)][cc] % p)) % p;
        }
        ++rank;
    }
    return rank;
}

inline int rank(const SparseMatrix& m)
{
    if (m.field().is_rationals()) {
        std::vector<std::vector<mpq_class>> a(static_cast<size_t>(m.rows()),
                                              std::vector<mpq_class>(static_cast<size_t>(m.cols()), 0));
        for (int i = 0; i < m.rows(); ++i)
            for (const auto& [j, v] : m.row(i))
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] = v.rational();
        return dense_rank_q(std::move(a));
    }
    std::uint64_t p = m.field().characteristic();
    std::vector<std::vector<std::uint64_t>> a(static_cast<size_t>(m.rows()),
                                              std::vector<std::uint64_t>(static_cast<size_t>(m.cols()), 0));
    for (int i = 0; i < m.rows(); ++i)
        for (const auto& [j, v] : m.row(i))
            a[static_cast<size_t>(i)][static_cast<size_t>(j)] = v.residue();
    return dense_rank_modp(std::move(a), p);
}

inline int kernel_dim(const SparseMatrix& m) { return m.cols() - oracle::rank(m); }

inline bool solvable(const SparseMatrix& m, const Vec& b)
{
    SparseMatrix aug = SparseMatrix::hstack(m, SparseMatrix::from_cols(m.field(), {b}, m.rows()));
    return oracle::rank(aug) == oracle::rank(m);
}

// dim Ker(d_out) - rank(d_in)
inline int homology_dim(const SparseMatrix& d_in, const SparseMatrix& d_out)
{
    return kernel_dim(d_out) - oracle::rank(d_in);
}

// --- operator order via the literal deviation recursion on monomial tuples -

// [..[[t, L_{m_1}], L_{m_2}].., L_{m_n}](x), evaluated functionally.
inline Element deviation_apply(const GradedOperator& t, const std::vector<Element>& tuple,
                               const Element& x)
{
    if (tuple.empty())
        return t(x);
    std::vector<Element> rest(tuple.begin(), tuple.end() - 1);
    const Element& a = tuple.back();
    int inner_degree = t.degree();
    for (const auto& e : rest)
        inner_degree += *e.degree();
    Element first = deviation_apply(t, rest, a * x);
    Element second = a * deviation_apply(t, rest, x);
    bool flip = (inner_degree * *a.degree()) % 2 != 0;
    return flip ? first + second : first - second;
}

// Smallest k <= k_max with all (k+1)-fold deviations vanishing on monomial
// tuples; nullopt when the order exceeds k_max.
inline std::optional<int> deviation_order(const GradedOperator& t, int k_max)
{
    const AlgebraRef& alg = t.algebra();
    std::vector<Element> monomials;
    for (int n = alg->min_degree(); n <= alg->max_degree(); ++n)
        for (const auto& m : alg->basis(n))
            monomials.push_back(Element(alg, m, Scalar::one(alg->field())));

    std::vector<Element> tuple;
    // true when some deviation of the given depth is nonzero
    std::function<bool(int)> nonzero = [&](int depth) -> bool {
        if (depth == 0) {
            for (const auto& x : monomials)
                if (!deviation_apply(t, tuple, x).is_zero())
                    return true;
            return false;
        }
        for (const auto& a : monomials) {
            tuple.push_back(a);
            bool nz = nonzero(depth - 1);
            tuple.pop_back();
            if (nz)
                return true;
        }
        return false;
    };
    for (int k = 0; k <= k_max; ++k)
        if (!nonzero(k + 1))
            return k;
    return std::nullopt;
}

// --- randomized input generators -------------------------------------------

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    int uniform(int lo, int hi) // inclusive
    {
        return static_cast<int>(eng() % static_cast<std::uint64_t>(hi - lo + 1)) + lo;
    }
};

inline AlgebraRef exterior_algebra(const FieldSpec& f, int ngens)
{
    std::vector<btt::GeneratorDecl> gens;
    for (int i = 1; i <= ngens; ++i)
        gens.push_back({"e" + std::to_string(i), 1, std::nullopt, std::nullopt});
    return btt::Algebra::make(f, gens);
}

// Random filtered Chevalley-Eilenberg differential with d^2 = 0.
inline GradedOperator random_ce_differential(const AlgebraRef& alg, Rng& rng)
{
    const FieldSpec& f = alg->field();
    const int n = static_cast<int>(alg->num_generators());
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<Element> images(static_cast<size_t>(n), Element::zero(alg));
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < k; ++j)
                    if (rng.uniform(0, 2) == 0) {
                        int c = rng.uniform(-1, 1);
                        if (c == 0)
                            continue;
                        images[static_cast<size_t>(k)] =
                            images[static_cast<size_t>(k)] +
                            (Element::generator(alg, static_cast<size_t>(i)) *
                             Element::generator(alg, static_cast<size_t>(j)))
                                .scaled(Scalar(f, c));
                    }
        GradedOperator d = btt::derivation_from_images(alg, images, 1);
        if ((d * d).is_zero())
            return d;
    }
    return GradedOperator::zero(alg, 1);
}

inline MultiVector random_bivector(const AlgebraRef& alg, Rng& rng)
{
    MultiVector pi(alg, 2);
    const int n = static_cast<int>(alg->num_generators());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform(0, 2) == 0) {
                int c = rng.uniform(-1, 1);
                if (c)
                    pi.add_term({i, j}, Scalar(alg->field(), c));
            }
    return pi;
}

// Random direct sum of elementary chunks, realized as one algebra whose
// generators sit so high that all products die above the degree cap:
//   square: a -> b (d), a -> c (Δ), with [d,Δ] = 0 closing on e
//   dot:    a single closed generator
//   dpair:  x -> y under d only       (kills nothing, keeps dd true)
//   qpair:  x -> y under Δ only       (breaks dd and degeneration)
struct RandomBV {
    btt::BVStructure b;
    int squares, dots, dpairs, qpairs;
};

inline RandomBV random_chunk_bv(const FieldSpec& f, Rng& rng, bool squares_and_dots_only)
{
    const int base = 4 + rng.uniform(0, 1); // 4 or 5
    const int cap = base + 1;
    std::vector<btt::GeneratorDecl> gens;
    struct Arrow {
        int from, to;
        Scalar c;
        bool is_d;
    };
    std::vector<Arrow> arrows;
    auto add_gen = [&](int degree) {
        gens.push_back({"g" + std::to_string(gens.size() + 1), degree,
                        std::nullopt,
                        degree % 2 == 0 ? std::optional<int>(2) : std::nullopt});
        return static_cast<int>(gens.size()) - 1;
    };
    int nsq = rng.uniform(1, 2), ndot = rng.uniform(0, 2);
    int ndp = squares_and_dots_only ? 0 : rng.uniform(0, 1);
    int nqp = squares_and_dots_only ? 0 : rng.uniform(0, 1);

    for (int s = 0; s < nsq; ++s) {
        int c = add_gen(base - 1), a = add_gen(base), e = add_gen(base), bb = add_gen(base + 1);
        Scalar lam(f, rng.uniform(0, 1) ? 2 : 1), mu(f, rng.uniform(0, 1) ? -1 : 1),
            rho(f, rng.uniform(0, 1) ? 1 : 3);
        // d a = lam b, d c = mu e, Δ a = rho c, Δ b = -(rho mu / lam) e
        arrows.push_back({a, bb, lam, true});
        arrows.push_back({c, e, mu, true});
        arrows.push_back({a, c, rho, false});
        arrows.push_back({bb, e, -(rho * mu / lam), false});
    }
    for (int s = 0; s < ndot; ++s)
        add_gen(base - 1 + rng.uniform(0, 2));
    for (int s = 0; s < ndp; ++s) {
        int x = add_gen(base), y = add_gen(base + 1);
        arrows.push_back({x, y, Scalar(f, 1), true});
    }
    for (int s = 0; s < nqp; ++s) {
        int x = add_gen(base), y = add_gen(base - 1);
        arrows.push_back({x, y, Scalar(f, 1), false});
    }

    AlgebraRef alg = btt::Algebra::make(f, gens, cap);
    std::vector<Element> dimgs(gens.size(), Element::zero(alg));
    std::vector<std::pair<Monomial, Element>> qimgs;
    for (const auto& ar : arrows) {
        Element img = Element::generator(alg, static_cast<size_t>(ar.to)).scaled(ar.c);
        if (ar.is_d) {
            dimgs[static_cast<size_t>(ar.from)] = dimgs[static_cast<size_t>(ar.from)] + img;
        } else {
            std::vector<int> exps(gens.size(), 0);
            exps[static_cast<size_t>(ar.from)] = 1;
            qimgs.push_back({Monomial(exps), img});
        }
    }
    GradedOperator d = btt::derivation_from_images(alg, dimgs, 1);
    GradedOperator delta = GradedOperator::from_monomial_images(alg, -1, qimgs);
    std::vector<GradedOperator> deltas;
    if (!delta.is_zero())
        deltas.push_back(delta);
    return RandomBV{btt::BVStructure::make(alg, d, deltas), nsq, ndot, ndp, nqp};
}

// Random dg-Lie with H^2 = 0: L^1 -> L^2 surjective, brackets into L^2 only.
inline btt::DgLie random_h2_zero_dglie(const FieldSpec& f, Rng& rng)
{
    int b = rng.uniform(1, 3);
    int a = b + rng.uniform(1, 3);
    SparseMatrix d1(f, b, a);
    for (;;) {
        for (int i = 0; i < b; ++i)
            for (int j = 0; j < a; ++j)
                d1.set(i, j, Scalar(f, rng.uniform(-2, 2)));
        if (oracle::rank(d1) == b)
            break;
    }
    btt::DgLie::BracketTable br;
    std::vector<SparseMatrix> mats;
    std::vector<std::vector<Vec>> table(static_cast<size_t>(a),
                                        std::vector<Vec>(static_cast<size_t>(a)));
    for (int i = 0; i < a; ++i)
        for (int j = i; j < a; ++j) {
            Vec v = btt::zero_vec(f, b);
            for (int k = 0; k < b; ++k)
                v[static_cast<size_t>(k)] = Scalar(f, rng.uniform(-1, 1));
            table[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
            table[static_cast<size_t>(j)][static_cast<size_t>(i)] = v; // symmetric in degree 1
        }
    for (int i = 0; i < a; ++i) {
        SparseMatrix m(f, b, a);
        for (int j = 0; j < a; ++j)
            for (int k = 0; k < b; ++k)
                m.set(k, j, table[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)]);
        mats.push_back(std::move(m));
    }
    br.emplace(std::make_pair(1, 1), std::move(mats));
    return btt::DgLie::make(f, {{1, a}, {2, b}}, {{1, d1}}, std::move(br), {}, true);
}

} // namespace oracle
