#include "btt/mc.hpp"

#include "btt/transfer.hpp"

namespace btt {

bool mc_solved(const McOutcome& o)
{
    return std::holds_alternative<DeformationSeries>(o);
}

namespace {

// R_k = -1/2 sum_{i+j=k} [ξ_i, ξ_j], all coefficients in L^1.
Vec mc_rhs(const DgLie& l, const std::vector<Vec>& xi, int k)
{
    const FieldSpec& f = l.field();
    Vec r = zero_vec(f, l.dim(2));
    for (int i = 1; i <= k - 1; ++i) {
        int j = k - i;
        Vec br = l.bracket(1, xi[static_cast<size_t>(i - 1)], 1, xi[static_cast<size_t>(j - 1)]);
        r = vec_add(r, br);
    }
    Scalar minus_half = -(Scalar(f, 1) / Scalar(f, 2));
    return vec_scale(minus_half, r);
}

void verify_mc0(const DgLie& l, const std::vector<Vec>& xi)
{
    const FieldSpec& f = l.field();
    const Scalar half = Scalar(f, 1) / Scalar(f, 2);
    for (size_t k = 1; k <= xi.size(); ++k) {
        Vec total = l.diff(1).apply(xi[k - 1]);
        for (size_t i = 1; i < k; ++i) {
            Vec br = l.bracket(1, xi[i - 1], 1, xi[k - i - 1]);
            total = vec_add(total, vec_scale(half, br));
        }
        BTT_ASSERT(vec_is_zero(total),
                   "Maurer-Cartan identity fails on re-substitution at order " + std::to_string(k));
    }
}

} // namespace

McOutcome solve_mc(const DgLie& l, const Vec& alpha, int order, McMode mode)
{
    BTT_REQUIRE(l.field().characteristic() != 2, "characteristic 2 unsupported");
    BTT_REQUIRE(order >= 1, "order must be >= 1");
    Homology h1 = l.homology(1);
    BTT_REQUIRE(static_cast<int>(alpha.size()) == h1.dim(),
                "class coordinate length " + std::to_string(alpha.size()) + " != dim H^1 = " +
                    std::to_string(h1.dim()));

    std::optional<Contraction> contraction;
    std::optional<Homology> h2;
    if (mode == McMode::Homotopy)
        contraction = build_splitting(l);

    std::vector<Vec> xi;
    xi.push_back(h1.lift(alpha));

    for (int k = 2; k <= order; ++k) {
        Vec rk = mc_rhs(l, xi, k);
        BTT_ASSERT(vec_is_zero(l.diff(2).apply(rk)),
                   "right-hand side is not closed at order " + std::to_string(k));
        std::optional<Vec> next;
        if (mode == McMode::Pivot) {
            next = solve(l.diff(1), rk);
        } else {
            Vec cand = contraction->h_at(2, l).apply(rk);
            if (l.diff(1).apply(cand) == rk)
                next = cand;
        }
        if (!next) {
            if (!h2)
                h2.emplace(l.homology(2));
            Obstruction ob;
            ob.order = k;
            ob.rhs = rk;
            ob.h2_class = h2->project(rk);
            BTT_ASSERT(!vec_is_zero(ob.h2_class), "unsolvable right-hand side with zero class");
            return ob;
        }
        xi.push_back(std::move(*next));
    }

    verify_mc0(l, xi);
    DeformationSeries series;
    series.order = order;
    series.coefficients = std::move(xi);
    return series;
}

DeformationSeries tt_solve_mc(const BVStructure& b, const Vec& alpha, int order)
{
    const AlgebraRef& alg = b.algebra();
    const FieldSpec& f = alg->field();
    BTT_REQUIRE(f.characteristic() != 2, "characteristic 2 unsupported");
    BTT_REQUIRE(order >= 1, "order must be >= 1");

    DdCertificate dd = dd_lemma(b);
    if (!dd.pass)
        throw input_error("tt solver requires the dd-lemma; it fails at degree " +
                          std::to_string(*dd.failing_degree));

    GradedOperator delta = b.delta1();
    Homology h1(b.d().block_or_zero(1), b.d().block_or_zero(2));
    BTT_REQUIRE(static_cast<int>(alpha.size()) == h1.dim(),
                "class coordinate length != dim H^1 of the deformation complex");

    // A representative of alpha that is both d- and Δ-closed: rep + d(y)
    // with (Δ∘d)(y) = -Δ(rep).
    Vec rep = h1.lift(alpha);
    Vec xi1 = rep;
    bool have_rep = true;
    {
        Vec target = vec_scale(-Scalar::one(f), delta.block_or_zero(2).apply(rep));
        SparseMatrix delta_d = delta.block_or_zero(2) * b.d().block_or_zero(1);
        auto y = solve(delta_d, target);
        if (y)
            xi1 = vec_add(rep, b.d().block_or_zero(1).apply(*y));
        else
            have_rep = false;
    }

    if (!have_rep) {
        // No Ker(Δ) representative; fall back to the generic solver.
        DgLie l = to_dg_lie(b, false, false);
        McOutcome out = solve_mc(l, alpha, order);
        BTT_ASSERT(mc_solved(out), "generic fallback hit an obstruction on a dd-lemma input");
        DeformationSeries series = std::get<DeformationSeries>(out);
        series.tt_fallback = true;
        return series;
    }

    BTT_ASSERT(vec_is_zero(delta.block_or_zero(2).apply(xi1)), "ξ_1 is not Δ-closed");
    BTT_ASSERT(vec_is_zero(b.d().block_or_zero(2).apply(xi1)), "ξ_1 is not d-closed");

    const Scalar minus_half = -(Scalar(f, 1) / Scalar(f, 2));
    SparseMatrix d_delta = b.d().block_or_zero(2) * delta.block_or_zero(3); // A^3 -> A^3
    std::vector<Vec> im_delta3 = image_basis(delta.block_or_zero(4));

    std::vector<Vec> xi{xi1};
    for (int k = 2; k <= order; ++k) {
        Element rk_el = Element::zero(alg);
        for (int i = 1; i <= k - 1; ++i) {
            Element a = Element::from_coords(alg, 2, xi[static_cast<size_t>(i - 1)]);
            Element bb = Element::from_coords(alg, 2, xi[static_cast<size_t>(k - i - 1)]);
            rk_el = rk_el + derived_bracket(b, a, bb);
        }
        rk_el = rk_el.scaled(minus_half);
        Vec rk = rk_el.is_zero() ? zero_vec(f, alg->dim(3)) : rk_el.coords(3);

        BTT_ASSERT(vec_is_zero(b.d().block_or_zero(3).apply(rk)),
                   "right-hand side not d-closed at order " + std::to_string(k));
        BTT_ASSERT(in_span(rk, im_delta3, alg->dim(3), f),
                   "right-hand side not Δ-exact at order " + std::to_string(k));

        auto sigma = solve(d_delta, rk);
        BTT_ASSERT(sigma.has_value(),
                   "dΔ-system unsolvable at order " + std::to_string(k) + " despite the dd-lemma");
        Vec xik = delta.block_or_zero(3).apply(*sigma);
        BTT_ASSERT(vec_is_zero(delta.block_or_zero(2).apply(xik)), "ξ_k is not Δ-closed");
        xi.push_back(std::move(xik));
    }

    // Re-verify the Maurer-Cartan identity mod t^{order+1} by substitution.
    const Scalar half = Scalar(f, 1) / Scalar(f, 2);
    for (size_t k = 1; k <= xi.size(); ++k) {
        Element total = Element::from_coords(alg, 2, xi[k - 1]);
        total = b.d()(total);
        for (size_t i = 1; i < k; ++i) {
            Element a = Element::from_coords(alg, 2, xi[i - 1]);
            Element bb = Element::from_coords(alg, 2, xi[k - i - 1]);
            total = total + derived_bracket(b, a, bb).scaled(half);
        }
        BTT_ASSERT(total.is_zero(), "Maurer-Cartan identity fails at order " + std::to_string(k));
    }

    DeformationSeries series;
    series.order = order;
    series.coefficients = std::move(xi);
    return series;
}

CharPReport char_p_probe(const DgLie& l)
{
    const std::uint32_t p = l.field().characteristic();
    BTT_REQUIRE(p >= 5, "char-p probe needs p >= 5");

    CharPReport rep;
    rep.p = p;
    rep.order = static_cast<int>(p) - 1;
    Homology h1 = l.homology(1);
    for (int i = 0; i < h1.dim(); ++i) {
        Vec alpha = zero_vec(l.field(), h1.dim());
        alpha[static_cast<size_t>(i)] = Scalar::one(l.field());
        McOutcome out = solve_mc(l, alpha, rep.order);
        if (!mc_solved(out))
            rep.all_solved = false;
        rep.classes.push_back({std::move(alpha), std::move(out)});
    }
    return rep;
}

} // namespace btt
