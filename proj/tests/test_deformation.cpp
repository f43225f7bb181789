#include "btt/mc.hpp"

#include "btt/format.hpp"
#include "btt/gallery.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace btt;

namespace {

InputDocument gdoc(const std::string& name)
{
    return parse_document(gallery_entry(name).document);
}

} // namespace

TEST_CASE("to_dg_lie basics")
{
    // abelian BV gives the abelian dg-Lie algebra
    InputDocument torus = gdoc("abelian_torus");
    DgLie lt = to_dg_lie(make_bv_structure(torus));
    for (auto& [n, dim] : lt.dims())
        for (int a = 0; a < dim; ++a)
            for (auto& [m, dimm] : lt.dims()) {
                Vec x = zero_vec(torus.field, dim), y = zero_vec(torus.field, dimm);
                x[static_cast<size_t>(a)] = Scalar::one(torus.field);
                CHECK(vec_is_zero(lt.bracket(n, x, m, y)));
            }

    // heisenberg: construction validates ∂², antisymmetry, Jacobi, derivation
    DgLie lh = to_dg_lie(make_bv_structure(gdoc("heisenberg")));
    CHECK(lh.dim(1) == 3);
    CHECK(lh.dim(2) == 1);

    // to_dg_lie refuses unverified BV structures
    InputDocument heis = gdoc("heisenberg");
    std::vector<int> e12{1, 1, 0};
    GradedOperator bad = GradedOperator::from_monomial_images(
        heis.algebra, -1,
        {{Monomial(e12), Element::generator(heis.algebra, 2)}});
    BVStructure b = BVStructure::make(heis.algebra, heis.differential(), {bad});
    CHECK_THROWS_WITH_AS(to_dg_lie(b), doctest::Contains("verified BV structure"), input_error);
}

TEST_CASE("bigraded column restriction")
{
    InputDocument doc = gdoc("complex_torus");
    DgLie l = make_dg_lie(doc); // column 1 restriction from the file
    // t-linear monomials only: t_i, t_i s_j, t_i s_1 s_2
    CHECK(l.dim(0) == 2);
    CHECK(l.dim(1) == 4);
    CHECK(l.dim(2) == 2);
    CHECK(l.dim(3) == 0);

    // restriction on an ungraded algebra is refused
    CHECK_THROWS_AS(to_dg_lie(make_bv_structure(gdoc("heisenberg")), true), input_error);
}

TEST_CASE("solve_mc on abelian inputs solves to any order")
{
    DgLie l = to_dg_lie(make_bv_structure(gdoc("abelian_torus")));
    Homology h1 = l.homology(1);
    REQUIRE(h1.dim() == 3);
    for (int i = 0; i < h1.dim(); ++i) {
        Vec alpha = zero_vec(l.field(), h1.dim());
        alpha[static_cast<size_t>(i)] = Scalar::one(l.field());
        McOutcome o = solve_mc(l, alpha, 8);
        REQUIRE(mc_solved(o));
        const auto& s = std::get<DeformationSeries>(o);
        CHECK(s.order == 8);
        // ξ(t) = ξ1 t: higher coefficients vanish
        for (size_t k = 1; k < s.coefficients.size(); ++k)
            CHECK(vec_is_zero(s.coefficients[k]));
    }
}

TEST_CASE("solve_mc detects the order-2 obstruction and the oracle confirms it")
{
    InputDocument doc = gdoc("obstructed_dglie");
    DgLie l = make_dg_lie(doc);
    Homology h1 = l.homology(1);
    GalleryEntry e = gallery_entry("obstructed_dglie");
    int bad_class = -1;
    for (auto& [k, v] : e.manifest)
        if (k == "obstruction_class")
            bad_class = std::stoi(v);
    REQUIRE(bad_class >= 0);

    Vec alpha = zero_vec(doc.field, h1.dim());
    alpha[static_cast<size_t>(bad_class)] = Scalar::one(doc.field);
    McOutcome o = solve_mc(l, alpha, 8);
    REQUIRE_FALSE(mc_solved(o));
    const Obstruction& ob = std::get<Obstruction>(o);
    CHECK(ob.order == 2);
    CHECK_FALSE(vec_is_zero(ob.h2_class));
    // R_2 is closed but not exact: confirmed by the independent dense oracle
    CHECK(vec_is_zero(l.diff(2).apply(ob.rhs)));
    CHECK_FALSE(oracle::solvable(l.diff(1), ob.rhs));
    // H² is genuinely nonzero
    CHECK(l.homology(2).dim() > 0);
}

TEST_CASE("H² = 0 inputs never obstruct")
{
    oracle::Rng rng(7001);
    for (int trial = 0; trial < 12; ++trial) {
        DgLie l = oracle::random_h2_zero_dglie(FieldSpec::rationals(), rng);
        REQUIRE(l.homology(2).dim() == 0);
        Homology h1 = l.homology(1);
        for (int i = 0; i < h1.dim(); ++i) {
            Vec alpha = zero_vec(l.field(), h1.dim());
            alpha[static_cast<size_t>(i)] = Scalar::one(l.field());
            CHECK(mc_solved(solve_mc(l, alpha, 6)));
        }
    }
}

TEST_CASE("solver determinism")
{
    DgLie l = to_dg_lie(make_bv_structure(gdoc("heisenberg")));
    Homology h1 = l.homology(1);
    Vec alpha = zero_vec(l.field(), h1.dim());
    alpha[0] = Scalar::one(l.field());
    McOutcome a = solve_mc(l, alpha, 8), b = solve_mc(l, alpha, 8);
    REQUIRE(mc_solved(a));
    REQUIRE(mc_solved(b));
    CHECK(std::get<DeformationSeries>(a).coefficients ==
          std::get<DeformationSeries>(b).coefficients);
}

TEST_CASE("tt solver on dd-passing inputs")
{
    InputDocument doc = gdoc("abelian_torus");
    BVStructure b = make_bv_structure(doc);
    DgLie l = to_dg_lie(b);
    Homology h1 = l.homology(1);
    GradedOperator delta = b.delta1();
    for (int i = 0; i < h1.dim(); ++i) {
        Vec alpha = zero_vec(doc.field, h1.dim());
        alpha[static_cast<size_t>(i)] = Scalar::one(doc.field);
        DeformationSeries s = tt_solve_mc(b, alpha, 8);
        CHECK_FALSE(s.tt_fallback);
        REQUIRE(s.coefficients.size() == 8);
        // Δ-closedness of every coefficient, Im(Δ) membership from order 2 on
        for (size_t k = 0; k < s.coefficients.size(); ++k) {
            CHECK(vec_is_zero(delta.block_or_zero(2).apply(s.coefficients[k])));
            if (k >= 1)
                CHECK(vec_is_zero(s.coefficients[k])); // abelian: Im Δ = 0
        }
        // generic solver agrees on solvability
        CHECK(mc_solved(solve_mc(l, alpha, 8)));
    }
}

TEST_CASE("tt solver refuses dd-failing inputs")
{
    BVStructure b = make_bv_structure(gdoc("heisenberg"));
    Vec alpha = zero_vec(FieldSpec::rationals(), 2);
    alpha[0] = Scalar::one(FieldSpec::rationals());
    CHECK_THROWS_WITH_AS(tt_solve_mc(b, alpha, 4), doctest::Contains("dd-lemma"), input_error);
}

TEST_CASE("tt solver on a random dd-passing input with nontrivial classes")
{
    // squares and dots placed low enough to leave H^2 classes would break the
    // product truncation, so exercise tt through the torus plus square sum:
    // here the square contributes no degree-2 classes and the torus drives
    // the recursion; both solvers must agree on every class.
    oracle::Rng rng(7002);
    oracle::RandomBV rb = oracle::random_chunk_bv(FieldSpec::rationals(), rng, true);
    REQUIRE(dd_lemma(rb.b).pass);
    Homology h1(rb.b.d().block_or_zero(1), rb.b.d().block_or_zero(2));
    for (int i = 0; i < h1.dim(); ++i) {
        Vec alpha = zero_vec(FieldSpec::rationals(), h1.dim());
        alpha[static_cast<size_t>(i)] = Scalar::one(FieldSpec::rationals());
        DeformationSeries s = tt_solve_mc(rb.b, alpha, 6);
        CHECK(s.coefficients.size() == 6);
        DgLie l = to_dg_lie(rb.b, false, false);
        CHECK(mc_solved(solve_mc(l, alpha, 6)));
    }
}

TEST_CASE("pivot and homotopy modes agree on solvability for dd inputs")
{
    DgLie l = to_dg_lie(make_bv_structure(gdoc("abelian_torus")));
    Homology h1 = l.homology(1);
    for (int i = 0; i < h1.dim(); ++i) {
        Vec alpha = zero_vec(l.field(), h1.dim());
        alpha[static_cast<size_t>(i)] = Scalar::one(l.field());
        CHECK(mc_solved(solve_mc(l, alpha, 6, McMode::Pivot)) ==
              mc_solved(solve_mc(l, alpha, 6, McMode::Homotopy)));
    }
    // and they agree on the obstructed verdict too
    DgLie lo = make_dg_lie(gdoc("obstructed_dglie"));
    Homology h1o = lo.homology(1);
    for (int i = 0; i < h1o.dim(); ++i) {
        Vec alpha = zero_vec(lo.field(), h1o.dim());
        alpha[static_cast<size_t>(i)] = Scalar::one(lo.field());
        CHECK(mc_solved(solve_mc(lo, alpha, 4, McMode::Pivot)) ==
              mc_solved(solve_mc(lo, alpha, 4, McMode::Homotopy)));
    }
}

TEST_CASE("characteristic 2 is refused")
{
    InputDocument doc2 = reduce_document_mod(gdoc("abelian_torus"), 2);
    BVStructure b2 = make_bv_structure(doc2);
    DgLie l2 = to_dg_lie(b2, false, false);
    Vec alpha = zero_vec(l2.field(), l2.homology(1).dim());
    if (!alpha.empty())
        alpha[0] = Scalar::one(l2.field());
    CHECK_THROWS_WITH_AS(solve_mc(l2, alpha, 3), doctest::Contains("characteristic 2"),
                         input_error);
}

TEST_CASE("char-p probe")
{
    // abelian over F5: all classes solvable to order 4
    DgLie l5 = to_dg_lie(make_bv_structure(reduce_document_mod(gdoc("abelian_torus"), 5)),
                         false, false);
    CharPReport r5 = char_p_probe(l5);
    CHECK(r5.p == 5);
    CHECK(r5.order == 4);
    CHECK(r5.all_solved);

    // heisenberg mod 7: solvable (brackets of closed degree-2 classes vanish)
    DgLie l7 = to_dg_lie(make_bv_structure(reduce_document_mod(gdoc("heisenberg"), 7)),
                         false, false);
    CharPReport r7 = char_p_probe(l7);
    CHECK(r7.order == 6);
    CHECK(r7.all_solved);

    // obstructed mod 5: obstruction at order 2, no contradiction (the input
    // fails degeneration)
    DgLie lo = make_dg_lie(gdoc("obstructed_dglie")).reduce_mod(5);
    CharPReport ro = char_p_probe(lo);
    CHECK_FALSE(ro.all_solved);
    bool seen = false;
    for (const auto& c : ro.classes)
        if (!mc_solved(c.outcome)) {
            CHECK(std::get<Obstruction>(c.outcome).order == 2);
            seen = true;
        }
    CHECK(seen);

    // p < 5 unsupported
    DgLie l3 = make_dg_lie(gdoc("obstructed_dglie")).reduce_mod(3);
    CHECK_THROWS_AS(char_p_probe(l3), input_error);
}
