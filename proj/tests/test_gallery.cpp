#include "btt/gallery.hpp"

#include "btt/cyclic.hpp"
#include "btt/mc.hpp"
#include "btt/quasiabelian.hpp"
#include "btt/transfer.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace btt;

namespace {

// Replays one manifest claim; every claim must be decidable here — an
// unknown key is a test failure by design.
void replay_claim(const GalleryEntry& e, const InputDocument& doc, const std::string& key,
                  const std::string& value)
{
    INFO(e.name << ": " << key << " = " << value);
    if (key == "verify") {
        switch (doc.structure.kind) {
        case StructureDecl::Kind::Bv:
            CHECK(verify_bv(make_bv_structure(doc)).pass() == (value == "pass"));
            break;
        case StructureDecl::Kind::BvInfinity: {
            BVStructure b = make_bv_structure(doc);
            bool ok = verify_bv_infinity(b).pass();
            if (b.lambda())
                ok = ok && verify_conjugation_identity(b).pass();
            CHECK(ok == (value == "pass"));
            break;
        }
        case StructureDecl::Kind::DgLie:
            CHECK_NOTHROW((void)make_dg_lie(doc));
            break;
        default:
            FAIL("entry declares no structure");
        }
    } else if (key == "betti") {
        GradedOperator d = doc.differential();
        std::ostringstream os;
        for (int n = doc.algebra->min_degree(); n <= doc.algebra->max_degree(); ++n) {
            if (doc.algebra->dim(n) == 0)
                continue;
            if (n > doc.algebra->min_degree())
                os << ",";
            os << Homology(d.block_or_zero(n - 1), d.block_or_zero(n)).dim();
        }
        CHECK(os.str() == value);
    } else if (key == "dd_lemma") {
        CHECK(dd_lemma(make_bv_structure(doc)).pass == (value == "pass"));
    } else if (key == "degeneration") {
        CHECK(tristate_str(degenerates_at_E1(make_bv_structure(doc)).verdict) == value);
    } else if (key == "u_freeness") {
        CHECK(tristate_str(u_freeness_auto(make_bv_structure(doc)).verdict) == value);
    } else if (key == "zigzag") {
        CHECK(zigzag_certificate(make_bv_structure(doc)).valid == (value == "valid"));
    } else if (key == "induced_bracket") {
        CHECK(induced_bracket_on_homology(make_bv_structure(doc)).is_zero == (value == "zero"));
    } else if (key == "mc_order8") {
        DgLie l = to_dg_lie(make_bv_structure(doc), doc.structure.column.has_value(), false);
        Homology h1 = l.homology(1);
        bool all = true;
        for (int i = 0; i < h1.dim(); ++i) {
            Vec alpha = zero_vec(doc.field, h1.dim());
            alpha[static_cast<size_t>(i)] = Scalar::one(doc.field);
            all = all && mc_solved(solve_mc(l, alpha, 8));
        }
        CHECK(all == (value == "solved"));
    } else if (key == "reduction_mod_5" || key == "reduction_mod_7") {
        std::uint32_t p = key.back() == '5' ? 5 : 7;
        InputDocument red = reduce_document_mod(doc, p);
        CHECK(red.field.characteristic() == p);
        if (red.structure.kind == StructureDecl::Kind::DgLie)
            CHECK_NOTHROW((void)make_dg_lie(red));
        else if (red.structure.kind == StructureDecl::Kind::Bv)
            CHECK(verify_bv(make_bv_structure(red)).pass());
        else
            CHECK(verify_bv_infinity(make_bv_structure(red)).pass());
    } else if (key == "delta2") {
        BVStructure b = make_bv_structure(doc);
        REQUIRE(b.deltas().size() >= 2);
        CHECK(b.deltas()[1].is_zero() == (value == "zero"));
    } else if (key == "obstruction_class" || key == "obstruction_order") {
        DgLie l = make_dg_lie(doc);
        GalleryEntry entry = gallery_entry(e.name);
        int cls = -1, order = -1;
        for (auto& [k, v] : entry.manifest) {
            if (k == "obstruction_class")
                cls = std::stoi(v);
            if (k == "obstruction_order")
                order = std::stoi(v);
        }
        Homology h1 = l.homology(1);
        REQUIRE(cls >= 0);
        REQUIRE(cls < h1.dim());
        Vec alpha = zero_vec(doc.field, h1.dim());
        alpha[static_cast<size_t>(cls)] = Scalar::one(doc.field);
        McOutcome o = solve_mc(l, alpha, 8);
        REQUIRE_FALSE(mc_solved(o));
        CHECK(std::get<Obstruction>(o).order == order);
    } else if (key == "h2_nonzero") {
        DgLie l = make_dg_lie(doc);
        CHECK((l.homology(2).dim() > 0) == (value == "true"));
    } else if (key == "column_closed") {
        CHECK_NOTHROW((void)make_dg_lie(doc));
    } else if (key == "demonstration") {
        CHECK(value == "only");
    } else if (key == "conjugated_differential") {
        GradedOperator d = doc.differential();
        GradedOperator J = doc.build_operator(*doc.find_operator("J"));
        GradedOperator dc = conjugate(J, d);
        CHECK((dc * dc).is_zero() == (value == "square-zero"));
    } else if (key == "adjoint_involution") {
        GradedOperator d = doc.differential();
        CHECK((adjoint(adjoint(d)) == d) == (value == "true"));
    } else {
        FAIL("manifest key '" << key << "' has no replay rule");
    }
}

} // namespace

TEST_CASE("every gallery manifest claim replays")
{
    for (const std::string& name : gallery_names()) {
        GalleryEntry e = gallery_entry(name);
        InputDocument doc = parse_document(e.document);
        CHECK_FALSE(e.manifest.empty());
        for (const auto& [key, value] : e.manifest)
            replay_claim(e, doc, key, value);
    }
}

TEST_CASE("gallery construction details")
{
    GalleryEntry h = gallery_entry("heisenberg");
    CHECK(h.document.find("d e3 = 1 e1 e2") != std::string::npos);
    CHECK(h.document.find("structure bv koszul pi") != std::string::npos);

    GalleryEntry sq = gallery_entry("square_bicomplex");
    CHECK(sq.document.find("operator Delta degree -1") != std::string::npos);

    // parametrized torus sizes
    GalleryEntry t4 = gallery_entry("abelian_torus", 4);
    InputDocument doc4 = parse_document(t4.document);
    CHECK(doc4.algebra->num_generators() == 4);
    CHECK_THROWS_AS(gallery_entry("abelian_torus", 100), input_error);
    CHECK_THROWS_AS(gallery_entry("no_such_entry"), input_error);
}

TEST_CASE("the obstruction search is deterministic and self-verifying")
{
    ObstructedSearchResult a = obstructed_search();
    ObstructedSearchResult b = obstructed_search();
    REQUIRE(a.found);
    CHECK(a.document == b.document);
    CHECK(a.class_index == b.class_index);
    CHECK(a.order == 2);
    CHECK(a.candidates_tried == b.candidates_tried);

    // the found structure is a bona fide BV structure with an H^1 class
    // whose recursion stops at order 2
    InputDocument doc = parse_document(a.document);
    BVStructure bv = make_bv_structure(doc);
    CHECK(verify_bv(bv).pass());
    DgLie l = make_dg_lie(doc);
    Vec alpha = zero_vec(doc.field, l.homology(1).dim());
    alpha[static_cast<size_t>(a.class_index)] = Scalar::one(doc.field);
    McOutcome o = solve_mc(l, alpha, 4);
    REQUIRE_FALSE(mc_solved(o));
    CHECK(std::get<Obstruction>(o).order == 2);
    // independent solvability oracle on the failing order
    const Obstruction& ob = std::get<Obstruction>(o);
    CHECK_FALSE(oracle::solvable(l.diff(1), ob.rhs));
}
