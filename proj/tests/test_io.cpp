#include "btt/format.hpp"

#include "btt/gallery.hpp"
#include "btt/report.hpp"

#include <doctest.h>

using namespace btt;

TEST_CASE("minimal documents parse")
{
    InputDocument doc = parse_document("generator e1 degree 1\nd e1 = 0\n");
    CHECK(doc.field.is_rationals());
    CHECK(doc.algebra->num_generators() == 1);
    CHECK(doc.d_images.empty()); // zero images are dropped
    CHECK(doc.cap == 1);

    InputDocument fp = parse_document("field F 7\ngenerator x degree 2 nilpotent 3\ncap 4\n");
    CHECK(fp.field.characteristic() == 7);
    CHECK(fp.algebra->dim(4) == 1); // x^2
}

TEST_CASE("parse errors carry line numbers")
{
    // d image of the wrong degree
    CHECK_THROWS_WITH_AS(parse_document("generator e1 degree 1\nd e1 = 1 e1\n"),
                         doctest::Contains("line 2"), input_error);
    // unknown generator
    CHECK_THROWS_WITH_AS(parse_document("generator e1 degree 1\nd e2 = 0\n"),
                         doctest::Contains("line 2"), input_error);
    // declarations after operators
    CHECK_THROWS_WITH_AS(parse_document("generator e1 degree 1\nd e1 = 0\ngenerator e2 degree 1\n"),
                         doctest::Contains("line 3"), input_error);
    // even generator without nilpotency
    CHECK_THROWS_AS(parse_document("generator w degree 2\ncap 4\nd w = 0\n"), input_error);
    // bad field
    CHECK_THROWS_AS(parse_document("field F 6\n"), input_error);
    // unknown statement
    CHECK_THROWS_WITH_AS(parse_document("differential e1 = 0\n"), doctest::Contains("line 1"),
                         input_error);
    // unclosed operator block
    CHECK_THROWS_AS(parse_document("generator e1 degree 1\noperator T degree 0 { e1 -> 1 e1 ;\n"),
                    input_error);
    // monomial outside the basis
    CHECK_THROWS_WITH_AS(parse_document("generator e1 degree 1\nd e1 = 1 e1 e1\n"),
                         doctest::Contains("outside the algebra basis"), input_error);
    // structure with unknown binding
    CHECK_THROWS_AS(parse_document("generator e1 degree 1\nstructure bv delta Nope\n"),
                    input_error);
    // fractional coefficient over F_p
    CHECK_THROWS_AS(parse_document("field F 5\ngenerator e1 degree 1\ngenerator e2 degree 1\n"
                                   "generator e3 degree 1\nd e3 = 1/2 e1 e2\n"),
                    input_error);
    // mismatched modulus
    CHECK_THROWS_AS(parse_document("field F 5\ngenerator e1 degree 1\ngenerator e2 degree 1\n"
                                   "generator e3 degree 1\nd e3 = 1 mod 7 e1 e2\n"),
                    input_error);
}

TEST_CASE("coefficient syntax")
{
    InputDocument doc = parse_document(
        "generator e1 degree 1\ngenerator e2 degree 1\ngenerator e3 degree 1\ncap 3\n"
        "d e3 = 2/3 e1 e2\n");
    REQUIRE(doc.d_images.size() == 1);
    Element img = doc.d_images[0].second;
    CHECK(img.terms().begin()->second == Scalar::parse(doc.field, "2/3"));

    InputDocument fp = parse_document(
        "field F 5\ngenerator e1 degree 1\ngenerator e2 degree 1\ngenerator e3 degree 1\ncap 3\n"
        "d e3 = 7 mod 5 e1 e2\n");
    CHECK(fp.d_images[0].second.terms().begin()->second == Scalar(fp.field, 2));
}

TEST_CASE("round-trip on every gallery document")
{
    for (const std::string& name : gallery_names()) {
        GalleryEntry e = gallery_entry(name);
        InputDocument doc = parse_document(e.document);
        std::string printed = print_document(doc);
        CHECK(printed == e.document);
        InputDocument again = parse_document(printed);
        CHECK(documents_equal(doc, again));
        CHECK(print_document(again) == printed);
    }
}

TEST_CASE("gallery documents with comments parse identically")
{
    GalleryEntry e = gallery_entry("heisenberg");
    std::string with_comments = "# a comment line\n" + e.document + "# trailing\n";
    CHECK(documents_equal(parse_document(with_comments), parse_document(e.document)));
}

TEST_CASE("structure statement variants")
{
    std::string base = "generator e1 degree 1\ngenerator e2 degree 1\ngenerator e3 degree 1\n"
                       "cap 3\nd e3 = 1 e1 e2\nmultivector pi arity 2 = 1 e1 e2\n";
    CHECK(parse_document(base + "structure bv koszul pi\n").structure.mode ==
          StructureDecl::Mode::Koszul);
    InputDocument dg = parse_document(base + "operator D degree -1 { }\n"
                                             "structure dg_lie delta D column 1\n");
    CHECK(dg.structure.column == 1);
    CHECK_THROWS_AS(parse_document(base + "operator D degree -1 { }\n"
                                          "structure bv delta D column 1\n"),
                    input_error);
    CHECK_THROWS_AS(parse_document(base + "structure bv koszul pi\nstructure bv koszul pi\n"),
                    input_error);
    // multivector arity mismatch in terms
    CHECK_THROWS_AS(parse_document(base + "multivector bad arity 2 = 1 e1\n"), input_error);
}

TEST_CASE("reduction mod p rewrites the field and reduces coefficients")
{
    InputDocument doc = parse_document(
        "generator e1 degree 1\ngenerator e2 degree 1\ngenerator e3 degree 1\ncap 3\n"
        "d e3 = -1 e1 e2\n");
    InputDocument red = reduce_document_mod(doc, 5);
    CHECK(red.field.characteristic() == 5);
    CHECK(red.d_images[0].second.terms().begin()->second == Scalar(red.field, 4));
    CHECK_THROWS_AS(reduce_document_mod(red, 7), input_error);
}

TEST_CASE("reports are deterministic and carry the digest")
{
    Report a("verify", "some input");
    a.kv("check x", "pass");
    Report b("verify", "some input");
    b.kv("check x", "pass");
    CHECK(a.str() == b.str());
    CHECK(a.str().find("input-digest: ") != std::string::npos);
    CHECK(a.str().find("status: pass") != std::string::npos);

    Report c("verify", "other input");
    CHECK(a.str() != c.str());
}

TEST_CASE("fnv1a digest is stable")
{
    CHECK(digest_hex("") == "cbf29ce484222325");
    CHECK(digest_hex("a") != digest_hex("b"));
}
