#include "doctest.h"

#include "mvb/error.hpp"
#include "mvb/fpgroup.hpp"

using namespace mvb;

namespace {

FreeWord w3(const char* text) { return parse_free_word(text, {"X", "Y", "Z"}); }

}  // namespace

TEST_CASE("free word parsing") {
    const std::vector<std::string> g{"X", "Y", "Z"};
    CHECK(parse_free_word("XYZ", g) == FreeWord{1, 2, 3});
    CHECK(parse_free_word("(X Y)^2", g) == FreeWord{1, 2, 1, 2});
    CHECK(parse_free_word("(XY)^-1", g) == FreeWord{-2, -1});
    CHECK(parse_free_word("XYX = YXY", g) == FreeWord{1, 2, 1, -2, -1, -2});
    CHECK(parse_free_word("1", g).empty());
    CHECK(free_inverse(FreeWord{1, -2, 3}) == FreeWord{-3, 2, -1});
    CHECK(format_free_word(FreeWord{1, 2, 3}, g) == "X Y Z");
    CHECK_THROWS_AS(parse_free_word("XQ", g), Error);
    CHECK(parse_free_word("X10X1", {"X1", "X10"}) == FreeWord{2, 1});
}

TEST_CASE("presentation parsing") {
    const Presentation t = parse_presentation("gens: a b; rels: a^2, b^3, (a b)^2");
    CHECK(t.generators == std::vector<std::string>{"a", "b"});
    CHECK(t.relators.size() == 3);
    const Presentation j = parse_presentation(R"({"generators": ["V", "H"], "relators": ["V^2", "H^2", "(V H)^3"]})");
    CHECK(j.relators.size() == 3);
    CHECK_THROWS_AS(parse_presentation("rels: a^2"), Error);
    CHECK_THROWS_AS(preset("vb9"), Error);
}

TEST_CASE("known group orders") {
    // S_3, S_4 as Coxeter groups, dihedral of order 10, cyclic, trivial
    CHECK(group_order(parse_presentation("gens: a b; rels: a^2, b^2, (a b)^3")) == 6);
    CHECK(group_order(parse_presentation("gens: a b c; rels: a^2, b^2, c^2, (a b)^3, (b c)^3, (a c)^2")) == 24);
    CHECK(group_order(parse_presentation("gens: r s; rels: r^5, s^2, (s r)^2")) == 10);
    CHECK(group_order(parse_presentation("gens: a; rels: a^7")) == 7);
    CHECK(group_order(parse_presentation("gens: a b; rels: a, b")) == 1);
    // A_5 as <a,b | a^2, b^3, (ab)^5>
    CHECK(group_order(parse_presentation("gens: a b; rels: a^2, b^3, (a b)^5")) == 60);
}

TEST_CASE("double and triple presets") {
    CHECK(group_order(preset("vb2")) == 6);
    const CosetTable t = coset_enumerate(preset("vb3"), {});
    CHECK(t.status == EnumStatus::Complete);
    CHECK(t.size() == 72);
    CHECK(t.rowsDefined <= 1000);
    CHECK(t.relator_consistent(preset("vb3")));
    CHECK(group_order(preset("conjecture:2")) == 6);
    CHECK(group_order(preset("conjecture:3")) == 72);
    CHECK(group_order(preset("conjecture:1")) == 2);
}

TEST_CASE("cap is reported") {
    CHECK_THROWS_AS(group_order(preset("vb3-ppp-only"), 5000), Error);
    CHECK(coset_enumerate(preset("vb3-ppp-only"), {}, 5000).status == EnumStatus::Capped);
    try {
        group_order(preset("vb3-ppp-only"), 2000);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::EnumerationCapExceeded);
    }
}

TEST_CASE("subgroups and quotients of the triple group") {
    const Presentation p = preset("vb3");
    const std::vector<FreeWord> n{w3("XYXZ"), w3("YZYX"), w3("ZXZY")};
    CHECK(subgroup_index(p, n) == 6);
    CHECK(is_normal(p, n));
    CHECK_FALSE(is_normal(p, {w3("X")}));
    const QuotientResult q = quotient_order(p, n);
    CHECK(q.order == 6);
    CHECK(q.nonabelian);
    CHECK(quotient_order(p, {w3("X"), w3("Y"), w3("Z")}).order == 1);
    const QuotientResult ab = quotient_order(p, {w3("XYX^-1Y^-1"), w3("YZY^-1Z^-1"), w3("XZX^-1Z^-1")});
    CHECK_FALSE(ab.nonabelian);
    CHECK(ab.order == 2);
    const QuotientResult v = quotient_order(preset("vb2"), {parse_free_word("VH", {"V", "H"})});
    CHECK(v.order == 2);
}

TEST_CASE("adding (XYZ)^5 to the P relations collapses the group") {
    Presentation p = preset("vb3-ppp-only");
    p.relators.push_back(w3("(XYZ)^5"));
    CHECK(group_order(p) == 1);
}

TEST_CASE("coset tables are relator consistent and enumeration is deterministic") {
    const Presentation p = preset("vb3");
    const CosetTable a = coset_enumerate(p, {w3("X")});
    const CosetTable b = coset_enumerate(p, {w3("X")});
    CHECK(a.rows == b.rows);
    CHECK(a.size() == 36);
    CHECK(a.relator_consistent(p));
    CHECK(a.trace(0, w3("X")) == 0);
}

TEST_CASE("finite quotient representation") {
    const FiniteQuotientRep r = affine_reflection_rep();
    for (const FreeWord& rel : preset("vb3-ppp-only").relators) CHECK(r.is_identity(rel));
    CHECK_FALSE(r.is_identity(w3("(XYZ)^4")));
    CHECK(r.order(w3("XYZ")) == 10);
    CHECK(r.is_identity(w3("(XYZ)^20")));
    const VerificationReport c = independence_certificate();
    CHECK(c.pass);
    CHECK(c.details["xyzOrder"] == 10);
    CHECK(c.details["QzQyQxIdentity"] == true);
    CHECK(c.details["QxQyQzIdentity"] == false);
}
