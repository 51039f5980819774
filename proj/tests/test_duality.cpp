#include "doctest.h"

#include <set>

#include "mvb/duality.hpp"
#include "mvb/error.hpp"

using namespace mvb;

namespace {

std::string names(const DecomposedBundle& b) {
    std::string out;
    for (Slot s = 1; s <= b.full(); ++s) out += b.at(s).atom.name + (b.at(s).dualParity ? "* " : " ");
    return out;
}

SignedRelabeling ev(int n, const char* w) { return evaluate(n, parse_word(w, n)); }

}  // namespace

TEST_CASE("dual over A of (A,B,C) has sides A, C* and core B*") {
    const DecomposedBundle d = dual_axis(trivial_double(), 2);
    CHECK(names(d) == "A C* B* ");
    CHECK(names(dual_axis(trivial_double(), 1)) == "C* B A* ");
}

TEST_CASE("dual of the trivial triple along axis 1") {
    const DecomposedBundle t = dual_axis(trivial_triple(), 1);
    // slots {1} {2} {1,2} {3} {1,3} {2,3} {1,2,3}
    CHECK(names(t) == "W* E_2 C_2* E_3 C_3* C_1 E_1* ");
    CHECK(names(core_dvb(t, 1)) == "C_1 W* E_1* ");
    CHECK(names(core_dvb(t, 2)) == "C_3* E_2 E_1* ");
    CHECK(names(core_dvb(t, 3)) == "C_2* E_3 E_1* ");
    CHECK(names(face(t, 0b110)) == "E_2 E_3 C_1 ");
}

TEST_CASE("dualizing twice along one axis restores the bundle") {
    const DecomposedBundle t = trivial_triple();
    for (int i = 1; i <= 3; ++i) CHECK(dual_axis(dual_axis(t, i), i) == t);
    CHECK_THROWS_AS(dual_axis(t, 4), Error);
    CHECK_THROWS_AS(dual_axis(t, 0), Error);
}

TEST_CASE("generator actions") {
    const SignedRelabeling v = generator_action(2, 2);
    CHECK(v.image(0b01) == 0b01);
    CHECK(v.image(0b10) == 0b11);
    CHECK(v.image(0b11) == 0b10);
    CHECK(v.dual_inc(0b01) == 0);
    CHECK(v.dual_inc(0b10) == 1);
    CHECK(v.dual_inc(0b11) == 1);
    const SignedRelabeling x = generator_action(3, 1);
    for (Slot s : {0b010u, 0b100u, 0b110u}) CHECK(x.image(s) == s);
    CHECK(x.image(0b001) == 0b111);
    CHECK(x.image(0b011) == 0b101);
    CHECK(x.image(0b101) == 0b011);
    CHECK(compose(x, x).is_identity());
    CHECK(generator_action(3, trivial_triple(), 1) == x);
}

TEST_CASE("composition") {
    const SignedRelabeling g = ev(3, "XYZ");
    CHECK(compose(g, SignedRelabeling::identity(3)) == g);
    CHECK(compose(SignedRelabeling::identity(3), g) == g);
    CHECK(compose(compose(ev(3, "X"), ev(3, "Y")), ev(3, "Z")) == compose(ev(3, "X"), compose(ev(3, "Y"), ev(3, "Z"))));
    CHECK(compose(inverse(g), g).is_identity());
    CHECK_THROWS_AS(compose(ev(2, "V"), ev(3, "X")), Error);
}

TEST_CASE("VHV is the flip with the core negated") {
    const SignedRelabeling p = ev(2, "VHV");
    CHECK(p == ev(2, "HVH"));
    CHECK(p.image(0b01) == 0b10);
    CHECK(p.image(0b10) == 0b01);
    CHECK(p.image(0b11) == 0b11);
    CHECK(p.sign(0b01) == 1);
    CHECK(p.sign(0b10) == 1);
    CHECK(p.sign(0b11) == -1);
    CHECK(p == compose(sign_relabeling(2, {0b11}), flip_relabeling(2, 1, 2)));
    const DecomposedBundle q = apply(p, trivial_double());
    CHECK(names(q) == "B A C ");
    CHECK(q.at(0b11).sign == -1);
}

TEST_CASE("closure orders") {
    CHECK(closure(1).order() == 2);
    const GroupClosure g2 = closure(2);
    CHECK(g2.order() == 6);
    CHECK(g2.complete);
    // the six listed elements are distinct
    std::set<std::vector<int>> six;
    for (const char* w : {"", "V", "HV", "VHV", "HVHV", "VHVHV"}) six.insert(ev(2, w).key());
    CHECK(six.size() == 6);
    // the slot action is the symmetric group on n+1 letters
    CHECK(closure(3).order() == 24);
    CHECK(closure(4).order() == 120);
}

TEST_CASE("closure is deterministic and records a Cayley graph") {
    const GroupClosure a = closure(3), b = closure(3);
    REQUIRE(a.order() == b.order());
    for (int e = 0; e < a.order(); ++e) CHECK(a.elements[e] == b.elements[e]);
    CHECK(a.elements.front().is_identity());
    for (int e = 0; e < a.order(); ++e)
        for (int i = 1; i <= 3; ++i) {
            const int f = a.cayley[e][i - 1];
            REQUIRE(f >= 0);
            CHECK(a.elements[f] == compose(a.elements[e], generator_action(3, i)));
            CHECK(evaluate(3, a.words[e]) == a.elements[e]);
        }
    const std::string dot = a.to_dot();
    CHECK(dot.find("color=red") != std::string::npos);
    CHECK(dot.find("color=darkgreen") != std::string::npos);
}

TEST_CASE("closure cap") {
    const GroupClosure g = closure(3, 10);
    CHECK_FALSE(g.complete);
    CHECK(g.order() == 10);
}

TEST_CASE("relations") {
    CHECK(verify_relation(3, parse_word("(XYZ)^4", 3)));
    CHECK_FALSE(verify_relation(3, parse_word("XYZ", 3)));
    CHECK(element_order(ev(3, "XYZ")) == 4);
    CHECK(verify_relation(2, parse_word("(VH)^3", 2)));
    CHECK(ev(3, "ZXZ") == ev(3, "XZX"));
    for (const char* w : {"X^2", "Y^2", "Z^2", "(YZX)^4", "(ZXY)^4", "(XY)^3", "(YZ)^3", "(ZX)^3"})
        CHECK(verify_relation(3, parse_word(w, 3)));
    const auto j = relation_json(3, parse_word("XYZ", 3));
    CHECK(j["holds"] == false);
    CHECK(j["order"] == 4);
}

TEST_CASE("conjectured relations") {
    const auto r3 = verify_conjecture(3, 3);
    CHECK(r3.pass);
    CHECK(r3.trials == 3 + 6 + 6);
    const auto r4 = verify_conjecture(4, 2);
    CHECK(r4.pass);
    CHECK(r4.trials == 4 + 12);
    CHECK(verify_conjecture(2, 1).trials == 2);
    CHECK(verify_conjecture(4, 4).pass);
    CHECK_THROWS_AS(verify_conjecture(3, 4), Error);
}

TEST_CASE("special elements") {
    const auto s = special_elements();
    for (const char* p : {"P_X", "P_Y", "P_Z"}) CHECK(element_order(s.at(p)) == 2);
    for (const char* q : {"Q_X", "Q_Y", "Q_Z"}) CHECK(element_order(s.at(q)) == 3);
    CHECK(compose(compose(s.at("Q_Z"), s.at("Q_Y")), s.at("Q_X")).is_identity());
    CHECK(compose(compose(s.at("Q_X"), s.at("Q_Y")), s.at("Q_Z")).is_identity());
}

TEST_CASE("subgroup generated by XYXZ, YZYX, ZXZY in the action") {
    const auto sub = generated_subgroup({ev(3, "XYXZ"), ev(3, "YZYX"), ev(3, "ZXZY")});
    // the Klein four-group inside S_4
    CHECK(sub.size() == 4);
    CHECK(is_conjugation_closed(sub, {ev(3, "X"), ev(3, "Y"), ev(3, "Z")}));
    CHECK_FALSE(is_conjugation_closed(generated_subgroup({ev(3, "X")}), {ev(3, "Y")}));
}

TEST_CASE("cotangent completion of the trivial double") {
    const DecomposedBundle c = cotangent_completion(trivial_double(2, 3, 2), 0);
    CHECK(c.n() == 3);
    // {1} {2} {1,2} {3} {1,3} {2,3} {1,2,3}
    CHECK(names(c) == "A B C C* B* A* T*M ");
    CHECK(c.at(0b111).atom.dim == 0);
    CHECK(total_dim(c) == 2 * total_dim(trivial_double(2, 3, 2)));
    CHECK(names(core_dvb(c, 1)) == "A* A T*M ");
    CHECK(names(core_dvb(c, 2)) == "B* B T*M ");
    CHECK(names(core_dvb(c, 3)) == "C C* T*M ");
    CHECK(cotangent_completion(trivial_double(), 4).at(0b111).atom.dim == 4);
}

TEST_CASE("lower faces of a cotangent completion are the bundle and its duals") {
    for (const auto& b : {trivial_double(2, 3, 2), trivial_triple()}) {
        const DecomposedBundle c = cotangent_completion(b, 0);
        CHECK(same_shape(completion_face(c, b.n() + 1), b));
        for (int i = 1; i <= b.n(); ++i) CHECK(same_shape(completion_face(c, i), dual_axis(b, i)));
    }
}

TEST_CASE("cornering signs") {
    const auto cs = cornering_signs(trivial_double());
    CHECK(cs.solutions == 1);
    REQUIRE(cs.arrows.size() == 6);
    CHECK(cs.arrows[0].sign == 1);
    CHECK(cs.arrows[1].sign == -1);
    CHECK(cs.arrows[2].target == "A");
    CHECK(cs.arrows[2].sign == -1);
    CHECK(cs.arrows[3].target == "C*");
    CHECK(cs.arrows[3].sign == 1);
    CHECK(cs.arrows[4].sign == 1);
    CHECK(cs.arrows[5].sign == -1);
    CHECK_THROWS_AS(cornering_signs(trivial_triple()), Error);
}

TEST_CASE("word syntax") {
    CHECK(parse_word("X Y  Z", 3).letters == std::vector<int>{1, 2, 3});
    CHECK(parse_word("X1X2W4", 4).letters == std::vector<int>{1, 2, 4});
    CHECK(parse_word("(XY)^2Z", 3).letters == std::vector<int>{1, 2, 1, 2, 3});
    CHECK(parse_word("VH", 2).letters == std::vector<int>{2, 1});
    CHECK(parse_word("(XY)^-1", 3).letters == std::vector<int>{2, 1});
    CHECK(free_reduce(parse_word("XYYX Z", 3)).letters == std::vector<int>{3});
    CHECK_THROWS_AS(parse_word("XQ", 3), Error);
    CHECK_THROWS_AS(parse_word("W4", 3), Error);
    CHECK(format_word(parse_word("XYW4", 4), 4) == "XYW4");
}
