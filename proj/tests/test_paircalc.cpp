#include "doctest.h"

#include "mvb/error.hpp"
#include "mvb/paircalc.hpp"

using namespace mvb;

namespace {

Vec v(std::initializer_list<double> xs) {
    Vec out(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index k = 0;
    for (double x : xs) out[k++] = x;
    return out;
}

}  // namespace

TEST_CASE("exact rank") {
    IntMat m(3, 3);
    m << 1, 2, 3, 4, 5, 6, 7, 8, 9;
    CHECK(exact_rank(m) == 2);
    CHECK(exact_rank(IntMat::Identity(4, 4)) == 4);
    CHECK(exact_rank(IntMat::Zero(2, 5)) == 0);
}

TEST_CASE("additions on the trivial double") {
    const ElemD d1{v({1, 2}), v({3}), v({5})}, d2{v({1, 2}), v({4}), v({7})};
    const ElemD s = add_A(d1, d2);
    CHECK(s.a == v({1, 2}));
    CHECK(s.b == v({7}));
    CHECK(s.c == v({12}));
    const ElemD d3{v({0, 1}), v({3}), v({1})};
    const ElemD t = add_B(d1, d3);
    CHECK(t.a == v({1, 3}));
    CHECK(t.c == v({6}));
    CHECK(scal_A(2.0, d1).c == v({10}));
    CHECK(scal_A(2.0, d1).a == d1.a);
    CHECK(scal_B(2.0, d1).b == d1.b);
    const ElemD k = core_embed_A(v({1, 2}), v({9}), 3);
    CHECK(k.b.size() == 3);
    CHECK(k.b.isZero());
}

TEST_CASE("evaluations and the pairing of duals") {
    const ElemD d{v({1, 2}), v({3}), v({4})};
    const DualAElem phi{v({1, 2}), v({5}), v({2})};
    const DualBElem psi{v({1, -1}), v({3}), v({2})};
    // <beta,b> + <gamma,c>
    CHECK(eval_A(phi, d) == doctest::Approx(15.0 + 8.0));
    // <alpha,a> + <gamma,c>
    CHECK(eval_B(psi, d) == doctest::Approx(-1.0 + 8.0));
    CHECK(pair_duals(phi, psi, d) == doctest::Approx(23.0 - 7.0));
    // the side terms cancel, leaving the core pairings
    CHECK(pair_duals(phi, psi, ElemD{v({1, 2}), v({3}), v({0})}) == doctest::Approx(15.0 + 1.0));
    CHECK_THROWS_AS(pair_duals(phi, DualBElem{v({1, -1}), v({3}), v({9})}, d), Error);
}

TEST_CASE("Z maps are involutive up to the core") {
    const TrivDVB D{2, 3, 2};
    const Mat za = Z_A_matrix(D), zb = Z_B_matrix(D);
    CHECK((za * za - Mat::Identity(za.rows(), za.cols())).norm() < 1e-12);
    CHECK((zb * zb - Mat::Identity(zb.rows(), zb.cols())).norm() < 1e-12);
}

TEST_CASE("numeric checks pass") {
    const TrivDVB D{2, 3, 2};
    CHECK(exactness_check_A(D).pass);
    CHECK(nondegeneracy_check(D).pass);
    CHECK(interchange_check(D, 50, 1).pass);
    CHECK(pair_duals_check(D, 50, 1).pass);
    CHECK(z_maps_check(D, 50, 1).pass);
    CHECK(q_map_check(D, 50, 1).pass);
    CHECK(tangent_checks(2, 3, 50, 1).pass);
    CHECK(reversal_check(2, 3, 20, 1).pass);
    CHECK(antisymplectic_check(2, 3).pass);
    CHECK(dual_morphism_check(D, 2, 3, 20, 1).pass);
    CHECK(cornering_check(standard_cornering(D), 50, 1).pass);
}

TEST_CASE("numeric suite is reproducible") {
    const TrivDVB D{1, 2, 3};
    const auto a = numeric_suite(D, 20, 7), b = numeric_suite(D, 20, 7);
    CHECK(a.pass);
    CHECK(a.maxResidual <= 1e-9);
    CHECK(a.to_json().dump() == b.to_json().dump());
}

TEST_CASE("pairing axioms") {
    const TrivDVB D{2, 3, 2};
    CHECK(pairing_axioms_check(pair_duals_model(D), 30, 3).pass);
    CHECK(pairing_axioms_check(tangent_pairing_model(2, 3), 30, 3).pass);
    // a bare evaluation is not a pairing of two bundles and the zero form is degenerate
    CHECK_FALSE(pairing_axioms_check(zero_pairing_model(2, 2, 2), 30, 3).pass);
}

TEST_CASE("a broken cornering is rejected") {
    const TrivDVB D{2, 2, 2};
    CorneringSystem sys = standard_cornering(D);
    sys.p13 = [](const DualBElem& psi, const ElemD& d) { return -eval_B(psi, d); };
    bool failed = false;
    try {
        failed = !cornering_check(sys, 20, 1).pass;
    } catch (const Error& e) {
        failed = e.code() == Errc::NotAPairing;
    }
    CHECK(failed);
}

TEST_CASE("Q map lands in the flipped layout") {
    const ElemD d{v({1, 2}), v({3, 4, 5}), v({6, 7})};
    const ElemD q = Q_map(d);
    CHECK(q.a.size() == 3);
    CHECK(q.b.size() == 2);
    CHECK(q.c.size() == 2);
}

TEST_CASE("the concrete oracle agrees with the sign rule") {
    for (const char* w : {"", "V", "H", "VH", "HV", "VHV", "HVHV", "VHVHV"})
        CHECK(oracle_signed_relabeling(parse_word(w, 2)) == evaluate(2, parse_word(w, 2)));
    const auto r = oracle_agreement_check(5);
    CHECK(r.pass);
    CHECK(r.details["mismatches"] == 0);
}
