// One PASS/FAIL line per acceptance criterion; exits 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mvb/cli.hpp"
#include "mvb/duality.hpp"
#include "mvb/fpgroup.hpp"
#include "mvb/paircalc.hpp"

using namespace mvb;

namespace {

struct Outcome {
    bool pass;
    std::string note;
};

struct Criterion {
    std::string name;
    double limitSeconds;  // 0 means no runtime bound
    std::function<Outcome()> body;
};

nlohmann::json cli_json(std::vector<std::string> args, int& code) {
    std::ostringstream out, err;
    code = run(args, out, err);
    return code == 0 || !out.str().empty() ? nlohmann::json::parse(out.str()) : nlohmann::json();
}

FreeWord w3(const char* text) { return parse_free_word(text, {"X", "Y", "Z"}); }
SignedRelabeling ev(int n, const char* w) { return evaluate(n, parse_word(w, n)); }

std::string names(const DecomposedBundle& b) {
    std::string out;
    for (Slot s = 1; s <= b.full(); ++s) out += b.at(s).atom.name + (b.at(s).dualParity ? "* " : " ");
    return out;
}

Outcome vb2_order() {
    int code = 0;
    const auto j = cli_json({"group", "order", "--preset", "vb2", "--format", "json"}, code);
    std::set<std::vector<int>> listed;
    for (const char* w : {"", "V", "HV", "VHV", "HVHV", "VHVHV"}) listed.insert(ev(2, w).key());
    const bool ok = code == 0 && j["order"] == 6 && listed.size() == 6;
    return {ok, "order " + j["order"].dump() + ", listed elements distinct " + std::to_string(listed.size())};
}

Outcome vb3_order() {
    int code = 0;
    const auto j = cli_json({"group", "order", "--preset", "vb3", "--format", "json"}, code);
    const CosetTable t = coset_enumerate(preset("vb3"), {});
    const bool ok = code == 0 && j["order"] == 72 && t.rowsDefined <= 1000;
    return {ok, "order " + j["order"].dump() + ", rows defined " + std::to_string(t.rowsDefined)};
}

Outcome vb3_subgroup() {
    const Presentation p = preset("vb3");
    const std::vector<FreeWord> n{w3("XYXZ"), w3("YZYX"), w3("ZXZY")};
    const int index = subgroup_index(p, n);
    const bool normal = is_normal(p, n);
    const QuotientResult q = quotient_order(p, n);
    const int order = group_order(p);
    const bool ok = index == 6 && order / index == 12 && normal && q.order == 6 && q.nonabelian;
    return {ok, "index " + std::to_string(index) + ", subgroup order " + std::to_string(order / index) + ", normal " +
                    std::to_string(normal) + ", quotient " + std::to_string(q.order) + (q.nonabelian ? " nonabelian" : " abelian")};
}

Outcome independence() {
    const VerificationReport r = independence_certificate();
    const int xyzOrder = r.details["xyzOrder"].get<int>();
    const bool ok = r.pass && r.details["xyzPower4Identity"] == false && xyzOrder == 5;
    return {ok, "relators hold " + std::to_string(r.pass) +
                    ", (XYZ)^4 identity " + r.details["xyzPower4Identity"].dump() + ", order of XYZ image " +
                    std::to_string(xyzOrder) + " (expected 5)"};
}

Outcome closures() {
    const GroupClosure g2 = closure(2), g3 = closure(3);
    bool relators = true;
    for (const char* w : {"X^2", "Y^2", "Z^2", "(XYZ)^4", "(YZX)^4", "(ZXY)^4"}) relators = relators && verify_relation(3, parse_word(w, 3));
    relators = relators && ev(3, "YZY") == ev(3, "ZYZ") && ev(3, "ZXZ") == ev(3, "XZX") && ev(3, "XYX") == ev(3, "YXY");
    // an isomorphism from the presented group needs the image to have the same order
    const int presented = group_order(preset("vb3"));
    const bool ok = g2.order() == 6 && g3.order() == 72 && relators && g3.order() == presented;
    return {ok, "n=2 " + std::to_string(g2.order()) + ", n=3 " + std::to_string(g3.order()) + " (expected 72), relators act trivially " +
                    std::to_string(relators) + ", presented order " + std::to_string(presented)};
}

Outcome special() {
    const auto s = special_elements();
    const bool q = ev(2, "VHV") == compose(sign_relabeling(2, {0b11}), flip_relabeling(2, 1, 2));
    bool ok = q && s.at("P_X") == ev(3, "ZYZ") && verify_relation(3, parse_word("(XYZ)^4", 3));
    for (const char* p : {"P_X", "P_Y", "P_Z"}) ok = ok && element_order(s.at(p)) == 2;
    for (const char* p : {"Q_X", "Q_Y", "Q_Z"}) ok = ok && element_order(s.at(p)) == 3;
    ok = ok && compose(compose(s.at("Q_Z"), s.at("Q_Y")), s.at("Q_X")).is_identity();
    ok = ok && compose(compose(s.at("Q_X"), s.at("Q_Y")), s.at("Q_Z")).is_identity();
    return {ok, std::string("VHV is flip with core negated ") + (q ? "yes" : "no")};
}

Outcome conjecture4() {
    const VerificationReport r = verify_conjecture(4, 4);
    return {r.pass, std::to_string(r.trials) + " relations checked"};
}

Outcome duals() {
    const std::string d = names(dual_axis(trivial_double(), 2));
    const DecomposedBundle t = dual_axis(trivial_triple(), 1);
    const std::string tn = names(t);
    const bool ok = d == "A C* B* " && tn == "W* E_2 C_2* E_3 C_3* C_1 E_1* " && ultracore(t).atom.name == "E_1" && ultracore(t).dualParity == 1 &&
                    names(core_dvb(t, 1)) == "C_1 W* E_1* ";
    return {ok, "double " + d + "| triple " + tn};
}

Outcome pair_duals_crit() {
    const TrivDVB D{2, 3, 2};
    const VerificationReport p = pair_duals_check(D, 1000, 1);
    const VerificationReport z = z_maps_check(D, 1000, 1);
    const bool ok = p.pass && p.details["wellDefined"] == true && p.details["closedForm"] == true &&
                    p.details["gramRank"] == D.dA + D.dB && z.pass && z.details["minusOnSideAIdentityOnCore"] == true &&
                    z.details["transposeIsZB"] == true;
    return {ok, "residual " + std::to_string(p.maxResidual) + ", gram rank " + p.details["gramRank"].dump()};
}

Outcome tangent_crit() {
    bool ok = true;
    double worst = 0.0;
    const VerificationReport t = tangent_checks(2, 3, 1000, 1);
    ok = ok && t.pass && t.details["localFormula"] == true && t.details["specialCases"] == true;
    ok = ok && pairing_axioms_check(pair_duals_model({2, 3, 2}), 1000, 1).pass;
    ok = ok && pairing_axioms_check(tangent_pairing_model(2, 3), 1000, 1).pass;
    const VerificationReport m = reversal_check(2, 3, 1000, 1);
    worst = m.maxResidual;
    ok = ok && m.pass && m.maxResidual <= 1e-12;
    for (int dM = 1; dM <= 3; ++dM)
        for (int dV = 1; dV <= 3; ++dV) ok = ok && antisymplectic_check(dM, dV).pass;
    return {ok, "reversal residual " + std::to_string(worst)};
}

Outcome oracle_crit() {
    const VerificationReport r = oracle_agreement_check(6);
    const bool ok = r.pass && r.details["mismatches"] == 0 && r.details["fullLengthVHP"] == 729;
    return {ok, "words over VH " + r.details["wordsOverVH"].dump() + ", over VHP " + r.details["wordsOverVHP"].dump() +
                    " (length six " + r.details["fullLengthVHP"].dump() + "), mismatches " + r.details["mismatches"].dump()};
}

Outcome cornering_crit() {
    const VerificationReport r = cornering_check(standard_cornering({2, 3, 2}), 1000, 1);
    const DecomposedBundle b = trivial_double(2, 3, 2);
    const DecomposedBundle c = cotangent_completion(b, 0);
    const bool faces = same_shape(completion_face(c, 3), b) && same_shape(completion_face(c, 1), dual_axis(b, 1)) &&
                       same_shape(completion_face(c, 2), dual_axis(b, 2));
    return {r.pass && r.maxResidual == 0.0 && faces, "residual " + std::to_string(r.maxResidual) + ", faces " + std::to_string(faces)};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"fpgroup: vb2 order 6", 1.0, vb2_order},
        {"fpgroup: vb3 order 72 within 1000 rows", 1.0, vb3_order},
        {"fpgroup: normal subgroup of index 6 with nonabelian quotient", 1.0, vb3_subgroup},
        {"fpgroup: (XYZ)^4 independent of the P relations, XYZ image of order 5", 0.0, independence},
        {"duality: closures 6 and 72 with isomorphism from vb3", 10.0, closures},
        {"duality: P and Q elements", 0.0, special},
        {"duality: conjectured relations at n=4", 0.0, conjecture4},
        {"duality vs lattice: dual slot contents", 0.0, duals},
        {"paircalc: pairing of duals and Z maps", 0.0, pair_duals_crit},
        {"paircalc: tangent pairing, axioms, reversal, antisymplectic", 0.0, tangent_crit},
        {"oracle: symbolic and numeric actions agree", 30.0, oracle_crit},
        {"cornering: identity and cotangent lower faces", 0.0, cornering_crit},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool pass = o.pass;
        if (c.limitSeconds > 0 && secs > c.limitSeconds) {
            pass = false;
            o.note += ", over time limit";
        }
        if (!pass) ++failed;
        std::cout << (pass ? "PASS" : "FAIL") << "  " << c.name << "  [" << o.note << "] (" << secs << " s)\n";
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
    return failed == 0 ? 0 : 1;
}
