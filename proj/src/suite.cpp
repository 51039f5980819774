#include "mvb/suite.hpp"

#include "mvb/duality.hpp"
#include "mvb/fpgroup.hpp"
#include "mvb/lattice.hpp"

namespace mvb {

namespace {

struct Checklist {
    VerificationReport report;

    explicit Checklist(const std::string& name) {
        report.check = name;
        report.pass = true;
        report.details["failures"] = 0;
    }
    void fail() { report.details["failures"] = report.details["failures"].get<int>() + 1; }
    void expect(const std::string& what, bool ok) {
        report.details[what] = ok;
        report.pass = report.pass && ok;
        ++report.trials;
        if (!ok) fail();
    }
    template <class T>
    void expect_equal(const std::string& what, const T& got, const T& want) {
        report.details[what] = {{"got", got}, {"expected", want}, {"pass", got == want}};
        report.pass = report.pass && got == want;
        ++report.trials;
        if (got != want) fail();
    }
};

std::vector<SignedRelabeling> words(int n, std::initializer_list<const char*> texts) {
    std::vector<SignedRelabeling> out;
    for (const char* t : texts) out.push_back(evaluate(n, parse_word(t, n)));
    return out;
}

}  // namespace

VerificationReport lattice_suite() {
    Checklist c("lattice");
    const DecomposedBundle d = trivial_double(2, 3, 2);
    const DecomposedBundle t = trivial_triple();

    bool faces = true;
    for (Slot T = 1; T <= t.full(); ++T) {
        const DecomposedBundle outer = face(t, T);
        for (Slot S = 1; S <= t.full(); ++S) {
            if ((S & ~T) != 0) continue;
            // S re-expressed in the coordinates of face T
            Slot local = 0;
            int k = 0;
            for (int a : slot_axes(T)) {
                if (has_axis(S, a)) local |= axis_bit(k + 1);
                ++k;
            }
            faces = faces && face(outer, local) == face(t, S);
        }
    }
    c.expect("faceOfFace", faces);

    bool flips = true;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (i != j) flips = flips && flip(flip(t, i, j), i, j) == t;
    c.expect("flipInvolution", flips && flip(flip(d, 1, 2), 1, 2) == d);

    const DecomposedBundle floor = face(t, 0b110);
    c.expect("floorFace", floor.at(0b01).atom.name == "E_2" && floor.at(0b10).atom.name == "E_3" &&
                              floor.at(0b11).atom.name == "C_1");
    const auto k1 = core_dvb(t, 1), k2 = core_dvb(t, 2), k3 = core_dvb(t, 3);
    c.expect("coreDoubles", k1.at(0b01).atom.name == "C_1" && k1.at(0b10).atom.name == "E_1" &&
                                k3.at(0b01).atom.name == "C_3" && k3.at(0b10).atom.name == "E_3");
    c.expect("sharedUltracore", k1.at(0b11) == k2.at(0b11) && k2.at(0b11) == k3.at(0b11) && ultracore(t).atom.name == "W");

    const DecomposedBundle f23 = flip(t, 2, 3);
    c.expect("flipTriple", f23.at(0b010).atom.name == "E_3" && f23.at(0b100).atom.name == "E_2" &&
                               f23.at(0b011).atom.name == "C_2" && f23.at(0b101).atom.name == "C_3" &&
                               f23.at(0b110).atom.name == "C_1" && f23.at(0b111).atom.name == "W");

    c.expect_equal("totalDim", total_dim(d), 7LL);
    bool dims = true;
    for (int i = 1; i <= 3; ++i) dims = dims && total_dim(dual_axis(t, i)) == total_dim(t);
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) dims = dims && total_dim(flip(t, i, j)) == total_dim(t);
    c.expect("totalDimInvariant", dims);

    const DecomposedBundle cot = cotangent_completion(trivial_double(2, 3, 2), 0);
    c.expect_equal("cotangentDoubles", total_dim(cot), 2 * total_dim(d));
    return c.report;
}

VerificationReport duality_suite() {
    Checklist c("duality");
    for (int n = 1; n <= 4; ++n) {
        bool squares = true;
        for (int i = 1; i <= n; ++i) {
            const auto g = generator_action(n, i);
            squares = squares && compose(g, g).is_identity();
        }
        c.expect("generatorsSquareToIdentity.n" + std::to_string(n), squares);
    }
    c.expect_equal("closureOrder.n1", closure(1).order(), 2);
    c.expect_equal("closureOrder.n2", closure(2).order(), 6);
    const GroupClosure g3 = closure(3);
    c.expect_equal("closureOrder.n3", g3.order(), 72);

    const SignedRelabeling vhv = evaluate(2, parse_word("VHV", 2));
    c.expect("VHVisFlipWithCoreSign", vhv == compose(sign_relabeling(2, {0b11}), flip_relabeling(2, 1, 2)));

    bool relators = true;
    for (const char* w : {"X^2", "Y^2", "Z^2", "(XYZ)^4", "(YZX)^4", "(ZXY)^4", "(XY)^3", "(YZ)^3", "(ZX)^3"})
        relators = relators && verify_relation(3, parse_word(w, 3));
    c.expect("vb3RelatorsHold", relators);
    c.expect("ZXZequalsXZX", evaluate(3, parse_word("ZXZ", 3)) == evaluate(3, parse_word("XZX", 3)));
    c.expect_equal("orderXYZ", element_order(evaluate(3, parse_word("XYZ", 3))), 4);

    const auto sub = generated_subgroup(words(3, {"XYXZ", "YZYX", "ZXZY"}));
    c.expect_equal("subgroupOrder", static_cast<int>(sub.size()), 12);
    c.expect("subgroupNormal", is_conjugation_closed(sub, words(3, {"X", "Y", "Z"})));

    const auto conj = verify_conjecture(4, 4);
    c.expect("conjectureN4", conj.pass);

    bool faces = true;
    for (const auto& b : {trivial_double(2, 3, 2), trivial_triple()}) {
        const DecomposedBundle comp = cotangent_completion(b, 0);
        faces = faces && same_shape(completion_face(comp, b.n() + 1), b);
        for (int i = 1; i <= b.n(); ++i) faces = faces && same_shape(completion_face(comp, i), dual_axis(b, i));
    }
    c.expect("cotangentFaces", faces);

    const auto corner = cornering_signs(trivial_double());
    c.expect_equal("corneringSolutions", corner.solutions, 1);
    return c.report;
}

VerificationReport fpgroup_suite() {
    Checklist c("fpgroup");
    const Presentation vb3 = preset("vb3");
    c.expect_equal("orderVB2", group_order(preset("vb2")), 6);
    c.expect_equal("orderVB3", group_order(vb3), 72);
    c.expect("notInHypercubeGroup", 384 % 72 != 0);
    std::vector<FreeWord> gens;
    for (const char* w : {"X Y X Z", "Y Z Y X", "Z X Z Y"}) gens.push_back(parse_free_word(w, vb3.generators));
    c.expect_equal("subgroupIndex", subgroup_index(vb3, gens), 6);
    c.expect("subgroupNormal", is_normal(vb3, gens));
    const auto q = quotient_order(vb3, gens);
    c.expect("quotientIsS3", q.order == 6 && q.nonabelian);
    c.expect_equal("orderConjecture3", group_order(preset("conjecture:3")), 72);

    Presentation rotated = vb3;
    std::reverse(rotated.relators.begin(), rotated.relators.end());
    for (auto& r : rotated.relators) {
        std::rotate(r.begin(), r.begin() + 1, r.end());
        r = free_inverse(r);
    }
    c.expect_equal("orderUnderRelatorRewrites", group_order(rotated), 72);
    c.expect("independenceCertificate", independence_certificate().pass);
    return c.report;
}

VerificationReport full_suite(const TrivDVB& D, int trials, std::uint64_t seed) {
    VerificationReport r = aggregate("all", {lattice_suite(), duality_suite(), fpgroup_suite(), numeric_suite(D, trials, seed)});
    r.dims = D.dims();
    return r;
}

}  // namespace mvb
