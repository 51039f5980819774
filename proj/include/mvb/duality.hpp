#pragma once

#include <map>
#include <string>
#include <vector>

#include "mvb/lattice.hpp"
#include "mvb/report.hpp"
#include "mvb/word.hpp"

namespace mvb {

// Slot bijection with dual-parity increments and signs, all indexed by the
// source slot. Signs are stored in the same canonical form as bundle signs
// (read at the destination, every singleton carries +1).
class SignedRelabeling {
public:
    SignedRelabeling(int n, std::vector<Slot> image, std::vector<int> dualInc, std::vector<int> sign);
    static SignedRelabeling identity(int n);

    int n() const { return n_; }
    Slot image(Slot s) const { return image_.at(s); }
    int dual_inc(Slot s) const { return dualInc_.at(s); }
    int sign(Slot s) const { return sign_.at(s); }
    bool is_identity() const;
    // lexicographic encoding used for ordering and lookup
    std::vector<int> key() const;
    std::string describe() const;

    bool operator==(const SignedRelabeling&) const = default;

private:
    int n_;
    std::vector<Slot> image_;
    std::vector<int> dualInc_;
    std::vector<int> sign_;
};

// g ∘ h: h acts first
SignedRelabeling compose(const SignedRelabeling& g, const SignedRelabeling& h);
SignedRelabeling inverse(const SignedRelabeling& g);
DecomposedBundle apply(const SignedRelabeling& g, const DecomposedBundle& b);
int element_order(const SignedRelabeling& g);
// the unsigned slot flip exchanging axes i and j
SignedRelabeling flip_relabeling(int n, int i, int j);
// sign -1 on every slot in mask set, identity otherwise
SignedRelabeling sign_relabeling(int n, const std::vector<Slot>& negated);

SignedRelabeling generator_action(int n, const DecomposedBundle& shapeContext, int i);
SignedRelabeling generator_action(int n, int i);
DecomposedBundle dual_axis(const DecomposedBundle& b, int i);
SignedRelabeling evaluate(int n, const Word& w);

struct GroupClosure {
    int n = 0;
    std::vector<SignedRelabeling> elements;  // breadth-first order, identity first
    std::vector<Word> words;                 // shortest word reaching each element
    std::vector<std::vector<int>> cayley;    // cayley[e][i-1] = index of elements[e] ∘ X_i
    bool complete = false;

    int order() const { return static_cast<int>(elements.size()); }
    int index_of(const SignedRelabeling& g) const;
    std::string to_dot() const;

    std::map<std::vector<int>, int> lookup;
};

inline constexpr int kDefaultClosureCap = 1000000;

GroupClosure closure(int n, int maxElements = kDefaultClosureCap);
// closure of arbitrary elements, used for subgroups of the action
std::vector<SignedRelabeling> generated_subgroup(const std::vector<SignedRelabeling>& gens, int maxElements = kDefaultClosureCap);
bool is_conjugation_closed(const std::vector<SignedRelabeling>& subgroup, const std::vector<SignedRelabeling>& by);

bool verify_relation(int n, const Word& w);
nlohmann::ordered_json relation_json(int n, const Word& w);
VerificationReport verify_conjecture(int n, int maxK);

std::map<std::string, SignedRelabeling> special_elements();

DecomposedBundle cotangent_completion(const DecomposedBundle& b, int baseDim);

struct CornerArrow {
    std::string source;  // "D", "D^{*A}", "D^{*B}"
    std::string target;  // atom label
    int sign = 1;
};
struct CorneringSigns {
    std::vector<CornerArrow> arrows;  // D→A, D→B, D*A→A, D*A→C*, D*B→B, D*B→C*
    int solutions = 0;                // assignments extending the fixed arrows of D
};
CorneringSigns cornering_signs(const DecomposedBundle& b);

}  // namespace mvb

namespace mvb {

// Face of a completion omitting axis i, with the new axis moved into position i.
DecomposedBundle completion_face(const DecomposedBundle& c, int i);
// atoms and dual parities agree slotwise; signs are not compared
bool same_shape(const DecomposedBundle& a, const DecomposedBundle& b);

}  // namespace mvb
