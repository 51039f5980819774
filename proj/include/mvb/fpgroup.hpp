#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "mvb/report.hpp"

namespace mvb {

// Letters are +(g+1) for generator g and -(g+1) for its inverse.
using FreeWord = std::vector<int>;

struct Presentation {
    std::vector<std::string> generators;
    std::vector<FreeWord> relators;
};

FreeWord free_inverse(const FreeWord& w);
// generator names are matched greedily; accepts ( ) ^k ^-k and a = b
FreeWord parse_free_word(std::string_view text, const std::vector<std::string>& generators);
std::string format_free_word(const FreeWord& w, const std::vector<std::string>& generators);

// "gens: X Y Z; rels: X^2, (X Y Z)^4, XYX = YXY" or a JSON object
// {"generators": [...], "relators": [...]}
Presentation parse_presentation(std::string_view text);
// vb2, vb3, vb3-ppp-only, conjecture:<n>
Presentation preset(std::string_view name);
std::vector<std::string> preset_names();

enum class EnumStatus { Complete, Capped };

// Columns 2g and 2g+1 hold the action of generator g and of its inverse.
struct CosetTable {
    int generators = 0;
    EnumStatus status = EnumStatus::Capped;
    int rowsDefined = 0;  // every coset ever defined, dead ones included
    std::vector<std::vector<int>> rows;

    int size() const { return static_cast<int>(rows.size()); }
    int act(int coset, int letter) const;
    int trace(int coset, const FreeWord& w) const;
    bool relator_consistent(const Presentation& p) const;
};

inline constexpr int kDefaultCosetCap = 100000;

// Hasse-Lemma-Todd: relators are traced from each live coset in order,
// then the row is completed by defining new cosets column by column.
CosetTable coset_enumerate(const Presentation& p, const std::vector<FreeWord>& subgroup, int cap = kDefaultCosetCap);
int group_order(const Presentation& p, int cap = kDefaultCosetCap);
int subgroup_index(const Presentation& p, const std::vector<FreeWord>& gens, int cap = kDefaultCosetCap);
bool is_normal(const Presentation& p, const std::vector<FreeWord>& gens, int cap = kDefaultCosetCap);

struct QuotientResult {
    int order = 0;
    bool nonabelian = false;
};
QuotientResult quotient_order(const Presentation& p, const std::vector<FreeWord>& extraRelators, int cap = kDefaultCosetCap);

// Affine reflection matrices acting on homogeneous coordinates mod a prime.
struct FiniteQuotientRep {
    int modulus = 5;
    std::vector<std::string> names;
    std::vector<Eigen::Matrix4i> matrices;

    Eigen::Matrix4i image(const FreeWord& w) const;
    bool is_identity(const FreeWord& w) const;
    int order(const FreeWord& w) const;
};

FiniteQuotientRep affine_reflection_rep();
VerificationReport independence_certificate();

}  // namespace mvb
