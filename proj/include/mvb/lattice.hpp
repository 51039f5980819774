#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mvb {

// Nonempty subset of {1..n} as a bitmask; bit k-1 stands for axis k.
using Slot = std::uint32_t;

inline constexpr int kMaxArity = 10;

constexpr Slot axis_bit(int axis) { return Slot{1} << (axis - 1); }
constexpr Slot full_slot(int n) { return (Slot{1} << n) - 1; }
constexpr bool has_axis(Slot s, int axis) { return (s & axis_bit(axis)) != 0; }
int slot_size(Slot s);
std::vector<int> slot_axes(Slot s);
Slot slot_of(const std::vector<int>& axes);
std::string slot_str(Slot s);  // "{1,3}"

struct Atom {
    std::string name;
    int dim = 0;
    bool operator==(const Atom&) const = default;
};

struct Decoration {
    Atom atom;
    int dualParity = 0;
    int sign = 1;

    std::string label() const;  // "C*", "-B*"
    Decoration dual() const { return {atom, dualParity ^ 1, sign}; }
    bool operator==(const Decoration&) const = default;
};

// Decorated subset lattice. Signs are kept in canonical form modulo the
// structure negations: a -1 on a singleton {i} is absorbed by negating
// every slot that contains i.
class DecomposedBundle {
public:
    // slots and every axisSigns row are indexed by mask, entry 0 unused
    DecomposedBundle(int n, std::vector<Decoration> slots,
                     std::vector<std::vector<int>> axisSigns);
    DecomposedBundle(int n, std::vector<Decoration> slots);

    int n() const { return n_; }
    Slot full() const { return full_slot(n_); }
    const Decoration& at(Slot s) const;
    int axis_sign(int axis, Slot s) const;
    const std::vector<Decoration>& slots() const { return slots_; }
    const std::vector<std::vector<int>>& axis_signs() const { return axisSigns_; }

    bool operator==(const DecomposedBundle&) const = default;

private:
    int n_;
    std::vector<Decoration> slots_;
    std::vector<std::vector<int>> axisSigns_;
};

void check_axis(int n, int axis);

DecomposedBundle build_trivial(int n, const std::map<Slot, Atom>& atoms);
DecomposedBundle face(const DecomposedBundle& b, Slot axes);
DecomposedBundle core_dvb(const DecomposedBundle& b, int i);
Decoration ultracore(const DecomposedBundle& b);
DecomposedBundle flip(const DecomposedBundle& b, int i, int j);
long long total_dim(const DecomposedBundle& b);
std::string render_dot(const DecomposedBundle& b);
std::string describe(const DecomposedBundle& b);

// The fixtures used throughout: (A,B,C) and the seven-atom triple.
DecomposedBundle trivial_double(int dA = 1, int dB = 1, int dC = 1);
DecomposedBundle trivial_triple();

}  // namespace mvb
