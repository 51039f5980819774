#include "mvb/lattice.hpp"

#include <bit>
#include <set>
#include <sstream>
#include <utility>

#include "mvb/error.hpp"

namespace mvb {

int slot_size(Slot s) { return std::popcount(s); }

std::vector<int> slot_axes(Slot s) {
    std::vector<int> out;
    for (int k = 1; s >> (k - 1); ++k)
        if (has_axis(s, k)) out.push_back(k);
    return out;
}

Slot slot_of(const std::vector<int>& axes) {
    Slot s = 0;
    for (int a : axes) {
        if (a < 1 || a > kMaxArity) throw Error(Errc::BadAxis, "axis " + std::to_string(a));
        s |= axis_bit(a);
    }
    return s;
}

std::string slot_str(Slot s) {
    std::string out = "{";
    bool first = true;
    for (int a : slot_axes(s)) {
        if (!first) out += ',';
        out += std::to_string(a);
        first = false;
    }
    return out + "}";
}

std::string Decoration::label() const {
    return (sign < 0 ? "-" : "") + atom.name + (dualParity ? "*" : "");
}

void check_axis(int n, int axis) {
    if (axis < 1 || axis > n)
        throw Error(Errc::BadAxis, "axis " + std::to_string(axis) + " outside 1.." + std::to_string(n));
}

namespace {

std::vector<std::vector<int>> plus_signs(int n) {
    std::vector<std::vector<int>> rows(n, std::vector<int>(std::size_t{1} << n, 0));
    for (int i = 1; i <= n; ++i)
        for (Slot s = 1; s <= full_slot(n); ++s)
            if (has_axis(s, i)) rows[i - 1][s] = 1;
    return rows;
}

}  // namespace

DecomposedBundle::DecomposedBundle(int n, std::vector<Decoration> slots)
    : DecomposedBundle(n, std::move(slots), plus_signs(n)) {}

DecomposedBundle::DecomposedBundle(int n, std::vector<Decoration> slots,
                                   std::vector<std::vector<int>> axisSigns)
    : n_(n), slots_(std::move(slots)), axisSigns_(std::move(axisSigns)) {
    if (n < 1 || n > kMaxArity)
        throw Error(Errc::WrongArity, "n = " + std::to_string(n));
    const std::size_t size = std::size_t{1} << n;
    if (slots_.size() != size)
        throw Error(Errc::MissingSlot, "expected " + std::to_string(size - 1) + " slots");
    if (axisSigns_.size() != static_cast<std::size_t>(n))
        throw Error(Errc::WrongArity, "axisSigns needs one row per axis");

    std::map<std::string, int> dims;
    std::set<std::pair<std::string, int>> seen;
    for (Slot s = 1; s < size; ++s) {
        auto& d = slots_[s];
        if (d.atom.dim < 0) throw Error(Errc::SpecParseError, "negative dim at " + slot_str(s));
        d.dualParity &= 1;
        if (d.sign != 1 && d.sign != -1)
            throw Error(Errc::SpecParseError, "sign must be +-1 at " + slot_str(s));
        if (!seen.insert({d.atom.name, d.dualParity}).second)
            throw Error(Errc::DuplicateAtom, d.atom.name);
        auto [it, fresh] = dims.emplace(d.atom.name, d.atom.dim);
        if (!fresh && it->second != d.atom.dim)
            throw Error(Errc::DuplicateAtom, d.atom.name + " with two dimensions");
    }
    slots_[0] = Decoration{};

    for (int i = 1; i <= n; ++i) {
        auto& row = axisSigns_[i - 1];
        if (row.size() != size) throw Error(Errc::WrongArity, "axisSigns row length");
        for (Slot s = 1; s < size; ++s) {
            if (!has_axis(s, i)) {
                row[s] = 0;
            } else if (row[s] != 1 && row[s] != -1) {
                throw Error(Errc::SpecParseError, "axis sign must be +-1");
            }
        }
        row[0] = 0;
    }

    for (int i = 1; i <= n; ++i) {
        if (slots_[axis_bit(i)].sign > 0) continue;
        for (Slot s = 1; s < size; ++s)
            if (has_axis(s, i)) slots_[s].sign = -slots_[s].sign;
    }
}

const Decoration& DecomposedBundle::at(Slot s) const {
    if (s == 0 || s > full()) throw Error(Errc::MissingSlot, slot_str(s));
    return slots_[s];
}

int DecomposedBundle::axis_sign(int axis, Slot s) const {
    check_axis(n_, axis);
    if (!has_axis(s, axis) || s > full()) throw Error(Errc::MissingSlot, slot_str(s));
    return axisSigns_[axis - 1][s];
}

DecomposedBundle build_trivial(int n, const std::map<Slot, Atom>& atoms) {
    if (n < 1 || n > kMaxArity) throw Error(Errc::WrongArity, "n = " + std::to_string(n));
    std::vector<Decoration> slots(std::size_t{1} << n);
    std::set<std::string> names;
    for (Slot s = 1; s <= full_slot(n); ++s) {
        auto it = atoms.find(s);
        if (it == atoms.end()) throw Error(Errc::MissingSlot, slot_str(s));
        if (!names.insert(it->second.name).second) throw Error(Errc::DuplicateAtom, it->second.name);
        slots[s] = Decoration{it->second, 0, 1};
    }
    for (const auto& [s, atom] : atoms)
        if (s == 0 || s > full_slot(n)) throw Error(Errc::MissingSlot, "stray slot " + slot_str(s));
    return DecomposedBundle(n, std::move(slots));
}

DecomposedBundle face(const DecomposedBundle& b, Slot axes) {
    if (axes == 0) throw Error(Errc::EmptyFace, "empty axis set");
    if ((axes & ~b.full()) != 0) throw Error(Errc::BadAxis, slot_str(axes) + " not within the bundle");
    const auto picked = slot_axes(axes);
    const int k = static_cast<int>(picked.size());
    auto lift = [&](Slot t) {
        Slot s = 0;
        for (int j = 0; j < k; ++j)
            if (t & (Slot{1} << j)) s |= axis_bit(picked[j]);
        return s;
    };
    std::vector<Decoration> slots(std::size_t{1} << k);
    std::vector<std::vector<int>> signs(k, std::vector<int>(std::size_t{1} << k, 0));
    for (Slot t = 1; t <= full_slot(k); ++t) {
        slots[t] = b.at(lift(t));
        for (int j = 1; j <= k; ++j)
            if (has_axis(t, j)) signs[j - 1][t] = b.axis_sign(picked[j - 1], lift(t));
    }
    return DecomposedBundle(k, std::move(slots), std::move(signs));
}

DecomposedBundle core_dvb(const DecomposedBundle& b, int i) {
    if (b.n() != 3) throw Error(Errc::WrongArity, "core_dvb needs a triple");
    check_axis(3, i);
    const Slot edge = axis_bit(i);
    const Slot opposite = b.full() & ~edge;
    const int other = slot_axes(opposite).front();
    // vertical side C_i at {1}, horizontal side E_i at {2}
    std::vector<Decoration> slots{Decoration{}, b.at(opposite), b.at(edge), b.at(b.full())};
    std::vector<std::vector<int>> signs{
        {0, b.axis_sign(other, opposite), 0, b.axis_sign(other, b.full())},
        {0, 0, b.axis_sign(i, edge), b.axis_sign(i, b.full())}};
    return DecomposedBundle(2, std::move(slots), std::move(signs));
}

Decoration ultracore(const DecomposedBundle& b) { return b.at(b.full()); }

DecomposedBundle flip(const DecomposedBundle& b, int i, int j) {
    check_axis(b.n(), i);
    check_axis(b.n(), j);
    if (i == j) {
        log(LogLevel::Warn, "IdentityFlip: flip of axis " + std::to_string(i) + " with itself is a no-op");
        return b;
    }
    auto swap = [&](Slot s) {
        const bool hi = has_axis(s, i), hj = has_axis(s, j);
        s &= ~(axis_bit(i) | axis_bit(j));
        if (hi) s |= axis_bit(j);
        if (hj) s |= axis_bit(i);
        return s;
    };
    auto slots = b.slots();
    auto signs = b.axis_signs();
    for (Slot s = 1; s <= b.full(); ++s) {
        slots[swap(s)] = b.at(s);
        for (int a = 1; a <= b.n(); ++a) {
            if (!has_axis(s, a)) continue;
            const int image = a == i ? j : a == j ? i : a;
            signs[image - 1][swap(s)] = b.axis_sign(a, s);
        }
    }
    return DecomposedBundle(b.n(), std::move(slots), std::move(signs));
}

long long total_dim(const DecomposedBundle& b) {
    long long sum = 0;
    for (Slot s = 1; s <= b.full(); ++s) sum += b.at(s).atom.dim;
    return sum;
}

namespace {

std::string corner_label(const DecomposedBundle& b, Slot t) {
    if (t == 0) return "M";
    if (slot_size(t) == 1) return b.at(t).label();
    const int n = b.n();
    if (t == b.full()) return n == 2 ? "D" : n == 3 ? "III" : "total";
    if (n == 3 && slot_size(t) == 2) {
        return "D_" + std::to_string(slot_axes(b.full() & ~t).front());
    }
    std::string out = "F";
    for (int a : slot_axes(t)) out += std::to_string(a);
    return out;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string render_dot(const DecomposedBundle& b) {
    if (b.n() > 4) throw Error(Errc::TooLargeToRender, "n = " + std::to_string(b.n()));
    std::ostringstream os;
    os << "digraph bundle {\n  rankdir=BT;\n";
    for (Slot t = 0; t <= b.full(); ++t) {
        os << "  c" << t << " [label=\"" << dot_escape(corner_label(b, t)) << "\"";
        if (t != 0) os << ", tooltip=\"" << slot_str(t) << ": " << dot_escape(b.at(t).label()) << "\"";
        os << "];\n";
    }
    for (Slot t = 1; t <= b.full(); ++t)
        for (int a : slot_axes(t))
            os << "  c" << t << " -> c" << (t & ~axis_bit(a)) << " [label=\"" << a << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string describe(const DecomposedBundle& b) {
    std::ostringstream os;
    os << "n=" << b.n() << '\n';
    for (Slot s = 1; s <= b.full(); ++s)
        os << "  " << slot_str(s) << " " << b.at(s).label() << " (dim " << b.at(s).atom.dim << ")\n";
    return os.str();
}

DecomposedBundle trivial_double(int dA, int dB, int dC) {
    return build_trivial(2, {{0b01, {"A", dA}}, {0b10, {"B", dB}}, {0b11, {"C", dC}}});
}

DecomposedBundle trivial_triple() {
    return build_trivial(3, {{0b001, {"E_1", 1}},
                             {0b010, {"E_2", 2}},
                             {0b100, {"E_3", 3}},
                             {0b110, {"C_1", 4}},
                             {0b101, {"C_2", 5}},
                             {0b011, {"C_3", 6}},
                             {0b111, {"W", 7}}});
}

}  // namespace mvb
