#include "mvb/duality.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "mvb/error.hpp"

namespace mvb {

SignedRelabeling::SignedRelabeling(int n, std::vector<Slot> image, std::vector<int> dualInc, std::vector<int> sign)
    : n_(n), image_(std::move(image)), dualInc_(std::move(dualInc)), sign_(std::move(sign)) {
    if (n < 1 || n > kMaxArity) throw Error(Errc::WrongArity, "n = " + std::to_string(n));
    const std::size_t size = std::size_t{1} << n;
    if (image_.size() != size || dualInc_.size() != size || sign_.size() != size)
        throw Error(Errc::ArityMismatch, "relabeling tables must have 2^n entries");
    std::vector<int> destSign(size, 1);
    std::vector<bool> hit(size, false);
    for (Slot s = 1; s < size; ++s) {
        const Slot t = image_[s];
        if (t == 0 || t >= size || hit[t]) throw Error(Errc::ArityMismatch, "slot map is not a bijection");
        hit[t] = true;
        dualInc_[s] &= 1;
        destSign[t] = sign_[s] < 0 ? -1 : 1;
    }
    for (int j = 1; j <= n; ++j) {
        if (destSign[axis_bit(j)] > 0) continue;
        for (Slot t = 1; t < size; ++t)
            if (has_axis(t, j)) destSign[t] = -destSign[t];
    }
    image_[0] = 0;
    dualInc_[0] = 0;
    sign_[0] = 1;
    for (Slot s = 1; s < size; ++s) sign_[s] = destSign[image_[s]];
}

SignedRelabeling SignedRelabeling::identity(int n) {
    const std::size_t size = std::size_t{1} << n;
    std::vector<Slot> image(size);
    for (Slot s = 0; s < size; ++s) image[s] = s;
    return SignedRelabeling(n, std::move(image), std::vector<int>(size, 0), std::vector<int>(size, 1));
}

bool SignedRelabeling::is_identity() const { return *this == identity(n_); }

std::vector<int> SignedRelabeling::key() const {
    std::vector<int> k{n_};
    for (Slot s = 1; s <= full_slot(n_); ++s) {
        k.push_back(static_cast<int>(image_[s]));
        k.push_back(dualInc_[s]);
        k.push_back(sign_[s]);
    }
    return k;
}

std::string SignedRelabeling::describe() const {
    std::ostringstream os;
    for (Slot s = 1; s <= full_slot(n_); ++s) {
        os << slot_str(s) << " -> " << slot_str(image_[s]) << (dualInc_[s] ? " *" : "  ")
           << (sign_[s] < 0 ? " -1" : " +1") << '\n';
    }
    return os.str();
}

SignedRelabeling compose(const SignedRelabeling& g, const SignedRelabeling& h) {
    if (g.n() != h.n()) throw Error(Errc::ArityMismatch, "compose of arities " + std::to_string(g.n()) + " and " + std::to_string(h.n()));
    const int n = g.n();
    const std::size_t size = std::size_t{1} << n;
    std::vector<Slot> image(size);
    std::vector<int> inc(size), sign(size, 1);
    for (Slot s = 1; s < size; ++s) {
        const Slot mid = h.image(s);
        image[s] = g.image(mid);
        inc[s] = h.dual_inc(s) ^ g.dual_inc(mid);
        sign[s] = h.sign(s) * g.sign(mid);
    }
    return SignedRelabeling(n, std::move(image), std::move(inc), std::move(sign));
}

SignedRelabeling inverse(const SignedRelabeling& g) {
    const std::size_t size = std::size_t{1} << g.n();
    std::vector<Slot> image(size);
    std::vector<int> inc(size), sign(size, 1);
    for (Slot s = 1; s < size; ++s) {
        const Slot t = g.image(s);
        image[t] = s;
        inc[t] = g.dual_inc(s);
        sign[t] = g.sign(s);
    }
    return SignedRelabeling(g.n(), std::move(image), std::move(inc), std::move(sign));
}

DecomposedBundle apply(const SignedRelabeling& g, const DecomposedBundle& b) {
    if (g.n() != b.n()) throw Error(Errc::ArityMismatch, "relabeling and bundle arities differ");
    std::vector<Decoration> slots(std::size_t{1} << b.n());
    for (Slot s = 1; s <= b.full(); ++s) {
        Decoration d = b.at(s);
        d.dualParity ^= g.dual_inc(s);
        d.sign *= g.sign(s);
        slots[g.image(s)] = d;
    }
    return DecomposedBundle(b.n(), std::move(slots), b.axis_signs());
}

int element_order(const SignedRelabeling& g) {
    SignedRelabeling power = g;
    int k = 1;
    while (!power.is_identity()) {
        power = compose(power, g);
        if (++k > kDefaultClosureCap) throw Error(Errc::ClosureCapExceeded, "element order");
    }
    return k;
}

SignedRelabeling flip_relabeling(int n, int i, int j) {
    check_axis(n, i);
    check_axis(n, j);
    const std::size_t size = std::size_t{1} << n;
    std::vector<Slot> image(size);
    for (Slot s = 1; s < size; ++s) {
        Slot t = s & ~(axis_bit(i) | axis_bit(j));
        if (has_axis(s, i)) t |= axis_bit(j);
        if (has_axis(s, j)) t |= axis_bit(i);
        image[s] = t;
    }
    return SignedRelabeling(n, std::move(image), std::vector<int>(size, 0), std::vector<int>(size, 1));
}

SignedRelabeling sign_relabeling(int n, const std::vector<Slot>& negated) {
    const std::size_t size = std::size_t{1} << n;
    std::vector<Slot> image(size);
    std::vector<int> sign(size, 1);
    for (Slot s = 0; s < size; ++s) image[s] = s;
    for (Slot s : negated) {
        if (s == 0 || s >= size) throw Error(Errc::MissingSlot, slot_str(s));
        sign[s] = -sign[s];
    }
    return SignedRelabeling(n, std::move(image), std::vector<int>(size, 0), std::move(sign));
}

namespace {

int orientation(const DecomposedBundle& b, Slot s) {
    return b.axis_sign(slot_axes(s).front(), s);
}

}  // namespace

SignedRelabeling generator_action(int n, const DecomposedBundle& shapeContext, int i) {
    check_axis(n, i);
    if (shapeContext.n() != n) throw Error(Errc::ArityMismatch, "shape context has the wrong arity");
    const std::size_t size = std::size_t{1} << n;
    const Slot rest = full_slot(n) & ~axis_bit(i);
    std::vector<Slot> image(size);
    std::vector<int> inc(size, 0), sign(size, 1);
    for (Slot s = 1; s < size; ++s) {
        const bool moved = has_axis(s, i);
        image[s] = moved ? s ^ rest : s;
        inc[s] = moved ? 1 : 0;
        // evaluation orientation before times orientation after; dualizing
        // reverses the orientation of every structure
        sign[s] = orientation(shapeContext, s) * -orientation(shapeContext, image[s]);
    }
    return SignedRelabeling(n, std::move(image), std::move(inc), std::move(sign));
}

SignedRelabeling generator_action(int n, int i) {
    check_axis(n, i);
    std::vector<Decoration> slots(std::size_t{1} << n);
    for (Slot s = 1; s <= full_slot(n); ++s) slots[s] = Decoration{Atom{"s" + std::to_string(s), 0}, 0, 1};
    return generator_action(n, DecomposedBundle(n, std::move(slots)), i);
}

DecomposedBundle dual_axis(const DecomposedBundle& b, int i) {
    check_axis(b.n(), i);
    const DecomposedBundle moved = apply(generator_action(b.n(), b, i), b);
    auto signs = moved.axis_signs();
    for (auto& row : signs)
        for (int& e : row) e = -e;
    return DecomposedBundle(b.n(), moved.slots(), std::move(signs));
}

SignedRelabeling evaluate(int n, const Word& w) {
    std::vector<SignedRelabeling> gens;
    for (int i = 1; i <= n; ++i) gens.push_back(generator_action(n, i));
    SignedRelabeling g = SignedRelabeling::identity(n);
    for (int a : w.letters) {
        if (a < 1 || a > n) throw Error(Errc::BadWord, "letter for axis " + std::to_string(a));
        g = compose(g, gens[a - 1]);
    }
    return g;
}

int GroupClosure::index_of(const SignedRelabeling& g) const {
    auto it = lookup.find(g.key());
    return it == lookup.end() ? -1 : it->second;
}

std::string GroupClosure::to_dot() const {
    static constexpr std::array<const char*, 8> colors{"red", "blue", "darkgreen", "orange",
                                                       "purple", "brown", "magenta", "gray40"};
    std::ostringstream os;
    os << "digraph cayley {\n";
    for (int e = 0; e < order(); ++e)
        os << "  e" << e << " [label=\"" << format_word(words[e], n) << "\"];\n";
    for (int e = 0; e < order(); ++e) {
        for (int i = 1; i <= n; ++i) {
            const int f = cayley[e][i - 1];
            // generators are involutions: draw each undirected pair once
            if (f < 0 || f < e) continue;
            os << "  e" << e << " -> e" << f << " [dir=none, color=" << colors[(i - 1) % colors.size()]
               << ", label=\"" << format_word(Word{{i}}, n) << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

GroupClosure closure(int n, int maxElements) {
    if (n < 1 || n > kMaxArity) throw Error(Errc::WrongArity, "n = " + std::to_string(n));
    if (maxElements < 1) throw Error(Errc::ClosureCapExceeded, "cap must be positive");
    std::vector<SignedRelabeling> gens;
    for (int i = 1; i <= n; ++i) gens.push_back(generator_action(n, i));

    GroupClosure c;
    c.n = n;
    c.elements.push_back(SignedRelabeling::identity(n));
    c.words.push_back(Word{});
    c.lookup.emplace(c.elements.front().key(), 0);
    c.complete = true;
    for (std::size_t e = 0; e < c.elements.size(); ++e) {
        c.cayley.emplace_back(n, -1);
        for (int i = 1; i <= n; ++i) {
            SignedRelabeling next = compose(c.elements[e], gens[i - 1]);
            auto key = next.key();
            auto it = c.lookup.find(key);
            if (it != c.lookup.end()) {
                c.cayley[e][i - 1] = it->second;
                continue;
            }
            if (c.order() >= maxElements) {
                c.complete = false;
                continue;
            }
            const int idx = c.order();
            c.lookup.emplace(std::move(key), idx);
            c.elements.push_back(std::move(next));
            c.words.push_back(concat(c.words[e], Word{{i}}));
            c.cayley[e][i - 1] = idx;
        }
    }
    if (!c.complete)
        log(LogLevel::Warn, "ClosureCapExceeded: stopped at " + std::to_string(c.order()) + " elements");
    return c;
}

std::vector<SignedRelabeling> generated_subgroup(const std::vector<SignedRelabeling>& gens, int maxElements) {
    if (gens.empty()) throw Error(Errc::WrongArity, "no generators");
    const int n = gens.front().n();
    std::vector<SignedRelabeling> out{SignedRelabeling::identity(n)};
    std::map<std::vector<int>, int> seen{{out.front().key(), 0}};
    for (std::size_t e = 0; e < out.size(); ++e) {
        for (const auto& g : gens) {
            SignedRelabeling next = compose(out[e], g);
            if (seen.count(next.key())) continue;
            if (static_cast<int>(out.size()) >= maxElements)
                throw Error(Errc::ClosureCapExceeded, "subgroup exceeds " + std::to_string(maxElements));
            seen.emplace(next.key(), static_cast<int>(out.size()));
            out.push_back(std::move(next));
        }
    }
    return out;
}

bool is_conjugation_closed(const std::vector<SignedRelabeling>& subgroup, const std::vector<SignedRelabeling>& by) {
    std::map<std::vector<int>, int> members;
    for (const auto& h : subgroup) members.emplace(h.key(), 0);
    for (const auto& g : by) {
        const SignedRelabeling gi = inverse(g);
        for (const auto& h : subgroup)
            if (!members.count(compose(compose(g, h), gi).key())) return false;
    }
    return true;
}

bool verify_relation(int n, const Word& w) { return evaluate(n, w).is_identity(); }

nlohmann::ordered_json relation_json(int n, const Word& w) {
    const SignedRelabeling g = evaluate(n, w);
    nlohmann::ordered_json j;
    j["relation"] = format_word(w, n);
    j["n"] = n;
    j["holds"] = g.is_identity();
    j["order"] = element_order(g);
    return j;
}

VerificationReport verify_conjecture(int n, int maxK) {
    if (maxK < 1 || maxK > n)
        throw Error(Errc::WrongArity, "max-k must lie in 1.." + std::to_string(n));
    VerificationReport r;
    r.check = "conjecture";
    r.dims = {n, maxK};
    r.pass = true;
    r.details["cases"] = nlohmann::ordered_json::array();
    int failures = 0;
    for (int k = 1; k <= maxK; ++k) {
        // every string of k distinct axes, lexicographic
        std::vector<int> axes(n);
        for (int i = 0; i < n; ++i) axes[i] = i + 1;
        std::vector<bool> choose(n, false);
        std::fill(choose.begin(), choose.begin() + k, true);
        std::vector<std::vector<int>> strings;
        do {
            std::vector<int> pick;
            for (int i = 0; i < n; ++i)
                if (choose[i]) pick.push_back(axes[i]);
            do {
                strings.push_back(pick);
            } while (std::next_permutation(pick.begin(), pick.end()));
        } while (std::prev_permutation(choose.begin(), choose.end()));
        std::sort(strings.begin(), strings.end());
        for (const auto& s : strings) {
            const Word w = power(Word{s}, k + 1);
            auto j = relation_json(n, w);
            j["relation"] = "(" + format_word(Word{s}, n) + ")^" + std::to_string(k + 1);
            if (!j["holds"].get<bool>()) ++failures;
            r.details["cases"].push_back(j);
            ++r.trials;
        }
    }
    r.maxResidual = failures;
    r.pass = failures == 0;
    return r;
}

std::map<std::string, SignedRelabeling> special_elements() {
    auto ev = [](const char* w) { return evaluate(3, parse_word(w, 3)); };
    std::map<std::string, SignedRelabeling> out{
        {"P_X", ev("YZY")}, {"P_Y", ev("ZXZ")}, {"P_Z", ev("XYX")},
        {"Q_X", ev("XYZX")}, {"Q_Y", ev("YZXY")}, {"Q_Z", ev("ZXYZ")},
    };
    if (out.at("P_X") != ev("ZYZ") || out.at("P_Y") != ev("XZX") || out.at("P_Z") != ev("YXY"))
        throw std::logic_error("the P elements do not agree across their two words");
    return out;
}

DecomposedBundle cotangent_completion(const DecomposedBundle& b, int baseDim) {
    if (baseDim < 0) throw Error(Errc::SpecParseError, "negative base dimension");
    const int n = b.n();
    const int m = n + 1;
    if (m > kMaxArity) throw Error(Errc::WrongArity, "n = " + std::to_string(m));
    std::string baseName = "T*M";
    auto taken = [&](const std::string& name) {
        for (Slot s = 1; s <= b.full(); ++s)
            if (b.at(s).atom.name == name) return true;
        return false;
    };
    while (taken(baseName)) baseName += "'";

    std::vector<Decoration> slots(std::size_t{1} << m);
    for (Slot s = 1; s <= full_slot(m); ++s) {
        if (!has_axis(s, m)) {
            slots[s] = b.at(s);
            continue;
        }
        const Slot complement = b.full() & ~(s & ~axis_bit(m));
        slots[s] = complement == 0 ? Decoration{Atom{baseName, baseDim}, 0, 1} : b.at(complement).dual();
        slots[s].sign = 1;
    }
    return DecomposedBundle(m, std::move(slots));
}

DecomposedBundle completion_face(const DecomposedBundle& c, int i) {
    const int m = c.n();
    check_axis(m, i);
    DecomposedBundle f = face(c, c.full() & ~axis_bit(i));
    // the new axis sits last in the face; move it back to position i
    for (int k = m - 1; k > i; --k) f = flip(f, k, k - 1);
    return f;
}

bool same_shape(const DecomposedBundle& a, const DecomposedBundle& b) {
    if (a.n() != b.n()) return false;
    for (Slot s = 1; s <= a.full(); ++s)
        if (a.at(s).atom != b.at(s).atom || a.at(s).dualParity != b.at(s).dualParity) return false;
    return true;
}

CorneringSigns cornering_signs(const DecomposedBundle& b) {
    if (b.n() != 2) throw Error(Errc::WrongArity, "cornering needs a double bundle");
    const std::string A = b.at(0b01).label(), B = b.at(0b10).label(), Cs = b.at(0b11).dual().label();
    CorneringSigns out;
    out.arrows = {{"D", A, 1}, {"D", B, -1}, {"D^{*A}", A, 0}, {"D^{*A}", Cs, 0}, {"D^{*B}", B, 0}, {"D^{*B}", Cs, 0}};
    for (int mask = 0; mask < 64; ++mask) {
        std::array<int, 6> s{};
        for (int k = 0; k < 6; ++k) s[k] = (mask >> k) & 1 ? -1 : 1;
        if (s[0] != 1 || s[1] != -1) continue;  // the arrows of D are given
        const bool emits = s[2] + s[3] == 0 && s[4] + s[5] == 0;
        const bool receives = s[0] + s[2] == 0 && s[1] + s[4] == 0 && s[3] + s[5] == 0;
        if (!(emits && receives)) continue;
        if (++out.solutions == 1)
            for (int k = 0; k < 6; ++k) out.arrows[k].sign = s[k];
    }
    return out;
}

}  // namespace mvb
