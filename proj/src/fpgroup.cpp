#include "mvb/fpgroup.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"
#include "mvb/error.hpp"

namespace mvb {

FreeWord free_inverse(const FreeWord& w) {
    FreeWord out(w.rbegin(), w.rend());
    for (int& l : out) l = -l;
    return out;
}

namespace {

FreeWord free_power(const FreeWord& w, int k) {
    const FreeWord base = k < 0 ? free_inverse(w) : w;
    FreeWord out;
    for (int i = 0; i < std::abs(k); ++i) out.insert(out.end(), base.begin(), base.end());
    return out;
}

class FreeWordParser {
public:
    FreeWordParser(std::string_view text, const std::vector<std::string>& gens) : s_(text), gens_(gens) {}

    FreeWord parse() {
        FreeWord w = sequence();
        skip();
        if (more() && peek() == '=') {
            ++pos_;
            FreeWord rhs = sequence();
            FreeWord inv = free_inverse(rhs);
            w.insert(w.end(), inv.begin(), inv.end());
        }
        skip();
        if (more()) fail("unexpected '" + std::string(1, peek()) + "'");
        return w;
    }

private:
    std::string_view s_;
    const std::vector<std::string>& gens_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(Errc::SpecParseError, msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
    }
    bool more() const { return pos_ < s_.size(); }
    char peek() const { return s_[pos_]; }
    void skip() {
        while (more() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    int exponent() {
        skip();
        int sign = 1;
        if (more() && peek() == '-') {
            sign = -1;
            ++pos_;
            skip();
        }
        const std::size_t start = pos_;
        while (more() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected an exponent");
        return sign * std::stoi(std::string(s_.substr(start, pos_ - start)));
    }

    FreeWord sequence() {
        FreeWord w;
        for (;;) {
            skip();
            if (!more() || peek() == ')' || peek() == '=' || peek() == ',') return w;
            FreeWord item = atom();
            skip();
            if (more() && peek() == '^') {
                ++pos_;
                item = free_power(item, exponent());
            }
            w.insert(w.end(), item.begin(), item.end());
        }
    }

    FreeWord atom() {
        if (peek() == '(') {
            ++pos_;
            FreeWord inner = sequence();
            skip();
            if (!more() || peek() != ')') fail("missing ')'");
            ++pos_;
            return inner;
        }
        std::size_t best = 0;
        int which = -1;
        for (std::size_t g = 0; g < gens_.size(); ++g) {
            const auto& name = gens_[g];
            if (name.size() > best && s_.substr(pos_, name.size()) == name) {
                best = name.size();
                which = static_cast<int>(g);
            }
        }
        if (which < 0) {
            if (peek() == '1' || peek() == 'I') {
                ++pos_;
                return {};
            }
            fail("unknown generator");
        }
        pos_ += best;
        return {which + 1};
    }
};

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

FreeWord parse_free_word(std::string_view text, const std::vector<std::string>& generators) {
    return FreeWordParser(text, generators).parse();
}

std::string format_free_word(const FreeWord& w, const std::vector<std::string>& generators) {
    if (w.empty()) return "1";
    std::string out;
    for (int l : w) {
        if (!out.empty()) out += ' ';
        out += generators.at(std::abs(l) - 1);
        if (l < 0) out += "^-1";
    }
    return out;
}

Presentation parse_presentation(std::string_view text) {
    Presentation p;
    const std::string body = trim(text);
    if (!body.empty() && body.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(body);
            for (const auto& g : j.at("generators")) p.generators.push_back(g.get<std::string>());
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::SpecParseError, e.what());
        }
        if (j.contains("relators"))
            for (const auto& r : j.at("relators")) p.relators.push_back(parse_free_word(r.get<std::string>(), p.generators));
        return p;
    }
    std::string rels;
    for (const auto& part : split(body, ';')) {
        const std::string t = trim(part);
        if (t.empty()) continue;
        const auto colon = t.find(':');
        if (colon == std::string::npos) throw Error(Errc::SpecParseError, "expected 'gens:' or 'rels:' in \"" + t + "\"");
        const std::string key = trim(t.substr(0, colon));
        const std::string value = t.substr(colon + 1);
        if (key == "gens") {
            std::istringstream is(value);
            for (std::string g; is >> g;) {
                g.erase(std::remove(g.begin(), g.end(), ','), g.end());
                if (!g.empty()) p.generators.push_back(g);
            }
        } else if (key == "rels") {
            rels = value;
        } else {
            throw Error(Errc::SpecParseError, "unknown section '" + key + "'");
        }
    }
    if (p.generators.empty()) throw Error(Errc::SpecParseError, "no generators");
    for (const auto& r : split(rels, ',')) {
        const std::string t = trim(r);
        if (!t.empty()) p.relators.push_back(parse_free_word(t, p.generators));
    }
    return p;
}

Presentation preset(std::string_view name) {
    if (name == "vb2") return parse_presentation("gens: V H; rels: V^2, H^2, (V H)^3");
    if (name == "vb3")
        return parse_presentation(
            "gens: X Y Z; rels: X^2, Y^2, Z^2, (X Y Z)^4, (Y Z X)^4, (Z X Y)^4,"
            " Y Z Y = Z Y Z, Z X Z = X Z X, X Y X = Y X Y");
    if (name == "vb3-ppp-only")
        return parse_presentation("gens: X Y Z; rels: X^2, Y^2, Z^2, Y Z Y = Z Y Z, Z X Z = X Z X, X Y X = Y X Y");
    if (name.starts_with("conjecture:")) {
        int n = 0;
        try {
            n = std::stoi(std::string(name.substr(11)));
        } catch (const std::exception&) {
            throw Error(Errc::SpecParseError, "bad preset " + std::string(name));
        }
        if (n < 1 || n > 8) throw Error(Errc::SpecParseError, "conjecture preset needs 1 <= n <= 8");
        Presentation p;
        for (int i = 1; i <= n; ++i) p.generators.push_back("X" + std::to_string(i));
        for (int k = 1; k <= n; ++k) {
            std::vector<bool> choose(n, false);
            std::fill(choose.begin(), choose.begin() + k, true);
            do {
                FreeWord pick;
                for (int i = 0; i < n; ++i)
                    if (choose[i]) pick.push_back(i + 1);
                do {
                    p.relators.push_back(free_power(pick, k + 1));
                } while (std::next_permutation(pick.begin(), pick.end()));
            } while (std::prev_permutation(choose.begin(), choose.end()));
        }
        return p;
    }
    throw Error(Errc::SpecParseError, "unknown preset " + std::string(name));
}

std::vector<std::string> preset_names() { return {"vb2", "vb3", "vb3-ppp-only", "conjecture:<n>"}; }

int CosetTable::act(int coset, int letter) const {
    const int col = letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1;
    return rows.at(coset).at(col);
}

int CosetTable::trace(int coset, const FreeWord& w) const {
    for (int l : w) {
        coset = act(coset, l);
        if (coset < 0) return -1;
    }
    return coset;
}

bool CosetTable::relator_consistent(const Presentation& p) const {
    if (status != EnumStatus::Complete) return false;
    for (int c = 0; c < size(); ++c)
        for (const auto& r : p.relators)
            if (trace(c, r) != c) return false;
    return true;
}

namespace {

class Enumerator {
public:
    Enumerator(int generators, int cap) : cols_(2 * generators), cap_(cap) { add_row(); }

    bool capped() const { return capped_; }
    int defined() const { return static_cast<int>(fwd_.size()); }

    static int column(int letter) { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }
    static int inverse_column(int col) { return col ^ 1; }

    bool live(int c) const { return fwd_[c] == c; }

    void scan_and_fill(int c, const FreeWord& w) {
        if (w.empty()) return;
        int f = c, b = c;
        int i = 0, j = static_cast<int>(w.size()) - 1;
        for (;;) {
            while (i <= j && at(f, column(w[i])) >= 0) f = at(f, column(w[i++]));
            if (i > j) {
                if (f != b) coincidence(f, b);
                return;
            }
            while (j >= i && at(b, inverse_column(column(w[j]))) >= 0) b = at(b, inverse_column(column(w[j--])));
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (i == j) {
                set(f, column(w[i]), b);
                set(b, inverse_column(column(w[i])), f);
                return;
            }
            if (!define(f, column(w[i]))) return;
        }
    }

    bool define(int c, int col) {
        if (defined() >= cap_) {
            capped_ = true;
            return false;
        }
        const int d = add_row();
        set(c, col, d);
        set(d, inverse_column(col), c);
        return true;
    }

    int at(int c, int col) const { return table_[static_cast<std::size_t>(c) * cols_ + col]; }
    int cols() const { return cols_; }

    std::vector<std::vector<int>> compact() {
        std::vector<int> index(fwd_.size(), -1);
        int live_count = 0;
        for (int c = 0; c < defined(); ++c)
            if (live(c)) index[c] = live_count++;
        std::vector<std::vector<int>> rows;
        rows.reserve(live_count);
        for (int c = 0; c < defined(); ++c) {
            if (!live(c)) continue;
            std::vector<int> row(cols_);
            for (int x = 0; x < cols_; ++x) row[x] = at(c, x) < 0 ? -1 : index[rep(at(c, x))];
            rows.push_back(std::move(row));
        }
        return rows;
    }

private:
    int cols_;
    int cap_;
    bool capped_ = false;
    std::vector<int> table_;
    std::vector<int> fwd_;

    int add_row() {
        const int d = defined();
        fwd_.push_back(d);
        table_.insert(table_.end(), cols_, -1);
        return d;
    }
    void set(int c, int col, int v) { table_[static_cast<std::size_t>(c) * cols_ + col] = v; }

    int rep(int c) {
        int r = c;
        while (fwd_[r] != r) r = fwd_[r];
        while (fwd_[c] != r) {
            const int next = fwd_[c];
            fwd_[c] = r;
            c = next;
        }
        return r;
    }

    void merge(int a, int b, std::vector<int>& queue) {
        a = rep(a);
        b = rep(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        fwd_[b] = a;
        queue.push_back(b);
    }

    void coincidence(int a, int b) {
        std::vector<int> queue;
        merge(a, b, queue);
        for (std::size_t q = 0; q < queue.size(); ++q) {
            const int e = queue[q];
            for (int x = 0; x < cols_; ++x) {
                const int f = at(e, x);
                if (f < 0) continue;
                const int xi = inverse_column(x);
                set(f, xi, -1);
                const int e1 = rep(e), f1 = rep(f);
                if (at(e1, x) >= 0) {
                    merge(f1, at(e1, x), queue);
                } else if (at(f1, xi) >= 0) {
                    merge(e1, at(f1, xi), queue);
                } else {
                    set(e1, x, f1);
                    set(f1, xi, e1);
                }
            }
        }
    }
};

}  // namespace

CosetTable coset_enumerate(const Presentation& p, const std::vector<FreeWord>& subgroup, int cap) {
    if (cap < 1) throw Error(Errc::EnumerationCapExceeded, "cap must be positive");
    const int g = static_cast<int>(p.generators.size());
    if (g == 0) throw Error(Errc::SpecParseError, "presentation without generators");
    auto check = [&](const FreeWord& w) {
        for (int l : w)
            if (l == 0 || std::abs(l) > g) throw Error(Errc::SpecParseError, "word uses an undeclared generator");
    };
    for (const auto& r : p.relators) check(r);
    for (const auto& w : subgroup) check(w);

    Enumerator en(g, cap);
    for (const auto& w : subgroup) {
        en.scan_and_fill(0, w);
        if (en.capped()) break;
    }
    for (int c = 0; !en.capped() && c < en.defined(); ++c) {
        for (const auto& r : p.relators) {
            if (!en.live(c) || en.capped()) break;
            en.scan_and_fill(c, r);
        }
        for (int x = 0; x < en.cols() && en.live(c) && !en.capped(); ++x)
            if (en.at(c, x) < 0) en.define(c, x);
    }

    CosetTable t;
    t.generators = g;
    t.rowsDefined = en.defined();
    t.status = en.capped() ? EnumStatus::Capped : EnumStatus::Complete;
    if (t.status == EnumStatus::Complete) t.rows = en.compact();
    log(LogLevel::Debug, "coset enumeration: " + std::to_string(t.size()) + " cosets, " +
                             std::to_string(t.rowsDefined) + " rows defined");
    return t;
}

namespace {

CosetTable enumerate_or_throw(const Presentation& p, const std::vector<FreeWord>& subgroup, int cap) {
    CosetTable t = coset_enumerate(p, subgroup, cap);
    if (t.status != EnumStatus::Complete)
        throw Error(Errc::EnumerationCapExceeded, "more than " + std::to_string(cap) + " cosets defined");
    return t;
}

}  // namespace

int group_order(const Presentation& p, int cap) { return enumerate_or_throw(p, {}, cap).size(); }

int subgroup_index(const Presentation& p, const std::vector<FreeWord>& gens, int cap) {
    return enumerate_or_throw(p, gens, cap).size();
}

bool is_normal(const Presentation& p, const std::vector<FreeWord>& gens, int cap) {
    const CosetTable t = enumerate_or_throw(p, gens, cap);
    const int g = static_cast<int>(p.generators.size());
    for (int x = 1; x <= g; ++x) {
        for (int sgn : {1, -1}) {
            const FreeWord conj{sgn * x};
            for (const auto& s : gens) {
                FreeWord w = conj;
                w.insert(w.end(), s.begin(), s.end());
                w.push_back(-sgn * x);
                if (t.trace(0, w) != 0) return false;
            }
        }
    }
    return true;
}

QuotientResult quotient_order(const Presentation& p, const std::vector<FreeWord>& extraRelators, int cap) {
    Presentation q = p;
    q.relators.insert(q.relators.end(), extraRelators.begin(), extraRelators.end());
    const CosetTable t = enumerate_or_throw(q, {}, cap);
    QuotientResult r{t.size(), false};
    // the table is the regular representation, so a commutator is trivial
    // exactly when it fixes the identity coset
    const int g = static_cast<int>(p.generators.size());
    for (int a = 1; a <= g && !r.nonabelian; ++a)
        for (int b = a + 1; b <= g; ++b)
            if (t.trace(0, FreeWord{a, b, -a, -b}) != 0) {
                r.nonabelian = true;
                break;
            }
    return r;
}

Eigen::Matrix4i FiniteQuotientRep::image(const FreeWord& w) const {
    Eigen::Matrix4i m = Eigen::Matrix4i::Identity();
    for (int l : w) {
        // every generator is a reflection, hence its own inverse
        m = m * matrices.at(std::abs(l) - 1);
        m = m.unaryExpr([this](int v) { return ((v % modulus) + modulus) % modulus; });
    }
    return m;
}

bool FiniteQuotientRep::is_identity(const FreeWord& w) const { return image(w) == Eigen::Matrix4i::Identity(); }

int FiniteQuotientRep::order(const FreeWord& w) const {
    const Eigen::Matrix4i m = image(w);
    Eigen::Matrix4i power = m;
    for (int k = 1; k <= 10000; ++k) {
        if (power == Eigen::Matrix4i::Identity()) return k;
        power = (power * m).unaryExpr([this](int v) { return ((v % modulus) + modulus) % modulus; });
    }
    throw Error(Errc::CertificateInvalid, "element order not found");
}

FiniteQuotientRep affine_reflection_rep() {
    // X, Y swap coordinates (1,2) and (2,3); Z reflects in x1 - x3 = 1
    FiniteQuotientRep rep;
    rep.names = {"X", "Y", "Z"};
    Eigen::Matrix4i x = Eigen::Matrix4i::Zero(), y = Eigen::Matrix4i::Zero(), z = Eigen::Matrix4i::Zero();
    x(0, 1) = x(1, 0) = x(2, 2) = x(3, 3) = 1;
    y(0, 0) = y(1, 2) = y(2, 1) = y(3, 3) = 1;
    z(0, 2) = z(1, 1) = z(2, 0) = z(3, 3) = 1;
    z(0, 3) = 1;
    z(2, 3) = rep.modulus - 1;
    rep.matrices = {x, y, z};
    for (const auto& m : rep.matrices)
        if (rep.image(FreeWord{}) != ((m * m).unaryExpr([&](int v) { return v % rep.modulus; })))
            throw Error(Errc::CertificateInvalid, "generator is not an involution");
    return rep;
}

VerificationReport independence_certificate() {
    const FiniteQuotientRep rep = affine_reflection_rep();
    const auto& gens = rep.names;
    VerificationReport r;
    r.check = "independence";
    r.dims = {rep.modulus};
    r.details["relators"] = nlohmann::ordered_json::array();
    bool relatorsHold = true;
    for (const char* text : {"X^2", "Y^2", "Z^2", "(X Y)^3", "(Y Z)^3", "(Z X)^3"}) {
        const bool ok = rep.is_identity(parse_free_word(text, gens));
        relatorsHold = relatorsHold && ok;
        r.details["relators"].push_back({{"relator", text}, {"identity", ok}});
        ++r.trials;
    }
    if (!relatorsHold) throw Error(Errc::CertificateInvalid, "a PPP relator is not satisfied");

    const FreeWord xyz = parse_free_word("X Y Z", gens);
    const bool fourth = rep.is_identity(free_power(xyz, 4));
    r.details["xyzPower4Identity"] = fourth;
    r.details["xyzOrder"] = rep.order(xyz);
    r.details["xyzPower20Identity"] = rep.is_identity(free_power(xyz, 20));
    r.details["QzQyQxIdentity"] = rep.is_identity(parse_free_word("(Z X Y Z)(Y Z X Y)(X Y Z X)", gens));
    r.details["QxQyQzIdentity"] = rep.is_identity(parse_free_word("(X Y Z X)(Y Z X Y)(Z X Y Z)", gens));
    nlohmann::ordered_json mats = nlohmann::ordered_json::object();
    for (std::size_t g = 0; g < gens.size(); ++g) {
        nlohmann::ordered_json m = nlohmann::ordered_json::array();
        for (int i = 0; i < 4; ++i) {
            std::vector<int> row;
            for (int j = 0; j < 4; ++j) row.push_back(rep.matrices[g](i, j));
            m.push_back(row);
        }
        mats[gens[g]] = m;
    }
    r.details["matrices"] = mats;
    r.pass = relatorsHold && !fourth;
    return r;
}

}  // namespace mvb
