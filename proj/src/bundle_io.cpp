#include "mvb/bundle_io.hpp"

#include <fstream>
#include <sstream>

#include "mvb/error.hpp"

namespace mvb {

nlohmann::ordered_json bundle_to_json(const DecomposedBundle& b) {
    nlohmann::ordered_json j;
    j["n"] = b.n();
    j["slots"] = nlohmann::ordered_json::array();
    bool uniform = true;
    for (Slot s = 1; s <= b.full(); ++s) {
        const auto& d = b.at(s);
        nlohmann::ordered_json slot;
        slot["subset"] = slot_axes(s);
        slot["name"] = d.atom.name;
        slot["dim"] = d.atom.dim;
        slot["dualParity"] = d.dualParity;
        slot["sign"] = d.sign;
        j["slots"].push_back(slot);
        for (int i : slot_axes(s)) uniform = uniform && b.axis_sign(i, s) == b.axis_sign(1, b.full());
    }
    // axisSigns only when they differ from all +1
    if (!(uniform && b.axis_sign(1, b.full()) == 1)) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (int i = 1; i <= b.n(); ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (Slot s = 1; s <= b.full(); ++s)
                if (has_axis(s, i)) row.push_back({{"subset", slot_axes(s)}, {"sign", b.axis_sign(i, s)}});
            rows.push_back(row);
        }
        j["axisSigns"] = rows;
    }
    return j;
}

namespace {

[[noreturn]] void parse_fail(const std::string& context, const std::string& field, const std::string& msg) {
    throw Error(Errc::SpecParseError, context + ": " + field + ": " + msg);
}

template <class T>
T field_as(const nlohmann::json& obj, const char* key, const std::string& context, const std::string& where) {
    if (!obj.contains(key)) parse_fail(context, where + "." + key, "missing");
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        parse_fail(context, where + "." + key, e.what());
    }
}

Slot subset_of(const nlohmann::json& obj, int n, const std::string& context, const std::string& where) {
    const auto axes = field_as<std::vector<int>>(obj, "subset", context, where);
    if (axes.empty()) parse_fail(context, where + ".subset", "empty subset");
    Slot s = 0;
    for (int a : axes) {
        if (a < 1 || a > n) parse_fail(context, where + ".subset", "axis " + std::to_string(a) + " outside 1.." + std::to_string(n));
        if (has_axis(s, a)) parse_fail(context, where + ".subset", "repeated axis");
        s |= axis_bit(a);
    }
    return s;
}

}  // namespace

DecomposedBundle bundle_from_json(const nlohmann::json& j, const std::string& context) {
    if (!j.is_object()) parse_fail(context, "<root>", "expected an object");
    const int n = field_as<int>(j, "n", context, "<root>");
    if (n < 1 || n > kMaxArity) parse_fail(context, "n", "must lie in 1.." + std::to_string(kMaxArity));
    if (!j.contains("slots") || !j.at("slots").is_array()) parse_fail(context, "slots", "expected an array");

    std::vector<Decoration> slots(std::size_t{1} << n);
    std::vector<bool> present(slots.size(), false);
    int k = 0;
    for (const auto& item : j.at("slots")) {
        const std::string where = "slots[" + std::to_string(k++) + "]";
        if (!item.is_object()) parse_fail(context, where, "expected an object");
        const Slot s = subset_of(item, n, context, where);
        if (present[s]) parse_fail(context, where + ".subset", slot_str(s) + " listed twice");
        present[s] = true;
        Decoration d;
        d.atom.name = field_as<std::string>(item, "name", context, where);
        d.atom.dim = field_as<int>(item, "dim", context, where);
        if (d.atom.dim < 0) parse_fail(context, where + ".dim", "negative");
        d.dualParity = item.contains("dualParity") ? field_as<int>(item, "dualParity", context, where) : 0;
        if (d.dualParity != 0 && d.dualParity != 1) parse_fail(context, where + ".dualParity", "must be 0 or 1");
        d.sign = item.contains("sign") ? field_as<int>(item, "sign", context, where) : 1;
        if (d.sign != 1 && d.sign != -1) parse_fail(context, where + ".sign", "must be 1 or -1");
        slots[s] = d;
    }
    for (Slot s = 1; s <= full_slot(n); ++s)
        if (!present[s]) throw Error(Errc::SpecParseError, context + ": slots: missing slot " + slot_str(s) + " (MissingSlot)");

    std::vector<std::vector<int>> signs(n, std::vector<int>(slots.size(), 0));
    for (int i = 1; i <= n; ++i)
        for (Slot s = 1; s <= full_slot(n); ++s)
            if (has_axis(s, i)) signs[i - 1][s] = 1;
    if (j.contains("axisSigns")) {
        const auto& rows = j.at("axisSigns");
        if (!rows.is_array() || static_cast<int>(rows.size()) != n) parse_fail(context, "axisSigns", "expected one array per axis");
        for (int i = 1; i <= n; ++i) {
            int e = 0;
            for (const auto& entry : rows.at(i - 1)) {
                const std::string where = "axisSigns[" + std::to_string(i - 1) + "][" + std::to_string(e++) + "]";
                const Slot s = subset_of(entry, n, context, where);
                if (!has_axis(s, i)) parse_fail(context, where, "subset does not contain axis " + std::to_string(i));
                const int v = field_as<int>(entry, "sign", context, where);
                if (v != 1 && v != -1) parse_fail(context, where + ".sign", "must be 1 or -1");
                signs[i - 1][s] = v;
            }
        }
    }
    try {
        return DecomposedBundle(n, std::move(slots), std::move(signs));
    } catch (const Error& e) {
        parse_fail(context, "slots", e.what());
    }
}

DecomposedBundle parse_bundle(const std::string& text, const std::string& context) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // byte offset to line for the message
        std::size_t line = 1;
        for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i)
            if (text[i] == '\n') ++line;
        throw Error(Errc::SpecParseError, context + ": line " + std::to_string(line) + ": " + e.what());
    }
    return bundle_from_json(j, context);
}

DecomposedBundle load_bundle(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::SpecParseError, path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_bundle(ss.str(), path);
}

void save_bundle(const DecomposedBundle& b, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::SpecParseError, path + ": cannot write");
    out << bundle_to_json(b).dump(2) << '\n';
}

}  // namespace mvb
