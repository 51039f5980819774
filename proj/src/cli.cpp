#include "mvb/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mvb/bundle_io.hpp"
#include "mvb/duality.hpp"
#include "mvb/error.hpp"
#include "mvb/fpgroup.hpp"
#include "mvb/paircalc.hpp"
#include "mvb/suite.hpp"

namespace mvb {

namespace {

struct Options {
    std::string in, out, format = "", preset, presentation, relation, gens;
    std::vector<int> axes;
    int n = 3, maxK = 0, trials = 1000, cap = 0, baseDim = 0;
    std::vector<int> dims{2, 3, 2};
    std::uint64_t seed = 0;
};

bool usage_error(Errc c) {
    switch (c) {
        case Errc::SpecParseError:
        case Errc::BadAxis:
        case Errc::BadWord:
        case Errc::WrongArity:
        case Errc::MissingSlot:
        case Errc::DuplicateAtom:
        case Errc::EmptyFace:
        case Errc::TooLargeToRender:
        case Errc::ArityMismatch:
            return true;
        default:
            return false;
    }
}

class Runner {
public:
    Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

    void emit(const std::string& text) {
        if (o_.out.empty()) {
            out_ << text;
            if (!text.empty() && text.back() != '\n') out_ << '\n';
            return;
        }
        std::ofstream f(o_.out);
        if (!f) throw Error(Errc::SpecParseError, o_.out + ": cannot write");
        f << text;
        if (!text.empty() && text.back() != '\n') f << '\n';
    }

    std::string format(const std::string& fallback) const { return o_.format.empty() ? fallback : o_.format; }

    int bundle(const DecomposedBundle& b) {
        const std::string f = format("json");
        if (f == "json") emit(bundle_to_json(b).dump(2));
        else if (f == "dot") emit(render_dot(b));
        else emit(describe(b));
        return 0;
    }

    int report(const VerificationReport& r) {
        if (format("json") == "json") {
            emit(r.to_json().dump(2));
        } else {
            emit(r.check + ": " + (r.pass ? "PASS" : "FAIL") + " (trials " + std::to_string(r.trials) + ", max residual " +
                 std::to_string(r.maxResidual) + ", seed " + std::to_string(r.seed) + ")");
        }
        return r.pass ? 0 : 1;
    }

    DecomposedBundle input() const {
        if (o_.in.empty()) throw Error(Errc::SpecParseError, "--in is required");
        return load_bundle(o_.in);
    }

    int single_axis() const {
        if (o_.axes.size() != 1) throw Error(Errc::BadAxis, "exactly one --axis is required");
        return o_.axes.front();
    }

    Presentation presentation() const {
        if (!o_.in.empty()) {
            std::ifstream f(o_.in);
            if (!f) throw Error(Errc::SpecParseError, o_.in + ": cannot open");
            std::ostringstream ss;
            ss << f.rdbuf();
            return parse_presentation(ss.str());
        }
        if (!o_.presentation.empty()) return parse_presentation(o_.presentation);
        return preset(o_.preset.empty() ? "vb3" : o_.preset);
    }

    int cap(int fallback) const { return o_.cap > 0 ? o_.cap : fallback; }

    TrivDVB dims() const {
        if (o_.dims.size() != 3) throw Error(Errc::SpecParseError, "--dims takes three values a,b,c");
        for (int d : o_.dims)
            if (d < 0) throw Error(Errc::SpecParseError, "--dims must be nonnegative");
        return {o_.dims[0], o_.dims[1], o_.dims[2]};
    }

    int conjecture() {
        const int k = o_.maxK > 0 ? o_.maxK : o_.n;
        VerificationReport r = verify_conjecture(o_.n, k);
        if (format("json") == "text") {
            std::ostringstream os;
            for (const auto& c : r.details["cases"])
                os << c["relation"].get<std::string>() << (c["holds"].get<bool>() ? " holds" : " FAILS") << '\n';
            emit(os.str());
            return r.pass ? 0 : 1;
        }
        return report(r);
    }

    int group_verify() {
        if (o_.relation.empty()) return conjecture();
        const Word w = parse_word(o_.relation, o_.n);
        auto j = relation_json(o_.n, w);
        j["relation"] = o_.relation;
        if (format("json") == "json") emit(j.dump(2));
        else emit(o_.relation + (j["holds"].get<bool>() ? " holds" : " does not hold"));
        return j["holds"].get<bool>() ? 0 : 1;
    }

    int group_order_cmd() {
        const Presentation p = presentation();
        const CosetTable t = coset_enumerate(p, {}, cap(kDefaultCosetCap));
        if (t.status != EnumStatus::Complete)
            throw Error(Errc::EnumerationCapExceeded, "more than " + std::to_string(cap(kDefaultCosetCap)) + " cosets");
        if (format("text") == "json") {
            nlohmann::ordered_json j;
            j["order"] = t.size();
            j["rowsDefined"] = t.rowsDefined;
            j["relatorConsistent"] = t.relator_consistent(p);
            emit(j.dump(2));
        } else {
            emit(std::to_string(t.size()));
        }
        return 0;
    }

    int group_closure_cmd() {
        const GroupClosure g = closure(o_.n, cap(kDefaultClosureCap));
        if (!g.complete) throw Error(Errc::ClosureCapExceeded, "stopped at " + std::to_string(g.order()) + " elements");
        const std::string f = format("text");
        if (f == "dot") {
            emit(g.to_dot());
        } else if (f == "json") {
            nlohmann::ordered_json j;
            j["n"] = o_.n;
            j["order"] = g.order();
            j["complete"] = g.complete;
            nlohmann::ordered_json els = nlohmann::ordered_json::array();
            for (int e = 0; e < g.order(); ++e)
                els.push_back({{"word", format_word(g.words[e], o_.n)}, {"order", element_order(g.elements[e])}});
            j["elements"] = els;
            emit(j.dump(2));
        } else {
            emit(std::to_string(g.order()));
        }
        return 0;
    }

    int group_subgroup_cmd() {
        const Presentation p = presentation();
        std::vector<FreeWord> gens;
        std::string list = o_.gens.empty() ? std::string("XYXZ,YZYX,ZXZY") : o_.gens;
        std::stringstream ss(list);
        for (std::string w; std::getline(ss, w, ',');)
            if (!w.empty()) gens.push_back(parse_free_word(w, p.generators));
        const int c = cap(kDefaultCosetCap);
        const int index = subgroup_index(p, gens, c);
        const bool normal = is_normal(p, gens, c);
        nlohmann::ordered_json j;
        j["index"] = index;
        j["normal"] = normal;
        if (normal) {
            const auto q = quotient_order(p, gens, c);
            j["quotientOrder"] = q.order;
            j["quotientNonabelian"] = q.nonabelian;
        }
        if (format("json") == "json") {
            emit(j.dump(2));
        } else {
            std::ostringstream os;
            os << "index " << index << (normal ? ", normal" : ", not normal");
            if (normal) os << ", quotient order " << j["quotientOrder"] << (j["quotientNonabelian"].get<bool>() ? " nonabelian" : " abelian");
            emit(os.str());
        }
        return 0;
    }

private:
    const Options& o_;
    std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Duality calculus for decomposed multiple vector bundles", "mvb"};
    app.require_subcommand(1);

    auto format_opt = [&](CLI::App* cmd) {
        cmd->add_option("--format", o.format, "json, text or dot")->check(CLI::IsMember({"json", "text", "dot"}));
        cmd->add_option("--out", o.out, "write output to a file");
    };

    auto* dual = app.add_subcommand("dual", "dualize a bundle along one axis");
    dual->add_option("--in", o.in)->required();
    dual->add_option("--axis", o.axes)->required();
    format_opt(dual);

    auto* flip_cmd = app.add_subcommand("flip", "exchange two axes (default 1 and 2)");
    flip_cmd->add_option("--in", o.in)->required();
    flip_cmd->add_option("--axis", o.axes, "two axes, e.g. --axis 1 --axis 2");
    format_opt(flip_cmd);

    auto* cot = app.add_subcommand("cotangent", "cotangent completion to an (n+1)-fold bundle");
    cot->add_option("--in", o.in)->required();
    cot->add_option("--base-dim", o.baseDim, "dimension of the base");
    format_opt(cot);

    auto* core = app.add_subcommand("core", "core double bundle of a triple");
    core->add_option("--in", o.in)->required();
    core->add_option("--axis", o.axes)->required();
    format_opt(core);

    auto* render = app.add_subcommand("render", "emit the corner diagram as DOT");
    render->add_option("--in", o.in)->required();
    render->add_option("--out", o.out);

    auto* group = app.add_subcommand("group", "dualization groups");
    group->require_subcommand(1);
    auto group_common = [&](CLI::App* cmd) {
        cmd->add_option("--preset", o.preset, "vb2, vb3, vb3-ppp-only or conjecture:<n>");
        cmd->add_option("--presentation", o.presentation, "inline presentation text");
        cmd->add_option("--in", o.in, "presentation file (text or JSON)");
        cmd->add_option("--cap", o.cap);
        format_opt(cmd);
    };
    auto* g_order = group->add_subcommand("order", "order by coset enumeration");
    group_common(g_order);
    auto* g_closure = group->add_subcommand("closure", "closure of the dualization action");
    g_closure->add_option("--n", o.n);
    g_closure->add_option("--cap", o.cap);
    format_opt(g_closure);
    auto* g_verify = group->add_subcommand("verify", "check a relation, or the conjectured family");
    g_verify->add_option("--n", o.n);
    g_verify->add_option("--relation", o.relation);
    g_verify->add_option("--max-k", o.maxK);
    format_opt(g_verify);
    auto* g_sub = group->add_subcommand("subgroup", "index, normality and quotient of a subgroup");
    group_common(g_sub);
    g_sub->add_option("--gens", o.gens, "comma separated words");
    auto* g_ind = group->add_subcommand("independence", "finite quotient certificate for (XYZ)^4");
    format_opt(g_ind);

    auto* verify = app.add_subcommand("verify", "relation checks");
    verify->require_subcommand(1);
    auto* v_conj = verify->add_subcommand("conjecture", "(X_i1...X_ik)^(k+1) for distinct indices");
    v_conj->add_option("--n", o.n);
    v_conj->add_option("--max-k", o.maxK);
    format_opt(v_conj);

    auto* check = app.add_subcommand("check", "verification suites");
    check->require_subcommand(1);
    auto check_common = [&](CLI::App* cmd) {
        cmd->add_option("--dims", o.dims)->delimiter(',');
        cmd->add_option("--trials", o.trials);
        cmd->add_option("--seed", o.seed);
        format_opt(cmd);
    };
    auto* c_num = check->add_subcommand("numeric", "pairing identities on concrete models");
    check_common(c_num);
    auto* c_all = check->add_subcommand("all", "every invariant of every module");
    check_common(c_all);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n' << "run with --help for usage\n";
        return 2;
    }

    Runner r(o, out);
    try {
        if (*dual) return r.bundle(dual_axis(r.input(), r.single_axis()));
        if (*flip_cmd) {
            const std::vector<int> ax = o.axes.empty() ? std::vector<int>{1, 2} : o.axes;
            if (ax.size() != 2) throw Error(Errc::BadAxis, "flip takes two axes");
            return r.bundle(flip(r.input(), ax[0], ax[1]));
        }
        if (*cot) return r.bundle(cotangent_completion(r.input(), o.baseDim));
        if (*core) return r.bundle(core_dvb(r.input(), r.single_axis()));
        if (*render) {
            r.emit(render_dot(r.input()));
            return 0;
        }
        if (*g_order) return r.group_order_cmd();
        if (*g_closure) return r.group_closure_cmd();
        if (*g_verify) return r.group_verify();
        if (*g_sub) return r.group_subgroup_cmd();
        if (*g_ind) return r.report(independence_certificate());
        if (*v_conj) return r.conjecture();
        if (*c_num) {
            VerificationReport rep = numeric_suite(r.dims(), o.trials, o.seed);
            rep.seed = o.seed;
            return r.report(rep);
        }
        if (*c_all) {
            VerificationReport rep = full_suite(r.dims(), o.trials, o.seed);
            rep.seed = o.seed;
            return r.report(rep);
        }
    } catch (const Error& e) {
        err << e.what() << '\n';
        return usage_error(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
    err << app.help();
    return 2;
}

}  // namespace mvb
