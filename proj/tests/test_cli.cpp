#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "mvb/bundle_io.hpp"
#include "mvb/cli.hpp"
#include "mvb/duality.hpp"
#include "mvb/error.hpp"

using namespace mvb;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return std::string(MVB_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("bundle JSON round trip") {
    for (const auto& b : {trivial_double(2, 3, 2), trivial_triple(), dual_axis(trivial_triple(), 2)}) {
        CHECK(bundle_from_json(bundle_to_json(b)) == b);
        CHECK(parse_bundle(bundle_to_json(b).dump()) == b);
    }
    const auto tmp = std::filesystem::temp_directory_path() / "mvb_roundtrip.json";
    save_bundle(trivial_triple(), tmp.string());
    CHECK(load_bundle(tmp.string()) == trivial_triple());
    std::filesystem::remove(tmp);
}

TEST_CASE("bundle JSON errors") {
    CHECK_THROWS_AS(load_bundle(fixture("missing_core.json")), Error);
    try {
        load_bundle(fixture("missing_core.json"));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::SpecParseError);
        CHECK(std::string(e.what()).find("MissingSlot") != std::string::npos);
    }
    try {
        parse_bundle(R"({"n": 2, "slots": [{"subset": [1], "name": "A", "dim": 1},
                        {"subset": [2], "name": "B", "dim": "x"}, {"subset": [1,2], "name": "C", "dim": 1}]})");
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("slots[1]") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_bundle("{ not json"), Error);
    CHECK(load_bundle(fixture("trivial_double.json")) == trivial_double(2, 3, 2));
    CHECK(load_bundle(fixture("trivial_triple.json")) == trivial_triple());
}

TEST_CASE("dual subcommand") {
    const Run r = cli({"dual", "--axis", "1", "--in", fixture("trivial_triple.json")});
    REQUIRE(r.code == 0);
    CHECK(parse_bundle(r.out) == dual_axis(trivial_triple(), 1));
    const Run t = cli({"dual", "--axis", "2", "--in", fixture("trivial_double.json"), "--format", "text"});
    CHECK(t.code == 0);
    CHECK(t.out.find("C*") != std::string::npos);
    const Run d = cli({"dual", "--axis", "1", "--in", fixture("trivial_triple.json"), "--format", "dot"});
    CHECK(d.code == 0);
    CHECK(d.out.rfind("digraph", 0) == 0);
}

TEST_CASE("group subcommands") {
    Run r = cli({"group", "order", "--preset", "vb3", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["order"] == 72);
    r = cli({"group", "order", "--in", fixture("vb3.txt"), "--format", "json"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["order"] == 72);
    r = cli({"group", "order", "--in", fixture("vb2.json"), "--format", "json"});
    CHECK(nlohmann::json::parse(r.out)["order"] == 6);
    r = cli({"group", "order", "--preset", "vb3-ppp-only", "--cap", "3000", "--format", "json"});
    CHECK(r.code == 1);
    r = cli({"group", "verify", "--relation", "(XYZ)^4", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["holds"] == true);
    r = cli({"group", "verify", "--relation", "XYZ", "--format", "json"});
    CHECK(r.code == 1);
    r = cli({"group", "closure", "--n", "2", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["order"] == 6);
    r = cli({"group", "subgroup", "--format", "json"});
    CHECK(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["index"] == 6);
    CHECK(j["normal"] == true);
    r = cli({"group", "independence", "--format", "json"});
    CHECK(r.code == 0);
}

TEST_CASE("verify and check subcommands") {
    Run r = cli({"verify", "conjecture", "--n", "3", "--max-k", "3", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["pass"] == true);
    r = cli({"check", "numeric", "--dims", "1,2,1", "--trials", "10", "--seed", "3", "--format", "json"});
    CHECK(r.code == 0);
    {
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["seed"] == 3);
        CHECK(j["pass"] == true);
    }
}

TEST_CASE("usage errors exit with 2") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"dual", "--axis", "4", "--in", fixture("trivial_triple.json")}).code == 2);
    CHECK(cli({"dual", "--axis", "1", "--in", fixture("missing_core.json")}).code == 2);
    CHECK(cli({"group", "verify", "--relation", "XQ", "--format", "json"}).code == 2);
    CHECK(cli({"group", "order", "--preset", "nope", "--format", "json"}).code == 2);
    CHECK(cli({"check", "numeric", "--dims", "1,2"}).code == 2);
}

TEST_CASE("output file") {
    const auto tmp = std::filesystem::temp_directory_path() / "mvb_cli_out.json";
    const Run r = cli({"cotangent", "--in", fixture("trivial_double.json"), "--out", tmp.string()});
    CHECK(r.code == 0);
    CHECK(load_bundle(tmp.string()) == cotangent_completion(trivial_double(2, 3, 2), 0));
    std::filesystem::remove(tmp);
}
