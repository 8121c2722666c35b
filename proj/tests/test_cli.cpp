#include "doctest.h"

#include "nis/cli.hpp"
#include "nis/document.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nis;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(NIS_TEST_DATA) + "/" + name; }

std::string temp(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("nis_cli_test_" + name)).string();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

nlohmann::json report(const Result& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("cli: types") {
    auto r = cli({"types", "--dim", "3", "--toric-degree", "1"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "7 types"));
    for (const char* label : {"I\t", "II\t", "III\t", "IV\t", "V\t", "VI\t", "VII\t"}) CHECK(contains(r.out, label));
    r = cli({"--json", "types", "--dim", "4", "--toric-degree", "2"});
    CHECK(r.code == 0);
    CHECK(report(r)["count"] == 10);
    CHECK(cli({"types", "--dim", "9", "--toric-degree", "1"}).code == 2);
}

TEST_CASE("cli: fans, domains and gluing") {
    CHECK(cli({"validate-fan", data("quadrant_fan.json")}).code == 0);
    CHECK(cli({"complete", data("quadrant_fan.json")}).code == 0);
    CHECK(cli({"complete", data("trigone_fan.json")}).code == 0);
    auto r = cli({"complete", data("half_plane_fan.json")});
    CHECK(r.code == 1);
    CHECK(contains(r.out, "not complete"));

    r = cli({"--json", "locate", data("quadrant_fan.json"), "--point", "1,-1/2"});
    CHECK(r.code == 0);
    CHECK(report(r)["cone"] == 8);
    CHECK(cli({"locate", data("half_plane_fan.json"), "--point", "1,1"}).code == 1);
    CHECK(cli({"locate", data("quadrant_fan.json"), "--point", "1"}).code == 2);

    r = cli({"domain", data("quadrant_fan.json")});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "census=4,4,1"));

    const std::string glued = temp("sphere.json");
    r = cli({"glue", data("trigone_fan.json"), "--labels", "1,2,3", "--output", glued});
    CHECK(r.code == 0);
    r = cli({"invariants", glued});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "chi=2 orientable=true closed=true"));
    CHECK(contains(r.out, "census=6,12,8"));
    CHECK(cli({"glue", data("trigone_fan.json"), "--labels", "1,2"}).code == 2);

    r = cli({"--json", "surface", "--kind", "genus:3"});
    CHECK(r.code == 0);
    CHECK(report(r)["euler"] == -4);
    CHECK(cli({"surface", "--kind", "torus"}).code == 2);
}

TEST_CASE("cli: resonance and normalization") {
    auto r = cli({"resonance", data("field.json"), "--bound", "4"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "r=1"));
    CHECK(contains(r.out, "d=1"));
    CHECK(contains(r.out, "generator x1 d/dx1 + 2 x2 d/dx2"));

    CHECK(cli({"nf-check", data("field.json"), "--degree", "4"}).code == 0);
    r = cli({"nf-check", data("field_nonresonant.json"), "--degree", "4"});
    CHECK(r.code == 1);
    CHECK(contains(r.out, "-3/2 x1 x2 d/dx1"));

    const std::string normal = temp("normal.json");
    CHECK(cli({"normalize", data("field_nonresonant.json"), "--degree", "4", "--output", normal}).code == 0);
    CHECK(cli({"nf-check", normal, "--degree", "4"}).code == 0);
    CHECK(cli({"resonance", data("field.json"), "--bound", "1"}).code == 2);
}

TEST_CASE("cli: classification commands") {
    auto r = cli({"classify", data("graph_circle.json")});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "case a"));
    CHECK(contains(r.out, "T^2"));
    r = cli({"classify", data("graph_lens.json")});
    CHECK(contains(r.out, "L(5,2)"));
    r = cli({"marked-graph", data("graph_same_side.json")});
    CHECK(r.code == 1);
    CHECK(contains(r.out, "C_iv"));
    CHECK(cli({"classify", data("graph_same_side.json")}).code == 1);

    r = cli({"arrangement", data("arrangement_opposite.json")});
    CHECK(r.code == 1);
    CHECK(contains(r.out, "infeasible"));
    r = cli({"--json", "arrangement", data("arrangement_conflict.json")});
    CHECK(r.code == 1);
    CHECK(report(r)["certificate"] == nlohmann::json::array({0, 1}));

    r = cli({"--json", "monodromy", "decompose", data("monodromy.json")});
    CHECK(r.code == 0);
    CHECK(report(r)["torsion_orders"] == nlohmann::json::array({"2"}));
    const std::string twisted = temp("twisted.json");
    CHECK(cli({"monodromy", "retwist", data("monodromy.json"), "--output", twisted}).code == 0);
    r = cli({"--json", "monodromy", "decompose", twisted});
    CHECK(report(r)["free"][0]["value"] == nlohmann::json::array({"0", "0"}));
    CHECK(report(r)["torsion"][0]["value"] == nlohmann::json::array({"0", "1/2"}));
    CHECK(cli({"monodromy", "retwist", twisted}).code == 2);
}

TEST_CASE("cli: models") {
    auto r = cli({"--json", "limit", data("model.json"), "--w", "1,1,0"});
    CHECK(r.code == 0);
    CHECK(report(r)["divergent"] == false);
    CHECK(report(r)["zero_set"] == nlohmann::json::array({0, 1}));
    r = cli({"flow", data("model.json"), "--w", "0,0,0", "--time", "3"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "1 1 1"));
}

TEST_CASE("cli: usage and input errors exit 2") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"validate-fan"}).code == 2);
    CHECK(cli({"validate-fan", temp("missing.json")}).code == 2);
    CHECK(cli({"classify", data("quadrant_fan.json")}).code == 2);
    const std::string bad = temp("bad.json");
    std::ofstream(bad) << "{\"kind\": \"fan\",\n  oops}";
    const auto r = cli({"validate-fan", bad});
    CHECK(r.code == 2);
    CHECK(contains(r.err, "line 2"));
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("cli: json reports are byte-stable") {
    const std::vector<std::vector<std::string>> commands{
        {"--json", "resonance", data("field.json"), "--bound", "5"},
        {"--json", "arrangement", data("arrangement_conflict.json")},
        {"--json", "classify", data("graph_lens.json")},
        {"--json", "types", "--dim", "4", "--toric-degree", "2"},
        {"--json", "normalize", data("field_nonresonant.json"), "--degree", "4"},
    };
    for (const auto& c : commands) {
        const auto a = cli(c);
        const auto b = cli(c);
        CHECK(a.out == b.out);
        // Keys come out sorted.
        CHECK(report(a).dump(2) == a.out.substr(0, a.out.size() - 1));
    }
}
