#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "frobtoric/catalog.hpp"
#include "frobtoric/cli.hpp"
#include "frobtoric/report.hpp"

using namespace frobtoric;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args, const cli::Hooks& hooks = {}) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err, hooks);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(FROBTORIC_TEST_DATA) + "/" + name; }

}  // namespace

TEST(Cli, PushJsonBytes) {
    const Result r = run({"push", "--variety", "P1", "--p", "2", "--json"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"q\":2,\"summands\":[{\"class\":[0],\"mult\":1},{\"class\":[-1],\"mult\":1}],\"det\":[-1],\"certified\":true}\n");
}

TEST(Cli, PushFromFile) {
    const Result r = run({"push", "--fan", data("p2.json"), "--p", "3", "--divisor", "K", "--json"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"certified\":true"), std::string::npos);
}

TEST(Cli, MalformedFansExitOne) {
    for (const char* f : {"nonprimitive.json", "not_smooth.json", "bad_wall.json", "not_complete.json", "garbage.json",
                          "missing_keys.json"}) {
        const Result r = run({"fan", "check", "--fan", data(f)});
        EXPECT_EQ(r.code, 1) << f;
        EXPECT_FALSE(r.err.empty()) << f;
    }
    EXPECT_EQ(run({"fan", "check", "--fan", data("does_not_exist.json")}).code, 1);
    EXPECT_EQ(run({"fan", "check", "--fan", data("p2.json")}).code, 0);
}

TEST(Cli, InputErrorsExitOne) {
    EXPECT_EQ(run({"push", "--variety", "P2", "--p", "4"}).code, 1);
    EXPECT_EQ(run({"push", "--variety", "P2", "--p", "2", "--divisor", "1,2"}).code, 1);
    EXPECT_EQ(run({"push", "--variety", "nowhere", "--p", "2"}).code, 1);
    EXPECT_EQ(run({"catalog", "run", "--p", "5", "--n", "2"}).code, 1);
    EXPECT_EQ(run({"tilting", "--fan", data("p2_relabelled.json"), "--p", "2"}).code, 1);
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"push", "--bogus"}).code, 1);
}

TEST(Cli, CorruptedDecompositionExitsTwo) {
    cli::Hooks hooks;
    hooks.after_decompose = [](Decomposition& d) {
        // move one summand to a different class; the rank is preserved
        auto it = d.entries.begin();
        DivisorClass moved = it->first;
        moved.coords[0] -= 5;
        if (--it->second == 0) d.entries.erase(it);
        add_to(d.entries, moved, 1);
    };
    const Result r = run({"push", "--variety", "P2", "--p", "3"}, hooks);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("OracleMismatch"), std::string::npos);
}

TEST(Cli, Subcommands) {
    EXPECT_EQ(run({"cohom", "--variety", "P2", "--divisor", "-3,0,0", "--json"}).out, "{\"dims\":[0,0,1]}\n");
    EXPECT_EQ(run({"ext", "--variety", "P1", "--p", "2", "--json"}).out, "{\"dims\":[4,0],\"vanishing_above_zero\":true}\n");
    const Result t = run({"tilting", "--variety", "P2", "--p", "2", "--json"});
    EXPECT_EQ(t.out, "{\"dims\":[19,0,0],\"strong_exceptional\":true,\"contains_collection\":false,\"quiver\":[[0,3],[0,0]]}\n");
    EXPECT_EQ(run({"tilting", "--variety", "P2", "--p", "3", "--collection", "0;-1;-2"}).code, 0);
    EXPECT_EQ(run({"blowup-check", "--p", "3", "--json"}).code, 0);
    EXPECT_EQ(run({"jets", "--p", "2", "--rank", "--json"}).code, 0);
    EXPECT_EQ(run({"pbundle-check", "--base", "P1", "--a", "1,0", "--p", "2"}).code, 0);
    EXPECT_EQ(run({"pbundle-check", "--base", "P1", "--a", "0,0", "--a", "-1,0", "--p", "3", "--json"}).code, 0);
    EXPECT_EQ(run({"cech", "incidence", "--a", "-3", "--b", "0", "--p", "3", "--json"}).out,
              "{\"a\":-3,\"b\":0,\"p\":3,\"dims\":[0,0,1,0]}\n");
    EXPECT_EQ(run({"cech", "validate"}).code, 0);
    EXPECT_EQ(run({"catalog", "list", "--json"}).code, 0);
}

TEST(Cli, CatalogRunDeterministic) {
    const Result a = run({"catalog", "run", "--p", "2", "--json"});
    const Result b = run({"catalog", "run", "--p", "2", "--json"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto j = report::Json::parse(a.out);
    EXPECT_EQ(j["entries"].size(), 12u);
}

TEST(Cli, ShippedCatalogMatchesConstructors) {
    namespace fs = std::filesystem;
    std::map<std::string, Fan> shipped;
    for (const auto& entry : fs::directory_iterator(FROBTORIC_CATALOG_DIR)) {
        std::ifstream in(entry.path());
        const auto j = report::Json::parse(in);
        const Fan f = report::fan_from_json(j);  // re-validated on load
        shipped.emplace(f.name(), f);
    }
    const auto entries = builtin_catalog();
    EXPECT_EQ(shipped.size(), entries.size());
    for (const auto& e : entries) {
        ASSERT_TRUE(shipped.count(e.name)) << e.name;
        EXPECT_EQ(shipped.at(e.name).rays(), e.fan.rays()) << e.name;
        EXPECT_EQ(shipped.at(e.name).max_cones(), e.fan.max_cones()) << e.name;
    }
}
