#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "paramtc/cli.hpp"
#include "paramtc/io.hpp"

using namespace paramtc;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::execute(args, out, err);
    return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

const char* kEqualPair =
    R"({"x": {"z": [[1,0],[0,0],[0,0]], "w": [[0.6,0],[0,0],[0,0]], "s": 0.8},
        "y": {"z": [[1,0],[0,0],[0,0]], "w": [[0.6,0],[0,0],[0,0]], "s": 0.8}})";

}  // namespace

TEST(Cli, SecatFloorExample) {
    auto r = run({"bounds", "--family", "k-eta", "--n", "5", "--k", "2", "--quantity", "secat"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(first_line(r.out).rfind("secat = 2 (exact) [", 0), 0u) << r.out;
    EXPECT_NE(r.out.find("SEC-DIM"), std::string::npos);
}

TEST(Cli, EtaPlusEpsExample) {
    auto r = run({"bounds", "--family", "eta-plus-eps", "--n", "2", "--quantity", "tc"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(first_line(r.out).rfind("TC = 4 (exact) [", 0), 0u) << r.out;
    EXPECT_NE(r.out.find("R3 (lower)"), std::string::npos);
    EXPECT_NE(r.out.find("R6 (upper)"), std::string::npos);
}

TEST(Cli, OddCaseCarriesFlag) {
    auto r = run({"bounds", "--family", "eta-plus-eps", "--n", "3", "--quantity", "tc"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("flag: stronger than the published range"), std::string::npos);
}

TEST(Cli, JsonRoundTrip) {
    for (const char* fam : {"eta", "k-eta", "eta-plus-eps"})
        for (const char* n : {"1", "2", "5"}) {
            auto r = run({"bounds", "--family", fam, "--n", n, "--k", "2", "--format", "json"});
            ASSERT_EQ(r.code, 0) << r.err;
            const auto doc = Json::parse(r.out);
            ASSERT_TRUE(doc.is_array());
            const auto xi = cli::family_bundle(fam, std::stoi(n), 2);
            const auto expected = cli::reports_for(xi, "all");
            ASSERT_EQ(doc.size(), expected.size());
            for (std::size_t i = 0; i < doc.size(); ++i) {
                const auto back = report_from_json(doc[i]);
                EXPECT_EQ(back, expected[i]);
                EXPECT_EQ(to_json(back).dump(), doc[i].dump());
            }
        }
}

TEST(Cli, JsonKeyOrderIsStable) {
    auto r = run({"bounds", "--family", "eta", "--n", "2", "--quantity", "tc", "--format", "json"});
    const auto doc = Json::parse(r.out);
    std::vector<std::string> keys;
    for (const auto& [k, v] : doc.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"quantity", "lower", "upper", "exact", "sharper_than_published",
                                              "provenance", "notes"}));
}

TEST(Cli, InfiniteUpperIsNull) {
    TCReport r;
    r.quantity = Quantity::SecatSphereBundle;
    r.lower = 3;
    const auto j = to_json(r);
    EXPECT_TRUE(j.at("upper").is_null());
    EXPECT_EQ(report_from_json(j), r);
    auto bad = j;
    bad["exact"] = true;
    EXPECT_THROW(report_from_json(bad), FormatError);
    bad = j;
    bad["extra"] = 1;
    EXPECT_THROW(report_from_json(bad), FormatError);
}

TEST(Cli, DescriptorFile) {
    const std::string doc =
        R"({"base": {"family": "CP", "n": 4},
            "construction": {"sum": [{"canonical": {}}, {"trivial": 1}]},
            "flags": {"complex_structure": false, "independent_sections": 0}})";
    auto inline_run = run({"bounds", "--descriptor", doc, "--quantity", "tc"});
    EXPECT_EQ(inline_run.code, 0) << inline_run.err;
    EXPECT_EQ(first_line(inline_run.out).rfind("TC = 6 (exact)", 0), 0u);

    const std::string path = ::testing::TempDir() + "/descriptor.json";
    std::ofstream(path) << doc;
    auto file_run = run({"bounds", "--descriptor", path, "--quantity", "tc"});
    EXPECT_EQ(file_run.out, inline_run.out);

    const auto xi = bundle_from_json(Json::parse(doc));
    const auto base = BaseSpace::projective_space(4);
    EXPECT_EQ(xi, whitney_sum(BundleDescriptor::canonical_line(base), BundleDescriptor::trivial_line(base)));
}

TEST(Cli, DescriptorProductBase) {
    auto r = run({"bounds", "--descriptor",
                  R"({"base": {"family": "CP-product", "dims": [1, 2]},
                      "construction": {"sum": [{"canonical": {"factor": 0}}, {"canonical": {"factor": 1}}]}})",
                  "--quantity", "secat"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(first_line(r.out).rfind("secat = 1 (exact)", 0), 0u) << r.out;
}

TEST(Cli, DescriptorErrors) {
    const std::vector<std::string> bad = {
        R"({"base": {"family": "CP", "n": 2}, "construction": {"canonical": {}}, "extra": 1})",
        R"({"base": {"family": "RP", "n": 2}, "construction": {"canonical": {}}})",
        R"({"base": {"family": "CP", "n": 0}, "construction": {"canonical": {}}})",
        R"({"base": {"family": "CP", "n": 2}, "construction": {"twisted": 1}})",
        R"({"base": {"family": "CP", "n": 2}, "construction": {"trivial": 0}})",
        R"({"base": {"family": "CP", "n": 2}, "construction": {"canonical": {"factor": 3}}})",
        R"({"base": {"family": "CP", "n": 2}, "construction": {"canonical": {}}, "flags": {"independent_sections": 1}})",
        R"({"base": {"family": "CP", "n": 2}})",
        R"({"base": )",
        "/nonexistent/descriptor.json",
    };
    for (const auto& d : bad) {
        auto r = run({"bounds", "--descriptor", d});
        EXPECT_EQ(r.code, 1) << d;
        EXPECT_FALSE(r.err.empty()) << d;
    }
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({"bounds", "--family", "zeta"}).code, 1);
    EXPECT_EQ(run({"bounds", "--family", "eta", "--n", "0"}).code, 1);
    EXPECT_EQ(run({"bounds", "--family", "k-eta", "--k", "0"}).code, 1);
    EXPECT_EQ(run({"bounds"}).code, 1);
    EXPECT_EQ(run({"bounds", "--family", "eta", "--format", "xml"}).code, 1);
    EXPECT_EQ(run({"table", "--family", "eta", "--n-max", "0"}).code, 1);
    EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 1);
    EXPECT_EQ(run({"plan", "--pair", kEqualPair, "--tol-anti", "2"}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, PlanEqualEndpoints) {
    auto r = run({"plan", "--family", "eta-plus-eps", "--n", "2", "--pair", kEqualPair});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(first_line(r.out), "piece = 0 (constant path)");
    EXPECT_NE(r.out.find("checks passed"), std::string::npos);
}

TEST(Cli, PlanValidatesInput) {
    EXPECT_EQ(run({"plan", "--n", "3", "--pair", kEqualPair}).code, 1);
    const char* off_line = R"({"x": {"z": [[1,0],[0,0]], "w": [[0,0],[0.6,0]], "s": 0.8},
                               "y": {"z": [[1,0],[0,0]], "w": [[0.6,0],[0,0]], "s": 0.8}})";
    EXPECT_EQ(run({"plan", "--pair", off_line}).code, 1);
    const char* other_fiber = R"({"x": {"z": [[1,0],[0,0]], "w": [[0,0],[0,0]], "s": 1},
                                  "y": {"z": [[0,0],[1,0]], "w": [[0,0],[0,0]], "s": 1}})";
    auto r = run({"plan", "--pair", other_fiber});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("different fibers"), std::string::npos);
}

TEST(Cli, PlanJsonAndHopf) {
    const char* antipodal = R"({"x": {"z": [[0,0],[1,0]], "w": [[0,0],[0,0]], "s": 1},
                                "y": {"z": [[0,0],[0,1]], "w": [[0,0],[0,0]], "s": -1}})";
    auto r = run({"plan", "--pair", antipodal, "--format", "json", "--samples", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j.at("piece"), 3);
    EXPECT_EQ(j.at("samples").size(), 5u);
    EXPECT_TRUE(j.at("checks_passed").get<bool>());

    auto h = run({"plan", "--family", "eta", "--pair", R"({"x": {"z": [[1,0],[0,0]]}, "y": {"z": [[-1,0],[0,0]]}})"});
    EXPECT_EQ(h.code, 0) << h.err;
    EXPECT_EQ(first_line(h.out), "piece = 1");
}

TEST(Cli, TableIsDeterministic) {
    auto a = run({"table", "--family", "k-eta", "--n-max", "8"});
    auto b = run({"table", "--family", "k-eta", "--n-max", "8"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(first_line(a.out), "n\tk\tsecat_lower\tsecat_upper\texact\trules");
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 65);
    EXPECT_NE(a.out.find("\n5\t2\t2\t2\tyes\t"), std::string::npos);
}

TEST(Cli, VerifySeedPrecedence) {
    ::unsetenv("PARAMTC_SEED");
    auto def = run({"verify", "--suite", "partition", "--n", "1", "--trials", "20"});
    EXPECT_EQ(def.code, 0);
    EXPECT_EQ(first_line(def.out), "seed = " + std::to_string(kDefaultSeed));

    ::setenv("PARAMTC_SEED", "99", 1);
    auto env = run({"verify", "--suite", "partition", "--n", "1", "--trials", "20"});
    EXPECT_EQ(first_line(env.out), "seed = 99");
    auto flag = run({"verify", "--suite", "partition", "--n", "1", "--trials", "20", "--seed", "7"});
    EXPECT_EQ(first_line(flag.out), "seed = 7");
    ::setenv("PARAMTC_SEED", "banana", 1);
    EXPECT_EQ(run({"verify", "--suite", "tables"}).code, 1);
    ::unsetenv("PARAMTC_SEED");
}

TEST(Cli, VerifySuitesPass) {
    auto r = run({"verify", "--suite", "all", "--trials", "300"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, BinaryExitCodes) {
    const std::string bin = PARAMTC_CLI_PATH;
    auto status = [&](const std::string& args) {
        const int s = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    EXPECT_EQ(status("bounds --family eta --n 2"), 0);
    EXPECT_EQ(status("bounds --family nope"), 1);
    EXPECT_EQ(status("verify --suite tables"), 0);
}
