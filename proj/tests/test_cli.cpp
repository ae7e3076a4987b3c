#include "cli.hpp"
#include "corpus.hpp"
#include "hhm/error.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using hhm::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "hhmackey");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    const auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << content;
    return p.string();
}

} // namespace

TEST(Cli, InfoReportsValidation) {
    const Result r = call({"info", "--spec", corpus::path("f2_s3")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("dim 6"), std::string::npos);
    EXPECT_NE(r.out.find("fully graded: pass"), std::string::npos);
    EXPECT_NE(r.out.find("symmetric form: pass"), std::string::npos);

    const Result t = call({"info", "--spec", corpus::path("f2_trivial"), "--format", "json"});
    EXPECT_EQ(t.code, 0);
    const auto j = nlohmann::json::parse(t.out);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["dim"], 1);
}

TEST(Cli, ParseErrorsExitTwo) {
    EXPECT_EQ(call({"info", "--spec", temp_file("hhm_bad.json", "{ not json")}).code, 2);
    EXPECT_EQ(call({"info", "--spec", "/nonexistent/spec.json"}).code, 2);
    EXPECT_EQ(call({"hh", "--spec", corpus::path("f2_c2"), "--format", "xml"}).code, 2);
    EXPECT_EQ(call({"verify", "--spec", corpus::path("f2_c2"), "--axioms", "vii"}).code, 2);
    EXPECT_EQ(call({"verify", "--spec", corpus::path("f2_c2"), "--subgroups", "5"}).code, 2);
    EXPECT_EQ(call({"frobnicate"}).code, 2);
}

TEST(Cli, ValidationFailureExitsOne) {
    const std::string spec = temp_file("hhm_badcocycle.json", R"({"field": {"p": 3}, "group": {"kind": "cyclic", "n": 2},
        "algebra": {"kind": "crossed_product", "cocycle": [[[1],[1]],[[1],[0]]]}})");
    EXPECT_EQ(call({"info", "--spec", spec}).code, 1);
}

TEST(Cli, BudgetExceededExitsTwo) {
    const Result r = call({"hh", "--spec", corpus::path("f2_d4"), "--degree", "4", "--memory-mb", "1"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("budget"), std::string::npos);
}

TEST(Cli, HhTables) {
    const Result r = call({"hh", "--spec", corpus::path("f7_s3"), "--degree", "2", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    const auto& rows = j["subgroups"];
    EXPECT_EQ(rows.back()["hh"], nlohmann::json::array({3, 0, 0}));

    const Result c3 = call({"hh", "--spec", corpus::path("f3_c3"), "--subgroups", "1", "--format", "json"});
    ASSERT_EQ(c3.code, 0);
    EXPECT_EQ(nlohmann::json::parse(c3.out)["subgroups"][0]["hh"], nlohmann::json::array({3, 3, 3, 3}));
}

TEST(Cli, VerifyAxiomSubset) {
    const Result r = call({"verify", "--spec", corpus::path("f2_c2xc2"), "--axioms", "vi", "--degree", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("all axioms hold"), std::string::npos);
}

TEST(Cli, VerifySubgroupSelection) {
    const Result r = call({"verify", "--spec", corpus::path("f2_s3"), "--degree", "1", "--subgroups", "2;3",
                           "--format", "json"});
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["subgroups"].size(), 2u);
    EXPECT_EQ(j["pass"], true);
    EXPECT_EQ(j["failed"], 0);
}

TEST(Cli, VerifyJsonIsDeterministic) {
    const std::vector<std::string> args = {"verify", "--spec", corpus::path("f3_s3"), "--degree", "1",
                                           "--format", "json", "--seed", "0"};
    const Result a = call(args);
    const Result b = call(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(nlohmann::json::parse(a.out)["schema"], 1);
}

TEST(Cli, InversePairCommand) {
    EXPECT_EQ(call({"lemma2", "--spec", corpus::path("f2_trivial")}).code, 0);
    EXPECT_EQ(call({"lemma2", "--spec", corpus::path("f3_s3"), "--cases", "c"}).code, 0);
    EXPECT_EQ(call({"lemma2", "--spec", corpus::path("f3_s3"), "--cases", "d"}).code, 2);
}

TEST(Cli, SubgroupSelectionSyntax) {
    const auto g = hhm::make_group(hhm::FiniteGroup::symmetric(3));
    EXPECT_EQ(hhm::cli::parse_subgroups(g, "all").size(), 6u);
    const auto sel = hhm::cli::parse_subgroups(g, "1,2; 3 ;");
    ASSERT_EQ(sel.size(), 3u);
    EXPECT_EQ(sel[0].order(), 1u);  // the empty generator list
    EXPECT_EQ(sel[1].order(), 3u);
    EXPECT_EQ(sel[2].order(), 6u);
    EXPECT_THROW(hhm::cli::parse_subgroups(g, "x"), hhm::ParseError);
}
