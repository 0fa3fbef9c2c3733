#include "helpers.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace superprolong;
using namespace superprolong::testing;
using Q = Rational;

namespace {

int error_line(const std::string& text) {
    try {
        parse_spec(text);
    } catch (const SpecError& e) {
        return e.line;
    }
    return -1;
}

}  // namespace

TEST(ParseSpec, ReportsLineOfBadValue) {
    EXPECT_EQ(error_line("{\n  \"schema\": 1,\n  \"series\": \"m\",\n  \"n\": \"four\"\n}"), 4);
    EXPECT_EQ(error_line("{\n  \"schema\": 1,\n  \"series\": \"m\",\n  \"colour\": 3\n}"), 4);
    EXPECT_EQ(error_line("{\n  \"schema\": 2,\n  \"series\": \"m\"\n}"), 2);
}

TEST(ParseSpec, ReportsLineOfSyntaxError) {
    EXPECT_EQ(error_line("{\n  \"schema\": 1,\n  \"series\": \"m\" \"n\": 2\n}"), 3);
}

TEST(ParseSpec, MissingSchemaOrKind) {
    EXPECT_EQ(error_line("{\"series\": \"m\"}"), 1);
    EXPECT_EQ(error_line("{\"schema\": 1}"), 1);
    EXPECT_GT(error_line("{\"schema\": 1, \"kind\": \"nonsense\"}"), 0);
}

TEST(ParseSpec, ConsistencyChecks) {
    EXPECT_THROW(inline_spec(R"x("series": "m", "a": "1/2")x"), SpecError);
    EXPECT_THROW(inline_spec(R"x("series": "b_ab", "lambda": "1", "a": "1")x"), SpecError);
    EXPECT_THROW(inline_spec(R"x("kind": "prolong")x"), SpecError);
    EXPECT_THROW(inline_spec(R"x("kind": "prolong", "g0": "gl(2)", "a": "symbolic")x"), SpecError);
    EXPECT_THROW(inline_spec(R"x("series": "b_ab", "a": "1/0")x"), SpecError);
    EXPECT_THROW(inline_spec(R"x("series": "nope")x"), SpecError);
}

TEST(ParseSpec, Fields) {
    auto sp = inline_spec(R"x("name": "b", "series": "b_ab", "n": 2, "a": "2/3", "b": "-4/3", "grading": "r=2", "seed": 9)x");
    EXPECT_EQ(sp.kind, "series");
    EXPECT_EQ(sp.label, "b");
    EXPECT_EQ(*sp.a, "2/3");
    EXPECT_EQ(std::get<std::string>(sp.grading), "r=2");
    EXPECT_EQ(sp.seed, 9u);
    EXPECT_FALSE(sp.symbolic());
    EXPECT_TRUE(inline_spec(R"x("series": "b_ab", "n": 2, "a": "symbolic", "b": "1")x").symbolic());
    auto w = inline_spec(R"x("series": "m", "n": 1, "grading": [1, 0, 1])x");
    EXPECT_EQ(std::get<std::vector<int>>(w.grading), (std::vector<int>{1, 0, 1}));
}

TEST(Driver, DimsTable) {
    auto sp = load_spec(SPECS_DIR "/vect11.json");
    auto t = Driver<Q>(sp).dims(2);
    EXPECT_EQ(t.lo, -1);
    EXPECT_EQ(dims_tsv(t), "-1: 1|1\n0: 2|2\n1: 2|2\n2: 2|2\n");
    auto j = dims_json(t);
    EXPECT_EQ(j[0]["degree"], -1);
    EXPECT_EQ(j[0]["sdim"], "1|1");
}

TEST(Driver, WrongWeightLengthIsInputError) {
    auto sp = inline_spec(R"x("series": "m", "n": 1, "grading": [1, 1])x");
    EXPECT_THROW(Driver<Q>(sp).dims(1), std::invalid_argument);
}

TEST(Driver, UnknownTargetIsInputError) {
    auto sp = load_spec(SPECS_DIR "/vect11.json");
    EXPECT_THROW(Driver<Q>(sp).check("frobnicate", 2), SpecError);
    EXPECT_THROW(Driver<Q>(sp).check("cocycle:nope", 2), SpecError);
}

TEST(Driver, ReportsAreDeterministic) {
    auto sp = load_spec(SPECS_DIR "/b_third.json");
    Driver<Q> d(sp);
    std::vector<std::string> targets{"jacobi", "membership"};
    auto a = report_json("check", sp, 2, run_checks(d, targets, 2), false).dump(2);
    auto b = report_json("check", sp, 2, run_checks(d, targets, 2), false).dump(2);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.find("seconds"), std::string::npos);
    auto j = ojson::parse(a);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["results"][0]["target"], "jacobi");
    EXPECT_EQ(j["results"][1]["target"], "membership");
    EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Driver, TimingsOnRequest) {
    auto sp = load_spec(SPECS_DIR "/vect11.json");
    auto rs = run_checks(Driver<Q>(sp), {"jacobi"}, 1);
    auto j = report_json("check", sp, 1, rs, true);
    EXPECT_TRUE(j["results"][0].contains("seconds"));
}

TEST(Driver, ThreadCapFromEnvironment) {
    setenv("SUPERPROLONG_THREADS", "3", 1);
    EXPECT_EQ(thread_cap(), 3);
    setenv("SUPERPROLONG_THREADS", "0", 1);
    EXPECT_GE(thread_cap(), 1);
    unsetenv("SUPERPROLONG_THREADS");
}

TEST(Driver, SymbolicParameterRunsOverRationalFunctions) {
    auto sp = load_spec(SPECS_DIR "/b_symbolic.json");
    ASSERT_TRUE(sp.symbolic());
    auto r = Driver<RatFunc>(sp).check("jacobi", 2);
    EXPECT_TRUE(r.pass) << r.witness;
}

TEST(Driver, FailingTargetCarriesWitness) {
    auto sp = load_spec(SPECS_DIR "/spe4.json");
    auto r = Driver<Q>(sp).check("cocycle:spe5-analog", 3);
    EXPECT_FALSE(r.pass);
    EXPECT_FALSE(r.witness.empty());
}

TEST(Driver, ProlongReport) {
    auto sp = load_spec(SPECS_DIR "/o3.json");
    auto [j, ok] = prolong_report(Driver<Q>(sp), 2, false);
    EXPECT_TRUE(ok);
    EXPECT_EQ(j["terminates_at"], 1);
    EXPECT_EQ(j["rank1"], "NOT_FOUND");
}
