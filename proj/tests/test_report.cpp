#include <gtest/gtest.h>

#include "symk/checks.hpp"

using namespace symk;

TEST(Report, JsonRoundTrip) {
  Report r = cmd_tame("GF(5)(t)", "{t,t-1}", "(t)");
  r.timing["ms"] = 12.5;
  Json j = r.to_json();
  Report back = Report::from_json(j);
  EXPECT_EQ(back.to_json(), j);
  EXPECT_EQ(back.hash(), r.hash());
  EXPECT_EQ(j["schema_version"], 1);
}

TEST(Report, TimingIsNotHashed) {
  Report a = cmd_values("GF(5)", "Gm", 2), b = a;
  b.timing["ms"] = 99.0;
  EXPECT_EQ(a.hash(), b.hash());
  b.results["extra"] = 1;
  EXPECT_NE(a.hash(), b.hash());
}

TEST(Report, TamperedReportRejected) {
  Json j = cmd_tame("GF(5)(t)", "{t,t-1}", "(t)").to_json();
  j["results"]["residue"] = "3 in GF(5)";
  EXPECT_THROW(Report::from_json(j), Error);
}

TEST(Report, TameExamples) {
  EXPECT_EQ(cmd_tame("GF(5)(t)", "{t,t-1}", "(t)").results["residue"], "4 in GF(5)");
  EXPECT_EQ(cmd_tame("GF(5)(t)", "{t+2,t+3}", "(t)").results["residue"], "0 (trivial)");
  try {
    cmd_tame("GF(5)(t)", "{t,t-1", "(t)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
}

TEST(Report, ProblemSchema) {
  Problem p = parse_problem_text(R"J({"base":"GF(5)","functors":["Gm","Gm"],"variant":"Ktilde",
                                     "budget":{"D":2,"H":4,"samples":7,"seed":9}})J");
  EXPECT_EQ(p.base->order(), 5u);
  EXPECT_EQ(p.variant, Variant::Ktilde);
  EXPECT_EQ(p.budget.samples, 7);
  EXPECT_EQ(p.budget.seed, 9u);
  EXPECT_EQ(problem_json(parse_problem(problem_json(p))), problem_json(p));
  auto kind = [](const std::string& s) {
    try {
      parse_problem_text(s);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Internal;
  };
  EXPECT_EQ(kind(R"J({"base":"GF(5)","functors":["Gm"],"extra":1})J"), ErrorKind::SchemaError);
  EXPECT_EQ(kind(R"J({"base":"GF(5)","functors":["Gm"],"budget":{"depth":1}})J"), ErrorKind::SchemaError);
  EXPECT_EQ(kind(R"J({"base":"GF(5)","functors":"Gm"})J"), ErrorKind::SchemaError);
  EXPECT_EQ(kind(R"J({"schema_version":2,"base":"GF(5)","functors":["Gm"]})J"), ErrorKind::SchemaError);
  EXPECT_EQ(kind(R"J({"base":"GF(5)","functors":["Gm"],"variant":"L"})J"), ErrorKind::SchemaError);
  EXPECT_EQ(kind(R"J({"base":"GF(5)",)J"), ErrorKind::ParseError);
}

TEST(Report, KGroupReport) {
  Problem p = parse_problem_text(R"J({"base":"GF(5)","functors":["Gm"],"variant":"K",
                                     "budget":{"D":2,"samples":10,"seed":1}})J");
  Report r = cmd_kgroup(p, 1);
  EXPECT_EQ(r.results["group"]["text"], "Z/4");
  EXPECT_EQ(r.results["trace"].size(), 4u);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(cmd_kgroup(p, 3).canonical(), r.canonical());
}

TEST(Report, RewriteCertificate) {
  Report r = cmd_rewrite("semilocal", "GF(7)(t)", "{t,t-1}", "(t),(t-1)");
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.results["steps"], 1);
  Report g = cmd_rewrite("general-position", "GF(7)(t)", "{t,t}", "");
  EXPECT_EQ(g.results["steps"], 0);
  EXPECT_EQ(g.results["output"], g.results["input"]);
}

TEST(Report, ReciprocityNeedsTrials) { EXPECT_THROW(cmd_reciprocity("P1/GF(7)", 0, 1, 6, 1), Error); }

TEST(Report, SuiteOrder) {
  auto& s = law_suite();
  ASSERT_EQ(s.size(), 11u);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s[i].id, static_cast<int>(i + 1));
}
