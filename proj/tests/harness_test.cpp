#include <gtest/gtest.h>

#include "lamsec/harness.hpp"

namespace lamsec {
namespace {

using namespace harness;

const std::filesystem::path kCorpus = LAMSEC_CORPUS_DIR;

TEST(Header, Parses) {
  const Program p = parse_corpus_program(
      "; name: demo\n; typing: error app: A' ≲ A\n; input: closed\n; fuel: 10\n(true @ low)\n", "fallback");
  EXPECT_EQ(p.name, "demo");
  EXPECT_FALSE(p.typing_ok);
  EXPECT_EQ(p.error_rule, "app");
  EXPECT_EQ(p.error_premise, "A' ≲ A");
  EXPECT_EQ(p.input, InputSpec::closed);
  EXPECT_EQ(p.fuel, 10);
}

TEST(Header, DefaultsAndErrors) {
  const Program p = parse_corpus_program("(true @ low)\n", "fallback");
  EXPECT_EQ(p.name, "fallback");
  EXPECT_TRUE(p.typing_ok);
  EXPECT_THROW(parse_corpus_program("; input: maybe\n(true @ low)", "f"), CorpusError);
  EXPECT_THROW(parse_corpus_program("; expect: sideways\n(true @ low)", "f"), CorpusError);
}

TEST(Corpus, LoadsAtLeastTwenty) {
  const auto corpus = load_corpus(kCorpus);
  EXPECT_GE(corpus.size(), 20u);
  for (std::size_t i = 1; i < corpus.size(); ++i) EXPECT_NE(corpus[i - 1].name, corpus[i].name);
}

TEST(Checks, DetectWrongExpectation) {
  Program p = parse_corpus_program("; input: closed\n; expect: value false_low\n(true @ low)\n", "wrong");
  const auto reports = check_expect(prepare(p), 1000);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].status, Status::fail);
}

TEST(Checks, DetectWrongTypingClaim) {
  Program p = parse_corpus_program("; typing: error ann: A' ≲ A\n; input: closed\n(true @ low)\n", "wrong");
  const auto reports = check_typing(prepare(p));
  ASSERT_FALSE(reports.empty());
  EXPECT_EQ(reports[0].status, Status::fail);
}

TEST(Checks, NoninterferenceOnHighInput) {
  Program p = parse_corpus_program("(if x (true @ low) (false @ low) ^p)\n", "leak");
  const auto reports = check_noninterference(prepare(p), 1000);
  ASSERT_EQ(reports.size(), 1u);
  // The result is high, so differing values are permitted.
  EXPECT_EQ(reports[0].status, Status::pass);
}

TEST(Checks, TimeoutIsNotFailure) {
  Program p = parse_corpus_program(
      "; input: closed\n; fuel: 50\n"
      "(let r (ref low (lam [low] u : (Unit @ low) . (unit @ low) @ low) ^a)"
      " (let w (:= r (lam [low] u : (Unit @ low) . (app (! r) u ^b) @ low) ^c)"
      " (app (! r) (unit @ low) ^d)))\n",
      "loop");
  const auto reports = check_agreement(prepare(p), 100000);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_NE(reports[0].status, Status::fail);
}

TEST(Driver, FullCorpusPassesWithCoverage) {
  const Summary s = run_corpus(load_corpus(kCorpus));
  for (const auto& r : s.reports)
    EXPECT_NE(r.status, Status::fail) << r.check << " " << r.program << " " << r.input << ": " << r.detail;
  EXPECT_TRUE(s.coverage.missing().empty());
  EXPECT_TRUE(s.ok());
}

TEST(Driver, FilterByCheckName) {
  Options o;
  o.filter = "typing";
  const Summary s = run_corpus(load_corpus(kCorpus), o);
  ASSERT_FALSE(s.reports.empty());
  for (const auto& r : s.reports) EXPECT_EQ(r.check, "typing");
}

TEST(Driver, Json) {
  std::vector<Report> rs{{"typing", "demo", "closed", Status::pass, ""}};
  const auto j = to_json(rs);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["status"], "pass");
  EXPECT_EQ(j[0]["program"], "demo");
}

}  // namespace
}  // namespace lamsec
