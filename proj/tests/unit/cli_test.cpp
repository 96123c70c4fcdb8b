#include "doctest.h"

#include "symext/constructions.hpp"
#include "symext/runner.hpp"

using namespace symext;
using namespace symext::cli;

namespace {

std::vector<std::string> outcomes(const Json& report) {
  std::vector<std::string> out;
  for (const Json& s : report["statements"]) out.push_back(s["outcome"].get<std::string>());
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("empty document") {
  const RunOutput out = run_document("", {});
  CHECK(out.exit_code == kAllPass);
  CHECK(out.report["statements"].empty());
  CHECK(out.report["summary"]["statements"] == 0);
  CHECK_FALSE(out.report.contains("error"));
}

TEST_CASE("hereditary symmetry document") {
  const std::string text =
      "system C = cohen(indices=3, bits=1, support=1);\n"
      "name A = bullet{ gen(0), gen(1), gen(2) }; assert hs(A);\n"
      "name f = bullet{ pair(check 0, gen(0)), pair(check 1, gen(1)), pair(check 2, gen(2)) }; assert !hs(f);\n";
  const RunOutput out = run_document(text, {});
  CHECK(out.exit_code == kAllPass);
  CHECK(outcomes(out.report) == std::vector<std::string>{"pass", "pass", "pass", "pass", "pass"});

  // The same names built directly against the factory.
  auto C = CohenSystem::make({.indices = 3, .bits = 1, .support = 1});
  NameStore& s = C->names();
  const Name A = s.bullet_set({C->gen(0), C->gen(1), C->gen(2)});
  std::vector<Name> pairs;
  for (unsigned i = 0; i < 3; ++i) pairs.push_back(s.bullet_pair(s.check(HfSet::nat(i)), C->gen(i)));
  const Name f = s.bullet_set(pairs);
  CHECK(out.report["statements"][2]["details"]["value"] == in_hs(*C, A));
  CHECK(out.report["statements"][4]["details"]["value"] == in_hs(*C, f));
  CHECK(out.report["statements"][1]["details"]["name"] == s.render(A));
}

TEST_CASE("normality failure carries the conjugation witness") {
  const RunOutput out = run_document("system D = cohen(indices=3, bits=1, support=1, base=[{0}]);\nassert normal;\n", {});
  CHECK(out.exit_code == kAssertionFailed);
  const Json& d = out.report["statements"][1]["details"];
  CHECK(out.report["statements"][1]["outcome"] == "fail");
  CHECK(d["normal"] == false);
  CHECK(d["witness"]["base"] == "fix({0})");
  const std::string conjugate = d["witness"]["conjugate"]["name"].get<std::string>();
  CHECK((conjugate == "fix({1})" || conjugate == "fix({2})"));

  auto D = CohenSystem::make({.indices = 3, .bits = 1, .support = 1, .base_sets = std::vector<std::vector<unsigned>>{{0}}});
  const NormalityResult r = is_normal(*D);
  REQUIRE(r.witness);
  const unsigned moved = D->index_permutation(r.witness->pi)[0];
  CHECK(conjugate == "fix({" + std::to_string(moved) + "})");
}

TEST_CASE("exit codes") {
  const RunOutput parse = run_document("system C = cohen();\nassret hs(gen(0));", {});
  CHECK(parse.exit_code == kDocumentError);
  CHECK(parse.report["error"]["line"] == 2);
  CHECK(parse.report["error"]["column"] == 1);

  const RunOutput config = run_document("system C = cohen(indices=3, support=3);\nsystem D = cohen();\n", {});
  CHECK(config.exit_code == kDocumentError);
  CHECK(outcomes(config.report) == std::vector<std::string>{"error", "skipped"});

  RunConfig small;
  small.limits.max_poset = 5;
  const RunOutput capped = run_document("system C = cohen();\nassert hs(gen(0));\nsystem T = trivial_full(poset={a<1});\nassert normal;\n", small);
  CHECK(capped.exit_code == kInconclusive);
  CHECK(outcomes(capped.report) == std::vector<std::string>{"inconclusive", "inconclusive", "pass", "pass"});
  CHECK(capped.report["statements"][0]["details"]["size"] == 7);
  CHECK(capped.report["statements"][0]["details"]["cap"] == 5);

  const RunOutput mixed = run_document("system C = cohen();\nassert !hs(gen(0));\nsystem B = cohen(indices=6, bits=3, support=3);\n", {});
  CHECK(mixed.exit_code == kAssertionFailed);
}

TEST_CASE("reports are deterministic across worker counts") {
  const std::string text =
      "system C = cohen(indices=2, bits=1, support=1);\n"
      "suite symmetry_lemma; suite oracle_equivalence; suite equivariance; suite restriction;\n"
      "system W = wreath(); suite equivariance; query support(bullet{a(0)}, {});\n";
  RunConfig one, four;
  four.jobs = 4;
  const RunOutput a = run_document(text, one);
  const RunOutput b = run_document(text, four);
  CHECK(a.exit_code == kAllPass);
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.report.dump() == run_document(text, one).report.dump());
  CHECK_FALSE(a.report["statements"][0].contains("millis"));
}

TEST_CASE("force") {
  Session session({});
  session.run(dsl::parse_spec("system C = cohen();\nname x = gen(0);\nname A = bullet{gen(0), gen(1), gen(2)};\n"));
  CHECK(session.force("top", "x in A")["forces"] == true);
  CHECK(session.force("{(0,0)=1}", "check 0 in x")["forces"] == true);
  CHECK(session.force("top", "check 0 in x")["forces"] == false);
  CHECK_THROWS_AS(session.force("nowhere", "x in A"), std::invalid_argument);
  CHECK_THROWS_AS(session.force("top", "x in"), dsl::ParseError);
}

TEST_CASE("human rendering") {
  const RunOutput out = run_document("system C = cohen();\nassert hs(gen(0));\n", {});
  const std::string text = render_human(out.report);
  CHECK(text.find("assert hs(gen(0));") != std::string::npos);
  CHECK(text.find("2 statements: 2 pass") != std::string::npos);
}

}  // TEST_SUITE
