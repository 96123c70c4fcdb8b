#include "doctest.h"

#include <set>

#include "symext/constructions.hpp"
#include "symext/suites.hpp"

using namespace symext;

namespace {

/// Counts partial functions cols × width → 2 touching at most s columns by
/// direct enumeration of all assignments.
std::size_t count_partial_functions(unsigned cols, unsigned width, unsigned s) {
  const unsigned points = cols * width;
  std::size_t total = 1;
  for (unsigned i = 0; i < points; ++i) total *= 3;
  std::size_t count = 0;
  for (std::size_t code = 0; code < total; ++code) {
    std::set<unsigned> touched;
    std::size_t c = code;
    for (unsigned x = 0; x < points; ++x, c /= 3)
      if (c % 3) touched.insert(x / width);
    if (touched.size() <= s) ++count;
  }
  return count;
}

}  // namespace

TEST_SUITE("constructions") {

TEST_CASE("Cohen system sizes") {
  auto C = CohenSystem::make({.indices = 3, .bits = 1, .support = 1});
  CHECK(C->poset().size() == 7);
  CHECK(C->poset().size() == count_partial_functions(3, 1, 1));
  CHECK(C->group().order() == 6);
  REQUIRE(C->filter().base().size() == 4);
  CHECK(C->filter().label(0) == "fix({})");
  CHECK(C->filter().base()[0] == C->group());
  for (unsigned i = 0; i < 3; ++i) CHECK(C->filter().base()[i + 1] == C->fix(std::vector{i}));
  CHECK(C->poset().label(C->poset().top()) == "{}");

  auto D = CohenSystem::make({.indices = 2, .bits = 2, .support = 1});
  CHECK(D->poset().size() == count_partial_functions(2, 2, 1));
  CHECK(D->poset().size() == 17);
  CHECK(CohenSystem::make({.indices = 3, .bits = 2, .support = 2})->poset().size() == count_partial_functions(3, 2, 2));
}

TEST_CASE("Cohen order is reverse inclusion") {
  auto C = CohenSystem::make({.indices = 3, .bits = 1, .support = 2});
  for (Cond q : C->poset().conditions())
    for (Cond p : C->poset().conditions()) {
      const auto& f = C->function(q);
      const auto& g = C->function(p);
      bool contains = true;
      for (unsigned x = 0; x < 3; ++x)
        if (g.defined(x)) contains = contains && f.defined(x) && f.value(x) == g.value(x);
      CHECK(C->poset().leq(q, p) == contains);
    }
}

TEST_CASE("Cohen equivariance, normality, tenacity") {
  auto C = CohenSystem::make({.indices = 3, .bits = 1, .support = 1});
  std::set<std::uint32_t> ids;
  for (unsigned i = 0; i < 3; ++i) ids.insert(C->gen(i).id());
  CHECK(ids.size() == 3);
  for (std::size_t k : C->group().indices())
    for (unsigned i = 0; i < 3; ++i)
      CHECK(apply(C->group().ambient_element(k), C->gen(i), C->names()) == C->gen(C->index_permutation(k)[i]));
  CHECK(is_normal(*C).normal);
  CHECK(tenacity_report(*C).all);
  CHECK(equivariance(*C, suite_names(*C, 1)).passed());
  CHECK(C->lift({0, 1, 2}).is_identity());
}

TEST_CASE("Cohen configuration errors") {
  CHECK_THROWS_AS(CohenSystem::make({.indices = 3, .bits = 1, .support = 3}), std::invalid_argument);
  CHECK_THROWS_AS(CohenSystem::make({.indices = 3, .bits = 1, .support = 0}), std::invalid_argument);
  Limits small;
  small.max_poset = 5;
  CHECK_THROWS_AS(CohenSystem::make({.indices = 3, .bits = 1, .support = 1}, small), CapExceeded);
  Limits tiny_group;
  tiny_group.max_group = 3;
  CHECK_THROWS_AS(CohenSystem::make({.indices = 3, .bits = 1, .support = 1}, tiny_group), CapExceeded);
}

TEST_CASE("homogeneity") {
  for (unsigned k = 0; k <= 3; ++k) CHECK(check_homogeneous(FinStructure::pure(3), k).homogeneous);

  const FinStructure marked(2, {{"P", 1, {{0}}}});
  CHECK(marked.automorphisms().size() == 1);
  CHECK_FALSE(marked.is_partial_isomorphism({0}, {1}));
  CHECK(check_homogeneous(marked, 2).homogeneous);

  const FinStructure cycle(3, {{"E", 2, {{0, 1}, {1, 2}, {2, 0}}}});
  CHECK(cycle.automorphisms().size() == 3);
  CHECK(check_homogeneous(cycle, 2).homogeneous);
  // Edges cannot be reversed, so the map 0↦1, 1↦0 is no partial isomorphism.
  CHECK_FALSE(cycle.is_partial_isomorphism({0, 1}, {1, 0}));

  const FinStructure path(3, {{"E", 2, {{0, 1}, {1, 0}, {1, 2}, {2, 1}}}});
  const HomogeneityResult r = check_homogeneous(path, 2);
  CHECK_FALSE(r.homogeneous);
  REQUIRE(r.witness);
  CHECK(r.witness->domain.size() == 1);

  CHECK_THROWS_AS(FinStructure(7, {}), std::invalid_argument);
  CHECK_THROWS_AS(FinStructure(2, {{"R", 1, {{2}}}}), std::invalid_argument);
}

TEST_CASE("wreath system") {
  auto W = WreathSystem::make({});
  CHECK(W->poset().size() == 33);
  CHECK(W->poset().size() == count_partial_functions(4, 2, 1));
  CHECK(W->group().order() == 8);
  CHECK(is_normal(*W).normal);
  CHECK(tenacity_report(*W).all);
  const Name all = W->all_rows();
  for (std::size_t k : W->group().indices()) {
    const Automorphism& pi = W->group().ambient_element(k);
    const WreathElement& e = W->split(k);
    CHECK(W->lift(e) == pi);
    for (unsigned m = 0; m < 2; ++m) {
      for (unsigned a = 0; a < 2; ++a)
        CHECK(apply(pi, W->gen(m, a), W->names()) == W->gen(e.structure[m], e.columns[m][a]));
      CHECK(apply(pi, W->row(m), W->names()) == W->row(e.structure[m]));
    }
    CHECK(apply(pi, all, W->names()) == all);
  }
  CHECK(in_hs(*W, all));
  CHECK(equivariance(*W, suite_names(*W, 2)).passed());

  WreathSpec spec;
  spec.structure = FinStructure(3, {{"R", 1, {{0}, {1}}}});
  auto R = WreathSystem::make(spec);
  CHECK(R->group().order() == 16);
  CHECK(in_hs(*R, R->relation_name("R")));
  CHECK_THROWS_AS(R->relation_name("S"), std::invalid_argument);

  WreathSpec narrow;
  narrow.columns = 1;
  CHECK_THROWS_AS(WreathSystem::make(narrow), std::invalid_argument);
}

TEST_CASE("disjointify") {
  WreathSpec spec;
  spec.support = 4;
  auto W = WreathSystem::make(spec);
  const Cond top = W->poset().top();
  const std::vector<unsigned> id{0, 1}, swap{1, 0};
  CHECK(disjointify(*W, id, top).is_identity());
  CHECK(W->poset().compatible(disjointify(*W, swap, top)(top), top));

  // p sets (0,0,0) and (1,0,0); the swap must move column 0 to column 1 on both rows.
  PartialFunction f;
  f.domain = (1ull << W->point(0, 0, 0)) | (1ull << W->point(1, 0, 0));
  f.values = f.domain;
  const Cond p = *W->find(f);
  const Automorphism pi = disjointify(*W, swap, p);
  CHECK(W->poset().compatible(pi(p), p));
  const WreathElement e = W->split(pi);
  CHECK(e.structure == swap);
  CHECK(e.columns[0][0] == 1);
  CHECK(e.columns[1][0] == 1);
  CHECK((W->function(pi(p)).domain & f.domain) == 0);

  // Both columns of row 0 in use: no room on row 1.
  PartialFunction g;
  g.domain = (1ull << W->point(0, 0, 0)) | (1ull << W->point(0, 1, 0)) | (1ull << W->point(1, 0, 0));
  g.values = 0;
  CHECK_THROWS_AS(disjointify(*W, swap, *W->find(g)), DisjointifyError);

  // With the default support bound of 1 the separated images cannot be joined.
  auto small = WreathSystem::make({});
  PartialFunction h;
  h.domain = 1ull << small->point(0, 0, 0);
  h.values = h.domain;
  CHECK_THROWS_AS(disjointify(*small, swap, *small->find(h)), DisjointifyError);
}

TEST_CASE("support analysis") {
  auto W = WreathSystem::make({});
  NameStore& s = W->names();
  const std::vector<unsigned> none, m0{0};
  CHECK(support_check(*W, W->all_rows(), none).verdict == SupportVerdict::Supported);

  const Name single = s.bullet_set({W->row(0)});
  CHECK(support_check(*W, single, m0).verdict == SupportVerdict::Supported);
  const SupportResult r = support_check(*W, single, none);
  CHECK(r.verdict == SupportVerdict::NotSupported);
  REQUIRE(r.witness);
  CHECK(r.witness->row == 0);
  CHECK(r.witness->moved_row == 1);
  CHECK(W->forcing().forces(r.witness->condition, Formula::in(W->row(0), single)));
  CHECK(W->forcing().forces(r.witness->condition, Formula::negate(Formula::in(W->row(1), single))));
  CHECK(to_string(r.verdict) == "not-supported");
}

}  // TEST_SUITE
