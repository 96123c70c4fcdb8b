#include "doctest.h"

#include <functional>
#include <unordered_map>

#include "fixtures.hpp"
#include "symext/constructions.hpp"
#include "symext/sampling.hpp"
#include "symext/symmetric.hpp"

using namespace symext;

namespace {

/// Rebuilds a name over another store whose conditions are renumbered by `cond`.
Name transfer(Name x, NameStore& to, const std::function<Cond(Cond)>& cond) {
  std::vector<NameEntry> entries;
  for (const NameEntry& e : x.entries()) entries.push_back({cond(e.cond), transfer(e.name, to, cond)});
  return to.make(std::move(entries));
}

}  // namespace

TEST_SUITE("symmetric") {

TEST_CASE("filter membership") {
  auto C = CohenSystem::make({.indices = 3, .bits = 1, .support = 1});
  CHECK(C->filter().base().size() == 4);
  CHECK(filter_contains(C->filter(), C->group()));
  CHECK_FALSE(filter_contains(C->filter(), C->fix(std::vector{0u, 1u})));
  CHECK_FALSE(filter_contains(C->filter(), C->group().where([](const Automorphism& pi) { return pi.is_identity(); })));
  CHECK_FALSE(C->degenerate());

  auto C4 = CohenSystem::make({.indices = 4, .bits = 1, .support = 2});
  CHECK(filter_contains(C4->filter(), C4->fix(std::vector{0u, 1u})));
  CHECK_FALSE(filter_contains(C4->filter(), C4->fix(std::vector{0u, 1u, 2u})));
  CHECK(C4->filter().directed() == false);
}

TEST_CASE("normality") {
  auto C2 = CohenSystem::make({.indices = 2, .bits = 1, .support = 1});
  CHECK(is_normal(*C2).normal);

  auto C3 = CohenSystem::make({.indices = 3, .bits = 1, .support = 1, .base_sets = std::vector<std::vector<unsigned>>{{0}}});
  const NormalityResult r = is_normal(*C3);
  CHECK_FALSE(r.normal);
  REQUIRE(r.witness);
  const auto& sigma = C3->index_permutation(r.witness->pi);
  CHECK(sigma[0] != 0);
  CHECK(r.witness->conjugate == C3->fix(std::vector{sigma[0]}));

  auto T = trivial_full_system(fixtures::p3());
  CHECK(is_normal(*T).normal);
}

TEST_CASE("hereditary symmetry of Cohen names") {
  auto C = CohenSystem::make({.indices = 3, .bits = 1, .support = 1});
  NameStore& s = C->names();
  for (unsigned n = 0; n < 4; ++n) CHECK(in_hs(*C, s.check(HfSet::nat(n))));
  std::vector<Name> gens, pairs;
  for (unsigned i = 0; i < 3; ++i) {
    gens.push_back(C->gen(i));
    CHECK(in_hs(*C, C->gen(i)));
    pairs.push_back(s.bullet_pair(s.check(HfSet::nat(i)), C->gen(i)));
  }
  CHECK(in_hs(*C, s.bullet_set(gens)));
  CHECK_FALSE(in_hs(*C, s.bullet_set(pairs)));
  CHECK(C->sym(s.bullet_set(pairs)).is_trivial());

  // Invariance under the action when the filter is normal.
  for (Name x : sample_names(s, 3))
    for (const auto& pi : C->group().elements()) CHECK(in_hs(*C, x) == in_hs(*C, apply(pi, x, s)));
}

TEST_CASE("tenacity") {
  auto C = CohenSystem::make({.indices = 3, .bits = 1, .support = 1});
  const TenacityReport r = tenacity_report(*C);
  CHECK(r.all);
  CHECK(r.dense);
  CHECK(is_tenacious(*C, C->poset().top()));

  auto full = CohenSystem::make({.indices = 3, .bits = 1, .support = 3, .fix_bound = 1});
  const TenacityReport f = tenacity_report(*full);
  CHECK_FALSE(f.all);
  for (Cond p : f.non_tenacious) CHECK(full->touched(p).size() >= 2);
  // {(0,0)=0,(1,0)=1} is moved by every non-identity permutation.
  const Cond mixed = *full->find(PartialFunction{0b011, 0b010});
  CHECK_FALSE(is_tenacious(*full, mixed));
  CHECK(full->sym(full->names().make({{mixed, full->names().empty()}})).is_trivial());
  // Constant total functions are fixed by all of Sym(I), so tenacity stays dense.
  CHECK(f.dense);
}

TEST_CASE("sequence names") {
  // Support 2 with fix bound 1 keeps fix({0,1}) out of the base.
  auto C2 = CohenSystem::make({.indices = 3, .bits = 1, .support = 2, .fix_bound = 1});
  auto S2 = CohenSystem::make({.indices = 4, .bits = 1, .support = 2});
  CHECK(seq_name(*S2, {}).name == S2->names().empty());
  const std::vector<std::pair<unsigned, Name>> two{{0, S2->gen(0)}, {1, S2->gen(1)}};
  const ConstructionResult ok = seq_name(*S2, two);
  REQUIRE(ok.certificate);
  CHECK(ok.certificate->subgroup == S2->fix(std::vector{0u, 1u}));
  CHECK(in_hs(*S2, ok.name));

  auto S1 = CohenSystem::make({.indices = 3, .bits = 1, .support = 1});
  const std::vector<std::pair<unsigned, Name>> two1{{0, S1->gen(0)}, {1, S1->gen(1)}};
  const ConstructionResult no = seq_name(*S1, two1);
  CHECK_FALSE(no.certificate);
  CHECK_FALSE(no.diagnostic.empty());
  CHECK_FALSE(in_hs(*S1, no.name));

  const std::vector<std::pair<unsigned, Name>> dup{{0, S1->gen(0)}, {0, S1->gen(1)}};
  CHECK_THROWS_AS(seq_name(*S1, dup), std::invalid_argument);
  const std::vector<std::pair<unsigned, Name>> two2{{0, C2->gen(0)}, {1, C2->gen(1)}};
  CHECK_FALSE(seq_name(*C2, two2).certificate);
}

TEST_CASE("mixing") {
  auto T = trivial_full_system(fixtures::p3());
  NameStore& s = T->names();
  const Cond a = T->poset().lookup("a"), b = T->poset().lookup("b");
  const Name zero = s.check(HfSet::nat(0)), one = s.check(HfSet::nat(1));
  const std::vector<std::pair<Cond, Name>> assignment{{a, zero}, {b, one}};
  const ConstructionResult m = mix(*T, assignment);
  CHECK(T->forcing().forces(a, Formula::eq(m.name, zero)));
  CHECK(T->forcing().forces(b, Formula::eq(m.name, one)));
  Oracle oracle(T->poset());
  CHECK(oracle.forces(a, Formula::eq(m.name, zero)));
  CHECK(oracle.forces(b, Formula::eq(m.name, one)));

  const Name x = s.make({{a, s.empty()}});
  const std::vector<std::pair<Cond, Name>> single{{T->poset().top(), x}};
  const ConstructionResult m1 = mix(*T, single);
  CHECK(m1.name == T->forcing().restrict(x, T->poset().top()));
  CHECK(T->forcing().forces(T->poset().top(), Formula::eq(m1.name, x)));

  const std::vector<std::pair<Cond, Name>> bad{{T->poset().top(), zero}, {a, one}};
  CHECK_THROWS_AS(mix(*T, bad), std::invalid_argument);

  auto C = CohenSystem::make({.indices = 3, .bits = 1, .support = 1});
  const PartialFunction p0{1, 0}, p1{1, 1};
  const std::vector<std::pair<Cond, Name>> cohen_assignment{{*C->find(p0), C->gen(0)}, {*C->find(p1), C->names().check(HfSet::nat(1))}};
  const ConstructionResult cm = mix(*C, cohen_assignment);
  REQUIRE(cm.certificate);
  CHECK(in_hs(*C, cm.name));
  for (const auto& [p, y] : cohen_assignment) CHECK(C->forcing().forces(p, Formula::eq(cm.name, y)));

  // Names on two different indices leave only the identity in the certificate.
  const std::vector<std::pair<Cond, Name>> spread{{*C->find(p0), C->gen(1)}, {*C->find(p1), C->gen(2)}};
  const ConstructionResult sm = mix(*C, spread);
  CHECK_FALSE(sm.certificate);
  CHECK_FALSE(sm.diagnostic.empty());
}

TEST_CASE("products") {
  auto C = CohenSystem::make({.indices = 2, .bits = 1, .support = 1});
  auto T = trivial_full_system(fixtures::p3());
  auto X = product_system(*C, *T);
  CHECK(X->poset().size() == 15);
  CHECK(X->group().order() == 4);
  CHECK(is_normal(*X).normal);

  NameStore& s = X->names();
  const auto names = close_under(X->group(), sample_names(s, 17), s);
  std::size_t hs = 0;
  for (Name x : names) {
    if (!in_hs(*X, x)) continue;
    ++hs;
    for (std::size_t k : X->group().indices())
      if (X->left_identity(k)) CHECK(apply(X->group().ambient_element(k), x, s) == x);
  }
  CHECK(hs > 0);

  auto one = trivial_full_system(fixtures::single());
  auto Y = product_system(*C, *one);
  REQUIRE(Y->poset().size() == C->poset().size());
  for (Name x : sample_names(C->names(), 23)) {
    const Name y = transfer(x, Y->names(), [](Cond c) { return c; });
    CHECK(in_hs(*C, x) == in_hs(*Y, y));
  }
}

}  // TEST_SUITE
