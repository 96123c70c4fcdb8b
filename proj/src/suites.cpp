#include "symext/suites.hpp"

#include <algorithm>

#include "symext/constructions.hpp"
#include "symext/parallel.hpp"
#include "symext/sampling.hpp"

namespace symext {

namespace {

constexpr std::size_t kExamples = 10;

void note(SuiteReport& r, std::string what) {
  ++r.failures;
  if (r.examples.size() < kExamples) r.examples.push_back(std::move(what));
}

/// Runs fn(report, i) for i in [0, n) over `jobs` threads and merges the
/// per-chunk reports in index order.
template <typename Fn>
SuiteReport chunked(std::size_t n, unsigned jobs, Fn&& fn) {
  std::vector<SuiteReport> parts(std::max(1u, jobs));
  parallel_chunks(n, jobs, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) fn(parts[chunk], i);
  });
  SuiteReport out;
  for (auto& part : parts) out.merge(std::move(part));
  return out;
}

}  // namespace

void SuiteReport::merge(SuiteReport other) {
  checked += other.checked;
  failures += other.failures;
  for (auto& e : other.examples)
    if (examples.size() < kExamples) examples.push_back(std::move(e));
}

SuiteReport oracle_equivalence(const Forcing& forcing, std::span<const Formula> formulas, unsigned jobs) {
  const FinPoset& P = forcing.poset();
  std::vector<Oracle> oracles;
  for (unsigned j = 0; j < std::max(1u, jobs); ++j) oracles.emplace_back(P);
  std::vector<SuiteReport> parts(std::max(1u, jobs));
  parallel_chunks(formulas.size(), jobs, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Oracle& oracle = oracles[chunk];
    SuiteReport& r = parts[chunk];
    for (std::size_t f = begin; f < end; ++f) {
      const ConditionSet fast = forcing.forcing_set(formulas[f]);
      for (Cond p : P.conditions()) {
        ++r.checked;
        const bool expected = oracle.forces(p, formulas[f]);
        if (fast.test(p.index) != expected)
          note(r, "at " + P.label(p) + ": " + formulas[f].str(forcing.store()) + " computed " +
                      (fast.test(p.index) ? "forced" : "not forced") + ", oracle " +
                      (expected ? "forced" : "not forced"));
      }
    }
  });
  SuiteReport out;
  for (auto& part : parts) out.merge(std::move(part));
  return out;
}

SuiteReport restriction_identities(const Forcing& forcing, std::span<const Name> names, unsigned jobs) {
  const FinPoset& P = forcing.poset();
  NameStore& store = forcing.store();
  const Name empty = store.empty();
  return chunked(names.size(), jobs, [&](SuiteReport& r, std::size_t i) {
    const Name x = names[i];
    for (Cond p : P.conditions()) {
      const Name rx = forcing.restrict(x, p);
      ++r.checked;
      if (!forcing.equal(x, rx)->test(p.index))
        note(r, P.label(p) + " does not force " + store.render(x) + " = its restriction");
      const ConditionSet& below_p = P.below(p);
      const ConditionSet& empty_forced = *forcing.equal(rx, empty);
      for (Cond q : P.conditions()) {
        if ((below_p & P.below(q)).any()) continue;
        ++r.checked;
        if (!empty_forced.test(q.index))
          note(r, P.label(q) + " does not force the restriction of " + store.render(x) + " to " + P.label(p) +
                      " to be empty");
      }
    }
  });
}

SuiteReport symmetry_lemma(const Forcing& forcing, const FinGroup& group, std::span<const Formula> formulas,
                           unsigned jobs) {
  const SymmetryReport rep = symmetry_lemma_check(forcing, group, formulas, jobs);
  SuiteReport out;
  out.checked = rep.checked;
  out.failures = rep.violation_count;
  for (const auto& v : rep.violations)
    out.examples.push_back("p=" + forcing.poset().label(v.condition) + " pi=" + v.pi.str(forcing.poset()) +
                           " formula=" + formulas[v.formula].str(forcing.store()) +
                           (v.forces_original ? " forced" : " not forced") + " but image " +
                           (v.forces_image ? "forced" : "not forced"));
  return out;
}

SuiteReport equivariance(const SymSystem& system, std::span<const Name> names, unsigned jobs) {
  NameStore& store = system.names();
  const std::vector<std::size_t> elements = system.group().indices();
  SuiteReport out;
  auto expect = [&](SuiteReport& r, const Automorphism& pi, Name x, Name want, const std::string& what) {
    ++r.checked;
    if (apply(pi, x, store) != want) note(r, what + " fails for " + pi.str(system.poset()));
  };

  if (const auto* cohen = dynamic_cast<const CohenSystem*>(&system)) {
    std::vector<Name> gens;
    for (unsigned i = 0; i < cohen->indices(); ++i) gens.push_back(cohen->gen(i));
    out.merge(chunked(elements.size(), jobs, [&](SuiteReport& r, std::size_t k) {
      const Automorphism& pi = system.group().ambient_element(elements[k]);
      const auto& sigma = cohen->index_permutation(elements[k]);
      for (unsigned i = 0; i < gens.size(); ++i)
        expect(r, pi, gens[i], gens[sigma[i]], "pi gen(" + std::to_string(i) + ") = gen(" + std::to_string(sigma[i]) + ")");
    }));
  } else if (const auto* wreath = dynamic_cast<const WreathSystem*>(&system)) {
    const unsigned M = wreath->rows(), A = wreath->row_columns();
    std::vector<std::vector<Name>> gens(M);
    std::vector<Name> rows;
    for (unsigned m = 0; m < M; ++m) {
      for (unsigned a = 0; a < A; ++a) gens[m].push_back(wreath->gen(m, a));
      rows.push_back(wreath->row(m));
    }
    const Name all = wreath->all_rows();
    std::vector<std::pair<std::string, Name>> relations;
    for (const auto& rel : wreath->structure().relations())
      relations.emplace_back(rel.name, wreath->relation_name(rel.name));
    out.merge(chunked(elements.size(), jobs, [&](SuiteReport& r, std::size_t k) {
      const Automorphism& pi = system.group().ambient_element(elements[k]);
      const WreathElement& e = wreath->split(elements[k]);
      for (unsigned m = 0; m < M; ++m) {
        for (unsigned a = 0; a < A; ++a)
          expect(r, pi, gens[m][a], gens[e.structure[m]][e.columns[m][a]],
                 "pi gen(" + std::to_string(m) + "," + std::to_string(a) + ") = gen(" +
                     std::to_string(e.structure[m]) + "," + std::to_string(e.columns[m][a]) + ")");
        expect(r, pi, rows[m], rows[e.structure[m]],
               "pi a(" + std::to_string(m) + ") = a(" + std::to_string(e.structure[m]) + ")");
      }
      expect(r, pi, all, all, "pi A = A");
      for (const auto& [label, x] : relations) expect(r, pi, x, x, "pi rel(" + label + ") = rel(" + label + ")");
    }));
  }

  if (is_normal(system).normal) {
    out.merge(chunked(names.size(), jobs, [&](SuiteReport& r, std::size_t i) {
      const bool hs = system.in_hs(names[i]);
      for (std::size_t k : elements) {
        const Automorphism& pi = system.group().ambient_element(k);
        ++r.checked;
        if (system.in_hs(apply(pi, names[i], store)) != hs)
          note(r, "in_hs differs between " + store.render(names[i]) + " and its image under " +
                      pi.str(system.poset()));
      }
    }));
  }
  return out;
}

std::vector<Name> suite_names(const SymSystem& system, std::uint64_t seed) {
  NameStore& store = system.names();
  NameSampleConfig config;
  config.rank1_samples = 24;
  config.rank2_samples = 24;
  std::vector<Name> out = sample_names(store, seed, config);
  const std::size_t raw = out.size();
  for (std::size_t i = 0; i < std::min<std::size_t>(raw, 8); ++i)
    out.push_back(symmetrize(system.group(), out[raw - 1 - i], store));
  if (const auto* cohen = dynamic_cast<const CohenSystem*>(&system)) {
    for (unsigned i = 0; i < cohen->indices(); ++i) out.push_back(cohen->gen(i));
  } else if (const auto* wreath = dynamic_cast<const WreathSystem*>(&system)) {
    for (unsigned m = 0; m < wreath->rows(); ++m) {
      for (unsigned a = 0; a < wreath->row_columns(); ++a) out.push_back(wreath->gen(m, a));
      out.push_back(wreath->row(m));
    }
    out.push_back(wreath->all_rows());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace symext
