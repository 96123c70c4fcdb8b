#include "symext/sampling.hpp"

#include <algorithm>

namespace symext {

namespace {

void sort_unique(std::vector<Name>& names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
}

}  // namespace

std::vector<Name> sample_names(NameStore& store, std::uint64_t seed, const NameSampleConfig& config) {
  const FinPoset& P = store.poset();
  const std::size_t n = P.size();
  Rng rng(seed);
  const Name empty = store.empty();

  std::vector<Name> rank1{empty, store.check(HfSet::nat(1))};
  auto from_mask = [&](auto&& has) {
    std::vector<NameEntry> entries;
    for (std::size_t p = 0; p < n; ++p)
      if (has(p)) entries.push_back({P.at(p), empty});
    return store.make(std::move(entries));
  };
  if (n <= config.exhaustive_rank1_up_to) {
    for (std::uint64_t mask = 1; mask < (1ull << n); ++mask)
      rank1.push_back(from_mask([&](std::size_t p) { return (mask >> p) & 1u; }));
  } else {
    for (std::size_t k = 0; k < config.rank1_samples; ++k) {
      // Sparse subsets keep the sample varied on large posets.
      const std::size_t keep = 1 + rng.below(std::min<std::size_t>(n, 4));
      std::vector<char> has(n, 0);
      for (std::size_t j = 0; j < keep; ++j) has[rng.below(n)] = 1;
      rank1.push_back(from_mask([&](std::size_t p) { return has[p] != 0; }));
    }
  }
  sort_unique(rank1);

  std::vector<Name> out = rank1;
  out.push_back(store.check(HfSet::nat(2)));
  for (std::size_t k = 0; k < config.rank2_samples; ++k) {
    const std::size_t entries = 1 + rng.below(config.rank2_max_entries);
    std::vector<NameEntry> raw;
    for (std::size_t j = 0; j < entries; ++j)
      raw.push_back({P.at(rng.below(n)), rank1[rng.below(rank1.size())]});
    out.push_back(store.make(std::move(raw)));
  }
  sort_unique(out);
  return out;
}

std::vector<Name> close_under(const FinGroup& group, std::span<const Name> names, NameStore& store) {
  std::vector<Name> out(names.begin(), names.end());
  for (const auto& pi : group.elements())
    for (Name x : names) out.push_back(apply(pi, x, store));
  sort_unique(out);
  return out;
}

Name symmetrize(const FinGroup& group, Name x, NameStore& store) {
  std::vector<NameEntry> entries;
  for (const auto& pi : group.elements()) {
    Name y = apply(pi, x, store);
    entries.insert(entries.end(), y.entries().begin(), y.entries().end());
  }
  return store.make(std::move(entries));
}

FinPoset random_poset(Rng& rng, std::size_t size, const Limits& limits) {
  std::vector<std::string> labels;
  labels.push_back("1");
  for (std::size_t i = 1; i < size; ++i) labels.push_back("c" + std::to_string(i));
  std::vector<std::pair<std::size_t, std::size_t>> below;
  for (std::size_t q = 1; q < size; ++q) {
    below.emplace_back(q, 0);
    for (std::size_t p = 1; p < q; ++p)
      if (rng.chance(1, 3)) below.emplace_back(q, p);
  }
  return FinPoset::from_covers(std::move(labels), below, limits);
}

std::vector<Formula> formula_family(std::span<const Name> names, Rng& rng, const FormulaFamilyConfig& config) {
  std::vector<Formula> atoms = atomic_formulas(names);
  std::vector<Formula> out = atoms;
  if (atoms.empty()) return out;
  auto atom = [&] { return atoms[rng.below(atoms.size())]; };
  auto name = [&] { return names[rng.below(names.size())]; };
  for (std::size_t k = 0; k < config.connective_samples; ++k) {
    switch (rng.below(3)) {
      case 0: out.push_back(Formula::negate(atom())); break;
      case 1: out.push_back(Formula::conj(atom(), atom())); break;
      default: out.push_back(Formula::disj(atom(), atom())); break;
    }
  }
  const Var v{0};
  for (std::size_t k = 0; k < config.quantifier_samples; ++k) {
    const Name bound = name(), other = name();
    Formula body = Formula::in(v, other);
    switch (rng.below(4)) {
      case 0: break;
      case 1: body = Formula::in(other, v); break;
      case 2: body = Formula::eq(v, other); break;
      default: body = Formula::negate(Formula::in(v, other)); break;
    }
    out.push_back(rng.chance(1, 2) ? Formula::exists(0, bound, body) : Formula::forall(0, bound, body));
  }
  return out;
}

}  // namespace symext
