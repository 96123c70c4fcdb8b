#include "symext/constructions.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace symext {

namespace {

std::string set_str(std::span<const unsigned> xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out + "}";
}

/// All subsets of {0..n-1} with at most k elements, by size then lexicographically.
std::vector<std::vector<unsigned>> small_subsets(unsigned n, unsigned k) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  for (unsigned size = 0; size <= std::min(n, k); ++size) {
    std::function<void(unsigned)> rec = [&](unsigned from) {
      if (cur.size() == size) {
        out.push_back(cur);
        return;
      }
      for (unsigned x = from; x < n; ++x) {
        cur.push_back(x);
        rec(x + 1);
        cur.pop_back();
      }
    };
    rec(0);
  }
  return out;
}

std::size_t ipow(std::size_t b, unsigned e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

std::size_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void add_unique(std::vector<FinGroup>& base, std::vector<std::string>& labels, FinGroup h,
                std::string label) {
  if (std::find(base.begin(), base.end(), h) != base.end()) return;
  base.push_back(std::move(h));
  labels.push_back(std::move(label));
}

std::vector<unsigned> identity_perm(unsigned n) {
  std::vector<unsigned> v(n);
  std::iota(v.begin(), v.end(), 0u);
  return v;
}

bool is_permutation_of(const std::vector<unsigned>& v, unsigned n) {
  if (v.size() != n) return false;
  std::vector<char> hit(n, 0);
  for (unsigned x : v)
    if (x >= n || hit[x]++) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------

PartialFunctionSystem::PartialFunctionSystem(Layout layout, FinGroup group, std::vector<FinGroup> base,
                                             std::vector<std::string> labels, Limits limits)
    : SymSystem(layout.poset, std::move(group), std::move(base), std::move(labels), limits),
      layout_(std::move(layout)) {}

std::optional<Cond> PartialFunctionSystem::find(const PartialFunction& f) const {
  auto it = layout_.index.find(f);
  if (it == layout_.index.end()) return std::nullopt;
  return Cond{it->second};
}

std::vector<unsigned> PartialFunctionSystem::touched(Cond p) const {
  const PartialFunction& f = function(p);
  const std::uint64_t column_mask = (layout_.width == 64) ? ~0ull : ((1ull << layout_.width) - 1);
  std::vector<unsigned> out;
  for (unsigned c = 0; c < layout_.columns; ++c)
    if ((f.domain >> (c * layout_.width)) & column_mask) out.push_back(c);
  return out;
}

PartialFunctionSystem::Layout PartialFunctionSystem::layout(
    unsigned columns, unsigned width, unsigned support,
    const std::function<std::string(unsigned, bool)>& label, const Limits& limits) {
  if (columns == 0 || width == 0) throw std::invalid_argument("empty point set");
  if (std::size_t{columns} * width > 64)
    throw std::invalid_argument("at most 64 points are supported, got " +
                                std::to_string(std::size_t{columns} * width));
  const std::size_t per_column = ipow(3, width) - 1;
  std::size_t total = 0;
  for (unsigned j = 0; j <= std::min(support, columns); ++j) {
    total += binomial(columns, j) * ipow(per_column, j);
    if (total > limits.max_poset) throw CapExceeded("poset", total, limits.max_poset);
  }

  Layout out;
  out.columns = columns;
  out.width = width;
  out.support = support;
  out.functions.reserve(total);
  // Column assignments: a base-3 digit per point, 0 undefined, 1 ↦ 0, 2 ↦ 1.
  std::vector<PartialFunction> column_fns;
  for (std::size_t code = 1; code <= per_column; ++code) {
    PartialFunction f;
    std::size_t c = code;
    for (unsigned k = 0; k < width; ++k, c /= 3) {
      if (c % 3 == 0) continue;
      f.domain |= 1ull << k;
      if (c % 3 == 2) f.values |= 1ull << k;
    }
    column_fns.push_back(f);
  }
  for (const auto& cols : small_subsets(columns, support)) {
    std::vector<std::size_t> pick(cols.size(), 0);
    while (true) {
      PartialFunction f;
      for (std::size_t i = 0; i < cols.size(); ++i) {
        const unsigned shift = cols[i] * width;
        f.domain |= column_fns[pick[i]].domain << shift;
        f.values |= column_fns[pick[i]].values << shift;
      }
      out.functions.push_back(f);
      std::size_t i = cols.size();
      while (i > 0 && ++pick[i - 1] == column_fns.size()) pick[--i] = 0;
      if (i == 0) break;
    }
  }

  std::vector<std::string> labels;
  labels.reserve(out.functions.size());
  for (std::size_t i = 0; i < out.functions.size(); ++i) {
    const PartialFunction& f = out.functions[i];
    out.index.emplace(f, static_cast<std::uint32_t>(i));
    std::string s = "{";
    bool first = true;
    for (std::uint64_t d = f.domain; d; d &= d - 1) {
      const unsigned point = static_cast<unsigned>(std::countr_zero(d));
      if (!first) s += ",";
      s += label(point, f.value(point));
      first = false;
    }
    labels.push_back(s + "}");
  }
  const auto& fns = out.functions;
  out.poset = std::make_shared<const FinPoset>(FinPoset::from_relation(
      std::move(labels), [&](std::size_t q, std::size_t p) { return fns[q].extends(fns[p]); }, limits));
  return out;
}

Automorphism PartialFunctionSystem::induced(const Layout& layout, const std::vector<unsigned>& point_map) {
  std::vector<Cond> images(layout.functions.size());
  for (std::size_t i = 0; i < layout.functions.size(); ++i) {
    const PartialFunction& f = layout.functions[i];
    PartialFunction g;
    for (std::uint64_t d = f.domain; d; d &= d - 1) {
      const unsigned x = static_cast<unsigned>(std::countr_zero(d));
      g.domain |= 1ull << point_map[x];
      if (f.value(x)) g.values |= 1ull << point_map[x];
    }
    auto it = layout.index.find(g);
    if (it == layout.index.end()) throw std::logic_error("point permutation leaves the condition set");
    images[i] = Cond{it->second};
  }
  return Automorphism::from_images(*layout.poset, std::move(images));
}

// ---------------------------------------------------------------------------

namespace {

FinGroup cohen_fix(const FinGroup& group, const std::vector<std::vector<unsigned>>& perms,
                   std::span<const unsigned> indices) {
  return group.ambient().where_index([&](std::size_t k) {
    return std::all_of(indices.begin(), indices.end(), [&](unsigned i) { return perms[k].at(i) == i; });
  });
}

}  // namespace

CohenSystem::CohenSystem(CohenSpec spec, Layout layout, FinGroup group, std::vector<FinGroup> base,
                         std::vector<std::string> labels, std::vector<std::vector<unsigned>> index_perms,
                         Limits limits)
    : PartialFunctionSystem(std::move(layout), std::move(group), std::move(base), std::move(labels), limits),
      spec_(std::move(spec)),
      index_perms_(std::move(index_perms)) {}

std::unique_ptr<CohenSystem> CohenSystem::make(const CohenSpec& spec, const Limits& limits) {
  const unsigned I = spec.indices, N = spec.bits;
  if (I == 0) throw std::invalid_argument("cohen: indices must be positive");
  if (N == 0) throw std::invalid_argument("cohen: bits must be positive");
  if (spec.support == 0) throw std::invalid_argument("cohen: support must be positive");
  if (spec.support > I) throw std::invalid_argument("cohen: support exceeds the number of indices");
  const unsigned fix_bound = spec.fix_bound.value_or(spec.support);
  if (fix_bound > I) throw std::invalid_argument("cohen: fix bound exceeds the number of indices");
  if (spec.support == I && !spec.fix_bound && !spec.base_sets)
    throw std::invalid_argument("cohen: support must be below the number of indices unless a smaller fix bound is given");

  Layout lay = layout(I, N, spec.support,
                      [N](unsigned point, bool v) {
                        return "(" + std::to_string(point / N) + "," + std::to_string(point % N) +
                               ")=" + (v ? "1" : "0");
                      },
                      limits);

  auto point_map = [&](const std::vector<unsigned>& sigma) {
    std::vector<unsigned> map(I * N);
    for (unsigned i = 0; i < I; ++i)
      for (unsigned n = 0; n < N; ++n) map[i * N + n] = sigma[i] * N + n;
    return map;
  };
  std::vector<Automorphism> gens;
  if (I >= 2) {
    std::vector<unsigned> swap = identity_perm(I);
    std::swap(swap[0], swap[1]);
    gens.push_back(induced(lay, point_map(swap)));
    if (I >= 3) {
      std::vector<unsigned> cycle(I);
      for (unsigned i = 0; i < I; ++i) cycle[i] = (i + 1) % I;
      gens.push_back(induced(lay, point_map(cycle)));
    }
  }
  FinGroup group = FinGroup::generate(*lay.poset, gens, limits.max_group);

  std::vector<std::vector<unsigned>> perms(group.ambient_order(), std::vector<unsigned>(I));
  for (std::size_t k = 0; k < group.ambient_order(); ++k) {
    const Automorphism& pi = group.ambient_element(k);
    for (unsigned i = 0; i < I; ++i) {
      const std::uint64_t bit = 1ull << (i * N);
      const PartialFunction& image = lay.functions[pi(Cond{lay.index.at({bit, bit})}).index];
      perms[k][i] = static_cast<unsigned>(std::countr_zero(image.domain)) / N;
    }
  }

  std::vector<FinGroup> base;
  std::vector<std::string> labels;
  if (spec.base_sets) {
    for (const auto& raw : *spec.base_sets) {
      std::set<unsigned> e(raw.begin(), raw.end());
      for (unsigned i : e)
        if (i >= I) throw std::invalid_argument("cohen: base index " + std::to_string(i) + " out of range");
      std::vector<unsigned> sorted(e.begin(), e.end());
      base.push_back(cohen_fix(group, perms, sorted));
      labels.push_back("fix(" + set_str(sorted) + ")");
    }
    if (base.empty()) throw std::invalid_argument("cohen: explicit base is empty");
  } else {
    for (const auto& e : small_subsets(I, fix_bound))
      add_unique(base, labels, cohen_fix(group, perms, e), "fix(" + set_str(e) + ")");
  }
  CohenSpec stored = spec;
  stored.fix_bound = fix_bound;
  return std::unique_ptr<CohenSystem>(new CohenSystem(std::move(stored), std::move(lay), std::move(group),
                                                      std::move(base), std::move(labels),
                                                      std::move(perms), limits));
}

std::unique_ptr<CohenSystem> cohen_system(const CohenSpec& spec, const Limits& limits) {
  return CohenSystem::make(spec, limits);
}

Name CohenSystem::gen(unsigned i) const {
  if (i >= spec_.indices) throw std::out_of_range("cohen: index " + std::to_string(i) + " out of range");
  NameStore& store = names();
  std::vector<Name> nats;
  for (unsigned n = 0; n < spec_.bits; ++n) nats.push_back(store.check(HfSet::nat(n)));
  std::vector<NameEntry> entries;
  for (std::size_t c = 0; c < poset().size(); ++c) {
    const PartialFunction& f = function(Cond{static_cast<std::uint32_t>(c)});
    for (unsigned n = 0; n < spec_.bits; ++n) {
      const unsigned point = i * spec_.bits + n;
      if (f.defined(point) && f.value(point)) entries.push_back({Cond{static_cast<std::uint32_t>(c)}, nats[n]});
    }
  }
  return store.make(std::move(entries));
}

Automorphism CohenSystem::lift(const std::vector<unsigned>& index_perm) const {
  if (!is_permutation_of(index_perm, spec_.indices)) throw std::invalid_argument("cohen: not a permutation of the indices");
  std::vector<unsigned> map(spec_.indices * spec_.bits);
  for (unsigned i = 0; i < spec_.indices; ++i)
    for (unsigned n = 0; n < spec_.bits; ++n) map[i * spec_.bits + n] = index_perm[i] * spec_.bits + n;
  return induced(layout_data(), map);
}

std::vector<unsigned> CohenSystem::index_permutation(const Automorphism& pi) const {
  auto k = group().index_of(pi);
  if (!k) throw std::invalid_argument("cohen: automorphism outside the group");
  return index_perms_[*k];
}

FinGroup CohenSystem::fix(std::span<const unsigned> indices) const {
  for (unsigned i : indices)
    if (i >= spec_.indices) throw std::out_of_range("cohen: index " + std::to_string(i) + " out of range");
  return cohen_fix(group(), index_perms_, indices);
}

// ---------------------------------------------------------------------------

namespace {

FinGroup wreath_fix(const FinGroup& group, const std::vector<WreathElement>& parts,
                    std::span<const unsigned> rows, std::span<const unsigned> columns) {
  return group.ambient().where_index([&](std::size_t k) {
    const WreathElement& e = parts[k];
    for (unsigned n : rows) {
      if (e.structure[n] != n) return false;
      for (unsigned a : columns)
        if (e.columns[n][a] != a) return false;
    }
    return true;
  });
}

}  // namespace

WreathSystem::WreathSystem(WreathSpec spec, Layout layout, FinGroup group, std::vector<FinGroup> base,
                           std::vector<std::string> labels, std::vector<WreathElement> parts, Limits limits)
    : PartialFunctionSystem(std::move(layout), std::move(group), std::move(base), std::move(labels), limits),
      spec_(std::move(spec)),
      parts_(std::move(parts)) {}

std::unique_ptr<WreathSystem> WreathSystem::make(const WreathSpec& spec, const Limits& limits) {
  const unsigned M = spec.structure.size(), A = spec.columns, B = spec.values;
  if (A < 2) throw std::invalid_argument("wreath: at least 2 columns are required");
  if (B == 0) throw std::invalid_argument("wreath: values must be positive");
  if (spec.support == 0) throw std::invalid_argument("wreath: support must be positive");
  if (spec.support > M * A) throw std::invalid_argument("wreath: support exceeds the number of columns");
  if (spec.fix_rows > M) throw std::invalid_argument("wreath: fix_rows exceeds the structure size");
  if (spec.fix_columns > A) throw std::invalid_argument("wreath: fix_cols exceeds the number of columns");

  Layout lay = layout(M * A, B, spec.support,
                      [A, B](unsigned point, bool v) {
                        const unsigned beta = point % B, col = point / B;
                        return "(" + std::to_string(col / A) + "," + std::to_string(col % A) + "," +
                               std::to_string(beta) + ")=" + (v ? "1" : "0");
                      },
                      limits);

  auto point_map = [&](const WreathElement& e) {
    std::vector<unsigned> map(M * A * B);
    for (unsigned m = 0; m < M; ++m)
      for (unsigned a = 0; a < A; ++a)
        for (unsigned b = 0; b < B; ++b) map[(m * A + a) * B + b] = (e.structure[m] * A + e.columns[m][a]) * B + b;
    return map;
  };
  const WreathElement identity{identity_perm(M), std::vector<std::vector<unsigned>>(M, identity_perm(A))};
  std::vector<Automorphism> gens;
  for (const auto& sigma : spec.structure.automorphisms()) {
    if (sigma == identity.structure) continue;
    WreathElement e = identity;
    e.structure = sigma;
    gens.push_back(induced(lay, point_map(e)));
  }
  for (unsigned m = 0; m < M; ++m) {
    WreathElement e = identity;
    std::swap(e.columns[m][0], e.columns[m][1]);
    gens.push_back(induced(lay, point_map(e)));
    if (A >= 3) {
      e = identity;
      for (unsigned a = 0; a < A; ++a) e.columns[m][a] = (a + 1) % A;
      gens.push_back(induced(lay, point_map(e)));
    }
  }
  FinGroup group = FinGroup::generate(*lay.poset, gens, limits.max_group);

  std::vector<WreathElement> parts(group.ambient_order(), identity);
  for (std::size_t k = 0; k < group.ambient_order(); ++k) {
    const Automorphism& pi = group.ambient_element(k);
    for (unsigned m = 0; m < M; ++m)
      for (unsigned a = 0; a < A; ++a) {
        const std::uint64_t bit = 1ull << ((m * A + a) * B);
        const PartialFunction& image = lay.functions[pi(Cond{lay.index.at({bit, bit})}).index];
        const unsigned col = static_cast<unsigned>(std::countr_zero(image.domain)) / B;
        parts[k].structure[m] = col / A;
        parts[k].columns[m][a] = col % A;
      }
  }

  std::vector<FinGroup> base;
  std::vector<std::string> labels;
  for (const auto& n : small_subsets(M, spec.fix_rows))
    for (const auto& e : small_subsets(A, spec.fix_columns))
      add_unique(base, labels, wreath_fix(group, parts, n, e), "fix(" + set_str(n) + "," + set_str(e) + ")");
  return std::unique_ptr<WreathSystem>(new WreathSystem(spec, std::move(lay), std::move(group), std::move(base),
                                                        std::move(labels), std::move(parts), limits));
}

std::unique_ptr<WreathSystem> wreath_system(const WreathSpec& spec, const Limits& limits) {
  return WreathSystem::make(spec, limits);
}

Name WreathSystem::gen(unsigned m, unsigned alpha) const {
  if (m >= rows() || alpha >= spec_.columns) throw std::out_of_range("wreath: generator index out of range");
  NameStore& store = names();
  std::vector<Name> values;
  for (unsigned b = 0; b < spec_.values; ++b) values.push_back(store.check(HfSet::nat(b)));
  std::vector<NameEntry> entries;
  for (std::size_t c = 0; c < poset().size(); ++c) {
    const PartialFunction& f = function(Cond{static_cast<std::uint32_t>(c)});
    for (unsigned b = 0; b < spec_.values; ++b) {
      const unsigned x = point(m, alpha, b);
      if (f.defined(x) && f.value(x)) entries.push_back({Cond{static_cast<std::uint32_t>(c)}, values[b]});
    }
  }
  return store.make(std::move(entries));
}

Name WreathSystem::row(unsigned m) const {
  std::vector<Name> gens;
  for (unsigned a = 0; a < spec_.columns; ++a) gens.push_back(gen(m, a));
  return names().bullet_set(gens);
}

Name WreathSystem::all_rows() const {
  std::vector<Name> rs;
  for (unsigned m = 0; m < rows(); ++m) rs.push_back(row(m));
  return names().bullet_set(rs);
}

Name WreathSystem::relation_name(std::string_view relation) const {
  const Relation* r = spec_.structure.relation(relation);
  if (!r) throw std::invalid_argument("wreath: unknown relation " + std::string(relation));
  std::vector<Name> tuples;
  for (const auto& t : r->tuples) {
    Name x = row(t.back());
    for (std::size_t i = t.size() - 1; i-- > 0;) x = names().bullet_pair(row(t[i]), x);
    tuples.push_back(x);
  }
  return names().bullet_set(tuples);
}

Automorphism WreathSystem::lift(const WreathElement& e) const {
  const unsigned M = rows(), A = spec_.columns, B = spec_.values;
  if (!spec_.structure.is_automorphism(e.structure))
    throw std::invalid_argument("wreath: structure part is not an automorphism");
  if (e.columns.size() != M) throw std::invalid_argument("wreath: wrong number of column permutations");
  for (const auto& c : e.columns)
    if (!is_permutation_of(c, A)) throw std::invalid_argument("wreath: column part is not a permutation");
  std::vector<unsigned> map(M * A * B);
  for (unsigned m = 0; m < M; ++m)
    for (unsigned a = 0; a < A; ++a)
      for (unsigned b = 0; b < B; ++b) map[point(m, a, b)] = point(e.structure[m], e.columns[m][a], b);
  return induced(layout_data(), map);
}

WreathElement WreathSystem::split(const Automorphism& pi) const {
  auto k = group().index_of(pi);
  if (!k) throw std::invalid_argument("wreath: automorphism outside the group");
  return parts_[*k];
}

FinGroup WreathSystem::fix(std::span<const unsigned> rs, std::span<const unsigned> cs) const {
  for (unsigned m : rs)
    if (m >= rows()) throw std::out_of_range("wreath: row " + std::to_string(m) + " out of range");
  for (unsigned a : cs)
    if (a >= spec_.columns) throw std::out_of_range("wreath: column " + std::to_string(a) + " out of range");
  return wreath_fix(group(), parts_, rs, cs);
}

// ---------------------------------------------------------------------------

Automorphism disjointify(const WreathSystem& system, const std::vector<unsigned>& sigma, Cond p) {
  const unsigned M = system.rows(), A = system.row_columns();
  if (!system.structure().is_automorphism(sigma))
    throw std::invalid_argument("disjointify: not an automorphism of the structure");
  std::vector<std::vector<char>> used(M, std::vector<char>(A, 0));
  for (unsigned col : system.touched(p)) used[col / A][col % A] = 1;

  WreathElement e{sigma, std::vector<std::vector<unsigned>>(M, identity_perm(A))};
  for (unsigned m = 0; m < M; ++m) {
    if (sigma[m] == m) continue;
    std::vector<unsigned> from, free;
    for (unsigned a = 0; a < A; ++a) {
      if (used[m][a]) from.push_back(a);
      if (!used[sigma[m]][a]) free.push_back(a);
    }
    if (free.size() < from.size())
      throw DisjointifyError("disjointify: row " + std::to_string(m) + " uses " + std::to_string(from.size()) +
                             " columns but only " + std::to_string(free.size()) + " are free on row " +
                             std::to_string(sigma[m]) + "; widen A");
    // Used columns go to the smallest free targets, the rest fill in ascending order.
    std::vector<unsigned>& perm = e.columns[m];
    std::vector<char> taken(A, 0);
    for (std::size_t i = 0; i < from.size(); ++i) {
      perm[from[i]] = free[i];
      taken[free[i]] = 1;
    }
    unsigned next = 0;
    for (unsigned a = 0; a < A; ++a) {
      if (used[m][a]) continue;
      while (taken[next]) ++next;
      perm[a] = next;
      taken[next] = 1;
    }
  }
  Automorphism pi = system.lift(e);
  if (!system.poset().compatible(pi(p), p))
    throw DisjointifyError("disjointify: the image of " + system.poset().label(p) +
                           " is disjoint but exceeds the support bound " + std::to_string(system.support()) +
                           " together with it; widen the support");
  return pi;
}

std::string_view to_string(SupportVerdict v) {
  switch (v) {
    case SupportVerdict::Supported: return "supported";
    case SupportVerdict::NotSupported: return "not-supported";
    case SupportVerdict::Contradiction: return "contradiction";
    case SupportVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

SupportResult support_check(const WreathSystem& system, Name b, std::span<const unsigned> rows,
                            std::optional<std::vector<unsigned>> columns) {
  const unsigned M = system.rows();
  std::vector<char> in_n(M, 0);
  for (unsigned n : rows) {
    if (n >= M) throw std::out_of_range("support_check: row " + std::to_string(n) + " out of range");
    in_n[n] = 1;
  }
  const std::vector<unsigned> cols = columns ? *columns : identity_perm(system.row_columns());

  std::vector<ConditionSet> forced_in, forced_out;
  for (unsigned m = 0; m < M; ++m) {
    const Formula phi = Formula::in(system.row(m), b);
    forced_in.push_back(system.forcing().forcing_set(phi));
    forced_out.push_back(system.forcing().forcing_set(Formula::negate(phi)));
  }

  SupportResult out;
  std::optional<SupportWitness> witness;
  for (const auto& sigma : system.structure().automorphisms()) {
    bool fixes_n = true;
    for (unsigned n = 0; n < M; ++n) fixes_n = fixes_n && (!in_n[n] || sigma[n] == n);
    if (!fixes_n) continue;
    for (unsigned m = 0; m < M && !witness; ++m) {
      if (sigma[m] == m) continue;
      const ConditionSet both = forced_in[m] & forced_out[sigma[m]];
      if (const std::size_t p = both.find_first(); p != ConditionSet::npos)
        witness = SupportWitness{Cond{static_cast<std::uint32_t>(p)}, m, sigma[m], sigma};
    }
    if (witness) break;
  }
  if (!witness) {
    out.verdict = SupportVerdict::Supported;
    out.detail = "no condition separates two rows of the same type over N";
    return out;
  }
  out.witness = witness;
  const FinGroup pre = system.fix(rows, cols);
  if (!pre.is_subset_of(system.sym(b))) {
    out.verdict = SupportVerdict::NotSupported;
    out.detail = "fix(N,E) does not stabilize the name";
    return out;
  }
  try {
    const Automorphism pi = disjointify(system, witness->structure_perm, witness->condition);
    out.verdict = SupportVerdict::Contradiction;
    out.detail = "compatible conditions force contradictory statements via " + pi.str(system.poset());
  } catch (const DisjointifyError& e) {
    out.verdict = SupportVerdict::Inconclusive;
    out.detail = e.what();
  }
  return out;
}

}  // namespace symext
