#include "symext/runner.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "symext/constructions.hpp"
#include "symext/sampling.hpp"
#include "symext/suites.hpp"
#include "symext/symmetric.hpp"

namespace symext::cli {

using dsl::Node;
using dsl::Statement;

namespace {

constexpr std::size_t kRenderCap = 480;
constexpr std::size_t kListCap = 32;

struct Unavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Outcome { Pass, Fail, Inconclusive, Error, Skipped };

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Inconclusive: return "inconclusive";
    case Outcome::Error: return "error";
    case Outcome::Skipped: return "skipped";
  }
  return "?";
}

std::string capped(std::string s) {
  if (s.size() <= kRenderCap) return s;
  const std::size_t total = s.size();
  s.resize(kRenderCap);
  return s + "... (" + std::to_string(total) + " chars)";
}

std::string cycles(const std::vector<unsigned>& perm) {
  std::string out;
  std::vector<bool> seen(perm.size());
  for (unsigned i = 0; i < perm.size(); ++i) {
    if (seen[i] || perm[i] == i) continue;
    out += "(";
    for (unsigned j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      if (j != i) out += " ";
      out += std::to_string(j);
    }
    out += ")";
  }
  return out.empty() ? "id" : out;
}

std::string index_set(const std::vector<unsigned>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out + "}";
}

unsigned number(const Node& n) { return static_cast<unsigned>(std::stoul(n.text)); }

std::vector<unsigned> numbers(const Node& braces) {
  std::vector<unsigned> out;
  for (const Node& k : braces.kids) out.push_back(number(k));
  return out;
}

std::string describe_element(const SymSystem& sys, const Automorphism& pi) {
  if (const auto* c = dynamic_cast<const CohenSystem*>(&sys)) return cycles(c->index_permutation(pi));
  if (const auto* w = dynamic_cast<const WreathSystem*>(&sys)) {
    const WreathElement e = w->split(pi);
    std::string out = "M:" + cycles(e.structure);
    for (std::size_t m = 0; m < e.columns.size(); ++m) out += " A" + std::to_string(m) + ":" + cycles(e.columns[m]);
    return out;
  }
  if (sys.poset().size() <= 64) return pi.str(sys.poset());
  return "#" + std::to_string(*sys.group().index_of(pi));
}

Json describe_subgroup(const SymSystem& sys, const FinGroup& h) {
  Json out;
  out["order"] = h.order();
  for (std::size_t i = 0; i < sys.filter().base().size(); ++i)
    if (sys.filter().base()[i] == h) {
      out["name"] = sys.filter().label(i);
      break;
    }
  if (!out.contains("name"))
    if (const auto* c = dynamic_cast<const CohenSystem*>(&sys)) {
      std::vector<unsigned> fixed;
      for (unsigned i = 0; i < c->indices(); ++i) {
        bool all = true;
        for (std::size_t k : h.indices()) all = all && c->index_permutation(k)[i] == i;
        if (all) fixed.push_back(i);
      }
      if (c->fix(fixed) == h) out["name"] = "fix(" + index_set(fixed) + ")";
    }
  if (h.order() <= 8) {
    Json elems = Json::array();
    for (std::size_t k : h.indices()) elems.push_back(describe_element(sys, h.ambient_element(k)));
    out["elements"] = elems;
  }
  return out;
}

Json normality_json(const SymSystem& sys, const NormalityResult& r) {
  Json out;
  out["normal"] = r.normal;
  if (r.witness) {
    out["witness"] = {{"element", describe_element(sys, r.witness->pi)},
                      {"base", sys.filter().label(r.witness->base_index)},
                      {"conjugate", describe_subgroup(sys, r.witness->conjugate)}};
  }
  return out;
}

Json labels(const FinPoset& poset, const std::vector<Cond>& conds) {
  Json out = Json::array();
  for (std::size_t i = 0; i < conds.size() && i < kListCap; ++i) out.push_back(poset.label(conds[i]));
  return out;
}

Json suite_json(const SuiteReport& r, std::size_t names, std::size_t formulas) {
  Json out;
  out["names"] = names;
  if (formulas) out["formulas"] = formulas;
  out["checked"] = r.checked;
  out["failures"] = r.failures;
  if (!r.examples.empty()) out["examples"] = r.examples;
  return out;
}

}  // namespace

struct Session::State {
  struct Bound {
    std::string system;
    Name name;
  };
  struct Entry {
    Json json;
    Outcome outcome;
  };

  RunConfig config;
  std::map<std::string, std::unique_ptr<SymSystem>> systems;
  std::map<std::string, std::string> broken_systems;
  std::map<std::string, Bound> names;
  std::map<std::string, std::string> broken_names;
  std::map<std::string, ConstructionResult> constructions;
  std::string active;
  std::vector<Entry> entries;
  bool halted = false;

  // -- lookup ---------------------------------------------------------------

  const SymSystem& system(const std::string& id) const {
    if (auto it = broken_systems.find(id); it != broken_systems.end())
      throw Unavailable("system '" + id + "' unavailable: " + it->second);
    auto it = systems.find(id);
    if (it == systems.end()) throw std::invalid_argument("unknown system '" + id + "'");
    return *it->second;
  }
  const SymSystem& current() const { return system(active); }

  Name bound(const std::string& id) const {
    if (auto it = broken_names.find(id); it != broken_names.end())
      throw Unavailable("name '" + id + "' unavailable: " + it->second);
    auto it = names.find(id);
    if (it == names.end() || it->second.system != active)
      throw std::invalid_argument("unbound name '" + id + "'");
    return it->second.name;
  }

  static Cond condition(const Node& n, const SymSystem& sys) {
    if (n.kind == Node::Kind::Ident && n.text == "top") return sys.poset().top();
    return sys.poset().lookup(n.text);
  }

  Formula formula(const Node& n, const SymSystem& sys) const {
    const dsl::FormulaAst ast = dsl::parse_formula(n.text, n.pos);
    return dsl::to_formula(ast, sys.names(), [&](const std::string& id) { return bound(id); });
  }

  // -- systems --------------------------------------------------------------

  std::unique_ptr<SymSystem> build(const Node& n) const {
    const Limits& limits = config.limits;
    if (n.text == "cohen") {
      CohenSpec spec;
      for (const Node& a : n.args()) {
        const std::string& key = a.kids[0].text;
        const Node& v = a.kids[1];
        if (key == "indices") spec.indices = number(v);
        else if (key == "bits") spec.bits = number(v);
        else if (key == "support") spec.support = number(v);
        else if (key == "fix") spec.fix_bound = number(v);
        else if (key == "base") {
          std::vector<std::vector<unsigned>> sets;
          for (const Node& b : v.kids) sets.push_back(numbers(b));
          spec.base_sets = std::move(sets);
        }
      }
      return CohenSystem::make(spec, limits);
    }
    if (n.text == "wreath") {
      WreathSpec spec;
      for (const Node& a : n.args()) {
        const std::string& key = a.kids[0].text;
        const Node& v = a.kids[1];
        if (key == "structure") spec.structure = structure(v);
        else if (key == "columns") spec.columns = number(v);
        else if (key == "values") spec.values = number(v);
        else if (key == "support") spec.support = number(v);
        else if (key == "fix_rows") spec.fix_rows = number(v);
        else if (key == "fix_cols") spec.fix_columns = number(v);
      }
      return WreathSystem::make(spec, limits);
    }
    if (n.text == "product") return product_system(system(n.args()[0].text), system(n.args()[1].text), limits);
    // trivial_full(poset={...})
    std::vector<std::string> labels;
    std::map<std::string, std::size_t> index;
    std::vector<std::pair<std::size_t, std::size_t>> below;
    std::function<std::size_t(const Node&)> visit = [&](const Node& item) -> std::size_t {
      if (item.kind == Node::Kind::Binary) {
        const std::size_t lo = visit(item.kids[0]);
        const std::size_t hi = visit(item.kids[1]);
        below.emplace_back(lo, hi);
        return hi;
      }
      auto [it, fresh] = index.emplace(item.text, labels.size());
      if (fresh) labels.push_back(item.text);
      return it->second;
    };
    for (const Node& item : n.args()[0].kids[1].kids) visit(item);
    auto poset = std::make_shared<const FinPoset>(FinPoset::from_covers(labels, below, limits));
    return trivial_full_system(poset, limits);
  }

  static FinStructure structure(const Node& n) {
    if (n.text == "pure") return FinStructure::pure(number(n.args()[0]));
    unsigned size = 0;
    std::vector<Relation> relations;
    for (const Node& a : n.args()) {
      const Node& key = a.kids[0];
      if (key.kind == Node::Kind::Ident) {
        size = number(a.kids[1]);
        continue;
      }
      Relation r;
      r.name = key.kids[0].text;
      r.arity = number(key.kids[1]);
      for (const Node& t : a.kids[1].kids) {
        std::vector<unsigned> tuple;
        for (const Node& x : t.kids) tuple.push_back(number(x));
        r.tuples.insert(std::move(tuple));
      }
      relations.push_back(std::move(r));
    }
    return FinStructure(size, std::move(relations));
  }

  static Json system_json(const SymSystem& sys) {
    Json out;
    out["kind"] = sys.kind();
    out["conditions"] = sys.poset().size();
    out["group_order"] = sys.group().order();
    Json base = Json::array();
    for (std::size_t i = 0; i < sys.filter().base().size() && i < kListCap; ++i) base.push_back(sys.filter().label(i));
    out["base"] = base;
    out["base_size"] = sys.filter().base().size();
    out["degenerate"] = sys.degenerate();
    return out;
  }

  // -- names ----------------------------------------------------------------

  Name name(const Node& n, const SymSystem& sys, std::optional<ConstructionResult>* construction = nullptr) {
    NameStore& store = sys.names();
    switch (n.kind) {
      case Node::Kind::Ident:
        if (n.text == "empty") return store.empty();
        if (n.text == "A_name") return dynamic_cast<const WreathSystem&>(sys).all_rows();
        return bound(n.text);
      case Node::Kind::Check:
        return store.check(dsl::hf_value(n.kids[0]));
      default:
        break;
    }
    const std::string& f = n.text;
    const auto& args = n.args();
    if (f == "gen") {
      if (const auto* c = dynamic_cast<const CohenSystem*>(&sys)) return c->gen(number(args[0]));
      return dynamic_cast<const WreathSystem&>(sys).gen(number(args[0]), number(args[1]));
    }
    if (f == "a") return dynamic_cast<const WreathSystem&>(sys).row(number(args[0]));
    if (f == "rel") return dynamic_cast<const WreathSystem&>(sys).relation_name(args[0].text);
    if (f == "bullet") {
      std::vector<Name> members;
      for (const Node& a : args) members.push_back(name(a, sys));
      return store.bullet_set(members);
    }
    if (f == "pair") {
      const Name x = name(args[0], sys);
      return store.bullet_pair(x, name(args[1], sys));
    }
    if (f == "restrict") return sys.forcing().restrict(name(args[0], sys), condition(args[1], sys));
    if (f == "seq" || f == "mix") {
      ConstructionResult r;
      if (f == "seq") {
        std::vector<std::pair<unsigned, Name>> entries;
        for (const Node& a : args) entries.emplace_back(number(a.kids[0]), name(a.kids[1], sys));
        r = seq_name(sys, entries);
      } else {
        std::vector<std::pair<Cond, Name>> entries;
        for (const Node& a : args) entries.emplace_back(condition(a.kids[0], sys), name(a.kids[1], sys));
        r = mix(sys, entries);
      }
      if (construction) *construction = r;
      return r.name;
    }
    throw std::invalid_argument("unknown name constructor '" + f + "'");
  }

  static Json name_json(const SymSystem& sys, Name x) {
    return {{"rank", x.rank()}, {"entries", x.entries().size()}, {"name", capped(sys.names().render(x))}};
  }

  static Json construction_json(const SymSystem& sys, const ConstructionResult& r) {
    Json out;
    out["certified"] = r.certificate.has_value();
    if (r.certificate) {
      out["base"] = sys.filter().label(r.certificate->base_index);
      out["subgroup"] = describe_subgroup(sys, r.certificate->subgroup);
    } else {
      out["diagnostic"] = r.diagnostic;
    }
    return out;
  }

  /// First hereditary constituent of x (x itself first) whose stabilizer
  /// contains no base element.
  static std::optional<Name> hs_witness(const SymSystem& sys, Name x) {
    if (!sys.filter().contains(sys.sym(x))) return x;
    for (Name y : appearing_names(x))
      if (!sys.in_hs(y)) return hs_witness(sys, y);
    return std::nullopt;
  }

  // -- assertions and queries -------------------------------------------------

  const SymSystem& target(const Node& n) const {
    if (n.kind == Node::Kind::Call) return system(n.args()[0].text);
    return current();
  }

  static Json support_json(const SymSystem& sys, const SupportResult& r) {
    Json out;
    out["verdict"] = std::string(to_string(r.verdict));
    if (r.witness) {
      out["witness"] = {{"condition", sys.poset().label(r.witness->condition)},
                        {"row", r.witness->row},
                        {"moved_row", r.witness->moved_row},
                        {"structure_perm", cycles(r.witness->structure_perm)}};
    }
    if (!r.detail.empty()) out["detail"] = r.detail;
    return out;
  }

  static Json tenacity_json(const SymSystem& sys, const TenacityReport& r) {
    Json out;
    out["all"] = r.all;
    out["dense"] = r.dense;
    out["tenacious"] = r.tenacious.count();
    out["non_tenacious"] = r.non_tenacious.size();
    if (!r.non_tenacious.empty()) out["examples"] = labels(sys.poset(), r.non_tenacious);
    return out;
  }

  /// Truth value of an assertion; nullopt when undecided.
  std::optional<bool> predicate(const Node& n, Json& details) {
    const std::string& f = n.text;
    if (f == "normal") {
      const SymSystem& sys = target(n);
      const NormalityResult r = is_normal(sys);
      details = normality_json(sys, r);
      return r.normal;
    }
    if (f == "tenacious") {
      const SymSystem& sys = target(n);
      const TenacityReport r = tenacity_report(sys);
      details = tenacity_json(sys, r);
      return r.all;
    }
    if (f == "directed") {
      const SymSystem& sys = target(n);
      const auto v = sys.filter().directedness_violation();
      details["directed"] = !v;
      if (v) details["witness"] = {sys.filter().label(v->first), sys.filter().label(v->second)};
      return !v;
    }
    const SymSystem& sys = current();
    const auto& args = n.args();
    if (f == "hs") {
      const Name x = name(args[0], sys);
      const bool hs = sys.in_hs(x);
      details["sym"] = describe_subgroup(sys, sys.sym(x));
      if (!hs) {
        const Name w = *hs_witness(sys, x);
        details["witness"] = {{"name", capped(sys.names().render(w))}, {"sym_order", sys.sym(w).order()}};
      }
      return hs;
    }
    if (f == "certified") {
      const ConstructionResult& r = constructions.at(args[0].text);
      details = construction_json(sys, r);
      return r.certificate.has_value();
    }
    if (f == "equal") {
      const Name x = name(args[0], sys);
      const Name y = name(args[1], sys);
      return x == y;
    }
    if (f == "forces") {
      const Cond p = condition(args[0], sys);
      const Formula phi = formula(args[1], sys);
      details["condition"] = sys.poset().label(p);
      return sys.forcing().forces(p, phi);
    }
    if (f == "supported") {
      const auto& w = dynamic_cast<const WreathSystem&>(sys);
      const SupportResult r = support_check(w, name(args[0], sys), numbers(args[1]));
      details = support_json(sys, r);
      if (r.verdict == SupportVerdict::Supported) return true;
      if (r.verdict == SupportVerdict::NotSupported) return false;
      return std::nullopt;
    }
    if (f == "homogeneous") {
      const auto& w = dynamic_cast<const WreathSystem&>(sys);
      const HomogeneityResult r = check_homogeneous(w.structure(), number(args[0]));
      details["homogeneous"] = r.homogeneous;
      if (r.witness) details["witness"] = {{"domain", r.witness->domain}, {"image", r.witness->image}};
      return r.homogeneous;
    }
    throw std::invalid_argument("unknown assertion '" + f + "'");
  }

  Json query(const Node& n) {
    const std::string& f = n.text;
    if (f == "tenacity") {
      const SymSystem& sys = target(n);
      return tenacity_json(sys, tenacity_report(sys));
    }
    if (f == "normal") {
      const SymSystem& sys = target(n);
      return normality_json(sys, is_normal(sys));
    }
    if (f == "system") {
      const SymSystem& sys = target(n);
      Json out = system_json(sys);
      out["normal"] = is_normal(sys).normal;
      out["directed"] = sys.filter().directed();
      return out;
    }
    const SymSystem& sys = current();
    const auto& args = n.args();
    if (f == "stabilizer") {
      const FinGroup h = sys.sym(name(args[0], sys));
      Json out = describe_subgroup(sys, h);
      if (const auto w = sys.filter().witness(h)) out["contains_base"] = sys.filter().label(*w);
      out["in_filter"] = sys.filter().contains(h);
      return out;
    }
    if (f == "show") return name_json(sys, name(args[0], sys));
    if (f == "interpret") {
      const Name x = name(args[0], sys);
      const Oracle oracle(sys.poset());
      Json values = Json::array();
      for (std::size_t i = 0; i < oracle.filters().size() && i < kListCap; ++i) {
        const GenericFilter& g = oracle.filters()[i];
        values.push_back({{"generic", sys.poset().label(g.generator)}, {"value", capped(interpret(x, g).str())}});
      }
      return {{"filters", oracle.filters().size()}, {"values", values}};
    }
    if (f == "forces") {
      const Formula phi = formula(args[0], sys);
      const ConditionSet set = sys.forcing().forcing_set(phi);
      std::vector<Cond> conds;
      for (std::size_t i = set.find_first(); i != ConditionSet::npos; i = set.find_next(i))
        conds.push_back(Cond{static_cast<std::uint32_t>(i)});
      return {{"count", conds.size()}, {"conditions", labels(sys.poset(), conds)},
              {"top", set.test(sys.poset().top().index)}};
    }
    if (f == "support") {
      const auto& w = dynamic_cast<const WreathSystem&>(sys);
      return support_json(sys, support_check(w, name(args[0], sys), numbers(args[1])));
    }
    throw std::invalid_argument("unknown query '" + f + "'");
  }

  Outcome suite(const std::string& id, Json& details) {
    const SymSystem& sys = current();
    const std::vector<Name> pool = suite_names(sys, config.seed);
    SuiteReport r;
    std::size_t formulas = 0;
    if (id == "symmetry_lemma") {
      Rng rng(config.seed);
      const auto family = formula_family(pool, rng, {.connective_samples = 0, .quantifier_samples = 0});
      formulas = family.size();
      r = symmetry_lemma(sys.forcing(), sys.group(), family, config.jobs);
    } else if (id == "oracle_equivalence") {
      Rng rng(config.seed);
      const auto family = formula_family(pool, rng);
      formulas = family.size();
      r = oracle_equivalence(sys.forcing(), family, config.jobs);
    } else if (id == "equivariance") {
      r = equivariance(sys, pool, config.jobs);
    } else {
      r = restriction_identities(sys.forcing(), pool, config.jobs);
    }
    details = suite_json(r, pool.size(), formulas);
    return r.passed() ? Outcome::Pass : Outcome::Fail;
  }

  // -- statements -------------------------------------------------------------

  Outcome dispatch(const Statement& s, Json& details) {
    switch (s.kind) {
      case Statement::Kind::System: {
        active = s.id;
        auto sys = build(s.body);
        details = system_json(*sys);
        systems[s.id] = std::move(sys);
        return Outcome::Pass;
      }
      case Statement::Kind::Use:
        active = s.id;
        details = {{"system", s.id}, {"kind", current().kind()}};
        return Outcome::Pass;
      case Statement::Kind::Name: {
        const SymSystem& sys = current();
        std::optional<ConstructionResult> construction;
        const Name x = name(s.body, sys, &construction);
        names[s.id] = Bound{active, x};
        details = name_json(sys, x);
        if (construction) {
          details["construction"] = construction_json(sys, *construction);
          constructions[s.id] = std::move(*construction);
        }
        return Outcome::Pass;
      }
      case Statement::Kind::Assert: {
        const std::optional<bool> value = predicate(s.body, details);
        if (details.contains("verdict") && details["verdict"] == "contradiction") return Outcome::Fail;
        if (!value) return Outcome::Inconclusive;
        details["value"] = *value;
        return *value != s.negated ? Outcome::Pass : Outcome::Fail;
      }
      case Statement::Kind::Query:
        details = query(s.body);
        return Outcome::Pass;
      case Statement::Kind::Suite:
        return suite(s.id, details);
    }
    return Outcome::Error;
  }

  void mark_unavailable(const Statement& s, const std::string& reason) {
    if (s.kind == Statement::Kind::System) broken_systems[s.id] = reason;
    if (s.kind == Statement::Kind::Name) broken_names[s.id] = reason;
  }

  void execute(const Statement& s, std::size_t index) {
    Json entry;
    entry["index"] = index;
    entry["line"] = s.pos.line;
    entry["kind"] = std::string(dsl::to_string(s.kind));
    entry["statement"] = dsl::render(s);
    Json details = Json::object();
    Outcome outcome = Outcome::Skipped;
    const auto start = std::chrono::steady_clock::now();
    if (!halted) {
      try {
        outcome = dispatch(s, details);
      } catch (const CapExceeded& e) {
        outcome = Outcome::Inconclusive;
        details = {{"reason", e.what()}, {"size", e.size()}, {"cap", e.cap()}};
        mark_unavailable(s, e.what());
      } catch (const Unavailable& e) {
        outcome = Outcome::Inconclusive;
        details = {{"reason", e.what()}};
        mark_unavailable(s, e.what());
      } catch (const std::exception& e) {
        outcome = Outcome::Error;
        details = {{"reason", e.what()}};
        halted = true;
      }
    }
    entry["outcome"] = outcome_name(outcome);
    entry["details"] = details;
    if (config.timing)
      entry["millis"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    entries.push_back({std::move(entry), outcome});
  }

  std::map<Outcome, std::size_t> counts() const {
    std::map<Outcome, std::size_t> out;
    for (const Entry& e : entries) ++out[e.outcome];
    return out;
  }
};

Session::Session(RunConfig config) : state_(std::make_unique<State>()) { state_->config = config; }
Session::~Session() = default;

void Session::run(const dsl::Document& doc) {
  for (const Statement& s : doc.statements) state_->execute(s, state_->entries.size() + 1);
}

int Session::exit_code() const {
  auto c = state_->counts();
  if (c[Outcome::Error] || c[Outcome::Skipped]) return kDocumentError;
  if (c[Outcome::Fail]) return kAssertionFailed;
  if (c[Outcome::Inconclusive]) return kInconclusive;
  return kAllPass;
}

namespace {

Json config_json(const RunConfig& config) {
  return {{"seed", config.seed},
          {"max_poset", config.limits.max_poset},
          {"max_group", config.limits.max_group},
          {"rank_cap", config.limits.rank_cap}};
}

}  // namespace

Json Session::report() const {
  Json out;
  out["format"] = "symext-report/1";
  out["config"] = config_json(state_->config);
  Json statements = Json::array();
  for (const auto& e : state_->entries) statements.push_back(e.json);
  out["statements"] = statements;
  auto c = state_->counts();
  out["summary"] = {{"statements", state_->entries.size()},
                    {"pass", c[Outcome::Pass]},
                    {"fail", c[Outcome::Fail]},
                    {"inconclusive", c[Outcome::Inconclusive]},
                    {"error", c[Outcome::Error]},
                    {"skipped", c[Outcome::Skipped]},
                    {"exit_code", exit_code()}};
  return out;
}

Json Session::force(std::string_view condition, std::string_view formula) {
  if (state_->active.empty()) throw std::invalid_argument("the document declares no system");
  const SymSystem& sys = state_->current();
  Node cond;
  cond.kind = Node::Kind::String;
  cond.text = std::string(condition);
  Node phi = cond;
  phi.text = std::string(formula);
  const Cond p = condition == "top" ? sys.poset().top() : sys.poset().lookup(condition);
  const Formula f = state_->formula(phi, sys);
  return {{"system", state_->active},
          {"condition", sys.poset().label(p)},
          {"formula", capped(f.str(sys.names()))},
          {"forces", sys.forcing().forces(p, f)}};
}

Json parse_error_report(const dsl::ParseError& error, const RunConfig& config) {
  Json out;
  out["format"] = "symext-report/1";
  out["config"] = config_json(config);
  out["error"] = {{"line", error.position().line}, {"column", error.position().column}, {"message", error.message()}};
  out["statements"] = Json::array();
  out["summary"] = {{"statements", 0}, {"pass", 0}, {"fail", 0}, {"inconclusive", 0},
                    {"error", 1}, {"skipped", 0}, {"exit_code", static_cast<int>(kDocumentError)}};
  return out;
}

RunOutput run_document(std::string_view text, const RunConfig& config) {
  dsl::Document doc;
  try {
    doc = dsl::parse_spec(text);
  } catch (const dsl::ParseError& e) {
    return {parse_error_report(e, config), kDocumentError};
  }
  Session session(config);
  session.run(doc);
  return {session.report(), session.exit_code()};
}

namespace {

std::string scalar(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

std::string render_human(const Json& report) {
  std::ostringstream out;
  if (report.contains("error")) {
    const Json& e = report["error"];
    out << "parse error at " << e["line"].dump() << ":" << e["column"].dump() << ": " << scalar(e["message"]) << "\n";
  }
  const Json& statements = report["statements"];
  if (!statements.empty()) {
    out << "  #  line  outcome       statement\n";
    for (const Json& s : statements) {
      char row[64];
      std::snprintf(row, sizeof row, "%3s  %4s  %-12s  ", s["index"].dump().c_str(), s["line"].dump().c_str(),
                    s["outcome"].get<std::string>().c_str());
      out << row << scalar(s["statement"]) << "\n";
      for (const auto& [key, value] : s["details"].items()) out << "                         " << key << ": " << scalar(value) << "\n";
      if (s.contains("millis")) out << "                         millis: " << s["millis"].dump() << "\n";
    }
  }
  const Json& sum = report["summary"];
  out << sum["statements"].dump() << " statements: " << sum["pass"].dump() << " pass, " << sum["fail"].dump()
      << " fail, " << sum["inconclusive"].dump() << " inconclusive, " << sum["error"].dump() << " error, "
      << sum["skipped"].dump() << " skipped; exit " << sum["exit_code"].dump() << "\n";
  return out.str();
}

}  // namespace symext::cli
