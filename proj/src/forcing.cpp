#include "symext/forcing.hpp"

#include <algorithm>
#include <stdexcept>

namespace symext {

struct Formula::Node {
  Kind kind;
  Term a, b;
  std::vector<Formula> kids;
  unsigned slot = 0;
};

Formula Formula::in(Term x, Term y) {
  return Formula(std::make_shared<const Node>(Node{Kind::In, std::move(x), std::move(y), {}, 0}));
}

Formula Formula::eq(Term x, Term y) {
  return Formula(std::make_shared<const Node>(Node{Kind::Eq, std::move(x), std::move(y), {}, 0}));
}

Formula Formula::negate(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, {}, {std::move(f)}, 0}));
}

Formula Formula::conj(Formula a, Formula b) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::And, {}, {}, {std::move(a), std::move(b)}, 0}));
}

Formula Formula::disj(Formula a, Formula b) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Or, {}, {}, {std::move(a), std::move(b)}, 0}));
}

Formula Formula::exists(unsigned slot, Term bound, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Exists, std::move(bound), {}, {std::move(body)}, slot}));
}

Formula Formula::forall(unsigned slot, Term bound, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Forall, std::move(bound), {}, {std::move(body)}, slot}));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const Term& Formula::lhs() const { return node_->a; }
const Term& Formula::rhs() const { return node_->b; }
const Formula& Formula::left() const { return node_->kids.at(0); }
const Formula& Formula::right() const { return node_->kids.at(1); }
unsigned Formula::slot() const { return node_->slot; }

namespace {

bool term_closed(const Term& t, const std::vector<unsigned>& bound) {
  if (const Var* v = std::get_if<Var>(&t))
    return std::find(bound.begin(), bound.end(), v->slot) != bound.end();
  return std::get<Name>(t).valid();
}

bool closed_rec(const Formula& f, std::vector<unsigned>& bound) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::In:
    case K::Eq:
      return term_closed(f.lhs(), bound) && term_closed(f.rhs(), bound);
    case K::Not:
      return closed_rec(f.left(), bound);
    case K::And:
    case K::Or:
      return closed_rec(f.left(), bound) && closed_rec(f.right(), bound);
    case K::Exists:
    case K::Forall: {
      if (!term_closed(f.lhs(), bound)) return false;
      bound.push_back(f.slot());
      bool ok = closed_rec(f.left(), bound);
      bound.pop_back();
      return ok;
    }
  }
  return false;
}

unsigned max_slot(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::In:
    case K::Eq:
      return 0;
    case K::Not:
      return max_slot(f.left());
    case K::And:
    case K::Or:
      return std::max(max_slot(f.left()), max_slot(f.right()));
    case K::Exists:
    case K::Forall:
      return std::max(f.slot(), max_slot(f.left()));
  }
  return 0;
}

Term map_term(const Term& t, const std::function<Name(Name)>& fn) {
  if (const Name* n = std::get_if<Name>(&t)) return fn(*n);
  return t;
}

std::string term_str(const Term& t, const NameStore& store) {
  if (const Var* v = std::get_if<Var>(&t)) return "v" + std::to_string(v->slot);
  return store.render(std::get<Name>(t));
}

}  // namespace

bool Formula::closed() const {
  std::vector<unsigned> bound;
  return closed_rec(*this, bound);
}

Formula Formula::map_names(const std::function<Name(Name)>& fn) const {
  switch (kind()) {
    case Kind::In:
      return in(map_term(lhs(), fn), map_term(rhs(), fn));
    case Kind::Eq:
      return eq(map_term(lhs(), fn), map_term(rhs(), fn));
    case Kind::Not:
      return negate(left().map_names(fn));
    case Kind::And:
      return conj(left().map_names(fn), right().map_names(fn));
    case Kind::Or:
      return disj(left().map_names(fn), right().map_names(fn));
    case Kind::Exists:
      return exists(slot(), map_term(lhs(), fn), left().map_names(fn));
    case Kind::Forall:
      return forall(slot(), map_term(lhs(), fn), left().map_names(fn));
  }
  return *this;
}

std::string Formula::str(const NameStore& store) const {
  switch (kind()) {
    case Kind::In:
      return term_str(lhs(), store) + " in " + term_str(rhs(), store);
    case Kind::Eq:
      return term_str(lhs(), store) + " = " + term_str(rhs(), store);
    case Kind::Not:
      return "not (" + left().str(store) + ")";
    case Kind::And:
      return "(" + left().str(store) + ") and (" + right().str(store) + ")";
    case Kind::Or:
      return "(" + left().str(store) + ") or (" + right().str(store) + ")";
    case Kind::Exists:
      return "exists v" + std::to_string(slot()) + " in " + term_str(lhs(), store) + " (" +
             left().str(store) + ")";
    case Kind::Forall:
      return "forall v" + std::to_string(slot()) + " in " + term_str(lhs(), store) + " (" +
             left().str(store) + ")";
  }
  return {};
}

// ---------------------------------------------------------------------------

namespace {
constexpr std::uint32_t kMember = 0;
constexpr std::uint32_t kEqual = 1;
}  // namespace

Forcing::Forcing(NameStore& store) : store_(store) {}

std::shared_ptr<const ConditionSet> Forcing::lookup(const Key& key) const {
  std::lock_guard lock(mutex_);
  auto it = memo_.find(key);
  return it == memo_.end() ? nullptr : it->second;
}

std::shared_ptr<const ConditionSet> Forcing::publish(const Key& key, ConditionSet value) const {
  auto fresh = std::make_shared<const ConditionSet>(std::move(value));
  std::lock_guard lock(mutex_);
  auto [it, inserted] = memo_.emplace(key, fresh);
  return it->second;
}

std::size_t Forcing::memo_size() const {
  std::lock_guard lock(mutex_);
  return memo_.size();
}

std::shared_ptr<const ConditionSet> Forcing::member(Name x, Name y) const {
  const Key key{kMember, x.id(), y.id()};
  if (auto hit = lookup(key)) return hit;
  const FinPoset& P = poset();
  // q belongs to d iff q ≤ r and q ⊩ x = z for some ⟨r, z⟩ ∈ y.
  ConditionSet d = P.empty_set();
  for (const NameEntry& e : y.entries()) d |= P.below(e.cond) & *equal(x, e.name);
  return publish(key, P.dense_below(d));
}

std::shared_ptr<const ConditionSet> Forcing::equal(Name x, Name y) const {
  const FinPoset& P = poset();
  if (x == y) {
    // Canonical ids coincide: every condition forces equality.
    const Key key{kEqual, x.id(), y.id()};
    if (auto hit = lookup(key)) return hit;
    return publish(key, P.full_set());
  }
  const Key key{kEqual, std::min(x.id(), y.id()), std::max(x.id(), y.id())};
  if (auto hit = lookup(key)) return hit;
  // p fails iff some q ≤ p, q ≤ r for an entry ⟨r, z⟩ of one side with
  // q not forcing z into the other side.
  ConditionSet bad = P.empty_set();
  for (const NameEntry& e : x.entries()) bad |= P.below(e.cond) - *member(e.name, y);
  for (const NameEntry& e : y.entries()) bad |= P.below(e.cond) - *member(e.name, x);
  return publish(key, ~P.up_closure(bad));
}

Name Forcing::resolve(const Term& t, const std::vector<Name>& env) const {
  if (const Var* v = std::get_if<Var>(&t)) return env.at(v->slot);
  return std::get<Name>(t);
}

ConditionSet Forcing::eval(const Formula& phi, std::vector<Name>& env) const {
  const FinPoset& P = poset();
  using K = Formula::Kind;
  switch (phi.kind()) {
    case K::In:
      return *member(resolve(phi.lhs(), env), resolve(phi.rhs(), env));
    case K::Eq:
      return *equal(resolve(phi.lhs(), env), resolve(phi.rhs(), env));
    case K::Not:
      return ~P.up_closure(eval(phi.left(), env));
    case K::And:
      return eval(phi.left(), env) & eval(phi.right(), env);
    case K::Or:
      return P.dense_below(eval(phi.left(), env) | eval(phi.right(), env));
    case K::Exists: {
      const Name bound = resolve(phi.lhs(), env);
      ConditionSet d = P.empty_set();
      for (const NameEntry& e : bound.entries()) {
        env[phi.slot()] = e.name;
        d |= P.below(e.cond) & eval(phi.left(), env);
      }
      return P.dense_below(d);
    }
    case K::Forall: {
      const Name bound = resolve(phi.lhs(), env);
      ConditionSet bad = P.empty_set();
      for (const NameEntry& e : bound.entries()) {
        env[phi.slot()] = e.name;
        bad |= P.below(e.cond) - eval(phi.left(), env);
      }
      return ~P.up_closure(bad);
    }
  }
  throw std::logic_error("unreachable formula kind");
}

ConditionSet Forcing::forcing_set(const Formula& phi) const {
  if (!phi.closed()) throw std::invalid_argument("open formula");
  std::vector<Name> env(max_slot(phi) + 1);
  return eval(phi, env);
}

bool Forcing::forces(Cond p, const Formula& phi) const {
  poset().at(p.index);
  return forcing_set(phi).test(p.index);
}

Name Forcing::restrict(Name x, Cond p) const {
  const FinPoset& P = poset();
  const ConditionSet& below_p = P.below(p);
  std::vector<NameEntry> entries;
  for (Name y : appearing_names(x)) {
    ConditionSet ok = below_p & *member(y, x);
    for (std::size_t q = ok.find_first(); q != ConditionSet::npos; q = ok.find_next(q))
      entries.push_back({Cond{static_cast<std::uint32_t>(q)}, y});
  }
  return store_.make(std::move(entries));
}

// ---------------------------------------------------------------------------

namespace {

const HfSet& interpret_rec(Name x, const GenericFilter& g, std::unordered_map<Name, HfSet>& memo) {
  if (auto it = memo.find(x); it != memo.end()) return it->second;
  std::vector<HfSet> members;
  for (const NameEntry& e : x.entries())
    if (g.contains(e.cond)) members.push_back(interpret_rec(e.name, g, memo));
  return memo.emplace(x, HfSet::of(std::move(members))).first->second;
}

}  // namespace

HfSet interpret(Name x, const GenericFilter& g) {
  std::unordered_map<Name, HfSet> memo;
  return interpret_rec(x, g, memo);
}

Oracle::Oracle(const FinPoset& poset)
    : poset_(poset), filters_(poset.generic_filters()), cache_(filters_.size()) {}

const HfSet& Oracle::value(std::size_t filter, Name x) {
  return interpret_rec(x, filters_.at(filter), cache_[filter]);
}

const HfSet& Oracle::term_value(std::size_t filter, const Term& t, const std::vector<HfSet>& env) {
  if (const Var* v = std::get_if<Var>(&t)) return env.at(v->slot);
  return value(filter, std::get<Name>(t));
}

bool Oracle::eval(std::size_t filter, const Formula& phi, std::vector<HfSet>& env) {
  using K = Formula::Kind;
  switch (phi.kind()) {
    case K::In:
      return term_value(filter, phi.rhs(), env).contains(term_value(filter, phi.lhs(), env));
    case K::Eq:
      return term_value(filter, phi.lhs(), env) == term_value(filter, phi.rhs(), env);
    case K::Not:
      return !eval(filter, phi.left(), env);
    case K::And:
      return eval(filter, phi.left(), env) && eval(filter, phi.right(), env);
    case K::Or:
      return eval(filter, phi.left(), env) || eval(filter, phi.right(), env);
    case K::Exists:
    case K::Forall: {
      // Copy: the bound may itself be a variable slot that the loop rebinds.
      const HfSet bound = term_value(filter, phi.lhs(), env);
      const bool want = phi.kind() == K::Exists;
      for (const HfSet& v : bound.members()) {
        env[phi.slot()] = v;
        if (eval(filter, phi.left(), env) == want) return want;
      }
      return !want;
    }
  }
  throw std::logic_error("unreachable formula kind");
}

bool Oracle::holds(std::size_t filter, const Formula& phi) {
  if (!phi.closed()) throw std::invalid_argument("open formula");
  std::vector<HfSet> env(max_slot(phi) + 1);
  return eval(filter, phi, env);
}

bool Oracle::forces(Cond p, const Formula& phi) {
  poset_.at(p.index);
  for (std::size_t i = 0; i < filters_.size(); ++i)
    if (filters_[i].contains(p) && !holds(i, phi)) return false;
  return true;
}

}  // namespace symext
