#include "symext/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

namespace symext::dsl {

ParseError::ParseError(Position pos, const std::string& message)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
      pos_(pos),
      message_(message) {}

bool operator==(const Node& a, const Node& b) {
  return a.kind == b.kind && a.text == b.text && a.kids == b.kids;
}

bool operator==(const Statement& a, const Statement& b) {
  return a.kind == b.kind && a.id == b.id && a.negated == b.negated && a.body == b.body;
}

std::string_view to_string(Statement::Kind kind) {
  switch (kind) {
    case Statement::Kind::System: return "system";
    case Statement::Kind::Use: return "use";
    case Statement::Kind::Name: return "name";
    case Statement::Kind::Assert: return "assert";
    case Statement::Kind::Query: return "query";
    case Statement::Kind::Suite: return "suite";
  }
  return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum class Kind { Ident, Number, String, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  Position pos;
  Position content;  // first character inside a string literal
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::End: return "end of input";
    case Token::Kind::String: return "string \"" + t.text + "\"";
    default: return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip();
      Token t;
      t.pos = pos_;
      if (i_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = text_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Token::Kind::Ident;
        while (i_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_'))
          t.text += advance();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Token::Kind::Number;
        while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) t.text += advance();
        if (t.text.size() > 9) throw ParseError(t.pos, "number too large: " + t.text);
      } else if (c == '"') {
        t.kind = Token::Kind::String;
        advance();
        t.content = pos_;
        while (true) {
          if (i_ >= text_.size() || text_[i_] == '\n') throw ParseError(t.pos, "unterminated string");
          char d = advance();
          if (d == '"') break;
          if (d == '\\') {
            if (i_ >= text_.size()) throw ParseError(t.pos, "unterminated string");
            d = advance();
            if (d != '"' && d != '\\') throw ParseError(t.pos, std::string("unknown escape \\") + d);
          }
          t.text += d;
        }
      } else if (std::string_view("(){}[],;=:</!").find(c) != std::string_view::npos) {
        t.kind = Token::Kind::Punct;
        t.text = std::string(1, advance());
      } else {
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    const char c = text_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }
  void skip() {
    while (i_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[i_]))) {
        advance();
      } else if (text_[i_] == '#') {
        while (i_ < text_.size() && text_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t i_ = 0;
  Position pos_;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Document document() {
    Document doc;
    while (peek().kind != Token::Kind::End) doc.statements.push_back(statement());
    return doc;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  Token next() {
    Token t = peek();
    if (i_ < toks_.size() - 1) ++i_;
    return t;
  }
  bool is_punct(const char* p) const { return peek().kind == Token::Kind::Punct && peek().text == p; }
  Token expect_punct(const char* p) {
    if (!is_punct(p)) throw ParseError(peek().pos, std::string("expected '") + p + "', got " + describe(peek()));
    return next();
  }
  Token expect_ident(const std::string& what) {
    if (peek().kind != Token::Kind::Ident) throw ParseError(peek().pos, "expected " + what + ", got " + describe(peek()));
    return next();
  }

  Statement statement() {
    const Token head = peek();
    if (head.kind != Token::Kind::Ident)
      throw ParseError(head.pos, "expected a statement, got " + describe(head));
    Statement s;
    s.pos = head.pos;
    const std::string& kw = head.text;
    if (kw == "system" || kw == "name") {
      next();
      s.kind = kw == "system" ? Statement::Kind::System : Statement::Kind::Name;
      s.id = expect_ident("an identifier").text;
      expect_punct("=");
      s.body = expr();
    } else if (kw == "use") {
      next();
      s.kind = Statement::Kind::Use;
      s.id = expect_ident("a system identifier").text;
    } else if (kw == "assert") {
      next();
      s.kind = Statement::Kind::Assert;
      if (is_punct("!")) {
        next();
        s.negated = true;
      }
      s.body = expr();
    } else if (kw == "query") {
      next();
      s.kind = Statement::Kind::Query;
      s.body = expr();
    } else if (kw == "suite") {
      next();
      s.kind = Statement::Kind::Suite;
      s.id = expect_ident("a suite name").text;
    } else {
      throw ParseError(head.pos, "unknown statement keyword '" + kw +
                                     "' (expected system, use, name, assert, query or suite)");
    }
    expect_punct(";");
    return s;
  }

  Node expr() {
    Node left = order();
    if (is_punct("=") || is_punct(":")) {
      const Token op = next();
      Node right = expr();
      return binary(op, std::move(left), std::move(right));
    }
    return left;
  }
  Node order() {
    Node left = slash();
    while (is_punct("<")) {
      const Token op = next();
      left = binary(op, std::move(left), slash());
    }
    return left;
  }
  Node slash() {
    Node left = primary();
    if (is_punct("/")) {
      const Token op = next();
      left = binary(op, std::move(left), primary());
    }
    return left;
  }
  static Node binary(const Token& op, Node l, Node r) {
    Node n;
    n.kind = Node::Kind::Binary;
    n.text = op.text;
    n.pos = l.pos;
    n.kids.push_back(std::move(l));
    n.kids.push_back(std::move(r));
    return n;
  }

  Node primary() {
    const Token t = peek();
    Node n;
    n.pos = t.pos;
    switch (t.kind) {
      case Token::Kind::Number:
        next();
        n.kind = Node::Kind::Number;
        n.text = t.text;
        return n;
      case Token::Kind::String:
        next();
        n.kind = Node::Kind::String;
        n.text = t.text;
        n.pos = t.content;
        return n;
      case Token::Kind::Ident:
        next();
        if (t.text == "check") {
          n.kind = Node::Kind::Check;
          n.text = "check";
          n.kids.push_back(hf());
          return n;
        }
        if (is_punct("(") || is_punct("{") || is_punct("[")) {
          n.kind = Node::Kind::Call;
          n.text = t.text;
          n.kids.push_back(group());
          return n;
        }
        n.kind = Node::Kind::Ident;
        n.text = t.text;
        return n;
      case Token::Kind::Punct:
        if (t.text == "(" || t.text == "{" || t.text == "[") return group();
        break;
      case Token::Kind::End:
        break;
    }
    throw ParseError(t.pos, "expected an expression, got " + describe(t));
  }

  Node group() {
    const Token open = next();
    Node n;
    n.pos = open.pos;
    const char* close = ")";
    if (open.text == "(") {
      n.kind = Node::Kind::Parens;
    } else if (open.text == "{") {
      n.kind = Node::Kind::Braces;
      close = "}";
    } else {
      n.kind = Node::Kind::Brackets;
      close = "]";
    }
    if (!is_punct(close)) {
      n.kids.push_back(expr());
      while (is_punct(",")) {
        next();
        n.kids.push_back(expr());
      }
    }
    expect_punct(close);
    return n;
  }

  Node hf() {
    const Token t = peek();
    if (t.kind == Token::Kind::Number) {
      next();
      Node n;
      n.kind = Node::Kind::Number;
      n.text = t.text;
      n.pos = t.pos;
      return n;
    }
    if (t.kind == Token::Kind::Punct && t.text == "{") {
      next();
      Node n;
      n.kind = Node::Kind::Braces;
      n.pos = t.pos;
      if (!is_punct("}")) {
        n.kids.push_back(hf());
        while (is_punct(",")) {
          next();
          n.kids.push_back(hf());
        }
      }
      expect_punct("}");
      return n;
    }
    throw ParseError(t.pos, "expected a natural number or {...} after check, got " + describe(t));
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

// ---------------------------------------------------------------------------
// Resolution

struct SysInfo {
  std::string kind;
  unsigned indices = 0;  // cohen
  unsigned rows = 0;     // wreath
  unsigned columns = 0;  // wreath
  std::set<std::string> relations;
};

struct NameInfo {
  std::string system;
  bool constructed = false;  // bound by seq or mix
};

const std::set<std::string> kSuites = {"symmetry_lemma", "oracle_equivalence", "equivariance", "restriction"};

class Resolver {
 public:
  void statement(const Statement& s) {
    switch (s.kind) {
      case Statement::Kind::System:
        if (systems_.contains(s.id)) throw ParseError(s.pos, "system '" + s.id + "' is already defined");
        systems_[s.id] = factory(s.body);
        active_ = s.id;
        break;
      case Statement::Kind::Use:
        if (!systems_.contains(s.id)) throw ParseError(s.pos, "unbound identifier '" + s.id + "'");
        active_ = s.id;
        break;
      case Statement::Kind::Name: {
        require_active(s.pos);
        if (names_.contains(s.id)) throw ParseError(s.pos, "name '" + s.id + "' is already defined");
        if (is_reserved(s.id)) throw ParseError(s.pos, "'" + s.id + "' is reserved");
        name(s.body);
        const bool constructed = s.body.kind == Node::Kind::Call && (s.body.text == "seq" || s.body.text == "mix");
        names_[s.id] = NameInfo{active_, constructed};
        break;
      }
      case Statement::Kind::Assert:
        require_active(s.pos);
        predicate(s.body);
        break;
      case Statement::Kind::Query:
        require_active(s.pos);
        query(s.body);
        break;
      case Statement::Kind::Suite:
        require_active(s.pos);
        if (!kSuites.contains(s.id))
          throw ParseError(s.pos, "unknown suite '" + s.id +
                                      "' (expected symmetry_lemma, oracle_equivalence, equivariance or restriction)");
        break;
    }
  }

 private:
  static bool is_reserved(const std::string& id) { return id == "empty" || id == "A_name" || id == "top"; }

  void require_active(Position pos) const {
    if (active_.empty()) throw ParseError(pos, "no system declared yet");
  }
  const SysInfo& active() const { return systems_.at(active_); }

  static void arity(const Node& call, std::size_t n, const std::string& what) {
    if (call.args().size() != n)
      throw ParseError(call.pos, "arity mismatch: " + what + " takes " + std::to_string(n) + " argument" +
                                     (n == 1 ? "" : "s") + ", got " + std::to_string(call.args().size()));
  }
  static void bracket(const Node& call, Node::Kind kind) {
    if (call.group().kind != kind) {
      const char* want = kind == Node::Kind::Parens ? "(...)" : kind == Node::Kind::Braces ? "{...}" : "[...]";
      throw ParseError(call.pos, call.text + " expects " + want);
    }
  }
  static unsigned number(const Node& n, const std::string& what) {
    if (n.kind != Node::Kind::Number) throw ParseError(n.pos, what + " must be a natural number");
    return static_cast<unsigned>(std::stoul(n.text));
  }
  static void condition(const Node& n) {
    if (n.kind != Node::Kind::Ident && n.kind != Node::Kind::Number && n.kind != Node::Kind::String)
      throw ParseError(n.pos, "expected a condition (identifier, number, quoted label or top)");
  }
  static void number_set(const Node& n, const std::string& what, unsigned bound, const std::string& bound_what) {
    if (n.kind != Node::Kind::Braces) throw ParseError(n.pos, what + " must be a set {...} of naturals");
    for (const Node& k : n.kids)
      if (number(k, what + " element") >= bound)
        throw ParseError(k.pos, what + " element " + k.text + " is out of range (" + bound_what + ")");
  }

  static std::map<std::string, const Node*> kwargs(const Node& call, const std::set<std::string>& allowed) {
    std::map<std::string, const Node*> out;
    for (const Node& a : call.args()) {
      if (a.kind != Node::Kind::Binary || a.text != "=" || a.kids[0].kind != Node::Kind::Ident)
        throw ParseError(a.pos, call.text + " takes keyword arguments key=value");
      const std::string& key = a.kids[0].text;
      if (!allowed.contains(key)) throw ParseError(a.pos, "unknown argument '" + key + "' for " + call.text);
      if (!out.emplace(key, &a.kids[1]).second) throw ParseError(a.pos, "duplicate argument '" + key + "'");
    }
    return out;
  }

  SysInfo factory(const Node& n) {
    if (n.kind != Node::Kind::Call) throw ParseError(n.pos, "expected cohen(...), wreath(...), product(...) or trivial_full(...)");
    SysInfo info;
    info.kind = n.text;
    if (n.text == "cohen") {
      bracket(n, Node::Kind::Parens);
      auto kw = kwargs(n, {"indices", "bits", "support", "fix", "base"});
      info.indices = kw.contains("indices") ? number(*kw["indices"], "indices") : 3;
      for (const char* k : {"bits", "support", "fix"})
        if (kw.contains(k)) number(*kw[k], k);
      if (kw.contains("base")) {
        const Node& b = *kw["base"];
        if (b.kind != Node::Kind::Brackets) throw ParseError(b.pos, "base must be a list [{...}, ...]");
        for (const Node& e : b.kids) number_set(e, "base set", info.indices, "indices=" + std::to_string(info.indices));
      }
    } else if (n.text == "wreath") {
      bracket(n, Node::Kind::Parens);
      auto kw = kwargs(n, {"structure", "columns", "values", "support", "fix_rows", "fix_cols"});
      for (const char* k : {"columns", "values", "support", "fix_rows", "fix_cols"})
        if (kw.contains(k)) number(*kw[k], k);
      info.columns = kw.contains("columns") ? number(*kw["columns"], "columns") : 2;
      info.rows = 2;
      if (kw.contains("structure")) structure(*kw["structure"], info);
    } else if (n.text == "product") {
      bracket(n, Node::Kind::Parens);
      arity(n, 2, "product");
      for (const Node& a : n.args()) {
        if (a.kind != Node::Kind::Ident) throw ParseError(a.pos, "product takes two system identifiers");
        if (!systems_.contains(a.text)) throw ParseError(a.pos, "unbound identifier '" + a.text + "'");
      }
    } else if (n.text == "trivial_full") {
      bracket(n, Node::Kind::Parens);
      auto kw = kwargs(n, {"poset"});
      if (!kw.contains("poset")) throw ParseError(n.pos, "trivial_full requires poset={...}");
      const Node& p = *kw["poset"];
      if (p.kind != Node::Kind::Braces) throw ParseError(p.pos, "poset must be {x<y, ...}");
      for (const Node& item : p.kids) order_item(item);
    } else {
      throw ParseError(n.pos, "unknown system factory '" + n.text + "'");
    }
    return info;
  }

  static void order_item(const Node& n) {
    if (n.kind == Node::Kind::Binary && n.text == "<") {
      order_item(n.kids[0]);
      order_item(n.kids[1]);
      return;
    }
    condition(n);
  }

  static void structure(const Node& n, SysInfo& info) {
    if (n.kind == Node::Kind::Call && n.text == "pure") {
      bracket(n, Node::Kind::Parens);
      arity(n, 1, "pure");
      info.rows = number(n.args()[0], "structure size");
      return;
    }
    if (n.kind != Node::Kind::Call || n.text != "structure")
      throw ParseError(n.pos, "structure must be pure(n) or structure(size=n, R/k=[...], ...)");
    bracket(n, Node::Kind::Parens);
    bool sized = false;
    for (const Node& a : n.args()) {
      if (a.kind != Node::Kind::Binary || a.text != "=")
        throw ParseError(a.pos, "structure takes size=n and R/k=[(...), ...]");
      const Node& key = a.kids[0];
      if (key.kind == Node::Kind::Ident && key.text == "size") {
        info.rows = number(a.kids[1], "size");
        sized = true;
        continue;
      }
      if (key.kind != Node::Kind::Binary || key.text != "/" || key.kids[0].kind != Node::Kind::Ident)
        throw ParseError(key.pos, "relation must be written R/arity");
      const unsigned ar = number(key.kids[1], "arity");
      if (ar == 0) throw ParseError(key.kids[1].pos, "arity must be positive");
      if (!info.relations.insert(key.kids[0].text).second)
        throw ParseError(key.pos, "duplicate relation '" + key.kids[0].text + "'");
      const Node& tuples = a.kids[1];
      if (tuples.kind != Node::Kind::Brackets) throw ParseError(tuples.pos, "relation tuples must be a list [(...), ...]");
      for (const Node& t : tuples.kids) {
        if (t.kind != Node::Kind::Parens) throw ParseError(t.pos, "tuple must be (x, ...)");
        if (t.kids.size() != ar)
          throw ParseError(t.pos, "arity mismatch: relation " + key.kids[0].text + " has arity " + std::to_string(ar));
        for (const Node& x : t.kids) number(x, "tuple element");
      }
    }
    if (!sized) throw ParseError(n.pos, "structure requires size=n");
    for (const Node& a : n.args())
      if (a.kids[0].kind == Node::Kind::Binary)
        for (const Node& t : a.kids[1].kids)
          for (const Node& x : t.kids)
            if (number(x, "tuple element") >= info.rows)
              throw ParseError(x.pos, "tuple element " + x.text + " is outside the universe");
  }

  void name(const Node& n) {
    const SysInfo& sys = active();
    switch (n.kind) {
      case Node::Kind::Ident:
        if (n.text == "empty") return;
        if (n.text == "A_name") {
          if (sys.kind != "wreath") throw ParseError(n.pos, "A_name is only available for wreath systems");
          return;
        }
        bound_name(n);
        return;
      case Node::Kind::Check:
        return;
      case Node::Kind::Call:
        break;
      default:
        throw ParseError(n.pos, "expected a name expression");
    }
    const std::string& f = n.text;
    if (f == "gen") {
      bracket(n, Node::Kind::Parens);
      if (sys.kind == "cohen") {
        arity(n, 1, "gen");
        if (number(n.args()[0], "index") >= sys.indices)
          throw ParseError(n.args()[0].pos, "index out of range (indices=" + std::to_string(sys.indices) + ")");
      } else if (sys.kind == "wreath") {
        arity(n, 2, "gen");
        if (number(n.args()[0], "row") >= sys.rows) throw ParseError(n.args()[0].pos, "row out of range");
        if (number(n.args()[1], "column") >= sys.columns) throw ParseError(n.args()[1].pos, "column out of range");
      } else {
        throw ParseError(n.pos, "gen is not available for " + sys.kind + " systems");
      }
    } else if (f == "a") {
      if (sys.kind != "wreath") throw ParseError(n.pos, "a(m) is only available for wreath systems");
      bracket(n, Node::Kind::Parens);
      arity(n, 1, "a");
      if (number(n.args()[0], "row") >= sys.rows) throw ParseError(n.args()[0].pos, "row out of range");
    } else if (f == "rel") {
      if (sys.kind != "wreath") throw ParseError(n.pos, "rel(R) is only available for wreath systems");
      bracket(n, Node::Kind::Parens);
      arity(n, 1, "rel");
      const Node& r = n.args()[0];
      if (r.kind != Node::Kind::Ident || !sys.relations.contains(r.text))
        throw ParseError(r.pos, "unknown relation '" + r.text + "'");
    } else if (f == "bullet") {
      bracket(n, Node::Kind::Braces);
      for (const Node& a : n.args()) name(a);
    } else if (f == "pair") {
      bracket(n, Node::Kind::Parens);
      arity(n, 2, "pair");
      for (const Node& a : n.args()) name(a);
    } else if (f == "restrict") {
      bracket(n, Node::Kind::Parens);
      arity(n, 2, "restrict");
      name(n.args()[0]);
      condition(n.args()[1]);
    } else if (f == "seq") {
      bracket(n, Node::Kind::Brackets);
      for (const Node& a : n.args()) {
        if (a.kind != Node::Kind::Binary || a.text != ":") throw ParseError(a.pos, "seq entries are index: name");
        number(a.kids[0], "sequence index");
        name(a.kids[1]);
      }
    } else if (f == "mix") {
      bracket(n, Node::Kind::Braces);
      for (const Node& a : n.args()) {
        if (a.kind != Node::Kind::Binary || a.text != ":") throw ParseError(a.pos, "mix entries are condition: name");
        condition(a.kids[0]);
        name(a.kids[1]);
      }
    } else {
      throw ParseError(n.pos, "unknown name constructor '" + f + "'");
    }
  }

  const NameInfo& bound_name(const Node& n) const {
    auto it = names_.find(n.text);
    if (it == names_.end()) throw ParseError(n.pos, "unbound identifier '" + n.text + "'");
    if (it->second.system != active_)
      throw ParseError(n.pos, "name '" + n.text + "' belongs to system '" + it->second.system + "', not '" +
                                  active_ + "'");
    return it->second;
  }

  void formula(const Node& n) {
    if (n.kind != Node::Kind::String) throw ParseError(n.pos, "formula must be a quoted string");
    const FormulaAst ast = parse_formula(n.text, n.pos);
    for (const std::string& id : free_identifiers(ast)) {
      Node ref;
      ref.kind = Node::Kind::Ident;
      ref.text = id;
      ref.pos = n.pos;
      bound_name(ref);
    }
  }

  void system_ref(const Node& call) {
    bracket(call, Node::Kind::Parens);
    arity(call, 1, call.text);
    const Node& a = call.args()[0];
    if (a.kind != Node::Kind::Ident || !systems_.contains(a.text))
      throw ParseError(a.pos, "unbound identifier '" + a.text + "'");
  }

  void wreath_only(const Node& n) const {
    if (active().kind != "wreath") throw ParseError(n.pos, n.text + " is only available for wreath systems");
  }

  void predicate(const Node& n) {
    static const std::set<std::string> system_preds = {"normal", "tenacious", "directed"};
    if (n.kind == Node::Kind::Ident && system_preds.contains(n.text)) return;
    if (n.kind != Node::Kind::Call) throw ParseError(n.pos, "expected an assertion such as hs(x) or normal");
    const std::string& f = n.text;
    if (system_preds.contains(f)) {
      system_ref(n);
      return;
    }
    bracket(n, Node::Kind::Parens);
    if (f == "hs") {
      arity(n, 1, f);
      name(n.args()[0]);
    } else if (f == "certified") {
      arity(n, 1, f);
      const Node& a = n.args()[0];
      if (a.kind != Node::Kind::Ident) throw ParseError(a.pos, "certified takes a name bound by seq or mix");
      if (!bound_name(a).constructed) throw ParseError(a.pos, "'" + a.text + "' is not bound by seq or mix");
    } else if (f == "equal") {
      arity(n, 2, f);
      name(n.args()[0]);
      name(n.args()[1]);
    } else if (f == "forces") {
      arity(n, 2, f);
      condition(n.args()[0]);
      formula(n.args()[1]);
    } else if (f == "supported") {
      wreath_only(n);
      arity(n, 2, f);
      name(n.args()[0]);
      number_set(n.args()[1], "support", active().rows, "rows=" + std::to_string(active().rows));
    } else if (f == "homogeneous") {
      wreath_only(n);
      arity(n, 1, f);
      number(n.args()[0], "homogeneity order");
    } else {
      throw ParseError(n.pos, "unknown assertion '" + f + "'");
    }
  }

  void query(const Node& n) {
    static const std::set<std::string> system_queries = {"tenacity", "normal", "system"};
    if (n.kind == Node::Kind::Ident && system_queries.contains(n.text)) return;
    if (n.kind != Node::Kind::Call) throw ParseError(n.pos, "expected a query such as stabilizer(x) or tenacity");
    const std::string& f = n.text;
    if (system_queries.contains(f)) {
      system_ref(n);
      return;
    }
    bracket(n, Node::Kind::Parens);
    if (f == "stabilizer" || f == "interpret" || f == "show") {
      arity(n, 1, f);
      name(n.args()[0]);
    } else if (f == "forces") {
      arity(n, 1, f);
      formula(n.args()[0]);
    } else if (f == "support") {
      wreath_only(n);
      arity(n, 2, f);
      name(n.args()[0]);
      number_set(n.args()[1], "support", active().rows, "rows=" + std::to_string(active().rows));
    } else {
      throw ParseError(n.pos, "unknown query '" + f + "'");
    }
  }

  std::map<std::string, SysInfo> systems_;
  std::map<std::string, NameInfo> names_;
  std::string active_;
};

// ---------------------------------------------------------------------------
// Formulas

struct FToken {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  Position pos;
};

class FormulaParser {
 public:
  FormulaParser(std::string_view text, Position origin) {
    Position pos = origin;
    std::size_t i = 0;
    auto step = [&] {
      if (text[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
      ++i;
    };
    while (true) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) step();
      FToken t;
      t.pos = pos;
      if (i >= text.size()) {
        toks_.push_back(t);
        break;
      }
      const char c = text[i];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = FToken::Kind::Ident;
        while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
          t.text += text[i];
          step();
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = FToken::Kind::Number;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          t.text += text[i];
          step();
        }
        if (t.text.size() > 9) throw ParseError(t.pos, "number too large: " + t.text);
      } else if (std::string_view("(){},=").find(c) != std::string_view::npos) {
        t.kind = FToken::Kind::Punct;
        t.text = std::string(1, c);
        step();
      } else {
        throw ParseError(pos, std::string("unexpected character '") + c + "' in formula");
      }
      toks_.push_back(std::move(t));
    }
  }

  FormulaAst run() {
    FormulaAst out = disjunction();
    if (peek().kind != FToken::Kind::End) fail("unexpected " + describe(peek()) + " in formula");
    return out;
  }

 private:
  static std::string describe(const FToken& t) {
    return t.kind == FToken::Kind::End ? "end of formula" : "'" + t.text + "'";
  }
  const FToken& peek() const { return toks_[i_]; }
  FToken next() {
    FToken t = toks_[i_];
    if (i_ + 1 < toks_.size()) ++i_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().pos, msg); }
  bool keyword(const char* kw) const { return peek().kind == FToken::Kind::Ident && peek().text == kw; }
  bool punct(const char* p) const { return peek().kind == FToken::Kind::Punct && peek().text == p; }
  void expect(const char* p) {
    if (!punct(p) && !keyword(p)) fail(std::string("expected '") + p + "', got " + describe(peek()));
    next();
  }
  static bool reserved(const std::string& s) {
    static const std::set<std::string> words = {"in", "not", "and", "or", "exists", "forall", "check", "empty"};
    return words.contains(s);
  }

  FormulaAst disjunction() {
    FormulaAst left = conjunction();
    while (keyword("or")) {
      next();
      FormulaAst n;
      n.kind = Formula::Kind::Or;
      n.kids = {std::move(left), conjunction()};
      left = std::move(n);
    }
    return left;
  }
  FormulaAst conjunction() {
    FormulaAst left = unary();
    while (keyword("and")) {
      next();
      FormulaAst n;
      n.kind = Formula::Kind::And;
      n.kids = {std::move(left), unary()};
      left = std::move(n);
    }
    return left;
  }
  FormulaAst unary() {
    if (keyword("not")) {
      next();
      FormulaAst n;
      n.kind = Formula::Kind::Not;
      n.kids.push_back(unary());
      return n;
    }
    if (keyword("exists") || keyword("forall")) {
      FormulaAst n;
      n.kind = next().text == "exists" ? Formula::Kind::Exists : Formula::Kind::Forall;
      if (peek().kind != FToken::Kind::Ident || reserved(peek().text)) fail("expected a variable, got " + describe(peek()));
      n.var = next().text;
      expect("in");
      n.rhs = term();
      expect("(");
      n.kids.push_back(disjunction());
      expect(")");
      return n;
    }
    if (punct("(")) {
      next();
      FormulaAst n = disjunction();
      expect(")");
      return n;
    }
    FormulaAst n;
    n.lhs = term();
    if (keyword("in")) {
      n.kind = Formula::Kind::In;
    } else if (punct("=")) {
      n.kind = Formula::Kind::Eq;
    } else {
      fail("expected 'in' or '=', got " + describe(peek()));
    }
    next();
    n.rhs = term();
    return n;
  }
  FormulaTerm term() {
    FormulaTerm t;
    if (keyword("empty")) {
      next();
      t.kind = FormulaTerm::Kind::Empty;
      return t;
    }
    if (keyword("check")) {
      next();
      t.kind = FormulaTerm::Kind::Check;
      t.value = hf();
      return t;
    }
    if (peek().kind != FToken::Kind::Ident || reserved(peek().text)) fail("expected a name, got " + describe(peek()));
    t.kind = FormulaTerm::Kind::Ident;
    t.ident = next().text;
    return t;
  }
  HfSet hf() {
    if (peek().kind == FToken::Kind::Number) return HfSet::nat(static_cast<unsigned>(std::stoul(next().text)));
    expect("{");
    std::vector<HfSet> members;
    if (!punct("}")) {
      members.push_back(hf());
      while (punct(",")) {
        next();
        members.push_back(hf());
      }
    }
    expect("}");
    return HfSet::of(std::move(members));
  }

  std::vector<FToken> toks_;
  std::size_t i_ = 0;
};

void collect_free(const FormulaAst& ast, std::vector<std::string>& bound, std::vector<std::string>& out) {
  auto see = [&](const FormulaTerm& t) {
    if (t.kind != FormulaTerm::Kind::Ident) return;
    if (std::find(bound.begin(), bound.end(), t.ident) != bound.end()) return;
    if (std::find(out.begin(), out.end(), t.ident) == out.end()) out.push_back(t.ident);
  };
  switch (ast.kind) {
    case Formula::Kind::In:
    case Formula::Kind::Eq:
      see(ast.lhs);
      see(ast.rhs);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      see(ast.rhs);
      bound.push_back(ast.var);
      collect_free(ast.kids[0], bound, out);
      bound.pop_back();
      return;
    default:
      for (const auto& k : ast.kids) collect_free(k, bound, out);
  }
}

Formula build(const FormulaAst& ast, NameStore& store, const std::function<Name(const std::string&)>& resolve,
              std::vector<std::string>& scope) {
  auto term = [&](const FormulaTerm& t) -> Term {
    switch (t.kind) {
      case FormulaTerm::Kind::Empty: return store.empty();
      case FormulaTerm::Kind::Check: return store.check(t.value);
      case FormulaTerm::Kind::Ident:
        for (std::size_t i = scope.size(); i-- > 0;)
          if (scope[i] == t.ident) return Var{static_cast<unsigned>(i)};
        return resolve(t.ident);
    }
    return store.empty();
  };
  switch (ast.kind) {
    case Formula::Kind::In: return Formula::in(term(ast.lhs), term(ast.rhs));
    case Formula::Kind::Eq: return Formula::eq(term(ast.lhs), term(ast.rhs));
    case Formula::Kind::Not: return Formula::negate(build(ast.kids[0], store, resolve, scope));
    case Formula::Kind::And:
      return Formula::conj(build(ast.kids[0], store, resolve, scope), build(ast.kids[1], store, resolve, scope));
    case Formula::Kind::Or:
      return Formula::disj(build(ast.kids[0], store, resolve, scope), build(ast.kids[1], store, resolve, scope));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      const Term bound = term(ast.rhs);
      const unsigned slot = static_cast<unsigned>(scope.size());
      scope.push_back(ast.var);
      Formula body = build(ast.kids[0], store, resolve, scope);
      scope.pop_back();
      return ast.kind == Formula::Kind::Exists ? Formula::exists(slot, bound, std::move(body))
                                               : Formula::forall(slot, bound, std::move(body));
    }
  }
  throw std::logic_error("unknown formula kind");
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<Node>& kids) {
  std::string out;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i) out += ", ";
    out += render(kids[i]);
  }
  return out;
}

}  // namespace

Document parse_spec(std::string_view text) {
  Document doc = Parser(Lexer(text).run()).document();
  Resolver resolver;
  for (const Statement& s : doc.statements) resolver.statement(s);
  return doc;
}

HfSet hf_value(const Node& node) {
  if (node.kind == Node::Kind::Number) return HfSet::nat(static_cast<unsigned>(std::stoul(node.text)));
  if (node.kind != Node::Kind::Braces) throw ParseError(node.pos, "expected a hereditarily finite set");
  std::vector<HfSet> members;
  for (const Node& k : node.kids) members.push_back(hf_value(k));
  return HfSet::of(std::move(members));
}

std::string render(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Ident:
    case Node::Kind::Number: return n.text;
    case Node::Kind::String: return quote(n.text);
    case Node::Kind::Check: return "check " + render(n.kids[0]);
    case Node::Kind::Call: return n.text + render(n.kids[0]);
    case Node::Kind::Parens: return "(" + join(n.kids) + ")";
    case Node::Kind::Braces: return "{" + join(n.kids) + "}";
    case Node::Kind::Brackets: return "[" + join(n.kids) + "]";
    case Node::Kind::Binary:
      return render(n.kids[0]) + (n.text == ":" ? ": " : n.text) + render(n.kids[1]);
  }
  return {};
}

std::string render(const Statement& s) {
  switch (s.kind) {
    case Statement::Kind::System: return "system " + s.id + " = " + render(s.body) + ";";
    case Statement::Kind::Use: return "use " + s.id + ";";
    case Statement::Kind::Name: return "name " + s.id + " = " + render(s.body) + ";";
    case Statement::Kind::Assert: return std::string("assert ") + (s.negated ? "!" : "") + render(s.body) + ";";
    case Statement::Kind::Query: return "query " + render(s.body) + ";";
    case Statement::Kind::Suite: return "suite " + s.id + ";";
  }
  return {};
}

std::string render(const Document& doc) {
  std::string out;
  for (const Statement& s : doc.statements) out += render(s) + "\n";
  return out;
}

FormulaAst parse_formula(std::string_view text, Position origin) { return FormulaParser(text, origin).run(); }

std::vector<std::string> free_identifiers(const FormulaAst& ast) {
  std::vector<std::string> bound, out;
  collect_free(ast, bound, out);
  return out;
}

Formula to_formula(const FormulaAst& ast, NameStore& store, const std::function<Name(const std::string&)>& resolve) {
  std::vector<std::string> scope;
  return build(ast, store, resolve, scope);
}

}  // namespace symext::dsl
