#ifndef SYMEXT_DSL_HPP
#define SYMEXT_DSL_HPP

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "symext/forcing.hpp"
#include "symext/hfset.hpp"

namespace symext::dsl {

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Lexical, syntax and resolution errors, with the offending position.
class ParseError : public std::runtime_error {
 public:
  ParseError(Position pos, const std::string& message);
  Position position() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  Position pos_;
  std::string message_;
};

/// Untyped expression tree shared by every statement form. Calls are an
/// identifier directly followed by a bracketed group, e.g. gen(0),
/// bullet{...}, seq[...]. Binary nodes carry '=', ':', '<' or '/'.
struct Node {
  enum class Kind { Ident, Number, String, Check, Call, Parens, Braces, Brackets, Binary };

  Kind kind = Kind::Ident;
  std::string text;  // identifier, digits, string contents, call head or operator
  std::vector<Node> kids;
  Position pos;

  /// Structural equality; positions are ignored.
  friend bool operator==(const Node& a, const Node& b);

  const Node& group() const { return kids.front(); }            // Call
  const std::vector<Node>& args() const { return group().kids; }  // Call
};

struct Statement {
  enum class Kind { System, Use, Name, Assert, Query, Suite };

  Kind kind = Kind::Assert;
  std::string id;         // bound identifier for system/name/use, suite name for suite
  bool negated = false;   // assert !...
  Node body;              // empty for use/suite
  Position pos;

  friend bool operator==(const Statement& a, const Statement& b);
};

struct Document {
  std::vector<Statement> statements;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Parses and resolves a document: every identifier is bound before use,
/// call arities match the system kind, formulas parse.
Document parse_spec(std::string_view text);

/// Canonical text. parse_spec(render(d)) == d for every parsed d.
std::string render(const Document& doc);
std::string render(const Statement& stmt);
std::string render(const Node& node);

std::string_view to_string(Statement::Kind kind);

/// Reads a hereditarily finite set literal: a natural or {x, ...}.
HfSet hf_value(const Node& node);

// ---------------------------------------------------------------------------
// Formula sub-language: x in y, x = y, not φ, φ and ψ, φ or ψ,
// exists v in t (φ), forall v in t (φ), parentheses; terms are
// identifiers, `empty` and `check <hf>`.

struct FormulaTerm {
  enum class Kind { Ident, Empty, Check };
  Kind kind = Kind::Ident;
  std::string ident;
  HfSet value;
};

struct FormulaAst {
  Formula::Kind kind = Formula::Kind::In;
  FormulaTerm lhs, rhs;              // atoms; rhs is the bound for quantifiers
  std::string var;                   // quantifiers
  std::vector<FormulaAst> kids;      // connectives and quantifier bodies
};

/// `origin` is the position of the formula's first character, used to
/// place errors.
FormulaAst parse_formula(std::string_view text, Position origin = {});

/// Identifiers that are not bound by a quantifier of the formula.
std::vector<std::string> free_identifiers(const FormulaAst& ast);

/// Builds a closed formula; free identifiers go through `resolve`.
Formula to_formula(const FormulaAst& ast, NameStore& store,
                   const std::function<Name(const std::string&)>& resolve);

}  // namespace symext::dsl

#endif  // SYMEXT_DSL_HPP
