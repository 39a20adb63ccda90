#pragma once

// Concrete syntax: a Prolog subset with facts, rules, list sugar and
// integer literals standing for Peano numerals. '%' starts a line comment.

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ssem/lists.hpp"
#include "ssem/substitution.hpp"
#include "ssem/term.hpp"

namespace ssem {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

namespace detail {

enum class Tok { kName, kVar, kInt, kPunct, kNeck, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_layout();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    if (std::islower(static_cast<unsigned char>(c))) {
      t.kind = Tok::kName;
      t.text = take_while_ident();
    } else if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::kVar;
      t.text = take_while_ident();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::kInt;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        t.text += advance();
    } else if (c == ':' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
      t.kind = Tok::kNeck;
      t.text = ":-";
      advance();
      advance();
    } else if (std::string_view("()[]|,.").find(c) != std::string_view::npos) {
      t.kind = Tok::kPunct;
      t.text = std::string(1, advance());
    } else {
      throw ParseError(line_, col_,
                       std::string("unexpected character '") + c + "'");
    }
    return t;
  }

 private:
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_layout() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string take_while_ident() {
    std::string s;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_'))
      s += advance();
    return s;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view src, VarSource& vars) : lex_(src), vars_(vars) {
    shift();
  }

  bool at_end() const { return tok_.kind == Tok::kEnd; }

  Clause clause() {
    scope_.clear();
    Clause c{atom(), {}};
    if (tok_.kind == Tok::kNeck) {
      shift();
      c.body = conjunction();
    }
    expect(".");
    return c;
  }

  std::vector<Atom> query() {
    scope_.clear();
    auto atoms = conjunction();
    if (is_punct(".")) shift();
    if (!at_end()) fail("expected end of query");
    return atoms;
  }

  Term lone_term() {
    scope_.clear();
    Term t = term();
    if (is_punct(".")) shift();
    if (!at_end()) fail("expected end of term");
    return t;
  }

 private:
  std::vector<Atom> conjunction() {
    std::vector<Atom> atoms{atom()};
    while (is_punct(",")) {
      shift();
      atoms.push_back(atom());
    }
    return atoms;
  }

  Atom atom() {
    if (tok_.kind != Tok::kName) fail("expected an atom");
    std::string name = tok_.text;
    shift();
    return Atom(std::move(name), arguments());
  }

  std::vector<Term> arguments() {
    std::vector<Term> args;
    if (!is_punct("(")) return args;
    shift();
    args.push_back(term());
    while (is_punct(",")) {
      shift();
      args.push_back(term());
    }
    expect(")");
    return args;
  }

  Term term() {
    switch (tok_.kind) {
      case Tok::kVar: {
        std::string name = tok_.text;
        shift();
        if (name == "_") return vars_.fresh_term();
        auto it = scope_.find(name);
        if (it != scope_.end()) return it->second;
        Term v = vars_.fresh_named(name);
        scope_.emplace(name, v);
        return v;
      }
      case Tok::kInt: {
        std::size_t n = 0;
        try {
          n = std::stoul(tok_.text);
        } catch (const std::exception&) {
          fail("integer literal out of range");
        }
        shift();
        return peano(n);
      }
      case Tok::kName: {
        std::string name = tok_.text;
        shift();
        return Term::compound(std::move(name), arguments());
      }
      case Tok::kPunct:
        if (is_punct("[")) return list();
        break;
      default:
        break;
    }
    fail("expected a term");
  }

  Term list() {
    expect("[");
    if (is_punct("]")) {
      shift();
      return nil();
    }
    std::vector<Term> members{term()};
    while (is_punct(",")) {
      shift();
      members.push_back(term());
    }
    Term tail = nil();
    if (is_punct("|")) {
      shift();
      tail = term();
    }
    expect("]");
    return make_list(members, tail);
  }

  bool is_punct(const char* p) const {
    return tok_.kind == Tok::kPunct && tok_.text == p;
  }

  void expect(const char* p) {
    if (!is_punct(p)) fail(std::string("expected '") + p + "'");
    shift();
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::string found = tok_.kind == Tok::kEnd ? "end of input"
                                               : "'" + tok_.text + "'";
    throw ParseError(tok_.line, tok_.column, what + ", found " + found);
  }

  void shift() { tok_ = lex_.next(); }

  Lexer lex_;
  VarSource& vars_;
  Token tok_;
  std::map<std::string, Term> scope_;
};

}  // namespace detail

/// Parses a whole program. Variable names are scoped to their clause; every
/// '_' is a distinct fresh variable.
inline Program parse_program(std::string_view text, VarSource& vars) {
  detail::Parser p(text, vars);
  Program prog;
  while (!p.at_end()) prog.add(p.clause());
  return prog;
}

inline Clause parse_clause(std::string_view text, VarSource& vars) {
  detail::Parser p(text, vars);
  Clause c = p.clause();
  if (!p.at_end()) throw ParseError(1, 1, "trailing input after clause");
  return c;
}

inline Query parse_query(std::string_view text, VarSource& vars) {
  detail::Parser p(text, vars);
  return Query{p.query()};
}

inline Atom parse_atom(std::string_view text, VarSource& vars) {
  auto q = parse_query(text, vars);
  if (q.atoms.size() != 1) throw ParseError(1, 1, "expected a single atom");
  return q.atoms.front();
}

inline Term parse_term(std::string_view text, VarSource& vars) {
  detail::Parser p(text, vars);
  return p.lone_term();
}

// ---------------------------------------------------------------------------
// Printing

/// Prints terms deterministically. Variables print under their source name,
/// generated ones as _G<id>, unless a naming is supplied.
class Printer {
 public:
  Printer() = default;
  explicit Printer(std::map<Var, std::string> names)
      : names_(std::move(names)) {}

  /// Names variables V1, V2, ... by first occurrence in `x`.
  template <typename T>
  static Printer canonical_for(const T& x) {
    std::map<Var, std::string> names;
    for (const auto& v : variables_of(x))
      names.emplace(v.var(), "V" + std::to_string(names.size() + 1));
    return Printer(std::move(names));
  }

  std::string operator()(const Term& t) const {
    std::string out;
    term(t, out);
    return out;
  }

  std::string operator()(const Atom& a) const { return (*this)(a.as_term()); }

  std::string operator()(const Clause& c) const {
    std::string out = (*this)(c.head);
    if (!c.body.empty()) {
      out += " :- ";
      for (std::size_t i = 0; i < c.body.size(); ++i) {
        if (i) out += ", ";
        out += (*this)(c.body[i]);
      }
    }
    out += '.';
    return out;
  }

  std::string operator()(const Substitution& s) const {
    std::string out = "{";
    bool first = true;
    for (const auto& [v, b] : s.bindings()) {
      if (!first) out += ", ";
      first = false;
      out += (*this)(b.variable);
      out += " = ";
      out += (*this)(b.value);
    }
    out += '}';
    return out;
  }

  std::string operator()(const std::vector<Atom>& atoms) const {
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (i) out += ", ";
      out += (*this)(atoms[i]);
    }
    return out;
  }

 private:
  void term(const Term& t, std::string& out) const {
    if (t.is_var()) {
      auto it = names_.find(t.var());
      if (it != names_.end())
        out += it->second;
      else if (!t.var_name().empty())
        out += t.var_name();
      else
        out += "_G" + std::to_string(t.var().id);
      return;
    }
    if (auto n = peano_value(t)) {
      out += std::to_string(*n);
      return;
    }
    if (is_cons(t)) {
      out += '[';
      Term cur = t;
      bool first = true;
      while (is_cons(cur)) {
        if (!first) out += ',';
        first = false;
        term(cur.arg(0), out);
        cur = cur.arg(1);
      }
      if (!is_nil(cur)) {
        out += '|';
        term(cur, out);
      }
      out += ']';
      return;
    }
    out += t.functor();
    if (t.arity() == 0) return;
    out += '(';
    for (std::size_t i = 0; i < t.arity(); ++i) {
      if (i) out += ',';
      term(t.arg(i), out);
    }
    out += ')';
  }

  std::map<Var, std::string> names_;
};

template <typename T>
std::string print(const T& x) {
  return Printer()(x);
}

/// Prints with variables renamed V1, V2, ... by first occurrence, so every
/// member of a variance class prints identically.
template <typename T>
std::string print_canonical(const T& x) {
  return Printer::canonical_for(x)(x);
}

inline std::string print(const Program& p) {
  std::string out;
  for (const auto& c : p.clauses()) out += print(c) + "\n";
  return out;
}

}  // namespace ssem
