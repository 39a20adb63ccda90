#pragma once

// First-order terms, atoms, clauses and programs.
//
// Terms are immutable and share structure through reference-counted nodes,
// so copying a Term is cheap and values can be handed between threads.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ssem {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Variable identity. Two variables are the same iff their ids are equal.
struct Var {
  std::uint64_t id = 0;
  friend auto operator<=>(const Var&, const Var&) = default;
};

class Term {
  struct Node {
    bool is_var = false;
    bool ground = true;
    Var var;
    std::string name;  // display name of a variable, or the functor
    std::vector<Term> args;
  };

 public:
  Term() = default;

  static Term variable(Var v, std::string display_name = {}) {
    auto n = std::make_shared<Node>();
    n->is_var = true;
    n->ground = false;
    n->var = v;
    n->name = std::move(display_name);
    return Term(std::move(n));
  }

  static Term compound(std::string functor, std::vector<Term> args = {}) {
    auto n = std::make_shared<Node>();
    n->name = std::move(functor);
    bool ground = true;
    for (const auto& a : args) ground = ground && a.is_ground();
    n->ground = ground;
    n->args = std::move(args);
    return Term(std::move(n));
  }

  static Term constant(std::string name) { return compound(std::move(name)); }

  bool valid() const { return node_ != nullptr; }
  bool is_var() const { return node_->is_var; }
  bool is_compound() const { return !node_->is_var; }
  bool is_ground() const { return node_->ground; }
  bool is_constant() const { return !node_->is_var && node_->args.empty(); }

  Var var() const { return node_->var; }
  /// Display name of a variable (may be empty for generated variables).
  const std::string& var_name() const { return node_->name; }
  const std::string& functor() const { return node_->name; }
  std::size_t arity() const { return node_->args.size(); }
  std::span<const Term> args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args[i]; }

  /// True when both handles point at the very same node.
  bool same_node(const Term& o) const { return node_ == o.node_; }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.is_var() != b.is_var()) return false;
    if (a.is_var()) return a.var() == b.var();
    if (a.functor() != b.functor() || a.arity() != b.arity()) return false;
    for (std::size_t i = 0; i < a.arity(); ++i)
      if (!(a.arg(i) == b.arg(i))) return false;
    return true;
  }

 private:
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Source of fresh variables for one engine session. Ids grow monotonically,
/// so every variable handed out is distinct from all earlier ones.
class VarSource {
 public:
  explicit VarSource(std::uint64_t first = 1) : next_(first) {}

  Var fresh() { return Var{next_++}; }
  Term fresh_term() { return Term::variable(fresh()); }
  Term fresh_named(std::string name) {
    return Term::variable(fresh(), std::move(name));
  }

  /// Makes sure later fresh ids exceed `id`.
  void ensure_above(std::uint64_t id) {
    if (next_ <= id) next_ = id + 1;
  }
  std::uint64_t peek() const { return next_; }

 private:
  std::uint64_t next_;
};

/// An atom p(t1,...,tn); stored as a compound term.
class Atom {
 public:
  Atom() = default;
  explicit Atom(Term t) : term_(std::move(t)) {
    if (!term_.valid() || term_.is_var())
      throw Error("an atom must be a compound term or constant");
  }
  Atom(std::string predicate, std::vector<Term> args)
      : term_(Term::compound(std::move(predicate), std::move(args))) {}

  const std::string& predicate() const { return term_.functor(); }
  std::size_t arity() const { return term_.arity(); }
  std::span<const Term> args() const { return term_.args(); }
  const Term& arg(std::size_t i) const { return term_.arg(i); }
  const Term& as_term() const { return term_; }
  bool is_ground() const { return term_.is_ground(); }

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.term_ == b.term_;
  }

 private:
  Term term_;
};

struct Clause {
  Atom head;
  std::vector<Atom> body;

  bool is_unary() const { return body.empty(); }
  friend bool operator==(const Clause&, const Clause&) = default;
};

/// Ordered clause list plus the predicate signatures it declares.
class Program {
 public:
  Program() = default;
  explicit Program(std::vector<Clause> clauses) {
    for (auto& c : clauses) add(std::move(c));
  }

  void add(Clause c) {
    declare(c.head.predicate(), c.head.arity());
    for (const auto& b : c.body) declare(b.predicate(), b.arity());
    clauses_.push_back(std::move(c));
  }

  /// Records pred/arity. A predicate symbol keeps one arity per program.
  void declare(const std::string& pred, std::size_t arity) {
    auto [it, inserted] = signatures_.emplace(pred, arity);
    if (!inserted && it->second != arity)
      throw Error("predicate " + pred + " used with arities " +
                  std::to_string(it->second) + " and " +
                  std::to_string(arity));
  }

  std::optional<std::size_t> arity_of(const std::string& pred) const {
    auto it = signatures_.find(pred);
    if (it == signatures_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<Clause>& clauses() const { return clauses_; }
  const std::map<std::string, std::size_t>& signatures() const {
    return signatures_;
  }
  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }

 private:
  std::vector<Clause> clauses_;
  std::map<std::string, std::size_t> signatures_;
};

/// A nonempty conjunction of atoms.
struct Query {
  std::vector<Atom> atoms;
};

// ---------------------------------------------------------------------------
// Traversals

template <typename F>
void for_each_var(const Term& t, F&& f) {
  if (t.is_var()) {
    f(t);
    return;
  }
  if (t.is_ground()) return;
  for (const auto& a : t.args()) for_each_var(a, f);
}

template <typename F>
void for_each_var(const Atom& a, F&& f) {
  for_each_var(a.as_term(), f);
}

template <typename F>
void for_each_var(const Clause& c, F&& f) {
  for_each_var(c.head, f);
  for (const auto& b : c.body) for_each_var(b, f);
}

template <typename F>
void for_each_var(const std::vector<Atom>& atoms, F&& f) {
  for (const auto& a : atoms) for_each_var(a, f);
}

/// Variables in first-occurrence order, each once.
template <typename T>
std::vector<Term> variables_of(const T& x) {
  std::vector<Term> out;
  std::map<Var, bool> seen;
  for_each_var(x, [&](const Term& v) {
    if (seen.emplace(v.var(), true).second) out.push_back(v);
  });
  return out;
}

template <typename T>
std::uint64_t max_var_id(const T& x) {
  std::uint64_t m = 0;
  for_each_var(x, [&](const Term& v) { m = std::max(m, v.var().id); });
  return m;
}

inline bool occurs_in(Var v, const Term& t) {
  if (t.is_var()) return t.var() == v;
  if (t.is_ground()) return false;
  for (const auto& a : t.args())
    if (occurs_in(v, a)) return true;
  return false;
}

/// No variable occurs twice.
inline bool is_linear(const Term& t) {
  std::map<Var, int> seen;
  bool linear = true;
  for_each_var(t, [&](const Term& v) {
    if (++seen[v.var()] > 1) linear = false;
  });
  return linear;
}

inline bool is_linear(const Atom& a) { return is_linear(a.as_term()); }

/// Height of a term: constants and variables have depth 0, f(t1..tn) has
/// 1 + max depth of its arguments.
inline std::size_t term_depth(const Term& t) {
  if (t.is_var() || t.arity() == 0) return 0;
  std::size_t d = 0;
  for (const auto& a : t.args()) d = std::max(d, term_depth(a));
  return d + 1;
}

/// Depth of an atom: the largest depth among its arguments.
inline std::size_t atom_depth(const Atom& a) {
  std::size_t d = 0;
  for (const auto& t : a.args()) d = std::max(d, term_depth(t));
  return d;
}

}  // namespace ssem
