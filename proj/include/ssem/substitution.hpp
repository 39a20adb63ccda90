#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ssem/term.hpp"

namespace ssem {

/// Finite map from variables to terms. Identity bindings v/v are never
/// stored. Idempotence is not required here; mgu results guarantee it.
class Substitution {
 public:
  struct Binding {
    Term variable;
    Term value;
  };

  Substitution() = default;

  /// Binds `variable` (a variable term) to `value`; v/v is dropped and an
  /// existing binding for the same variable is replaced.
  void bind(const Term& variable, Term value) {
    if (!variable.is_var()) throw Error("only variables can be bound");
    if (value.is_var() && value.var() == variable.var()) {
      bindings_.erase(variable.var());
      return;
    }
    bindings_[variable.var()] = Binding{variable, std::move(value)};
  }

  const Term* lookup(Var v) const {
    auto it = bindings_.find(v);
    return it == bindings_.end() ? nullptr : &it->second.value;
  }

  bool binds(Var v) const { return bindings_.count(v) != 0; }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  void erase(Var v) { bindings_.erase(v); }

  /// Bindings ordered by variable id.
  const std::map<Var, Binding>& bindings() const { return bindings_; }

 private:
  std::map<Var, Binding> bindings_;
};

/// Simultaneous replacement of every bound variable. Unchanged subterms are
/// shared with the input.
inline Term apply(const Substitution& s, const Term& t) {
  if (s.empty() || t.is_ground()) return t;
  if (t.is_var()) {
    const Term* v = s.lookup(t.var());
    return v ? *v : t;
  }
  std::vector<Term> args;
  bool changed = false;
  args.reserve(t.arity());
  for (const auto& a : t.args()) {
    args.push_back(apply(s, a));
    changed = changed || !args.back().same_node(a);
  }
  if (!changed) return t;
  return Term::compound(t.functor(), std::move(args));
}

inline Atom apply(const Substitution& s, const Atom& a) {
  return Atom(apply(s, a.as_term()));
}

inline Clause apply(const Substitution& s, const Clause& c) {
  Clause out{apply(s, c.head), {}};
  out.body.reserve(c.body.size());
  for (const auto& b : c.body) out.body.push_back(apply(s, b));
  return out;
}

template <typename T>
std::vector<T> apply(const Substitution& s, const std::vector<T>& xs) {
  std::vector<T> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(apply(s, x));
  return out;
}

/// The composition `first` then `second`:
/// apply(compose(first, second), t) == apply(second, apply(first, t)).
inline Substitution compose(const Substitution& first,
                            const Substitution& second) {
  Substitution out;
  for (const auto& [v, b] : first.bindings())
    out.bind(b.variable, apply(second, b.value));
  for (const auto& [v, b] : second.bindings())
    if (!first.binds(v)) out.bind(b.variable, b.value);
  return out;
}

/// Restriction of `s` to the given variables.
inline Substitution restrict_to(const Substitution& s,
                                const std::vector<Term>& vars) {
  Substitution out;
  for (const auto& v : vars)
    if (const Term* t = s.lookup(v.var())) out.bind(v, *t);
  return out;
}

/// True when `s` maps distinct variables to distinct variables.
inline bool is_renaming(const Substitution& s) {
  std::map<Var, Var> image;
  for (const auto& [v, b] : s.bindings()) {
    if (!b.value.is_var()) return false;
    if (!image.emplace(b.value.var(), v).second) return false;
  }
  return true;
}

/// Substitution mapping every variable of `x` to a fresh variable.
template <typename T>
Substitution fresh_renaming(const T& x, VarSource& vars) {
  Substitution r;
  for (const auto& v : variables_of(x)) r.bind(v, vars.fresh_term());
  return r;
}

template <typename T>
T fresh_variant(const T& x, VarSource& vars) {
  return apply(fresh_renaming(x, vars), x);
}

/// Variants of `items` that are pairwise variable disjoint and share no
/// variable with `avoid` (nor with the inputs themselves).
template <typename T>
std::vector<T> rename_apart(const std::vector<T>& items,
                            const std::vector<Term>& avoid, VarSource& vars) {
  std::uint64_t top = 0;
  for (const auto& v : avoid) top = std::max(top, v.var().id);
  for (const auto& x : items) top = std::max(top, max_var_id(x));
  vars.ensure_above(top);
  std::vector<T> out;
  out.reserve(items.size());
  for (const auto& x : items) out.push_back(fresh_variant(x, vars));
  return out;
}

}  // namespace ssem
