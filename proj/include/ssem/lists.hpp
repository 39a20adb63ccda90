#pragma once

// List and numeral utilities: Prolog list cells '.'/2 with '[]', open lists
// [t1,...,tn|v], and Peano numerals s^n(0).

#include <cstddef>
#include <optional>
#include <vector>

#include "ssem/term.hpp"

namespace ssem {

inline constexpr const char* kCons = ".";
inline constexpr const char* kNil = "[]";
inline constexpr const char* kZero = "0";
inline constexpr const char* kSucc = "s";

inline Term nil() { return Term::constant(kNil); }

inline Term cons(Term head, Term tail) {
  return Term::compound(kCons, {std::move(head), std::move(tail)});
}

inline bool is_cons(const Term& t) {
  return t.is_compound() && t.arity() == 2 && t.functor() == kCons;
}

inline bool is_nil(const Term& t) {
  return t.is_compound() && t.arity() == 0 && t.functor() == kNil;
}

/// Builds [m1,...,mn|tail].
inline Term make_list(const std::vector<Term>& members, Term tail) {
  Term out = std::move(tail);
  for (auto it = members.rbegin(); it != members.rend(); ++it)
    out = cons(*it, std::move(out));
  return out;
}

inline Term make_list(const std::vector<Term>& members) {
  return make_list(members, nil());
}

/// Maximal list spine of a term: its members and whatever ends the spine.
struct ListView {
  std::vector<Term> members;
  Term tail;

  bool is_open() const { return tail.is_var(); }
  bool is_closed() const { return is_nil(tail); }
};

/// Splits a term along its '.'/2 spine without judging the tail.
inline ListView spine_of(const Term& t) {
  ListView v;
  Term cur = t;
  while (is_cons(cur)) {
    v.members.push_back(cur.arg(0));
    cur = cur.arg(1);
  }
  v.tail = cur;
  return v;
}

/// Decomposes an open list or a list. Returns nothing when the spine ends in
/// a term that is neither a variable nor '[]'. A bare variable is the empty
/// open list.
inline std::optional<ListView> open_list_view(const Term& t) {
  ListView v = spine_of(t);
  if (!v.tail.is_var() && !is_nil(v.tail)) return std::nullopt;
  return v;
}

inline bool is_open_list(const Term& t) {
  auto v = open_list_view(t);
  return v && v->is_open();
}

/// tl(): the tail of a non-empty open list, or a new variable for an empty
/// one.
inline Term tail_of(const Term& t, VarSource& vars) {
  if (!is_open_list(t)) throw Error("tail_of: argument is not an open list");
  if (t.is_var()) return vars.fresh_term();
  return t.arg(1);
}

/// The k-th member (k >= 1) of any term with a long enough list prefix.
inline std::optional<Term> kth_member(const Term& t, std::size_t k) {
  if (k == 0) throw Error("kth_member: positions start at 1");
  Term cur = t;
  for (std::size_t i = 1; i < k; ++i) {
    if (!is_cons(cur)) return std::nullopt;
    cur = cur.arg(1);
  }
  if (!is_cons(cur)) return std::nullopt;
  return cur.arg(0);
}

/// s^n(0).
inline Term peano(std::size_t n) {
  Term t = Term::constant(kZero);
  for (std::size_t i = 0; i < n; ++i) t = Term::compound(kSucc, {t});
  return t;
}

/// Inverse of peano(); nothing for anything that is not a closed numeral.
inline std::optional<std::size_t> peano_value(const Term& t) {
  std::size_t n = 0;
  Term cur = t;
  while (cur.is_compound() && cur.functor() == kSucc && cur.arity() == 1) {
    ++n;
    cur = cur.arg(0);
  }
  if (cur.is_compound() && cur.arity() == 0 && cur.functor() == kZero)
    return n;
  return std::nullopt;
}

}  // namespace ssem
