#pragma once

// Variance (equality up to bijective variable renaming) and the
// variant-quotiented atom store.

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "ssem/substitution.hpp"
#include "ssem/term.hpp"

namespace ssem {

namespace detail {

inline void canonical_key_into(const Term& t, std::map<Var, std::size_t>& ids,
                               std::string& out) {
  if (t.is_var()) {
    auto [it, inserted] = ids.emplace(t.var(), ids.size());
    out += '#';
    out += std::to_string(it->second);
    out += ';';
    return;
  }
  out += t.functor();
  out += '\x1f';
  out += std::to_string(t.arity());
  if (t.arity() == 0) {
    out += ';';
    return;
  }
  out += '(';
  for (const auto& a : t.args()) canonical_key_into(a, ids, out);
  out += ')';
}

inline bool variant_match(const Term& a, const Term& b, std::map<Var, Var>& fw,
                          std::map<Var, Var>& bw) {
  if (a.is_var() || b.is_var()) {
    if (!a.is_var() || !b.is_var()) return false;
    auto f = fw.emplace(a.var(), b.var()).first;
    auto r = bw.emplace(b.var(), a.var()).first;
    return f->second == b.var() && r->second == a.var();
  }
  if (a.functor() != b.functor() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!variant_match(a.arg(i), b.arg(i), fw, bw)) return false;
  return true;
}

}  // namespace detail

/// Key shared by exactly the members of one variance class: variables are
/// numbered by first occurrence in a left-to-right traversal.
inline std::string canonical_key(const Term& t) {
  std::map<Var, std::size_t> ids;
  std::string out;
  detail::canonical_key_into(t, ids, out);
  return out;
}

inline std::string canonical_key(const Atom& a) {
  return canonical_key(a.as_term());
}

inline std::string canonical_key(const Clause& c) {
  std::map<Var, std::size_t> ids;
  std::string out;
  detail::canonical_key_into(c.head.as_term(), ids, out);
  out += ":-";
  for (const auto& b : c.body) detail::canonical_key_into(b.as_term(), ids, out);
  return out;
}

/// True iff a renaming maps `a` onto `b`. Computed by building the
/// variable bijection directly, independent of canonical_key.
inline bool is_variant(const Term& a, const Term& b) {
  std::map<Var, Var> fw, bw;
  return detail::variant_match(a, b, fw, bw);
}

inline bool is_variant(const Atom& a, const Atom& b) {
  return is_variant(a.as_term(), b.as_term());
}

inline bool is_variant(const Clause& a, const Clause& b) {
  if (a.body.size() != b.body.size()) return false;
  std::map<Var, Var> fw, bw;
  if (!detail::variant_match(a.head.as_term(), b.head.as_term(), fw, bw))
    return false;
  for (std::size_t i = 0; i < a.body.size(); ++i)
    if (!detail::variant_match(a.body[i].as_term(), b.body[i].as_term(), fw,
                               bw))
      return false;
  return true;
}

/// Finite set of atoms holding one representative per variance class.
/// Iteration follows insertion order.
class AtomSet {
 public:
  AtomSet() = default;
  AtomSet(std::initializer_list<Atom> atoms) {
    for (const auto& a : atoms) insert(a);
  }

  /// Inserts `a` unless a variant is already stored. Returns true on insert.
  bool insert(const Atom& a) {
    auto [it, inserted] = index_.emplace(canonical_key(a), atoms_.size());
    if (inserted) atoms_.push_back(a);
    return inserted;
  }

  void insert_all(const AtomSet& other) {
    for (const auto& a : other) insert(a);
  }

  bool contains(const Atom& a) const {
    return index_.count(canonical_key(a)) != 0;
  }
  bool contains_key(const std::string& key) const {
    return index_.count(key) != 0;
  }

  /// Stored representative of the class of `a`, if any.
  const Atom* find(const Atom& a) const {
    auto it = index_.find(canonical_key(a));
    return it == index_.end() ? nullptr : &atoms_[it->second];
  }

  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  std::vector<Atom>::const_iterator begin() const { return atoms_.begin(); }
  std::vector<Atom>::const_iterator end() const { return atoms_.end(); }
  const std::vector<Atom>& atoms() const { return atoms_; }

  /// Members whose predicate is `pred`.
  AtomSet restricted_to(const std::string& pred) const {
    AtomSet out;
    for (const auto& a : atoms_)
      if (a.predicate() == pred) out.insert(a);
    return out;
  }

  bool subset_of(const AtomSet& other) const {
    for (const auto& [k, i] : index_)
      if (!other.contains_key(k)) return false;
    return true;
  }

  /// Equality as quotient sets.
  friend bool operator==(const AtomSet& a, const AtomSet& b) {
    return a.size() == b.size() && a.subset_of(b);
  }

  /// Members of this set with no variant in `other`.
  AtomSet minus(const AtomSet& other) const {
    AtomSet out;
    for (const auto& a : atoms_)
      if (!other.contains(a)) out.insert(a);
    return out;
  }

 private:
  std::vector<Atom> atoms_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace ssem
