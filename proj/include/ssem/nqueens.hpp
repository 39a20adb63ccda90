#pragma once

// The n-queens corpus: the program, the specifications S (correctness) and
// S0 (completeness) with their auxiliary notions, the level mapping, a
// witness rule for completeness, and a brute-force oracle for the puzzle.
//
// Queens are identified by row numbers 1..n written as numerals s^j(0). A
// board is a list whose k-th member is j when queen j sits in column k.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ssem/lists.hpp"
#include "ssem/sld.hpp"
#include "ssem/spec.hpp"
#include "ssem/syntax.hpp"
#include "ssem/term.hpp"
#include "ssem/variant.hpp"

namespace ssem {

namespace nq {

inline constexpr const char* kClause1 = "pqs(0,_,_,_).";
inline constexpr const char* kClause2 =
    "pqs(s(I),Cs,Us,[_|Ds]) :- pqs(I,Cs,[_|Us],Ds), pq(s(I),Cs,Us,Ds).";
inline constexpr const char* kClause3 = "pq(I,[I|_],[I|_],[I|_]).";
inline constexpr const char* kClause4 =
    "pq(I,[_|Cs],[_|Us],[_|Ds]) :- pq(I,Cs,Us,Ds).";
inline constexpr const char* kQu = "qu(N,Qs) :- gl(N,Qs), pqs(N,Qs,_,_).";
inline constexpr const char* kGl0 = "gl(0,[]).";
inline constexpr const char* kGl1 = "gl(s(N),[_|L]) :- gl(N,L).";

// Mutants.
inline constexpr const char* kClause2DropDs =
    "pqs(s(I),Cs,Us,Ds) :- pqs(I,Cs,[_|Us],Ds), pq(s(I),Cs,Us,Ds).";
inline constexpr const char* kClause2SwapUsDs =
    "pqs(s(I),Cs,Ds,[_|Us]) :- pqs(I,Cs,[_|Us],Ds), pq(s(I),Cs,Us,Ds).";
inline constexpr const char* kClause3SwapUsDs = "pq(I,[I|_],[I|_],[I|_]).";
inline constexpr const char* kClause4NoBody = "pq(I,[_|Cs],[_|Us],[_|Ds]).";

}  // namespace nq

enum class NqueensVariant {
  kPlain,      // clauses (1)-(4)
  kFull,       // plus qu/2 and gl/2
  kDropDs,     // clause (2) head without [_|Ds]
  kSwapUsDs,   // clause (2) head with Us and Ds exchanged
  kDropBody4,  // clause (4) as a fact
  kNoClause3,  // clause (3) deleted
};

inline std::string nqueens_source(NqueensVariant v = NqueensVariant::kPlain) {
  std::vector<const char*> cs = {nq::kClause1, nq::kClause2, nq::kClause3,
                                 nq::kClause4};
  switch (v) {
    case NqueensVariant::kPlain:
      break;
    case NqueensVariant::kFull:
      cs.insert(cs.begin(), {nq::kQu, nq::kGl0, nq::kGl1});
      break;
    case NqueensVariant::kDropDs:
      cs[1] = nq::kClause2DropDs;
      break;
    case NqueensVariant::kSwapUsDs:
      cs[1] = nq::kClause2SwapUsDs;
      break;
    case NqueensVariant::kDropBody4:
      cs[3] = nq::kClause4NoBody;
      break;
    case NqueensVariant::kNoClause3:
      cs.erase(cs.begin() + 2);
      break;
  }
  std::string out;
  for (const char* c : cs) out += std::string(c) + "\n";
  return out;
}

inline Program nqueens_program(VarSource& vars,
                               NqueensVariant v = NqueensVariant::kPlain) {
  return parse_program(nqueens_source(v), vars);
}

// ---------------------------------------------------------------------------
// Diagonal numbers

/// Up diagonal number of queen j in column k, seen from row i.
inline std::int64_t up_diag(std::int64_t j, std::int64_t k, std::int64_t i) {
  return k + j - i;
}

/// Down diagonal number of queen j in column k, seen from row i.
inline std::int64_t down_diag(std::int64_t j, std::int64_t k, std::int64_t i) {
  return k + i - j;
}

namespace detail {

inline bool all_distinct(std::vector<std::int64_t> xs) {
  std::sort(xs.begin(), xs.end());
  return std::adjacent_find(xs.begin(), xs.end()) == xs.end();
}

/// Column of the first spine member equal to `x`.
inline std::optional<std::size_t> column_of(const Term& list, const Term& x) {
  std::size_t k = 0;
  for (Term cur = list; is_cons(cur); cur = cur.arg(1)) {
    ++k;
    if (cur.arg(0) == x) return k;
  }
  return std::nullopt;
}

inline bool var_disjoint(const Term& a, const Term& b) {
  if (a.is_ground() || b.is_ground()) return true;
  std::set<Var> va;
  for_each_var(a, [&](const Term& v) { va.insert(v.var()); });
  bool disjoint = true;
  for_each_var(b, [&](const Term& v) {
    if (va.count(v.var())) disjoint = false;
  });
  return disjoint;
}

inline std::size_t occurrences(Var v, const Term& t) {
  std::size_t n = 0;
  for_each_var(t, [&](const Term& u) { n += u.var() == v; });
  return n;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Lists of queens

/// Linear open list with pairwise distinct members, each ground or a
/// variable.
inline bool is_gvd(const Term& t) {
  auto v = open_list_view(t);
  if (!v || !v->is_open() || !is_linear(t)) return false;
  std::set<std::string> ground;
  for (const auto& m : v->members) {
    if (m.is_var()) continue;
    if (!m.is_ground()) return false;
    if (!ground.insert(canonical_key(m)).second) return false;
  }
  return true;
}

/// A g.v.d. whose last listed member is ground, or a bare variable.
inline bool is_short_gvd(const Term& t) {
  if (!is_gvd(t)) return false;
  auto v = spine_of(t);
  return v.members.empty() || v.members.back().is_ground();
}

/// The short g.v.d. `t` with its ground member `which` removed: an interior
/// member becomes a new variable; the last one is cut off together with the
/// variables before it.
inline Term remove_member(const Term& t, const Term& which, VarSource& vars) {
  if (!which.is_ground()) throw Error("remove_member: member must be ground");
  if (!is_short_gvd(t))
    throw Error("remove_member: " + print(t) + " is not a short g.v.d.");
  ListView v = spine_of(t);
  auto pos = detail::column_of(t, which);
  if (!pos)
    throw Error("remove_member: " + print(which) + " is not a member of " +
                print(t));
  std::vector<Term> members = v.members;
  if (*pos == members.size()) {
    std::size_t keep = *pos - 1;
    while (keep > 0 && !members[keep - 1].is_ground()) --keep;
    members.resize(keep);
  } else {
    members[*pos - 1] = vars.fresh_term();
  }
  return make_list(members, v.tail);
}

/// cs is correct up to m: a g.v.d. whose ground members are exactly 1..m
/// with pairwise distinct up and pairwise distinct down diagonal numbers.
inline bool cs_correct_up_to(const Term& cs, std::size_t m) {
  if (!is_gvd(cs)) return false;
  std::vector<std::int64_t> ups, downs;
  std::size_t k = 0, ground = 0;
  for (Term cur = cs; is_cons(cur); cur = cur.arg(1)) {
    ++k;
    const Term& x = cur.arg(0);
    if (x.is_var()) continue;
    ++ground;
    auto j = peano_value(x);
    if (!j || *j < 1 || *j > m) return false;
    ups.push_back(up_diag(*j, k, 0));
    downs.push_back(down_diag(*j, k, 0));
  }
  return ground == m && detail::all_distinct(ups) &&
         detail::all_distinct(downs);
}

/// (us, ds) is correct up to m w.r.t. row i and cs: every queen j <= m is
/// in cs, and a positive up (down) diagonal number l of j makes j the l-th
/// member of us (ds).
inline bool pair_correct(const Term& us, const Term& ds, std::size_t m,
                         std::size_t i, const Term& cs) {
  for (std::size_t j = 1; j <= m; ++j) {
    const Term q = peano(j);
    auto k = detail::column_of(cs, q);
    if (!k) return false;
    const auto sj = static_cast<std::int64_t>(j);
    const auto sk = static_cast<std::int64_t>(*k);
    const auto si = static_cast<std::int64_t>(i);
    for (auto [l, list] : {std::pair{up_diag(sj, sk, si), &us},
                           std::pair{down_diag(sj, sk, si), &ds}}) {
      if (l <= 0) continue;
      auto at = kth_member(*list, static_cast<std::size_t>(l));
      if (!at || !(*at == q)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Membership

/// pq(v, [c1..ck,v|c0], [u1..uk,v|u0], [d1..dk,v|d0]) with all the named
/// variables distinct.
inline bool member_S_pq(const Atom& a) {
  if (a.predicate() != "pq" || a.arity() != 4) return false;
  const Term& v = a.arg(0);
  if (!v.is_var()) return false;
  std::optional<std::size_t> k;
  for (std::size_t p = 1; p <= 3; ++p) {
    ListView lv = spine_of(a.arg(p));
    if (!lv.tail.is_var() || lv.members.empty()) return false;
    if (k && *k != lv.members.size() - 1) return false;
    k = lv.members.size() - 1;
    if (!(lv.members.back() == v)) return false;
    for (const auto& m : lv.members)
      if (!m.is_var()) return false;
  }
  std::map<Var, std::size_t> count;
  for_each_var(a, [&](const Term& x) { ++count[x.var()]; });
  for (const auto& [x, n] : count)
    if (n != (x == v.var() ? 4u : 1u)) return false;
  return true;
}

/// pqs(0, cs, us, ds) with cs, us, ds distinct variables.
inline bool member_S_pqs2(const Atom& a) {
  if (a.predicate() != "pqs" || a.arity() != 4) return false;
  if (peano_value(a.arg(0)) != std::optional<std::size_t>(0)) return false;
  const Term &cs = a.arg(1), &us = a.arg(2), &ds = a.arg(3);
  return cs.is_var() && us.is_var() && ds.is_var() && !(cs == us) &&
         !(cs == ds) && !(us == ds);
}

/// pqs(i, cs, us, [_|ds]) with i > 0, cs correct up to i, (us, ds) correct
/// up to i w.r.t. i and cs, and cs, us, ds variable disjoint. The variable
/// in front of ds occurs nowhere else.
inline bool member_S_pqs1(const Atom& a) {
  if (a.predicate() != "pqs" || a.arity() != 4) return false;
  auto i = peano_value(a.arg(0));
  if (!i || *i == 0) return false;
  const Term& cs = a.arg(1);
  const Term& us = a.arg(2);
  const Term& d = a.arg(3);
  if (!is_cons(d) || !d.arg(0).is_var()) return false;
  if (detail::occurrences(d.arg(0).var(), a.as_term()) != 1) return false;
  const Term& ds = d.arg(1);
  return cs_correct_up_to(cs, *i) && pair_correct(us, ds, *i, *i, cs) &&
         detail::var_disjoint(cs, us) && detail::var_disjoint(cs, ds) &&
         detail::var_disjoint(us, ds);
}

inline bool member_S_pqs(const Atom& a) {
  return member_S_pqs1(a) || member_S_pqs2(a);
}

inline bool member_S(const Atom& a) {
  return member_S_pq(a) || member_S_pqs(a);
}

/// Members of S_pqs1 whose lists are short g.v.d.'s carrying only the
/// ground members that correctness of (us, ds) needs.
inline bool member_S0_pqs(const Atom& a) {
  if (!member_S_pqs1(a)) return false;
  const std::size_t i = *peano_value(a.arg(0));
  const Term& cs = a.arg(1);
  const Term& us = a.arg(2);
  const Term& ds = a.arg(3).arg(1);
  if (!is_short_gvd(cs) || !is_short_gvd(us) || !is_short_gvd(ds))
    return false;
  for (const Term* list : {&us, &ds}) {
    for (const auto& m : spine_of(*list).members) {
      if (m.is_var()) continue;
      auto j = peano_value(m);
      if (!j || *j < 1 || *j > i) return false;
      if (list == &us) {
        auto k = detail::column_of(cs, m);
        if (!k || up_diag(*j, *k, i) <= 0) return false;
      }
    }
  }
  return true;
}

inline bool member_S0(const Atom& a) {
  return member_S0_pqs(a) || member_S_pqs2(a) || member_S_pq(a);
}

/// gl(i, [v1..vi]) with distinct variables.
inline bool member_S_gl(const Atom& a) {
  if (a.predicate() != "gl" || a.arity() != 2) return false;
  auto n = peano_value(a.arg(0));
  auto v = open_list_view(a.arg(1));
  if (!n || !v || !v->is_closed() || v->members.size() != *n) return false;
  for (const auto& m : v->members)
    if (!m.is_var()) return false;
  return is_linear(a);
}

/// qu(i, cs) with cs a list of 1..i with distinct up and down diagonals.
inline bool member_S_qu(const Atom& a) {
  if (a.predicate() != "qu" || a.arity() != 2) return false;
  auto n = peano_value(a.arg(0));
  auto v = open_list_view(a.arg(1));
  if (!n || !v || !v->is_closed() || v->members.size() != *n) return false;
  std::vector<bool> seen(*n + 1, false);
  std::vector<std::int64_t> ups, downs;
  for (std::size_t k = 1; k <= *n; ++k) {
    auto j = peano_value(v->members[k - 1]);
    if (!j || *j < 1 || *j > *n || seen[*j]) return false;
    seen[*j] = true;
    ups.push_back(up_diag(*j, k, 0));
    downs.push_back(down_diag(*j, k, 0));
  }
  return detail::all_distinct(ups) && detail::all_distinct(downs);
}

// ---------------------------------------------------------------------------
// Level mapping

namespace detail {

inline std::uint64_t measure(const Term& t) {
  std::uint64_t n = 0;
  Term cur = t;
  for (;;) {
    if (is_cons(cur)) {
      cur = cur.arg(1);
    } else if (cur.is_compound() && cur.functor() == kSucc &&
               cur.arity() == 1) {
      cur = cur.arg(0);
    } else {
      return n;
    }
    ++n;
  }
}

}  // namespace detail

/// |pqs(i,cs,us,ds)| = |i| + |cs| and |pq(i,cs,us,ds)| = |cs|, where |t|
/// counts the '.'/2 and s/1 cells along the rightmost spine.
inline std::uint64_t level(const Atom& a) {
  if (a.arity() == 4 && a.predicate() == "pqs")
    return detail::measure(a.arg(0)) + detail::measure(a.arg(1));
  if (a.arity() == 4 && a.predicate() == "pq") return detail::measure(a.arg(1));
  throw Error("no level for " + a.predicate() + "/" +
              std::to_string(a.arity()));
}

// ---------------------------------------------------------------------------
// Bounded enumeration

inline SpecBounds default_nqueens_bounds() {
  return SpecBounds{{"i", 3}, {"len", 6}, {"vars", 2}, {"extras", 0}};
}

namespace detail {

struct NqBounds {
  std::size_t i, len, vars, extras;

  explicit NqBounds(const SpecBounds& b)
      : i(static_cast<std::size_t>(b.get("i", 3))),
        len(static_cast<std::size_t>(b.get("len", 6))),
        vars(static_cast<std::size_t>(b.get("vars", 2))),
        extras(static_cast<std::size_t>(b.get("extras", 0))) {}
};

/// Members by position: a numeral, or nothing for a variable.
struct ListPattern {
  std::vector<std::optional<std::size_t>> members;
  bool closed = false;
};

inline Term build(const ListPattern& p, VarSource& vars) {
  std::vector<Term> ms;
  for (const auto& m : p.members)
    ms.push_back(m ? peano(*m) : vars.fresh_term());
  return make_list(ms, p.closed ? nil() : vars.fresh_term());
}

/// Column of each queen 1..i (index 0 unused); columns <= len, distinct
/// columns and distinct up and down diagonals.
inline void for_each_placement(
    std::size_t i, std::size_t len,
    const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> col(i + 1, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j > i) {
      f(col);
      return;
    }
    for (std::size_t k = 1; k <= len; ++k) {
      bool ok = true;
      for (std::size_t q = 1; q < j && ok; ++q)
        ok = col[q] != k && col[q] + q != k + j && col[q] + j != k + q;
      if (!ok) continue;
      col[j] = k;
      rec(j + 1);
    }
  };
  rec(1);
}

/// position -> queen forced by pair correctness, for up (sign +1) or down
/// (sign -1) diagonals seen from row i.
inline std::map<std::size_t, std::size_t> forced_positions(
    const std::vector<std::size_t>& col, std::size_t i, bool up) {
  std::map<std::size_t, std::size_t> out;
  const auto si = static_cast<std::int64_t>(i);
  for (std::size_t j = 1; j < col.size(); ++j) {
    const auto sj = static_cast<std::int64_t>(j);
    const auto k = static_cast<std::int64_t>(col[j]);
    std::int64_t l = up ? up_diag(sj, k, si) : down_diag(sj, k, si);
    if (l > 0) out[static_cast<std::size_t>(l)] = j;
  }
  return out;
}

inline std::size_t trailing_vars(const ListPattern& p) {
  std::size_t n = 0;
  for (auto it = p.members.rbegin(); it != p.members.rend() && !*it; ++it) ++n;
  return n;
}

/// Diagonal lists for row i: forced positions hold their queens, the rest
/// variables or, up to `extras` times, a numeral 1..i.
inline std::vector<ListPattern> diagonal_patterns(
    const std::map<std::size_t, std::size_t>& forced, std::size_t i,
    const NqBounds& b) {
  std::vector<ListPattern> out;
  const std::size_t need = forced.empty() ? 0 : forced.rbegin()->first;
  for (std::size_t n = need; n <= b.len; ++n) {
    ListPattern p;
    p.members.resize(n);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos,
                                                            std::size_t used) {
      if (pos > n) {
        if (trailing_vars(p) > b.vars) return;
        for (bool closed : {false, true}) {
          p.closed = closed;
          out.push_back(p);
        }
        return;
      }
      auto f = forced.find(pos);
      if (f != forced.end()) {
        p.members[pos - 1] = f->second;
        rec(pos + 1, used);
        return;
      }
      p.members[pos - 1] = std::nullopt;
      rec(pos + 1, used);
      if (used < b.extras)
        for (std::size_t q = 1; q <= i; ++q) {
          p.members[pos - 1] = q;
          rec(pos + 1, used + 1);
        }
      p.members[pos - 1] = std::nullopt;
    };
    rec(1, 0);
  }
  return out;
}

inline ListPattern board_pattern(const std::vector<std::size_t>& col,
                                 std::size_t length) {
  ListPattern p;
  p.members.resize(length);
  for (std::size_t j = 1; j < col.size(); ++j) p.members[col[j] - 1] = j;
  return p;
}

inline ListPattern short_pattern(const std::map<std::size_t, std::size_t>& f) {
  ListPattern p;
  p.members.resize(f.empty() ? 0 : f.rbegin()->first);
  for (const auto& [pos, j] : f) p.members[pos - 1] = j;
  return p;
}

inline Atom pqs_atom(std::size_t i, const ListPattern& cs,
                     const ListPattern& us, const ListPattern& ds,
                     VarSource& vars) {
  Term c = build(cs, vars);
  Term u = build(us, vars);
  Term h = vars.fresh_term();
  Term d = build(ds, vars);
  return Atom("pqs", {peano(i), c, u, cons(h, d)});
}

/// Checks one list argument against the sampling universe: list shaped,
/// linear, at most len members, members variables or numerals 1..i, and
/// at most `vars` variables after the last ground member.
inline bool list_in_universe(const Term& t, std::size_t i, const NqBounds& b) {
  auto v = open_list_view(t);
  if (!v || v->members.size() > b.len || !is_linear(t)) return false;
  std::size_t trailing = 0;
  for (const auto& m : v->members) {
    if (m.is_var()) {
      ++trailing;
      continue;
    }
    auto j = peano_value(m);
    if (!j || *j < 1 || *j > i) return false;
    trailing = 0;
  }
  return trailing <= b.vars;
}

/// Ground members of `list` sitting at positions not forced by `forced`.
inline std::size_t unforced_ground(
    const Term& list, const std::map<std::size_t, std::size_t>& forced) {
  std::size_t n = 0, pos = 0;
  for (Term cur = list; is_cons(cur); cur = cur.arg(1)) {
    ++pos;
    if (!cur.arg(0).is_var() && !forced.count(pos)) ++n;
  }
  return n;
}

}  // namespace detail

/// The sampling universe for the n-queens specifications: pq atoms with at
/// most len members per list; pqs atoms with row index <= i whose list
/// arguments pass the per-list limits above and which carry at most
/// `extras` unforced ground members per diagonal list.
inline bool within_bounds(const Atom& a, const SpecBounds& bounds) {
  const detail::NqBounds b(bounds.with_defaults(default_nqueens_bounds()));
  if (a.arity() != 4) return false;
  if (a.predicate() == "pq") {
    for (std::size_t p = 1; p <= 3; ++p) {
      auto v = open_list_view(a.arg(p));
      if (!v || v->members.size() > b.len) return false;
    }
    return true;
  }
  if (a.predicate() != "pqs") return false;
  auto i = peano_value(a.arg(0));
  if (!i || *i > b.i) return false;
  const Term& cs = a.arg(1);
  const Term& us = a.arg(2);
  const Term& d = a.arg(3);
  if (*i == 0)
    return detail::list_in_universe(cs, 0, b) &&
           detail::list_in_universe(us, 0, b) &&
           detail::list_in_universe(d, 0, b);
  if (!is_cons(d)) return false;
  const Term& ds = d.arg(1);
  if (!detail::list_in_universe(cs, *i, b) ||
      !detail::list_in_universe(us, *i, b) ||
      !detail::list_in_universe(ds, *i, b))
    return false;
  std::vector<std::size_t> col(*i + 1, 0);
  for (std::size_t j = 1; j <= *i; ++j) {
    auto k = detail::column_of(cs, peano(j));
    if (!k) return true;  // not a board; nothing forced
    col[j] = *k;
  }
  return detail::unforced_ground(us, detail::forced_positions(col, *i, true)) <=
             b.extras &&
         detail::unforced_ground(ds,
                                 detail::forced_positions(col, *i, false)) <=
             b.extras;
}

/// B_k: the member of S_pq with k variables in front of v.
inline Atom pq_member(std::size_t k, VarSource& vars) {
  Term v = vars.fresh_term();
  std::vector<Term> args{v};
  for (int p = 0; p < 3; ++p) {
    std::vector<Term> ms;
    for (std::size_t q = 0; q < k; ++q) ms.push_back(vars.fresh_term());
    ms.push_back(v);
    args.push_back(make_list(ms, vars.fresh_term()));
  }
  return Atom("pq", std::move(args));
}

inline Atom pqs_zero(VarSource& vars) {
  return Atom("pqs", {peano(0), vars.fresh_term(), vars.fresh_term(),
                      vars.fresh_term()});
}

/// One representative of every variance class of S within the universe.
inline std::vector<Atom> enumerate_S(const SpecBounds& bounds,
                                     VarSource& vars) {
  const detail::NqBounds b(bounds.with_defaults(default_nqueens_bounds()));
  std::vector<Atom> out;
  for (std::size_t k = 0; k < b.len; ++k) out.push_back(pq_member(k, vars));
  out.push_back(pqs_zero(vars));
  for (std::size_t i = 1; i <= b.i; ++i)
    detail::for_each_placement(i, b.len, [&](const auto& col) {
      const std::size_t last = *std::max_element(col.begin() + 1, col.end());
      const auto ups =
          detail::diagonal_patterns(detail::forced_positions(col, i, true), i, b);
      const auto downs = detail::diagonal_patterns(
          detail::forced_positions(col, i, false), i, b);
      for (std::size_t n = last; n <= std::min(b.len, last + b.vars); ++n) {
        const auto cs = detail::board_pattern(col, n);
        for (const auto& us : ups)
          for (const auto& ds : downs)
            out.push_back(detail::pqs_atom(i, cs, us, ds, vars));
      }
    });
  return out;
}

/// One representative of every variance class of S0 within the universe.
inline std::vector<Atom> enumerate_S0(const SpecBounds& bounds,
                                      VarSource& vars) {
  const detail::NqBounds b(bounds.with_defaults(default_nqueens_bounds()));
  std::vector<Atom> out;
  for (std::size_t k = 0; k < b.len; ++k) out.push_back(pq_member(k, vars));
  out.push_back(pqs_zero(vars));
  for (std::size_t i = 1; i <= b.i; ++i)
    detail::for_each_placement(i, b.len, [&](const auto& col) {
      const std::size_t last = *std::max_element(col.begin() + 1, col.end());
      const auto us =
          detail::short_pattern(detail::forced_positions(col, i, true));
      const auto ds =
          detail::short_pattern(detail::forced_positions(col, i, false));
      if (us.members.size() > b.len || ds.members.size() > b.len) return;
      out.push_back(
          detail::pqs_atom(i, detail::board_pattern(col, last), us, ds, vars));
    });
  return out;
}

/// gl(n, [v1..vn]) for n <= len.
inline std::vector<Atom> enumerate_S_gl(const SpecBounds& bounds,
                                        VarSource& vars) {
  const detail::NqBounds b(bounds.with_defaults(default_nqueens_bounds()));
  std::vector<Atom> out;
  for (std::size_t n = 0; n <= b.len; ++n) {
    std::vector<Term> ms;
    for (std::size_t q = 0; q < n; ++q) ms.push_back(vars.fresh_term());
    out.push_back(Atom("gl", {peano(n), make_list(ms)}));
  }
  return out;
}

/// qu(n, cs) for n <= len, by filtering permutations through member_S_qu.
inline std::vector<Atom> enumerate_S_qu(const SpecBounds& bounds, VarSource&) {
  const detail::NqBounds b(bounds.with_defaults(default_nqueens_bounds()));
  std::vector<Atom> out;
  for (std::size_t n = 0; n <= b.len; ++n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do {
      std::vector<Term> ms;
      for (auto j : perm) ms.push_back(peano(j));
      Atom a("qu", {peano(n), make_list(ms)});
      if (member_S_qu(a)) out.push_back(a);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Completeness witnesses

/// Witness for an atom of S0: B_0 and S_pqs2 atoms come from the unary
/// clauses, B_k from clause (4) over B_{k-1}, and pqs(s(i),..) from clause
/// (2) over an atom for row i and B_{j-1}, j being the column of s(i).
inline Witness completeness_witness(const Atom& a, VarSource& vars) {
  if (!member_S0(a)) throw Error(print(a) + " is not in S0");
  vars.ensure_above(max_var_id(a));
  if (member_S_pqs2(a)) return {parse_clause(nq::kClause1, vars), {}};
  if (member_S_pq(a)) {
    const std::size_t k = spine_of(a.arg(1)).members.size() - 1;
    if (k == 0) return {parse_clause(nq::kClause3, vars), {}};
    return {parse_clause(nq::kClause4, vars), {pq_member(k - 1, vars)}};
  }
  const std::size_t row = *peano_value(a.arg(0));
  const std::size_t i = row - 1;
  const Term top = peano(row);
  const Term& cs = a.arg(1);
  const Term& us = a.arg(2);
  const Term& ds = a.arg(3).arg(1);
  const std::size_t j = *detail::column_of(cs, top);
  Atom a2 = pq_member(j - 1, vars);
  if (i == 0) return {parse_clause(nq::kClause2, vars), {pqs_zero(vars), a2}};

  Term t = vars.fresh_term();
  for (std::size_t q = 1; q <= i; ++q) {
    auto k = detail::column_of(cs, peano(q));
    if (k && up_diag(q, *k, i) == 1) t = peano(q);
  }
  Atom a1("pqs", {peano(i), remove_member(cs, top, vars),
                  cons(t, remove_member(us, top, vars)),
                  remove_member(ds, top, vars)});
  return {parse_clause(nq::kClause2, vars), {a1, a2}};
}

inline WitnessRule nqueens_witness_rule() {
  return [](const Atom& a, VarSource& vars) -> std::optional<Witness> {
    return completeness_witness(a, vars);
  };
}

// ---------------------------------------------------------------------------
// Specifications

inline Specification spec_S() {
  Specification s;
  s.name = "S";
  s.member = member_S;
  s.enumerate = enumerate_S;
  s.level = level;
  s.default_bounds = default_nqueens_bounds();
  return s;
}

inline Specification spec_S0() {
  Specification s;
  s.name = "S0";
  s.member = member_S0;
  s.enumerate = enumerate_S0;
  s.level = level;
  // A1 in a clause (2) witness may be one member longer than its target.
  s.candidates = [](const SpecBounds& b, VarSource& vars) {
    SpecBounds wider = b;
    wider.set("len", b.get("len", 6) + 1);
    return enumerate_S0(wider, vars);
  };
  s.default_bounds = SpecBounds{{"i", 3}, {"len", 6}};
  return s;
}

inline Specification spec_S_gl() {
  Specification s;
  s.name = "S_gl";
  s.member = member_S_gl;
  s.enumerate = enumerate_S_gl;
  s.default_bounds = SpecBounds{{"len", 6}};
  return s;
}

inline Specification spec_S_qu() {
  Specification s;
  s.name = "S_qu";
  s.member = member_S_qu;
  s.enumerate = enumerate_S_qu;
  s.default_bounds = SpecBounds{{"len", 6}};
  return s;
}

/// S together with S_gl and S_qu, for the program with qu/2 and gl/2.
inline Specification spec_S_full() {
  Specification s;
  s.name = "S_full";
  s.member = [](const Atom& a) {
    return member_S(a) || member_S_gl(a) || member_S_qu(a);
  };
  s.enumerate = [](const SpecBounds& b, VarSource& vars) {
    auto out = enumerate_S(b, vars);
    for (auto& a : enumerate_S_gl(b, vars)) out.push_back(std::move(a));
    for (auto& a : enumerate_S_qu(b, vars)) out.push_back(std::move(a));
    return out;
  };
  s.default_bounds = default_nqueens_bounds();
  return s;
}

inline std::optional<Specification> find_nqueens_spec(const std::string& name) {
  if (name == "S") return spec_S();
  if (name == "S0") return spec_S0();
  if (name == "S_gl") return spec_S_gl();
  if (name == "S_qu") return spec_S_qu();
  if (name == "S_full") return spec_S_full();
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// The puzzle

using Placement = std::vector<std::size_t>;  // queen in column 1..n

/// Every placement of n non-attacking queens, by trying all permutations.
inline std::set<Placement> brute_force_queens(std::size_t n) {
  std::set<Placement> out;
  Placement q(n);
  std::iota(q.begin(), q.end(), 1);
  do {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = a + 1; b < n && ok; ++b) {
        std::size_t dq = q[a] > q[b] ? q[a] - q[b] : q[b] - q[a];
        ok = dq != b - a;
      }
    if (ok) out.insert(q);
  } while (std::next_permutation(q.begin(), q.end()));
  return out;
}

/// pqs(n, [V1..Vn], _, _).
inline Query queens_query(std::size_t n, VarSource& vars) {
  std::vector<Term> qs;
  for (std::size_t k = 0; k < n; ++k) qs.push_back(vars.fresh_term());
  return Query{{Atom("pqs", {peano(n), make_list(qs), vars.fresh_term(),
                             vars.fresh_term()})}};
}

/// The placement in the second argument of an answer to queens_query().
inline Placement extract_solution(const ComputedAnswer& answer) {
  if (answer.instance.empty() || answer.instance[0].arity() < 2)
    throw Error("extract_solution: not an answer for pqs/4");
  const Term& qs = answer.instance[0].arg(1);
  auto v = open_list_view(qs);
  if (!v || !v->is_closed())
    throw Error("extract_solution: " + print(qs) + " is not a list");
  Placement out;
  for (const auto& m : v->members) {
    auto j = peano_value(m);
    if (!j) throw Error("extract_solution: " + print(qs) + " is not ground");
    out.push_back(*j);
  }
  return out;
}

}  // namespace ssem
