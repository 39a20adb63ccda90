#pragma once

// Random generators and small oracles shared by the test suites.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ssem/ssem.hpp"

namespace ssem::testing {

inline constexpr std::uint64_t kSeed = 0x5eed2024;

struct Sym {
  std::string name;
  std::size_t arity;
};

/// Random terms over a fixed signature and a fixed pool of variables.
class TermGen {
 public:
  TermGen(std::mt19937_64& rng, std::vector<Sym> syms, std::vector<Term> vars)
      : rng_(rng), syms_(std::move(syms)), vars_(std::move(vars)) {}

  Term term(std::size_t depth) {
    std::uniform_int_distribution<int> coin(0, 9);
    if (depth == 0 || coin(rng_) < 3) return leaf();
    const Sym& s = syms_[pick(syms_.size())];
    if (s.arity == 0) return Term::constant(s.name);
    std::vector<Term> args;
    for (std::size_t i = 0; i < s.arity; ++i) args.push_back(term(depth - 1));
    return Term::compound(s.name, std::move(args));
  }

  Atom atom(const std::string& pred, std::size_t arity, std::size_t depth) {
    std::vector<Term> args;
    for (std::size_t i = 0; i < arity; ++i) args.push_back(term(depth));
    return Atom(pred, std::move(args));
  }

  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  std::mt19937_64& rng() { return rng_; }
  const std::vector<Term>& vars() const { return vars_; }

 private:
  Term leaf() {
    std::vector<const Sym*> consts;
    for (const auto& s : syms_)
      if (s.arity == 0) consts.push_back(&s);
    std::size_t k = pick(vars_.size() + consts.size());
    if (k < vars_.size()) return vars_[k];
    return Term::constant(consts[k - vars_.size()]->name);
  }

  std::mt19937_64& rng_;
  std::vector<Sym> syms_;
  std::vector<Term> vars_;
};

inline std::vector<Term> named_vars(VarSource& vs,
                                    const std::vector<std::string>& names) {
  std::vector<Term> out;
  for (const auto& n : names) out.push_back(vs.fresh_named(n));
  return out;
}

/// True when `instance` is an instance of `general`.
inline bool is_instance_of(const Term& instance, const Term& general) {
  std::map<Var, Term> seen;
  std::function<bool(const Term&, const Term&)> go = [&](const Term& p,
                                                        const Term& t) {
    if (p.is_var()) {
      auto [it, inserted] = seen.emplace(p.var(), t);
      return inserted || it->second == t;
    }
    if (t.is_var() || p.functor() != t.functor() || p.arity() != t.arity())
      return false;
    for (std::size_t i = 0; i < p.arity(); ++i)
      if (!go(p.arg(i), t.arg(i))) return false;
    return true;
  };
  return go(general, instance);
}

/// All terms over `syms` and `vars` of depth <= d.
inline std::vector<Term> all_terms(const std::vector<Sym>& syms,
                                   const std::vector<Term>& vars,
                                   std::size_t d) {
  std::vector<Term> level = vars;
  for (const auto& s : syms)
    if (s.arity == 0) level.push_back(Term::constant(s.name));
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Term> next = vars;
    for (const auto& s : syms) {
      if (s.arity == 0) {
        next.push_back(Term::constant(s.name));
        continue;
      }
      std::vector<std::size_t> idx(s.arity, 0);
      for (;;) {
        std::vector<Term> args;
        for (auto i : idx) args.push_back(level[i]);
        next.push_back(Term::compound(s.name, std::move(args)));
        std::size_t p = 0;
        while (p < s.arity && ++idx[p] == level.size()) idx[p++] = 0;
        if (p == s.arity) break;
      }
    }
    level = std::move(next);
  }
  return level;
}

/// Random renaming of every variable of x to fresh, shuffled variables.
template <typename T>
T random_renaming(const T& x, VarSource& vars, std::mt19937_64& rng) {
  auto vs = variables_of(x);
  std::vector<Term> fresh;
  for (std::size_t i = 0; i < vs.size(); ++i) fresh.push_back(vars.fresh_term());
  std::shuffle(fresh.begin(), fresh.end(), rng);
  Substitution r;
  for (std::size_t i = 0; i < vs.size(); ++i) r.bind(vs[i], fresh[i]);
  return apply(r, x);
}

}  // namespace ssem::testing
