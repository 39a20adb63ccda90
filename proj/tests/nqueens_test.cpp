#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "support.hpp"

namespace ssem {
namespace {

struct Nq : ::testing::Test {
  VarSource vars;
  Term T(const std::string& s) { return parse_term(s, vars); }
  Atom A(const std::string& s) { return parse_atom(s, vars); }
};

// --- program ----------------------------------------------------------------

TEST_F(Nq, ProgramShape) {
  Program p = nqueens_program(vars);
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p.clauses()[1].body.size(), 2u);
  Program full = nqueens_program(vars, NqueensVariant::kFull);
  for (auto [pred, arity] : {std::pair{"qu", 2}, {"gl", 2}, {"pqs", 4}, {"pq", 4}})
    EXPECT_EQ(full.arity_of(pred), std::optional<std::size_t>(arity)) << pred;
}

TEST_F(Nq, MutantsDifferFromTheOriginalWhereExpected) {
  Program plain = nqueens_program(vars);
  auto same = [&](NqueensVariant v, std::size_t clause) {
    Program m = nqueens_program(vars, v);
    return m.size() > clause && is_variant(m.clauses()[clause], plain.clauses()[clause]);
  };
  EXPECT_FALSE(same(NqueensVariant::kDropDs, 1));
  EXPECT_FALSE(same(NqueensVariant::kSwapUsDs, 1));
  EXPECT_FALSE(same(NqueensVariant::kDropBody4, 3));
  EXPECT_EQ(nqueens_program(vars, NqueensVariant::kNoClause3).size(), 3u);
  // Clause (3) is symmetric in its last two arguments, so swapping them
  // literally gives back a variant of the clause.
  EXPECT_TRUE(is_variant(parse_clause(nq::kClause3SwapUsDs, vars),
                         parse_clause(nq::kClause3, vars)));
}

// --- diagonals --------------------------------------------------------------

TEST(Diagonals, Examples) {
  const std::int64_t i = 7;
  EXPECT_EQ(up_diag(i - 3, 2, i), -1);
  EXPECT_EQ(down_diag(i - 3, 2, i), 5);
  for (std::int64_t k = 1; k <= 8; ++k) {
    EXPECT_EQ(up_diag(i, k, i), k);
    EXPECT_EQ(down_diag(i, k, i), k);
  }
}

TEST(Diagonals, ShiftAndSumLaws) {
  for (std::int64_t j = 1; j <= 8; ++j)
    for (std::int64_t k = 1; k <= 8; ++k)
      for (std::int64_t i = 0; i <= 8; ++i) {
        EXPECT_EQ(up_diag(j, k, i + 1), up_diag(j, k, i) - 1);
        EXPECT_EQ(down_diag(j, k, i + 1), down_diag(j, k, i) + 1);
        EXPECT_EQ(up_diag(j, k, i) + down_diag(j, k, i), 2 * k);
        EXPECT_EQ(up_diag(j, k, i) - down_diag(j, k, i), 2 * (j - i));
      }
}

// --- lists ------------------------------------------------------------------

TEST_F(Nq, GvdExamples) {
  EXPECT_TRUE(is_gvd(T("[1,X,3|V]")));
  EXPECT_FALSE(is_gvd(T("[1,1|V]")));
  EXPECT_FALSE(is_gvd(T("[f(X)|V]")));
  EXPECT_FALSE(is_gvd(T("[X,X|V]")));
  EXPECT_FALSE(is_gvd(T("[1,2]")));
  EXPECT_TRUE(is_gvd(T("V")));
}

TEST_F(Nq, ShortGvd) {
  EXPECT_TRUE(is_short_gvd(T("[1,X,3|V]")));
  EXPECT_FALSE(is_short_gvd(T("[1,X|V]")));
  EXPECT_TRUE(is_short_gvd(T("V")));
}

TEST_F(Nq, RemoveMember) {
  Term s = T("[1,X,3|V]");
  Term last = remove_member(s, peano(3), vars);
  EXPECT_EQ(print(last), "[1|V]");
  Term first = remove_member(s, peano(1), vars);
  auto v = spine_of(first);
  ASSERT_EQ(v.members.size(), 3u);
  EXPECT_TRUE(v.members[0].is_var());
  EXPECT_FALSE(occurs_in(v.members[0].var(), s));
  EXPECT_EQ(print(make_list({v.members[1], v.members[2]}, v.tail)), "[X,3|V]");
  EXPECT_TRUE(is_short_gvd(first));
  EXPECT_TRUE(is_short_gvd(last));
  EXPECT_EQ(print(remove_member(T("[X,2|V]"), peano(2), vars)), "V");
  EXPECT_THROW(remove_member(s, peano(2), vars), Error);
  EXPECT_THROW(remove_member(s, T("Y"), vars), Error);
  EXPECT_THROW(remove_member(T("[1,X|V]"), peano(1), vars), Error);
}

TEST_F(Nq, CsCorrect) {
  EXPECT_TRUE(cs_correct_up_to(T("[2,4,1,3|V]"), 4));
  EXPECT_TRUE(cs_correct_up_to(T("V"), 0));
  EXPECT_FALSE(cs_correct_up_to(T("[1,2|V]"), 2));
  EXPECT_FALSE(cs_correct_up_to(T("[2,4,1|V]"), 4));
  EXPECT_FALSE(cs_correct_up_to(T("[1,X|V]"), 0));
}

TEST_F(Nq, PairCorrect) {
  EXPECT_TRUE(pair_correct(T("U"), T("D"), 0, 3, T("C")));
  EXPECT_TRUE(pair_correct(T("[1|U]"), T("[1|D]"), 1, 1, T("[1|C]")));
  EXPECT_FALSE(pair_correct(T("[X|U]"), T("[1|D]"), 1, 1, T("[1|C]")));
  EXPECT_FALSE(pair_correct(T("[1|U]"), T("[1|D]"), 1, 1, T("[X|C]")));
}

// --- membership -------------------------------------------------------------

TEST_F(Nq, MemberS) {
  EXPECT_TRUE(member_S_pq(A("pq(V,[V|A],[V|B],[V|C])")));
  EXPECT_TRUE(member_S_pq(A("pq(V,[X,V|A],[Y,V|B],[Z,V|C])")));
  EXPECT_FALSE(member_S_pq(A("pq(V,[X,V|A],[V|B],[Z,V|C])")));
  EXPECT_FALSE(member_S_pq(A("pq(V,[V|A],[V|A],[V|C])")));
  EXPECT_TRUE(member_S_pqs2(A("pqs(0,X,Y,Z)")));
  EXPECT_FALSE(member_S_pqs2(A("pqs(0,X,X,Z)")));
  EXPECT_TRUE(member_S_pqs1(A("pqs(1,[1|V],[1|U],[H,1|D])")));
  EXPECT_FALSE(member_S_pqs1(A("pqs(1,[1|V],[1|U],[1|D])")));
  EXPECT_FALSE(member_S_pqs1(A("pqs(1,[1|V],[1|U],[H,1|H])")));
  EXPECT_TRUE(member_S(A("pqs(2,[1,X,2|V],[A,B,2|U],[H,C,1,2|D])")));
}

TEST_F(Nq, PqsOneDoesNotRequireOpenLists) {
  EXPECT_TRUE(member_S_pqs1(A("pqs(1,[1|V],[1],[H,1])")));
}

TEST_F(Nq, MemberS0) {
  Atom minimal = A("pqs(1,[1|V],[1|U],[H,1|D])");
  EXPECT_TRUE(member_S0_pqs(minimal));
  auto it2 = iterate(nqueens_program(vars), 2, vars);
  EXPECT_TRUE(it2.atoms.contains(minimal));

  Atom two = A("pqs(2,[1,X,2|V],[A,B,2|U],[H,C,1,2|D])");
  EXPECT_TRUE(member_S0_pqs(two));
  // queen 1 has up diagonal number 0 w.r.t. row 2, so it may not be in us
  Atom extra = A("pqs(2,[1,X,2|V],[1,B,2|U],[H,C,1,2|D])");
  EXPECT_TRUE(member_S_pqs1(extra));
  EXPECT_FALSE(member_S0_pqs(extra));
  EXPECT_FALSE(member_S0_pqs(A("pqs(2,[1,X,2,Y|V],[A,B,2|U],[H,C,1,2|D])")));
  EXPECT_TRUE(member_S0(A("pqs(0,X,Y,Z)")));
  EXPECT_TRUE(member_S0(A("pq(V,[V|A],[V|B],[V|C])")));
}

TEST_F(Nq, GlAndQu) {
  EXPECT_TRUE(member_S_gl(A("gl(2,[X,Y])")));
  EXPECT_FALSE(member_S_gl(A("gl(2,[X,X])")));
  EXPECT_FALSE(member_S_gl(A("gl(2,[X|Y])")));
  EXPECT_TRUE(member_S_qu(A("qu(4,[2,4,1,3])")));
  EXPECT_FALSE(member_S_qu(A("qu(3,[1,2,3])")));
  EXPECT_TRUE(member_S_qu(A("qu(0,[])")));
}

// --- level ------------------------------------------------------------------

TEST_F(Nq, LevelExamples) {
  EXPECT_EQ(level(A("pqs(s(0),[1|V],U,D)")), 2u);
  EXPECT_EQ(level(A("pq(V,[C,V|C0],U,D)")), 2u);
  EXPECT_EQ(level(A("pqs(0,X,Y,Z)")), 0u);
  EXPECT_EQ(level(A("pq(V,f(a,b),U,D)")), 0u);
  EXPECT_THROW(level(A("gl(0,[])")), Error);
}

// --- enumeration ------------------------------------------------------------

std::set<std::string> keys(const std::vector<Atom>& xs) {
  std::set<std::string> out;
  for (const auto& a : xs) out.insert(canonical_key(a));
  return out;
}

TEST_F(Nq, EnumerationCounts) {
  auto s = enumerate_S({{"i", 0}, {"len", 3}}, vars);
  std::size_t pq = 0, pqs = 0;
  for (const auto& a : s) (a.predicate() == "pq" ? pq : pqs)++;
  EXPECT_EQ(pq, 3u);
  EXPECT_EQ(pqs, 1u);
}

TEST_F(Nq, EnumerationIsSoundAndVariantFree) {
  for (SpecBounds b : {SpecBounds{}, SpecBounds{{"extras", 1}, {"len", 5}},
                       SpecBounds{{"i", 4}, {"len", 5}, {"vars", 1}}}) {
    auto s = enumerate_S(b, vars);
    EXPECT_EQ(keys(s).size(), s.size());
    for (const auto& a : s) {
      EXPECT_TRUE(member_S(a)) << print(a);
      EXPECT_TRUE(within_bounds(a, b)) << print(a);
    }
    auto s0 = enumerate_S0(b, vars);
    EXPECT_EQ(keys(s0).size(), s0.size());
    for (const auto& a : s0) {
      EXPECT_TRUE(member_S0(a)) << print(a);
      EXPECT_TRUE(member_S(a)) << print(a);
      EXPECT_TRUE(within_bounds(a, b)) << print(a);
    }
  }
}

// Raw enumerator: every list of at most `len` members drawn from variables
// and numerals 1..i, with a variable or [] as tail; all variables distinct.
std::vector<Term> raw_lists(std::size_t len, std::size_t i, VarSource& vars) {
  std::vector<Term> out;
  std::function<void(std::vector<Term>&)> rec = [&](std::vector<Term>& ms) {
    out.push_back(make_list(ms, nil()));
    out.push_back(make_list(ms, vars.fresh_term()));
    if (ms.size() == len) return;
    ms.push_back(vars.fresh_term());
    rec(ms);
    for (std::size_t q = 1; q <= i; ++q) {
      ms.back() = peano(q);
      rec(ms);
    }
    ms.pop_back();
  };
  std::vector<Term> ms;
  rec(ms);
  return out;
}

std::vector<Atom> raw_pqs(std::size_t i, std::size_t len, VarSource& vars) {
  std::vector<Atom> out;
  std::vector<Term> css;
  for (const auto& cs : raw_lists(len, i, vars))
    if (i == 0 ? cs.is_var() : cs_correct_up_to(cs, i)) css.push_back(cs);
  const auto uss = raw_lists(len, i, vars);
  const auto dss = raw_lists(len + 1, i, vars);
  for (const auto& cs : css)
    for (const auto& us : uss)
      for (const auto& ds : dss)
        out.push_back(fresh_variant(Atom("pqs", {peano(i), cs, us, ds}), vars));
  return out;
}

TEST_F(Nq, EnumeratorMatchesRawFilterForPqs) {
  for (std::size_t len = 1; len <= 3; ++len)
    for (std::size_t extras = 0; extras <= 1; ++extras) {
      SpecBounds b{{"i", 2}, {"len", static_cast<std::int64_t>(len)},
                   {"vars", 1}, {"extras", static_cast<std::int64_t>(extras)}};
      std::set<std::string> want_s, want_s0;
      for (std::size_t i = 0; i <= 2; ++i)
        for (const auto& a : raw_pqs(i, len, vars)) {
          if (!within_bounds(a, b)) continue;
          if (member_S(a)) want_s.insert(canonical_key(a));
          if (member_S0(a)) want_s0.insert(canonical_key(a));
        }
      auto only_pqs = [](std::vector<Atom> xs) {
        std::erase_if(xs, [](const Atom& a) { return a.predicate() != "pqs"; });
        return xs;
      };
      EXPECT_EQ(keys(only_pqs(enumerate_S(b, vars))), want_s)
          << "len=" << len << " extras=" << extras;
      if (extras == 0) {
        EXPECT_EQ(keys(only_pqs(enumerate_S0(b, vars))), want_s0)
            << "len=" << len;
      }
    }
}

// Advances a restricted growth string; false after the last one.
bool next_rgs(std::vector<std::size_t>& rgs) {
  for (std::size_t p = rgs.size(); p-- > 1;) {
    const std::size_t mx = *std::max_element(rgs.begin(), rgs.begin() + p);
    if (rgs[p] <= mx) {
      ++rgs[p];
      std::fill(rgs.begin() + p + 1, rgs.end(), 0);
      return true;
    }
  }
  return false;
}

// pq atoms over every sharing pattern of variables (restricted growth
// strings over the variable slots).
TEST_F(Nq, EnumeratorMatchesRawFilterForPq) {
  const std::size_t len = 2;
  // shape of one list: number of members and whether the tail is a variable
  std::vector<std::pair<std::size_t, bool>> shapes;
  for (std::size_t n = 0; n <= len; ++n)
    for (bool open : {false, true}) shapes.push_back({n, open});
  std::set<std::string> want;
  for (const auto& s1 : shapes)
    for (const auto& s2 : shapes)
      for (const auto& s3 : shapes) {
        const std::size_t slots = 1 + s1.first + s1.second + s2.first +
                                  s2.second + s3.first + s3.second;
        std::vector<std::size_t> rgs(slots, 0);
        for (;;) {
          std::vector<Term> pool;
          std::size_t at = 0;
          auto next = [&] {
            std::size_t c = rgs[at++];
            while (pool.size() <= c) pool.push_back(vars.fresh_term());
            return pool[c];
          };
          std::vector<Term> args{next()};
          for (const auto& s : {s1, s2, s3}) {
            std::vector<Term> ms;
            for (std::size_t m = 0; m < s.first; ++m) ms.push_back(next());
            args.push_back(make_list(ms, s.second ? next() : nil()));
          }
          Atom a("pq", args);
          if (member_S_pq(a) && within_bounds(a, {{"len", 2}}))
            want.insert(canonical_key(a));
          if (!next_rgs(rgs)) break;
        }
      }
  std::vector<Atom> got = enumerate_S({{"i", 0}, {"len", 2}}, vars);
  std::erase_if(got, [](const Atom& a) { return a.predicate() != "pq"; });
  EXPECT_EQ(keys(got), want);
  EXPECT_EQ(want.size(), 2u);
}

// --- engine bridges ---------------------------------------------------------

TEST_F(Nq, S0IsContainedInS) {
  for (const auto& a : enumerate_S0({{"i", 4}, {"len", 7}}, vars))
    EXPECT_TRUE(member_S(a)) << print(a);
}

TEST_F(Nq, IteratesStayInsideS) {
  Program p = nqueens_program(vars);
  auto s = iterate(p, 6, vars);
  EXPECT_FALSE(s.truncated);
  EXPECT_GT(s.atoms.size(), 10u);
  for (const auto& a : s.atoms) EXPECT_TRUE(member_S(a)) << print(a);
}

TEST_F(Nq, EnumeratedS0AppearsOnceItsLevelIsReached) {
  Program p = nqueens_program(vars);
  auto sample = enumerate_S0({{"i", 2}, {"len", 4}}, vars);
  std::uint64_t top = 0;
  for (const auto& a : sample) top = std::max(top, level(a));
  std::vector<SInterpretation> its;
  for (std::size_t k = 0; k <= top + 1; ++k) its.push_back(iterate(p, k, vars));
  for (const auto& a : sample)
    EXPECT_TRUE(its[level(a) + 1].atoms.contains(a)) << print(a);
}

// A bounded sample with i <= 2 and len <= 4 reaches level 6, so four
// iterations are not enough for all of it.
TEST_F(Nq, FourIterationsMissPartOfTheSmallSample) {
  Program p = nqueens_program(vars);
  auto it4 = iterate(p, 4, vars);
  Atom deep = A("pqs(2,[A,2,B,1|V],[C,2,1|U],[H,D,2,E,F,1|W])");
  ASSERT_TRUE(member_S0(deep));
  EXPECT_EQ(level(deep), 6u);
  EXPECT_FALSE(it4.atoms.contains(deep));
  EXPECT_TRUE(iterate(p, 7, vars).atoms.contains(deep));
  std::size_t missing = 0;
  for (const auto& a : enumerate_S0({{"i", 2}, {"len", 4}}, vars))
    if (!it4.atoms.contains(a)) ++missing;
  EXPECT_GT(missing, 0u);
}

TEST(Queens, BruteForce) {
  EXPECT_EQ(brute_force_queens(0), (std::set<Placement>{{}}));
  EXPECT_TRUE(brute_force_queens(3).empty());
  EXPECT_EQ(brute_force_queens(4),
            (std::set<Placement>{{2, 4, 1, 3}, {3, 1, 4, 2}}));
  EXPECT_EQ(brute_force_queens(6).size(), 4u);
}

TEST(Queens, SolveMatchesBruteForce) {
  for (std::size_t n = 0; n <= 5; ++n) {
    VarSource vars;
    Program p = nqueens_program(vars);
    Limits lim;
    lim.max_depth = 4 * (n + 1) * (n + 1);
    auto r = solve(p, queens_query(n, vars), lim, vars);
    EXPECT_EQ(r.status, SolveStatus::kExhausted) << n;
    std::set<Placement> got;
    for (const auto& a : r.answers) got.insert(extract_solution(a));
    EXPECT_EQ(got, brute_force_queens(n)) << n;
  }
}

TEST_F(Nq, ExtractSolution) {
  ComputedAnswer a;
  a.instance = {A("pqs(4,[2,4,1,3],U,D)")};
  EXPECT_EQ(extract_solution(a), (Placement{2, 4, 1, 3}));
  a.instance = {A("pqs(1,[1],U,D)")};
  EXPECT_EQ(extract_solution(a), (Placement{1}));
  a.instance = {A("pqs(2,[1,X],U,D)")};
  EXPECT_THROW(extract_solution(a), Error);
  a.instance = {A("pqs(2,[1|X],U,D)")};
  EXPECT_THROW(extract_solution(a), Error);
}

// --- witnesses --------------------------------------------------------------

TEST_F(Nq, WitnessForFirstRow) {
  Atom a = A("pqs(1,[1|V],[1|U],[H,1|D])");
  Witness w = completeness_witness(a, vars);
  EXPECT_TRUE(is_variant(w.clause, parse_clause(nq::kClause2, vars)));
  ASSERT_EQ(w.body.size(), 2u);
  EXPECT_TRUE(member_S_pqs2(w.body[0]));
  EXPECT_TRUE(member_S_pq(w.body[1]));
  AtomSet given;
  for (const auto& b : w.body) given.insert(b);
  EXPECT_TRUE(tpi_clause(w.clause, given, vars).contains(a));
}

TEST_F(Nq, WitnessForPqChain) {
  Atom b2 = pq_member(2, vars);
  Witness w = completeness_witness(b2, vars);
  EXPECT_TRUE(is_variant(w.clause, parse_clause(nq::kClause4, vars)));
  ASSERT_EQ(w.body.size(), 1u);
  EXPECT_TRUE(is_variant(w.body[0], pq_member(1, vars)));
}

TEST_F(Nq, WitnessForUnitClauses) {
  Witness w0 = completeness_witness(A("pqs(0,X,Y,Z)"), vars);
  EXPECT_TRUE(is_variant(w0.clause, parse_clause(nq::kClause1, vars)));
  EXPECT_TRUE(w0.body.empty());
  Witness b0 = completeness_witness(pq_member(0, vars), vars);
  EXPECT_TRUE(is_variant(b0.clause, parse_clause(nq::kClause3, vars)));
  EXPECT_TRUE(b0.body.empty());
  EXPECT_THROW(completeness_witness(A("pqs(0,X,X,Z)"), vars), Error);
}

TEST_F(Nq, WitnessesDecreaseLevelAndReproduceTheTarget) {
  for (const auto& a : enumerate_S0({{"i", 3}, {"len", 6}}, vars)) {
    Witness w = completeness_witness(a, vars);
    AtomSet given;
    for (const auto& b : w.body) {
      EXPECT_TRUE(member_S0(b)) << print(a) << " <- " << print(b);
      EXPECT_LT(level(b), level(a)) << print(a) << " <- " << print(b);
      given.insert(b);
    }
    EXPECT_TRUE(tpi_clause(w.clause, given, vars).contains(a)) << print(a);
  }
}

// --- properties -------------------------------------------------------------

struct NqProperty : ::testing::Test {
  std::mt19937_64 rng{testing::kSeed};
  VarSource vars;

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }

  // Random g.v.d. over the given numerals (each used at most once).
  Term random_gvd(std::vector<std::size_t> numerals, std::size_t max_len) {
    std::shuffle(numerals.begin(), numerals.end(), rng);
    std::vector<Term> ms;
    const std::size_t n = uniform(0, max_len);
    for (std::size_t k = 0; k < n; ++k) {
      if (!numerals.empty() && uniform(0, 1)) {
        ms.push_back(peano(numerals.back()));
        numerals.pop_back();
      } else {
        ms.push_back(vars.fresh_term());
      }
    }
    return make_list(ms, vars.fresh_term());
  }
};

TEST_F(NqProperty, GvdUnificationClosure) {
  int unified = 0;
  for (int n = 0; n < 600; ++n) {
    std::vector<std::size_t> all{1, 2, 3, 4, 5, 6};
    std::shuffle(all.begin(), all.end(), rng);
    const std::size_t cut = uniform(0, all.size());
    Term a = random_gvd({all.begin(), all.begin() + cut}, 5);
    Term b = random_gvd({all.begin() + cut, all.end()}, 5);
    ASSERT_TRUE(is_gvd(a) && is_gvd(b));
    auto m = mgu(a, b);
    if (!m) continue;
    ++unified;
    EXPECT_TRUE(is_gvd(apply(*m, a))) << print(a) << " = " << print(b);
  }
  EXPECT_GE(unified, 200);
}

TEST_F(NqProperty, PairCorrectnessSurvivesAShift) {
  int antecedent = 0;
  for (int n = 0; n < 800; ++n) {
    const std::size_t i = uniform(1, 5);
    const std::size_t m = uniform(0, i);
    const std::size_t width = 7;
    // queens 1..m in distinct random columns of a width-wide board
    std::vector<std::size_t> cols(width);
    std::iota(cols.begin(), cols.end(), 1);
    std::shuffle(cols.begin(), cols.end(), rng);
    std::vector<Term> cs(width), us(width + i), ds(width + i);
    for (auto* l : {&cs, &us, &ds})
      for (auto& t : *l) t = vars.fresh_term();
    for (std::size_t j = 1; j <= m; ++j) {
      const auto sj = static_cast<std::int64_t>(j);
      const auto k = static_cast<std::int64_t>(cols[j - 1]);
      const auto si = static_cast<std::int64_t>(i);
      cs[cols[j - 1] - 1] = peano(j);
      if (auto l = up_diag(sj, k, si); l > 0) us[l - 1] = peano(j);
      if (auto l = down_diag(sj, k, si); l > 0) ds[l - 1] = peano(j);
    }
    // occasionally damage one diagonal entry
    if (uniform(0, 3) == 0) (uniform(0, 1) ? us : ds)[uniform(0, width - 1)] = peano(9);
    Term c = make_list(cs, vars.fresh_term());
    Term u = make_list(us, vars.fresh_term());
    Term d = make_list(ds, vars.fresh_term());
    if (!pair_correct(u, d, m, i, c)) continue;
    ++antecedent;
    EXPECT_TRUE(pair_correct(tail_of(u, vars), cons(vars.fresh_term(), d), m,
                             i + 1, c))
        << print(u) << " " << print(d) << " m=" << m << " i=" << i;
  }
  EXPECT_GE(antecedent, 200);
}

TEST_F(NqProperty, LevelIsInvariantUnderRenaming) {
  auto sample = enumerate_S({{"i", 3}, {"len", 5}}, vars);
  auto s0 = enumerate_S0({{"i", 3}, {"len", 6}}, vars);
  sample.insert(sample.end(), s0.begin(), s0.end());
  ASSERT_GE(sample.size(), 200u);
  for (const auto& a : sample)
    EXPECT_EQ(level(testing::random_renaming(a, vars, rng)), level(a));
}

TEST_F(NqProperty, RemoveMemberDoesNotIncreaseLength) {
  int cases = 0;
  for (int n = 0; n < 500 && cases < 300; ++n) {
    Term s = random_gvd({1, 2, 3, 4, 5}, 6);
    ListView v = spine_of(s);
    if (!is_short_gvd(s) || v.members.empty()) continue;
    std::vector<Term> ground;
    for (const auto& m : v.members)
      if (m.is_ground()) ground.push_back(m);
    const Term& g = ground[uniform(0, ground.size() - 1)];
    Term r = remove_member(s, g, vars);
    ++cases;
    EXPECT_TRUE(is_short_gvd(r)) << print(s) << " - " << print(g);
    EXPECT_LE(detail::measure(r), detail::measure(s));
    EXPECT_FALSE(detail::column_of(r, g));
  }
  EXPECT_GE(cases, 200);
}

}  // namespace
}  // namespace ssem
