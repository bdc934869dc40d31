#pragma once

// Registry of named, runnable verifications. Each check evaluates one
// concrete definability or equivalence claim on small structures, compares
// the result against an independently computed oracle, and reports PASS or
// FAIL with replayable evidence. Checks never silently repair a claim: where
// a stated formula disagrees with its own intended content, the check
// verifies the intended content and records the discrepancy in its notes.

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coordlens/catalog.hpp"
#include "coordlens/criteria.hpp"
#include "coordlens/groups.hpp"
#include "coordlens/logic.hpp"
#include "coordlens/parallel.hpp"
#include "coordlens/reduced.hpp"

namespace coordlens::paperchecks {

enum class Scale { Ci, Full };

inline const char* to_string(Scale s) {
  return s == Scale::Ci ? "ci" : "full";
}

inline std::optional<Scale> parse_scale(const std::string& s) {
  if (s == "ci") return Scale::Ci;
  if (s == "full") return Scale::Full;
  return std::nullopt;
}

struct CheckResult {
  std::string name;
  std::string claim;  // the assertion under test, in one sentence
  bool pass = false;
  std::vector<std::string> instances;        // one line per verified instance
  std::vector<std::string> counterexamples;  // concrete evidence on failure
  std::vector<std::string> notes;            // flagged readings and caveats
  long long millis = 0;
};

namespace detail {

inline void record(CheckResult& r, bool cond, const std::string& what,
                   const std::string& evidence = "") {
  r.instances.push_back(what + (cond ? ": ok" : ": FAILED"));
  if (!cond) {
    r.pass = false;
    r.counterexamples.push_back(evidence.empty() ? what : evidence);
  }
}

// --- formula building over the group signature ---

inline logic::Term t_app(const logic::Signature& sig, const std::string& fn,
                         std::vector<logic::Term> args) {
  logic::Term t;
  t.kind = logic::Term::Kind::App;
  t.name = fn;
  t.sym = sig.function_index(fn);
  if (t.sym < 0) throw std::invalid_argument("unknown function: " + fn);
  t.args = std::move(args);
  return t;
}

inline logic::Term t_cst(const logic::Signature& sig, const std::string& c) {
  logic::Term t;
  t.kind = logic::Term::Kind::Const;
  t.name = c;
  t.sym = sig.constant_index(c);
  if (t.sym < 0) throw std::invalid_argument("unknown constant: " + c);
  return t;
}

inline logic::Term t_mul(const logic::Signature& sig, logic::Term a,
                         logic::Term b) {
  return t_app(sig, "*", {std::move(a), std::move(b)});
}

inline logic::Term t_pow(const logic::Signature& sig, const logic::Term& a,
                         int k) {
  logic::Term t = a;
  for (int i = 1; i < k; ++i) t = t_mul(sig, t, a);
  return t;
}

inline logic::FormulaPtr mk_neq(logic::Term a, logic::Term b) {
  return logic::mk_not(logic::mk_eq(std::move(a), std::move(b)));
}

inline logic::FormulaPtr conj_all(std::vector<logic::FormulaPtr> fs) {
  if (fs.empty()) throw std::invalid_argument("empty conjunction");
  logic::FormulaPtr out = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) out = logic::mk_and(out, fs[i]);
  return out;
}

// --- symmetric group scaffolding ---

struct SymView {
  catalog::CatalogEntry entry;  // keeps the shared data alive
  const groups::FiniteGroup* g = nullptr;
  const catalog::SymmetricData* sym = nullptr;
  int points = 0;
  std::vector<int> c2;  // element ids of the transpositions
};

inline int moved_points(const std::vector<int>& p) {
  int m = 0;
  for (size_t j = 0; j < p.size(); ++j)
    if (p[j] != (int)j) ++m;
  return m;
}

// Sorted sizes of the nontrivial cycles of a permutation.
inline std::vector<int> cycle_type(const std::vector<int>& p) {
  std::vector<int> type;
  std::vector<char> seen(p.size(), 0);
  for (size_t j = 0; j < p.size(); ++j) {
    if (seen[j]) continue;
    int len = 0;
    for (int q = (int)j; !seen[q]; q = p[q]) {
      seen[q] = 1;
      ++len;
    }
    if (len > 1) type.push_back(len);
  }
  std::sort(type.begin(), type.end());
  return type;
}

inline SymView sym_view(int n) {
  SymView v;
  v.entry = catalog::build("S" + std::to_string(n));
  v.g = v.entry.group.get();
  v.sym = v.entry.sym.get();
  v.points = n;
  for (int x = 0; x < v.g->n; ++x)
    if (cycle_type(v.sym->perms[x]) == std::vector<int>{2}) v.c2.push_back(x);
  return v;
}

// Group structure extended with a unary relation "tc" holding on the
// transpositions, used to guard quantifiers semantically.
inline logic::FiniteStructure tc_structure(const SymView& v) {
  logic::Signature sig = logic::group_signature();
  sig.relations.push_back({"tc", 1});
  logic::FiniteStructure m = logic::make_structure(sig, v.g->labels);
  logic::set_function_table(m, "*", v.g->table);
  std::vector<int32_t> inv(v.g->inverse.begin(), v.g->inverse.end());
  logic::set_function_table(m, "inv", std::move(inv));
  logic::set_constant(m, "e", v.g->id);
  for (int x : v.c2) logic::add_relation_tuple(m, "tc", {x});
  return m;
}

inline std::string set_summary(const groups::FiniteGroup& g,
                               const std::vector<int>& xs, size_t cap = 8) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < xs.size() && i < cap; ++i)
    os << (i ? ", " : "") << g.labels[xs[i]];
  if (xs.size() > cap) os << ", ... (" << xs.size() << " total)";
  os << "}";
  return os.str();
}

inline std::vector<int> column(const std::vector<std::vector<int>>& rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[0]);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// sym.two_cycles
//
// The formula  x^2=e & (A g)((x*g*x*inv(g))^6=e) & (E g)((x*g*x*inv(g))^3=e)
// is claimed to define the transpositions together with e in S_n for n != 2,
// n != 6 (in S_6 it also captures the 2-2-2 class), the existential conjunct
// being needed only in S_4. As displayed the existential conjunct is vacuous:
// g = e makes the product x^2 = e, and e^3 = e. The check evaluates both the
// displayed formula and the strict reading (product of order exactly three)
// and verifies the claimed sets and cardinalities under the strict reading,
// with e adjoined since the strict conjunct excludes it.

inline CheckResult check_two_cycles(Scale scale) {
  CheckResult r;
  r.claim =
      "an involution-and-conjugate-product formula defines the transpositions "
      "with identity in S_n (n != 2, 6); in S_6 it admits the 2-2-2 class";
  r.pass = true;
  const std::map<int, size_t> expected = {
      {3, 4}, {4, 7}, {5, 11}, {6, 31}, {7, 22}};
  std::vector<int> ns = {3, 4, 5, 6};
  if (scale == Scale::Full) ns.push_back(7);

  const logic::Signature sig = logic::group_signature();
  using logic::mk_and;
  using logic::mk_eq;
  using logic::mk_exists;
  using logic::mk_forall;
  using logic::t_var;
  logic::Term e = detail::t_cst(sig, "e");
  logic::Term x = t_var("x");
  logic::Term gv = t_var("g");
  // x * g * x * inv(g), the product of x with its conjugate by g
  logic::Term prod = detail::t_mul(
      sig, detail::t_mul(sig, detail::t_mul(sig, x, gv), x),
      detail::t_app(sig, "inv", {gv}));
  logic::FormulaPtr sq = mk_eq(detail::t_pow(sig, x, 2), e);
  logic::FormulaPtr middle =
      mk_forall("g", mk_eq(detail::t_pow(sig, prod, 6), e));
  logic::FormulaPtr last_displayed =
      mk_exists("g", mk_eq(detail::t_pow(sig, prod, 3), e));
  logic::FormulaPtr last_strict = mk_exists(
      "g", mk_and(mk_eq(detail::t_pow(sig, prod, 3), e), detail::mk_neq(prod, e)));
  logic::FormulaPtr psi_displayed = mk_and(mk_and(sq, middle), last_displayed);
  logic::FormulaPtr psi_strict = mk_and(mk_and(sq, middle), last_strict);
  logic::FormulaPtr psi_no_last = mk_and(sq, middle);

  for (int n : ns) {
    detail::SymView v = detail::sym_view(n);
    logic::FiniteStructure m = groups::as_structure(*v.g);
    std::vector<int> sat_disp =
        detail::column(logic::definable_set(m, *psi_displayed, {"x"}));
    std::vector<int> sat_strict =
        detail::column(logic::definable_set(m, *psi_strict, {"x"}));
    std::vector<int> sat_no_last =
        detail::column(logic::definable_set(m, *psi_no_last, {"x"}));

    std::vector<int> oracle = {v.g->id};
    for (int c : v.c2) oracle.push_back(c);
    if (n == 6)
      for (int y = 0; y < v.g->n; ++y)
        if (detail::cycle_type(v.sym->perms[y]) == std::vector<int>{2, 2, 2})
          oracle.push_back(y);
    std::sort(oracle.begin(), oracle.end());

    std::vector<int> strict_plus_e = sat_strict;
    strict_plus_e.push_back(v.g->id);
    std::sort(strict_plus_e.begin(), strict_plus_e.end());

    std::ostringstream what;
    what << "S" << n << ": strict reading + {e} = C2" << (n == 6 ? " u C222" : "")
         << " u {e} (" << expected.at(n) << " elements)";
    detail::record(r, strict_plus_e == oracle &&
                          strict_plus_e.size() == expected.at(n),
                   what.str(),
                   "S" + std::to_string(n) + " strict satisfaction set " +
                       detail::set_summary(*v.g, strict_plus_e));

    // The displayed existential conjunct never bites: g = e satisfies it.
    detail::record(r, sat_disp == sat_no_last,
                   "S" + std::to_string(n) +
                       ": displayed formula == formula without last conjunct");
    if (n == 4) {
      std::vector<int> with_22 = oracle;
      for (int y = 0; y < v.g->n; ++y)
        if (detail::cycle_type(v.sym->perms[y]) == std::vector<int>{2, 2})
          with_22.push_back(y);
      std::sort(with_22.begin(), with_22.end());
      detail::record(r, sat_disp == with_22,
                     "S4: displayed formula admits the 2-2 class (10 elements)",
                     "S4 displayed satisfaction set " +
                         detail::set_summary(*v.g, sat_disp, 12));
    } else {
      detail::record(r, sat_disp == oracle,
                     "S" + std::to_string(n) +
                         ": displayed formula already matches the claimed set");
    }
  }
  r.notes.push_back(
      "the displayed existential conjunct (E g)((x*g*x*inv(g))^3=e) is "
      "satisfied by g=e for every involution, so it cannot exclude the 2-2 "
      "class in S4 as the surrounding argument requires; the strict reading "
      "(product of order exactly 3) does, at the cost of excluding e, which "
      "the check adjoins back");
  r.notes.push_back(
      "S6 is a genuine exception: the satisfaction set also contains the "
      "fifteen 2-2-2 involutions, matching the outer-automorphism obstruction");
  return r;
}

// ---------------------------------------------------------------------------
// sym.k_cycles
//
// C_k is claimed to be the set of products of k-1 pairwise distinct
// transpositions c_1..c_{k-1} with c_i c_j != c_j c_i exactly when |i-j| = 1.
// The check builds the formula (quantifiers guarded by the transposition
// relation), evaluates it with the generic evaluator on small groups, with a
// guarded enumeration on larger ones, and compares against the cycle-type
// oracle.

namespace detail {

inline logic::FormulaPtr k_cycle_formula(const logic::Signature& sig, int k) {
  using logic::mk_and;
  using logic::mk_eq;
  using logic::mk_exists;
  using logic::t_var;
  int parts = k - 1;
  std::vector<logic::Term> cs;
  for (int i = 0; i < parts; ++i)
    cs.push_back(t_var("c" + std::to_string(i + 1)));
  std::vector<logic::FormulaPtr> body;
  int tc = sig.relation_index("tc");
  for (int i = 0; i < parts; ++i) body.push_back(logic::mk_atom("tc", tc, {cs[i]}));
  for (int i = 0; i < parts; ++i)
    for (int j = i + 1; j < parts; ++j) {
      body.push_back(mk_neq(cs[i], cs[j]));
      logic::Term ij = t_mul(sig, cs[i], cs[j]);
      logic::Term ji = t_mul(sig, cs[j], cs[i]);
      if (j - i == 1)
        body.push_back(mk_neq(ij, ji));
      else
        body.push_back(mk_eq(ij, ji));
    }
  logic::Term prod = cs[0];
  for (int i = 1; i < parts; ++i) prod = t_mul(sig, prod, cs[i]);
  body.push_back(mk_eq(t_var("x"), prod));
  logic::FormulaPtr f = conj_all(body);
  for (int i = parts; i >= 1; --i) f = mk_exists("c" + std::to_string(i), f);
  return f;
}

// Same semantics as k_cycle_formula with the guarded quantifiers enumerated
// over the transpositions directly.
inline std::vector<int> k_cycle_enumerate(const SymView& v, int k) {
  const groups::FiniteGroup& g = *v.g;
  int parts = k - 1;
  std::set<int> sat;
  std::vector<int> idx(parts, 0);
  while (true) {
    bool ok = true;
    for (int i = 0; ok && i < parts; ++i)
      for (int j = i + 1; ok && j < parts; ++j) {
        int a = v.c2[idx[i]], b = v.c2[idx[j]];
        if (a == b) ok = false;
        bool comm = g.mul(a, b) == g.mul(b, a);
        if (ok && comm != (j - i != 1)) ok = false;
      }
    if (ok) {
      int prod = v.c2[idx[0]];
      for (int i = 1; i < parts; ++i) prod = g.mul(prod, v.c2[idx[i]]);
      sat.insert(prod);
    }
    int i = parts - 1;
    while (i >= 0 && idx[i] + 1 == (int)v.c2.size()) idx[i--] = 0;
    if (i < 0) break;
    ++idx[i];
  }
  return std::vector<int>(sat.begin(), sat.end());
}

}  // namespace detail

inline CheckResult check_k_cycles(Scale scale) {
  CheckResult r;
  r.claim =
      "products of k-1 pairwise distinct transpositions whose adjacent factors "
      "are exactly the non-commuting ones form the k-cycles of S_n";
  r.pass = true;
  std::vector<std::pair<int, int>> instances = {{3, 4}, {3, 5}, {4, 4}};
  if (scale == Scale::Full) {
    instances.push_back({3, 7});
    instances.push_back({4, 7});
  }
  const std::map<std::pair<int, int>, size_t> expected = {
      {{3, 4}, 8}, {{3, 5}, 20}, {{4, 4}, 6}, {{3, 7}, 70}, {{4, 7}, 210}};

  for (auto [k, n] : instances) {
    detail::SymView v = detail::sym_view(n);
    std::vector<int> oracle;
    for (int x = 0; x < v.g->n; ++x)
      if (detail::cycle_type(v.sym->perms[x]) == std::vector<int>{k})
        oracle.push_back(x);
    std::vector<int> enumerated = detail::k_cycle_enumerate(v, k);
    std::ostringstream what;
    what << "(k=" << k << ", S" << n << "): formula set == " << expected.at({k, n})
         << " " << k << "-cycles";
    detail::record(r, enumerated == oracle &&
                          enumerated.size() == expected.at({k, n}),
                   what.str(),
                   "computed " + detail::set_summary(*v.g, enumerated));
    if (n <= 5) {
      logic::FiniteStructure m = detail::tc_structure(v);
      logic::FormulaPtr phi = detail::k_cycle_formula(m.sig, k);
      std::vector<int> sat =
          detail::column(logic::definable_set(m, *phi, {"x"}));
      detail::record(r, sat == enumerated,
                     "(k=" + std::to_string(k) + ", S" + std::to_string(n) +
                         "): generic evaluator agrees with the guarded "
                         "enumeration");
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// sym.identifying_pairs
//
// P is the set of ordered pairs of distinct transpositions sharing a moved
// point, defined by sigma,tau in C2, sigma*inv(tau) != e, (sigma*tau)^3 = e.
// The relation E ("identify the same point") is claimed to be defined on P by
// the displayed formula quantifying a transposition-or-identity nu against
// four order-three conditions. Both are checked exhaustively against the
// moved-point oracle.

namespace detail {

// Identified point of a pair of distinct transpositions sharing a point,
// or -1 if they do not form an identifying pair.
inline int identified_point(const SymView& v, int s, int t) {
  if (s == t) return -1;
  const std::vector<int>& ps = v.sym->perms[s];
  const std::vector<int>& pt = v.sym->perms[t];
  int common = -1;
  for (int j = 0; j < v.points; ++j)
    if (ps[j] != j && pt[j] != j) {
      if (common != -1) return -1;  // two shared points means s == t
      common = j;
    }
  return common;
}

inline bool pair_in_p(const SymView& v, int s, int t) {
  const groups::FiniteGroup& g = *v.g;
  if (std::find(v.c2.begin(), v.c2.end(), s) == v.c2.end()) return false;
  if (std::find(v.c2.begin(), v.c2.end(), t) == v.c2.end()) return false;
  if (g.mul(s, g.inv(t)) == g.id) return false;
  return g.pow(g.mul(s, t), 3) == g.id;
}

// Direct evaluation of the E-defining formula at (s, t, s2, t2): for every
// nu in C2 u {e}, if nu centralizes sigma (or tau) and differs from it, the
// four products tau*nu*tau2*nu, tau*nu*sigma2*nu, sigma*nu*tau2*nu,
// sigma*nu*sigma2*nu must all cube to e.
inline bool eval_e_formula(const SymView& v, int s, int t, int s2, int t2) {
  const groups::FiniteGroup& g = *v.g;
  std::vector<int> domain = v.c2;
  domain.push_back(g.id);
  for (int nu : domain) {
    bool guard_s = g.mul(g.mul(nu, s), nu) == s && s != nu;
    bool guard_t = g.mul(g.mul(nu, t), nu) == t && t != nu;
    if (!guard_s && !guard_t) continue;
    auto cube_ok = [&](int a, int b) {
      return g.pow(g.mul(g.mul(a, nu), g.mul(b, nu)), 3) == g.id;
    };
    bool concl = cube_ok(t, t2) && cube_ok(t, s2) && cube_ok(s, t2) &&
                 cube_ok(s, s2);
    if (!concl) return false;
  }
  return true;
}

}  // namespace detail

inline CheckResult check_identifying_pairs(Scale scale) {
  CheckResult r;
  r.claim =
      "distinct transpositions with a common moved point form the definable "
      "set P, and the centralizer-transport formula defines equality of "
      "identified points on P x P";
  r.pass = true;
  std::vector<int> ns = {4, 5};
  if (scale == Scale::Full) ns.push_back(7);
  const std::map<int, size_t> expected_p = {{4, 24}, {5, 60}, {7, 210}};

  for (int n : ns) {
    detail::SymView v = detail::sym_view(n);
    const groups::FiniteGroup& g = *v.g;

    std::vector<std::pair<int, int>> P;
    for (int s = 0; s < g.n; ++s)
      for (int t = 0; t < g.n; ++t)
        if (detail::pair_in_p(v, s, t)) P.emplace_back(s, t);
    bool oracle_match = true;
    for (auto [s, t] : P)
      if (detail::identified_point(v, s, t) < 0) oracle_match = false;
    size_t oracle_count = 0;
    for (int s : v.c2)
      for (int t : v.c2)
        if (detail::identified_point(v, s, t) >= 0) ++oracle_count;
    detail::record(r,
                   oracle_match && P.size() == oracle_count &&
                       P.size() == expected_p.at(n),
                   "S" + std::to_string(n) + ": |P| = " +
                       std::to_string(expected_p.at(n)) +
                       " ordered pairs, all sharing exactly one moved point");

    // Disjoint transpositions produce a 2-2 product and stay out of P.
    bool disjoint_excluded = true;
    for (int s : v.c2)
      for (int t : v.c2) {
        bool disjoint =
            s != t && g.mul(s, t) == g.mul(t, s);  // distinct commuting 2-cycles
        if (disjoint && detail::pair_in_p(v, s, t)) disjoint_excluded = false;
      }
    detail::record(r, disjoint_excluded,
                   "S" + std::to_string(n) +
                       ": disjoint transposition pairs are excluded from P");

    long long mismatches = 0;
    std::string first_bad;
    for (auto [s, t] : P)
      for (auto [s2, t2] : P) {
        bool formula = detail::eval_e_formula(v, s, t, s2, t2);
        bool same = detail::identified_point(v, s, t) ==
                    detail::identified_point(v, s2, t2);
        if (formula != same) {
          ++mismatches;
          if (first_bad.empty()) {
            std::ostringstream os;
            os << "(" << g.labels[s] << "," << g.labels[t] << ") vs ("
               << g.labels[s2] << "," << g.labels[t2] << "): formula "
               << (formula ? "holds" : "fails") << ", oracle says "
               << (same ? "same" : "different") << " point";
            first_bad = os.str();
          }
        }
      }
    detail::record(r, mismatches == 0,
                   "S" + std::to_string(n) +
                       ": E-formula matches the moved-point oracle on all " +
                       std::to_string(P.size() * P.size()) + " pairs of pairs",
                   first_bad);

    // The quotient P/E is the base set: n classes, one per identified point.
    std::set<int> points;
    for (auto [s, t] : P) points.insert(detail::identified_point(v, s, t));
    detail::record(r, (int)points.size() == n,
                   "S" + std::to_string(n) +
                       ": P/E has exactly n classes, one per base point");

    if (n == 4) {
      // Cross-check the direct evaluator against the generic one.
      logic::FiniteStructure m = detail::tc_structure(v);
      const logic::Signature& sig = m.sig;
      using logic::mk_and;
      using logic::mk_eq;
      using logic::mk_forall;
      using logic::mk_implies;
      using logic::mk_or;
      using logic::t_var;
      logic::Term e = detail::t_cst(sig, "e");
      auto cube1 = [&](const char* a, const char* b) {
        logic::Term prod = detail::t_mul(
            sig, detail::t_mul(sig, t_var(a), t_var("nu")),
            detail::t_mul(sig, t_var(b), t_var("nu")));
        return mk_eq(detail::t_pow(sig, prod, 3), e);
      };
      logic::FormulaPtr concl = mk_and(
          mk_and(cube1("t", "t2"), cube1("t", "s2")),
          mk_and(cube1("s", "t2"), cube1("s", "s2")));
      auto guard = [&](const char* var) {
        return mk_and(
            mk_eq(detail::t_mul(sig,
                                detail::t_mul(sig, t_var("nu"), t_var(var)),
                                t_var("nu")),
                  t_var(var)),
            detail::mk_neq(t_var(var), t_var("nu")));
      };
      int tc = sig.relation_index("tc");
      logic::FormulaPtr nu_in = mk_or(
          logic::mk_atom("tc", tc, {t_var("nu")}), mk_eq(t_var("nu"), e));
      logic::FormulaPtr body = mk_implies(
          nu_in, mk_and(mk_implies(guard("s"), concl),
                        mk_implies(guard("t"), concl)));
      logic::FormulaPtr eform = mk_forall("nu", body);
      bool agree = true;
      for (auto [s, t] : P)
        for (auto [s2, t2] : P) {
          bool generic = logic::eval(
              m, *eform, {{"s", s}, {"t", t}, {"s2", s2}, {"t2", t2}});
          if (generic != detail::eval_e_formula(v, s, t, s2, t2)) agree = false;
        }
      detail::record(r, agree,
                     "S4: generic evaluator agrees with the direct E-formula "
                     "evaluation on P x P");
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// sym.transposition_assignment
//
// psi(nu,k,h) says: every pair identifying the point k is sent by
// sigma |-> nu*sigma*nu to a pair identifying h. The claim is that its
// satisfaction set is {(k h)} for k != h and {e} for k = h. The check
// computes the actual satisfaction set; the claimed witnesses do satisfy the
// formula, but so does every involution mapping k to h, which the notes
// record as a discrepancy.

namespace detail {

inline bool psi_transport(const SymView& v,
                          const std::vector<std::pair<int, int>>& P, int nu,
                          int k, int h) {
  const groups::FiniteGroup& g = *v.g;
  for (auto [s, t] : P) {
    if (identified_point(v, s, t) != k) continue;
    int s2 = g.mul(g.mul(nu, s), nu);
    int t2 = g.mul(g.mul(nu, t), nu);
    if (!pair_in_p(v, s2, t2)) return false;
    if (identified_point(v, s2, t2) != h) return false;
  }
  return true;
}

}  // namespace detail

inline CheckResult check_transposition_assignment(Scale scale) {
  CheckResult r;
  r.claim =
      "conjugation transport of identifying pairs from point k to point h is "
      "satisfied by the transposition (k h) (by e when k = h), and more "
      "generally by exactly the involutions mapping k to h";
  r.pass = true;
  std::vector<int> ns = {4, 5};
  if (scale == Scale::Full) ns.push_back(7);

  for (int n : ns) {
    detail::SymView v = detail::sym_view(n);
    const groups::FiniteGroup& g = *v.g;
    std::vector<std::pair<int, int>> P;
    for (int s : v.c2)
      for (int t : v.c2)
        if (detail::identified_point(v, s, t) >= 0) P.emplace_back(s, t);

    // Element id of a transposition by its two moved points.
    auto transposition = [&](int a, int b) {
      for (int c : v.c2) {
        const std::vector<int>& p = v.sym->perms[c];
        if (p[a] == b && p[b] == a) return c;
      }
      throw std::logic_error("transposition lookup failed");
    };

    std::vector<std::pair<int, int>> khs = {{0, 1}, {0, 0}, {1, 2}};
    for (auto [k, h] : khs) {
      std::vector<int> sat;
      for (int nu = 0; nu < g.n; ++nu)
        if (detail::psi_transport(v, P, nu, k, h)) sat.push_back(nu);
      int claimed = k == h ? g.id : transposition(k, h);
      bool claimed_in = std::find(sat.begin(), sat.end(), claimed) != sat.end();
      std::vector<int> involutions_kh;
      for (int nu = 0; nu < g.n; ++nu)
        if (g.pow(nu, 2) == g.id && v.sym->perms[nu][k] == h)
          involutions_kh.push_back(nu);
      std::ostringstream what;
      what << "S" << n << ", k=" << k + 1 << ", h=" << h + 1
           << ": claimed witness " << g.labels[claimed]
           << " satisfies; satisfaction set = involutions sending k to h ("
           << sat.size() << " elements)";
      detail::record(r, claimed_in && sat == involutions_kh, what.str(),
                     "satisfaction set " + detail::set_summary(g, sat, 12));
      if (n == 4 && k == 0 && h == 1) {
        bool neg = !detail::psi_transport(v, P, transposition(0, 2), 0, 1);
        detail::record(r, neg, "S4: (1 3) does not transport pairs from 1 to 2");
        detail::record(r, sat.size() > 1,
                       "S4, k=1, h=2: satisfaction set is strictly larger "
                       "than the claimed singleton",
                       detail::set_summary(g, sat, 12));
      }
    }
  }
  r.notes.push_back(
      "the claimed equivalence (nu = (k h), resp. nu = e) is one-directional: "
      "every involution mapping k to h transports identifying pairs the same "
      "way, e.g. (1 2)(3 4) for k=1, h=2 and (2 3) for k=h=1 in S4; the "
      "check pins the satisfaction set to the involution characterization");
  r.notes.push_back(
      "base-set points are addressed directly; the pair-quotient translation "
      "is justified by the P/E instance of sym.identifying_pairs");
  return r;
}

// ---------------------------------------------------------------------------
// sym.type_isolation
//
// The tuple formula (exists distinct k_1..k_n) /\_i x_i(k_j) = k_{sigma_i(j)}
// is claimed to isolate the parameter-free type of (sigma_1..sigma_m): its
// satisfaction set should be the simultaneous conjugacy orbit. The formula
// side is evaluated pointwise on permutation images; the oracle conjugates
// through the multiplication table.

namespace detail {

inline bool isolates(const SymView& v, const std::vector<int>& sigmas,
                     const std::vector<int>& xs) {
  int n = v.points;
  for (int rho = 0; rho < v.g->n; ++rho) {
    const std::vector<int>& k = v.sym->perms[rho];  // k_j := k[j], all distinct
    bool ok = true;
    for (size_t i = 0; ok && i < sigmas.size(); ++i) {
      const std::vector<int>& xi = v.sym->perms[xs[i]];
      const std::vector<int>& si = v.sym->perms[sigmas[i]];
      for (int j = 0; j < n; ++j)
        if (xi[k[j]] != k[si[j]]) {
          ok = false;
          break;
        }
    }
    if (ok) return true;
  }
  return false;
}

inline std::set<std::vector<int>> conjugacy_orbit(
    const groups::FiniteGroup& g, const std::vector<int>& sigmas) {
  std::set<std::vector<int>> orbit;
  for (int c = 0; c < g.n; ++c) {
    std::vector<int> image;
    for (int s : sigmas) image.push_back(g.conj(c, s));
    orbit.insert(image);
  }
  return orbit;
}

}  // namespace detail

inline CheckResult check_type_isolation(Scale scale) {
  CheckResult r;
  r.claim =
      "the distinct-points tuple formula isolates a tuple's parameter-free "
      "type: its satisfaction set is the simultaneous conjugacy orbit";
  r.pass = true;

  struct Instance {
    int n;
    std::vector<std::vector<int>> tuple_cycles;  // each as point pairs/cycles
    std::string desc;
  };

  auto by_cycle_label = [](const detail::SymView& v,
                           const std::string& label) {
    for (int x = 0; x < v.g->n; ++x)
      if (v.g->labels[x] == label) return x;
    throw std::logic_error("no element labeled " + label);
  };

  std::vector<int> ns = {4, 5};
  if (scale == Scale::Full) ns.push_back(7);
  for (int n : ns) {
    detail::SymView v = detail::sym_view(n);
    const groups::FiniteGroup& g = *v.g;
    std::vector<std::pair<std::vector<int>, std::string>> tuples;
    tuples.push_back({{by_cycle_label(v, "(1 2)")}, "((1 2))"});
    tuples.push_back({{g.id}, "(e)"});
    if (n <= 5) {
      tuples.push_back(
          {{by_cycle_label(v, "(1 2)"), by_cycle_label(v, "(3 4)")},
           "((1 2), (3 4))"});
      tuples.push_back({{g.id, g.id}, "(e, e)"});
    }

    for (const auto& [sigmas, desc] : tuples) {
      std::set<std::vector<int>> orbit = detail::conjugacy_orbit(g, sigmas);
      long long sat_count = 0;
      bool match = true;
      std::string bad;
      std::vector<int> xs(sigmas.size(), 0);
      while (true) {
        bool formula = detail::isolates(v, sigmas, xs);
        bool oracle = orbit.count(xs) > 0;
        if (formula) ++sat_count;
        if (formula != oracle && bad.empty()) {
          match = false;
          std::ostringstream os;
          os << "tuple (";
          for (size_t i = 0; i < xs.size(); ++i)
            os << (i ? ", " : "") << g.labels[xs[i]];
          os << "): formula " << (formula ? "holds" : "fails")
             << ", orbit membership " << (oracle ? "yes" : "no");
          bad = os.str();
        }
        int i = (int)xs.size() - 1;
        while (i >= 0 && xs[i] + 1 == g.n) xs[i--] = 0;
        if (i < 0) break;
        ++xs[i];
      }
      std::ostringstream what;
      what << "S" << n << ", " << desc << ": satisfaction set == conjugacy "
           << "orbit (" << orbit.size() << " tuples)";
      detail::record(r, match && sat_count == (long long)orbit.size(),
                     what.str(), bad);
      if (desc == "((1 2))")
        detail::record(r, orbit.size() == v.c2.size(),
                       "S" + std::to_string(n) +
                           ", ((1 2)): orbit is the full transposition class");
      if (desc == "(e)" || desc == "(e, e)")
        detail::record(r, orbit.size() == 1,
                       "S" + std::to_string(n) + ", " + desc +
                           ": identity tuple isolates the singleton orbit");
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// sym.s3_patching_supports
//
// In reduced powers of S3: supp_2 and supp_3 (the torsion supports) restrict
// on the nonidentity coordinates to a partition of supp, their meet is the
// complement of supp, and any two elements can be patched along disjoint
// Boolean-algebra sets. Proper ideals on a finite index set are exactly the
// principal ones, which the check enumerates directly.

inline CheckResult check_s3_patching_supports(Scale scale) {
  CheckResult r;
  r.claim =
      "in finite reduced powers of S3 the torsion supports partition the "
      "support on nonidentity coordinates and disjoint patching is always "
      "solvable; proper ideals over a finite index set are principal";
  r.pass = true;

  catalog::CatalogEntry s3 = catalog::build("S3");
  auto factor = std::make_shared<const logic::FiniteStructure>(
      groups::as_structure(*s3.group));
  const logic::Signature sig = factor->sig;
  using logic::mk_eq;
  using logic::t_var;
  logic::Term e = detail::t_cst(sig, "e");
  logic::Term x = t_var("x");
  logic::FormulaPtr phi2 = mk_eq(detail::t_pow(sig, x, 2), e);
  logic::FormulaPtr phi3 = mk_eq(detail::t_pow(sig, x, 3), e);
  logic::FormulaPtr phi_id = mk_eq(x, e);

  // Proper ideals on k indices are exactly the principal ones below a
  // proper maximal set: enumerate all union-closed downward-closed families.
  for (int k = 2; k <= 3; ++k) {
    int full = (1 << k) - 1;
    int count = 0;
    bool all_principal = true;
    for (uint32_t fam = 0; fam < (1u << (full + 1)); ++fam) {
      if (!(fam & 1)) continue;          // must contain the empty set
      if (fam & (1u << full)) continue;  // proper: omits the full set
      bool closed = true;
      int umax = 0;
      for (int a = 0; closed && a <= full; ++a) {
        if (!(fam & (1u << a))) continue;
        umax |= a;
        for (int b = 0; closed && b <= full; ++b) {
          if (!(fam & (1u << b))) continue;
          if (!(fam & (1u << (a | b)))) closed = false;
        }
        for (int s = a; closed; s = (s - 1) & a) {
          if (!(fam & (1u << s))) closed = false;
          if (s == 0) break;
        }
      }
      if (!closed) continue;
      ++count;
      for (int a = 0; a <= full; ++a)
        if (((a | umax) == umax) != bool(fam & (1u << a))) all_principal = false;
    }
    detail::record(r, all_principal && count == (1 << k) - 1,
                   "k=" + std::to_string(k) + ": the " +
                       std::to_string((1 << k) - 1) +
                       " proper ideals are exactly the principal ones");
  }

  std::vector<std::pair<int, reduced::Mask>> products;
  for (int k = 2; k <= 3; ++k)
    for (reduced::Mask umax = 0; umax < (reduced::Mask(1) << k) - 1; ++umax)
      products.emplace_back(k, umax);

  for (auto [k, umax] : products) {
    reduced::FiniteIdeal ideal =
        umax == 0 ? reduced::trivial_ideal(k)
                  : reduced::make_ideal(k, {umax});
    std::vector<std::shared_ptr<const logic::FiniteStructure>> factors(
        (size_t)k, factor);
    reduced::ReducedProduct rp = reduced::reduced_product(factors, ideal);
    const reduced::QuotientBA& ba = rp.ba;
    std::string tag = "S3^" + std::to_string(k) + "/" +
                      (umax == 0 ? "{0}" : "<" + std::to_string(umax) + ">");

    bool supports_ok = true, partition_ok = true;
    std::string bad;
    for (int a = 0; a < rp.size(); ++a) {
      reduced::Mask s2 = reduced::supp_phi(rp, phi2, {{"x", a}});
      reduced::Mask s3m = reduced::supp_phi(rp, phi3, {{"x", a}});
      reduced::Mask se = reduced::supp_phi(rp, phi_id, {{"x", a}});
      reduced::Mask supp = ba.complement(se);
      reduced::Mask o2 = 0, o3 = 0, os = 0;
      const std::vector<int>& rep = rp.rep(a);
      for (int i = 0; i < k; ++i) {
        int ord = s3.group->order[rep[i]];
        if (ord <= 2) o2 |= reduced::Mask(1) << i;
        if (ord == 1 || ord == 3) o3 |= reduced::Mask(1) << i;
        if (ord > 1) os |= reduced::Mask(1) << i;
      }
      if (s2 != ba.rep(o2) || s3m != ba.rep(o3) || supp != ba.rep(os))
        supports_ok = false;
      bool part = ba.join(ba.meet(s2, supp), ba.meet(s3m, supp)) == supp &&
                  ba.meet(ba.meet(s2, supp), ba.meet(s3m, supp)) == ba.zero() &&
                  ba.meet(s2, s3m) == ba.complement(supp);
      if (!part && bad.empty()) {
        partition_ok = false;
        bad = tag + " class " + std::to_string(a);
      }
    }
    detail::record(r, supports_ok,
                   tag + ": supp_2/supp_3/supp match the coordinatewise oracle "
                         "on all " + std::to_string(rp.size()) + " classes");
    detail::record(r, partition_ok,
                   tag + ": torsion supports partition supp on nonidentity "
                         "coordinates and meet to its complement", bad);

    // Patching: for every disjoint pair (A, B) and (a, b), the witness from
    // patch() satisfies the lemma's support inclusions, verified through the
    // quotient group operations.
    int mul_sym = rp.structure.sig.function_index("*");
    int inv_sym = rp.structure.sig.function_index("inv");
    auto mulq = [&](int a, int b) {
      return rp.structure.functions[mul_sym]
          .table[(size_t)a * rp.structure.n + b];
    };
    auto invq = [&](int a) { return rp.structure.functions[inv_sym].table[a]; };
    int stride_a = (scale == Scale::Full || k == 2) ? 1 : 5;
    int stride_b = (scale == Scale::Full || k == 2) ? 1 : 7;
    bool patch_ok = true;
    long long patched = 0;
    std::string patch_bad;
    for (reduced::Mask A : ba.elements())
      for (reduced::Mask B : ba.elements()) {
        if (ba.meet(A, B) != ba.zero()) continue;
        for (int a = 0; a < rp.size(); a += stride_a)
          for (int b = 0; b < rp.size(); b += stride_b) {
            int c = reduced::patch(rp, A, B, a, b);
            reduced::Mask da = reduced::supp_phi(
                rp, phi_id, {{"x", mulq(c, invq(a))}});
            reduced::Mask db = reduced::supp_phi(
                rp, phi_id, {{"x", mulq(c, invq(b))}});
            // supp(c * a^-1) lies in the complement of A, same for B
            bool ok = ba.le(A, da) && ba.le(B, db);
            ++patched;
            if (!ok && patch_bad.empty()) {
              patch_ok = false;
              std::ostringstream os;
              os << tag << " A=" << A << " B=" << B << " a=" << a << " b=" << b
                 << " c=" << c;
              patch_bad = os.str();
            }
          }
      }
    detail::record(r, patch_ok,
                   tag + ": patch witnesses satisfy both support inclusions (" +
                       std::to_string(patched) + " instances)",
                   patch_bad);
  }

  // Pinned example: ((1 2), (1 2 3)) in S3^2 over the trivial ideal.
  {
    std::vector<std::shared_ptr<const logic::FiniteStructure>> factors(2,
                                                                       factor);
    reduced::ReducedProduct rp =
        reduced::reduced_product(factors, reduced::trivial_ideal(2));
    int a12 = s3.group->index_of_label("(1 2)");
    int a123 = s3.group->index_of_label("(1 2 3)");
    int cls = rp.class_of({a12, a123});
    reduced::Mask s2 = reduced::supp_phi(rp, phi2, {{"x", cls}});
    reduced::Mask s3m = reduced::supp_phi(rp, phi3, {{"x", cls}});
    reduced::Mask se = reduced::supp_phi(rp, phi_id, {{"x", cls}});
    detail::record(r, s2 == 1 && s3m == 2 && rp.ba.complement(se) == 3,
                   "((1 2), (1 2 3)): supp_2 = {0}, supp_3 = {1}, supp = {0,1}");
    int id_cls = rp.class_of({s3.group->id, s3.group->id});
    detail::record(r,
                   rp.ba.complement(reduced::supp_phi(rp, phi_id,
                                                      {{"x", id_cls}})) == 0,
                   "identity tuple: supp = 0");
  }

  r.notes.push_back(
      "the bare identity supp(x) = supp_2(x) |_| supp_3(x) cannot hold as "
      "displayed: identity coordinates lie in both torsion supports, so the "
      "check reads it restricted to supp(x), where it is exact");
  return r;
}

// ---------------------------------------------------------------------------
// logic.zsupp_formula
//
// The allocation formula rebuilt from its display: u avoids two designated
// variables everywhere, x' copies x where x agrees with z and u elsewhere,
// y' likewise for y/w, and y'=u -> x'=u compares the two agreement sets. As
// displayed the avoidance guards name x and y; the check shows that version
// inequivalent to x=z -> y=w and verifies the corrected guards (z and w) give
// exact equivalence on pure-equality structures of sizes 3 to 5.

namespace detail {

inline logic::FormulaPtr psi_neq(const std::string& a, const std::string& b) {
  using logic::t_var;
  return logic::mk_forall(
      "q", logic::mk_implies(logic::mk_eq(t_var(a), t_var(b)),
                             logic::mk_eq(t_var("q"), t_var(b))));
}

inline logic::FormulaPtr allocation_formula(bool corrected) {
  using logic::mk_and;
  using logic::mk_eq;
  using logic::mk_exists;
  using logic::mk_forall;
  using logic::mk_iff;
  using logic::mk_implies;
  using logic::t_var;
  logic::FormulaPtr guards =
      corrected ? mk_and(psi_neq("u", "z"), psi_neq("u", "w"))
                : mk_and(psi_neq("u", "x"), psi_neq("u", "y"));
  logic::FormulaPtr xline = mk_and(
      mk_iff(mk_eq(t_var("x"), t_var("z")), mk_eq(t_var("xp"), t_var("z"))),
      mk_forall("xpp",
                mk_implies(mk_iff(mk_eq(t_var("x"), t_var("z")),
                                  mk_eq(t_var("xpp"), t_var("z"))),
                           mk_implies(mk_eq(t_var("xpp"), t_var("u")),
                                      mk_eq(t_var("xp"), t_var("u"))))));
  logic::FormulaPtr yline = mk_and(
      mk_iff(mk_eq(t_var("y"), t_var("w")), mk_eq(t_var("yp"), t_var("w"))),
      mk_forall("ypp",
                mk_implies(mk_iff(mk_eq(t_var("y"), t_var("w")),
                                  mk_eq(t_var("ypp"), t_var("w"))),
                           mk_implies(mk_eq(t_var("ypp"), t_var("u")),
                                      mk_eq(t_var("yp"), t_var("u"))))));
  logic::FormulaPtr last = mk_implies(mk_eq(t_var("yp"), t_var("u")),
                                      mk_eq(t_var("xp"), t_var("u")));
  logic::FormulaPtr body =
      mk_and(mk_and(mk_and(guards, xline), yline), last);
  return mk_exists("u", mk_exists("xp", mk_exists("yp", body)));
}

}  // namespace detail

inline CheckResult check_zsupp_formula(Scale) {
  CheckResult r;
  r.claim =
      "the three-witness allocation formula is equivalent to x=z -> y=w on "
      "every structure with at least three elements";
  r.pass = true;
  using logic::t_var;
  logic::FormulaPtr target = logic::mk_implies(
      logic::mk_eq(t_var("x"), t_var("z")),
      logic::mk_eq(t_var("y"), t_var("w")));
  logic::FormulaPtr good = detail::allocation_formula(true);
  logic::FormulaPtr bad = detail::allocation_formula(false);

  for (int n = 3; n <= 5; ++n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("m" + std::to_string(i));
    logic::FiniteStructure m =
        logic::make_structure(logic::equality_signature(), labels);
    auto cx = logic::equivalent_in(m, *good, *target);
    detail::record(r, !cx.has_value(),
                   "size " + std::to_string(n) +
                       ": corrected guards give exact equivalence (all " +
                       std::to_string((long long)n * n * n * n) +
                       " assignments)");
    auto cx_bad = logic::equivalent_in(m, *bad, *target);
    detail::record(r, cx_bad.has_value(),
                   "size " + std::to_string(n) +
                       ": displayed guards (u avoids x and y) are not "
                       "equivalent to the target");
    if (n == 3) {
      // Pinned witness for the displayed version: w=0, x=0, y=1, z=2.
      std::map<std::string, int> asg = {{"w", 0}, {"x", 0}, {"y", 1}, {"z", 2}};
      bool bv = logic::eval(m, *bad, asg);
      bool tv = logic::eval(m, *target, asg);
      detail::record(r, !bv && tv,
                     "size 3, (w,x,y,z)=(0,0,1,2): displayed formula false, "
                     "target true");
    }
    auto cx_neq = logic::equivalent_in(
        m, *detail::psi_neq("x", "y"),
        *logic::mk_not(logic::mk_eq(t_var("x"), t_var("y"))));
    detail::record(r, !cx_neq.has_value(),
                   "size " + std::to_string(n) +
                       ": the nowhere-equal formula matches x != y");
  }

  {
    // Two elements are not enough: u cannot avoid both designated values.
    logic::FiniteStructure m2 =
        logic::make_structure(logic::equality_signature(), {"m0", "m1"});
    auto cx2 = logic::equivalent_in(m2, *good, *target);
    detail::record(r, cx2.has_value(),
                   "size 2: equivalence fails, the three-element hypothesis "
                   "is necessary");
  }

  r.notes.push_back(
      "the displayed avoidance guards name x and y; with them u may collide "
      "with w and the formula under-accepts (witness (w,x,y,z)=(0,0,1,2)); "
      "guarding z and w instead yields the stated equivalence");
  return r;
}

// ---------------------------------------------------------------------------
// rps.formulas
//
// The three-element winner magma: the table is the winner rule, the loser map
// is definable by the displayed formula, the comparison formula is equivalent
// to x=t -> y=t on all 27 triples, and the prenex form is an h-formula with a
// discharged guard obligation.

inline CheckResult check_rps_formulas(Scale) {
  CheckResult r;
  r.claim =
      "in the winner magma the loser map is first-order definable and the "
      "loser-term comparison formula expresses x=t -> y=t";
  r.pass = true;
  catalog::CatalogEntry entry = catalog::build("RPS");
  const logic::FiniteStructure& m = *entry.structure;
  const logic::Signature& sig = m.sig;
  int R = m.label_index.at("R"), P = m.label_index.at("P"),
      S = m.label_index.at("S");
  int mul_sym = sig.function_index("*");
  auto mul = [&](int a, int b) {
    return m.functions[mul_sym].table[(size_t)a * m.n + b];
  };

  // Winner rule: R beats S, P beats R, S beats P; idempotent, commutative.
  auto beats = [&](int a, int b) {
    return (a == R && b == S) || (a == P && b == R) || (a == S && b == P);
  };
  bool table_ok = true;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      int want = a == b ? a : (beats(a, b) ? a : b);
      if (mul(a, b) != want) table_ok = false;
      if (mul(a, b) != mul(b, a)) table_ok = false;
    }
  detail::record(r, table_ok,
                 "operation table is the commutative winner rule (9 entries)");

  std::map<int, int> loser = {{R, S}, {P, R}, {S, P}};
  bool loser_ok = true;
  for (auto [t, l] : loser)
    if (mul(l, t) != t || l == t) loser_ok = false;
  detail::record(r, loser_ok,
                 "loser map: L(R)=S, L(P)=R, L(S)=P (s != t with s*t = t)");

  using logic::mk_eq;
  using logic::mk_forall;
  using logic::mk_implies;
  using logic::t_var;
  logic::FormulaPtr lform = logic::mk_and(
      mk_eq(detail::t_mul(sig, t_var("tp"), t_var("t")), t_var("t")),
      mk_forall("sp",
                mk_implies(
                    mk_eq(detail::t_mul(sig, t_var("sp"), t_var("t")),
                          t_var("t")),
                    mk_eq(detail::t_mul(sig, t_var("tp"), t_var("sp")),
                          t_var("sp")))));
  std::vector<std::vector<int>> graph =
      logic::definable_set(m, *lform, {"t", "tp"});
  std::vector<std::vector<int>> want_graph;
  for (int t = 0; t < 3; ++t) want_graph.push_back({t, loser.at(t)});
  std::sort(want_graph.begin(), want_graph.end());
  detail::record(r, graph == want_graph,
                 "loser formula defines the graph of L uniquely (3 rows)");

  bool triples_ok = true;
  std::string bad;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int t = 0; t < 3; ++t) {
        int lt = loser.at(t);
        bool formula = mul(mul(x, lt), mul(y, lt)) == mul(y, lt);
        bool target = x != t || y == t;
        if (formula != target && bad.empty()) {
          triples_ok = false;
          bad = "x=" + m.labels[x] + " y=" + m.labels[y] + " t=" + m.labels[t];
        }
      }
  detail::record(r, triples_ok,
                 "(x*L(t))*(y*L(t)) = y*L(t) iff x=t -> y=t on all 27 triples",
                 bad);

  logic::FormulaPtr hform = logic::mk_exists(
      "s",
      logic::mk_and(
          logic::mk_and(
              mk_eq(detail::t_mul(sig, t_var("s"), t_var("t")), t_var("t")),
              mk_forall(
                  "sp",
                  mk_implies(
                      mk_eq(detail::t_mul(sig, t_var("sp"), t_var("t")),
                            t_var("t")),
                      mk_eq(detail::t_mul(sig, t_var("s"), t_var("sp")),
                            t_var("sp"))))),
          mk_eq(detail::t_mul(
                    sig, detail::t_mul(sig, t_var("x"), t_var("s")),
                    detail::t_mul(sig, t_var("y"), t_var("s"))),
                detail::t_mul(sig, t_var("y"), t_var("s")))));
  logic::FormulaPtr target = mk_implies(mk_eq(t_var("x"), t_var("t")),
                                        mk_eq(t_var("y"), t_var("t")));
  auto cx = logic::equivalent_in(m, *hform, *target);
  detail::record(r, !cx.has_value(),
                 "prenex loser form is equivalent to x=t -> y=t");

  logic::HResult h = logic::classify_h(hform);
  bool obligations_ok = h.is_h && !h.obligations.empty();
  for (const logic::FormulaPtr& ob : h.obligations)
    if (!logic::obligation_holds(m, ob)) obligations_ok = false;
  detail::record(r, obligations_ok,
                 "prenex form classifies as an h-formula with its guard "
                 "obligation discharged in the magma");
  return r;
}

// ---------------------------------------------------------------------------
// order.formula
//
// On chains: the universal lower-bound formula expresses min(x,y) <= z, and
// the comparison formula with witnesses u, g', f' expresses the coincidence
// implication. Finite evaluation needs care: if u may be the top element the
// formula degenerates to true, so the check stratifies the quantifier
// domains (parameters below the witness, primed variables above it) to
// simulate the missing-maximum hypothesis, and records that the direction of
// the implication matches the proof (g=k -> f=k), not the statement.

namespace detail {

// eq.LO over an integer chain with stratified domains: f, g, k in [0, pmax],
// u in [0, pmax+1], g', f' in [0, pmax+2].
inline bool eval_lo(int pmax, int f, int g, int k) {
  for (int u = 0; u <= pmax + 1; ++u) {
    if (!(u > f && u > g && u > k)) continue;
    bool all_gp = true;
    for (int gp = 0; all_gp && gp <= pmax + 2; ++gp) {
      if (!(std::min(gp, k) == std::min(g, gp) &&
            std::min(g, gp) == std::min(g, k)))
        continue;
      bool found = false;
      for (int fp = 0; !found && fp <= pmax + 2; ++fp)
        if (std::min(fp, k) == std::min(f, fp) &&
            std::min(f, fp) == std::min(f, k) &&
            std::max(u, fp) >= std::max(u, gp))
          found = true;
      if (!found) all_gp = false;
    }
    if (all_gp) return true;
  }
  return false;
}

// Same formula evaluated naively over the full chain {0..top}: parameters
// below the top, every quantifier over the whole chain.
inline bool eval_lo_naive(int top, int f, int g, int k) {
  for (int u = 0; u <= top; ++u) {
    if (!(u > f && u > g && u > k)) continue;
    bool all_gp = true;
    for (int gp = 0; all_gp && gp <= top; ++gp) {
      if (!(std::min(gp, k) == std::min(g, gp) &&
            std::min(g, gp) == std::min(g, k)))
        continue;
      bool found = false;
      for (int fp = 0; !found && fp <= top; ++fp)
        if (std::min(fp, k) == std::min(f, fp) &&
            std::min(f, fp) == std::min(f, k) &&
            std::max(u, fp) >= std::max(u, gp))
          found = true;
      if (!found) all_gp = false;
    }
    if (all_gp) return true;
  }
  return false;
}

}  // namespace detail

inline CheckResult check_order_formula(Scale) {
  CheckResult r;
  r.claim =
      "on chains without a maximum the witness-comparison formula expresses "
      "the coincidence implication between f,k and g,k; min is captured by "
      "its universal lower-bound encoding";
  r.pass = true;

  for (int len = 4; len <= 7; ++len) {
    catalog::CatalogEntry entry = catalog::build("Chain" + std::to_string(len));
    const logic::FiniteStructure& m = *entry.structure;
    const logic::Signature& sig = m.sig;
    int leq = sig.relation_index("Leq");
    using logic::mk_and;
    using logic::mk_forall;
    using logic::mk_implies;
    using logic::t_var;
    auto le = [&](const char* a, const char* b) {
      return logic::mk_atom("Leq", leq, {t_var(a), t_var(b)});
    };
    // (A w)((w<=x & w<=y) -> w<=z)  vs  min(x,y) <= z
    logic::FormulaPtr min_le =
        mk_forall("w", mk_implies(mk_and(le("w", "x"), le("w", "y")),
                                  le("w", "z")));
    std::vector<std::vector<int>> sat =
        logic::definable_set(m, *min_le, {"x", "y", "z"});
    std::vector<std::vector<int>> want;
    for (int x = 0; x < m.n; ++x)
      for (int y = 0; y < m.n; ++y)
        for (int z = 0; z < m.n; ++z)
          if (std::min(x, y) <= z) want.push_back({x, y, z});
    detail::record(r, sat == want,
                   "chain " + std::to_string(len) +
                       ": universal encoding of min(x,y) <= z is exact");
    // z<=x & z<=y  vs  min(x,y) >= z
    logic::FormulaPtr min_ge = mk_and(le("z", "x"), le("z", "y"));
    sat = logic::definable_set(m, *min_ge, {"x", "y", "z"});
    want.clear();
    for (int x = 0; x < m.n; ++x)
      for (int y = 0; y < m.n; ++y)
        for (int z = 0; z < m.n; ++z)
          if (std::min(x, y) >= z) want.push_back({x, y, z});
    detail::record(r, sat == want,
                   "chain " + std::to_string(len) +
                       ": conjunction encoding of min(x,y) >= z is exact");
    // The h-side condition: some w lies below any x and y.
    bool guard_ok = true;
    for (int x = 0; x < m.n; ++x)
      for (int y = 0; y < m.n; ++y) {
        bool found = false;
        for (int w = 0; w < m.n && !found; ++w)
          if (std::min(w, x) == w && std::min(w, y) == w) found = true;
        if (!found) guard_ok = false;
      }
    detail::record(r, guard_ok,
                   "chain " + std::to_string(len) +
                       ": the lower-bound guard obligation is discharged");

    int pmax = len - 3;  // parameters; witness and primed tiers sit above
    bool equiv_ok = true, swap_witnessed = false;
    std::string bad;
    for (int f = 0; f <= pmax; ++f)
      for (int g = 0; g <= pmax; ++g)
        for (int k = 0; k <= pmax; ++k) {
          bool formula = detail::eval_lo(pmax, f, g, k);
          bool proof_dir = (g != k) || (f == k);
          bool stated_dir = (f != k) || (g == k);
          if (formula != proof_dir && bad.empty()) {
            equiv_ok = false;
            bad = "f=" + std::to_string(f) + " g=" + std::to_string(g) +
                  " k=" + std::to_string(k);
          }
          if (formula != stated_dir) swap_witnessed = true;
        }
    detail::record(r, equiv_ok,
                   "chain " + std::to_string(len) +
                       ": stratified evaluation matches g=k -> f=k on all " +
                       std::to_string((pmax + 1) * (pmax + 1) * (pmax + 1)) +
                       " parameter triples",
                   bad);
    detail::record(r, swap_witnessed,
                   "chain " + std::to_string(len) +
                       ": the stated direction f=k -> g=k is refuted (e.g. "
                       "f=0, g=k=1)");

    int top = len - 1;
    bool degenerate = true;
    for (int f = 0; f < top; ++f)
      for (int g = 0; g < top; ++g)
        for (int k = 0; k < top; ++k)
          if (!detail::eval_lo_naive(top, f, g, k)) degenerate = false;
    detail::record(r, degenerate,
                   "chain " + std::to_string(len) +
                       ": naive below-top evaluation is identically true (" +
                       std::to_string(top * top * top) + " triples)");
  }

  r.notes.push_back(
      "the proposition states the formula equivalent to f=k -> g=k, but its "
      "own converse case (g and k coincide where f and k do not) shows the "
      "formula expresses g=k -> f=k; the check verifies the proof's "
      "direction and records the swap");
  r.notes.push_back(
      "with a top element available as the witness u, max(u,.) is constant "
      "and the formula is identically true below the top; the check "
      "stratifies quantifier tiers (parameters < witness < primed variables) "
      "to simulate the no-maximum hypothesis");
  return r;
}

// ---------------------------------------------------------------------------
// group.q8_boolean
//
// The transport preorder  x <| y := (A w)(wx != xw -> (E u) w^u y != y w^u)
// is claimed to compute containment of supports modulo the center on
// products of any group whose noncentral class centralizers all equal the
// center, and Q8 is claimed to be such a group. Q8 is not: the class of i is
// {i, -i} and its centralizer is <i> = {1, -1, i, -i}. On Q8 x Q8 the
// preorder computes the finer axis relation (each coordinate central or
// generating the same cyclic subgroup), giving a 16-class quotient instead
// of the 4-subset Boolean algebra. The hypothesis and the claim are genuine
// for SL(2,3), where the check confirms them; the nilpotent obstruction on
// Q8 itself is unaffected.

namespace detail {

// <|-matrix via class centralizers: (E u) w^u y != y w^u  iff  y lies
// outside the centralizer of w's conjugacy class.
inline std::vector<std::vector<char>> transport_matrix(
    const groups::FiniteGroup& g, const criteria::ClassCentralizers& cc) {
  std::vector<std::vector<char>> rel(g.n, std::vector<char>(g.n, 1));
  std::vector<std::vector<char>> commutes(g.n, std::vector<char>(g.n));
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      commutes[a][b] = g.mul(a, b) == g.mul(b, a);
  parallel::for_indexed((size_t)g.n, [&](size_t xs) {
    int x = (int)xs;
    for (int y = 0; y < g.n; ++y) {
      for (int w = 0; w < g.n; ++w)
        if (!commutes[w][x] && cc.in_c[g.class_id[w]][y]) {
          rel[x][y] = 0;
          break;
        }
    }
  });
  return rel;
}

}  // namespace detail

inline CheckResult check_q8_boolean(Scale) {
  CheckResult r;
  r.claim =
      "the commutation-transport preorder computes support containment "
      "modulo the center on products of groups with minimal noncentral "
      "class centralizers; Q8 is claimed to qualify but does not";
  r.pass = true;
  catalog::CatalogEntry q8e = catalog::build("Q8");
  const groups::FiniteGroup& q8 = *q8e.group;

  std::vector<int> center = q8.center;
  std::sort(center.begin(), center.end());
  criteria::ClassCentralizers cc = criteria::ClassCentralizers::of(q8);
  // The stated hypothesis: every noncentral class centralizer equals the
  // center. In Q8 every noncentral class is {a, -a} with centralizer <a>.
  bool actual_ok = true;
  bool stated_holds = true;
  for (size_t c = 0; c < q8.classes.size(); ++c) {
    bool central_class = true;
    for (int mbr : q8.classes[c])
      if (!std::binary_search(center.begin(), center.end(), mbr))
        central_class = false;
    if (central_class) continue;
    std::vector<int> centralizer;
    for (int x = 0; x < q8.n; ++x)
      if (cc.in_c[c][x]) centralizer.push_back(x);
    if (centralizer != center) stated_holds = false;
    std::vector<int> cyclic;
    int p = q8.id;
    do {
      cyclic.push_back(p);
      p = q8.mul(p, q8.classes[c][0]);
    } while (p != q8.id);
    std::sort(cyclic.begin(), cyclic.end());
    if (centralizer != cyclic || cyclic.size() != 4) actual_ok = false;
  }
  detail::record(r, actual_ok && !stated_holds,
                 "each noncentral class {a, -a} of Q8 has class centralizer "
                 "<a> of order 4, strictly above the center {1, -1}");
  {
    int i_elem = q8.index_of_label("i");
    std::vector<int> czi;
    for (int x = 0; x < q8.n; ++x)
      if (cc.in_c[q8.class_id[i_elem]][x]) czi.push_back(x);
    std::vector<int> gen_i = {q8.index_of_label("1"), q8.index_of_label("-1"),
                              i_elem, q8.index_of_label("-i")};
    std::sort(gen_i.begin(), gen_i.end());
    detail::record(r, czi == gen_i && czi != center,
                   "class centralizer of i is {1, -1, i, -i}, refuting the "
                   "stated hypothesis for Q8",
                   detail::set_summary(q8, czi));
  }

  groups::FiniteGroup prod = groups::direct_product(q8, q8, "Q8xQ8");
  auto is_central = [&](int a) {
    return std::binary_search(center.begin(), center.end(), a);
  };
  auto supp_z = [&](int x) {
    int mask = 0;
    if (!is_central(x / q8.n)) mask |= 1;
    if (!is_central(x % q8.n)) mask |= 2;
    return mask;
  };
  // Same cyclic subgroup: in Q8, <a> = <b> for noncentral a, b iff b is a
  // or its inverse.
  auto same_axis = [&](int a, int b) {
    return a == b || b == q8.inv(a);
  };
  auto axis_le = [&](int x, int y) {
    int xa = x / q8.n, xb = x % q8.n, ya = y / q8.n, yb = y % q8.n;
    bool c0 = is_central(xa) || (!is_central(ya) && same_axis(xa, ya));
    bool c1 = is_central(xb) || (!is_central(yb) && same_axis(xb, yb));
    return c0 && c1;
  };

  // Direct evaluation of the formula, quantifiers over all of Q8 x Q8.
  auto trel_direct = [&](int x, int y) {
    for (int w = 0; w < prod.n; ++w) {
      if (prod.mul(w, x) == prod.mul(x, w)) continue;
      bool found = false;
      for (int u = 0; u < prod.n && !found; ++u) {
        int wu = prod.conj(prod.inv(u), w);  // u^-1 w u
        if (prod.mul(wu, y) != prod.mul(y, wu)) found = true;
      }
      if (!found) return false;
    }
    return true;
  };
  criteria::ClassCentralizers pcc = criteria::ClassCentralizers::of(prod);
  std::vector<std::vector<char>> rel = detail::transport_matrix(prod, pcc);

  bool direct_matches = true, axis_ok = true, supp_claim_holds = true;
  bool refines_supp = true;
  std::string bad;
  for (int x = 0; x < prod.n; ++x)
    for (int y = 0; y < prod.n; ++y) {
      bool formula = trel_direct(x, y);
      if (formula != (bool)rel[x][y]) direct_matches = false;
      if (formula != axis_le(x, y)) {
        axis_ok = false;
        if (bad.empty()) bad = "x=" + prod.labels[x] + " y=" + prod.labels[y];
      }
      bool supp_le = (supp_z(x) & ~supp_z(y)) == 0;
      if (formula != supp_le) supp_claim_holds = false;
      if (formula && !supp_le) refines_supp = false;
    }
  detail::record(r, direct_matches,
                 "direct quantifier evaluation agrees with the "
                 "class-centralizer reduction on all 4096 pairs");
  detail::record(r, axis_ok,
                 "on Q8 x Q8 the preorder is the axis relation: each "
                 "coordinate of x central or generating the same <a> as y",
                 bad);
  detail::record(r, !supp_claim_holds,
                 "the claimed support-containment reading fails on Q8 x Q8");
  {
    int i2 = prod.index_of_label("(i,i)");
    int j2 = prod.index_of_label("(j,j)");
    detail::record(r, supp_z(i2) == supp_z(j2) && !rel[i2][j2],
                   "pinned witness: (i,i) and (j,j) have equal supports but "
                   "(i,i) <| (j,j) fails, every conjugate of (j,e) commutes "
                   "with (j,j)");
  }
  // Preorder axioms and the surviving direction of the claim.
  bool refl = true, trans = true;
  for (int x = 0; x < prod.n; ++x) {
    if (!rel[x][x]) refl = false;
    for (int y = 0; y < prod.n; ++y)
      if (rel[x][y])
        for (int z = 0; z < prod.n; ++z)
          if (rel[y][z] && !rel[x][z]) trans = false;
  }
  detail::record(r, refl && trans, "the relation is a preorder on Q8 x Q8");
  detail::record(r, refines_supp,
                 "one direction survives: x <| y still implies support "
                 "containment");
  {
    std::set<std::vector<char>> rows;
    for (int x = 0; x < prod.n; ++x) rows.insert(rel[x]);
    detail::record(r, rows.size() == 16,
                   "the quotient has 16 classes (4 per coordinate: center "
                   "and three axes), not the 4 claimed subsets");
  }

  // SL(2,3) genuinely satisfies the hypothesis: its noncentral classes all
  // have class centralizer {1, -1}. There the claim is exact.
  catalog::CatalogEntry sle = catalog::build("SL2_3");
  const groups::FiniteGroup& sl = *sle.group;
  std::vector<int> slz = sl.center;
  std::sort(slz.begin(), slz.end());
  criteria::ClassCentralizers scc = criteria::ClassCentralizers::of(sl);
  bool sl_hyp = slz.size() == 2;
  for (size_t c = 0; c < sl.classes.size() && sl_hyp; ++c) {
    bool central_class = true;
    for (int mbr : sl.classes[c])
      if (!std::binary_search(slz.begin(), slz.end(), mbr))
        central_class = false;
    if (central_class) continue;
    std::vector<int> centralizer;
    for (int x = 0; x < sl.n; ++x)
      if (scc.in_c[c][x]) centralizer.push_back(x);
    if (centralizer != slz) sl_hyp = false;
  }
  detail::record(r, sl_hyp,
                 "SL(2,3) satisfies the hypothesis: every noncentral class "
                 "centralizer is exactly the center of order 2");

  groups::FiniteGroup sl2 = groups::direct_product(sl, sl, "SL23xSL23");
  criteria::ClassCentralizers s2cc = criteria::ClassCentralizers::of(sl2);
  std::vector<std::vector<char>> srel = detail::transport_matrix(sl2, s2cc);
  auto sl_supp = [&](int x) {
    int mask = 0;
    if (!std::binary_search(slz.begin(), slz.end(), x / sl.n)) mask |= 1;
    if (!std::binary_search(slz.begin(), slz.end(), x % sl.n)) mask |= 2;
    return mask;
  };
  bool sl_claim = true;
  std::string sl_bad;
  for (int x = 0; x < sl2.n && sl_claim; ++x)
    for (int y = 0; y < sl2.n; ++y) {
      bool supp_le = (sl_supp(x) & ~sl_supp(y)) == 0;
      if ((bool)srel[x][y] != supp_le) {
        sl_claim = false;
        sl_bad = "x=" + sl2.labels[x] + " y=" + sl2.labels[y];
        break;
      }
    }
  detail::record(r, sl_claim,
                 "on SL(2,3) x SL(2,3) the preorder equals support "
                 "containment modulo the center (331776 pairs)",
                 sl_bad);
  {
    std::set<std::vector<char>> rows;
    for (int x = 0; x < sl2.n; ++x) rows.insert(srel[x]);
    detail::record(r, rows.size() == 4,
                   "its quotient is the Boolean algebra on the two "
                   "coordinates, 4 classes");
  }

  auto wit = groups::nilpotent_center_map(q8);
  detail::record(r, wit.has_value(),
                 "nilpotent obstruction fires: commutation against a deep "
                 "noncentral element maps Q8 onto part of its center");
  if (wit) {
    std::ostringstream os;
    os << "pivot " << q8.labels[wit->pivot] << ", nilpotency class "
       << wit->nilpotency_class;
    r.instances.push_back(os.str() + ": recorded");
  }

  r.notes.push_back(
      "the stated hypothesis fails for Q8 (class centralizers of noncentral "
      "classes are the three cyclic subgroups of order 4) and the preorder "
      "gives a 16-class fan-squared quotient on Q8 x Q8 rather than the "
      "4-subset Boolean algebra; the construction itself is sound and is "
      "confirmed here on SL(2,3), which does satisfy the hypothesis");
  return r;
}

// ---------------------------------------------------------------------------
// criteria.catalog_verdicts
//
// Every curated catalog entry carries an expected verdict with a mechanism
// family. Group entries run through the full criteria engine; the magma and
// chain entries are decided by their comparison-formula equivalences from
// rps.formulas and order.formula.

inline CheckResult check_catalog_verdicts(Scale) {
  CheckResult r;
  r.claim =
      "the criteria engine reproduces every curated catalog verdict with the "
      "annotated mechanism family";
  r.pass = true;
  for (const std::string& name : catalog::curated_names()) {
    catalog::CatalogEntry e = catalog::build(name);
    if (!e.annotation) {
      detail::record(r, false, name + ": missing annotation");
      continue;
    }
    const catalog::Annotation& a = *e.annotation;
    if (e.group) {
      criteria::Verdict v = criteria::group_verdict(e.group);
      bool outcome_ok =
          (v.outcome == criteria::Outcome::Recognizes &&
           a.expected == catalog::Expectation::Recognizes) ||
          (v.outcome == criteria::Outcome::Fails &&
           a.expected == catalog::Expectation::Fails) ||
          (v.outcome == criteria::Outcome::Open &&
           a.expected == catalog::Expectation::Open);
      bool basis_ok = v.basis.rfind(a.basis, 0) == 0;
      std::string what = name + ": " + criteria::to_string(v.outcome) +
                         " via " + v.basis +
                         (a.source == "computed" ? " [computed annotation]"
                                                 : "");
      detail::record(r, outcome_ok && basis_ok, what,
                     name + ": expected " + catalog::to_string(a.expected) +
                         " via " + a.basis + ", got " +
                         criteria::to_string(v.outcome) + " via " + v.basis);
    } else if (name == "RPS") {
      CheckResult sub = check_rps_formulas(Scale::Ci);
      detail::record(r, sub.pass && a.expected == catalog::Expectation::Recognizes,
                     name + ": recognizes via the loser-term comparison "
                     "formula");
    } else {
      // Chain entries: the stratified comparison equivalence decides them.
      int len = std::stoi(name.substr(5));
      int pmax = len - 3;
      bool ok = true;
      for (int f = 0; f <= pmax; ++f)
        for (int g = 0; g <= pmax; ++g)
          for (int k = 0; k <= pmax; ++k)
            if (detail::eval_lo(pmax, f, g, k) != ((g != k) || (f == k)))
              ok = false;
      detail::record(r, ok && a.expected == catalog::Expectation::Recognizes,
                     name + ": recognizes via the lattice comparison formula");
    }
  }

  // Spec-pinned spot checks.
  {
    criteria::Verdict v =
        criteria::group_verdict(catalog::build("S5").group);
    detail::record(r,
                   v.outcome == criteria::Outcome::Recognizes &&
                       v.basis == "conjugacy-centralizer criterion",
                   "S5 recognizes through the conjugacy-centralizer criterion");
    criteria::Verdict g = criteria::group_verdict(catalog::build("GL2_3").group);
    detail::record(r,
                   g.outcome == criteria::Outcome::Fails &&
                       g.basis == "self homomorphism into the center",
                   "GL(2,3) fails through a homomorphism into its center");
    criteria::Verdict c = criteria::group_verdict(catalog::build("C6").group);
    detail::record(r,
                   c.outcome == criteria::Outcome::Fails &&
                       c.basis == "direct product decomposition",
                   "C6 fails as a direct product");
  }
  r.notes.push_back(
      "annotations marked [computed annotation] are engine-derived reviewed "
      "values where the published tables are silent (A4, SL(2,<5), GL(2,2), "
      "GL(2,7))");
  return r;
}

// ---------------------------------------------------------------------------
// Registry

using CheckFn = CheckResult (*)(Scale);

inline const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> checks = {
      {"sym.two_cycles", &check_two_cycles},
      {"sym.k_cycles", &check_k_cycles},
      {"sym.identifying_pairs", &check_identifying_pairs},
      {"sym.transposition_assignment", &check_transposition_assignment},
      {"sym.type_isolation", &check_type_isolation},
      {"sym.s3_patching_supports", &check_s3_patching_supports},
      {"logic.zsupp_formula", &check_zsupp_formula},
      {"rps.formulas", &check_rps_formulas},
      {"order.formula", &check_order_formula},
      {"group.q8_boolean", &check_q8_boolean},
      {"criteria.catalog_verdicts", &check_catalog_verdicts},
  };
  return checks;
}

inline std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

inline CheckResult run(const std::string& name, Scale scale = Scale::Ci) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    auto t0 = std::chrono::steady_clock::now();
    CheckResult r = fn(scale);
    r.name = n;
    r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
                   .count();
    return r;
  }
  throw std::invalid_argument("unknown check: " + name);
}

inline std::vector<CheckResult> run_all(Scale scale = Scale::Ci) {
  const auto& checks = registry();
  return parallel::map_indexed<CheckResult>(
      checks.size(), [&](size_t i) { return run(checks[i].first, scale); });
}

}  // namespace coordlens::paperchecks
