#pragma once

// Finite reduced products: proper ideals on a finite index set, the quotient
// Boolean algebra of index sets, the reduced structure itself, supports,
// restrictions, and the satisfaction transfer check for h-formulas.

#include <algorithm>
#include <cstdint>
#include <set>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coordlens/logic.hpp"

namespace coordlens::reduced {

using Mask = uint32_t;  // subset of the index set, one bit per index

inline constexpr int kMaxIndices = 10;
inline constexpr long long kMaxTuples = 1000000;     // product universe bound
inline constexpr long long kMaxTableCells = 10000000;  // derived table bound

// ---------------------------------------------------------------------------
// Ideals and the quotient Boolean algebra

struct FiniteIdeal {
  int k = 0;
  Mask full = 0;
  std::vector<Mask> generators;  // as provided by the caller
  std::vector<Mask> members;     // sorted, explicit
  std::vector<char> member_bit;  // indexed by mask
  Mask umax = 0;                 // union of all members

  bool contains(Mask m) const { return member_bit[m] != 0; }
  bool is_proper() const { return !contains(full); }
};

inline FiniteIdeal make_ideal(int k, const std::vector<Mask>& generators) {
  if (k < 1 || k > kMaxIndices)
    throw std::invalid_argument("index count must be between 1 and " +
                                std::to_string(kMaxIndices));
  FiniteIdeal ideal;
  ideal.k = k;
  ideal.full = (Mask(1) << k) - 1;
  ideal.generators = generators;
  for (Mask g : generators)
    if (g & ~ideal.full)
      throw std::invalid_argument("generator uses an index outside 0.." +
                                  std::to_string(k - 1));

  // Close under subsets and pairwise unions by worklist until stable.
  std::vector<char> in((size_t)1 << k, 0);
  std::vector<Mask> work{0};
  in[0] = 1;
  for (Mask g : generators)
    if (!in[g]) {
      in[g] = 1;
      work.push_back(g);
    }
  for (size_t i = 0; i < work.size(); ++i) {
    Mask m = work[i];
    for (Mask sub = m; sub; sub = (sub - 1) & m)
      if (!in[sub]) {
        in[sub] = 1;
        work.push_back(sub);
      }
    for (size_t j = 0; j <= i; ++j) {
      Mask u = m | work[j];
      if (!in[u]) {
        in[u] = 1;
        work.push_back(u);
      }
    }
  }
  if (in[ideal.full])
    throw std::invalid_argument(
        "improper ideal: the closure of the generators contains the whole "
        "index set");
  ideal.member_bit = std::move(in);
  for (Mask m = 0; m <= ideal.full; ++m)
    if (ideal.member_bit[m]) {
      ideal.members.push_back(m);
      ideal.umax |= m;
    }
  return ideal;
}

inline FiniteIdeal trivial_ideal(int k) { return make_ideal(k, {}); }

// P(I)/ideal. Two index sets are identified when their symmetric difference
// lies in the ideal; since the ideal is the power set of its maximum member U,
// the canonical representative of a class is the part outside U.
struct QuotientBA {
  int k = 0;
  Mask full = 0;
  Mask umax = 0;

  Mask rep(Mask m) const { return m & full & ~umax; }
  Mask zero() const { return 0; }
  Mask one() const { return full & ~umax; }
  Mask meet(Mask a, Mask b) const { return rep(a) & rep(b); }
  Mask join(Mask a, Mask b) const { return rep(a) | rep(b); }
  Mask complement(Mask a) const { return one() & ~rep(a); }
  bool le(Mask a, Mask b) const { return (rep(a) & ~rep(b)) == 0; }
  bool same(Mask a, Mask b) const { return rep(a) == rep(b); }

  int class_count() const { return 1 << popcount(one()); }
  std::vector<Mask> elements() const {
    std::vector<Mask> out;
    Mask top = one();
    // enumerate subsets of the top representative in increasing mask order
    for (Mask m = 0;; m = (m - top) & top) {
      out.push_back(m);
      if (m == top) break;
    }
    return out;
  }
  std::vector<Mask> atoms() const {
    std::vector<Mask> out;
    Mask top = one();
    for (int i = 0; i < k; ++i)
      if (top & (Mask(1) << i)) out.push_back(Mask(1) << i);
    return out;
  }
  // No finite Boolean algebra with a nonzero element is atomless; recorded so
  // reports can state that the atomless hypothesis is unavailable here.
  bool is_atomless() const { return atoms().empty(); }

  static int popcount(Mask m) { return __builtin_popcount(m); }
};

inline QuotientBA quotient_algebra(const FiniteIdeal& ideal) {
  QuotientBA ba;
  ba.k = ideal.k;
  ba.full = ideal.full;
  ba.umax = ideal.umax;
  return ba;
}

// ---------------------------------------------------------------------------
// The reduced product

struct ReducedProduct {
  std::vector<std::shared_ptr<const logic::FiniteStructure>> factors;
  FiniteIdeal ideal;
  QuotientBA ba;
  logic::FiniteStructure structure;      // universe = agreement classes
  std::vector<std::vector<int>> reps;    // canonical (lex-least) tuple per class
  std::vector<int32_t> tuple_class;      // mixed-radix tuple index -> class
  std::vector<long long> radix;          // radix[i] = stride of coordinate i

  int k() const { return ideal.k; }
  int size() const { return structure.n; }

  long long tuple_key(const std::vector<int>& tuple) const {
    long long key = 0;
    for (int i = 0; i < k(); ++i) key += radix[i] * tuple[i];
    return key;
  }
  std::vector<int> canonical(std::vector<int> tuple) const {
    for (int i = 0; i < k(); ++i)
      if (ideal.umax & (Mask(1) << i)) tuple[i] = 0;
    return tuple;
  }
  int class_of(const std::vector<int>& tuple) const {
    return tuple_class[tuple_key(canonical(tuple))];
  }
  const std::vector<int>& rep(int cls) const { return reps[cls]; }
  // All tuples in the agreement class, in lexicographic order.
  std::vector<std::vector<int>> members(int cls) const {
    std::vector<std::vector<int>> out{reps[cls]};
    for (int i = k() - 1; i >= 0; --i) {
      if (!(ideal.umax & (Mask(1) << i))) continue;
      size_t base = out.size();
      int ni = factors[i]->n;
      std::vector<std::vector<int>> next;
      next.reserve(base * ni);
      for (int v = 0; v < ni; ++v)
        for (size_t t = 0; t < base; ++t) {
          next.push_back(out[t]);
          next.back()[i] = v;
        }
      out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline ReducedProduct reduced_product(
    std::vector<std::shared_ptr<const logic::FiniteStructure>> factors,
    FiniteIdeal ideal) {
  if ((int)factors.size() != ideal.k)
    throw std::invalid_argument("factor count does not match the index set");
  const logic::Signature& sig = factors[0]->sig;
  auto same_sig = [&](const logic::Signature& o) {
    if (o.relations.size() != sig.relations.size() ||
        o.functions.size() != sig.functions.size() ||
        o.constants != sig.constants)
      return false;
    for (size_t i = 0; i < sig.relations.size(); ++i)
      if (o.relations[i].name != sig.relations[i].name ||
          o.relations[i].arity != sig.relations[i].arity)
        return false;
    for (size_t i = 0; i < sig.functions.size(); ++i)
      if (o.functions[i].name != sig.functions[i].name ||
          o.functions[i].arity != sig.functions[i].arity)
        return false;
    return true;
  };
  for (const auto& f : factors)
    if (!same_sig(f->sig))
      throw std::invalid_argument("factors must share one signature");

  long long total = 1;
  for (const auto& f : factors) {
    total *= f->n;
    if (total > kMaxTuples)
      throw std::invalid_argument("product universe exceeds " +
                                  std::to_string(kMaxTuples) + " tuples");
  }

  ReducedProduct rp;
  rp.factors = std::move(factors);
  rp.ideal = std::move(ideal);
  rp.ba = quotient_algebra(rp.ideal);
  int k = rp.k();
  rp.radix.assign(k, 1);
  for (int i = k - 2; i >= 0; --i)
    rp.radix[i] = rp.radix[i + 1] * rp.factors[i + 1]->n;

  // enumerate canonical representatives in lexicographic tuple order
  rp.tuple_class.assign((size_t)total, -1);
  std::vector<int> tuple(k, 0);
  std::vector<std::string> labels;
  for (long long key = 0; key < total; ++key) {
    long long rem = key;
    bool canon = true;
    for (int i = 0; i < k; ++i) {
      tuple[i] = (int)(rem / rp.radix[i]);
      rem %= rp.radix[i];
      if (tuple[i] != 0 && (rp.ideal.umax & (Mask(1) << i))) canon = false;
    }
    if (!canon) continue;
    rp.tuple_class[key] = (int)rp.reps.size();
    rp.reps.push_back(tuple);
    std::string lbl = "(";
    for (int i = 0; i < k; ++i) {
      if (i) lbl += ",";
      lbl += rp.factors[i]->labels[tuple[i]];
    }
    labels.push_back(lbl + ")");
  }
  for (long long key = 0; key < total; ++key) {
    if (rp.tuple_class[key] >= 0) continue;
    long long rem = key, ckey = 0;
    for (int i = 0; i < k; ++i) {
      int v = (int)(rem / rp.radix[i]);
      rem %= rp.radix[i];
      if (!(rp.ideal.umax & (Mask(1) << i))) ckey += rp.radix[i] * v;
    }
    rp.tuple_class[key] = rp.tuple_class[ckey];
  }

  int n = (int)rp.reps.size();
  rp.structure = logic::make_structure(sig, std::move(labels));

  std::vector<int> args;
  for (size_t fi = 0; fi < sig.functions.size(); ++fi) {
    int arity = sig.functions[fi].arity;
    long long cells = 1;
    for (int a = 0; a < arity; ++a) {
      cells *= n;
      if (cells > kMaxTableCells)
        throw std::invalid_argument("derived function table exceeds " +
                                    std::to_string(kMaxTableCells) + " cells");
    }
    std::vector<int> table((size_t)cells);
    std::vector<int> idx(arity, 0), coord(k);
    for (long long cell = 0; cell < cells; ++cell) {
      long long rem = cell;
      for (int a = arity - 1; a >= 0; --a) {
        idx[a] = (int)(rem % n);
        rem /= n;
      }
      for (int i = 0; i < k; ++i) {
        args.assign(arity, 0);
        for (int a = 0; a < arity; ++a) args[a] = rp.reps[idx[a]][i];
        coord[i] = rp.factors[i]->func_apply((int)fi, args);
      }
      table[cell] = rp.class_of(coord);
    }
    logic::set_function_table(rp.structure, sig.functions[fi].name, table);
  }

  for (size_t ri = 0; ri < sig.relations.size(); ++ri) {
    int arity = sig.relations[ri].arity;
    long long cells = 1;
    for (int a = 0; a < arity; ++a) {
      cells *= n;
      if (cells > kMaxTableCells)
        throw std::invalid_argument("derived relation table exceeds " +
                                    std::to_string(kMaxTableCells) + " cells");
    }
    std::vector<int> idx(arity, 0), args(arity);
    for (long long cell = 0; cell < cells; ++cell) {
      long long rem = cell;
      for (int a = arity - 1; a >= 0; --a) {
        idx[a] = (int)(rem % n);
        rem /= n;
      }
      Mask fail = 0;
      for (int i = 0; i < k; ++i) {
        for (int a = 0; a < arity; ++a) args[a] = rp.reps[idx[a]][i];
        if (!rp.factors[i]->rel_holds((int)ri, args)) fail |= Mask(1) << i;
      }
      if (rp.ideal.contains(fail)) {
        std::vector<int> tup(idx.begin(), idx.end());
        logic::add_relation_tuple(rp.structure, sig.relations[ri].name, tup);
      }
    }
  }

  for (size_t ci = 0; ci < sig.constants.size(); ++ci) {
    std::vector<int> coord(k);
    for (int i = 0; i < k; ++i) coord[i] = rp.factors[i]->constants[ci];
    logic::set_constant(rp.structure, sig.constants[ci], rp.class_of(coord));
  }
  return rp;
}

// ---------------------------------------------------------------------------
// Supports

namespace detail {

inline std::map<std::string, int> project_assignment(
    const ReducedProduct& rp, const std::map<std::string, int>& assignment,
    int factor) {
  std::map<std::string, int> out;
  for (const auto& [var, cls] : assignment) {
    if (cls < 0 || cls >= rp.size())
      throw std::invalid_argument("assignment value out of range for " + var);
    out[var] = rp.rep(cls)[factor];
  }
  return out;
}

inline std::map<std::string, int> filter_to_free(
    const logic::FormulaPtr& f, const std::map<std::string, int>& assignment) {
  std::map<std::string, int> out;
  for (const std::string& v : logic::free_vars(*f)) {
    auto it = assignment.find(v);
    if (it == assignment.end())
      throw std::invalid_argument("assignment missing variable " + v);
    out[v] = it->second;
  }
  return out;
}

}  // namespace detail

// Raw index set where the formula holds coordinatewise at the representatives.
inline Mask raw_support(const ReducedProduct& rp, const logic::FormulaPtr& phi,
                        const std::map<std::string, int>& assignment) {
  auto pinned = detail::filter_to_free(phi, assignment);
  Mask s = 0;
  for (int i = 0; i < rp.k(); ++i)
    if (logic::eval(*rp.factors[i], *phi,
                    detail::project_assignment(rp, pinned, i)))
      s |= Mask(1) << i;
  return s;
}

inline Mask supp_phi(const ReducedProduct& rp, const logic::FormulaPtr& phi,
                     const std::map<std::string, int>& assignment) {
  return rp.ba.rep(raw_support(rp, phi, assignment));
}

// Agreement support of two elements: the class of the set of coordinates
// where their representatives agree.
inline Mask supp_eq(const ReducedProduct& rp, int a, int b) {
  Mask s = 0;
  for (int i = 0; i < rp.k(); ++i)
    if (rp.rep(a)[i] == rp.rep(b)[i]) s |= Mask(1) << i;
  return rp.ba.rep(s);
}

// The class of the set of factors satisfying a sentence.
inline Mask c_theta(const ReducedProduct& rp, const logic::FormulaPtr& theta) {
  if (!logic::free_vars(*theta).empty())
    throw std::invalid_argument("c_theta takes a sentence");
  Mask s = 0;
  for (int i = 0; i < rp.k(); ++i)
    if (logic::eval(*rp.factors[i], *theta)) s |= Mask(1) << i;
  return rp.ba.rep(s);
}

inline bool sentence_mod_ideal(
    const std::vector<std::shared_ptr<const logic::FiniteStructure>>& factors,
    const FiniteIdeal& ideal, const logic::FormulaPtr& theta) {
  if ((int)factors.size() != ideal.k)
    throw std::invalid_argument("factor count does not match the index set");
  if (!logic::free_vars(*theta).empty())
    throw std::invalid_argument("sentence_mod_ideal takes a sentence");
  Mask fail = 0;
  for (int i = 0; i < ideal.k; ++i)
    if (!logic::eval(*factors[i], *theta)) fail |= Mask(1) << i;
  return ideal.contains(fail);
}

// ---------------------------------------------------------------------------
// Restriction

struct Restriction {
  ReducedProduct product;
  std::vector<int> indices;         // original indices kept, ascending
  std::vector<int32_t> projection;  // original class -> restricted class
};

// Restrict to the index set given by any representative mask of a nonzero
// support class. The induced ideal collapses whatever part of U survives, so
// all representatives of one class give canonically isomorphic results.
inline Restriction restrict_product(const ReducedProduct& rp, Mask set) {
  if (rp.ba.rep(set) == 0)
    throw std::invalid_argument("cannot restrict to the zero support class");
  Restriction out;
  std::vector<std::shared_ptr<const logic::FiniteStructure>> subfactors;
  std::vector<Mask> subgens;
  Mask kept_u = set & rp.ideal.umax;
  for (int i = 0, j = 0; i < rp.k(); ++i) {
    if (!(set & (Mask(1) << i))) continue;
    out.indices.push_back(i);
    subfactors.push_back(rp.factors[i]);
    if (kept_u & (Mask(1) << i)) subgens.push_back(Mask(1) << j);
    ++j;
  }
  out.product = reduced_product(std::move(subfactors),
                                make_ideal((int)out.indices.size(), subgens));
  out.projection.resize(rp.size());
  std::vector<int> sub(out.indices.size());
  for (int c = 0; c < rp.size(); ++c) {
    for (size_t j = 0; j < out.indices.size(); ++j)
      sub[j] = rp.rep(c)[out.indices[j]];
    out.projection[c] = out.product.class_of(sub);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Satisfaction transfer for h-formulas

struct TransferReport {
  bool refused = false;
  std::string refusal;           // why the check would not run
  logic::HResult certificate;    // classification of the formula
  bool obligations_ok = false;
  std::string obligation_failure;  // factor and obligation if not discharged
  bool product_side = false;     // reduced product satisfies the formula
  bool ideal_side = false;       // failure index set lies in the ideal
  Mask failure_set = 0;          // raw set of failing factor indices
  bool agree = false;
};

inline TransferReport los_check(const ReducedProduct& rp,
                                const logic::FormulaPtr& phi,
                                const std::map<std::string, int>& assignment) {
  TransferReport r;
  r.certificate = logic::classify_h(phi);
  if (!r.certificate.is_h) {
    r.refused = true;
    r.refusal = "formula is not an h-formula: " +
                r.certificate.refusal->reason + " at " +
                r.certificate.refusal->path;
    return r;
  }
  for (const auto& ob : r.certificate.obligations)
    for (int i = 0; i < rp.k(); ++i)
      if (!logic::obligation_holds(*rp.factors[i], ob)) {
        r.refused = true;
        r.obligation_failure = "obligation " + logic::to_string(*ob) +
                               " fails in factor " + std::to_string(i);
        r.refusal = r.obligation_failure;
        return r;
      }
  r.obligations_ok = true;
  auto pinned = detail::filter_to_free(phi, assignment);
  r.product_side = logic::eval(rp.structure, *phi, pinned);
  r.failure_set = rp.ideal.full & ~raw_support(rp, phi, assignment);
  r.ideal_side = rp.ideal.contains(r.failure_set);
  r.agree = r.product_side == r.ideal_side;
  return r;
}

// Negation/conjunction/disjunction turn into complement/meet/join of supports.
inline bool support_identities(const ReducedProduct& rp,
                               const logic::FormulaPtr& phi,
                               const logic::FormulaPtr& psi,
                               const std::map<std::string, int>& assignment) {
  Mask sp = supp_phi(rp, phi, assignment);
  Mask sq = supp_phi(rp, psi, assignment);
  Mask snot = supp_phi(rp, logic::mk_not(phi), assignment);
  Mask sand = supp_phi(rp, logic::mk_and(phi, psi), assignment);
  Mask sor = supp_phi(rp, logic::mk_or(phi, psi), assignment);
  return rp.ba.same(snot, rp.ba.complement(sp)) &&
         rp.ba.same(sand, rp.ba.meet(sp, sq)) &&
         rp.ba.same(sor, rp.ba.join(sp, sq));
}

// The largest support class S such that the hybrid of a on S with a fixed
// satisfying element off S still satisfies the formula; checked against the
// direct coordinatewise support.
inline Mask largest_S_support(const ReducedProduct& rp,
                              const logic::FormulaPtr& phi, int a) {
  auto frees = logic::free_vars(*phi);
  if (frees.size() != 1)
    throw std::invalid_argument("largest_S_support takes a one-variable formula");
  logic::HResult cert = logic::classify_h(phi);
  if (!cert.is_h)
    throw std::invalid_argument("largest_S_support requires an h-formula");
  for (const auto& ob : cert.obligations)
    for (int i = 0; i < rp.k(); ++i)
      if (!logic::obligation_holds(*rp.factors[i], ob))
        throw std::invalid_argument(
            "largest_S_support requires discharged obligations");
  const std::string& var = *frees.begin();
  int b = -1;
  for (int c = 0; c < rp.size(); ++c)
    if (logic::eval(rp.structure, *phi, {{var, c}})) {
      b = c;
      break;
    }
  if (b < 0)
    throw std::invalid_argument("formula is unsatisfiable in the product");

  Mask best = 0;
  bool best_seen = false;
  std::vector<int> hybrid(rp.k());
  for (Mask s : rp.ba.elements()) {
    for (int i = 0; i < rp.k(); ++i)
      hybrid[i] = (s & (Mask(1) << i)) ? rp.rep(a)[i] : rp.rep(b)[i];
    if (logic::eval(rp.structure, *phi, {{var, rp.class_of(hybrid)}})) {
      best |= s;
      best_seen = true;
    }
  }
  if (!best_seen) throw std::logic_error("no support class satisfied the hybrid");
  Mask direct = supp_phi(rp, phi, {{var, a}});
  if (!rp.ba.same(best, direct))
    throw std::logic_error("hybrid support disagrees with direct support");
  return rp.ba.rep(best);
}

// Coordinatewise patch witness: agrees with a on A and with b on B.
inline int patch(const ReducedProduct& rp, Mask a_set, Mask b_set, int a,
                 int b) {
  Mask ca = rp.ba.rep(a_set), cb = rp.ba.rep(b_set);
  if (ca & cb) throw std::invalid_argument("patch needs disjoint support classes");
  std::vector<int> tuple(rp.k());
  for (int i = 0; i < rp.k(); ++i)
    tuple[i] = (cb & (Mask(1) << i)) ? rp.rep(b)[i] : rp.rep(a)[i];
  int c = rp.class_of(tuple);
  if (!rp.ba.le(ca, supp_eq(rp, c, a)) || !rp.ba.le(cb, supp_eq(rp, c, b)))
    throw std::logic_error("patch witness failed its postcondition");
  return c;
}

// ---------------------------------------------------------------------------
// Does a 4-variable formula define agreement-support containment?

struct SupportRelationReport {
  bool holds = false;
  std::string mode;  // "exhaustive" or "pruned"
  long long checked = 0;
  struct Counterexample {
    int a, a2, b, b2;
    bool formula_value;
    bool target_value;
  };
  std::optional<Counterexample> counterexample;
};

// Target: Phi(a,a',b,b') holds exactly when supp_eq(a,a') <= supp_eq(b,b').
// vars gives the formula variables in the role order (a, a', b, b').
// Exhaustive below the cell bound; otherwise representatives are sampled per
// (agreement-set, agreement-set) bucket, which decides formulas whose value
// factors through supports and otherwise still reports any mismatch found.
inline SupportRelationReport defines_support_relation(
    const ReducedProduct& rp, const logic::FormulaPtr& phi,
    const std::vector<std::string>& vars,
    long long exhaustive_bound = 2000000) {
  if (vars.size() != 4)
    throw std::invalid_argument("expected four variable roles");
  std::set<std::string> roles(vars.begin(), vars.end());
  if (roles.size() != 4 || logic::free_vars(*phi) != roles)
    throw std::invalid_argument("formula free variables must match the roles");

  SupportRelationReport out;
  int n = rp.size();
  long long total = (long long)n * n * n * n;
  std::map<std::string, int> asg;
  auto check_one = [&](int a, int a2, int b, int b2) {
    asg[vars[0]] = a;
    asg[vars[1]] = a2;
    asg[vars[2]] = b;
    asg[vars[3]] = b2;
    bool fv = logic::eval(rp.structure, *phi, asg);
    bool tv = rp.ba.le(supp_eq(rp, a, a2), supp_eq(rp, b, b2));
    ++out.checked;
    if (fv != tv && !out.counterexample)
      out.counterexample =
          SupportRelationReport::Counterexample{a, a2, b, b2, fv, tv};
    return fv == tv;
  };

  if (total <= exhaustive_bound) {
    out.mode = "exhaustive";
    for (int a = 0; a < n; ++a)
      for (int a2 = 0; a2 < n; ++a2)
        for (int b = 0; b < n; ++b)
          for (int b2 = 0; b2 < n; ++b2)
            if (!check_one(a, a2, b, b2)) {
              out.holds = false;
              return out;
            }
    out.holds = true;
    return out;
  }

  out.mode = "pruned";
  constexpr int kRepsPerBucket = 3;
  std::map<Mask, std::vector<std::pair<int, int>>> buckets;
  for (int a = 0; a < n; ++a)
    for (int a2 = 0; a2 < n; ++a2) {
      Mask raw = 0;
      for (int i = 0; i < rp.k(); ++i)
        if (rp.rep(a)[i] == rp.rep(a2)[i]) raw |= Mask(1) << i;
      auto& v = buckets[raw];
      if ((int)v.size() < kRepsPerBucket) v.emplace_back(a, a2);
    }
  for (const auto& [s1, pairs1] : buckets)
    for (const auto& [s2, pairs2] : buckets)
      for (auto [a, a2] : pairs1)
        for (auto [b, b2] : pairs2)
          if (!check_one(a, a2, b, b2)) {
            out.holds = false;
            return out;
          }
  out.holds = true;
  return out;
}

// Group-product variant: Psi(d1,d2) should define "every coordinate where d1
// is the identity is one where d2 is"; equivalently the transported 4-variable
// formula Psi(x*inv(x'), y*inv(y')) defines agreement-support containment,
// since x*inv(x') ranges over all elements and agrees with the identity
// exactly where x and x' agree. Always exhaustive over element pairs.
inline SupportRelationReport defines_support_difference(
    const ReducedProduct& rp, const logic::FormulaPtr& psi,
    const std::vector<std::string>& vars) {
  if (vars.size() != 2)
    throw std::invalid_argument("expected two variable roles");
  std::set<std::string> roles(vars.begin(), vars.end());
  if (roles.size() != 2 || logic::free_vars(*psi) != roles)
    throw std::invalid_argument("formula free variables must match the roles");
  int ec = rp.structure.sig.constant_index("e");
  if (ec < 0)
    throw std::invalid_argument("group signature with constant e required");
  int e = rp.structure.constants[ec];

  SupportRelationReport out;
  out.mode = "exhaustive";
  int n = rp.size();
  auto eqmask = [&](int d) { return supp_eq(rp, d, e); };
  std::map<std::string, int> asg;
  for (int d1 = 0; d1 < n; ++d1)
    for (int d2 = 0; d2 < n; ++d2) {
      asg[vars[0]] = d1;
      asg[vars[1]] = d2;
      bool fv = logic::eval(rp.structure, *psi, asg);
      bool tv = rp.ba.le(eqmask(d1), eqmask(d2));
      ++out.checked;
      if (fv != tv) {
        out.holds = false;
        out.counterexample =
            SupportRelationReport::Counterexample{d1, e, d2, e, fv, tv};
        return out;
      }
    }
  out.holds = true;
  return out;
}

}  // namespace coordlens::reduced
