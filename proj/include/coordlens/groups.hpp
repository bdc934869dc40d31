#pragma once

// Finite groups as dense multiplication tables, plus the structural
// machinery the recognition criteria need: conjugacy classes, centralizers,
// derived and lower central series, normal subgroups, quotients,
// decomposability, and homomorphisms into centers.

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "coordlens/logic.hpp"

namespace coordlens::groups {

struct FiniteGroup {
  std::string name;
  int n = 0;
  std::vector<int32_t> table;  // row-major: table[a*n+b] = a*b
  std::vector<int32_t> inverse;
  int id = 0;
  std::vector<std::string> labels;
  std::unordered_map<std::string, int> label_index;

  // Invariants computed at construction.
  std::vector<int> order;     // element orders
  std::vector<int> class_id;  // conjugacy class of each element
  std::vector<std::vector<int>> classes;  // each sorted; ordered by least member
  std::vector<int> center;                // sorted

  int mul(int a, int b) const { return table[(size_t)a * n + b]; }
  int inv(int a) const { return inverse[a]; }
  int conj(int g, int a) const { return mul(mul(g, a), inv(g)); }
  int comm(int a, int b) const {  // [a,b] = a^-1 b^-1 a b
    return mul(mul(inv(a), inv(b)), mul(a, b));
  }
  int pow(int a, long long k) const {
    long long m = order[a];
    k %= m;
    if (k < 0) k += m;
    int acc = id;
    for (long long i = 0; i < k; ++i) acc = mul(acc, a);
    return acc;
  }
  bool is_abelian() const { return (int)center.size() == n; }
  int index_of_label(const std::string& lbl) const {
    auto it = label_index.find(lbl);
    if (it == label_index.end())
      throw std::invalid_argument(name + ": unknown element label: " + lbl);
    return it->second;
  }
};

namespace detail {

inline void compute_invariants(FiniteGroup& g) {
  int n = g.n;
  g.order.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    int x = a, k = 1;
    while (x != g.id) {
      x = g.mul(x, a);
      ++k;
      if (k > n) throw std::invalid_argument(g.name + ": order overflow (not a group)");
    }
    g.order[a] = k;
  }
  g.class_id.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    if (g.class_id[a] >= 0) continue;
    int cid = (int)g.classes.size();
    std::vector<int> members;
    for (int h = 0; h < n; ++h) {
      int c = g.conj(h, a);
      if (g.class_id[c] < 0) {
        g.class_id[c] = cid;
        members.push_back(c);
      }
    }
    std::sort(members.begin(), members.end());
    g.classes.push_back(std::move(members));
  }
  for (int a = 0; a < n; ++a)
    if (g.classes[g.class_id[a]].size() == 1) g.center.push_back(a);
}

inline void validate(const FiniteGroup& g, bool trust_associativity) {
  int n = g.n;
  std::vector<char> seen(n);
  for (int a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) {
      int v = g.mul(a, b);
      if (v < 0 || v >= n)
        throw std::invalid_argument(g.name + ": table value out of range");
      if (seen[v]++)
        throw std::invalid_argument(g.name + ": row " + std::to_string(a) +
                                    " is not a permutation");
    }
  }
  for (int b = 0; b < n; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int a = 0; a < n; ++a)
      if (seen[g.mul(a, b)]++)
        throw std::invalid_argument(g.name + ": column " + std::to_string(b) +
                                    " is not a permutation");
  }
  if (!trust_associativity) {
    if (n <= 256) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
              throw std::invalid_argument(g.name + ": not associative");
    } else {
      uint64_t s = 0x9e3779b97f4a7c15ull;
      for (int t = 0; t < 20000; ++t) {
        s ^= s << 13; s ^= s >> 7; s ^= s << 17;
        int a = (int)(s % n), b = (int)((s >> 20) % n), c = (int)((s >> 40) % n);
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw std::invalid_argument(g.name + ": not associative");
      }
    }
  }
}

}  // namespace detail

inline FiniteGroup make_group(std::string name, std::vector<std::string> labels,
                              std::vector<int32_t> table,
                              bool trust_associativity = false) {
  FiniteGroup g;
  g.name = std::move(name);
  g.labels = std::move(labels);
  g.n = (int)g.labels.size();
  if (g.n == 0) throw std::invalid_argument("group needs at least one element");
  if (table.size() != (size_t)g.n * g.n)
    throw std::invalid_argument(g.name + ": table size must be n*n");
  g.table = std::move(table);
  for (int i = 0; i < g.n; ++i)
    if (!g.label_index.emplace(g.labels[i], i).second)
      throw std::invalid_argument(g.name + ": duplicate label " + g.labels[i]);

  g.id = -1;
  for (int a = 0; a < g.n; ++a) {
    // the identity must satisfy a*0 = 0, which prunes the scan
    if (g.table[(size_t)a * g.n] != 0 && g.n > 1) continue;
    bool ok = true;
    for (int b = 0; b < g.n && ok; ++b)
      ok = g.mul(a, b) == b && g.mul(b, a) == b;
    if (ok) {
      g.id = a;
      break;
    }
  }
  if (g.id < 0) throw std::invalid_argument(g.name + ": no identity element");

  detail::validate(g, trust_associativity);

  g.inverse.assign(g.n, -1);
  for (int a = 0; a < g.n; ++a) {
    for (int b = 0; b < g.n; ++b)
      if (g.mul(a, b) == g.id && g.mul(b, a) == g.id) {
        g.inverse[a] = b;
        break;
      }
    if (g.inverse[a] < 0)
      throw std::invalid_argument(g.name + ": element without inverse");
  }

  detail::compute_invariants(g);
  return g;
}

// ---------------------------------------------------------------------------
// Subgroups

struct Subgroup {
  std::vector<int> elems;    // sorted
  std::vector<char> member;  // size n
  int size() const { return (int)elems.size(); }
  bool contains(int a) const { return member[a] != 0; }
};

inline Subgroup full_subgroup(const FiniteGroup& g) {
  Subgroup s;
  s.elems.resize(g.n);
  std::iota(s.elems.begin(), s.elems.end(), 0);
  s.member.assign(g.n, 1);
  return s;
}

inline Subgroup trivial_subgroup(const FiniteGroup& g) {
  Subgroup s;
  s.elems = {g.id};
  s.member.assign(g.n, 0);
  s.member[g.id] = 1;
  return s;
}

inline Subgroup subgroup_closure(const FiniteGroup& g,
                                 const std::vector<int>& gens) {
  Subgroup s;
  s.member.assign(g.n, 0);
  s.member[g.id] = 1;
  s.elems.push_back(g.id);
  for (int x : gens)
    if (!s.member[x]) {
      s.member[x] = 1;
      s.elems.push_back(x);
    }
  for (size_t i = 0; i < s.elems.size(); ++i) {
    int x = s.elems[i];
    size_t snapshot = s.elems.size();
    for (size_t j = 0; j < snapshot; ++j) {
      int y = s.elems[j];
      for (int p : {g.mul(x, y), g.mul(y, x)}) {
        if (!s.member[p]) {
          s.member[p] = 1;
          s.elems.push_back(p);
        }
      }
      if ((int)s.elems.size() * 2 > g.n) return full_subgroup(g);
    }
  }
  std::sort(s.elems.begin(), s.elems.end());
  return s;
}

inline Subgroup normal_closure(const FiniteGroup& g,
                               const std::vector<int>& gens) {
  std::vector<int> conj_gens;
  for (int x : gens)
    for (int m : g.classes[g.class_id[x]]) conj_gens.push_back(m);
  return subgroup_closure(g, conj_gens);
}

inline Subgroup centralizer_of_set(const FiniteGroup& g,
                                   const std::vector<int>& set) {
  Subgroup s;
  s.member.assign(g.n, 0);
  for (int x = 0; x < g.n; ++x) {
    bool ok = true;
    for (int a : set)
      if (g.mul(x, a) != g.mul(a, x)) {
        ok = false;
        break;
      }
    if (ok) {
      s.member[x] = 1;
      s.elems.push_back(x);
    }
  }
  return s;
}

inline Subgroup centralizer_of_class(const FiniteGroup& g, int a) {
  return centralizer_of_set(g, g.classes[g.class_id[a]]);
}

inline Subgroup derived_subgroup(const FiniteGroup& g) {
  std::vector<char> seen(g.n, 0);
  std::vector<int> vals;
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) {
      int c = g.comm(a, b);
      if (!seen[c]) {
        seen[c] = 1;
        vals.push_back(c);
      }
    }
  return subgroup_closure(g, vals);
}

inline bool is_perfect(const FiniteGroup& g) {
  return derived_subgroup(g).size() == g.n;
}

// G = S0 >= S1 >= ... with S(k+1) = [Sk, G]; stops at the first repeat.
inline std::vector<Subgroup> lower_central_series(const FiniteGroup& g) {
  std::vector<Subgroup> series;
  series.push_back(full_subgroup(g));
  while (true) {
    const Subgroup& cur = series.back();
    std::vector<char> seen(g.n, 0);
    std::vector<int> vals;
    for (int x : cur.elems)
      for (int b = 0; b < g.n; ++b) {
        int c = g.comm(x, b);
        if (!seen[c]) {
          seen[c] = 1;
          vals.push_back(c);
        }
      }
    Subgroup next = subgroup_closure(g, vals);
    if (next.size() == cur.size()) break;
    series.push_back(std::move(next));
    if (series.back().size() == 1) break;
  }
  return series;
}

inline bool is_nilpotent(const FiniteGroup& g) {
  return lower_central_series(g).back().size() == 1;
}

// ---------------------------------------------------------------------------
// Quotients and products

struct QuotientResult {
  FiniteGroup group;
  std::vector<int> proj;  // element -> coset index
};

inline QuotientResult quotient(const FiniteGroup& g, const Subgroup& nsub) {
  // Caller guarantees normality; cosets are enumerated by least
  // representative so labels and ordering are deterministic.
  std::vector<int> coset(g.n, -1);
  std::vector<int> reps;
  for (int a = 0; a < g.n; ++a) {
    if (coset[a] >= 0) continue;
    int cid = (int)reps.size();
    reps.push_back(a);
    for (int x : nsub.elems) coset[g.mul(a, x)] = cid;
  }
  int q = (int)reps.size();
  std::vector<std::string> labels;
  for (int r : reps) labels.push_back("[" + g.labels[r] + "]");
  std::vector<int32_t> table((size_t)q * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      table[(size_t)i * q + j] = coset[g.mul(reps[i], reps[j])];
  QuotientResult out{make_group(g.name + "/N", labels, std::move(table), true),
                     std::move(coset)};
  return out;
}

inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h,
                                  const std::string& name = "") {
  int n = g.n * h.n;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < h.n; ++b)
      labels.push_back("(" + g.labels[a] + "," + h.labels[b] + ")");
  std::vector<int32_t> table((size_t)n * n);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < h.n; ++b)
      for (int c = 0; c < g.n; ++c)
        for (int d = 0; d < h.n; ++d) {
          int x = a * h.n + b, y = c * h.n + d;
          table[(size_t)x * n + y] = g.mul(a, c) * h.n + h.mul(b, d);
        }
  return make_group(name.empty() ? g.name + "x" + h.name : name, labels,
                    std::move(table), true);
}

// ---------------------------------------------------------------------------
// Normal subgroups and decomposability

struct NormalSubgroupList {
  std::vector<Subgroup> list;  // sorted by (size, elements)
  bool complete = true;
};

inline NormalSubgroupList normal_subgroups(const FiniteGroup& g,
                                           size_t limit = 1000) {
  NormalSubgroupList out;
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> queue;
  queue.push_back(trivial_subgroup(g));
  seen.insert(queue.back().elems);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    Subgroup cur = queue[qi];  // copy: queue grows below
    for (const std::vector<int>& cls : g.classes) {
      if (cur.contains(cls[0])) continue;
      std::vector<int> gens = cur.elems;
      gens.insert(gens.end(), cls.begin(), cls.end());
      Subgroup next = subgroup_closure(g, gens);
      if (seen.insert(next.elems).second) {
        queue.push_back(std::move(next));
        if (queue.size() > limit) {
          out.complete = false;
          break;
        }
      }
    }
    if (!out.complete) break;
  }
  out.list = std::move(queue);
  std::sort(out.list.begin(), out.list.end(),
            [](const Subgroup& a, const Subgroup& b) {
              if (a.elems.size() != b.elems.size())
                return a.elems.size() < b.elems.size();
              return a.elems < b.elems;
            });
  return out;
}

struct Decomposition {
  Subgroup left, right;
};

// First (by normal-subgroup order) internal direct factorization with both
// factors proper, if any.
inline std::optional<Decomposition> decompose(const FiniteGroup& g) {
  if (g.n == 1) return std::nullopt;
  NormalSubgroupList ns = normal_subgroups(g);
  if (!ns.complete)
    throw std::runtime_error(g.name + ": normal subgroup enumeration truncated");
  for (size_t i = 0; i < ns.list.size(); ++i) {
    const Subgroup& a = ns.list[i];
    if (a.size() == 1 || a.size() == g.n) continue;
    for (size_t j = i; j < ns.list.size(); ++j) {
      const Subgroup& b = ns.list[j];
      if (b.size() == 1 || b.size() == g.n) continue;
      if ((long long)a.size() * b.size() != g.n) continue;
      bool trivial_meet = true;
      for (int x : a.elems)
        if (x != g.id && b.contains(x)) {
          trivial_meet = false;
          break;
        }
      if (trivial_meet) return Decomposition{a, b};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Abelian invariants

inline std::vector<long long> primes_dividing(long long m) {
  std::vector<long long> ps;
  for (long long p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      ps.push_back(p);
      while (m % p == 0) m /= p;
    }
  if (m > 1) ps.push_back(m);
  return ps;
}

// Invariant factors d1 | d2 | ... | dk of an abelian group, recovered from
// the counts of elements of each prime-power order.
inline std::vector<long long> abelian_invariant_factors(const FiniteGroup& a) {
  if (!a.is_abelian())
    throw std::invalid_argument(a.name + ": invariant factors need an abelian group");
  if (a.n == 1) return {};
  std::map<long long, std::vector<int>> parts;  // prime -> partition, descending
  for (long long p : primes_dividing(a.n)) {
    std::vector<int> s;  // s[j] = log_p #{x : x^(p^j) = e}
    s.push_back(0);
    for (int j = 1;; ++j) {
      long long pj = 1;
      for (int t = 0; t < j; ++t) pj *= p;
      long long count = 0;
      for (int x = 0; x < a.n; ++x)
        if (pj % a.order[x] == 0) ++count;
      int log = 0;
      long long c = count;
      while (c > 1) {
        if (c % p != 0)
          throw std::logic_error("abelian order count not a prime power");
        c /= p;
        ++log;
      }
      s.push_back(log);
      if (log == s[j - 1]) {
        s.pop_back();
        break;
      }
    }
    std::vector<int> part;
    for (size_t j = 1; j < s.size(); ++j) {
      int ge_j = s[j] - s[j - 1];  // number of parts of size >= j
      while ((int)part.size() < ge_j) part.push_back(0);
      for (int t = 0; t < ge_j; ++t) ++part[t];
    }
    parts[p] = part;  // descending by construction
  }
  size_t k = 0;
  for (auto& [p, part] : parts) k = std::max(k, part.size());
  std::vector<long long> factors(k, 1);
  for (auto& [p, part] : parts)
    for (size_t i = 0; i < part.size(); ++i) {
      long long pw = 1;
      for (int t = 0; t < part[i]; ++t) pw *= p;
      factors[i] *= pw;
    }
  std::reverse(factors.begin(), factors.end());  // ascending divisibility
  return factors;
}

inline std::vector<long long> abelianization_invariants(const FiniteGroup& g) {
  Subgroup d = derived_subgroup(g);
  if (d.size() == g.n) return {};
  QuotientResult q = quotient(g, d);
  return abelian_invariant_factors(q.group);
}

// ---------------------------------------------------------------------------
// Commutator width

struct WidthResult {
  int width = 0;  // least m with every derived-subgroup element a product of m commutators
  std::vector<char> level1;  // the set of single commutators
};

inline WidthResult commutator_width(const FiniteGroup& g, int max_m = 8) {
  std::vector<char> comms(g.n, 0);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) comms[g.comm(a, b)] = 1;
  Subgroup d = derived_subgroup(g);
  std::vector<char> level = comms;
  int covered = 0;
  for (char c : level) covered += c;
  for (int m = 1; m <= max_m; ++m) {
    if (covered == d.size()) return WidthResult{m, comms};
    std::vector<char> next = level;
    for (int x = 0; x < g.n; ++x) {
      if (!level[x]) continue;
      for (int c = 0; c < g.n; ++c)
        if (comms[c]) next[g.mul(x, c)] = 1;
    }
    covered = 0;
    for (char c : next) covered += c;
    level = std::move(next);
  }
  throw std::runtime_error(g.name + ": commutator width exceeds " +
                           std::to_string(max_m));
}

// ---------------------------------------------------------------------------
// Homomorphisms into centers

struct CenterHom {
  long long prime = 0;
  std::vector<int> image;  // g -> element of the target's center
  int target_generator = 0;
  bool nontrivial = false;
};

namespace detail {

// Coordinates of an elementary abelian p-group relative to a greedily chosen
// basis; coords[x][0] is a surjective functional onto Z/p.
inline std::vector<std::vector<int>> elementary_coords(const FiniteGroup& v,
                                                       long long p) {
  std::vector<std::vector<int>> coords(v.n);
  std::vector<int> done;
  coords[v.id] = {};
  done.push_back(v.id);
  size_t rank = 0;
  while ((int)done.size() < v.n) {
    int pick = -1;
    for (int x = 0; x < v.n; ++x)
      if (coords[x].empty() && x != v.id) {
        pick = x;
        break;
      }
    if (pick < 0) break;
    ++rank;
    std::vector<int> snapshot = done;
    for (int w : snapshot) {
      int cur = w;
      for (int t = 1; t < p; ++t) {
        cur = v.mul(cur, pick);
        coords[cur] = coords[w];
        coords[cur].resize(rank, 0);
        coords[cur][rank - 1] = t;
        done.push_back(cur);
      }
      coords[w].resize(rank, 0);
    }
  }
  for (auto& c : coords) c.resize(rank, 0);
  return coords;
}

}  // namespace detail

// A homomorphism G -> Z(H) of prime order, when one exists. Existence is
// equivalent to gcd(|G^ab|, |Z(H)|) > 1; the construction goes through
// G^ab and its mod-p quotient, and the result is verified exhaustively.
inline std::optional<CenterHom> center_hom(const FiniteGroup& g,
                                           const FiniteGroup& h) {
  Subgroup d = derived_subgroup(g);
  long long ab_order = g.n / d.size();
  long long z_order = (long long)h.center.size();
  long long p = 0;
  for (long long q : primes_dividing(ab_order))
    if (z_order % q == 0) {
      p = q;
      break;
    }
  if (p == 0) return std::nullopt;

  QuotientResult ab = quotient(g, d);
  // Kill p-th powers and p'-torsion; what remains is elementary abelian.
  std::vector<int> gens;
  for (int x = 0; x < ab.group.n; ++x) {
    if (ab.group.order[x] % p != 0) gens.push_back(x);
    gens.push_back(ab.group.pow(x, p));
  }
  Subgroup m = subgroup_closure(ab.group, gens);
  QuotientResult v = quotient(ab.group, m);
  std::vector<std::vector<int>> coords = detail::elementary_coords(v.group, p);

  int zgen = -1;
  for (int z : h.center)
    if (h.order[z] == p) {
      zgen = z;
      break;
    }
  if (zgen < 0) {
    // Cauchy inside the center: take a power of an element whose order p divides.
    for (int z : h.center)
      if (h.order[z] % p == 0) {
        zgen = h.pow(z, h.order[z] / p);
        break;
      }
  }
  if (zgen < 0) throw std::logic_error("gcd test promised central p-torsion");

  CenterHom out;
  out.prime = p;
  out.target_generator = zgen;
  out.image.resize(g.n);
  for (int x = 0; x < g.n; ++x) {
    int c = coords[v.proj[ab.proj[x]]].empty()
                ? 0
                : coords[v.proj[ab.proj[x]]][0];
    out.image[x] = h.pow(zgen, c);
    if (out.image[x] != h.id) out.nontrivial = true;
  }
  if (!out.nontrivial) throw std::logic_error("constructed hom is trivial");
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y)
      if (out.image[g.mul(x, y)] != h.mul(out.image[x], out.image[y]))
        throw std::logic_error("constructed map is not a homomorphism");
  return out;
}

struct NilpotentWitness {
  int pivot = 0;               // noncentral element c with [G,c] central
  std::vector<int> hom;        // x -> [x,c], a homomorphism into Z(G)
  int nilpotency_class = 0;
};

// Nonabelian nilpotent groups always map nontrivially onto part of their
// center: commutation against a deep-enough noncentral element is a
// homomorphism. Returns the verified witness.
inline std::optional<NilpotentWitness> nilpotent_center_map(const FiniteGroup& g) {
  std::vector<Subgroup> series = lower_central_series(g);
  if (series.back().size() != 1) return std::nullopt;  // not nilpotent
  int cls = (int)series.size() - 1;
  if (cls < 2) return std::nullopt;  // abelian
  const Subgroup& deep = series[cls - 2];
  std::vector<char> central(g.n, 0);
  for (int z : g.center) central[z] = 1;
  int pivot = -1;
  for (int x : deep.elems)
    if (!central[x]) {
      pivot = x;
      break;
    }
  if (pivot < 0) throw std::logic_error("nilpotency class miscomputed");
  NilpotentWitness w;
  w.pivot = pivot;
  w.nilpotency_class = cls;
  w.hom.resize(g.n);
  bool nontrivial = false;
  for (int x = 0; x < g.n; ++x) {
    w.hom[x] = g.comm(x, pivot);
    if (!central[w.hom[x]]) throw std::logic_error("image escapes the center");
    if (w.hom[x] != g.id) nontrivial = true;
  }
  if (!nontrivial) throw std::logic_error("pivot commutes with everything");
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y)
      if (w.hom[g.mul(x, y)] != g.mul(w.hom[x], w.hom[y]))
        throw std::logic_error("commutation map is not a homomorphism");
  return w;
}

// ---------------------------------------------------------------------------
// Bridge to the formula evaluator

inline logic::FiniteStructure as_structure(const FiniteGroup& g) {
  logic::FiniteStructure m = logic::make_structure(logic::group_signature(),
                                                   g.labels);
  std::vector<int32_t> inv_table(g.inverse.begin(), g.inverse.end());
  logic::set_function_table(m, "*", g.table);
  logic::set_function_table(m, "inv", std::move(inv_table));
  logic::set_constant(m, "e", g.id);
  return m;
}

}  // namespace coordlens::groups
