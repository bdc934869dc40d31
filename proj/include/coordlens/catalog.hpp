#pragma once

// Named constructors for the structures the toolkit analyzes: symmetric,
// alternating, cyclic, dihedral and quaternion groups, matrix groups over
// small fields, the rock-paper-scissors magma, and finite chains. Entries
// carry expected verdict annotations for golden testing.

#include <array>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coordlens/groups.hpp"
#include "coordlens/logic.hpp"

namespace coordlens::catalog {

// Largest group order the desk-scale build will materialize as a dense table.
inline constexpr long long kMaxOrder = 10080;

enum class ObjectKind { Group, Magma, Chain };
enum class Expectation { Recognizes, Fails, Open };

inline const char* to_string(Expectation e) {
  switch (e) {
    case Expectation::Recognizes: return "recognizes";
    case Expectation::Fails: return "fails";
    case Expectation::Open: return "open";
  }
  return "?";
}

struct SymmetricData {
  int points = 0;
  std::vector<std::vector<int>> perms;  // perms[i] is the permutation of element i
};

struct Annotation {
  Expectation expected;
  std::string basis;   // mechanism family expected to decide the verdict
  std::string source;  // "stated" for published claims, "computed" otherwise
  std::string note;
};

struct CatalogEntry {
  std::string name;
  std::string params;
  ObjectKind kind = ObjectKind::Group;
  std::shared_ptr<const groups::FiniteGroup> group;        // Group kind
  std::shared_ptr<const logic::FiniteStructure> structure;  // Magma/Chain kinds
  std::shared_ptr<const SymmetricData> sym;  // permutation view when available
  std::optional<Annotation> annotation;
};

namespace detail {

inline void check_order_cap(const std::string& name, long long order) {
  if (order > kMaxOrder)
    throw std::invalid_argument(name + ": order " + std::to_string(order) +
                                " exceeds the catalog size cap " +
                                std::to_string(kMaxOrder));
}

// --- permutations ---

inline std::string cycle_label(const std::vector<int>& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == (int)i) continue;
    out += "(";
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
      j = (size_t)p[j];
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

inline groups::FiniteGroup perm_table_group(
    const std::string& name, int points,
    const std::vector<std::vector<int>>& perms) {
  int n = (int)perms.size();
  std::vector<int32_t> packed_index((size_t)1 << (3 * points), -1);
  auto pack = [&](const std::vector<int>& p) {
    uint32_t key = 0;
    for (int i = 0; i < points; ++i) key |= (uint32_t)p[i] << (3 * i);
    return key;
  };
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    packed_index[pack(perms[i])] = i;
    labels[i] = cycle_label(perms[i]);
  }
  std::vector<int32_t> table((size_t)n * n);
  std::vector<int> comp(points);
  for (int a = 0; a < n; ++a) {
    const std::vector<int>& pa = perms[a];
    for (int b = 0; b < n; ++b) {
      const std::vector<int>& pb = perms[b];
      for (int x = 0; x < points; ++x) comp[x] = pa[pb[x]];  // apply b, then a
      table[(size_t)a * n + b] = packed_index[pack(comp)];
    }
  }
  return groups::make_group(name, std::move(labels), std::move(table), true);
}

inline bool perm_is_even(const std::vector<int>& p) {
  int inv = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 == 0;
}

// --- small finite fields ---

struct Field {
  int q = 0;
  std::array<std::array<int, 7>, 7> add{}, mul{};
  std::array<int, 7> neg{}, inv{};
};

inline Field make_field(int q) {
  Field f;
  f.q = q;
  if (q == 2 || q == 3 || q == 5 || q == 7) {
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        f.add[a][b] = (a + b) % q;
        f.mul[a][b] = (a * b) % q;
      }
  } else if (q == 4) {
    // GF(4) with elements 0, 1, x, x+1 encoded 0..3; addition is xor.
    const int m[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        f.add[a][b] = a ^ b;
        f.mul[a][b] = m[a][b];
      }
  } else {
    throw std::invalid_argument("unsupported field size " + std::to_string(q));
  }
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (f.add[a][b] == 0) f.neg[a] = b;
      if (f.mul[a][b] == 1) f.inv[a] = b;
    }
  }
  return f;
}

// A generator of the multiplicative group, for the GL determinant coset.
inline int primitive_unit(const Field& f) {
  for (int g = 1; g < f.q; ++g) {
    int x = g, count = 1;
    while (x != 1) {
      x = f.mul[x][g];
      ++count;
    }
    if (count == f.q - 1) return g;
  }
  throw std::logic_error("no primitive unit");
}

// --- matrix groups ---

using Matrix = std::array<int, 9>;  // row-major, dim*dim entries used

inline Matrix mat_mul(const Field& f, int dim, const Matrix& a,
                      const Matrix& b) {
  Matrix c{};
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      int s = 0;
      for (int k = 0; k < dim; ++k)
        s = f.add[s][f.mul[a[i * dim + k]][b[k * dim + j]]];
      c[i * dim + j] = s;
    }
  return c;
}

inline uint32_t mat_key(int dim, const Matrix& m) {
  uint32_t key = 0;
  for (int i = 0; i < dim * dim; ++i) key |= (uint32_t)m[i] << (3 * i);
  return key;
}

inline std::string mat_label(int dim, const Matrix& m) {
  std::string s = "[";
  for (int i = 0; i < dim; ++i) {
    s += "[";
    for (int j = 0; j < dim; ++j) {
      if (j) s += ",";
      s += std::to_string(m[i * dim + j]);
    }
    s += "]";
  }
  return s + "]";
}

inline long long gl_order(int dim, int q) {
  long long qn = 1;
  for (int i = 0; i < dim; ++i) qn *= q;
  long long order = 1, qi = 1;
  for (int i = 0; i < dim; ++i) {
    order *= qn - qi;
    qi *= q;
  }
  return order;
}

inline groups::FiniteGroup matrix_group(const std::string& name, int dim,
                                        int q, bool special) {
  Field f = make_field(q);
  long long expect = gl_order(dim, q);
  if (special) expect /= q - 1;
  check_order_cap(name, expect);

  Matrix id{};
  for (int i = 0; i < dim; ++i) id[i * dim + i] = 1;
  std::vector<Matrix> gens;
  // transvections over the full field, so non-prime fields are generated too
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (i == j) continue;
      for (int lam = 1; lam < q; ++lam) {
        Matrix t = id;
        t[i * dim + j] = lam;
        gens.push_back(t);
      }
    }
  if (!special && q > 2) {
    Matrix d = id;
    d[0] = primitive_unit(f);
    gens.push_back(d);
  }

  std::vector<Matrix> elems{id};
  std::unordered_map<uint32_t, int> index{{mat_key(dim, id), 0}};
  for (size_t i = 0; i < elems.size(); ++i) {
    Matrix cur = elems[i];
    for (const Matrix& g : gens) {
      Matrix next = mat_mul(f, dim, cur, g);
      uint32_t key = mat_key(dim, next);
      if (index.emplace(key, (int)elems.size()).second)
        elems.push_back(next);
    }
  }
  if ((long long)elems.size() != expect)
    throw std::logic_error(name + ": generated order " +
                           std::to_string(elems.size()) +
                           " does not match the closed form " +
                           std::to_string(expect));

  int n = (int)elems.size();
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = mat_label(dim, elems[i]);
  std::vector<int32_t> table((size_t)n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      table[(size_t)a * n + b] =
          index.at(mat_key(dim, mat_mul(f, dim, elems[a], elems[b])));
  return groups::make_group(name, std::move(labels), std::move(table), true);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Builders

inline CatalogEntry make_symmetric(int k) {
  if (k < 2 || k > 8)
    throw std::invalid_argument("symmetric groups supported for 2 <= n <= 8");
  long long order = 1;
  for (int i = 2; i <= k; ++i) order *= i;
  detail::check_order_cap("S" + std::to_string(k), order);
  auto sym = std::make_shared<SymmetricData>();
  sym->points = k;
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  do {
    sym->perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  CatalogEntry e;
  e.name = "S" + std::to_string(k);
  e.params = "points=" + std::to_string(k);
  e.group = std::make_shared<groups::FiniteGroup>(
      detail::perm_table_group(e.name, k, sym->perms));
  e.sym = std::move(sym);
  return e;
}

inline CatalogEntry make_alternating(int k) {
  if (k < 3 || k > 7)
    throw std::invalid_argument("alternating groups supported for 3 <= n <= 7");
  auto sym = std::make_shared<SymmetricData>();
  sym->points = k;
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (detail::perm_is_even(p)) sym->perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  CatalogEntry e;
  e.name = "A" + std::to_string(k);
  e.params = "points=" + std::to_string(k);
  e.group = std::make_shared<groups::FiniteGroup>(
      detail::perm_table_group(e.name, k, sym->perms));
  e.sym = std::move(sym);
  return e;
}

inline CatalogEntry make_cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic groups need n >= 1");
  detail::check_order_cap("C" + std::to_string(n), n);
  std::vector<std::string> labels;
  labels.push_back("e");
  if (n > 1) labels.push_back("g");
  for (int i = 2; i < n; ++i) labels.push_back("g^" + std::to_string(i));
  std::vector<int32_t> table((size_t)n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[(size_t)a * n + b] = (a + b) % n;
  CatalogEntry e;
  e.name = "C" + std::to_string(n);
  e.params = "order=" + std::to_string(n);
  e.group = std::make_shared<groups::FiniteGroup>(
      groups::make_group(e.name, std::move(labels), std::move(table), true));
  return e;
}

inline CatalogEntry make_dihedral(int m) {
  if (m < 3)
    throw std::invalid_argument("dihedral groups take the polygon size m >= 3");
  detail::check_order_cap("Dih" + std::to_string(m), 2LL * m);
  int n = 2 * m;
  std::vector<std::string> labels(n);
  for (int i = 0; i < m; ++i) {
    std::string ri = i == 0 ? "" : i == 1 ? "r" : "r^" + std::to_string(i);
    labels[i] = i == 0 ? "e" : ri;
    labels[m + i] = i == 0 ? "s" : ri + "*s";
  }
  // index a < m is the rotation r^a; index m+a is r^a s, with s r s = r^-1.
  auto idx = [&](int rot, int flip) { return flip ? m + rot : rot; };
  std::vector<int32_t> table((size_t)n * n);
  for (int a = 0; a < m; ++a)
    for (int alpha = 0; alpha < 2; ++alpha)
      for (int b = 0; b < m; ++b)
        for (int beta = 0; beta < 2; ++beta) {
          int rot = alpha ? (a - b % m + m) % m : (a + b) % m;
          table[(size_t)idx(a, alpha) * n + idx(b, beta)] =
              idx(rot, alpha ^ beta);
        }
  CatalogEntry e;
  e.name = "Dih" + std::to_string(m);
  e.params = "polygon=" + std::to_string(m);
  e.group = std::make_shared<groups::FiniteGroup>(
      groups::make_group(e.name, std::move(labels), std::move(table), false));
  return e;
}

inline CatalogEntry make_quaternion8() {
  std::vector<std::string> labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  std::vector<int32_t> table = {
      0, 1, 2, 3, 4, 5, 6, 7,  //
      1, 0, 3, 2, 5, 4, 7, 6,  //
      2, 3, 1, 0, 6, 7, 5, 4,  //
      3, 2, 0, 1, 7, 6, 4, 5,  //
      4, 5, 7, 6, 1, 0, 2, 3,  //
      5, 4, 6, 7, 0, 1, 3, 2,  //
      6, 7, 4, 5, 3, 2, 1, 0,  //
      7, 6, 5, 4, 2, 3, 0, 1,
  };
  CatalogEntry e;
  e.name = "Q8";
  e.params = "";
  e.group = std::make_shared<groups::FiniteGroup>(
      groups::make_group("Q8", std::move(labels), std::move(table), false));
  return e;
}

inline CatalogEntry make_sl(int dim, int q) {
  if (dim < 2 || dim > 3 || (q != 2 && q != 3 && q != 4 && q != 5 && q != 7))
    throw std::invalid_argument(
        "matrix groups supported for dimension 2 or 3 over fields of size "
        "2, 3, 4, 5, 7");
  std::string name = "SL" + std::to_string(dim) + "_" + std::to_string(q);
  CatalogEntry e;
  e.name = name;
  e.params = "dim=" + std::to_string(dim) + " field=" + std::to_string(q);
  e.group = std::make_shared<groups::FiniteGroup>(
      detail::matrix_group(name, dim, q, true));
  return e;
}

inline CatalogEntry make_gl(int dim, int q) {
  if (dim < 2 || dim > 3 || (q != 2 && q != 3 && q != 4 && q != 5 && q != 7))
    throw std::invalid_argument(
        "matrix groups supported for dimension 2 or 3 over fields of size "
        "2, 3, 4, 5, 7");
  std::string name = "GL" + std::to_string(dim) + "_" + std::to_string(q);
  CatalogEntry e;
  e.name = name;
  e.params = "dim=" + std::to_string(dim) + " field=" + std::to_string(q);
  e.group = std::make_shared<groups::FiniteGroup>(
      detail::matrix_group(name, dim, q, false));
  return e;
}

inline CatalogEntry make_rps() {
  using namespace logic;
  FiniteStructure m = make_structure(magma_signature(), {"R", "P", "S"});
  // winner-takes table: rock beats scissors, scissors beat paper, paper beats rock
  set_function_table(m, "*",
                     {0, 1, 0,  //
                      1, 1, 2,  //
                      0, 2, 2});
  CatalogEntry e;
  e.name = "RPS";
  e.params = "";
  e.kind = ObjectKind::Magma;
  e.structure = std::make_shared<FiniteStructure>(std::move(m));
  return e;
}

inline CatalogEntry make_chain(int n) {
  if (n < 2) throw std::invalid_argument("chains need at least 2 points");
  detail::check_order_cap("Chain" + std::to_string(n), n);
  using namespace logic;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  FiniteStructure m = make_structure(chain_signature(), labels);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) add_relation_tuple(m, "Leq", {i, j});
  CatalogEntry e;
  e.name = "Chain" + std::to_string(n);
  e.params = "points=" + std::to_string(n);
  e.kind = ObjectKind::Chain;
  e.structure = std::make_shared<FiniteStructure>(std::move(m));
  return e;
}

// ---------------------------------------------------------------------------
// Name-based access and golden annotations

namespace detail {

inline std::optional<int> parse_suffix(const std::string& name,
                                       const std::string& prefix) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix))
    return std::nullopt;
  int v = 0;
  for (size_t i = prefix.size(); i < name.size(); ++i) {
    char c = name[i];
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
    if (v > 1000000) return std::nullopt;
  }
  return v;
}

inline std::optional<Annotation> curated_annotation(const std::string& name) {
  auto R = [](std::string basis, std::string source, std::string note = "") {
    return Annotation{Expectation::Recognizes, std::move(basis),
                      std::move(source), std::move(note)};
  };
  auto F = [](std::string basis, std::string source, std::string note = "") {
    return Annotation{Expectation::Fails, std::move(basis), std::move(source),
                      std::move(note)};
  };
  const char* torsion2 = "order-p torsion criterion (p=2)";
  const char* torsion3 = "order-p torsion criterion (p=3)";
  const char* conjcent = "conjugacy-centralizer criterion";
  const char* selfhom = "self homomorphism into the center";
  const char* decomp = "direct product decomposition";
  const char* nilp = "nilpotent obstruction";

  if (name == "S3") return R(torsion2, "stated");
  if (name == "S4")
    return R(torsion3, "computed",
             "the uniform conjugacy-centralizer criterion fails at a double "
             "transposition; the order-3 criterion certifies this group");
  if (name == "S5" || name == "S6" || name == "S7") return R(conjcent, "stated");
  if (name == "A4") return R(torsion3, "computed");
  if (name == "A5" || name == "A6") return R(conjcent, "stated");
  if (name == "C2" || name == "C3" || name == "C4") return F(selfhom, "stated");
  if (name == "C6" || name == "C12") return F(decomp, "stated");
  if (name == "Dih3" || name == "Dih5" || name == "Dih7")
    return R(torsion2, "stated");
  if (name == "Dih4" || name == "Dih8") return F(nilp, "stated");
  if (name == "Dih6") return F(decomp, "stated");
  if (name == "Q8") return F(nilp, "stated");
  if (name == "SL2_2")
    return R(torsion2, "stated", "isomorphic to S3");
  if (name == "SL2_3")
    return R("bounded torsion products (m=3, n=3)", "computed");
  if (name == "SL2_4") return R(conjcent, "stated", "isomorphic to A5");
  if (name == "SL2_5" || name == "SL2_7")
    return R("perfect with bounded commutator width", "stated");
  if (name == "SL3_2") return R(conjcent, "stated");
  if (name == "GL2_2")
    return R(torsion2, "computed",
             "the stated family claim predicts failure for every general "
             "linear group, but this group is isomorphic to S3 and the "
             "computed verdict recognizes; flagged by the verdict audit");
  if (name == "GL2_3" || name == "GL2_5") return F(selfhom, "stated");
  if (name == "GL2_7")
    return F(decomp, "computed",
             "the odd part of the center splits off: GL2_7 = C3 x {det = "
             "+-1}; the stated center-homomorphism obstruction also applies "
             "but the decomposition scan runs first");
  if (name == "GL2_4") return F(decomp, "stated", "splits as C3 x SL2_4");
  if (name == "RPS") return R("loser-term comparison formula", "stated");
  if (name == "Chain4" || name == "Chain5" || name == "Chain6" ||
      name == "Chain7")
    return R("lattice comparison formula", "stated");
  return std::nullopt;
}

}  // namespace detail

inline std::vector<std::string> curated_names() {
  return {"S3",    "S4",    "S5",    "S6",    "S7",   "A4",     "A5",
          "A6",    "C2",    "C3",    "C4",    "C6",   "C12",    "Dih3",
          "Dih4",  "Dih5",  "Dih6",  "Dih7",  "Dih8", "Q8",     "SL2_2",
          "SL2_3", "SL2_4", "SL2_5", "SL2_7", "SL3_2", "GL2_2", "GL2_3",
          "GL2_4", "GL2_5", "GL2_7", "RPS",   "Chain4", "Chain5",
          "Chain6", "Chain7"};
}

inline CatalogEntry build(const std::string& name) {
  CatalogEntry e;
  if (name == "Q8") {
    e = make_quaternion8();
  } else if (name == "RPS") {
    e = make_rps();
  } else if (auto k = detail::parse_suffix(name, "Chain")) {
    e = make_chain(*k);
  } else if (auto k = detail::parse_suffix(name, "Dih")) {
    e = make_dihedral(*k);
  } else if (auto k = detail::parse_suffix(name, "S")) {
    e = make_symmetric(*k);
  } else if (auto k = detail::parse_suffix(name, "A")) {
    e = make_alternating(*k);
  } else if (auto k = detail::parse_suffix(name, "C")) {
    e = make_cyclic(*k);
  } else if (name.size() >= 5 &&
             (name.compare(0, 2, "SL") == 0 || name.compare(0, 2, "GL") == 0) &&
             name[3] == '_') {
    int dim = name[2] - '0';
    auto q = detail::parse_suffix(name, name.substr(0, 4));
    if (!q) throw std::invalid_argument("unknown catalog name: " + name);
    e = name[0] == 'S' ? make_sl(dim, *q) : make_gl(dim, *q);
  } else {
    throw std::invalid_argument(
        "unknown catalog name: " + name +
        " (expected S<n>, A<n>, C<n>, Dih<m>, Q8, SL<d>_<q>, GL<d>_<q>, RPS, "
        "or Chain<n>)");
  }
  e.annotation = detail::curated_annotation(name);
  return e;
}

// Formula-evaluation view of any entry; groups are bridged on demand.
inline logic::FiniteStructure entry_structure(const CatalogEntry& e) {
  if (e.structure) return *e.structure;
  return groups::as_structure(*e.group);
}

}  // namespace coordlens::catalog
