#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "coordlens/groups.hpp"

using namespace coordlens::groups;

namespace {

// Test-side group constructions, independent of the library's catalog:
// permutations composed by hand, explicit quaternion arithmetic, and
// modular addition.

using Perm = std::vector<int>;

Perm compose(const Perm& s, const Perm& t) {  // (s . t)(x) = s(t(x))
  Perm r(s.size());
  for (size_t i = 0; i < s.size(); ++i) r[i] = s[t[i]];
  return r;
}

bool is_even(const Perm& p) {
  int inversions = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

std::string perm_label(const Perm& p) {
  std::string s;
  for (int v : p) s += std::to_string(v);
  return s;
}

FiniteGroup from_perms(const std::string& name, std::vector<Perm> perms) {
  std::sort(perms.begin(), perms.end());
  int n = (int)perms.size();
  std::map<Perm, int> index;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    index[perms[i]] = i;
    labels.push_back(perm_label(perms[i]));
  }
  std::vector<int32_t> table((size_t)n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      table[(size_t)a * n + b] = index.at(compose(perms[a], perms[b]));
  return make_group(name, labels, std::move(table));
}

FiniteGroup sym(int k) {
  Perm p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> perms;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return from_perms("S" + std::to_string(k), std::move(perms));
}

FiniteGroup alt(int k) {
  Perm p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> perms;
  do {
    if (is_even(p)) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return from_perms("A" + std::to_string(k), std::move(perms));
}

FiniteGroup dih4() {
  Perm r = {1, 2, 3, 0};  // rotate the square
  Perm s = {0, 3, 2, 1};  // reflect across a diagonal
  std::vector<Perm> perms;
  Perm cur = {0, 1, 2, 3};
  for (int i = 0; i < 4; ++i) {
    perms.push_back(cur);
    perms.push_back(compose(s, cur));
    cur = compose(r, cur);
  }
  return from_perms("Dih4", std::move(perms));
}

FiniteGroup cyc(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("c" + std::to_string(i));
  std::vector<int32_t> table((size_t)n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[(size_t)a * n + b] = (a + b) % n;
  return make_group("C" + std::to_string(n), labels, std::move(table));
}

// Quaternions as (sign, axis) with axis in {1, i, j, k}; index = axis*2 + (sign<0).
FiniteGroup quat8() {
  const int axis_prod[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const int sign_prod[4][4] = {
      {+1, +1, +1, +1}, {+1, -1, +1, -1}, {+1, -1, -1, +1}, {+1, +1, -1, -1}};
  const char* names[8] = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  auto mulq = [&](int a, int b) {
    int ax = a / 2, bx = b / 2;
    int sign = ((a % 2) ? -1 : 1) * ((b % 2) ? -1 : 1) * sign_prod[ax][bx];
    return axis_prod[ax][bx] * 2 + (sign < 0 ? 1 : 0);
  };
  std::vector<int32_t> table(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) table[a * 8 + b] = mulq(a, b);
  return make_group("Q8", {names, names + 8}, std::move(table));
}

std::multiset<size_t> class_sizes(const FiniteGroup& g) {
  std::multiset<size_t> out;
  for (const auto& c : g.classes) out.insert(c.size());
  return out;
}

std::vector<int> subgroup_sizes(const NormalSubgroupList& ns) {
  std::vector<int> out;
  for (const auto& s : ns.list) out.push_back(s.size());
  return out;
}

}  // namespace

TEST_CASE("symmetric group on three points") {
  FiniteGroup g = sym(3);
  REQUIRE(g.n == 6);
  CHECK(g.id == 0);
  CHECK(g.labels[0] == "012");

  std::multiset<int> orders(g.order.begin(), g.order.end());
  CHECK(orders == std::multiset<int>{1, 2, 2, 2, 3, 3});
  CHECK(class_sizes(g) == std::multiset<size_t>{1, 2, 3});
  CHECK(g.center == std::vector<int>{0});
  CHECK_FALSE(g.is_abelian());

  Subgroup d = derived_subgroup(g);
  CHECK(d.size() == 3);
  CHECK_FALSE(is_perfect(g));
  CHECK_FALSE(is_nilpotent(g));
  CHECK(abelianization_invariants(g) == std::vector<long long>{2});

  NormalSubgroupList ns = normal_subgroups(g);
  CHECK(ns.complete);
  CHECK(subgroup_sizes(ns) == std::vector<int>{1, 3, 6});
  CHECK_FALSE(decompose(g).has_value());

  QuotientResult q = quotient(g, d);
  CHECK(q.group.n == 2);
  CHECK(q.group.is_abelian());
}

TEST_CASE("conjugation helpers agree with hand computation") {
  FiniteGroup g = sym(3);
  // 120 is the 3-cycle 0->1->2->0; 102 swaps 0 and 1.
  int rot = g.index_of_label("120");
  int swp = g.index_of_label("102");
  CHECK(g.mul(rot, rot) == g.index_of_label("201"));
  CHECK(g.inv(rot) == g.index_of_label("201"));
  // conj(s, r) = s r s^-1 inverts the rotation
  CHECK(g.conj(swp, rot) == g.index_of_label("201"));
  // [r, s] = r^-1 s^-1 r s lands in the rotation subgroup
  int c = g.comm(rot, swp);
  CHECK(g.order[c] == 3);

  CHECK(centralizer_of_class(g, swp).size() == 1);
  CHECK(normal_closure(g, {rot}).size() == 3);
  CHECK(normal_closure(g, {swp}).size() == 6);
  CHECK(subgroup_closure(g, {rot}).size() == 3);
  CHECK(subgroup_closure(g, {rot, swp}).size() == 6);
}

TEST_CASE("dihedral group of the square") {
  FiniteGroup g = dih4();
  REQUIRE(g.n == 8);
  CHECK(class_sizes(g) == std::multiset<size_t>{1, 1, 2, 2, 2});
  CHECK(g.center.size() == 2);

  auto series = lower_central_series(g);
  REQUIRE(series.size() == 3);
  CHECK(series[0].size() == 8);
  CHECK(series[1].size() == 2);
  CHECK(series[2].size() == 1);
  CHECK(is_nilpotent(g));

  auto w = nilpotent_center_map(g);
  REQUIRE(w.has_value());
  CHECK(w->nilpotency_class == 2);
  std::set<int> image(w->hom.begin(), w->hom.end());
  CHECK(image.size() == 2);  // onto the rotation by a half turn and identity

  CHECK(abelianization_invariants(g) == std::vector<long long>{2, 2});
  CHECK(normal_subgroups(g).list.size() == 6);
  CHECK_FALSE(decompose(g).has_value());

  int r = g.index_of_label("1230");
  CHECK(centralizer_of_class(g, r).size() == 4);
}

TEST_CASE("quaternion group") {
  FiniteGroup g = quat8();
  REQUIRE(g.n == 8);
  CHECK(g.id == g.index_of_label("1"));
  CHECK(g.mul(g.index_of_label("i"), g.index_of_label("j")) ==
        g.index_of_label("k"));
  CHECK(g.mul(g.index_of_label("j"), g.index_of_label("i")) ==
        g.index_of_label("-k"));
  CHECK(g.order[g.index_of_label("-1")] == 2);
  CHECK(g.order[g.index_of_label("i")] == 4);

  CHECK(class_sizes(g) == std::multiset<size_t>{1, 1, 2, 2, 2});
  CHECK(g.center.size() == 2);
  CHECK(is_nilpotent(g));
  CHECK_FALSE(decompose(g).has_value());
  CHECK(normal_subgroups(g).list.size() == 6);
  CHECK(abelianization_invariants(g) == std::vector<long long>{2, 2});

  auto w = nilpotent_center_map(g);
  REQUIRE(w.has_value());
  std::set<int> image(w->hom.begin(), w->hom.end());
  CHECK(image == std::set<int>{g.index_of_label("1"), g.index_of_label("-1")});

  WidthResult width = commutator_width(g);
  CHECK(width.width == 1);

  QuotientResult q = quotient(g, subgroup_closure(g, {g.index_of_label("-1")}));
  CHECK(q.group.n == 4);
  CHECK(abelian_invariant_factors(q.group) == std::vector<long long>{2, 2});
}

TEST_CASE("alternating groups") {
  FiniteGroup a4 = alt(4);
  REQUIRE(a4.n == 12);
  CHECK(class_sizes(a4) == std::multiset<size_t>{1, 3, 4, 4});
  CHECK(subgroup_sizes(normal_subgroups(a4)) == std::vector<int>{1, 4, 12});
  CHECK_FALSE(is_perfect(a4));
  CHECK(derived_subgroup(a4).size() == 4);
  CHECK(abelianization_invariants(a4) == std::vector<long long>{3});
  CHECK_FALSE(decompose(a4).has_value());
  CHECK_FALSE(is_nilpotent(a4));

  FiniteGroup a5 = alt(5);
  REQUIRE(a5.n == 60);
  CHECK(class_sizes(a5) == std::multiset<size_t>{1, 12, 12, 15, 20});
  CHECK(is_perfect(a5));
  CHECK(commutator_width(a5).width == 1);
  CHECK(subgroup_sizes(normal_subgroups(a5)) == std::vector<int>{1, 60});
}

TEST_CASE("cyclic groups and products") {
  FiniteGroup c6 = cyc(6);
  CHECK(c6.is_abelian());
  CHECK(is_nilpotent(c6));
  CHECK_FALSE(nilpotent_center_map(c6).has_value());
  CHECK(abelian_invariant_factors(c6) == std::vector<long long>{6});

  auto dec = decompose(c6);
  REQUIRE(dec.has_value());
  std::multiset<int> sizes{dec->left.size(), dec->right.size()};
  CHECK(sizes == std::multiset<int>{2, 3});

  CHECK(abelian_invariant_factors(cyc(12)) == std::vector<long long>{12});
  CHECK(abelian_invariant_factors(direct_product(cyc(2), cyc(6))) ==
        std::vector<long long>{2, 6});
  CHECK(abelian_invariant_factors(
            direct_product(cyc(2), direct_product(cyc(2), cyc(4)))) ==
        std::vector<long long>{2, 2, 4});

  FiniteGroup prod = direct_product(sym(3), cyc(2));
  CHECK(prod.n == 12);
  CHECK(prod.center.size() == 2);
  CHECK(abelianization_invariants(prod) == std::vector<long long>{2, 2});
  auto pd = decompose(prod);
  REQUIRE(pd.has_value());

  CHECK(cyc(12).pow(1, 100) == 4);
  CHECK(cyc(12).pow(1, -1) == 11);
}

TEST_CASE("homomorphisms into centers") {
  FiniteGroup q8 = quat8();
  FiniteGroup s3 = sym(3);

  auto f = center_hom(cyc(4), q8);
  REQUIRE(f.has_value());
  CHECK(f->prime == 2);
  CHECK(f->nontrivial);
  for (int v : f->image)
    CHECK((v == q8.index_of_label("1") || v == q8.index_of_label("-1")));

  // The sign character of the symmetric group reaches the quaternion center.
  auto sgn = center_hom(s3, q8);
  REQUIRE(sgn.has_value());
  CHECK(sgn->image[s3.index_of_label("102")] == q8.index_of_label("-1"));
  CHECK(sgn->image[s3.index_of_label("120")] == q8.index_of_label("1"));

  CHECK_FALSE(center_hom(alt(5), q8).has_value());   // perfect source
  CHECK_FALSE(center_hom(cyc(2), s3).has_value());   // trivial center
  CHECK_FALSE(center_hom(cyc(3), q8).has_value());   // coprime orders

  FiniteGroup c6 = cyc(6);
  auto self = center_hom(c6, c6);
  REQUIRE(self.has_value());
  CHECK(self->nontrivial);
}

TEST_CASE("construction validates input tables") {
  CHECK_THROWS_AS(make_group("bad", {"a", "b"}, {0, 0, 1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_group("bad", {"a", "b"}, {0, 1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_group("bad", {"a", "a"}, {0, 1, 1, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_group("bad", {"a", "b"}, {0, 1, 1, 5}),
                  std::invalid_argument);
  // A latin square with identity that fails associativity: (1*1)*2 != 1*(1*2).
  std::vector<int32_t> loop = {0, 1, 2, 3, 4,  //
                               1, 0, 3, 4, 2,  //
                               2, 3, 4, 0, 1,  //
                               3, 4, 1, 2, 0,  //
                               4, 2, 0, 1, 3};
  CHECK_THROWS_AS(make_group("loop", {"e", "p", "q", "r", "s"}, loop),
                  std::invalid_argument);
}

TEST_CASE("formula bridge exposes the group operations") {
  using namespace coordlens::logic;
  FiniteStructure s3 = as_structure(sym(3));
  Signature sig = group_signature();
  CHECK(eval(s3, *parse_formula(sig, "(A x) x*inv(x) = e")));
  CHECK_FALSE(eval(s3, *parse_formula(sig, "(A x)(A y) x*y = y*x")));
  FiniteStructure c6 = as_structure(cyc(6));
  CHECK(eval(c6, *parse_formula(sig, "(A x)(A y) x*y = y*x")));
}
