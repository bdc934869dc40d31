#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "coordlens/catalog.hpp"

using namespace coordlens;
using catalog::build;

namespace {

std::multiset<int> class_sizes(const groups::FiniteGroup& g) {
  std::multiset<int> out;
  for (const auto& c : g.classes) out.insert((int)c.size());
  return out;
}

std::multiset<int> element_orders(const groups::FiniteGroup& g) {
  return {g.order.begin(), g.order.end()};
}

}  // namespace

TEST_CASE("symmetric and alternating groups match their closed forms") {
  auto s3 = build("S3");
  REQUIRE(s3.group->n == 6);
  CHECK(class_sizes(*s3.group) == std::multiset<int>{1, 2, 3});
  CHECK(s3.group->labels[0] == "e");
  CHECK(s3.group->index_of_label("(1 2)") >= 0);
  CHECK(s3.group->index_of_label("(1 2 3)") >= 0);
  REQUIRE(s3.sym != nullptr);
  CHECK(s3.sym->points == 3);
  CHECK(s3.sym->perms.size() == 6);
  // the table composes right factor first: (1 2)·(2 3) sends 1 to 2, 2 to 3
  int a = s3.group->index_of_label("(1 2)");
  int b = s3.group->index_of_label("(2 3)");
  CHECK(s3.group->labels[s3.group->mul(a, b)] == "(1 2 3)");

  auto s4 = build("S4");
  REQUIRE(s4.group->n == 24);
  CHECK(class_sizes(*s4.group) == std::multiset<int>{1, 3, 6, 6, 8});

  auto s5 = build("S5");
  REQUIRE(s5.group->n == 120);
  CHECK(s5.group->classes.size() == 7);

  auto a4 = build("A4");
  REQUIRE(a4.group->n == 12);
  CHECK(class_sizes(*a4.group) == std::multiset<int>{1, 3, 4, 4});

  auto a5 = build("A5");
  REQUIRE(a5.group->n == 60);
  CHECK(class_sizes(*a5.group) == std::multiset<int>{1, 12, 12, 15, 20});
  CHECK(groups::is_perfect(*a5.group));
}

TEST_CASE("the seven-point symmetric group builds with its known shape") {
  auto s7 = build("S7");
  REQUIRE(s7.group->n == 5040);
  CHECK(s7.group->classes.size() == 15);  // one class per partition of 7
  CHECK(s7.group->center == std::vector<int>{0});
  auto orders = element_orders(*s7.group);
  CHECK(orders.count(7) == 720);   // the 7-cycles
  CHECK(orders.count(10) == 504);  // 5+2 cycle type
  CHECK(orders.count(12) == 420);  // 4+3 cycle type
}

TEST_CASE("cyclic and dihedral constructors") {
  auto c12 = build("C12");
  REQUIRE(c12.group->n == 12);
  CHECK(c12.group->is_abelian());
  CHECK(c12.group->labels[5] == "g^5");
  CHECK(groups::abelian_invariant_factors(*c12.group) ==
        std::vector<long long>{12});

  auto d5 = build("Dih5");
  REQUIRE(d5.group->n == 10);
  CHECK(d5.group->center == std::vector<int>{0});
  CHECK(d5.group->classes.size() == 4);
  int r = d5.group->index_of_label("r");
  int s = d5.group->index_of_label("s");
  // s r s = r^-1
  CHECK(d5.group->mul(d5.group->mul(s, r), s) == d5.group->inv(r));
  CHECK(d5.group->labels[d5.group->mul(r, s)] == "r*s");

  auto d4 = build("Dih4");
  CHECK(d4.group->center.size() == 2);
  CHECK(groups::is_nilpotent(*d4.group));

  auto d6 = build("Dih6");
  CHECK(d6.group->n == 12);
  CHECK_FALSE(groups::is_nilpotent(*d6.group));
}

TEST_CASE("quaternion group satisfies the defining relations") {
  auto q8 = build("Q8");
  const auto& g = *q8.group;
  int i = g.index_of_label("i"), j = g.index_of_label("j"),
      k = g.index_of_label("k"), m1 = g.index_of_label("-1");
  CHECK(g.mul(i, i) == m1);
  CHECK(g.mul(j, j) == m1);
  CHECK(g.mul(k, k) == m1);
  CHECK(g.mul(i, j) == k);
  CHECK(g.mul(j, i) == g.index_of_label("-k"));
  CHECK(g.mul(g.mul(i, j), k) == m1);
  CHECK(g.center.size() == 2);
  CHECK(class_sizes(g) == std::multiset<int>{1, 1, 2, 2, 2});
}

TEST_CASE("special linear groups over small fields") {
  auto sl25 = build("SL2_5");
  REQUIRE(sl25.group->n == 120);
  CHECK(sl25.group->center.size() == 2);
  CHECK(groups::is_perfect(*sl25.group));
  CHECK(element_orders(*sl25.group).count(2) == 1);  // unique involution

  auto sl22 = build("SL2_2");
  REQUIRE(sl22.group->n == 6);
  CHECK(class_sizes(*sl22.group) == std::multiset<int>{1, 2, 3});

  auto sl23 = build("SL2_3");
  REQUIRE(sl23.group->n == 24);
  CHECK(sl23.group->center.size() == 2);
  CHECK_FALSE(groups::is_perfect(*sl23.group));
  CHECK(groups::derived_subgroup(*sl23.group).size() == 8);

  // the four-element field: SL(2,4) is simple of order 60
  auto sl24 = build("SL2_4");
  REQUIRE(sl24.group->n == 60);
  CHECK(class_sizes(*sl24.group) == std::multiset<int>{1, 12, 12, 15, 20});
  CHECK(sl24.group->center.size() == 1);

  auto sl27 = build("SL2_7");
  REQUIRE(sl27.group->n == 336);
  CHECK(groups::is_perfect(*sl27.group));

  auto sl32 = build("SL3_2");
  REQUIRE(sl32.group->n == 168);
  CHECK(sl32.group->center.size() == 1);
  CHECK(class_sizes(*sl32.group) == std::multiset<int>{1, 21, 24, 24, 42, 56});
  CHECK(groups::normal_subgroups(*sl32.group).list.size() == 2);  // simple
}

TEST_CASE("general linear groups over small fields") {
  auto gl22 = build("GL2_2");
  REQUIRE(gl22.group->n == 6);
  CHECK(class_sizes(*gl22.group) == std::multiset<int>{1, 2, 3});
  CHECK(element_orders(*gl22.group) == element_orders(*build("S3").group));

  auto gl23 = build("GL2_3");
  REQUIRE(gl23.group->n == 48);
  CHECK(gl23.group->center.size() == 2);
  CHECK(groups::abelianization_invariants(*gl23.group) ==
        std::vector<long long>{2});

  auto gl24 = build("GL2_4");
  REQUIRE(gl24.group->n == 180);
  auto dec = groups::decompose(*gl24.group);
  REQUIRE(dec.has_value());
  std::multiset<int> parts{dec->left.size(), dec->right.size()};
  CHECK(parts == std::multiset<int>{3, 60});

  auto gl25 = build("GL2_5");
  REQUIRE(gl25.group->n == 480);
  CHECK(gl25.group->center.size() == 4);

  auto gl27 = build("GL2_7");
  REQUIRE(gl27.group->n == 2016);
  CHECK(gl27.group->center.size() == 6);
}

TEST_CASE("rock-paper-scissors magma has the winner table") {
  auto rps = build("RPS");
  REQUIRE(rps.kind == catalog::ObjectKind::Magma);
  const auto& m = *rps.structure;
  REQUIRE(m.n == 3);
  int star = m.sig.function_index("*");
  auto prod = [&](int a, int b) { return m.func_apply(star, {a, b}); };
  int R = 0, P = 1, S = 2;
  CHECK(prod(R, S) == R);
  CHECK(prod(S, R) == R);
  CHECK(prod(P, R) == P);
  CHECK(prod(S, P) == S);
  CHECK(prod(R, R) == R);
  // loser uniqueness: every move has exactly one distinct loser
  for (int t = 0; t < 3; ++t) {
    int losers = 0;
    for (int s = 0; s < 3; ++s)
      if (s != t && prod(s, t) == t) ++losers;
    CHECK(losers == 1);
  }
}

TEST_CASE("chains carry the full order relation") {
  auto c5 = build("Chain5");
  REQUIRE(c5.kind == catalog::ObjectKind::Chain);
  const auto& m = *c5.structure;
  REQUIRE(m.n == 5);
  int tuples = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      if (m.rel_holds(m.sig.relation_index("Leq"), {a, b})) {
        ++tuples;
        CHECK(a <= b);
      }
  CHECK(tuples == 15);
}

TEST_CASE("catalog names parse and out-of-range requests are refused") {
  CHECK_THROWS_AS(build("S9"), std::invalid_argument);
  CHECK_THROWS_AS(build("S8"), std::invalid_argument);  // order cap
  CHECK_THROWS_AS(build("A8"), std::invalid_argument);
  CHECK_THROWS_AS(build("Chain1"), std::invalid_argument);
  CHECK_THROWS_AS(build("Dih2"), std::invalid_argument);
  CHECK_THROWS_AS(build("SL2_6"), std::invalid_argument);
  CHECK_THROWS_AS(build("SL4_2"), std::invalid_argument);
  CHECK_THROWS_AS(build("GL3_3"), std::invalid_argument);  // order cap
  CHECK_THROWS_AS(build("Foo"), std::invalid_argument);
  CHECK_THROWS_AS(build(""), std::invalid_argument);
  CHECK_THROWS_AS(build("C0"), std::invalid_argument);
}

TEST_CASE("every curated entry builds and carries an annotation") {
  for (const std::string& name : catalog::curated_names()) {
    INFO(name);
    auto e = build(name);
    CHECK(e.name == name);
    REQUIRE(e.annotation.has_value());
    CHECK_FALSE(e.annotation->basis.empty());
    CHECK((e.annotation->source == "stated" ||
           e.annotation->source == "computed"));
    if (e.kind == catalog::ObjectKind::Group) {
      REQUIRE(e.group != nullptr);
      CHECK(e.group->mul(e.group->id, e.group->id) == e.group->id);
    } else {
      REQUIRE(e.structure != nullptr);
    }
    auto st = catalog::entry_structure(e);
    CHECK(st.n > 0);
  }
}
