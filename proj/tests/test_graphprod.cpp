#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "coordlens/catalog.hpp"
#include "coordlens/graphprod.hpp"

using namespace coordlens;
using graphprod::ProductSpec;
using graphprod::Syllable;
using graphprod::Word;

namespace {

std::shared_ptr<const groups::FiniteGroup> shared_group(
    const std::string& name) {
  static std::map<std::string, std::shared_ptr<const groups::FiniteGroup>>
      cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  auto g = catalog::build(name).group;
  cache[name] = g;
  return g;
}

ProductSpec two_vertex(const std::string& g0, const std::string& g1,
                       bool edge) {
  std::vector<std::pair<int, int>> edges;
  if (edge) edges.push_back({0, 1});
  return graphprod::make_product_spec({shared_group(g0), shared_group(g1)},
                                      edges, {"u", "v"});
}

Word wd(std::initializer_list<Syllable> syls) {
  Word w;
  w.syls = syls;
  return w;
}

ProductSpec random_spec(std::mt19937& rng, bool need_big) {
  static const char* names[] = {"C2", "C3", "S3"};
  std::uniform_int_distribution<int> nv(2, 6), gi(0, 2);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (;;) {
    int n = nv(rng);
    std::vector<std::shared_ptr<const groups::FiniteGroup>> gs;
    bool big = false;
    for (int v = 0; v < n; ++v) {
      int k = gi(rng);
      if (k > 0) big = true;
      gs.push_back(shared_group(names[k]));
    }
    if (need_big && !big) continue;
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(rng) < 0.35) edges.push_back({u, v});
    return graphprod::make_product_spec(std::move(gs), edges);
  }
}

Word random_word(std::mt19937& rng, const ProductSpec& spec, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> vtx(0, spec.vertices() - 1);
  Word w;
  int k = len(rng);
  for (int i = 0; i < k; ++i) {
    int v = vtx(rng);
    std::uniform_int_distribution<int> el(0, spec.groups[v]->n - 1);
    int x = el(rng);
    if (x != spec.groups[v]->id) w.syls.push_back({v, x});
  }
  return w;
}

}  // namespace

TEST_CASE("product spec validation") {
  CHECK_THROWS_AS(graphprod::make_product_spec({}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      graphprod::make_product_spec({shared_group("C2")}, {{0, 0}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      graphprod::make_product_spec({shared_group("C2")}, {{0, 1}}),
      std::invalid_argument);
  CHECK_THROWS_AS(graphprod::make_product_spec(
                      {shared_group("C2"), shared_group("C3")}, {}, {"u"}),
                  std::invalid_argument);
  auto spec = two_vertex("C2", "C3", true);
  CHECK(spec.adjacent(0, 1));
  CHECK_FALSE(spec.co_adjacent(0, 1));
  CHECK(spec.vertex_index("v") == 1);
}

TEST_CASE("normal form rewriting") {
  SECTION("commute then cancel across an edge") {
    auto spec = two_vertex("C2", "C2", true);
    Word w = wd({{0, 1}, {1, 1}, {0, 1}});  // a b a -> b
    Word nf = graphprod::normal_form(spec, w);
    CHECK(nf == wd({{1, 1}}));
  }
  SECTION("free product words are already normal") {
    auto spec = two_vertex("C2", "C2", false);
    Word w = wd({{0, 1}, {1, 1}, {0, 1}, {1, 1}});
    CHECK(graphprod::normal_form(spec, w) == w);
    CHECK(graphprod::is_normal(spec, w));
  }
  SECTION("empty word") {
    auto spec = two_vertex("C2", "C3", false);
    CHECK(graphprod::normal_form(spec, Word{}).empty());
  }
  SECTION("canonical representative sorts commuting syllables by vertex") {
    auto spec = two_vertex("C2", "C3", true);
    Word w = wd({{1, 1}, {0, 1}});
    CHECK(graphprod::normal_form(spec, w) == wd({{0, 1}, {1, 1}}));
  }
  SECTION("merge through a commuting gap") {
    auto spec = two_vertex("C3", "C2", true);
    Word w = wd({{0, 1}, {1, 1}, {0, 1}});  // g b g -> g^2 b
    CHECK(graphprod::normal_form(spec, w) == wd({{0, 2}, {1, 1}}));
  }
  SECTION("identity syllables are dropped") {
    auto spec = two_vertex("C3", "C2", false);
    Word w = wd({{0, 0}, {1, 1}, {0, 0}});
    CHECK(graphprod::normal_form(spec, w) == wd({{1, 1}}));
  }
}

TEST_CASE("heads and tails") {
  SECTION("free product alternating word") {
    auto spec = two_vertex("C2", "C2", false);
    Word w = wd({{0, 1}, {1, 1}, {0, 1}, {1, 1}});
    auto ht = graphprod::head_tail(spec, w);
    CHECK(ht.left == std::set<int>{0});
    CHECK(ht.right == std::set<int>{1});
    CHECK(ht.support == std::set<int>{0, 1});
    CHECK(ht.lambda == 4);
    REQUIRE(ht.head.size() == 1);
    CHECK(ht.head[0] == Syllable{0, 1});
  }
  SECTION("commuting pair is visible from both ends") {
    auto spec = two_vertex("C2", "C3", true);
    Word w = wd({{0, 1}, {1, 1}});
    auto ht = graphprod::head_tail(spec, w);
    CHECK(ht.left == std::set<int>{0, 1});
    CHECK(ht.right == std::set<int>{0, 1});
    CHECK(ht.head.size() == 2);
    CHECK(ht.tail.size() == 2);
  }
  SECTION("single syllable") {
    auto spec = two_vertex("C2", "C3", false);
    auto ht = graphprod::head_tail(spec, wd({{1, 2}}));
    CHECK(ht.left == std::set<int>{1});
    CHECK(ht.right == std::set<int>{1});
    CHECK(ht.lambda == 1);
  }
  SECTION("non-normal input is rejected") {
    auto spec = two_vertex("C2", "C2", false);
    CHECK_THROWS_AS(graphprod::head_tail(spec, wd({{0, 1}, {0, 1}})),
                    std::invalid_argument);
  }
}

TEST_CASE("word arithmetic") {
  auto spec = two_vertex("C3", "S3", false);
  Word u = wd({{0, 1}, {1, 3}});
  Word ui = graphprod::inverse(spec, u);
  CHECK(graphprod::multiply(spec, u, ui).empty());
  CHECK(graphprod::multiply(spec, ui, u).empty());
  Word c = graphprod::conjugate(spec, u, wd({{0, 1}}));
  CHECK_FALSE(c.empty());
}

TEST_CASE("rewriting is confluent") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    ProductSpec spec = random_spec(rng, false);
    Word w = random_word(rng, spec, 12);
    Word canonical = graphprod::normal_form(spec, w);
    for (uint32_t seed = 0; seed < 20; ++seed) {
      Word alt = graphprod::normal_form_with_strategy(spec, w, seed);
      if (!(alt == canonical)) {
        INFO("trial " << trial << " seed " << seed << ": "
                      << graphprod::format_word(spec, alt) << " vs "
                      << graphprod::format_word(spec, canonical));
        REQUIRE(alt == canonical);
      }
    }
  }
  SUCCEED("200 words, 20 strategies each");
}

TEST_CASE("length and head lemmas on random pairs") {
  std::mt19937 rng(78);
  int disjoint_checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    ProductSpec spec = random_spec(rng, false);
    Word u = graphprod::normal_form(spec, random_word(rng, spec, 8));
    Word v = graphprod::normal_form(spec, random_word(rng, spec, 8));
    auto hu = graphprod::head_tail(spec, u);
    auto hv = graphprod::head_tail(spec, v);
    Word ui = graphprod::inverse(spec, u);
    CHECK(graphprod::head_tail(spec, ui).lambda == hu.lambda);
    Word uv = graphprod::multiply(spec, u, v);
    auto huv = graphprod::head_tail(spec, uv);
    CHECK(huv.lambda <= hu.lambda + hv.lambda);

    // disjoint-support head containment: restrict v to vertices u avoids
    Word vres;
    for (const Syllable& s : v.syls)
      if (!hu.support.count(s.vertex)) vres.syls.push_back(s);
    vres = graphprod::normal_form(spec, vres);
    if (u.empty() || vres.empty()) continue;
    ++disjoint_checked;
    auto hvr = graphprod::head_tail(spec, vres);
    Word prod = graphprod::multiply(spec, u, vres);
    auto hp = graphprod::head_tail(spec, prod);
    auto contains = [](const std::vector<Syllable>& big,
                       const Syllable& s) {
      return std::find(big.begin(), big.end(), s) != big.end();
    };
    for (const Syllable& s : hu.head) CHECK(contains(hp.head, s));
    for (const Syllable& s : hp.head) {
      bool from_u = contains(hu.head, s), from_v = contains(hvr.head, s);
      CHECK((from_u || from_v));
    }
    // when every left vertex of the second factor is blocked by the first,
    // the left set is unchanged
    bool all_blocked = true;
    for (int lv : hvr.left) {
      bool blocked = false;
      for (int sv : hu.support)
        if (!spec.adjacent(lv, sv)) blocked = true;
      if (!blocked) all_blocked = false;
    }
    if (all_blocked) CHECK(hp.left == hu.left);
  }
  CHECK(disjoint_checked > 200);
}

TEST_CASE("conjugating to a chosen vertex") {
  SECTION("free product of Z/3 and Z/2") {
    auto spec = two_vertex("C3", "C2", false);
    Word w = wd({{1, 1}});  // the involution at vertex v
    Word h = graphprod::conjugate_to_vertex(spec, w, 0);
    Word moved = graphprod::conjugate(spec, h, w);
    auto ht = graphprod::head_tail(spec, moved);
    CHECK(ht.left == std::set<int>{0});
    CHECK(ht.right == std::set<int>{0});
  }
  SECTION("already in position returns the identity") {
    auto spec = two_vertex("C3", "C2", false);
    Word w = wd({{0, 1}});
    CHECK(graphprod::conjugate_to_vertex(spec, w, 0).empty());
  }
  SECTION("hypothesis violations") {
    auto complete = two_vertex("C3", "C2", true);
    CHECK_THROWS_AS(
        graphprod::conjugate_to_vertex(complete, wd({{0, 1}}), 0),
        std::invalid_argument);
    auto small = two_vertex("C2", "C2", false);
    CHECK_THROWS_AS(graphprod::conjugate_to_vertex(small, wd({{0, 1}}), 0),
                    std::invalid_argument);
    auto ok = two_vertex("C3", "C2", false);
    CHECK_THROWS_AS(graphprod::conjugate_to_vertex(ok, Word{}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(graphprod::conjugate_to_vertex(ok, wd({{0, 1}}), 7),
                    std::invalid_argument);
  }
  SECTION("random instances satisfy the postcondition") {
    std::mt19937 rng(79);
    int done = 0;
    while (done < 100) {
      ProductSpec spec = random_spec(rng, true);
      if (!graphprod::detail::complement_connected(spec)) continue;
      bool big = false;
      for (const auto& g : spec.groups)
        if (g->n >= 3) big = true;
      if (!big) continue;
      Word w = graphprod::normal_form(spec, random_word(rng, spec, 8));
      if (w.empty()) continue;
      std::uniform_int_distribution<int> vtx(0, spec.vertices() - 1);
      int target = vtx(rng);
      Word h = graphprod::conjugate_to_vertex(spec, w, target);
      Word moved = graphprod::conjugate(spec, h, w);
      auto ht = graphprod::head_tail(spec, moved);
      INFO("word " << graphprod::format_word(spec, w) << " target " << target
                   << " conjugator " << graphprod::format_word(spec, h));
      REQUIRE(ht.left == std::set<int>{target});
      REQUIRE(ht.right == std::set<int>{target});
      ++done;
    }
  }
}

TEST_CASE("classifier over complement connectivity") {
  auto adj = [](int n, std::vector<std::pair<int, int>> edges) {
    std::vector<std::vector<char>> a(n, std::vector<char>(n, 0));
    for (auto [u, v] : edges) a[u][v] = a[v][u] = 1;
    return a;
  };

  SECTION("path graph splits over the complement components") {
    auto r = graphprod::rc_classify(adj(3, {{0, 1}, {1, 2}}), {2, 2, 2});
    REQUIRE(r.kind == graphprod::RcKind::Decomposable);
    CHECK(r.part_x == std::vector<int>{0, 2});
    CHECK(r.part_y == std::vector<int>{1});
  }
  SECTION("free product with a big factor recognizes") {
    auto r = graphprod::rc_classify(adj(2, {}), {3, 2});
    CHECK(r.kind == graphprod::RcKind::Recognizes);
    CHECK_FALSE(r.z2z2_special_case);
  }
  SECTION("infinite dihedral special case") {
    auto r = graphprod::rc_classify(adj(2, {}), {2, 2});
    CHECK(r.kind == graphprod::RcKind::Recognizes);
    CHECK(r.z2z2_special_case);
  }
  SECTION("right-angled Coxeter products stay open") {
    auto r = graphprod::rc_classify(adj(4, {{0, 1}, {1, 2}, {2, 3}}),
                                    {2, 2, 2, 2});
    CHECK(r.kind == graphprod::RcKind::OpenRacg);
  }
  SECTION("complete graph complement is disconnected") {
    auto r = graphprod::rc_classify(adj(3, {{0, 1}, {0, 2}, {1, 2}}),
                                    {2, 3, 4});
    CHECK(r.kind == graphprod::RcKind::Decomposable);
  }
  SECTION("input validation") {
    CHECK_THROWS_AS(graphprod::rc_classify(adj(1, {}), {5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(graphprod::rc_classify(adj(2, {}), {1, 2}),
                    std::invalid_argument);
  }
  SECTION("spec overload matches") {
    auto spec = two_vertex("C3", "C2", false);
    CHECK(graphprod::rc_classify(spec).kind == graphprod::RcKind::Recognizes);
  }
}

TEST_CASE("complete graphs agree with direct products") {
  struct Combo {
    std::vector<const char*> names;
  };
  std::vector<Combo> combos = {{{"C2", "C3"}},
                               {{"C4", "S3"}},
                               {{"C2", "C3", "S3"}},
                               {{"C2", "C2", "C5"}}};
  for (const Combo& combo : combos) {
    int n = (int)combo.names.size();
    std::vector<std::shared_ptr<const groups::FiniteGroup>> gs;
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
      gs.push_back(shared_group(combo.names[u]));
      for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
    }
    ProductSpec spec = graphprod::make_product_spec(gs, edges);

    long long total = 1;
    for (const auto& g : gs) total *= g->n;
    auto tuple_of = [&](long long idx) {
      std::vector<int> t(n);
      for (int v = n - 1; v >= 0; --v) {
        t[v] = (int)(idx % gs[v]->n);
        idx /= gs[v]->n;
      }
      return t;
    };
    auto word_of = [&](const std::vector<int>& t) {
      Word w;
      for (int v = 0; v < n; ++v)
        if (t[v] != gs[v]->id) w.syls.push_back({v, t[v]});
      return w;
    };
    for (long long i = 0; i < total; ++i)
      for (long long j = 0; j < total; ++j) {
        std::vector<int> a = tuple_of(i), b = tuple_of(j), c(n);
        for (int v = 0; v < n; ++v) c[v] = gs[v]->mul(a[v], b[v]);
        Word prod = graphprod::multiply(spec, word_of(a), word_of(b));
        if (!(prod == word_of(c))) {
          INFO("i=" << i << " j=" << j);
          REQUIRE(prod == word_of(c));
        }
      }
  }
  SUCCEED("direct product oracle agrees");
}

TEST_CASE("word parsing and formatting") {
  auto spec = two_vertex("C3", "S3", false);
  Word w = graphprod::parse_word(spec, "u:g v:(1 2)");
  REQUIRE(w.syls.size() == 2);
  CHECK(w.syls[0].vertex == 0);
  CHECK(w.syls[1].vertex == 1);
  CHECK(graphprod::format_word(spec, w) == "u:g v:(1 2)");
  CHECK(graphprod::parse_word(spec, "e").empty());
  CHECK(graphprod::format_word(spec, Word{}) == "e");
  CHECK(graphprod::parse_word(spec, "u:e v:e").empty());
  CHECK_THROWS_AS(graphprod::parse_word(spec, "w:g"), std::invalid_argument);
  CHECK_THROWS_AS(graphprod::parse_word(spec, "u:zzz"),
                  std::invalid_argument);
  CHECK_THROWS_AS(graphprod::parse_word(spec, "nocolon"),
                  std::invalid_argument);
}
