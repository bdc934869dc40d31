#pragma once

// Word combinatorics for graph products of finite groups: normal forms over
// the commuting-vertex relation, heads and tails, a constructive conjugator
// taking any nontrivial element to one whose head and tail sit at a chosen
// vertex, and the complement-connectivity classifier.

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "coordlens/groups.hpp"

namespace coordlens::graphprod {

using groups::FiniteGroup;

struct ProductSpec {
  std::vector<std::string> vertex_names;
  std::vector<std::shared_ptr<const FiniteGroup>> groups;
  std::vector<std::vector<char>> adj;  // commuting-vertex graph, symmetric

  int vertices() const { return (int)groups.size(); }
  bool adjacent(int u, int v) const { return adj[u][v] != 0; }
  // edges of the complement graph
  bool co_adjacent(int u, int v) const { return u != v && !adj[u][v]; }
  int vertex_index(const std::string& name) const {
    for (int v = 0; v < vertices(); ++v)
      if (vertex_names[v] == name) return v;
    throw std::invalid_argument("unknown vertex: " + name);
  }
};

inline ProductSpec make_product_spec(
    std::vector<std::shared_ptr<const FiniteGroup>> groups,
    const std::vector<std::pair<int, int>>& edges,
    std::vector<std::string> vertex_names = {}) {
  int n = (int)groups.size();
  if (n == 0) throw std::invalid_argument("graph product needs vertices");
  for (int v = 0; v < n; ++v) {
    if (!groups[v]) throw std::invalid_argument("missing vertex group");
    if (groups[v]->n < 2)
      throw std::invalid_argument("vertex groups must be nontrivial");
  }
  ProductSpec spec;
  spec.groups = std::move(groups);
  spec.adj.assign(n, std::vector<char>(n, 0));
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("loops are not allowed");
    spec.adj[u][v] = spec.adj[v][u] = 1;
  }
  if (vertex_names.empty())
    for (int v = 0; v < n; ++v) vertex_names.push_back(std::to_string(v));
  if ((int)vertex_names.size() != n)
    throw std::invalid_argument("vertex name count mismatch");
  spec.vertex_names = std::move(vertex_names);
  return spec;
}

struct Syllable {
  int vertex = 0;
  int elem = 0;
  bool operator==(const Syllable&) const = default;
};

struct Word {
  std::vector<Syllable> syls;
  bool operator==(const Word&) const = default;
  bool empty() const { return syls.empty(); }
  size_t size() const { return syls.size(); }
};

inline void validate_word(const ProductSpec& spec, const Word& w) {
  for (const Syllable& s : w.syls) {
    if (s.vertex < 0 || s.vertex >= spec.vertices())
      throw std::invalid_argument("syllable vertex out of range");
    if (s.elem < 0 || s.elem >= spec.groups[s.vertex]->n)
      throw std::invalid_argument("syllable element out of range");
  }
}

inline std::string format_word(const ProductSpec& spec, const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (const Syllable& s : w.syls) {
    if (!out.empty()) out += " ";
    out += spec.vertex_names[s.vertex] + ":" +
           spec.groups[s.vertex]->labels[s.elem];
  }
  return out;
}

// Syllable syntax: `vertex:label` tokens separated by whitespace; "e" is the
// empty word. Labels may themselves contain spaces (permutation cycles), so
// tokens without a colon continue the previous label.
inline Word parse_word(const ProductSpec& spec, const std::string& text) {
  Word w;
  std::istringstream in(text);
  std::string tok, vtx, lbl;
  bool pending = false;
  auto flush = [&] {
    if (!pending) return;
    int v = spec.vertex_index(vtx);
    int x = spec.groups[v]->index_of_label(lbl);
    if (x != spec.groups[v]->id) w.syls.push_back({v, x});
    pending = false;
  };
  while (in >> tok) {
    auto colon = tok.find(':');
    if (colon != std::string::npos) {
      flush();
      vtx = tok.substr(0, colon);
      lbl = tok.substr(colon + 1);
      pending = true;
    } else if (pending) {
      lbl += " " + tok;
    } else if (tok != "e") {
      throw std::invalid_argument("expected vertex:label, got: " + tok);
    }
  }
  flush();
  return w;
}

namespace detail {

// Merge opportunities: same-vertex syllables i < j with everything between
// commuting with their vertex. Identity syllables are rule 0.
struct Rule {
  int i = 0, j = 0;  // j == i means "delete identity syllable i"
};

inline std::vector<Rule> applicable_rules(const ProductSpec& spec,
                                          const std::vector<Syllable>& s) {
  std::vector<Rule> rules;
  for (int i = 0; i < (int)s.size(); ++i)
    if (s[i].elem == spec.groups[s[i].vertex]->id) rules.push_back({i, i});
  for (int i = 0; i < (int)s.size(); ++i) {
    for (int j = i + 1; j < (int)s.size(); ++j) {
      if (s[j].vertex == s[i].vertex) {
        bool clear = true;
        for (int k = i + 1; k < j && clear; ++k)
          if (!spec.adjacent(s[k].vertex, s[i].vertex)) clear = false;
        if (clear) rules.push_back({i, j});
        break;  // a farther same-vertex syllable is blocked by this one
      }
      if (!spec.adjacent(s[j].vertex, s[i].vertex)) break;
    }
  }
  return rules;
}

inline void apply_rule(const ProductSpec& spec, std::vector<Syllable>& s,
                       const Rule& r) {
  if (r.i == r.j) {
    s.erase(s.begin() + r.i);
    return;
  }
  const FiniteGroup& g = *spec.groups[s[r.i].vertex];
  int merged = g.mul(s[r.i].elem, s[r.j].elem);
  s.erase(s.begin() + r.j);
  if (merged == g.id)
    s.erase(s.begin() + r.i);
  else
    s[r.i].elem = merged;
}

// Lexicographically least linearization of the trace: repeatedly emit the
// least-vertex syllable among those with no earlier non-commuting syllable.
inline void canonical_order(const ProductSpec& spec,
                            std::vector<Syllable>& s) {
  int k = (int)s.size();
  std::vector<char> done(k, 0);
  std::vector<Syllable> out;
  out.reserve(k);
  for (int step = 0; step < k; ++step) {
    int best = -1;
    for (int i = 0; i < k; ++i) {
      if (done[i]) continue;
      bool avail = true;
      for (int j = 0; j < i && avail; ++j)
        if (!done[j] && !spec.adjacent(s[j].vertex, s[i].vertex)) avail = false;
      if (avail && (best == -1 || s[i].vertex < s[best].vertex)) best = i;
    }
    done[best] = 1;
    out.push_back(s[best]);
  }
  s = std::move(out);
}

}  // namespace detail

inline Word normal_form(const ProductSpec& spec, Word w) {
  validate_word(spec, w);
  for (;;) {
    auto rules = detail::applicable_rules(spec, w.syls);
    if (rules.empty()) break;
    detail::apply_rule(spec, w.syls, rules.front());
  }
  detail::canonical_order(spec, w.syls);
  return w;
}

// Same fixpoint reached through a randomized rule order; used to check
// confluence of the rewriting system.
inline Word normal_form_with_strategy(const ProductSpec& spec, Word w,
                                      uint32_t seed) {
  validate_word(spec, w);
  std::mt19937 rng(seed);
  for (;;) {
    auto rules = detail::applicable_rules(spec, w.syls);
    if (rules.empty()) break;
    std::uniform_int_distribution<size_t> pick(0, rules.size() - 1);
    detail::apply_rule(spec, w.syls, rules[pick(rng)]);
  }
  detail::canonical_order(spec, w.syls);
  return w;
}

inline bool is_normal(const ProductSpec& spec, const Word& w) {
  validate_word(spec, w);
  return detail::applicable_rules(spec, w.syls).empty();
}

struct HeadTail {
  std::vector<Syllable> head, tail;  // first/last syllables over all shuffles
  std::set<int> left, right, support;  // L(w), R(w), V(w)
  int lambda = 0;
};

inline HeadTail head_tail(const ProductSpec& spec, const Word& w) {
  if (!is_normal(spec, w))
    throw std::invalid_argument("head_tail requires a normal-form word");
  HeadTail ht;
  int k = (int)w.syls.size();
  ht.lambda = k;
  for (const Syllable& s : w.syls) ht.support.insert(s.vertex);
  for (int i = 0; i < k; ++i) {
    bool first = true;
    for (int j = 0; j < i && first; ++j)
      if (!spec.adjacent(w.syls[j].vertex, w.syls[i].vertex)) first = false;
    if (first) {
      ht.head.push_back(w.syls[i]);
      ht.left.insert(w.syls[i].vertex);
    }
    bool last = true;
    for (int j = i + 1; j < k && last; ++j)
      if (!spec.adjacent(w.syls[j].vertex, w.syls[i].vertex)) last = false;
    if (last) {
      ht.tail.push_back(w.syls[i]);
      ht.right.insert(w.syls[i].vertex);
    }
  }
  return ht;
}

inline Word multiply(const ProductSpec& spec, const Word& u, const Word& v) {
  Word w;
  w.syls = u.syls;
  w.syls.insert(w.syls.end(), v.syls.begin(), v.syls.end());
  return normal_form(spec, w);
}

inline Word inverse(const ProductSpec& spec, const Word& w) {
  Word r;
  for (auto it = w.syls.rbegin(); it != w.syls.rend(); ++it)
    r.syls.push_back({it->vertex, spec.groups[it->vertex]->inv(it->elem)});
  return normal_form(spec, r);
}

inline Word conjugate(const ProductSpec& spec, const Word& h, const Word& w) {
  return multiply(spec, multiply(spec, h, w), inverse(spec, h));
}

namespace detail {

struct BfsTree {
  std::vector<int> parent;  // -1 for the root, -2 for unreachable
  std::vector<int> dist;
};

// Breadth-first spanning tree of the complement graph, least-index first.
inline BfsTree complement_bfs(const ProductSpec& spec, int root) {
  int n = spec.vertices();
  BfsTree t;
  t.parent.assign(n, -2);
  t.dist.assign(n, -1);
  t.parent[root] = -1;
  t.dist[root] = 0;
  std::queue<int> q;
  q.push(root);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v = 0; v < n; ++v)
      if (spec.co_adjacent(u, v) && t.parent[v] == -2) {
        t.parent[v] = u;
        t.dist[v] = t.dist[u] + 1;
        q.push(v);
      }
  }
  return t;
}

inline bool complement_connected(const ProductSpec& spec) {
  BfsTree t = complement_bfs(spec, 0);
  for (int v = 0; v < spec.vertices(); ++v)
    if (t.parent[v] == -2) return false;
  return true;
}

inline int least_nontrivial(const ProductSpec& spec, int vertex) {
  const FiniteGroup& g = *spec.groups[vertex];
  for (int x = 0; x < g.n; ++x)
    if (x != g.id) return x;
  throw std::logic_error("trivial vertex group");
}

// Union of the tree paths from the root to each target, listed in increasing
// (distance, index) order; the root comes first.
inline std::vector<int> tree_span(const BfsTree& t, int root,
                                  const std::set<int>& targets) {
  std::set<int> verts{root};
  for (int v : targets)
    for (int x = v; x != root; x = t.parent[x]) verts.insert(x);
  std::vector<int> ordered(verts.begin(), verts.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [&](int a, int b) { return t.dist[a] < t.dist[b]; });
  return ordered;
}

// Shortest complement path from `from` up the BFS tree rooted at `root`,
// excluding the root itself; syllables ordered from `from` towards the root.
inline std::vector<int> tree_path_to_root(const BfsTree& t, int root,
                                          int from) {
  std::vector<int> path;
  for (int x = from; x != root; x = t.parent[x]) path.push_back(x);
  return path;
}

}  // namespace detail

namespace detail {

// True when conjugating by a single syllable at u cannot merge into g and
// blocks every current boundary vertex, leaving L = R = {u}: u must avoid
// the boundary and be complement-adjacent to all of it.
inline int full_pull_vertex(const ProductSpec& spec, const HeadTail& ht,
                            int preferred) {
  std::set<int> boundary = ht.left;
  boundary.insert(ht.right.begin(), ht.right.end());
  int chosen = -1;
  for (int u = 0; u < spec.vertices(); ++u) {
    if (boundary.count(u)) continue;
    bool all = true;
    for (int x : boundary)
      if (!spec.co_adjacent(u, x)) all = false;
    if (all && (chosen == -1 || u == preferred)) chosen = u;
  }
  return chosen;
}

}  // namespace detail

// Conjugator construction: returns h such that h w h^-1 has head and tail
// sets both equal to {target}. Two moves are exact and finish the job once
// they apply:
//   - absorption pull: conjugating by a syllable at a vertex u outside
//     L(g) u R(g) that is complement-adjacent to all of it cannot merge into
//     g, blocks every old boundary vertex, and leaves L = R = {u};
//   - path walk: once L = R = {x}, conjugating along a complement path moves
//     the boundary anywhere (consecutive path syllables block each other,
//     and the old boundary syllable blocks the interior).
// When neither applies the word is reshaped: first by strict cyclic
// reduction, then by a breadth-first search through single-syllable
// conjugations (deduplicated on the canonical form) until some conjugate
// admits an exact move. The postcondition is verified before returning.
inline Word conjugate_to_vertex(const ProductSpec& spec, const Word& input,
                                int target) {
  if (target < 0 || target >= spec.vertices())
    throw std::invalid_argument("target vertex out of range");
  if (!detail::complement_connected(spec))
    throw std::invalid_argument(
        "the complement graph must be connected for the conjugator "
        "construction");
  bool some_big = false;
  for (int v = 0; v < spec.vertices(); ++v)
    if (spec.groups[v]->n >= 3) some_big = true;
  if (!some_big)
    throw std::invalid_argument(
        "the conjugator construction needs a vertex group with at least "
        "three elements");
  Word g = normal_form(spec, input);
  if (g.empty())
    throw std::invalid_argument(
        "the identity cannot be conjugated to a vertex");

  Word conj;
  auto apply = [&](const Word& h) {
    conj = multiply(spec, h, conj);
    g = conjugate(spec, h, g);
  };
  auto one = [](int vertex, int elem) {
    Word h;
    h.syls.push_back({vertex, elem});
    return h;
  };
  auto head_elem_at = [](const HeadTail& ht, int x) {
    for (const Syllable& s : ht.head)
      if (s.vertex == x) return s.elem;
    throw std::logic_error("missing boundary syllable");
  };

  // Applies pulls, walks and strict cyclic reductions while they fire;
  // true means the postcondition holds.
  auto exact_moves = [&] {
    int cap = (int)g.size() + spec.vertices() + 8;
    for (int step = 0; step < cap; ++step) {
      HeadTail ht = head_tail(spec, g);
      if (ht.left == std::set<int>{target} &&
          ht.right == std::set<int>{target})
        return true;
      if (ht.left.size() == 1 && ht.left == ht.right) {
        int x = *ht.left.begin();
        detail::BfsTree tree = detail::complement_bfs(spec, target);
        std::vector<int> path = detail::tree_path_to_root(tree, target, x);
        Word d = one(target, detail::least_nontrivial(spec, target));
        for (size_t i = path.size(); i-- > 1;)
          d.syls.push_back(
              {path[i], detail::least_nontrivial(spec, path[i])});
        apply(d);
        continue;
      }
      int u = detail::full_pull_vertex(spec, ht, target);
      if (u != -1) {
        apply(one(u, detail::least_nontrivial(spec, u)));
        continue;
      }
      bool reduced = false;
      for (int x : ht.left) {
        if (!ht.right.count(x)) continue;
        Word h = one(x, spec.groups[x]->inv(head_elem_at(ht, x)));
        if (conjugate(spec, h, g).size() < g.size()) {
          apply(h);
          reduced = true;
          break;
        }
      }
      if (reduced) continue;
      return false;
    }
    return false;
  };

  if (exact_moves()) return conj;

  // Search for a conjugate that admits an exact move. Any conjugation
  // factors into single-syllable steps, so this explores the whole
  // conjugacy class in order of conjugator length.
  size_t max_len = g.size() + 4 * spec.vertices() + 8;
  std::map<std::string, std::pair<std::string, Syllable>> parent;
  std::deque<Word> frontier{g};
  parent[format_word(spec, g)] = {"", {-1, -1}};
  size_t expansions = 0;
  while (!frontier.empty() && parent.size() < 60000 && expansions < 60000) {
    Word w = frontier.front();
    frontier.pop_front();
    ++expansions;
    for (int v = 0; v < spec.vertices(); ++v) {
      const FiniteGroup& gv = *spec.groups[v];
      for (int e = 0; e < gv.n; ++e) {
        if (e == gv.id) continue;
        Word next = conjugate(spec, one(v, e), w);
        if (next.size() > max_len) continue;
        std::string key = format_word(spec, next);
        if (parent.count(key)) continue;
        parent[key] = {format_word(spec, w), {v, e}};
        HeadTail ht = head_tail(spec, next);
        bool final_state = ht.left == std::set<int>{target} &&
                           ht.right == std::set<int>{target};
        bool exact_ready =
            (ht.left.size() == 1 && ht.left == ht.right) ||
            detail::full_pull_vertex(spec, ht, target) != -1;
        if (final_state || exact_ready) {
          std::vector<Syllable> chain;
          for (std::string k = key; !k.empty();) {
            auto& pr = parent[k];
            if (pr.second.vertex < 0) break;
            chain.push_back(pr.second);
            k = pr.first;
          }
          for (auto it = chain.rbegin(); it != chain.rend(); ++it)
            apply(one(it->vertex, it->elem));
          if (!exact_moves())
            throw std::logic_error(
                "conjugator construction stalled after the search phase");
          return conj;
        }
        frontier.push_back(next);
      }
    }
  }
  throw std::logic_error("conjugator construction did not converge");
}

// ---------------------------------------------------------------------------
// Complement-connectivity classifier

enum class RcKind { Recognizes, Decomposable, OpenRacg };

inline const char* to_string(RcKind k) {
  switch (k) {
    case RcKind::Recognizes: return "recognizes";
    case RcKind::Decomposable: return "decomposable";
    case RcKind::OpenRacg: return "open-RACG";
  }
  return "?";
}

struct RcResult {
  RcKind kind = RcKind::OpenRacg;
  std::vector<int> part_x, part_y;  // complement bipartition when decomposable
  bool z2z2_special_case = false;
  std::string reason;
};

inline RcResult rc_classify(const std::vector<std::vector<char>>& adj,
                            const std::vector<int>& sizes) {
  int n = (int)sizes.size();
  if (n < 2)
    throw std::invalid_argument("graph product classifier needs at least two "
                                "vertices");
  if ((int)adj.size() != n)
    throw std::invalid_argument("adjacency size mismatch");
  for (int v = 0; v < n; ++v)
    if (sizes[v] < 2)
      throw std::invalid_argument("vertex groups must be nontrivial");

  RcResult r;
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v = 0; v < n; ++v)
      if (u != v && !adj[u][v] && !seen[v]) {
        seen[v] = 1;
        q.push(v);
      }
  }
  bool connected = true;
  for (int v = 0; v < n; ++v)
    if (!seen[v]) connected = false;
  if (!connected) {
    r.kind = RcKind::Decomposable;
    for (int v = 0; v < n; ++v)
      (seen[v] ? r.part_x : r.part_y).push_back(v);
    r.reason = "the complement graph is disconnected, so the product splits "
               "over the component bipartition";
    return r;
  }
  bool some_big = false;
  for (int v = 0; v < n; ++v)
    if (sizes[v] >= 3) some_big = true;
  if (some_big) {
    r.kind = RcKind::Recognizes;
    r.reason = "connected complement with a vertex group of at least three "
               "elements";
    return r;
  }
  bool null_pair = n == 2 && !adj[0][1];
  if (null_pair && sizes[0] == 2 && sizes[1] == 2) {
    r.kind = RcKind::Recognizes;
    r.z2z2_special_case = true;
    r.reason = "the free product of two groups of order two is settled "
               "directly";
    return r;
  }
  r.kind = RcKind::OpenRacg;
  r.reason = "connected complement with all vertex groups of order two: "
             "status open";
  return r;
}

inline RcResult rc_classify(const ProductSpec& spec) {
  std::vector<int> sizes;
  for (const auto& g : spec.groups) sizes.push_back(g->n);
  return rc_classify(spec.adj, sizes);
}

}  // namespace coordlens::graphprod
