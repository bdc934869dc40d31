#pragma once

// Input loaders (JSON group/structure/graph files, ideal and tuple notation)
// and JSON report emitters shared by the command-line tool.

#include <cctype>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "coordlens/catalog.hpp"
#include "coordlens/criteria.hpp"
#include "coordlens/graphprod.hpp"
#include "coordlens/groups.hpp"
#include "coordlens/logic.hpp"
#include "coordlens/paperchecks.hpp"
#include "coordlens/reduced.hpp"

namespace coordlens::jsonio {

using nlohmann::json;

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("file not found: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("parse: " + path + ": " + e.what());
  }
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw std::invalid_argument(std::string("missing field: ") + key);
  return j.at(key);
}

// Group file: {"name": str, "labels": [str...], "table": [[int...]...]}.
// The table may also be flat (n*n entries, row-major). Entries are element
// indices into the label list; labels are accepted too.
inline groups::FiniteGroup group_from_json(const json& j) {
  std::string name = field(j, "name").get<std::string>();
  auto labels = field(j, "labels").get<std::vector<std::string>>();
  int n = (int)labels.size();
  auto resolve = [&](const json& v) -> int32_t {
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      for (int i = 0; i < n; ++i)
        if (labels[i] == s) return i;
      throw std::invalid_argument(name + ": unknown element label " + s);
    }
    if (!v.is_number_integer())
      throw std::invalid_argument(name + ": table entries must be indices or labels");
    return v.get<int32_t>();
  };
  const json& t = field(j, "table");
  if (!t.is_array() || t.empty())
    throw std::invalid_argument(name + ": table must be a nonempty array");
  std::vector<int32_t> table;
  table.reserve((size_t)n * n);
  if (t[0].is_array()) {
    if ((int)t.size() != n)
      throw std::invalid_argument(name + ": table needs one row per element");
    for (const json& row : t) {
      if ((int)row.size() != n)
        throw std::invalid_argument(name + ": table row length must equal order");
      for (const json& v : row) table.push_back(resolve(v));
    }
  } else {
    for (const json& v : t) table.push_back(resolve(v));
  }
  return groups::make_group(name, std::move(labels), std::move(table));
}

// Structure file:
//   {"labels": [...],
//    "signature": {"relations": [{"name","arity"}...],
//                  "functions": [{"name","arity"}...],
//                  "constants": [str...]},
//    "functions": {name: [flat row-major table]},
//    "relations": {name: [[tuple]...]},
//    "constants": {name: label-or-index}}
inline logic::FiniteStructure structure_from_json(const json& j) {
  auto labels = field(j, "labels").get<std::vector<std::string>>();
  logic::Signature sig;
  const json& s = field(j, "signature");
  if (s.contains("relations"))
    for (const json& r : s.at("relations"))
      sig.relations.push_back({field(r, "name").get<std::string>(),
                               field(r, "arity").get<int>()});
  if (s.contains("functions"))
    for (const json& f : s.at("functions"))
      sig.functions.push_back({field(f, "name").get<std::string>(),
                               field(f, "arity").get<int>()});
  if (s.contains("constants"))
    sig.constants = s.at("constants").get<std::vector<std::string>>();

  logic::FiniteStructure m = logic::make_structure(sig, labels);
  auto resolve = [&](const json& v) -> int {
    if (v.is_string()) return m.index_of_label(v.get<std::string>());
    if (!v.is_number_integer())
      throw std::invalid_argument("structure entries must be indices or labels");
    return v.get<int>();
  };
  if (j.contains("functions"))
    for (const auto& [name, tbl] : j.at("functions").items()) {
      std::vector<int32_t> table;
      for (const json& v : tbl) table.push_back((int32_t)resolve(v));
      logic::set_function_table(m, name, std::move(table));
    }
  if (j.contains("relations"))
    for (const auto& [name, tuples] : j.at("relations").items())
      for (const json& tup : tuples) {
        std::vector<int> t;
        for (const json& v : tup) t.push_back(resolve(v));
        logic::add_relation_tuple(m, name, t);
      }
  if (j.contains("constants"))
    for (const auto& [name, v] : j.at("constants").items())
      logic::set_constant(m, name, resolve(v));
  return m;
}

// A factor or vertex group: a curated catalog name, or an inline group object.
inline std::shared_ptr<const groups::FiniteGroup> group_ref(const json& v) {
  if (v.is_string()) {
    catalog::CatalogEntry e = catalog::build(v.get<std::string>());
    if (!e.group)
      throw std::invalid_argument(e.name + " is not a group");
    return e.group;
  }
  return std::make_shared<const groups::FiniteGroup>(group_from_json(v));
}

// Graph file: {"vertices": [{"name": str, "group": name-or-object}...],
//              "edges": [[name, name]...]}. Edges mean the vertex groups
// commute with each other.
inline graphprod::ProductSpec graph_from_json(const json& j) {
  std::vector<std::shared_ptr<const groups::FiniteGroup>> gs;
  std::vector<std::string> names;
  for (const json& v : field(j, "vertices")) {
    names.push_back(field(v, "name").get<std::string>());
    gs.push_back(group_ref(field(v, "group")));
  }
  auto vertex = [&](const json& v) -> int {
    std::string name = v.get<std::string>();
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return (int)i;
    throw std::invalid_argument("unknown vertex: " + name);
  };
  std::vector<std::pair<int, int>> edges;
  for (const json& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("each edge must name two vertices");
    edges.emplace_back(vertex(e[0]), vertex(e[1]));
  }
  return graphprod::make_product_spec(std::move(gs), edges, std::move(names));
}

// Splits on commas that are not nested inside parentheses or brackets.
inline std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

inline std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace((unsigned char)c)) out += c;
  return out;
}

// Resolves an element label against a label list. Exact match first; then a
// space-insensitive match, so "(12)" finds the cycle label "(1 2)".
inline int resolve_label(const std::vector<std::string>& labels,
                         const std::string& token, const std::string& where) {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == token) return (int)i;
  const std::string want = strip_spaces(token);
  int found = -1;
  for (size_t i = 0; i < labels.size(); ++i)
    if (strip_spaces(labels[i]) == want) {
      if (found >= 0)
        throw std::invalid_argument(where + ": ambiguous element label " + token);
      found = (int)i;
    }
  if (found < 0)
    throw std::invalid_argument(where + ": unknown element label " + token);
  return found;
}

// Comma-separated per-factor labels naming one element of a product.
inline std::vector<int> parse_tuple(
    const std::vector<std::shared_ptr<const logic::FiniteStructure>>& factors,
    const std::string& text) {
  std::vector<std::string> parts = split_top_level(text);
  if (parts.size() != factors.size())
    throw std::invalid_argument("tuple has " + std::to_string(parts.size()) +
                                " components, expected " +
                                std::to_string(factors.size()));
  std::vector<int> out;
  for (size_t i = 0; i < parts.size(); ++i) {
    std::string tok = parts[i];
    while (!tok.empty() && std::isspace((unsigned char)tok.front())) tok.erase(tok.begin());
    while (!tok.empty() && std::isspace((unsigned char)tok.back())) tok.pop_back();
    out.push_back(resolve_label(factors[i]->labels, tok,
                                "factor " + std::to_string(i)));
  }
  return out;
}

// Ideal notation over factor indices: '{}' is the trivial ideal, '{0}' and
// '{0,2}' list singleton generators, '{{0,1}}' gives a two-index generator,
// and the forms mix: '{0,{1,2}}'.
inline reduced::FiniteIdeal ideal_from_text(int k, const std::string& text) {
  const std::string s = strip_spaces(text);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw std::invalid_argument("ideal must be set notation, e.g. {} or {0,{1,2}}");
  const std::string body = s.substr(1, s.size() - 2);
  std::vector<reduced::Mask> gens;
  auto index_bit = [&](const std::string& t) -> reduced::Mask {
    size_t used = 0;
    int i = 0;
    try {
      i = std::stoi(t, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("ideal: bad index " + t);
    }
    if (used != t.size()) throw std::invalid_argument("ideal: bad index " + t);
    if (i < 0 || i >= k)
      throw std::invalid_argument("ideal: index " + t + " outside 0.." +
                                  std::to_string(k - 1));
    return reduced::Mask(1) << i;
  };
  if (!body.empty())
    for (const std::string& item : split_top_level(body)) {
      if (item.empty()) throw std::invalid_argument("ideal: empty item");
      if (item.front() == '{') {
        if (item.back() != '}')
          throw std::invalid_argument("ideal: unbalanced braces in " + item);
        reduced::Mask m = 0;
        const std::string inner = item.substr(1, item.size() - 2);
        if (!inner.empty())
          for (const std::string& ix : split_top_level(inner)) m |= index_bit(ix);
        gens.push_back(m);
      } else {
        gens.push_back(index_bit(item));
      }
    }
  reduced::FiniteIdeal ideal = reduced::make_ideal(k, gens);
  if (!ideal.is_proper())
    throw std::invalid_argument("ideal is not proper: it contains the full index set");
  return ideal;
}

// Formats a support class as its representative index set, e.g. "{0, 2}".
inline std::string mask_set(reduced::Mask m, int k) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < k; ++i)
    if (m & (reduced::Mask(1) << i)) {
      if (!first) out += ", ";
      out += std::to_string(i);
      first = false;
    }
  return out + "}";
}

// --- report emitters -------------------------------------------------------
// Timing fields are deliberately omitted so that identical inputs produce
// byte-identical output.

inline const char* kind_name(catalog::ObjectKind k) {
  switch (k) {
    case catalog::ObjectKind::Group: return "group";
    case catalog::ObjectKind::Magma: return "magma";
    case catalog::ObjectKind::Chain: return "chain";
  }
  return "?";
}

inline json annotation_json(const catalog::Annotation& a) {
  json j;
  j["expected"] = catalog::to_string(a.expected);
  j["basis"] = a.basis;
  j["source"] = a.source;
  if (!a.note.empty()) j["note"] = a.note;
  return j;
}

inline json verdict_json(const criteria::Verdict& v) {
  json j;
  j["groups"] = v.groups;
  j["outcome"] = criteria::to_string(v.outcome);
  j["basis"] = v.basis;
  j["reason"] = v.reason;
  j["witnesses"] = v.witnesses;
  return j;
}

inline json check_json(const paperchecks::CheckResult& r) {
  json j;
  j["name"] = r.name;
  j["claim"] = r.claim;
  j["pass"] = r.pass;
  j["instances"] = r.instances;
  j["counterexamples"] = r.counterexamples;
  j["notes"] = r.notes;
  return j;
}

inline json transfer_json(const reduced::TransferReport& r, int k) {
  json j;
  j["refused"] = r.refused;
  if (r.refused) {
    j["refusal"] = r.refusal;
    return j;
  }
  j["obligations_ok"] = r.obligations_ok;
  if (!r.obligations_ok) j["obligation_failure"] = r.obligation_failure;
  j["product_side"] = r.product_side;
  j["ideal_side"] = r.ideal_side;
  j["failure_set"] = mask_set(r.failure_set, k);
  j["agree"] = r.agree;
  return j;
}

}  // namespace coordlens::jsonio
