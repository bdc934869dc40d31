// Command-line front end. One verb per analysis surface:
//   catalog   curated groups and structures
//   group     single-group analysis and verdict
//   criteria  recognition verdicts for classes of groups
//   reduced   reduced products, supports, and transfer checks
//   formula   parsing, fragment classification, equivalence testing
//   graph     graph products of finite groups
//   verify    named claim verifications
//
// Exit codes: 0 on success (or PASS), 1 when a check fails or a
// counterexample is found, 2 for usage and input errors.
// With --json, identical inputs produce byte-identical output.

#include <cstdio>
#include <iostream>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coordlens/catalog.hpp"
#include "coordlens/criteria.hpp"
#include "coordlens/graphprod.hpp"
#include "coordlens/groups.hpp"
#include "coordlens/json_io.hpp"
#include "coordlens/logic.hpp"
#include "coordlens/paperchecks.hpp"
#include "coordlens/reduced.hpp"

namespace {

using nlohmann::json;
namespace cat = coordlens::catalog;
namespace crit = coordlens::criteria;
namespace gp = coordlens::graphprod;
namespace grp = coordlens::groups;
namespace io = coordlens::jsonio;
namespace lg = coordlens::logic;
namespace pc = coordlens::paperchecks;
namespace red = coordlens::reduced;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<std::string> split_csv(const std::string& s) {
  return io::split_top_level(s);
}

void print_json(const json& payload) { std::cout << payload.dump(2) << "\n"; }

json envelope(const std::string& command) {
  json j;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// --- shared loaders --------------------------------------------------------

std::shared_ptr<const grp::FiniteGroup> load_group(const std::string& arg) {
  if (ends_with(arg, ".json"))
    return std::make_shared<const grp::FiniteGroup>(
        io::group_from_json(io::load_json_file(arg)));
  cat::CatalogEntry e = cat::build(arg);
  if (!e.group) throw std::invalid_argument(arg + " is not a group");
  return e.group;
}

std::shared_ptr<const lg::FiniteStructure> load_structure(const std::string& arg) {
  if (ends_with(arg, ".json")) {
    json j = io::load_json_file(arg);
    if (j.contains("signature"))
      return std::make_shared<const lg::FiniteStructure>(
          io::structure_from_json(j));
    return std::make_shared<const lg::FiniteStructure>(
        grp::as_structure(io::group_from_json(j)));
  }
  return std::make_shared<const lg::FiniteStructure>(
      cat::entry_structure(cat::build(arg)));
}

struct ReducedSetup {
  red::ReducedProduct rp;
  std::vector<std::string> factor_names;
};

ReducedSetup load_reduced(const std::string& factors_csv,
                          const std::string& ideal_text) {
  std::vector<std::shared_ptr<const lg::FiniteStructure>> factors;
  std::vector<std::string> names;
  for (const std::string& raw : split_csv(factors_csv)) {
    std::string name = raw;
    while (!name.empty() && name.front() == ' ') name.erase(name.begin());
    while (!name.empty() && name.back() == ' ') name.pop_back();
    if (name.empty()) throw std::invalid_argument("empty factor name");
    factors.push_back(load_structure(name));
    names.push_back(name);
  }
  if (factors.empty()) throw std::invalid_argument("no factors given");
  red::FiniteIdeal ideal = io::ideal_from_text((int)factors.size(), ideal_text);
  return {red::reduced_product(std::move(factors), std::move(ideal)),
          std::move(names)};
}

// Assignment text: 'x=(1 2),(1 2 3);y=e,e'. Values are product tuples given
// by per-factor labels; each resolves to a product class.
std::map<std::string, int> parse_assignment(const red::ReducedProduct& rp,
                                            const std::string& text) {
  std::map<std::string, int> out;
  if (text.empty()) return out;
  std::string cur;
  std::vector<std::string> parts;
  for (char c : text) {
    if (c == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  for (const std::string& p : parts) {
    size_t eq = p.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("assignment entry needs var=tuple: " + p);
    std::string var = p.substr(0, eq);
    while (!var.empty() && var.back() == ' ') var.pop_back();
    while (!var.empty() && var.front() == ' ') var.erase(var.begin());
    if (var.empty()) throw std::invalid_argument("assignment entry without variable");
    out[var] = rp.class_of(io::parse_tuple(rp.factors, p.substr(eq + 1)));
  }
  return out;
}

lg::Signature signature_by_name(const std::string& name) {
  if (name == "group") return lg::group_signature();
  if (name == "magma") return lg::magma_signature();
  if (name == "chain") return lg::chain_signature();
  if (name == "equality") return lg::equality_signature();
  throw std::invalid_argument("unknown signature: " + name +
                              " (group, magma, chain, equality)");
}

void flatten_derivation(const lg::HNode& node, const std::string& indent,
                        std::vector<std::string>& out) {
  out.push_back(indent + lg::detail::rule_name(node.rule) + ": " +
                lg::to_string(*node.at));
  for (const lg::HNode& kid : node.kids)
    flatten_derivation(kid, indent + "  ", out);
}

// --- catalog ---------------------------------------------------------------

int do_catalog_list(bool json_mode) {
  json out = envelope("catalog list");
  out["entries"] = json::array();
  for (const std::string& name : cat::curated_names()) {
    cat::CatalogEntry e = cat::build(name);
    int order = e.group ? e.group->n : e.structure->n;
    json row;
    row["name"] = e.name;
    row["kind"] = io::kind_name(e.kind);
    row["order"] = order;
    row["params"] = e.params;
    if (e.annotation) row["annotation"] = io::annotation_json(*e.annotation);
    out["entries"].push_back(row);
    if (!json_mode) {
      std::string line = e.name;
      line.resize(std::max<size_t>(line.size(), 7), ' ');
      line += std::string(" ") + io::kind_name(e.kind) + " of order " +
              std::to_string(order);
      if (e.annotation)
        line += ", expected " +
                std::string(cat::to_string(e.annotation->expected)) + " via " +
                e.annotation->basis + " [" + e.annotation->source + "]";
      std::cout << line << "\n";
    }
  }
  if (json_mode) print_json(out);
  return 0;
}

int do_catalog_show(const std::string& name, bool json_mode) {
  cat::CatalogEntry e = cat::build(name);
  json out = envelope("catalog show");
  out["name"] = e.name;
  out["kind"] = io::kind_name(e.kind);
  out["params"] = e.params;
  std::vector<std::string> lines;
  lines.push_back("name: " + e.name);
  lines.push_back("kind: " + std::string(io::kind_name(e.kind)));
  if (!e.params.empty()) lines.push_back("params: " + e.params);
  if (e.group) {
    const grp::FiniteGroup& g = *e.group;
    out["order"] = g.n;
    out["classes"] = (int)g.classes.size();
    out["center"] = (int)g.center.size();
    out["abelian"] = ((int)g.center.size() == g.n);
    lines.push_back("order: " + std::to_string(g.n));
    lines.push_back("conjugacy classes: " + std::to_string(g.classes.size()));
    lines.push_back("center size: " + std::to_string(g.center.size()));
    lines.push_back("abelian: " + yes_no((int)g.center.size() == g.n));
  } else {
    out["order"] = e.structure->n;
    lines.push_back("order: " + std::to_string(e.structure->n));
  }
  if (e.sym) {
    out["points"] = e.sym->points;
    lines.push_back("permutation view on " + std::to_string(e.sym->points) +
                    " points");
  }
  if (e.annotation) {
    out["annotation"] = io::annotation_json(*e.annotation);
    lines.push_back("expected: " +
                    std::string(cat::to_string(e.annotation->expected)) +
                    " via " + e.annotation->basis + " [" +
                    e.annotation->source + "]");
    if (!e.annotation->note.empty())
      lines.push_back("note: " + e.annotation->note);
  }
  if (json_mode)
    print_json(out);
  else
    for (const std::string& l : lines) std::cout << l << "\n";
  return 0;
}

// --- group -----------------------------------------------------------------

int do_group_analyze(const std::string& arg, long long bound, bool json_mode) {
  std::shared_ptr<const grp::FiniteGroup> g = load_group(arg);
  json out = envelope("group analyze");
  std::vector<std::string> lines;
  out["name"] = g->name;
  out["order"] = g->n;
  out["classes"] = (int)g->classes.size();
  out["center"] = (int)g->center.size();
  bool abelian = (int)g->center.size() == g->n;
  out["abelian"] = abelian;
  out["perfect"] = grp::is_perfect(*g);
  out["nilpotent"] = grp::is_nilpotent(*g);
  lines.push_back("group: " + g->name);
  lines.push_back("order: " + std::to_string(g->n));
  lines.push_back("conjugacy classes: " + std::to_string(g->classes.size()));
  lines.push_back("center size: " + std::to_string(g->center.size()));
  lines.push_back("abelian: " + yes_no(abelian));
  lines.push_back("perfect: " + yes_no(out["perfect"].get<bool>()));
  lines.push_back("nilpotent: " + yes_no(out["nilpotent"].get<bool>()));

  std::optional<grp::Decomposition> dec = grp::decompose(*g);
  if (dec) {
    out["decomposable"] = true;
    out["factor_orders"] = {(int)dec->left.size(), (int)dec->right.size()};
    lines.push_back("direct product: yes, factors of order " +
                    std::to_string(dec->left.size()) + " and " +
                    std::to_string(dec->right.size()));
  } else {
    out["decomposable"] = false;
    lines.push_back("direct product: no, indecomposable");
  }

  crit::ConjCentralizerResult cc = crit::crit_conj_centralizer(*g);
  if (cc.pass) {
    out["conjugacy_centralizer"] = "pass";
    lines.push_back("conjugacy-centralizer criterion: pass");
  } else {
    out["conjugacy_centralizer"] =
        "fails: class centralizer of " + g->labels[cc.failing_element] +
        " contains " + g->labels[cc.centralizer_witness];
    lines.push_back("conjugacy-centralizer criterion: fails (class "
                    "centralizer of " +
                    g->labels[cc.failing_element] + " contains " +
                    g->labels[cc.centralizer_witness] + ")");
  }

  crit::Verdict v = crit::group_verdict(g, bound);
  out["verdict"] = io::verdict_json(v);
  lines.push_back("verdict: " + std::string(crit::to_string(v.outcome)) +
                  " via " + v.basis);
  lines.push_back("reason: " + v.reason);
  for (const std::string& w : v.witnesses) lines.push_back("  witness: " + w);

  if (json_mode)
    print_json(out);
  else
    for (const std::string& l : lines) std::cout << l << "\n";
  return 0;
}

// --- criteria --------------------------------------------------------------

int do_criteria_verdict(const std::string& names_csv, long long bound,
                        bool json_mode) {
  std::vector<std::shared_ptr<const grp::FiniteGroup>> members;
  for (const std::string& name : split_csv(names_csv))
    members.push_back(load_group(name));
  crit::Verdict v = crit::class_verdict(members, bound);
  json out = envelope("criteria verdict");
  out["verdict"] = io::verdict_json(v);
  if (json_mode) {
    print_json(out);
  } else {
    std::cout << "class: {";
    for (size_t i = 0; i < v.groups.size(); ++i)
      std::cout << (i ? ", " : "") << v.groups[i];
    std::cout << "}\n";
    std::cout << "outcome: " << crit::to_string(v.outcome) << "\n";
    std::cout << "basis: " << v.basis << "\n";
    std::cout << "reason: " << v.reason << "\n";
    for (const std::string& w : v.witnesses)
      std::cout << "  witness: " << w << "\n";
  }
  return 0;
}

// --- reduced ---------------------------------------------------------------

int do_reduced_build(const std::string& factors, const std::string& ideal,
                     const std::string& supp_formula, const std::string& elem,
                     bool json_mode) {
  ReducedSetup s = load_reduced(factors, ideal);
  const red::ReducedProduct& rp = s.rp;
  json out = envelope("reduced build");
  out["factors"] = s.factor_names;
  out["k"] = rp.k();
  out["ideal_members"] = (int)rp.ideal.members.size();
  out["quotient_classes"] = rp.ba.class_count();
  out["quotient_atoms"] = (int)rp.ba.atoms().size();
  out["product_classes"] = rp.size();
  std::vector<std::string> lines;
  lines.push_back("factors: " + std::to_string(rp.k()));
  lines.push_back("ideal members: " + std::to_string(rp.ideal.members.size()));
  lines.push_back("index quotient: " + std::to_string(rp.ba.class_count()) +
                  " classes, " + std::to_string(rp.ba.atoms().size()) +
                  " atoms");
  lines.push_back("product classes: " + std::to_string(rp.size()));

  if (!supp_formula.empty()) {
    if (elem.empty())
      throw std::invalid_argument("--supp needs --elem to evaluate at");
    lg::FormulaPtr phi = lg::parse_formula(rp.structure.sig, supp_formula);
    std::set<std::string> fv = lg::free_vars(*phi);
    if (fv.size() != 1)
      throw std::invalid_argument("--supp formula must have exactly one free "
                                  "variable");
    int cls = rp.class_of(io::parse_tuple(rp.factors, elem));
    red::Mask m = red::supp_phi(rp, phi, {{*fv.begin(), cls}});
    out["supp"] = io::mask_set(m, rp.k());
    lines.push_back("supp = " + io::mask_set(m, rp.k()));
  }
  if (json_mode)
    print_json(out);
  else
    for (const std::string& l : lines) std::cout << l << "\n";
  return 0;
}

int do_reduced_eval(const std::string& factors, const std::string& ideal,
                    const std::string& formula, const std::string& assign,
                    bool json_mode) {
  ReducedSetup s = load_reduced(factors, ideal);
  lg::FormulaPtr phi = lg::parse_formula(s.rp.structure.sig, formula);
  std::map<std::string, int> a = parse_assignment(s.rp, assign);
  bool value = lg::eval(s.rp.structure, *phi, a);
  json out = envelope("reduced eval");
  out["formula"] = lg::to_string(*phi);
  out["value"] = value;
  if (json_mode)
    print_json(out);
  else
    std::cout << "value = " << (value ? "true" : "false") << "\n";
  return 0;
}

int do_reduced_supp(const std::string& factors, const std::string& ideal,
                    const std::string& formula, const std::string& assign,
                    bool json_mode) {
  ReducedSetup s = load_reduced(factors, ideal);
  lg::FormulaPtr phi = lg::parse_formula(s.rp.structure.sig, formula);
  std::map<std::string, int> a = parse_assignment(s.rp, assign);
  red::Mask m = red::supp_phi(s.rp, phi, a);
  json out = envelope("reduced supp");
  out["formula"] = lg::to_string(*phi);
  out["supp"] = io::mask_set(m, s.rp.k());
  if (json_mode)
    print_json(out);
  else
    std::cout << "supp = " << io::mask_set(m, s.rp.k()) << "\n";
  return 0;
}

int do_reduced_los(const std::string& factors, const std::string& ideal,
                   const std::string& formula, const std::string& assign,
                   bool json_mode) {
  ReducedSetup s = load_reduced(factors, ideal);
  lg::FormulaPtr phi = lg::parse_formula(s.rp.structure.sig, formula);
  std::map<std::string, int> a = parse_assignment(s.rp, assign);
  red::TransferReport r = red::los_check(s.rp, phi, a);
  json out = envelope("reduced los");
  out["formula"] = lg::to_string(*phi);
  out["report"] = io::transfer_json(r, s.rp.k());
  if (json_mode) {
    print_json(out);
  } else if (r.refused) {
    std::cout << "refused: " << r.refusal << "\n";
  } else {
    std::cout << "obligations: " << (r.obligations_ok ? "discharged" : "failed")
              << "\n";
    if (!r.obligations_ok)
      std::cout << "  " << r.obligation_failure << "\n";
    std::cout << "product side: " << (r.product_side ? "true" : "false") << "\n";
    std::cout << "ideal side: " << (r.ideal_side ? "true" : "false") << "\n";
    std::cout << "failure set: " << io::mask_set(r.failure_set, s.rp.k())
              << "\n";
    std::cout << "transfer: " << (r.agree ? "agree" : "DISAGREE") << "\n";
  }
  return (r.refused || !r.agree) ? 1 : 0;
}

// --- formula ---------------------------------------------------------------

int do_formula_parse(const std::string& sig_name, const std::string& text,
                     bool json_mode) {
  lg::Signature sig = signature_by_name(sig_name);
  lg::FormulaPtr phi = lg::parse_formula(sig, text);
  std::set<std::string> fv = lg::free_vars(*phi);
  json out = envelope("formula parse");
  out["formula"] = lg::to_string(*phi);
  out["free_vars"] = std::vector<std::string>(fv.begin(), fv.end());
  if (json_mode) {
    print_json(out);
  } else {
    std::cout << "parsed: " << lg::to_string(*phi) << "\n";
    std::cout << "free variables:";
    for (const std::string& v : fv) std::cout << " " << v;
    std::cout << "\n";
  }
  return 0;
}

int do_formula_classify(const std::string& sig_name, const std::string& text,
                        bool json_mode) {
  lg::Signature sig = signature_by_name(sig_name);
  lg::FormulaPtr phi = lg::parse_formula(sig, text);
  lg::HResult h = lg::classify_h(phi);
  json out = envelope("formula classify");
  out["formula"] = lg::to_string(*phi);
  out["is_h"] = h.is_h;
  std::vector<std::string> derivation;
  if (h.derivation) flatten_derivation(*h.derivation, "", derivation);
  out["derivation"] = derivation;
  std::vector<std::string> obligations;
  for (const lg::FormulaPtr& ob : h.obligations)
    obligations.push_back(lg::to_string(*ob));
  out["obligations"] = obligations;
  if (h.refusal) {
    out["refusal"] = h.refusal->reason;
    out["refusal_path"] = h.refusal->path;
  }
  if (json_mode) {
    print_json(out);
  } else {
    std::cout << "h-formula: " << yes_no(h.is_h) << "\n";
    for (const std::string& d : derivation) std::cout << "  " << d << "\n";
    for (const std::string& ob : obligations)
      std::cout << "obligation: " << ob << "\n";
    if (h.refusal)
      std::cout << "refusal: " << h.refusal->reason << " at "
                << h.refusal->path << "\n";
  }
  return h.is_h ? 0 : 1;
}

int do_formula_equiv(const std::string& on, const std::string& phi_text,
                     const std::string& psi_text, bool json_mode) {
  std::shared_ptr<const lg::FiniteStructure> m = load_structure(on);
  lg::FormulaPtr phi = lg::parse_formula(m->sig, phi_text);
  lg::FormulaPtr psi = lg::parse_formula(m->sig, psi_text);
  std::optional<lg::Counterexample> ce = lg::equivalent_in(*m, *phi, *psi);
  json out = envelope("formula equiv");
  out["phi"] = lg::to_string(*phi);
  out["psi"] = lg::to_string(*psi);
  out["equivalent"] = !ce.has_value();
  if (ce) {
    json a = json::object();
    for (const auto& [var, val] : ce->assignment) a[var] = m->labels[val];
    out["counterexample"] = a;
    out["phi_value"] = ce->phi_value;
  }
  if (json_mode) {
    print_json(out);
  } else if (!ce) {
    std::cout << "equivalent on " << m->n << " elements\n";
  } else {
    std::cout << "not equivalent; counterexample:";
    for (const auto& [var, val] : ce->assignment)
      std::cout << " " << var << "=" << m->labels[val];
    std::cout << " (phi " << (ce->phi_value ? "true" : "false") << ", psi "
              << (ce->phi_value ? "false" : "true") << ")\n";
  }
  return ce ? 1 : 0;
}

// --- graph -----------------------------------------------------------------

gp::ProductSpec load_graph(const std::string& path) {
  return io::graph_from_json(io::load_json_file(path));
}

int do_graph_classify(const std::string& path, bool json_mode) {
  gp::ProductSpec spec = load_graph(path);
  gp::RcResult r = gp::rc_classify(spec);
  json out = envelope("graph classify");
  out["kind"] = gp::to_string(r.kind);
  out["reason"] = r.reason;
  std::vector<std::string> px, py;
  for (int v : r.part_x) px.push_back(spec.vertex_names[v]);
  for (int v : r.part_y) py.push_back(spec.vertex_names[v]);
  out["part_x"] = px;
  out["part_y"] = py;
  out["z2z2_special_case"] = r.z2z2_special_case;
  if (json_mode) {
    print_json(out);
  } else {
    std::cout << "classification: " << gp::to_string(r.kind) << "\n";
    std::cout << "reason: " << r.reason << "\n";
    if (r.kind == gp::RcKind::Decomposable) {
      std::cout << "part X:";
      for (const std::string& v : px) std::cout << " " << v;
      std::cout << "\npart Y:";
      for (const std::string& v : py) std::cout << " " << v;
      std::cout << "\n";
    }
    if (r.z2z2_special_case)
      std::cout << "note: C2 x C2 special case\n";
  }
  return 0;
}

int do_graph_normal_form(const std::string& path, const std::string& word,
                         bool json_mode) {
  gp::ProductSpec spec = load_graph(path);
  gp::Word w = gp::parse_word(spec, word);
  gp::Word nf = gp::normal_form(spec, w);
  json out = envelope("graph normal-form");
  out["input"] = gp::format_word(spec, w);
  out["normal_form"] = gp::format_word(spec, nf);
  out["syllables"] = (int)nf.size();
  if (json_mode)
    print_json(out);
  else
    std::cout << gp::format_word(spec, nf) << "\n";
  return 0;
}

int do_graph_conjugate(const std::string& path, const std::string& word,
                       const std::string& target, bool json_mode) {
  gp::ProductSpec spec = load_graph(path);
  gp::Word w = gp::parse_word(spec, word);
  int t = spec.vertex_index(target);
  gp::Word h = gp::conjugate_to_vertex(spec, w, t);
  gp::Word moved = gp::conjugate(spec, h, w);
  json out = envelope("graph conjugate");
  out["input"] = gp::format_word(spec, w);
  out["target"] = target;
  out["conjugator"] = gp::format_word(spec, h);
  out["result"] = gp::format_word(spec, moved);
  if (json_mode) {
    print_json(out);
  } else {
    std::cout << "conjugator: " << gp::format_word(spec, h) << "\n";
    std::cout << "result: " << gp::format_word(spec, moved) << "\n";
  }
  return 0;
}

// --- verify ----------------------------------------------------------------

int do_verify(std::vector<std::string> names, bool all, const std::string& scale_name,
              bool json_mode) {
  std::optional<pc::Scale> parsed = pc::parse_scale(scale_name);
  if (!parsed)
    throw std::invalid_argument("unknown scale: " + scale_name + " (ci, full)");
  pc::Scale scale = *parsed;
  if (all || names.empty()) names = pc::check_names();
  std::vector<pc::CheckResult> results;
  for (const std::string& name : names) results.push_back(pc::run(name, scale));
  bool all_pass = true;
  for (const pc::CheckResult& r : results) all_pass = all_pass && r.pass;
  json out = envelope("verify");
  out["scale"] = pc::to_string(scale);
  out["results"] = json::array();
  for (const pc::CheckResult& r : results)
    out["results"].push_back(io::check_json(r));
  out["all_pass"] = all_pass;
  if (json_mode) {
    print_json(out);
  } else {
    for (const pc::CheckResult& r : results) {
      std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": "
                << r.claim << "\n";
      if (!r.pass) {
        for (const std::string& i : r.instances)
          if (i.find(": FAILED") != std::string::npos)
            std::cout << "  " << i << "\n";
        for (const std::string& c : r.counterexamples)
          std::cout << "  counterexample: " << c << "\n";
      }
      for (const std::string& n : r.notes) std::cout << "  note: " << n << "\n";
    }
    size_t passed = 0;
    for (const pc::CheckResult& r : results) passed += r.pass ? 1 : 0;
    std::cout << passed << "/" << results.size() << " checks passed\n";
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coordlens: finite model theory and group recognition toolkit"};
  app.require_subcommand(1);
  bool json_mode = false;
  app.add_flag("--json", json_mode, "emit a versioned JSON report");

  // catalog
  CLI::App* catalog = app.add_subcommand("catalog", "curated groups and structures");
  catalog->require_subcommand(1);
  CLI::App* cat_list = catalog->add_subcommand("list", "list curated entries");
  std::string cat_name;
  CLI::App* cat_show = catalog->add_subcommand("show", "show one entry");
  cat_show->add_option("name", cat_name, "catalog entry name")->required();

  // group
  CLI::App* group = app.add_subcommand("group", "single-group analysis");
  group->require_subcommand(1);
  CLI::App* analyze = group->add_subcommand("analyze", "invariants and verdict");
  std::string group_arg;
  long long group_bound = 60000;
  analyze->add_option("group", group_arg, "catalog name or group .json file")
      ->required();
  analyze->add_option("--bound", group_bound, "verdict budget in milliseconds");

  // criteria
  CLI::App* criteria = app.add_subcommand("criteria", "recognition verdicts");
  criteria->require_subcommand(1);
  CLI::App* verdict = criteria->add_subcommand("verdict", "verdict for a class");
  std::string verdict_names;
  long long verdict_bound = 60000;
  verdict->add_option("names", verdict_names,
                      "comma-separated catalog names or .json files, one class")
      ->required();
  verdict->add_option("--bound", verdict_bound, "budget per group in milliseconds");

  // reduced
  CLI::App* reduced = app.add_subcommand("reduced", "reduced products");
  reduced->require_subcommand(1);
  std::string rb_factors, rb_ideal = "{}", rb_supp, rb_elem;
  CLI::App* rbuild = reduced->add_subcommand("build", "build and summarize");
  rbuild->add_option("--factors", rb_factors, "comma-separated factors")->required();
  rbuild->add_option("--ideal", rb_ideal, "ideal in set notation, default {}");
  rbuild->add_option("--supp", rb_supp, "one-free-variable formula for a support");
  rbuild->add_option("--elem", rb_elem, "product element as per-factor labels");
  std::string re_factors, re_ideal = "{}", re_formula, re_assign;
  CLI::App* reval = reduced->add_subcommand("eval", "evaluate a formula");
  reval->add_option("--factors", re_factors, "comma-separated factors")->required();
  reval->add_option("--ideal", re_ideal, "ideal in set notation, default {}");
  reval->add_option("--formula", re_formula, "formula over the factor signature")
      ->required();
  reval->add_option("--assign", re_assign, "assignment 'x=l1,l2;y=l1,l2'");
  std::string rs_factors, rs_ideal = "{}", rs_formula, rs_assign;
  CLI::App* rsupp = reduced->add_subcommand("supp", "support of a formula");
  rsupp->add_option("--factors", rs_factors, "comma-separated factors")->required();
  rsupp->add_option("--ideal", rs_ideal, "ideal in set notation, default {}");
  rsupp->add_option("--formula", rs_formula, "formula over the factor signature")
      ->required();
  rsupp->add_option("--assign", rs_assign, "assignment 'x=l1,l2;y=l1,l2'");
  std::string rl_factors, rl_ideal = "{}", rl_formula, rl_assign;
  CLI::App* rlos = reduced->add_subcommand("los", "transfer agreement check");
  rlos->add_option("--factors", rl_factors, "comma-separated factors")->required();
  rlos->add_option("--ideal", rl_ideal, "ideal in set notation, default {}");
  rlos->add_option("--formula", rl_formula, "formula over the factor signature")
      ->required();
  rlos->add_option("--assign", rl_assign, "assignment 'x=l1,l2;y=l1,l2'");

  // formula
  CLI::App* formula = app.add_subcommand("formula", "formula utilities");
  formula->require_subcommand(1);
  std::string fp_sig = "group", fp_text;
  CLI::App* fparse = formula->add_subcommand("parse", "parse and print");
  fparse->add_option("--sig", fp_sig, "signature: group, magma, chain, equality");
  fparse->add_option("formula", fp_text, "formula text")->required();
  std::string fc_sig = "group", fc_text;
  CLI::App* fclassify = formula->add_subcommand("classify", "fragment membership");
  fclassify->add_option("--sig", fc_sig, "signature: group, magma, chain, equality");
  fclassify->add_option("formula", fc_text, "formula text")->required();
  std::string fe_on, fe_phi, fe_psi;
  CLI::App* fequiv = formula->add_subcommand("equiv", "equivalence on a structure");
  fequiv->add_option("--on", fe_on, "catalog name or structure .json file")
      ->required();
  fequiv->add_option("phi", fe_phi, "first formula")->required();
  fequiv->add_option("psi", fe_psi, "second formula")->required();

  // graph
  CLI::App* graph = app.add_subcommand("graph", "graph products");
  graph->require_subcommand(1);
  std::string gc_graph;
  CLI::App* gclassify = graph->add_subcommand("classify", "recognition class");
  gclassify->add_option("--graph", gc_graph, "graph .json file")->required();
  std::string gn_graph, gn_word;
  CLI::App* gnormal = graph->add_subcommand("normal-form", "normalize a word");
  gnormal->add_option("--graph", gn_graph, "graph .json file")->required();
  gnormal->add_option("--word", gn_word, "word as 'vertex:label ...'")->required();
  std::string gj_graph, gj_word, gj_target;
  CLI::App* gconj = graph->add_subcommand("conjugate", "move a word to a vertex");
  gconj->add_option("--graph", gj_graph, "graph .json file")->required();
  gconj->add_option("--word", gj_word, "word as 'vertex:label ...'")->required();
  gconj->add_option("--target", gj_target, "target vertex name")->required();

  // verify
  CLI::App* verify = app.add_subcommand("verify", "run named verifications");
  std::vector<std::string> verify_names;
  bool verify_all = false;
  std::string verify_scale = "ci";
  verify->add_option("names", verify_names, "check names, default all");
  verify->add_flag("--all", verify_all, "run every check");
  verify->add_option("--scale", verify_scale, "ci or full");

  // lets the top-level --json flag appear after any subcommand
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    a->fallthrough();
    for (CLI::App* s : a->get_subcommands([](const CLI::App*) { return true; }))
      enable_fallthrough(s);
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (catalog->parsed()) {
      if (cat_list->parsed()) return do_catalog_list(json_mode);
      if (cat_show->parsed()) return do_catalog_show(cat_name, json_mode);
    }
    if (group->parsed() && analyze->parsed())
      return do_group_analyze(group_arg, group_bound, json_mode);
    if (criteria->parsed() && verdict->parsed())
      return do_criteria_verdict(verdict_names, verdict_bound, json_mode);
    if (reduced->parsed()) {
      if (rbuild->parsed())
        return do_reduced_build(rb_factors, rb_ideal, rb_supp, rb_elem, json_mode);
      if (reval->parsed())
        return do_reduced_eval(re_factors, re_ideal, re_formula, re_assign,
                               json_mode);
      if (rsupp->parsed())
        return do_reduced_supp(rs_factors, rs_ideal, rs_formula, rs_assign,
                               json_mode);
      if (rlos->parsed())
        return do_reduced_los(rl_factors, rl_ideal, rl_formula, rl_assign,
                              json_mode);
    }
    if (formula->parsed()) {
      if (fparse->parsed()) return do_formula_parse(fp_sig, fp_text, json_mode);
      if (fclassify->parsed())
        return do_formula_classify(fc_sig, fc_text, json_mode);
      if (fequiv->parsed())
        return do_formula_equiv(fe_on, fe_phi, fe_psi, json_mode);
    }
    if (graph->parsed()) {
      if (gclassify->parsed()) return do_graph_classify(gc_graph, json_mode);
      if (gnormal->parsed())
        return do_graph_normal_form(gn_graph, gn_word, json_mode);
      if (gconj->parsed())
        return do_graph_conjugate(gj_graph, gj_word, gj_target, json_mode);
    }
    if (verify->parsed())
      return do_verify(verify_names, verify_all, verify_scale, json_mode);
  } catch (const coordlens::logic::ParseError& e) {
    std::cerr << "input error: parse: " << e.what() << " (at position "
              << e.pos << ")\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "input error: no verb given\n";
  return 2;
}
