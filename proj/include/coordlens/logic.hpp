#pragma once

// First-order terms and formulas over finite structures: a small DSL parser,
// a short-circuit evaluator, and the h-fragment classifier used by the
// reduced-product transfer checks.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace coordlens::logic {

struct Signature {
  struct Sym {
    std::string name;
    int arity = 0;
  };
  std::vector<Sym> relations;
  std::vector<Sym> functions;
  std::vector<std::string> constants;

  int relation_index(const std::string& name) const {
    for (size_t i = 0; i < relations.size(); ++i)
      if (relations[i].name == name) return (int)i;
    return -1;
  }
  int function_index(const std::string& name) const {
    for (size_t i = 0; i < functions.size(); ++i)
      if (functions[i].name == name) return (int)i;
    return -1;
  }
  int constant_index(const std::string& name) const {
    for (size_t i = 0; i < constants.size(); ++i)
      if (constants[i] == name) return (int)i;
    return -1;
  }
  bool has_symbol(const std::string& name) const {
    return relation_index(name) >= 0 || function_index(name) >= 0 ||
           constant_index(name) >= 0;
  }
};

inline Signature group_signature() {
  Signature s;
  s.functions = {{"*", 2}, {"inv", 1}};
  s.constants = {"e"};
  return s;
}

inline Signature magma_signature() {
  Signature s;
  s.functions = {{"*", 2}};
  return s;
}

inline Signature chain_signature() {
  Signature s;
  s.relations = {{"Leq", 2}};
  return s;
}

inline Signature equality_signature() { return Signature{}; }

// Dense finite structure. Function tables are row-major over universe
// indices; relations are tuple sets with an O(1) packed-key lookup.
struct FiniteStructure {
  struct Func {
    int arity = 0;
    std::vector<int32_t> table;  // size n^arity
  };
  struct Rel {
    int arity = 0;
    std::vector<std::vector<int>> tuples;
    std::unordered_set<uint64_t> keys;
  };

  Signature sig;
  int n = 0;
  std::vector<std::string> labels;
  std::vector<Func> functions;
  std::vector<Rel> relations;
  std::vector<int> constants;
  std::unordered_map<std::string, int> label_index;

  uint64_t pack(const std::vector<int>& tuple) const {
    uint64_t key = 0;
    for (int v : tuple) key = key * (uint64_t)n + (uint64_t)v;
    return key;
  }
  bool rel_holds(int r, const std::vector<int>& tuple) const {
    return relations[r].keys.count(pack(tuple)) > 0;
  }
  int func_apply(int f, const std::vector<int>& args) const {
    const Func& fn = functions[f];
    size_t idx = 0;
    for (int a : args) idx = idx * (size_t)n + (size_t)a;
    return fn.table[idx];
  }
  int index_of_label(const std::string& lbl) const {
    auto it = label_index.find(lbl);
    if (it == label_index.end())
      throw std::invalid_argument("unknown element label: " + lbl);
    return it->second;
  }
  // Fullness: every relation nonempty; predicates aside, a structure with at
  // least 3 elements qualifies (purely functional languages trivially do).
  bool nonempty_relations() const {
    for (const Rel& r : relations)
      if (r.tuples.empty()) return false;
    return true;
  }
  bool is_full() const { return n >= 3 && nonempty_relations(); }
};

inline FiniteStructure make_structure(Signature sig,
                                      std::vector<std::string> labels) {
  FiniteStructure m;
  m.sig = std::move(sig);
  m.labels = std::move(labels);
  m.n = (int)m.labels.size();
  if (m.n <= 0) throw std::invalid_argument("structure needs a nonempty universe");
  m.functions.resize(m.sig.functions.size());
  m.relations.resize(m.sig.relations.size());
  m.constants.assign(m.sig.constants.size(), -1);
  for (int i = 0; i < m.n; ++i) m.label_index.emplace(m.labels[i], i);
  return m;
}

inline void set_function_table(FiniteStructure& m, const std::string& name,
                               std::vector<int32_t> table) {
  int f = m.sig.function_index(name);
  if (f < 0) throw std::invalid_argument("no such function: " + name);
  size_t want = 1;
  for (int i = 0; i < m.sig.functions[f].arity; ++i) want *= (size_t)m.n;
  if (table.size() != want)
    throw std::invalid_argument("bad table size for " + name);
  for (int32_t v : table)
    if (v < 0 || v >= m.n) throw std::invalid_argument("table value out of range");
  m.functions[f].arity = m.sig.functions[f].arity;
  m.functions[f].table = std::move(table);
}

inline void add_relation_tuple(FiniteStructure& m, const std::string& name,
                               std::vector<int> tuple) {
  int r = m.sig.relation_index(name);
  if (r < 0) throw std::invalid_argument("no such relation: " + name);
  if ((int)tuple.size() != m.sig.relations[r].arity)
    throw std::invalid_argument("tuple arity mismatch for " + name);
  for (int v : tuple)
    if (v < 0 || v >= m.n) throw std::invalid_argument("tuple value out of range");
  m.relations[r].arity = m.sig.relations[r].arity;
  uint64_t key = m.pack(tuple);
  if (m.relations[r].keys.insert(key).second)
    m.relations[r].tuples.push_back(std::move(tuple));
}

inline void set_constant(FiniteStructure& m, const std::string& name, int v) {
  int c = m.sig.constant_index(name);
  if (c < 0) throw std::invalid_argument("no such constant: " + name);
  if (v < 0 || v >= m.n) throw std::invalid_argument("constant out of range");
  m.constants[c] = v;
}

// ---------------------------------------------------------------------------
// AST

struct Term {
  enum class Kind { Var, Const, App };
  Kind kind = Kind::Var;
  std::string name;
  int sym = -1;  // signature index for Const/App
  std::vector<Term> args;
};

inline Term t_var(std::string name) {
  Term t;
  t.kind = Term::Kind::Var;
  t.name = std::move(name);
  return t;
}

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { Atom, Eq, Not, And, Or, Implies, Iff, Forall, Exists };
  Kind kind = Kind::Eq;
  std::string rel;  // Atom
  int rel_sym = -1;
  std::vector<Term> args;  // Atom args; Eq lhs/rhs
  FormulaPtr lhs, rhs;     // connectives (Not uses lhs)
  std::string var;         // quantifiers
  FormulaPtr body;
};

inline FormulaPtr mk_eq(Term a, Term b) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Eq;
  f->args = {std::move(a), std::move(b)};
  return f;
}
inline FormulaPtr mk_atom(std::string rel, int sym, std::vector<Term> args) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Atom;
  f->rel = std::move(rel);
  f->rel_sym = sym;
  f->args = std::move(args);
  return f;
}
inline FormulaPtr mk_unary(Formula::Kind k, FormulaPtr a) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->lhs = std::move(a);
  return f;
}
inline FormulaPtr mk_bin(Formula::Kind k, FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}
inline FormulaPtr mk_not(FormulaPtr a) { return mk_unary(Formula::Kind::Not, std::move(a)); }
inline FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) { return mk_bin(Formula::Kind::And, std::move(a), std::move(b)); }
inline FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) { return mk_bin(Formula::Kind::Or, std::move(a), std::move(b)); }
inline FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) { return mk_bin(Formula::Kind::Implies, std::move(a), std::move(b)); }
inline FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b) { return mk_bin(Formula::Kind::Iff, std::move(a), std::move(b)); }
inline FormulaPtr mk_quant(Formula::Kind k, std::string var, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->var = std::move(var);
  f->body = std::move(body);
  return f;
}
inline FormulaPtr mk_forall(std::string v, FormulaPtr b) { return mk_quant(Formula::Kind::Forall, std::move(v), std::move(b)); }
inline FormulaPtr mk_exists(std::string v, FormulaPtr b) { return mk_quant(Formula::Kind::Exists, std::move(v), std::move(b)); }

inline void term_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Var)
    out.insert(t.name);
  else
    for (const Term& a : t.args) term_vars(a, out);
}

inline void collect_free(const Formula& f, std::set<std::string>& bound,
                         std::set<std::string>& out) {
  switch (f.kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::Eq: {
      std::set<std::string> vs;
      for (const Term& t : f.args) term_vars(t, vs);
      for (const std::string& v : vs)
        if (!bound.count(v)) out.insert(v);
      break;
    }
    case Formula::Kind::Not:
      collect_free(*f.lhs, bound, out);
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      collect_free(*f.lhs, bound, out);
      collect_free(*f.rhs, bound, out);
      break;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool fresh = bound.insert(f.var).second;
      collect_free(*f.body, bound, out);
      if (fresh) bound.erase(f.var);
      break;
    }
  }
}

inline std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

struct ParseError : std::runtime_error {
  enum class Kind { Lexical, UnknownSymbol, Arity, Syntax };
  Kind kind;
  size_t pos;
  ParseError(Kind k, size_t p, const std::string& msg)
      : std::runtime_error(msg), kind(k), pos(p) {}
};

namespace detail {

struct Token {
  enum class Kind { Ident, Star, Eq, Bang, Amp, Pipe, Arrow, Iff, LParen, RParen, Comma, End };
  Kind kind;
  std::string text;
  size_t pos;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  size_t i = 0;
  auto push = [&](Token::Kind k, std::string t, size_t p) {
    out.push_back({k, std::move(t), p});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') { ++i; continue; }
    if (c == '(') { push(Token::Kind::LParen, "(", i); ++i; continue; }
    if (c == ')') { push(Token::Kind::RParen, ")", i); ++i; continue; }
    if (c == ',') { push(Token::Kind::Comma, ",", i); ++i; continue; }
    if (c == '=') { push(Token::Kind::Eq, "=", i); ++i; continue; }
    if (c == '!') { push(Token::Kind::Bang, "!", i); ++i; continue; }
    if (c == '&') { push(Token::Kind::Amp, "&", i); ++i; continue; }
    if (c == '|') { push(Token::Kind::Pipe, "|", i); ++i; continue; }
    if (c == '*') {
      if (i + 1 < src.size() && src[i + 1] == '*')
        throw ParseError(ParseError::Kind::Lexical, i, "invalid operator '**'");
      push(Token::Kind::Star, "*", i); ++i; continue;
    }
    if (c == '-') {
      if (i + 1 < src.size() && src[i + 1] == '>') {
        push(Token::Kind::Arrow, "->", i); i += 2; continue;
      }
      throw ParseError(ParseError::Kind::Lexical, i, "stray '-'");
    }
    if (c == '<') {
      if (i + 2 < src.size() && src[i + 1] == '-' && src[i + 2] == '>') {
        push(Token::Kind::Iff, "<->", i); i += 3; continue;
      }
      throw ParseError(ParseError::Kind::Lexical, i, "stray '<'");
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum((unsigned char)src[j]) || src[j] == '_'))
        ++j;
      push(Token::Kind::Ident, src.substr(i, j - i), i);
      i = j;
      continue;
    }
    throw ParseError(ParseError::Kind::Lexical, i,
                     std::string("unexpected character '") + c + "'");
  }
  push(Token::Kind::End, "", src.size());
  return out;
}

inline bool valid_var_name(const std::string& s) {
  if (s.empty() || !std::islower((unsigned char)s[0])) return false;
  for (char c : s)
    if (!std::isalnum((unsigned char)c) && c != '_') return false;
  return true;
}

class Parser {
 public:
  Parser(const Signature& sig, const std::string& src)
      : sig_(sig), toks_(lex(src)) {}

  FormulaPtr parse() {
    FormulaPtr f = formula();
    expect(Token::Kind::End, "trailing input after formula");
    return f;
  }

 private:
  const Signature& sig_;
  std::vector<Token> toks_;
  size_t p_ = 0;

  const Token& cur() const { return toks_[p_]; }
  const Token& peek(size_t k) const {
    return toks_[std::min(p_ + k, toks_.size() - 1)];
  }
  void advance() { if (p_ + 1 < toks_.size()) ++p_; }
  [[noreturn]] void fail(ParseError::Kind k, const std::string& msg) const {
    throw ParseError(k, cur().pos, msg);
  }
  void expect(Token::Kind k, const std::string& msg) {
    if (cur().kind != k) fail(ParseError::Kind::Syntax, msg);
    advance();
  }

  bool at_quantifier() const {
    return cur().kind == Token::Kind::LParen &&
           peek(1).kind == Token::Kind::Ident &&
           (peek(1).text == "A" || peek(1).text == "E") &&
           peek(2).kind == Token::Kind::Ident &&
           peek(3).kind == Token::Kind::RParen;
  }

  FormulaPtr formula() { return iff(); }

  FormulaPtr iff() {
    FormulaPtr f = impl();
    while (cur().kind == Token::Kind::Iff) {
      advance();
      f = mk_iff(f, impl());
    }
    return f;
  }

  FormulaPtr impl() {  // right associative
    FormulaPtr f = disj();
    if (cur().kind == Token::Kind::Arrow) {
      advance();
      return mk_implies(f, impl());
    }
    return f;
  }

  FormulaPtr disj() {
    FormulaPtr f = conj();
    while (cur().kind == Token::Kind::Pipe) {
      advance();
      f = mk_or(f, conj());
    }
    return f;
  }

  FormulaPtr conj() {
    FormulaPtr f = unary();
    while (cur().kind == Token::Kind::Amp) {
      advance();
      f = mk_and(f, unary());
    }
    return f;
  }

  FormulaPtr unary() {
    if (cur().kind == Token::Kind::Bang) {
      advance();
      return mk_not(unary());
    }
    if (at_quantifier()) {
      advance();  // (
      bool uni = cur().text == "A";
      advance();  // A/E
      std::string v = cur().text;
      if (!valid_var_name(v) || sig_.has_symbol(v))
        fail(ParseError::Kind::Syntax, "invalid bound variable name: " + v);
      advance();
      expect(Token::Kind::RParen, "expected ')' after quantified variable");
      FormulaPtr body = unary();
      return mk_quant(uni ? Formula::Kind::Forall : Formula::Kind::Exists, v,
                      std::move(body));
    }
    return primary();
  }

  FormulaPtr primary() {
    if (cur().kind == Token::Kind::LParen) {
      // Either a grouped formula or a parenthesized term starting an atom;
      // backtrack on term interpretation failure.
      size_t save = p_;
      advance();
      try {
        FormulaPtr f = formula();
        expect(Token::Kind::RParen, "expected ')'");
        return f;
      } catch (const ParseError&) {
        p_ = save;
        return atom();
      }
    }
    return atom();
  }

  FormulaPtr atom() {
    if (cur().kind == Token::Kind::Ident) {
      int r = sig_.relation_index(cur().text);
      if (r >= 0) {
        std::string name = cur().text;
        advance();
        expect(Token::Kind::LParen, "expected '(' after relation symbol");
        std::vector<Term> args;
        args.push_back(term());
        while (cur().kind == Token::Kind::Comma) {
          advance();
          args.push_back(term());
        }
        expect(Token::Kind::RParen, "expected ')' closing relation atom");
        if ((int)args.size() != sig_.relations[r].arity)
          throw ParseError(ParseError::Kind::Arity, cur().pos,
                           "relation " + name + " expects " +
                               std::to_string(sig_.relations[r].arity) +
                               " arguments, got " + std::to_string(args.size()));
        return mk_atom(name, r, std::move(args));
      }
    }
    Term a = term();
    expect(Token::Kind::Eq, "expected '=' in atomic formula");
    Term b = term();
    return mk_eq(std::move(a), std::move(b));
  }

  Term term() {
    Term t = factor();
    while (cur().kind == Token::Kind::Star) {
      advance();
      int f = sig_.function_index("*");
      if (f < 0)
        fail(ParseError::Kind::UnknownSymbol,
             "no binary operation '*' in this signature");
      Term rhs = factor();
      Term app;
      app.kind = Term::Kind::App;
      app.name = "*";
      app.sym = f;
      app.args = {std::move(t), std::move(rhs)};
      t = std::move(app);
    }
    return t;
  }

  Term factor() {
    if (cur().kind == Token::Kind::LParen) {
      advance();
      Term t = term();
      expect(Token::Kind::RParen, "expected ')' closing term");
      return t;
    }
    if (cur().kind != Token::Kind::Ident)
      fail(ParseError::Kind::Syntax, "expected a term");
    std::string name = cur().text;
    int f = sig_.function_index(name);
    if (f >= 0) {
      advance();
      expect(Token::Kind::LParen, "expected '(' after function symbol " + name);
      std::vector<Term> args;
      args.push_back(term());
      while (cur().kind == Token::Kind::Comma) {
        advance();
        args.push_back(term());
      }
      expect(Token::Kind::RParen, "expected ')' closing function application");
      if ((int)args.size() != sig_.functions[f].arity)
        throw ParseError(ParseError::Kind::Arity, cur().pos,
                         "function " + name + " expects " +
                             std::to_string(sig_.functions[f].arity) +
                             " arguments, got " + std::to_string(args.size()));
      Term t;
      t.kind = Term::Kind::App;
      t.name = name;
      t.sym = f;
      t.args = std::move(args);
      return t;
    }
    if (sig_.constant_index(name) >= 0) {
      Term t;
      t.kind = Term::Kind::Const;
      t.name = name;
      t.sym = sig_.constant_index(name);
      advance();
      return t;
    }
    if (sig_.relation_index(name) >= 0)
      fail(ParseError::Kind::UnknownSymbol,
           "relation symbol '" + name + "' used as a term");
    if (!valid_var_name(name))
      fail(ParseError::Kind::UnknownSymbol, "unknown symbol '" + name + "'");
    advance();
    return t_var(name);
  }
};

inline Term rename_term(const Term& t,
                        const std::unordered_map<std::string, std::string>& ren) {
  Term out = t;
  if (t.kind == Term::Kind::Var) {
    auto it = ren.find(t.name);
    if (it != ren.end()) out.name = it->second;
  } else {
    for (Term& a : out.args) a = rename_term(a, ren);
  }
  return out;
}

// Gives every binder a name distinct from all free variables and all other
// binders, so downstream code never worries about shadowing.
inline FormulaPtr rename_bound(const FormulaPtr& f,
                               std::set<std::string>& used,
                               std::unordered_map<std::string, std::string>& ren) {
  switch (f->kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::Eq: {
      auto g = std::make_shared<Formula>(*f);
      for (Term& t : g->args) t = rename_term(t, ren);
      return g;
    }
    case Formula::Kind::Not:
      return mk_not(rename_bound(f->lhs, used, ren));
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      return mk_bin(f->kind, rename_bound(f->lhs, used, ren),
                    rename_bound(f->rhs, used, ren));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      std::string name = f->var;
      if (used.count(name)) {
        int k = 2;
        while (used.count(f->var + "_" + std::to_string(k))) ++k;
        name = f->var + "_" + std::to_string(k);
      }
      used.insert(name);
      auto saved = ren.find(f->var);
      std::optional<std::string> old;
      if (saved != ren.end()) old = saved->second;
      ren[f->var] = name;
      FormulaPtr body = rename_bound(f->body, used, ren);
      if (old)
        ren[f->var] = *old;
      else
        ren.erase(f->var);
      return mk_quant(f->kind, name, std::move(body));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

inline FormulaPtr parse_formula(const Signature& sig, const std::string& src) {
  detail::Parser parser(sig, src);
  FormulaPtr raw = parser.parse();
  std::set<std::string> used = free_vars(*raw);
  std::unordered_map<std::string, std::string> ren;
  return detail::rename_bound(raw, used, ren);
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline void print_term(std::ostream& os, const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      os << t.name;
      break;
    case Term::Kind::App:
      if (t.name == "*") {
        print_term(os, t.args[0]);
        os << "*";
        bool paren = t.args[1].kind == Term::Kind::App && t.args[1].name == "*";
        if (paren) os << "(";
        print_term(os, t.args[1]);
        if (paren) os << ")";
      } else {
        os << t.name << "(";
        for (size_t i = 0; i < t.args.size(); ++i) {
          if (i) os << ",";
          print_term(os, t.args[i]);
        }
        os << ")";
      }
      break;
  }
}

inline int prec(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    default: return 5;
  }
}

inline void print_formula(std::ostream& os, const Formula& f, int parent) {
  int self = prec(f.kind);
  bool paren = self < parent;
  if (paren) os << "(";
  switch (f.kind) {
    case Formula::Kind::Atom:
      os << f.rel << "(";
      for (size_t i = 0; i < f.args.size(); ++i) {
        if (i) os << ",";
        print_term(os, f.args[i]);
      }
      os << ")";
      break;
    case Formula::Kind::Eq:
      print_term(os, f.args[0]);
      os << " = ";
      print_term(os, f.args[1]);
      break;
    case Formula::Kind::Not: {
      os << "!";
      bool bare = f.lhs->kind == Formula::Kind::Atom ||
                  f.lhs->kind == Formula::Kind::Not;
      if (bare) {
        print_formula(os, *f.lhs, 5);
      } else {
        os << "(";
        print_formula(os, *f.lhs, 0);
        os << ")";
      }
      break;
    }
    case Formula::Kind::And:
      print_formula(os, *f.lhs, 4);
      os << " & ";
      print_formula(os, *f.rhs, 5);  // left associative
      break;
    case Formula::Kind::Or:
      print_formula(os, *f.lhs, 3);
      os << " | ";
      print_formula(os, *f.rhs, 4);
      break;
    case Formula::Kind::Implies:
      print_formula(os, *f.lhs, 3);
      os << " -> ";
      print_formula(os, *f.rhs, 2);  // right associative
      break;
    case Formula::Kind::Iff:
      print_formula(os, *f.lhs, 1);
      os << " <-> ";
      print_formula(os, *f.rhs, 2);
      break;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      os << "(" << (f.kind == Formula::Kind::Forall ? "A" : "E") << " "
         << f.var << ")";
      bool chain = f.body->kind == Formula::Kind::Forall ||
                   f.body->kind == Formula::Kind::Exists;
      bool wrap = prec(f.body->kind) < 5;
      if (wrap)
        os << "(";
      else if (!chain)
        os << " ";
      print_formula(os, *f.body, 0);
      if (wrap) os << ")";
      break;
    }
  }
  if (paren) os << ")";
}

}  // namespace detail

inline std::string to_string(const Term& t) {
  std::ostringstream os;
  detail::print_term(os, t);
  return os.str();
}

inline std::string to_string(const Formula& f) {
  std::ostringstream os;
  detail::print_formula(os, f, 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// Alpha equivalence (optionally seeded with a binder correspondence)

namespace detail {

inline bool alpha_term(const Term& a, const Term& b,
                       const std::vector<std::pair<std::string, std::string>>& map) {
  if (a.kind != b.kind) return false;
  if (a.kind == Term::Kind::Var) {
    for (auto it = map.rbegin(); it != map.rend(); ++it) {
      if (it->first == a.name || it->second == b.name)
        return it->first == a.name && it->second == b.name;
    }
    return a.name == b.name;
  }
  if (a.name != b.name || a.sym != b.sym || a.args.size() != b.args.size())
    return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!alpha_term(a.args[i], b.args[i], map)) return false;
  return true;
}

inline bool alpha_eq(const Formula& a, const Formula& b,
                     std::vector<std::pair<std::string, std::string>>& map) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Formula::Kind::Atom:
      if (a.rel != b.rel || a.args.size() != b.args.size()) return false;
      [[fallthrough]];
    case Formula::Kind::Eq:
      for (size_t i = 0; i < a.args.size(); ++i)
        if (!alpha_term(a.args[i], b.args[i], map)) return false;
      return true;
    case Formula::Kind::Not:
      return alpha_eq(*a.lhs, *b.lhs, map);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      return alpha_eq(*a.lhs, *b.lhs, map) && alpha_eq(*a.rhs, *b.rhs, map);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      map.emplace_back(a.var, b.var);
      bool ok = alpha_eq(*a.body, *b.body, map);
      map.pop_back();
      return ok;
    }
  }
  return false;
}

}  // namespace detail

inline bool alpha_equal(const Formula& a, const Formula& b) {
  std::vector<std::pair<std::string, std::string>> map;
  return detail::alpha_eq(a, b, map);
}

inline bool alpha_equal_seeded(const Formula& a, const Formula& b,
                               const std::string& va, const std::string& vb) {
  std::vector<std::pair<std::string, std::string>> map{{va, vb}};
  return detail::alpha_eq(a, b, map);
}

// ---------------------------------------------------------------------------
// Evaluation

struct Env {
  std::vector<std::pair<std::string, int>> stack;
  const int* find(const std::string& name) const {
    for (auto it = stack.rbegin(); it != stack.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }
  void push(const std::string& name, int v) { stack.emplace_back(name, v); }
  void pop() { stack.pop_back(); }
};

inline int eval_term(const FiniteStructure& m, const Term& t, const Env& env) {
  switch (t.kind) {
    case Term::Kind::Var: {
      const int* v = env.find(t.name);
      if (!v) throw std::invalid_argument("unbound variable: " + t.name);
      return *v;
    }
    case Term::Kind::Const:
      return m.constants[t.sym];
    case Term::Kind::App: {
      const FiniteStructure::Func& fn = m.functions[t.sym];
      size_t idx = 0;
      for (const Term& a : t.args)
        idx = idx * (size_t)m.n + (size_t)eval_term(m, a, env);
      return fn.table[idx];
    }
  }
  throw std::logic_error("unreachable");
}

inline bool eval_formula(const FiniteStructure& m, const Formula& f, Env& env) {
  switch (f.kind) {
    case Formula::Kind::Eq:
      return eval_term(m, f.args[0], env) == eval_term(m, f.args[1], env);
    case Formula::Kind::Atom: {
      uint64_t key = 0;
      for (const Term& t : f.args)
        key = key * (uint64_t)m.n + (uint64_t)eval_term(m, t, env);
      return m.relations[f.rel_sym].keys.count(key) > 0;
    }
    case Formula::Kind::Not:
      return !eval_formula(m, *f.lhs, env);
    case Formula::Kind::And:
      return eval_formula(m, *f.lhs, env) && eval_formula(m, *f.rhs, env);
    case Formula::Kind::Or:
      return eval_formula(m, *f.lhs, env) || eval_formula(m, *f.rhs, env);
    case Formula::Kind::Implies:
      return !eval_formula(m, *f.lhs, env) || eval_formula(m, *f.rhs, env);
    case Formula::Kind::Iff:
      return eval_formula(m, *f.lhs, env) == eval_formula(m, *f.rhs, env);
    case Formula::Kind::Forall: {
      env.push(f.var, 0);
      for (int v = 0; v < m.n; ++v) {
        env.stack.back().second = v;
        if (!eval_formula(m, *f.body, env)) {
          env.pop();
          return false;
        }
      }
      env.pop();
      return true;
    }
    case Formula::Kind::Exists: {
      env.push(f.var, 0);
      for (int v = 0; v < m.n; ++v) {
        env.stack.back().second = v;
        if (eval_formula(m, *f.body, env)) {
          env.pop();
          return true;
        }
      }
      env.pop();
      return false;
    }
  }
  throw std::logic_error("unreachable");
}

inline bool eval(const FiniteStructure& m, const Formula& f,
                 const std::map<std::string, int>& assignment = {}) {
  std::set<std::string> fv = free_vars(f);
  for (const std::string& v : fv)
    if (!assignment.count(v))
      throw std::invalid_argument("assignment missing variable: " + v);
  Env env;
  for (const auto& [k, v] : assignment) {
    if (v < 0 || v >= m.n)
      throw std::invalid_argument("assignment value out of range for " + k);
    env.push(k, v);
  }
  return eval_formula(m, f, env);
}

// Tuples of values for `vars` satisfying f, in lexicographic order.
// `vars` must be exactly the free variables of f.
inline std::vector<std::vector<int>> definable_set(
    const FiniteStructure& m, const Formula& f,
    const std::vector<std::string>& vars) {
  std::set<std::string> fv = free_vars(f);
  std::set<std::string> given(vars.begin(), vars.end());
  if (fv != given || given.size() != vars.size())
    throw std::invalid_argument(
        "variable list must name exactly the free variables");
  std::vector<std::vector<int>> out;
  Env env;
  for (const std::string& v : vars) env.push(v, 0);
  std::vector<int> tuple(vars.size(), 0);
  while (true) {
    for (size_t i = 0; i < vars.size(); ++i) env.stack[i].second = tuple[i];
    if (eval_formula(m, f, env)) out.push_back(tuple);
    int i = (int)tuple.size() - 1;
    while (i >= 0 && tuple[i] == m.n - 1) tuple[i--] = 0;
    if (i < 0) break;
    ++tuple[i];
  }
  return out;
}

struct Counterexample {
  std::vector<std::pair<std::string, int>> assignment;  // sorted by variable
  bool phi_value = false;
};

// Least differing assignment over the union of free variables (variables
// sorted by name, values enumerated lexicographically), or nullopt.
inline std::optional<Counterexample> equivalent_in(const FiniteStructure& m,
                                                   const Formula& phi,
                                                   const Formula& psi) {
  std::set<std::string> fv = free_vars(phi);
  std::set<std::string> fv2 = free_vars(psi);
  fv.insert(fv2.begin(), fv2.end());
  std::vector<std::string> vars(fv.begin(), fv.end());
  Env env;
  for (const std::string& v : vars) env.push(v, 0);
  std::vector<int> tuple(vars.size(), 0);
  while (true) {
    for (size_t i = 0; i < vars.size(); ++i) env.stack[i].second = tuple[i];
    bool a = eval_formula(m, phi, env);
    bool b = eval_formula(m, psi, env);
    if (a != b) {
      Counterexample cx;
      for (size_t i = 0; i < vars.size(); ++i)
        cx.assignment.emplace_back(vars[i], tuple[i]);
      cx.phi_value = a;
      return cx;
    }
    if (vars.empty()) break;
    int i = (int)tuple.size() - 1;
    while (i >= 0 && tuple[i] == m.n - 1) tuple[i--] = 0;
    if (i < 0) break;
    ++tuple[i];
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// h-fragment classifier.
//
// The fragment: atomic formulas, conjunction, (E x)phi, (A x)phi, and the
// guarded pair (E x)phi & (A x)(phi -> psi). A standalone (A x)(phi -> psi)
// is admitted with the recorded side obligation (E x)phi.

enum class HRule { Atomic, Conj, Exists, Forall, Guarded, ForallImplies };

struct HNode {
  HRule rule;
  FormulaPtr at;
  std::vector<HNode> kids;
};

struct HRefusal {
  std::string path;
  std::string reason;
};

struct HResult {
  bool is_h = false;
  std::optional<HNode> derivation;
  std::vector<FormulaPtr> obligations;  // (E x)(antecedent), free vars allowed
  std::optional<HRefusal> refusal;
};

namespace detail {

inline const char* rule_name(HRule r) {
  switch (r) {
    case HRule::Atomic: return "atomic";
    case HRule::Conj: return "conj";
    case HRule::Exists: return "exists";
    case HRule::Forall: return "forall";
    case HRule::Guarded: return "guarded";
    case HRule::ForallImplies: return "forall-implies";
  }
  return "?";
}

inline bool classify_h_rec(const FormulaPtr& f, const std::string& path,
                           HNode& node, std::vector<FormulaPtr>& obligations,
                           HRefusal& refusal);

// (E x)phi & (A y)(phi' -> psi) with phi' alpha-matching phi under x<->y.
inline bool match_guarded(const FormulaPtr& ex, const FormulaPtr& fa,
                          const std::string& path, HNode& node,
                          std::vector<FormulaPtr>& obligations,
                          HRefusal& refusal) {
  if (ex->kind != Formula::Kind::Exists || fa->kind != Formula::Kind::Forall)
    return false;
  if (fa->body->kind != Formula::Kind::Implies) return false;
  if (!alpha_equal_seeded(*ex->body, *fa->body->lhs, ex->var, fa->var))
    return false;
  HNode guard, conseq;
  HRefusal r1;
  std::vector<FormulaPtr> obs;
  if (!classify_h_rec(ex->body, path + ".guard", guard, obs, r1)) return false;
  if (!classify_h_rec(fa->body->rhs, path + ".conseq", conseq, obs, r1))
    return false;
  node.rule = HRule::Guarded;
  node.kids = {std::move(guard), std::move(conseq)};
  obligations.insert(obligations.end(), obs.begin(), obs.end());
  (void)refusal;
  return true;
}

inline bool classify_h_rec(const FormulaPtr& f, const std::string& path,
                           HNode& node, std::vector<FormulaPtr>& obligations,
                           HRefusal& refusal) {
  node.at = f;
  switch (f->kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::Eq:
      node.rule = HRule::Atomic;
      return true;
    case Formula::Kind::And: {
      HNode g;
      g.at = f;
      if (match_guarded(f->lhs, f->rhs, path, g, obligations, refusal) ||
          match_guarded(f->rhs, f->lhs, path, g, obligations, refusal)) {
        node = std::move(g);
        return true;
      }
      HNode a, b;
      if (!classify_h_rec(f->lhs, path + ".lhs", a, obligations, refusal))
        return false;
      if (!classify_h_rec(f->rhs, path + ".rhs", b, obligations, refusal))
        return false;
      node.rule = HRule::Conj;
      node.kids = {std::move(a), std::move(b)};
      return true;
    }
    case Formula::Kind::Exists: {
      HNode b;
      if (!classify_h_rec(f->body, path + ".body", b, obligations, refusal))
        return false;
      node.rule = HRule::Exists;
      node.kids = {std::move(b)};
      return true;
    }
    case Formula::Kind::Forall: {
      if (f->body->kind == Formula::Kind::Implies) {
        HNode a, b;
        if (!classify_h_rec(f->body->lhs, path + ".antecedent", a, obligations,
                            refusal))
          return false;
        if (!classify_h_rec(f->body->rhs, path + ".consequent", b, obligations,
                            refusal))
          return false;
        node.rule = HRule::ForallImplies;
        node.kids = {std::move(a), std::move(b)};
        obligations.push_back(mk_exists(f->var, f->body->lhs));
        return true;
      }
      HNode b;
      if (!classify_h_rec(f->body, path + ".body", b, obligations, refusal))
        return false;
      node.rule = HRule::Forall;
      node.kids = {std::move(b)};
      return true;
    }
    case Formula::Kind::Not:
      refusal = {path, "negation is not in the fragment"};
      return false;
    case Formula::Kind::Or:
      refusal = {path, "disjunction is not in the fragment"};
      return false;
    case Formula::Kind::Iff:
      refusal = {path, "biconditional is not in the fragment"};
      return false;
    case Formula::Kind::Implies:
      refusal = {path,
                 "implication is only admitted directly under a universal "
                 "quantifier"};
      return false;
  }
  refusal = {path, "unknown node"};
  return false;
}

}  // namespace detail

inline HResult classify_h(const FormulaPtr& f) {
  HResult res;
  HNode root;
  HRefusal refusal;
  std::vector<FormulaPtr> obligations;
  if (detail::classify_h_rec(f, "root", root, obligations, refusal)) {
    res.is_h = true;
    res.derivation = std::move(root);
    res.obligations = std::move(obligations);
  } else {
    res.refusal = refusal;
  }
  return res;
}

// Rebuilds the formula from a derivation node and compares; a derivation is
// only valid if replay reproduces its formula up to alpha equivalence.
inline bool replay_matches(const HNode& node) {
  for (const HNode& k : node.kids)
    if (!replay_matches(k)) return false;
  const Formula& f = *node.at;
  switch (node.rule) {
    case HRule::Atomic:
      return f.kind == Formula::Kind::Atom || f.kind == Formula::Kind::Eq;
    case HRule::Conj:
      return f.kind == Formula::Kind::And &&
             alpha_equal(*node.kids[0].at, *f.lhs) &&
             alpha_equal(*node.kids[1].at, *f.rhs);
    case HRule::Exists:
      return f.kind == Formula::Kind::Exists &&
             alpha_equal(*node.kids[0].at, *f.body);
    case HRule::Forall:
      return f.kind == Formula::Kind::Forall &&
             alpha_equal(*node.kids[0].at, *f.body);
    case HRule::ForallImplies:
      return f.kind == Formula::Kind::Forall &&
             f.body->kind == Formula::Kind::Implies &&
             alpha_equal(*node.kids[0].at, *f.body->lhs) &&
             alpha_equal(*node.kids[1].at, *f.body->rhs);
    case HRule::Guarded: {
      if (f.kind != Formula::Kind::And) return false;
      auto check = [&](const FormulaPtr& ex, const FormulaPtr& fa) {
        return ex->kind == Formula::Kind::Exists &&
               fa->kind == Formula::Kind::Forall &&
               fa->body->kind == Formula::Kind::Implies &&
               alpha_equal(*node.kids[0].at, *ex->body) &&
               alpha_equal(*node.kids[1].at, *fa->body->rhs);
      };
      return check(f.lhs, f.rhs) || check(f.rhs, f.lhs);
    }
  }
  return false;
}

// Universal closure of an obligation, evaluated in m.
inline bool obligation_holds(const FiniteStructure& m, const FormulaPtr& ob) {
  FormulaPtr closed = ob;
  for (const std::string& v : free_vars(*ob)) closed = mk_forall(v, closed);
  return eval(m, *closed);
}

}  // namespace coordlens::logic
