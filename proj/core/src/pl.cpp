#include "hybridkit/pl.hpp"

#include <algorithm>
#include <unordered_set>

#include "hybridkit/error.hpp"

namespace hybridkit::pl {

Signature::Signature(std::vector<std::string> p) : props(std::move(p)) {
  std::unordered_set<std::string> seen;
  for (const auto& name : props) {
    if (!seen.insert(name).second) throw ValidationError("duplicate proposition '" + name + "'");
  }
}

bool Signature::declares(std::string_view name) const { return index_of(name).has_value(); }

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
  auto it = std::find(props.begin(), props.end(), name);
  if (it == props.end()) return std::nullopt;
  return static_cast<std::size_t>(it - props.begin());
}

Formula Formula::make(Op op, std::string name, std::vector<Formula> args) {
  int depth = 0;
  for (const auto& a : args) depth = std::max(depth, a.depth() + 1);
  return Formula(std::make_shared<const Node>(Node{op, std::move(name), std::move(args), depth}));
}

Formula Formula::atom(std::string name) { return make(Op::Atom, std::move(name), {}); }
Formula Formula::negation(Formula f) { return make(Op::Not, {}, {std::move(f)}); }
Formula Formula::conjunction(Formula a, Formula b) {
  return make(Op::And, {}, {std::move(a), std::move(b)});
}
Formula Formula::disjunction(Formula a, Formula b) {
  return make(Op::Or, {}, {std::move(a), std::move(b)});
}
Formula Formula::implication(Formula a, Formula b) {
  return make(Op::Implies, {}, {std::move(a), std::move(b)});
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return a.op() == b.op() && a.name() == b.name() && a.args() == b.args();
}

namespace {

int precedence(Op op) {
  switch (op) {
    case Op::Implies: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Not: return 4;
    case Op::Atom: return 5;
  }
  return 0;
}

void print(const Formula& f, std::string& out) {
  auto child = [&out](const Formula& c, bool parens) {
    if (parens) out += '(';
    print(c, out);
    if (parens) out += ')';
  };
  const int p = precedence(f.op());
  switch (f.op()) {
    case Op::Atom: out += f.name(); break;
    case Op::Not:
      out += '!';
      child(f.lhs(), precedence(f.lhs().op()) < p);
      break;
    case Op::And:
    case Op::Or:
      child(f.lhs(), precedence(f.lhs().op()) < p);
      out += f.op() == Op::And ? " /\\ " : " \\/ ";
      child(f.rhs(), precedence(f.rhs().op()) <= p);
      break;
    case Op::Implies:
      child(f.lhs(), precedence(f.lhs().op()) <= p);
      out += " => ";
      child(f.rhs(), precedence(f.rhs().op()) < p);
      break;
  }
}

Formula parse_implication(Lexer& lx);

Formula parse_unary(Lexer& lx) {
  Lexer::Nesting guard(lx);
  if (lx.accept("!")) return Formula::negation(parse_unary(lx));
  if (lx.accept("(")) {
    Formula f = parse_implication(lx);
    lx.expect(")");
    return f;
  }
  const Token& t = lx.peek();
  if (t.kind == TokenKind::Identifier) return Formula::atom(lx.next().text);
  lx.fail(t, "unexpected " + describe(t), {"proposition", "'!'", "'('"});
}

Formula parse_conjunction(Lexer& lx) {
  Formula f = parse_unary(lx);
  while (lx.accept("/\\")) f = Formula::conjunction(std::move(f), parse_unary(lx));
  return f;
}

Formula parse_disjunction(Lexer& lx) {
  Formula f = parse_conjunction(lx);
  while (lx.accept("\\/")) f = Formula::disjunction(std::move(f), parse_conjunction(lx));
  return f;
}

Formula parse_implication(Lexer& lx) {
  Lexer::Nesting guard(lx);
  Formula f = parse_disjunction(lx);
  if (lx.accept("=>")) return Formula::implication(std::move(f), parse_implication(lx));
  return f;
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

Formula parse_formula(Lexer& lexer) { return parse_implication(lexer); }

Formula parse_formula(std::string_view text) {
  Lexer lx(text);
  Formula f = parse_formula(lx);
  if (!lx.at_end()) lx.fail(lx.peek(), "unexpected " + describe(lx.peek()), {"end of formula"});
  return f;
}

void check_formula(const Signature& sig, const Formula& f) {
  if (f.op() == Op::Atom) {
    if (!sig.declares(f.name())) throw ValidationError("undeclared proposition '" + f.name() + "'");
    return;
  }
  for (const auto& a : f.args()) check_formula(sig, a);
}

Model::Model(Signature sig, std::vector<bool> values) : sig_(std::move(sig)), values_(std::move(values)) {
  if (values_.size() != sig_.props.size()) {
    throw ValidationError("valuation size does not match the signature");
  }
}

Model Model::from_assignments(Signature sig, const std::map<std::string, bool>& values) {
  std::vector<bool> v(sig.props.size());
  for (const auto& [name, value] : values) {
    auto idx = sig.index_of(name);
    if (!idx) throw ValidationError("valuation assigns undeclared proposition '" + name + "'");
    v[*idx] = value;
  }
  for (const auto& p : sig.props) {
    if (!values.count(p)) throw ValidationError("valuation leaves proposition '" + p + "' unassigned");
  }
  return Model(std::move(sig), std::move(v));
}

bool Model::value(std::string_view prop) const {
  auto idx = sig_.index_of(prop);
  if (!idx) throw ValidationError("undeclared proposition '" + std::string(prop) + "'");
  return values_[*idx];
}

Morphism::Morphism(Signature source, Signature target, std::map<std::string, std::string> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  for (const auto& p : source_.props) {
    auto it = map_.find(p);
    if (it == map_.end()) throw ValidationError("morphism leaves proposition '" + p + "' unmapped");
    if (!target_.declares(it->second)) {
      throw ValidationError("morphism maps '" + p + "' to undeclared proposition '" + it->second + "'");
    }
  }
  for (const auto& [from, to] : map_) {
    if (!source_.declares(from)) {
      throw ValidationError("morphism maps undeclared proposition '" + from + "'");
    }
  }
}

Morphism Morphism::identity(const Signature& sig) {
  std::map<std::string, std::string> m;
  for (const auto& p : sig.props) m.emplace(p, p);
  return Morphism(sig, sig, std::move(m));
}

const std::string& Morphism::apply(const std::string& prop) const {
  auto it = map_.find(prop);
  if (it == map_.end()) throw ValidationError("morphism does not map proposition '" + prop + "'");
  return it->second;
}

bool satisfies(const Model& m, const Formula& f) {
  switch (f.op()) {
    case Op::Atom: return m.value(f.name());
    case Op::Not: return !satisfies(m, f.lhs());
    case Op::And: return satisfies(m, f.lhs()) && satisfies(m, f.rhs());
    case Op::Or: return satisfies(m, f.lhs()) || satisfies(m, f.rhs());
    case Op::Implies: return !satisfies(m, f.lhs()) || satisfies(m, f.rhs());
  }
  return false;
}

Formula translate(const Morphism& phi, const Formula& f) {
  switch (f.op()) {
    case Op::Atom: return Formula::atom(phi.apply(f.name()));
    case Op::Not: return Formula::negation(translate(phi, f.lhs()));
    case Op::And: return Formula::conjunction(translate(phi, f.lhs()), translate(phi, f.rhs()));
    case Op::Or: return Formula::disjunction(translate(phi, f.lhs()), translate(phi, f.rhs()));
    case Op::Implies: return Formula::implication(translate(phi, f.lhs()), translate(phi, f.rhs()));
  }
  return f;
}

Model reduct(const Morphism& phi, const Model& m) {
  if (!(m.signature() == phi.target())) {
    throw ValidationError("reduct: model is not over the target signature");
  }
  std::vector<bool> values;
  values.reserve(phi.source().props.size());
  for (const auto& p : phi.source().props) values.push_back(m.value(phi.apply(p)));
  return Model(phi.source(), std::move(values));
}

std::vector<Formula> enumerate(const Signature& sig, FragmentKind kind, int max_depth) {
  std::vector<Formula> level;
  for (const auto& p : sig.props) level.push_back(Formula::atom(p));
  if (kind == FragmentKind::Atoms) return level;

  const bool with_negation = kind == FragmentKind::Full;
  for (int d = 1; d <= max_depth; ++d) {
    std::vector<Formula> next = level;
    std::unordered_set<std::string> seen;
    for (const auto& f : level) seen.insert(to_string(f));
    auto add = [&](Formula f) {
      if (seen.insert(to_string(f)).second) next.push_back(std::move(f));
      if (next.size() > kMaxEnumeration) throw ValidationError("fragment enumeration too large");
    };
    if (with_negation) {
      for (const auto& a : level) add(Formula::negation(a));
    }
    for (const auto& a : level) {
      for (const auto& b : level) add(Formula::disjunction(a, b));
    }
    for (const auto& a : level) {
      for (const auto& b : level) add(Formula::conjunction(a, b));
    }
    if (with_negation) {
      for (const auto& a : level) {
        for (const auto& b : level) add(Formula::implication(a, b));
      }
    }
    level = std::move(next);
  }
  return level;
}

namespace {

bool negation_free(const Formula& f) {
  switch (f.op()) {
    case Op::Atom: return true;
    case Op::And:
    case Op::Or: return negation_free(f.lhs()) && negation_free(f.rhs());
    case Op::Not:
    case Op::Implies: return false;
  }
  return false;
}

}  // namespace

bool in_fragment(const Formula& f, const FragmentSpec<Formula>& frag) {
  switch (frag.kind) {
    case FragmentKind::Full: return true;
    case FragmentKind::Atoms: return f.op() == Op::Atom;
    case FragmentKind::NegationFree: return negation_free(f);
    case FragmentKind::Explicit:
      return std::find(frag.sentences.begin(), frag.sentences.end(), f) != frag.sentences.end();
  }
  return false;
}

}  // namespace hybridkit::pl
