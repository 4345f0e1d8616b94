#include "hybridkit/mvl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "hybridkit/error.hpp"

namespace hybridkit::mvl {

namespace {

std::optional<double> numeric_value(std::string_view label) {
  auto parse_uint = [](std::string_view s) -> std::optional<double> {
    if (s.empty()) return std::nullopt;
    double v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + (c - '0');
    }
    return v;
  };
  if (auto slash = label.find('/'); slash != std::string_view::npos) {
    auto num = parse_uint(label.substr(0, slash));
    auto den = parse_uint(label.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return *num / *den;
  }
  if (auto dot = label.find('.'); dot != std::string_view::npos) {
    auto whole = parse_uint(label.substr(0, dot));
    std::string_view frac = label.substr(dot + 1);
    auto digits = parse_uint(frac);
    if (!whole || !digits) return std::nullopt;
    return *whole + *digits / std::pow(10.0, static_cast<double>(frac.size()));
  }
  return parse_uint(label);
}

std::string fraction_label(int k, int n) {
  if (k == 0) return "0";
  if (k == n) return "1";
  int g = std::gcd(k, n);
  return std::to_string(k / g) + "/" + std::to_string(n / g);
}

}  // namespace

ResiduatedLattice ResiduatedLattice::chain(int n) {
  if (n < 2) throw ValidationError("chain(n) needs n >= 2");
  const int top = n - 1;
  ResiduatedLattice l;
  l.name_ = "chain(" + std::to_string(n) + ")";
  for (int k = 0; k < n; ++k) l.elements_.push_back(fraction_label(k, top));
  const auto size = static_cast<std::size_t>(n);
  l.leq_.assign(size * size, false);
  l.meet_.assign(size * size, 0);
  l.join_.assign(size * size, 0);
  l.tensor_.assign(size * size, 0);
  l.residuum_.assign(size * size, 0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      l.leq_[l.at(x, y)] = x <= y;
      l.meet_[l.at(x, y)] = std::min(x, y);
      l.join_[l.at(x, y)] = std::max(x, y);
      l.tensor_[l.at(x, y)] = std::max(0, x + y - top);
      l.residuum_[l.at(x, y)] = std::min(top, top - x + y);
    }
  }
  l.top_ = top;
  l.bottom_ = 0;
  return l;
}

ResiduatedLattice ResiduatedLattice::boolean() {
  ResiduatedLattice l = chain(2);
  l.name_ = "bool";
  return l;
}

ResiduatedLattice ResiduatedLattice::from_tables(std::string name, std::vector<std::string> elements,
                                                 const std::vector<std::pair<int, int>>& order,
                                                 std::vector<int> tensor,
                                                 std::optional<std::vector<int>> residuum) {
  if (elements.empty()) throw ValidationError("lattice has no elements");
  std::unordered_set<std::string> seen;
  for (const auto& e : elements) {
    if (!seen.insert(e).second) throw ValidationError("duplicate lattice element '" + e + "'");
  }
  const std::size_t n = elements.size();
  if (tensor.size() != n * n) throw ValidationError("tensor table must have n*n entries");
  if (residuum && residuum->size() != n * n) {
    throw ValidationError("residuum table must have n*n entries");
  }
  const int ni = static_cast<int>(n);
  for (auto [a, b] : order) {
    if (a < 0 || b < 0 || a >= ni || b >= ni) throw ValidationError("order pair out of range");
  }
  for (int v : tensor) {
    if (v < -1 || v >= ni) throw ValidationError("tensor entry out of range");
  }

  ResiduatedLattice l;
  l.name_ = std::move(name);
  l.elements_ = std::move(elements);
  l.leq_.assign(n * n, false);
  for (int x = 0; x < ni; ++x) l.leq_[l.at(x, x)] = true;
  for (auto [a, b] : order) l.leq_[l.at(a, b)] = true;
  for (int k = 0; k < ni; ++k) {
    for (int i = 0; i < ni; ++i) {
      if (!l.leq_[l.at(i, k)]) continue;
      for (int j = 0; j < ni; ++j) {
        if (l.leq_[l.at(k, j)]) l.leq_[l.at(i, j)] = true;
      }
    }
  }
  l.tensor_ = std::move(tensor);
  l.derive_order_structure();

  if (residuum) {
    for (int v : *residuum) {
      if (v < -1 || v >= ni) throw ValidationError("residuum entry out of range");
    }
    l.residuum_ = std::move(*residuum);
  } else {
    l.residuum_.assign(n * n, -1);
    for (int x = 0; x < ni; ++x) {
      for (int z = 0; z < ni; ++z) {
        // Greatest y with x⊗y ≤ z, if the candidate set has a maximum.
        std::vector<int> candidates;
        for (int y = 0; y < ni; ++y) {
          int t = l.tensor(x, y);
          if (t >= 0 && l.leq(t, z)) candidates.push_back(y);
        }
        for (int c : candidates) {
          bool greatest = std::all_of(candidates.begin(), candidates.end(),
                                      [&](int d) { return l.leq(d, c); });
          if (greatest) {
            l.residuum_[l.at(x, z)] = c;
            break;
          }
        }
      }
    }
  }
  return l;
}

void ResiduatedLattice::derive_order_structure() {
  const int n = static_cast<int>(elements_.size());
  meet_.assign(elements_.size() * elements_.size(), -1);
  join_.assign(elements_.size() * elements_.size(), -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int c = 0; c < n; ++c) {
        bool lower = leq(c, x) && leq(c, y);
        bool upper = leq(x, c) && leq(y, c);
        if (lower) {
          bool greatest = true;
          for (int d = 0; d < n && greatest; ++d) {
            if (leq(d, x) && leq(d, y) && !leq(d, c)) greatest = false;
          }
          if (greatest) meet_[at(x, y)] = c;
        }
        if (upper) {
          bool least = true;
          for (int d = 0; d < n && least; ++d) {
            if (leq(x, d) && leq(y, d) && !leq(c, d)) least = false;
          }
          if (least) join_[at(x, y)] = c;
        }
      }
    }
  }
  top_ = bottom_ = -1;
  for (int c = 0; c < n; ++c) {
    bool is_top = true, is_bottom = true;
    for (int d = 0; d < n; ++d) {
      is_top = is_top && leq(d, c);
      is_bottom = is_bottom && leq(c, d);
    }
    if (is_top) top_ = c;
    if (is_bottom) bottom_ = c;
  }
}

std::optional<int> ResiduatedLattice::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] == label) return static_cast<int>(i);
  }
  auto wanted = numeric_value(label);
  if (!wanted) return std::nullopt;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    auto v = numeric_value(elements_[i]);
    if (v && std::abs(*v - *wanted) < 1e-9) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::vector<std::pair<int, int>> ResiduatedLattice::covers() const {
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(size());
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y || !leq(x, y)) continue;
      bool between = false;
      for (int z = 0; z < n && !between; ++z) {
        between = z != x && z != y && leq(x, z) && leq(z, y);
      }
      if (!between) out.emplace_back(x, y);
    }
  }
  return out;
}

LatticeReport lattice_validate(const ResiduatedLattice& l) {
  LatticeReport report;
  auto& v = report.violations;
  const int n = static_cast<int>(l.size());
  auto name = [&](int x) { return x < 0 ? std::string("<undefined>") : l.label(x); };

  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (l.leq(x, y) && l.leq(y, x)) {
        v.push_back("order is not antisymmetric: " + name(x) + " <= " + name(y) + " <= " + name(x));
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (l.meet(x, y) < 0) v.push_back("no meet for " + name(x) + ", " + name(y));
      if (l.join(x, y) < 0) v.push_back("no join for " + name(x) + ", " + name(y));
    }
  }
  if (l.top() < 0) v.push_back("no top element");
  if (l.bottom() < 0) v.push_back("no bottom element");

  bool tensor_total = true;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (l.tensor(x, y) < 0) {
        v.push_back("tensor undefined for " + name(x) + " * " + name(y));
        tensor_total = false;
      }
    }
  }
  if (!tensor_total) return report;

  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (l.tensor(x, y) != l.tensor(y, x)) {
        if (x < y) v.push_back("tensor not commutative: " + name(x) + " * " + name(y));
      }
      for (int z = 0; z < n; ++z) {
        if (l.tensor(l.tensor(x, y), z) != l.tensor(x, l.tensor(y, z))) {
          v.push_back("tensor not associative at (" + name(x) + ", " + name(y) + ", " + name(z) + ")");
        }
        if (l.leq(y, z) && !l.leq(l.tensor(x, y), l.tensor(x, z))) {
          v.push_back("tensor not monotone: " + name(y) + " <= " + name(z) + " but " + name(x) + " * " +
                      name(y) + " > " + name(x) + " * " + name(z));
        }
      }
    }
  }
  if (l.top() >= 0) {
    for (int x = 0; x < n; ++x) {
      if (l.tensor(x, l.top()) != x || l.tensor(l.top(), x) != x) {
        v.push_back("top is not a unit: " + name(x) + " * " + name(l.top()) + " = " +
                    name(l.tensor(x, l.top())));
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int z = 0; z < n; ++z) {
      int r = l.residuum(x, z);
      if (r < 0) {
        v.push_back("no residuum for " + name(x) + " -> " + name(z));
        continue;
      }
      for (int y = 0; y < n; ++y) {
        bool left = l.leq(y, r);
        bool right = l.leq(l.tensor(x, y), z);
        if (left != right) {
          v.push_back("residuation fails at (x=" + name(x) + ", y=" + name(y) + ", z=" + name(z) +
                      "): y <= x->z is " + (left ? "true" : "false") + ", x*y <= z is " +
                      (right ? "true" : "false"));
        }
      }
    }
  }
  return report;
}

Formula Formula::make(Op op, std::string name, std::vector<Formula> args) {
  int depth = 0;
  for (const auto& a : args) depth = std::max(depth, a.depth() + 1);
  return Formula(std::make_shared<const Node>(Node{op, std::move(name), std::move(args), depth}));
}

Formula Formula::atom(std::string name) { return make(Op::Atom, std::move(name), {}); }
Formula Formula::top() { return make(Op::Top, {}, {}); }
Formula Formula::bottom() { return make(Op::Bottom, {}, {}); }
Formula Formula::disjunction(Formula a, Formula b) { return make(Op::Or, {}, {std::move(a), std::move(b)}); }
Formula Formula::tensor(Formula a, Formula b) { return make(Op::Tensor, {}, {std::move(a), std::move(b)}); }
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
    case Op::Tensor: return 3;
    default: return 4;
  }
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
    case Op::Top: out += "top"; break;
    case Op::Bottom: out += "bot"; break;
    case Op::Or:
    case Op::Tensor:
      child(f.lhs(), precedence(f.lhs().op()) < p);
      out += f.op() == Op::Or ? " \\/ " : " * ";
      child(f.rhs(), precedence(f.rhs().op()) <= p);
      break;
    case Op::Implies:
      child(f.lhs(), precedence(f.lhs().op()) <= p);
      out += " -> ";
      child(f.rhs(), precedence(f.rhs().op()) < p);
      break;
  }
}

Formula parse_implication(Lexer& lx);

Formula parse_primary(Lexer& lx) {
  Lexer::Nesting guard(lx);
  if (lx.accept("(")) {
    Formula f = parse_implication(lx);
    lx.expect(")");
    return f;
  }
  if (lx.accept("top")) return Formula::top();
  if (lx.accept("bot")) return Formula::bottom();
  const Token& t = lx.peek();
  if (t.kind == TokenKind::Identifier) return Formula::atom(lx.next().text);
  lx.fail(t, "unexpected " + describe(t), {"proposition", "'top'", "'bot'", "'('"});
}

Formula parse_tensor(Lexer& lx) {
  Formula f = parse_primary(lx);
  while (lx.accept("*")) f = Formula::tensor(std::move(f), parse_primary(lx));
  return f;
}

Formula parse_disjunction(Lexer& lx) {
  Formula f = parse_tensor(lx);
  while (lx.accept("\\/")) f = Formula::disjunction(std::move(f), parse_tensor(lx));
  return f;
}

Formula parse_implication(Lexer& lx) {
  Lexer::Nesting guard(lx);
  Formula f = parse_disjunction(lx);
  if (lx.accept("->")) return Formula::implication(std::move(f), parse_implication(lx));
  return f;
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::string to_string(const Sentence& s) { return "(" + to_string(s.formula) + ", " + s.grade_label + ")"; }

Formula parse_formula(Lexer& lexer) { return parse_implication(lexer); }

Sentence parse_sentence(Lexer& lx, const ResiduatedLattice& lattice) {
  lx.expect("(");
  Formula f = parse_implication(lx);
  lx.expect(",");
  Token grade = lx.expect_label("truth value");
  auto idx = lattice.index_of(grade.text);
  if (!idx) lx.fail(grade, "'" + grade.text + "' is not an element of lattice " + lattice.name());
  lx.expect(")");
  return graded(std::move(f), lattice, *idx);
}

Sentence parse_sentence(std::string_view text, const ResiduatedLattice& lattice) {
  Lexer lx(text);
  Sentence s = parse_sentence(lx, lattice);
  if (!lx.at_end()) lx.fail(lx.peek(), "unexpected " + describe(lx.peek()), {"end of sentence"});
  return s;
}

Sentence graded(Formula f, const ResiduatedLattice& lattice, int grade) {
  return Sentence{std::move(f), grade, lattice.label(grade)};
}

Signature::Signature(std::vector<std::string> p, LatticeRef l) : props(std::move(p)), lattice(std::move(l)) {
  if (!lattice) throw ValidationError("multi-valued signature needs a lattice");
  std::unordered_set<std::string> seen;
  for (const auto& name : props) {
    if (name == "top" || name == "bot") throw ValidationError("'" + name + "' is reserved");
    if (!seen.insert(name).second) throw ValidationError("duplicate proposition '" + name + "'");
  }
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
  auto it = std::find(props.begin(), props.end(), name);
  if (it == props.end()) return std::nullopt;
  return static_cast<std::size_t>(it - props.begin());
}

bool operator==(const Signature& a, const Signature& b) {
  if (a.props != b.props) return false;
  if (a.lattice == b.lattice) return true;
  return a.lattice && b.lattice && *a.lattice == *b.lattice;
}

namespace {

void check_formula(const Signature& sig, const Formula& f) {
  if (f.op() == Op::Atom && !sig.declares(f.name())) {
    throw ValidationError("undeclared proposition '" + f.name() + "'");
  }
  for (const auto& a : f.args()) check_formula(sig, a);
}

}  // namespace

void check_sentence(const Signature& sig, const Sentence& s) {
  check_formula(sig, s.formula);
  if (s.grade < 0 || static_cast<std::size_t>(s.grade) >= sig.lattice->size()) {
    throw ValidationError("grade '" + s.grade_label + "' is not a lattice element");
  }
}

Model::Model(Signature sig, std::vector<int> values) : sig_(std::move(sig)), values_(std::move(values)) {
  if (values_.size() != sig_.props.size()) throw ValidationError("valuation size does not match the signature");
  for (int v : values_) {
    if (v < 0 || static_cast<std::size_t>(v) >= sig_.lattice->size()) {
      throw ValidationError("valuation leaves the lattice");
    }
  }
}

Model Model::from_assignments(Signature sig, const std::map<std::string, std::string>& values) {
  std::vector<int> v(sig.props.size(), -1);
  for (const auto& [name, label] : values) {
    auto idx = sig.index_of(name);
    if (!idx) throw ValidationError("valuation assigns undeclared proposition '" + name + "'");
    auto value = sig.lattice->index_of(label);
    if (!value) throw ValidationError("'" + label + "' is not an element of lattice " + sig.lattice->name());
    v[*idx] = *value;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0) throw ValidationError("valuation leaves proposition '" + sig.props[i] + "' unassigned");
  }
  return Model(std::move(sig), std::move(v));
}

int Model::value(std::string_view prop) const {
  auto idx = sig_.index_of(prop);
  if (!idx) throw ValidationError("undeclared proposition '" + std::string(prop) + "'");
  return values_[*idx];
}

Morphism::Morphism(Signature source, Signature target, std::map<std::string, std::string> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (!(*source_.lattice == *target_.lattice)) {
    throw ValidationError("morphism between signatures over different lattices");
  }
  for (const auto& p : source_.props) {
    auto it = map_.find(p);
    if (it == map_.end()) throw ValidationError("morphism leaves proposition '" + p + "' unmapped");
    if (!target_.declares(it->second)) {
      throw ValidationError("morphism maps '" + p + "' to undeclared proposition '" + it->second + "'");
    }
  }
  for (const auto& [from, to] : map_) {
    if (!source_.declares(from)) throw ValidationError("morphism maps undeclared proposition '" + from + "'");
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

int eval(const Model& m, const Formula& f) {
  const ResiduatedLattice& l = m.lattice();
  switch (f.op()) {
    case Op::Atom: return m.value(f.name());
    case Op::Top: return l.top();
    case Op::Bottom: return l.bottom();
    default: break;
  }
  const int a = eval(m, f.lhs());
  const int b = eval(m, f.rhs());
  if (a < 0 || b < 0) return -1;
  switch (f.op()) {
    case Op::Or: return l.join(a, b);
    case Op::Tensor: return l.tensor(a, b);
    default: return l.residuum(a, b);
  }
}

bool satisfies(const Model& m, const Sentence& s) {
  int value = eval(m, s.formula);
  if (value < 0) throw ValidationError("formula value undefined in lattice " + m.lattice().name());
  return m.lattice().leq(s.grade, value);
}

Formula translate(const Morphism& phi, const Formula& f) {
  switch (f.op()) {
    case Op::Atom: return Formula::atom(phi.apply(f.name()));
    case Op::Top:
    case Op::Bottom: return f;
    case Op::Or: return Formula::disjunction(translate(phi, f.lhs()), translate(phi, f.rhs()));
    case Op::Tensor: return Formula::tensor(translate(phi, f.lhs()), translate(phi, f.rhs()));
    case Op::Implies: return Formula::implication(translate(phi, f.lhs()), translate(phi, f.rhs()));
  }
  return f;
}

Sentence translate(const Morphism& phi, const Sentence& s) {
  return Sentence{translate(phi, s.formula), s.grade, s.grade_label};
}

Model reduct(const Morphism& phi, const Model& m) {
  if (!(m.signature() == phi.target())) throw ValidationError("reduct: model is not over the target signature");
  std::vector<int> values;
  values.reserve(phi.source().props.size());
  for (const auto& p : phi.source().props) values.push_back(m.value(phi.apply(p)));
  return Model(phi.source(), std::move(values));
}

std::vector<Sentence> enumerate(const Signature& sig, FragmentKind kind, int max_depth) {
  std::vector<Formula> level;
  for (const auto& p : sig.props) level.push_back(Formula::atom(p));
  if (kind != FragmentKind::Atoms) {
    level.push_back(Formula::top());
    level.push_back(Formula::bottom());
    const bool with_implication = kind == FragmentKind::Full;
    for (int d = 1; d <= max_depth; ++d) {
      std::vector<Formula> next = level;
      std::unordered_set<std::string> seen;
      for (const auto& f : level) seen.insert(to_string(f));
      auto add = [&](Formula f) {
        if (seen.insert(to_string(f)).second) next.push_back(std::move(f));
        if (next.size() * sig.lattice->size() > kMaxEnumeration) {
          throw ValidationError("fragment enumeration too large");
        }
      };
      for (const auto& a : level) {
        for (const auto& b : level) add(Formula::disjunction(a, b));
      }
      for (const auto& a : level) {
        for (const auto& b : level) add(Formula::tensor(a, b));
      }
      if (with_implication) {
        for (const auto& a : level) {
          for (const auto& b : level) add(Formula::implication(a, b));
        }
      }
      level = std::move(next);
    }
  }
  std::vector<Sentence> out;
  out.reserve(level.size() * sig.lattice->size());
  for (const auto& f : level) {
    for (std::size_t g = 0; g < sig.lattice->size(); ++g) {
      out.push_back(graded(f, *sig.lattice, static_cast<int>(g)));
    }
  }
  return out;
}

namespace {

bool implication_free(const Formula& f) {
  if (f.op() == Op::Implies) return false;
  return std::all_of(f.args().begin(), f.args().end(), implication_free);
}

}  // namespace

bool in_fragment(const Sentence& s, const FragmentSpec<Sentence>& frag) {
  switch (frag.kind) {
    case FragmentKind::Full: return true;
    case FragmentKind::Atoms: return s.formula.op() == Op::Atom;
    case FragmentKind::NegationFree: return implication_free(s.formula);
    case FragmentKind::Explicit:
      return std::find(frag.sentences.begin(), frag.sentences.end(), s) != frag.sentences.end();
  }
  return false;
}

}  // namespace hybridkit::mvl
