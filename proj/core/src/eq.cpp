#include "hybridkit/eq.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_set>

#include "hybridkit/error.hpp"

namespace hybridkit::eq {

Signature::Signature(std::vector<std::string> s, std::vector<Operation> o)
    : sorts(std::move(s)), ops(std::move(o)) {
  std::unordered_set<std::string> seen;
  for (const auto& sort : sorts) {
    if (!seen.insert(sort).second) throw ValidationError("duplicate sort '" + sort + "'");
  }
  std::unordered_set<std::string> op_names;
  for (const auto& op : ops) {
    if (!op_names.insert(op.name).second) {
      throw ValidationError("duplicate operation '" + op.name + "'");
    }
    for (const auto& a : op.args) {
      if (!sort_index(a)) {
        throw ValidationError("operation '" + op.name + "' uses undeclared sort '" + a + "'");
      }
    }
    if (!sort_index(op.result)) {
      throw ValidationError("operation '" + op.name + "' has undeclared result sort '" + op.result + "'");
    }
  }
}

std::optional<std::size_t> Signature::sort_index(std::string_view sort) const {
  auto it = std::find(sorts.begin(), sorts.end(), sort);
  if (it == sorts.end()) return std::nullopt;
  return static_cast<std::size_t>(it - sorts.begin());
}

std::optional<std::size_t> Signature::op_index(std::string_view op) const {
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].name == op) return i;
  }
  return std::nullopt;
}

const Operation* Signature::find_op(std::string_view op) const {
  auto idx = op_index(op);
  return idx ? &ops[*idx] : nullptr;
}

Term Term::variable(std::string name, std::string sort) {
  return Term(std::make_shared<const Node>(Node{true, std::move(name), std::move(sort), {}, 0}));
}

Term Term::apply(std::string op, std::vector<Term> args) {
  int depth = 1;
  for (const auto& a : args) depth = std::max(depth, a.depth() + 1);
  return Term(std::make_shared<const Node>(Node{false, std::move(op), {}, std::move(args), depth}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  return a.is_variable() == b.is_variable() && a.name() == b.name() && a.sort() == b.sort() &&
         a.args() == b.args();
}

std::string to_string(const Term& t) {
  if (t.is_variable() || t.args().empty()) return t.name();
  std::string out = t.name() + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(t.args()[i]);
  }
  return out + ")";
}

std::string to_string(const Equation& e) {
  std::string out;
  if (!e.vars.empty()) {
    out = "forall ";
    for (std::size_t i = 0; i < e.vars.size(); ++i) {
      if (i > 0) out += ", ";
      out += e.vars[i].name + ":" + e.vars[i].sort;
    }
    out += " . ";
  }
  return out + to_string(e.lhs) + " = " + to_string(e.rhs);
}

namespace {

Term parse_term(Lexer& lx, const std::vector<Variable>& vars) {
  Lexer::Nesting guard(lx);
  Token head = lx.expect_identifier("term");
  if (lx.accept("(")) {
    std::vector<Term> args;
    if (!lx.accept(")")) {
      do {
        args.push_back(parse_term(lx, vars));
      } while (lx.accept(","));
      lx.expect(")");
    }
    return Term::apply(head.text, std::move(args));
  }
  for (const auto& v : vars) {
    if (v.name == head.text) return Term::variable(v.name, v.sort);
  }
  return Term::apply(head.text);
}

}  // namespace

Equation parse_equation(Lexer& lx) {
  std::vector<Variable> vars;
  if (lx.accept("forall")) {
    if (!lx.peek().is(".")) {
      do {
        Token name = lx.expect_identifier("variable");
        lx.expect(":");
        Token sort = lx.expect_identifier("sort");
        vars.push_back({name.text, sort.text});
      } while (lx.accept(","));
    }
    lx.expect(".");
  }
  Term lhs = parse_term(lx, vars);
  lx.expect("=");
  Term rhs = parse_term(lx, vars);
  return Equation{std::move(vars), std::move(lhs), std::move(rhs)};
}

Equation parse_equation(std::string_view text) {
  Lexer lx(text);
  Equation e = parse_equation(lx);
  if (!lx.at_end()) lx.fail(lx.peek(), "unexpected " + describe(lx.peek()), {"end of equation"});
  return e;
}

std::string sort_of(const Signature& sig, const Term& t) {
  if (t.is_variable()) {
    if (!sig.sort_index(t.sort())) {
      throw ValidationError("variable '" + t.name() + "' has undeclared sort '" + t.sort() + "'");
    }
    return t.sort();
  }
  const Operation* op = sig.find_op(t.name());
  if (!op) throw ValidationError("undeclared operation '" + t.name() + "'");
  if (op->args.size() != t.args().size()) {
    throw ValidationError("operation '" + t.name() + "' expects " + std::to_string(op->args.size()) +
                          " arguments, got " + std::to_string(t.args().size()));
  }
  for (std::size_t i = 0; i < op->args.size(); ++i) {
    std::string s = sort_of(sig, t.args()[i]);
    if (s != op->args[i]) {
      throw ValidationError("argument " + std::to_string(i + 1) + " of '" + t.name() + "' has sort '" +
                            s + "', expected '" + op->args[i] + "'");
    }
  }
  return op->result;
}

namespace {

void check_variables(const Term& t, const std::vector<Variable>& vars) {
  if (t.is_variable()) {
    for (const auto& v : vars) {
      if (v.name == t.name()) {
        if (v.sort != t.sort()) {
          throw ValidationError("variable '" + t.name() + "' used at sort '" + t.sort() +
                                "' but declared '" + v.sort + "'");
        }
        return;
      }
    }
    throw ValidationError("variable '" + t.name() + "' is not quantified");
  }
  for (const auto& a : t.args()) check_variables(a, vars);
}

}  // namespace

void check_equation(const Signature& sig, const Equation& e) {
  std::unordered_set<std::string> names;
  for (const auto& v : e.vars) {
    if (!names.insert(v.name).second) throw ValidationError("variable '" + v.name + "' bound twice");
    if (!sig.sort_index(v.sort)) {
      throw ValidationError("variable '" + v.name + "' has undeclared sort '" + v.sort + "'");
    }
    if (sig.find_op(v.name)) {
      throw ValidationError("variable '" + v.name + "' clashes with an operation name");
    }
  }
  check_variables(e.lhs, e.vars);
  check_variables(e.rhs, e.vars);
  std::string ls = sort_of(sig, e.lhs);
  std::string rs = sort_of(sig, e.rhs);
  if (ls != rs) throw ValidationError("equation sides have sorts '" + ls + "' and '" + rs + "'");
}

namespace {

std::size_t table_size(const Signature& sig, const std::vector<std::vector<std::string>>& carriers,
                       const Operation& op) {
  std::size_t n = 1;
  for (const auto& a : op.args) n *= carriers[*sig.sort_index(a)].size();
  return n;
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(Signature sig, std::vector<std::vector<std::string>> carriers,
                             std::vector<std::vector<int>> tables)
    : sig_(std::move(sig)), carriers_(std::move(carriers)), tables_(std::move(tables)) {
  if (carriers_.size() != sig_.sorts.size()) throw ValidationError("one carrier per sort required");
  if (tables_.size() != sig_.ops.size()) throw ValidationError("one table per operation required");
  for (std::size_t s = 0; s < carriers_.size(); ++s) {
    std::unordered_set<std::string> seen;
    for (const auto& label : carriers_[s]) {
      if (!seen.insert(label).second) {
        throw ValidationError("duplicate element '" + label + "' in carrier of '" + sig_.sorts[s] + "'");
      }
    }
  }
  for (std::size_t o = 0; o < sig_.ops.size(); ++o) {
    const Operation& op = sig_.ops[o];
    for (const auto& s : op.args) {
      if (carriers_[*sig_.sort_index(s)].empty()) {
        throw ValidationError("empty carrier for sort '" + s + "' used by '" + op.name + "'");
      }
    }
    const auto& result = carriers_[*sig_.sort_index(op.result)];
    if (result.empty()) {
      throw ValidationError("empty carrier for sort '" + op.result + "' used by '" + op.name + "'");
    }
    if (tables_[o].size() != table_size(sig_, carriers_, op)) {
      throw ValidationError("table of '" + op.name + "' is not total");
    }
    for (int v : tables_[o]) {
      if (v < 0 || static_cast<std::size_t>(v) >= result.size()) {
        throw ValidationError("table of '" + op.name + "' leaves the carrier of '" + op.result + "'");
      }
    }
  }
}

FiniteAlgebra FiniteAlgebra::from_entries(Signature sig,
                                          const std::map<std::string, std::vector<std::string>>& carriers,
                                          const std::vector<Entry>& entries) {
  std::vector<std::vector<std::string>> cs(sig.sorts.size());
  for (const auto& [sort, elems] : carriers) {
    auto idx = sig.sort_index(sort);
    if (!idx) throw ValidationError("carrier given for undeclared sort '" + sort + "'");
    cs[*idx] = elems;
  }
  for (std::size_t s = 0; s < sig.sorts.size(); ++s) {
    if (!carriers.count(sig.sorts[s])) {
      throw ValidationError("no carrier given for sort '" + sig.sorts[s] + "'");
    }
  }
  auto find = [&](std::size_t sort, const std::string& label) {
    const auto& c = cs[sort];
    auto it = std::find(c.begin(), c.end(), label);
    if (it == c.end()) {
      throw ValidationError("'" + label + "' is not an element of sort '" + sig.sorts[sort] + "'");
    }
    return static_cast<int>(it - c.begin());
  };

  std::vector<std::vector<int>> tables(sig.ops.size());
  for (std::size_t o = 0; o < sig.ops.size(); ++o) tables[o].assign(table_size(sig, cs, sig.ops[o]), -1);
  for (const auto& e : entries) {
    auto o = sig.op_index(e.op);
    if (!o) throw ValidationError("table entry for undeclared operation '" + e.op + "'");
    const Operation& op = sig.ops[*o];
    if (e.args.size() != op.args.size()) {
      throw ValidationError("table entry for '" + e.op + "' has wrong number of arguments");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < op.args.size(); ++i) {
      std::size_t s = *sig.sort_index(op.args[i]);
      idx = idx * cs[s].size() + static_cast<std::size_t>(find(s, e.args[i]));
    }
    int value = find(*sig.sort_index(op.result), e.result);
    if (tables[*o][idx] != -1 && tables[*o][idx] != value) {
      throw ValidationError("conflicting table entries for '" + e.op + "'");
    }
    tables[*o][idx] = value;
  }
  for (std::size_t o = 0; o < sig.ops.size(); ++o) {
    const Operation& op = sig.ops[o];
    for (std::size_t idx = 0; idx < tables[o].size(); ++idx) {
      if (tables[o][idx] != -1) continue;
      std::vector<std::string> args(op.args.size());
      std::size_t rest = idx;
      for (std::size_t i = op.args.size(); i-- > 0;) {
        const auto& c = cs[*sig.sort_index(op.args[i])];
        args[i] = c[rest % c.size()];
        rest /= c.size();
      }
      std::string shown = op.name;
      if (!args.empty()) {
        shown += "(";
        for (std::size_t i = 0; i < args.size(); ++i) shown += (i ? ", " : "") + args[i];
        shown += ")";
      }
      throw ValidationError("missing table entry for " + shown);
    }
  }
  return FiniteAlgebra(std::move(sig), std::move(cs), std::move(tables));
}

std::optional<int> FiniteAlgebra::element(std::size_t sort, std::string_view label) const {
  const auto& c = carriers_.at(sort);
  auto it = std::find(c.begin(), c.end(), label);
  if (it == c.end()) return std::nullopt;
  return static_cast<int>(it - c.begin());
}

int FiniteAlgebra::apply(std::size_t op, const std::vector<int>& args) const {
  const Operation& o = sig_.ops.at(op);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < o.args.size(); ++i) {
    idx = idx * carriers_[*sig_.sort_index(o.args[i])].size() + static_cast<std::size_t>(args[i]);
  }
  return tables_[op][idx];
}

namespace {

// Evaluation with variables bound to element indices by position.
class Evaluator {
 public:
  Evaluator(const FiniteAlgebra& a, const std::vector<Variable>& vars) : a_(a), vars_(vars) {}

  int eval(const Term& t, const std::vector<int>& env) const {
    if (t.is_variable()) {
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i].name == t.name()) return env[i];
      }
      throw ValidationError("unbound variable '" + t.name() + "'");
    }
    auto op = a_.signature().op_index(t.name());
    if (!op) throw ValidationError("undeclared operation '" + t.name() + "'");
    if (t.args().size() != a_.signature().ops[*op].args.size()) {
      throw ValidationError("operation '" + t.name() + "' applied to the wrong number of arguments");
    }
    std::vector<int> args;
    args.reserve(t.args().size());
    for (const auto& s : t.args()) args.push_back(eval(s, env));
    return a_.apply(*op, args);
  }

 private:
  const FiniteAlgebra& a_;
  const std::vector<Variable>& vars_;
};

}  // namespace

std::string eval_term(const FiniteAlgebra& a, const Environment& env, const Term& t) {
  const Signature& sig = a.signature();
  std::vector<Variable> vars;
  std::vector<int> values;
  for (const auto& [name, label] : env) {
    // The sort is recovered from the term's own variable occurrences.
    std::function<const Term*(const Term&)> find = [&](const Term& s) -> const Term* {
      if (s.is_variable()) return s.name() == name ? &s : nullptr;
      for (const auto& c : s.args()) {
        if (const Term* r = find(c)) return r;
      }
      return nullptr;
    };
    const Term* occurrence = find(t);
    if (!occurrence) continue;
    auto sort = sig.sort_index(occurrence->sort());
    if (!sort) throw ValidationError("variable '" + name + "' has undeclared sort");
    auto value = a.element(*sort, label);
    if (!value) {
      throw ValidationError("'" + label + "' is not an element of sort '" + occurrence->sort() + "'");
    }
    vars.push_back({name, occurrence->sort()});
    values.push_back(*value);
  }
  Evaluator ev(a, vars);
  int v = ev.eval(t, values);
  return a.carrier(*sig.sort_index(sort_of(sig, t)))[static_cast<std::size_t>(v)];
}

bool satisfies(const FiniteAlgebra& a, const Equation& e) {
  const Signature& sig = a.signature();
  std::vector<std::size_t> sizes;
  for (const auto& v : e.vars) {
    auto s = sig.sort_index(v.sort);
    if (!s) throw ValidationError("variable '" + v.name + "' has undeclared sort '" + v.sort + "'");
    sizes.push_back(a.carrier(*s).size());
    if (sizes.back() == 0) {
      throw ValidationError("cannot quantify over the empty carrier of sort '" + v.sort + "'");
    }
  }
  Evaluator ev(a, e.vars);
  std::vector<int> env(e.vars.size(), 0);
  while (true) {
    if (ev.eval(e.lhs, env) != ev.eval(e.rhs, env)) return false;
    std::size_t k = 0;
    while (k < env.size()) {
      if (static_cast<std::size_t>(++env[k]) < sizes[k]) break;
      env[k] = 0;
      ++k;
    }
    if (k == env.size()) return true;
  }
}

Morphism::Morphism(Signature source, Signature target, std::map<std::string, std::string> sorts,
                   std::map<std::string, std::string> ops)
    : source_(std::move(source)), target_(std::move(target)), sorts_(std::move(sorts)), ops_(std::move(ops)) {
  for (const auto& s : source_.sorts) {
    auto it = sorts_.find(s);
    if (it == sorts_.end()) throw ValidationError("morphism leaves sort '" + s + "' unmapped");
    if (!target_.sort_index(it->second)) {
      throw ValidationError("morphism maps sort '" + s + "' to undeclared sort '" + it->second + "'");
    }
  }
  for (const auto& [from, to] : sorts_) {
    if (!source_.sort_index(from)) throw ValidationError("morphism maps undeclared sort '" + from + "'");
  }
  for (const auto& op : source_.ops) {
    auto it = ops_.find(op.name);
    if (it == ops_.end()) throw ValidationError("morphism leaves operation '" + op.name + "' unmapped");
    const Operation* image = target_.find_op(it->second);
    if (!image) {
      throw ValidationError("morphism maps '" + op.name + "' to undeclared operation '" + it->second + "'");
    }
    bool ok = image->args.size() == op.args.size() && image->result == sorts_.at(op.result);
    for (std::size_t i = 0; ok && i < op.args.size(); ++i) ok = image->args[i] == sorts_.at(op.args[i]);
    if (!ok) {
      throw ValidationError("profile mismatch: '" + op.name + "' cannot map to '" + it->second + "'");
    }
  }
  for (const auto& [from, to] : ops_) {
    if (!source_.find_op(from)) throw ValidationError("morphism maps undeclared operation '" + from + "'");
  }
}

Morphism Morphism::identity(const Signature& sig) {
  std::map<std::string, std::string> sorts, ops;
  for (const auto& s : sig.sorts) sorts.emplace(s, s);
  for (const auto& o : sig.ops) ops.emplace(o.name, o.name);
  return Morphism(sig, sig, std::move(sorts), std::move(ops));
}

const std::string& Morphism::sort(const std::string& s) const {
  auto it = sorts_.find(s);
  if (it == sorts_.end()) throw ValidationError("morphism does not map sort '" + s + "'");
  return it->second;
}

const std::string& Morphism::op(const std::string& o) const {
  auto it = ops_.find(o);
  if (it == ops_.end()) throw ValidationError("morphism does not map operation '" + o + "'");
  return it->second;
}

Term translate(const Morphism& phi, const Term& t) {
  if (t.is_variable()) return Term::variable(t.name(), phi.sort(t.sort()));
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(translate(phi, a));
  return Term::apply(phi.op(t.name()), std::move(args));
}

Equation translate(const Morphism& phi, const Equation& e) {
  std::vector<Variable> vars;
  vars.reserve(e.vars.size());
  for (const auto& v : e.vars) vars.push_back({v.name, phi.sort(v.sort)});
  return Equation{std::move(vars), translate(phi, e.lhs), translate(phi, e.rhs)};
}

FiniteAlgebra reduct(const Morphism& phi, const FiniteAlgebra& a) {
  if (!(a.signature() == phi.target())) {
    throw ValidationError("reduct: algebra is not over the target signature");
  }
  const Signature& src = phi.source();
  const Signature& tgt = phi.target();
  std::vector<std::vector<std::string>> carriers;
  for (const auto& s : src.sorts) carriers.push_back(a.carrier(*tgt.sort_index(phi.sort(s))));
  std::vector<std::vector<int>> tables;
  for (const auto& o : src.ops) tables.push_back(a.tables()[*tgt.op_index(phi.op(o.name))]);
  return FiniteAlgebra(src, std::move(carriers), std::move(tables));
}

namespace {

// Odometer step over index tuples; false once every tuple has been visited.
template <class Limit>
bool advance(std::vector<std::size_t>& pick, Limit limit) {
  for (std::size_t k = pick.size(); k-- > 0;) {
    if (++pick[k] < limit(k)) return true;
    pick[k] = 0;
  }
  return false;
}

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) {
    out.insert(t.name());
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, out);
}

}  // namespace

std::vector<Equation> enumerate_equations(const Signature& sig, int max_depth, int max_vars) {
  const std::size_t nsorts = sig.sorts.size();
  std::vector<Variable> all_vars;
  std::vector<std::vector<Term>> terms(nsorts);
  for (std::size_t s = 0; s < nsorts; ++s) {
    for (int i = 1; i <= max_vars; ++i) {
      Variable v{sig.sorts[s] + "_" + std::to_string(i), sig.sorts[s]};
      terms[s].push_back(Term::variable(v.name, v.sort));
      all_vars.push_back(std::move(v));
    }
  }
  std::size_t total = 0;
  for (int d = 1; d <= max_depth; ++d) {
    auto next = terms;
    std::vector<std::unordered_set<std::string>> seen(nsorts);
    for (std::size_t s = 0; s < nsorts; ++s) {
      for (const auto& t : terms[s]) seen[s].insert(to_string(t));
    }
    for (const auto& op : sig.ops) {
      std::size_t rs = *sig.sort_index(op.result);
      std::vector<std::size_t> arg_sorts;
      for (const auto& a : op.args) arg_sorts.push_back(*sig.sort_index(a));
      bool possible = true;
      for (auto s : arg_sorts) possible = possible && !terms[s].empty();
      if (!possible) continue;
      std::vector<std::size_t> pick(arg_sorts.size(), 0);
      do {
        std::vector<Term> args;
        for (std::size_t i = 0; i < pick.size(); ++i) args.push_back(terms[arg_sorts[i]][pick[i]]);
        Term t = Term::apply(op.name, std::move(args));
        if (seen[rs].insert(to_string(t)).second) {
          next[rs].push_back(std::move(t));
          if (++total > kMaxEnumeration) throw ValidationError("fragment enumeration too large");
        }
      } while (advance(pick, [&](std::size_t i) { return terms[arg_sorts[i]].size(); }));
    }
    terms = std::move(next);
  }

  std::vector<Equation> out;
  for (std::size_t s = 0; s < nsorts; ++s) {
    for (const auto& lhs : terms[s]) {
      for (const auto& rhs : terms[s]) {
        std::set<std::string> used;
        collect_vars(lhs, used);
        collect_vars(rhs, used);
        std::vector<Variable> vars;
        for (const auto& v : all_vars) {
          if (used.count(v.name)) vars.push_back(v);
        }
        out.push_back(Equation{std::move(vars), lhs, rhs});
        if (out.size() > kMaxEnumeration) throw ValidationError("fragment enumeration too large");
      }
    }
  }
  return out;
}

bool in_fragment(const Equation& e, const FragmentSpec<Equation>& frag) {
  if (frag.kind != FragmentKind::Explicit) return true;
  return std::find(frag.sentences.begin(), frag.sentences.end(), e) != frag.sentences.end();
}

}  // namespace hybridkit::eq
