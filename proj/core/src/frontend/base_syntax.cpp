#include "hybridkit/frontend/base_syntax.hpp"

#include <map>
#include <set>

namespace hybridkit::frontend {

namespace {

Ident bare(std::string text) { return {std::move(text), {}}; }

std::vector<std::string> names(const std::vector<Ident>& ids) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  for (const auto& id : ids) {
    if (!seen.insert(id.text).second) throw ParseError(id.pos, "duplicate name '" + id.text + "'");
    out.push_back(id.text);
  }
  return out;
}

void reject(const std::vector<Ident>& ids, std::string_view what, std::string_view logic) {
  if (!ids.empty()) {
    throw ParseError(ids.front().pos, std::string(what) + " are not allowed in " + std::string(logic) + " signatures");
  }
}

void reject_ops(const SignatureDecl& decl, std::string_view logic) {
  if (!decl.ops.empty()) {
    throw ParseError(decl.ops.front().name.pos, "ops are not allowed in " + std::string(logic) + " signatures");
  }
}

/// Calls `f`, turning a ValidationError into a ParseError at `where`.
template <class F>
auto positioned(SourcePos where, F f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw ParseError(where, e.what());
  }
}

/// Valuation-style bodies: `p = v` for every proposition exactly once.
std::map<std::string, Ident> valuation(const std::vector<std::string>& props, const LocalBody& body,
                                       SourcePos where) {
  if (!body.carriers.empty()) throw ParseError(body.carriers.front().sort.pos, "carriers are only allowed in eq models");
  std::map<std::string, Ident> out;
  for (const auto& a : body.entries) {
    if (a.applied) throw ParseError(a.name.pos, "'" + a.name.text + "' is a proposition, not an operation");
    if (std::find(props.begin(), props.end(), a.name.text) == props.end()) {
      throw ParseError(a.name.pos, "undeclared proposition '" + a.name.text + "'");
    }
    if (!out.emplace(a.name.text, a.value).second) {
      throw ParseError(a.name.pos, "proposition '" + a.name.text + "' is assigned twice");
    }
  }
  for (const auto& p : props) {
    if (!out.count(p)) throw ParseError(where, "proposition '" + p + "' is not assigned");
  }
  return out;
}

/// Symbol maps of one kind; unlisted symbols keep their name when the target
/// declares it.
std::map<std::string, std::string> symbol_map(const std::vector<SymbolMap>& maps, std::string_view kind,
                                              const std::vector<std::string>& source,
                                              const std::vector<std::string>& target, SourcePos where) {
  std::map<std::string, std::string> out;
  auto declared = [](const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  for (const auto& m : maps) {
    if (m.kind != kind) continue;
    if (!declared(source, m.from.text)) {
      throw ParseError(m.from.pos, "'" + m.from.text + "' is not a " + std::string(kind) + " of the source signature");
    }
    if (!declared(target, m.to.text)) {
      throw ParseError(m.to.pos, "'" + m.to.text + "' is not a " + std::string(kind) + " of the target signature");
    }
    if (!out.emplace(m.from.text, m.to.text).second) {
      throw ParseError(m.from.pos, std::string(kind) + " '" + m.from.text + "' is mapped twice");
    }
  }
  for (const auto& s : source) {
    if (out.count(s)) continue;
    if (!declared(target, s)) throw ParseError(where, std::string(kind) + " '" + s + "' is not mapped");
    out.emplace(s, s);
  }
  return out;
}

void allow_kinds(const std::vector<SymbolMap>& maps, std::initializer_list<std::string_view> kinds,
                 std::string_view logic) {
  for (const auto& m : maps) {
    if (m.kind == "nominal" || m.kind == "modality") continue;
    if (std::find(kinds.begin(), kinds.end(), m.kind) == kinds.end()) {
      throw ParseError(m.from.pos, m.kind + " maps are not allowed in " + std::string(logic) + " morphisms");
    }
  }
}

}  // namespace

// PL ---------------------------------------------------------------------------

pl::Formula BaseSyntax<pl::Logic>::parse(Lexer& lexer, const Context&) { return pl::parse_formula(lexer); }

pl::Signature BaseSyntax<pl::Logic>::signature(const SignatureDecl& decl, const Context&) {
  reject(decl.sorts, "sorts", "pl");
  reject_ops(decl, "pl");
  return pl::Signature(names(decl.props));
}

pl::Model BaseSyntax<pl::Logic>::model(const pl::Signature& sig, const LocalBody& body, SourcePos where) {
  std::map<std::string, bool> values;
  for (const auto& [p, v] : valuation(sig.props, body, where)) {
    if (v.text == "1" || v.text == "true") {
      values[p] = true;
    } else if (v.text == "0" || v.text == "false") {
      values[p] = false;
    } else {
      throw ParseError(v.pos, "'" + v.text + "' is not a truth value", {"0", "1", "true", "false"});
    }
  }
  return positioned(where, [&] { return pl::Model::from_assignments(sig, values); });
}

pl::Morphism BaseSyntax<pl::Logic>::morphism(const pl::Signature& source, const pl::Signature& target,
                                             const std::vector<SymbolMap>& maps, SourcePos where) {
  allow_kinds(maps, {"prop"}, "pl");
  auto map = symbol_map(maps, "prop", source.props, target.props, where);
  return positioned(where, [&] { return pl::Morphism(source, target, map); });
}

LocalBody BaseSyntax<pl::Logic>::describe(const pl::Model& m) {
  LocalBody body;
  for (std::size_t i = 0; i < m.signature().props.size(); ++i) {
    body.entries.push_back({bare(m.signature().props[i]), false, {}, bare(m.values()[i] ? "1" : "0")});
  }
  return body;
}

// EQ ---------------------------------------------------------------------------

eq::Equation BaseSyntax<eq::Logic>::parse(Lexer& lexer, const Context&) { return eq::parse_equation(lexer); }

eq::Signature BaseSyntax<eq::Logic>::signature(const SignatureDecl& decl, const Context&) {
  reject(decl.props, "props", "eq");
  auto sorts = names(decl.sorts);
  std::set<std::string> seen;
  std::vector<eq::Operation> ops;
  for (const auto& op : decl.ops) {
    if (!seen.insert(op.name.text).second) throw ParseError(op.name.pos, "duplicate operation '" + op.name.text + "'");
    eq::Operation o{op.name.text, {}, op.result.text};
    for (const auto& a : op.args) {
      if (std::find(sorts.begin(), sorts.end(), a.text) == sorts.end()) {
        throw ParseError(a.pos, "undeclared sort '" + a.text + "'");
      }
      o.args.push_back(a.text);
    }
    if (std::find(sorts.begin(), sorts.end(), op.result.text) == sorts.end()) {
      throw ParseError(op.result.pos, "undeclared sort '" + op.result.text + "'");
    }
    ops.push_back(std::move(o));
  }
  SourcePos where = decl.name.pos;
  return positioned(where, [&] { return eq::Signature(sorts, ops); });
}

eq::FiniteAlgebra BaseSyntax<eq::Logic>::model(const eq::Signature& sig, const LocalBody& body, SourcePos where) {
  std::map<std::string, std::vector<std::string>> carriers;
  for (const auto& c : body.carriers) {
    if (!sig.sort_index(c.sort.text)) throw ParseError(c.sort.pos, "undeclared sort '" + c.sort.text + "'");
    if (c.elements.empty()) throw ParseError(c.sort.pos, "carrier of sort '" + c.sort.text + "' is empty");
    auto elems = names(c.elements);
    if (!carriers.emplace(c.sort.text, std::move(elems)).second) {
      throw ParseError(c.sort.pos, "carrier of sort '" + c.sort.text + "' is given twice");
    }
  }
  for (const auto& s : sig.sorts) {
    if (!carriers.count(s)) throw ParseError(where, "no carrier given for sort '" + s + "'");
  }
  std::vector<eq::FiniteAlgebra::Entry> entries;
  for (const auto& a : body.entries) {
    const eq::Operation* op = sig.find_op(a.name.text);
    if (!op) throw ParseError(a.name.pos, "undeclared operation '" + a.name.text + "'");
    if (a.args.size() != op->args.size()) {
      throw ParseError(a.name.pos, "operation '" + a.name.text + "' takes " + std::to_string(op->args.size()) +
                                       " argument(s), " + std::to_string(a.args.size()) + " given");
    }
    auto check = [&](const Ident& e, const std::string& sort) {
      const auto& c = carriers.at(sort);
      if (std::find(c.begin(), c.end(), e.text) == c.end()) {
        throw ParseError(e.pos, "'" + e.text + "' is not an element of sort '" + sort + "'");
      }
    };
    eq::FiniteAlgebra::Entry entry{a.name.text, {}, a.value.text};
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      check(a.args[i], op->args[i]);
      entry.args.push_back(a.args[i].text);
    }
    check(a.value, op->result);
    entries.push_back(std::move(entry));
  }
  return positioned(where, [&] { return eq::FiniteAlgebra::from_entries(sig, carriers, entries); });
}

eq::Morphism BaseSyntax<eq::Logic>::morphism(const eq::Signature& source, const eq::Signature& target,
                                             const std::vector<SymbolMap>& maps, SourcePos where) {
  allow_kinds(maps, {"sort", "op"}, "eq");
  auto op_names = [](const eq::Signature& sig) {
    std::vector<std::string> out;
    for (const auto& op : sig.ops) out.push_back(op.name);
    return out;
  };
  auto sorts = symbol_map(maps, "sort", source.sorts, target.sorts, where);
  auto ops = symbol_map(maps, "op", op_names(source), op_names(target), where);
  return positioned(where, [&] { return eq::Morphism(source, target, sorts, ops); });
}

LocalBody BaseSyntax<eq::Logic>::describe(const eq::FiniteAlgebra& m) {
  const eq::Signature& sig = m.signature();
  LocalBody body;
  for (std::size_t s = 0; s < sig.sorts.size(); ++s) {
    CarrierDecl c{bare(sig.sorts[s]), {}};
    for (const auto& e : m.carrier(s)) c.elements.push_back(bare(e));
    body.carriers.push_back(std::move(c));
  }
  for (std::size_t o = 0; o < sig.ops.size(); ++o) {
    const eq::Operation& op = sig.ops[o];
    const auto& result = m.carrier(*sig.sort_index(op.result));
    std::vector<std::size_t> sizes;
    for (const auto& a : op.args) sizes.push_back(m.carrier(*sig.sort_index(a)).size());
    for (std::size_t idx = 0; idx < m.tables()[o].size(); ++idx) {
      Assignment a{bare(op.name), !op.args.empty(), std::vector<Ident>(op.args.size()), {}};
      std::size_t rest = idx;
      for (std::size_t i = op.args.size(); i-- > 0;) {
        a.args[i] = bare(m.carrier(*sig.sort_index(op.args[i]))[rest % sizes[i]]);
        rest /= sizes[i];
      }
      a.value = bare(result[static_cast<std::size_t>(m.tables()[o][idx])]);
      body.entries.push_back(std::move(a));
    }
  }
  return body;
}

// MVL --------------------------------------------------------------------------

mvl::Sentence BaseSyntax<mvl::Logic>::parse(Lexer& lexer, const Context& ctx) {
  return mvl::parse_sentence(lexer, *ctx.lattice);
}

mvl::Signature BaseSyntax<mvl::Logic>::signature(const SignatureDecl& decl, const Context& ctx) {
  reject(decl.sorts, "sorts", "mvl");
  reject_ops(decl, "mvl");
  for (const auto& p : decl.props) {
    if (p.text == "top" || p.text == "bot") throw ParseError(p.pos, "'" + p.text + "' is reserved");
  }
  return mvl::Signature(names(decl.props), ctx.lattice);
}

mvl::Model BaseSyntax<mvl::Logic>::model(const mvl::Signature& sig, const LocalBody& body, SourcePos where) {
  std::map<std::string, std::string> values;
  for (const auto& [p, v] : valuation(sig.props, body, where)) {
    if (!sig.lattice->index_of(v.text)) {
      throw ParseError(v.pos, "'" + v.text + "' is not an element of lattice " + sig.lattice->name());
    }
    values[p] = v.text;
  }
  return positioned(where, [&] { return mvl::Model::from_assignments(sig, values); });
}

mvl::Morphism BaseSyntax<mvl::Logic>::morphism(const mvl::Signature& source, const mvl::Signature& target,
                                               const std::vector<SymbolMap>& maps, SourcePos where) {
  allow_kinds(maps, {"prop"}, "mvl");
  auto map = symbol_map(maps, "prop", source.props, target.props, where);
  return positioned(where, [&] { return mvl::Morphism(source, target, map); });
}

LocalBody BaseSyntax<mvl::Logic>::describe(const mvl::Model& m) {
  LocalBody body;
  for (std::size_t i = 0; i < m.signature().props.size(); ++i) {
    body.entries.push_back({bare(m.signature().props[i]), false, {}, bare(m.lattice().label(m.values()[i]))});
  }
  return body;
}

}  // namespace hybridkit::frontend
