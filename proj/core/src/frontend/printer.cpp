#include "hybridkit/frontend/printer.hpp"

#include "hybridkit/frontend/base_syntax.hpp"

namespace hybridkit::frontend {

namespace {

template <class T, class F>
std::string joined(const std::vector<T>& items, std::string_view sep, F f) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += f(items[i]);
  }
  return out;
}

std::string text(const Ident& id) { return id.text; }

std::string entries(const std::vector<LatticeEntry>& list, std::string_view op) {
  return joined(list, ", ", [op](const LatticeEntry& e) {
    return e.x.text + " " + std::string(op) + " " + e.y.text + " = " + e.result.text;
  });
}

std::string lattice_spec(const LatticeSpec& spec) {
  switch (spec.source) {
    case LatticeSpec::Source::Bool: return "bool";
    case LatticeSpec::Source::Chain: return "chain(" + std::to_string(spec.chain) + ")";
    case LatticeSpec::Source::File: return "\"" + spec.path + "\"";
    case LatticeSpec::Source::Inline: break;
  }
  std::string body = print_lattice_body(spec.body);
  std::string out = "lattice {\n";
  std::size_t start = 0;
  while (start < body.size()) {
    auto end = body.find('\n', start);
    out += "  " + body.substr(start, end - start) + "\n";
    start = end + 1;
  }
  return out + "}";
}

std::string local_body(const LocalBody& body, const std::string& indent) {
  if (body.carriers.empty() && body.entries.empty()) return "{ }";
  std::string out = "{\n";
  for (const auto& c : body.carriers) {
    out += indent + "  carrier " + c.sort.text + " = {" + joined(c.elements, ", ", text) + "};\n";
  }
  for (const auto& a : body.entries) {
    out += indent + "  " + a.name.text;
    if (a.applied) out += "(" + joined(a.args, ", ", text) + ")";
    out += " = " + a.value.text + ";\n";
  }
  return out + indent + "}";
}

std::string signature(const SignatureDecl& d) {
  std::string out = "signature " + d.name.text + " {\n";
  if (!d.props.empty()) out += "  props " + joined(d.props, ", ", text) + ";\n";
  if (!d.sorts.empty()) out += "  sorts " + joined(d.sorts, ", ", text) + ";\n";
  if (!d.ops.empty()) {
    out += "  ops " + joined(d.ops, ", ", [](const OpDecl& op) {
             std::string s = op.name.text + " :";
             for (const auto& a : op.args) s += " " + a.text;
             return s + " -> " + op.result.text;
           }) + ";\n";
  }
  if (!d.nominals.empty()) out += "  nominals " + joined(d.nominals, ", ", text) + ";\n";
  if (!d.modalities.empty()) {
    out += "  modalities " + joined(d.modalities, ", ", [](const ModalityDecl& m) {
             return m.name.text + "/" + std::to_string(m.arity);
           }) + ";\n";
  }
  return out + "}\n";
}

std::string tuple(const std::vector<Ident>& t) { return "(" + joined(t, ", ", text) + ")"; }

std::string model(const ModelDecl& d) {
  std::string out = "model " + d.name.text + " : " + d.signature.text + " {\n";
  if (!d.worlds.empty()) out += "  worlds " + joined(d.worlds, ", ", text) + ";\n";
  for (const auto& n : d.nominals) out += "  nominal " + n.nominal.text + " = " + n.world.text + ";\n";
  for (const auto& r : d.relations) {
    out += "  relation " + r.modality.text + " = " + joined(r.tuples, ", ", tuple) + ";\n";
  }
  for (const auto& b : d.bodies) {
    out += "  world " + b.world.text;
    out += b.local ? " = " + b.local->text + ";\n" : " " + local_body(b.body, "  ") + "\n";
  }
  return out + "}\n";
}

std::string morphism(const MorphismDecl& d) {
  std::string out = "morphism " + d.name.text + " : " + d.source.text + " -> " + d.target.text + " {\n";
  for (const auto& m : d.maps) out += "  " + m.kind + " " + m.from.text + " -> " + m.to.text + ";\n";
  return out + "}\n";
}

template <BaseInstitution L>
std::string base_block(const std::vector<Located<typename L::Sentence>>& list) {
  if (list.empty()) return "{ }";
  return "{ " + joined(list, "; ", [](const auto& s) { return L::to_string(s.value); }) + " }";
}

template <BaseInstitution L>
std::string fragment(const FragmentSyntax<typename L::Sentence>& f) {
  switch (f.kind) {
    case FragmentKind::Atoms: return "fragment atoms";
    case FragmentKind::Explicit: return "fragment explicit " + base_block<L>(f.sentences);
    case FragmentKind::Full:
    case FragmentKind::NegationFree: break;
  }
  return "fragment " + std::string(to_string(f.kind)) + "(depth=" + std::to_string(f.depth) +
         ", vars=" + std::to_string(f.vars) + ")";
}

template <BaseInstitution L>
std::string relation(const RelationDecl<L>& d) {
  std::string out = "relation " + d.name.text + " {\n";
  out += "  left " + d.left.text + ";\n";
  out += "  right " + d.right.text + ";\n";
  if (d.morphism) out += "  morphism " + d.morphism->text + ";\n";
  if (d.fragment) out += "  " + fragment<L>(*d.fragment) + ";\n";
  if (!d.pairs.empty()) {
    out += "  pairs " + joined(d.pairs, ", ", [](const auto& p) {
             return "(" + p.first.text + ", " + p.second.text + ")";
           }) + ";\n";
  }
  return out + "}\n";
}

}  // namespace

std::string print_lattice_body(const LatticeBody& body) {
  std::string out;
  if (!body.elements.empty()) out += "elements " + joined(body.elements, ", ", text) + ";\n";
  if (!body.order.empty()) {
    out += "order " + joined(body.order, ", ", [](const auto& p) { return p.first.text + " < " + p.second.text; }) +
           ";\n";
  }
  if (!body.tensor.empty()) out += "tensor " + entries(body.tensor, "*") + ";\n";
  if (!body.residuum.empty()) out += "residuum " + entries(body.residuum, "->") + ";\n";
  return out;
}

template <BaseInstitution L>
std::string print_command(const Command<L>& c) {
  std::string out(to_string(c.kind));
  switch (c.kind) {
    case CommandKind::Sat:
      out += " " + c.subject.text;
      if (c.world) out += " @ " + c.world->text;
      out += " : " + to_string(c.sentence->value);
      break;
    case CommandKind::CheckBisim:
    case CommandKind::CheckRefine:
      out += " " + c.subject.text;
      break;
    case CommandKind::FindBisim:
    case CommandKind::FindRefine:
      out += " " + c.subject.text + ", " + c.object.text;
      if (c.via) out += " via " + c.via->text;
      if (c.fragment) out += " " + fragment<L>(*c.fragment);
      break;
    case CommandKind::Translate:
      out += " " + c.subject.text + " : " + to_string(c.sentence->value);
      break;
    case CommandKind::Reduct:
      out += " " + c.subject.text + " " + c.object.text;
      break;
    case CommandKind::Verify:
      out += " " + c.subject.text;
      if (c.mode) out += " as " + c.mode->text;
      if (c.depth) out += " depth " + std::to_string(*c.depth);
      if (c.pool) out += " pool " + base_block<L>(*c.pool);
      break;
    case CommandKind::Validate: break;
  }
  return out + ";";
}

template <BaseInstitution L>
std::string print_document(const Document<L>& doc) {
  std::string out;
  if (doc.has_header) {
    out += "logic ";
    switch (doc.logic) {
      case LogicKind::PL: out += "pl"; break;
      case LogicKind::EQ: out += "eq"; break;
      case LogicKind::MVL: out += "mvl " + lattice_spec(*doc.lattice); break;
    }
    out += ";\n\n";
  }
  for (const auto& d : doc.signatures) out += signature(d) + "\n";
  for (const auto& d : doc.locals) {
    out += "local " + d.name.text + " : " + d.signature.text + " " + local_body(d.body, "") + "\n\n";
  }
  for (const auto& d : doc.models) out += model(d) + "\n";
  for (const auto& d : doc.morphisms) out += morphism(d) + "\n";
  for (const auto& d : doc.relations) out += relation<L>(d) + "\n";
  for (const auto& d : doc.sentences) {
    out += "sentence " + d.name.text + " : " + d.signature.text + " = " + to_string(d.sentence.value) + ";\n";
  }
  if (!doc.sentences.empty()) out += "\n";
  for (const auto& c : doc.commands) out += print_command(c) + "\n";
  while (out.size() > 1 && out[out.size() - 1] == '\n' && out[out.size() - 2] == '\n') out.pop_back();
  return out;
}

std::string print_spec(const SpecFile& spec) {
  return std::visit([](const auto& doc) { return print_document(doc); }, spec);
}

template <BaseInstitution L>
std::string print_model(const std::string& name, const std::string& sig, const KripkeModel<L>& k) {
  ModelDecl d;
  d.name.text = name;
  d.signature.text = sig;
  for (const auto& w : k.worlds) d.worlds.push_back({w, {}});
  for (const auto& [i, w] : k.nominals) d.nominals.push_back({{i, {}}, {w, {}}});
  for (const auto& [lam, tuples] : k.relations) {
    if (tuples.empty()) continue;
    RelationBinding r{{lam, {}}, {}};
    for (const auto& t : tuples) {
      std::vector<Ident> ids;
      for (const auto& w : t) ids.push_back({w, {}});
      r.tuples.push_back(std::move(ids));
    }
    d.relations.push_back(std::move(r));
  }
  for (const auto& w : k.worlds) {
    d.bodies.push_back({{w, {}}, std::nullopt, BaseSyntax<L>::describe(k.local(w))});
  }
  return model(d);
}

#define HYBRIDKIT_INSTANTIATE(L)                                                         \
  template std::string print_document<L>(const Document<L>&);                            \
  template std::string print_command<L>(const Command<L>&);                              \
  template std::string print_model<L>(const std::string&, const std::string&, const KripkeModel<L>&);

HYBRIDKIT_INSTANTIATE(pl::Logic)
HYBRIDKIT_INSTANTIATE(eq::Logic)
HYBRIDKIT_INSTANTIATE(mvl::Logic)

#undef HYBRIDKIT_INSTANTIATE

}  // namespace hybridkit::frontend
