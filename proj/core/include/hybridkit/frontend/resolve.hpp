#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hybridkit/equiv/relation.hpp"
#include "hybridkit/frontend/ast.hpp"
#include "hybridkit/frontend/base_syntax.hpp"
#include "hybridkit/hybrid/sentence.hpp"

namespace hybridkit::frontend {

inline constexpr const char* kIdentityMorphism = "id";

/// Resolved declarations of a document. Every reference was checked; every
/// failure is a ParseError at the offending name.
template <BaseInstitution L>
struct Workspace {
  typename BaseSyntax<L>::Context context;
  std::map<std::string, HybridSignature<L>> signatures;
  std::map<std::string, typename L::Model> locals;
  std::map<std::string, KripkeModel<L>> models;
  std::map<std::string, HybridMorphism<L>> morphisms;
  std::map<std::string, WorldRelation<L>> relations;
  std::map<std::string, HybridSentence<L>> sentences;
  /// Signature name of each local model, model and sentence; the source
  /// signature of each morphism.
  std::map<std::string, std::string> signature_of;

  const KripkeModel<L>& model(const Ident& id) const { return lookup(models, id, "model"); }
  const WorldRelation<L>& relation(const Ident& id) const { return lookup(relations, id, "relation"); }
  const HybridMorphism<L>& morphism(const Ident& id) const { return lookup(morphisms, id, "morphism"); }

  /// A declared morphism, or the identity on `sig` for `id` / no name.
  HybridMorphism<L> morphism_or_identity(const std::optional<Ident>& id, const HybridSignature<L>& sig) const {
    if (!id || id->text == kIdentityMorphism) return HybridMorphism<L>::identity(sig);
    return morphism(*id);
  }

  /// Checks a sentence against `sig`. A lone identifier that names a
  /// sentence declaration stands for that sentence.
  HybridSentence<L> sentence(const Located<HybridSentence<L>>& s, const HybridSignature<L>& sig) const {
    const HybridSentence<L>& v = s.value;
    if (v.op() == HybridOp::Nominal) {
      auto it = sentences.find(v.name());
      if (it != sentences.end()) {
        if (sig.has_nominal(v.name())) {
          throw ParseError(s.pos, "'" + v.name() + "' is both a nominal and a sentence name");
        }
        if (!(signatures.at(signature_of.at(v.name())) == sig)) {
          throw ParseError(s.pos, "sentence '" + v.name() + "' is over a different signature");
        }
        return it->second;
      }
    }
    try {
      validate_sentence(sig, v);
    } catch (const ValidationError& e) {
      throw ParseError(s.pos, e.what());
    }
    return v;
  }

  FragmentOf<L> fragment(const std::optional<FragmentSyntax<typename L::Sentence>>& f,
                         const typename L::Signature& sig) const {
    if (!f) return FragmentOf<L>::atoms();
    if (f->depth < 0 || f->vars < 0) throw ParseError(f->pos, "fragment bounds must be non-negative");
    switch (f->kind) {
      case FragmentKind::Atoms: return FragmentOf<L>::atoms();
      case FragmentKind::Full: return FragmentOf<L>::full(f->depth, f->vars);
      case FragmentKind::NegationFree: return FragmentOf<L>::negation_free(f->depth, f->vars);
      case FragmentKind::Explicit: break;
    }
    return FragmentOf<L>::explicit_list(base_sentences(f->sentences, sig));
  }

  std::vector<typename L::Sentence> base_sentences(const std::vector<Located<typename L::Sentence>>& list,
                                                   const typename L::Signature& sig) const {
    std::vector<typename L::Sentence> out;
    for (const auto& s : list) {
      try {
        L::check_sentence(sig, s.value);
      } catch (const ValidationError& e) {
        throw ParseError(s.pos, e.what());
      }
      out.push_back(s.value);
    }
    return out;
  }

 private:
  template <class T>
  static const T& lookup(const std::map<std::string, T>& m, const Ident& id, std::string_view what) {
    auto it = m.find(id.text);
    if (it == m.end()) throw ParseError(id.pos, "unknown " + std::string(what) + " '" + id.text + "'");
    return it->second;
  }
};

namespace detail {

template <BaseInstitution L>
class Resolver {
 public:
  using Syntax = BaseSyntax<L>;

  explicit Resolver(const Document<L>& doc) : doc_(doc) {
    if constexpr (std::is_same_v<L, mvl::Logic>) {
      ws_.context.lattice = doc.resolved_lattice;
      if (!ws_.context.lattice) ws_.context.lattice = std::make_shared<const mvl::ResiduatedLattice>(
                                    mvl::ResiduatedLattice::boolean());
    }
  }

  Workspace<L> run() {
    check_names();
    for (const auto& d : doc_.signatures) signature(d);
    for (const auto& d : doc_.locals) local(d);
    for (const auto& d : doc_.models) model(d);
    for (const auto& d : doc_.morphisms) morphism(d);
    for (const auto& d : doc_.relations) relation(d);
    for (const auto& d : doc_.sentences) {
      const auto& sig = find(ws_.signatures, d.signature, "signature");
      ws_.sentences.emplace(d.name.text, ws_.sentence(d.sentence, sig));
      ws_.signature_of[d.name.text] = d.signature.text;
    }
    return std::move(ws_);
  }

 private:
  void check_names() {
    std::map<std::string, SourcePos> seen;
    auto add = [&](const Ident& id) {
      if (id.text == kIdentityMorphism) throw ParseError(id.pos, "'id' is reserved for identity morphisms");
      auto [it, fresh] = seen.emplace(id.text, id.pos);
      if (!fresh) {
        throw ParseError(id.pos, "'" + id.text + "' is declared at " + it->second.str() + " and " + id.pos.str());
      }
    };
    for (const auto& d : doc_.signatures) add(d.name);
    for (const auto& d : doc_.locals) add(d.name);
    for (const auto& d : doc_.models) add(d.name);
    for (const auto& d : doc_.morphisms) add(d.name);
    for (const auto& d : doc_.relations) add(d.name);
    for (const auto& d : doc_.sentences) add(d.name);
  }

  template <class T>
  const T& find(const std::map<std::string, T>& m, const Ident& id, std::string_view what) const {
    auto it = m.find(id.text);
    if (it == m.end()) throw ParseError(id.pos, "unknown " + std::string(what) + " '" + id.text + "'");
    return it->second;
  }

  void signature(const SignatureDecl& d) {
    auto base = Syntax::signature(d, ws_.context);
    std::set<std::string> seen;
    std::vector<std::string> noms;
    for (const auto& i : d.nominals) {
      if (!seen.insert(i.text).second) throw ParseError(i.pos, "duplicate nominal '" + i.text + "'");
      noms.push_back(i.text);
    }
    seen.clear();
    std::vector<Modality> mods;
    for (const auto& m : d.modalities) {
      if (!seen.insert(m.name.text).second) throw ParseError(m.name.pos, "duplicate modality '" + m.name.text + "'");
      mods.push_back({m.name.text, m.arity});
    }
    ws_.signatures.emplace(d.name.text, HybridSignature<L>(std::move(base), std::move(noms), std::move(mods)));
  }

  void local(const LocalDecl& d) {
    const auto& sig = find(ws_.signatures, d.signature, "signature");
    ws_.locals.emplace(d.name.text, Syntax::model(sig.base, d.body, d.name.pos));
    ws_.signature_of[d.name.text] = d.signature.text;
  }

  void model(const ModelDecl& d) {
    const auto& sig = find(ws_.signatures, d.signature, "signature");
    KripkeModel<L> k{sig, {}, {}, {}, {}};
    std::set<std::string> worlds;
    auto world = [&](const Ident& w) {
      if (!worlds.count(w.text)) throw ParseError(w.pos, "unknown world '" + w.text + "' in model " + d.name.text);
    };
    for (const auto& w : d.worlds) {
      if (!worlds.insert(w.text).second) throw ParseError(w.pos, "duplicate world '" + w.text + "'");
      k.worlds.push_back(w.text);
    }
    for (const auto& b : d.nominals) {
      if (!sig.has_nominal(b.nominal.text)) throw ParseError(b.nominal.pos, "undeclared nominal '" + b.nominal.text + "'");
      world(b.world);
      if (!k.nominals.emplace(b.nominal.text, b.world.text).second) {
        throw ParseError(b.nominal.pos, "nominal '" + b.nominal.text + "' is interpreted twice");
      }
    }
    for (const auto& i : sig.nominals) {
      if (!k.nominals.count(i)) throw ParseError(d.name.pos, "model " + d.name.text + " does not interpret nominal '" + i + "'");
    }
    for (const auto& r : d.relations) {
      auto arity = sig.arity(r.modality.text);
      if (!arity) throw ParseError(r.modality.pos, "undeclared modality '" + r.modality.text + "'");
      auto& tuples = k.relations[r.modality.text];
      for (const auto& t : r.tuples) {
        if (t.size() != static_cast<std::size_t>(*arity) + 1) {
          throw ParseError(t.front().pos, "modality '" + r.modality.text + "' of arity " + std::to_string(*arity) +
                                              " needs tuples of " + std::to_string(*arity + 1) + " worlds");
        }
        Tuple tuple;
        for (const auto& w : t) {
          world(w);
          tuple.push_back(w.text);
        }
        tuples.insert(std::move(tuple));
      }
    }
    for (const auto& b : d.bodies) {
      world(b.world);
      if (k.locals.count(b.world.text)) throw ParseError(b.world.pos, "world '" + b.world.text + "' is described twice");
      if (b.local) {
        const auto& m = find(ws_.locals, *b.local, "local model");
        if (!(ws_.signatures.at(ws_.signature_of.at(b.local->text)).base == sig.base)) {
          throw ParseError(b.local->pos, "local model '" + b.local->text + "' is over a different signature");
        }
        k.locals.emplace(b.world.text, m);
      } else {
        k.locals.emplace(b.world.text, Syntax::model(sig.base, b.body, b.world.pos));
      }
    }
    for (const auto& w : k.worlds) {
      if (!k.locals.count(w)) throw ParseError(d.name.pos, "world '" + w + "' of model " + d.name.text + " has no local model");
    }
    auto problems = validate_model(k);
    if (!problems.empty()) throw ParseError(d.name.pos, problems.front());
    ws_.models.emplace(d.name.text, std::move(k));
    ws_.signature_of[d.name.text] = d.signature.text;
  }

  void morphism(const MorphismDecl& d) {
    const auto& source = find(ws_.signatures, d.source, "signature");
    const auto& target = find(ws_.signatures, d.target, "signature");
    auto base = Syntax::morphism(source.base, target.base, d.maps, d.name.pos);
    std::map<std::string, std::string> noms, mods;
    for (const auto& m : d.maps) {
      if (m.kind == "nominal") {
        if (!source.has_nominal(m.from.text)) throw ParseError(m.from.pos, "undeclared nominal '" + m.from.text + "'");
        if (!target.has_nominal(m.to.text)) throw ParseError(m.to.pos, "undeclared nominal '" + m.to.text + "'");
        if (!noms.emplace(m.from.text, m.to.text).second) throw ParseError(m.from.pos, "nominal '" + m.from.text + "' is mapped twice");
      } else if (m.kind == "modality") {
        auto a = source.arity(m.from.text);
        auto b = target.arity(m.to.text);
        if (!a) throw ParseError(m.from.pos, "undeclared modality '" + m.from.text + "'");
        if (!b) throw ParseError(m.to.pos, "undeclared modality '" + m.to.text + "'");
        if (*a != *b) throw ParseError(m.to.pos, "modality '" + m.from.text + "' of arity " + std::to_string(*a) +
                                                     " cannot map to '" + m.to.text + "' of arity " + std::to_string(*b));
        if (!mods.emplace(m.from.text, m.to.text).second) throw ParseError(m.from.pos, "modality '" + m.from.text + "' is mapped twice");
      }
    }
    for (const auto& i : source.nominals) {
      if (noms.count(i)) continue;
      if (!target.has_nominal(i)) throw ParseError(d.name.pos, "nominal '" + i + "' is not mapped");
      noms.emplace(i, i);
    }
    for (const auto& m : source.modalities) {
      if (mods.count(m.name)) continue;
      if (target.arity(m.name) != m.arity) throw ParseError(d.name.pos, "modality '" + m.name + "' is not mapped");
      mods.emplace(m.name, m.name);
    }
    ws_.signature_of[d.name.text] = d.source.text;
    try {
      ws_.morphisms.emplace(d.name.text, HybridMorphism<L>(source, target, std::move(base), noms, mods));
    } catch (const ValidationError& e) {
      throw ParseError(d.name.pos, e.what());
    }
  }

  void relation(const RelationDecl<L>& d) {
    if (d.left.text.empty()) throw ParseError(d.name.pos, "relation " + d.name.text + " has no left model");
    if (d.right.text.empty()) throw ParseError(d.name.pos, "relation " + d.name.text + " has no right model");
    const auto& left = find(ws_.models, d.left, "model");
    const auto& right = find(ws_.models, d.right, "model");
    auto phi = ws_.morphism_or_identity(d.morphism, left.signature);
    SourcePos where = d.morphism ? d.morphism->pos : d.name.pos;
    if (!(phi.source() == left.signature)) {
      throw ParseError(where, "morphism does not start at the signature of " + d.left.text);
    }
    if (!(phi.target() == right.signature)) {
      throw ParseError(where, "morphism does not end at the signature of " + d.right.text);
    }
    WorldRelation<L> r{left, right, phi, ws_.fragment(d.fragment, left.signature.base), {}};
    for (const auto& [a, b] : d.pairs) {
      if (!left.has_world(a.text)) throw ParseError(a.pos, "unknown world '" + a.text + "' in model " + d.left.text);
      if (!right.has_world(b.text)) throw ParseError(b.pos, "unknown world '" + b.text + "' in model " + d.right.text);
      r.pairs.emplace(a.text, b.text);
    }
    ws_.relations.emplace(d.name.text, std::move(r));
  }

  const Document<L>& doc_;
  Workspace<L> ws_;
};

}  // namespace detail

/// Resolves every declaration of a parsed document.
template <BaseInstitution L>
Workspace<L> resolve(const Document<L>& doc) {
  return detail::Resolver<L>(doc).run();
}

}  // namespace hybridkit::frontend
