#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hybridkit/eq.hpp"
#include "hybridkit/error.hpp"
#include "hybridkit/fragment.hpp"
#include "hybridkit/hybrid/sentence.hpp"
#include "hybridkit/mvl.hpp"
#include "hybridkit/pl.hpp"

/// Syntax trees of `.hyb` files. Every name carries its source position;
/// positions never take part in equality.
namespace hybridkit::frontend {

enum class LogicKind { PL, EQ, MVL };

struct Ident {
  std::string text;
  SourcePos pos;

  friend bool operator==(const Ident&, const Ident&) = default;
};

struct LatticeEntry {
  Ident x;
  Ident y;
  Ident result;

  friend bool operator==(const LatticeEntry&, const LatticeEntry&) = default;
};

/// Body of an inline lattice block or a `.lat` file.
struct LatticeBody {
  std::vector<Ident> elements;
  std::vector<std::pair<Ident, Ident>> order;
  std::vector<LatticeEntry> tensor;
  std::vector<LatticeEntry> residuum;

  friend bool operator==(const LatticeBody&, const LatticeBody&) = default;
};

struct LatticeSpec {
  enum class Source { Bool, Chain, File, Inline };
  Source source = Source::Bool;
  int chain = 0;
  std::string path;
  LatticeBody body;
  SourcePos pos;

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

struct OpDecl {
  Ident name;
  std::vector<Ident> args;
  Ident result;

  friend bool operator==(const OpDecl&, const OpDecl&) = default;
};

struct ModalityDecl {
  Ident name;
  int arity = 1;

  friend bool operator==(const ModalityDecl&, const ModalityDecl&) = default;
};

struct SignatureDecl {
  Ident name;
  std::vector<Ident> props;
  std::vector<Ident> sorts;
  std::vector<OpDecl> ops;
  std::vector<Ident> nominals;
  std::vector<ModalityDecl> modalities;

  friend bool operator==(const SignatureDecl&, const SignatureDecl&) = default;
};

/// `p = 1` (valuation or constant), `f(a, b) = c` (table row).
struct Assignment {
  Ident name;
  bool applied = false;
  std::vector<Ident> args;
  Ident value;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct CarrierDecl {
  Ident sort;
  std::vector<Ident> elements;

  friend bool operator==(const CarrierDecl&, const CarrierDecl&) = default;
};

/// A base model written out: valuations for PL/MVL, carriers and table rows
/// for EQ.
struct LocalBody {
  std::vector<CarrierDecl> carriers;
  std::vector<Assignment> entries;

  friend bool operator==(const LocalBody&, const LocalBody&) = default;
};

struct LocalDecl {
  Ident name;
  Ident signature;
  LocalBody body;

  friend bool operator==(const LocalDecl&, const LocalDecl&) = default;
};

struct WorldBody {
  Ident world;
  std::optional<Ident> local;
  LocalBody body;

  friend bool operator==(const WorldBody&, const WorldBody&) = default;
};

struct NominalBinding {
  Ident nominal;
  Ident world;

  friend bool operator==(const NominalBinding&, const NominalBinding&) = default;
};

struct RelationBinding {
  Ident modality;
  std::vector<std::vector<Ident>> tuples;

  friend bool operator==(const RelationBinding&, const RelationBinding&) = default;
};

struct ModelDecl {
  Ident name;
  Ident signature;
  std::vector<Ident> worlds;
  std::vector<NominalBinding> nominals;
  std::vector<RelationBinding> relations;
  std::vector<WorldBody> bodies;

  friend bool operator==(const ModelDecl&, const ModelDecl&) = default;
};

/// `prop p -> q;` and friends; kind is prop, sort, op, nominal or modality.
struct SymbolMap {
  std::string kind;
  Ident from;
  Ident to;

  friend bool operator==(const SymbolMap&, const SymbolMap&) = default;
};

struct MorphismDecl {
  Ident name;
  Ident source;
  Ident target;
  std::vector<SymbolMap> maps;

  friend bool operator==(const MorphismDecl&, const MorphismDecl&) = default;
};

template <class T>
struct Located {
  T value;
  SourcePos pos;

  friend bool operator==(const Located&, const Located&) = default;
};

template <class Sentence>
struct FragmentSyntax {
  FragmentKind kind = FragmentKind::Atoms;
  int depth = 1;
  int vars = 1;
  std::vector<Located<Sentence>> sentences;
  SourcePos pos;

  friend bool operator==(const FragmentSyntax&, const FragmentSyntax&) = default;
};

template <BaseInstitution L>
struct RelationDecl {
  Ident name;
  Ident left;
  Ident right;
  /// Absent or `id`: the identity on the left model's signature.
  std::optional<Ident> morphism;
  std::optional<FragmentSyntax<typename L::Sentence>> fragment;
  std::vector<std::pair<Ident, Ident>> pairs;

  friend bool operator==(const RelationDecl&, const RelationDecl&) = default;
};

template <BaseInstitution L>
struct SentenceDecl {
  Ident name;
  Ident signature;
  Located<HybridSentence<L>> sentence;

  friend bool operator==(const SentenceDecl&, const SentenceDecl&) = default;
};

enum class CommandKind { Sat, CheckBisim, FindBisim, CheckRefine, FindRefine, Translate, Reduct, Verify, Validate };

std::string_view to_string(CommandKind kind);

/// `subject` is the model (sat, find-*), relation (check-*, verify) or
/// morphism (translate, reduct); `object` is the right model of find-* and
/// the model of reduct.
template <BaseInstitution L>
struct Command {
  CommandKind kind = CommandKind::Validate;
  SourcePos pos;
  Ident subject;
  Ident object;
  std::optional<Ident> world;
  std::optional<Located<HybridSentence<L>>> sentence;
  std::optional<Ident> via;
  std::optional<FragmentSyntax<typename L::Sentence>> fragment;
  /// verify: `as bisim` or `as refine`.
  std::optional<Ident> mode;
  std::optional<int> depth;
  std::optional<std::vector<Located<typename L::Sentence>>> pool;

  friend bool operator==(const Command&, const Command&) = default;
};

template <BaseInstitution L>
struct Document {
  LogicKind logic = LogicKind::PL;
  /// False when the file has no `logic` header (it is then PL).
  bool has_header = false;
  std::optional<LatticeSpec> lattice;
  /// The lattice in use (MVL only); derived from `lattice`, not compared.
  mvl::LatticeRef resolved_lattice;

  std::vector<SignatureDecl> signatures;
  std::vector<LocalDecl> locals;
  std::vector<ModelDecl> models;
  std::vector<MorphismDecl> morphisms;
  std::vector<RelationDecl<L>> relations;
  std::vector<SentenceDecl<L>> sentences;
  std::vector<Command<L>> commands;

  friend bool operator==(const Document& a, const Document& b) {
    return a.logic == b.logic && a.has_header == b.has_header && a.lattice == b.lattice &&
           a.signatures == b.signatures && a.locals == b.locals && a.models == b.models &&
           a.morphisms == b.morphisms && a.relations == b.relations && a.sentences == b.sentences &&
           a.commands == b.commands;
  }
};

using SpecFile = std::variant<Document<pl::Logic>, Document<eq::Logic>, Document<mvl::Logic>>;

}  // namespace hybridkit::frontend
