#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hybridkit/fragment.hpp"
#include "hybridkit/lexer.hpp"

/// Propositional logic: proposition-symbol signatures, two-valued valuations.
namespace hybridkit::pl {

struct Signature {
  std::vector<std::string> props;

  Signature() = default;
  /// Throws ValidationError on duplicate names.
  explicit Signature(std::vector<std::string> props);

  bool declares(std::string_view name) const;
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

enum class Op { Atom, Not, And, Or, Implies };

/// Immutable formula tree; copies share structure.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);

  Op op() const { return node_->op; }
  /// Atom name; empty for compound formulas.
  const std::string& name() const { return node_->name; }
  const Formula& lhs() const { return node_->args.at(0); }
  const Formula& rhs() const { return node_->args.at(1); }
  const std::vector<Formula>& args() const { return node_->args; }
  int depth() const { return node_->depth; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Op op;
    std::string name;
    std::vector<Formula> args;
    int depth;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Op op, std::string name, std::vector<Formula> args);

  std::shared_ptr<const Node> node_;
};

std::string to_string(const Formula& f);

/// Grammar: `!` > `/\` > `\/` > `=>` (right-associative), parentheses.
Formula parse_formula(Lexer& lexer);
Formula parse_formula(std::string_view text);

/// Throws ValidationError naming the first undeclared atom.
void check_formula(const Signature& sig, const Formula& f);

class Model {
 public:
  Model(Signature sig, std::vector<bool> values);
  /// Every declared proposition must be assigned exactly once.
  static Model from_assignments(Signature sig, const std::map<std::string, bool>& values);

  const Signature& signature() const { return sig_; }
  const std::vector<bool>& values() const { return values_; }
  bool value(std::string_view prop) const;

  friend bool operator==(const Model&, const Model&) = default;

 private:
  Signature sig_;
  std::vector<bool> values_;
};

class Morphism {
 public:
  /// `map` must send every source proposition to a target proposition.
  Morphism(Signature source, Signature target, std::map<std::string, std::string> map);
  static Morphism identity(const Signature& sig);

  const Signature& source() const { return source_; }
  const Signature& target() const { return target_; }
  const std::map<std::string, std::string>& map() const { return map_; }
  const std::string& apply(const std::string& prop) const;

 private:
  Signature source_;
  Signature target_;
  std::map<std::string, std::string> map_;
};

bool satisfies(const Model& m, const Formula& f);
Formula translate(const Morphism& phi, const Formula& f);
Model reduct(const Morphism& phi, const Model& m);

/// FULL: {¬,∧,∨,⇒}-closure of the atoms to the depth bound; NEGATION_FREE:
/// {∧,∨}-closure; ATOMS: the propositions.
std::vector<Formula> enumerate(const Signature& sig, FragmentKind kind, int max_depth);
bool in_fragment(const Formula& f, const FragmentSpec<Formula>& frag);

struct Logic {
  using Signature = pl::Signature;
  using Sentence = pl::Formula;
  using Model = pl::Model;
  using Morphism = pl::Morphism;

  static constexpr std::string_view name = "pl";

  static const Signature& signature_of(const Model& m) { return m.signature(); }
  static const Signature& source(const Morphism& phi) { return phi.source(); }
  static const Signature& target(const Morphism& phi) { return phi.target(); }
  static Morphism identity(const Signature& sig) { return Morphism::identity(sig); }
  static void check_sentence(const Signature& sig, const Sentence& s) { check_formula(sig, s); }
  static bool satisfies(const Model& m, const Sentence& s) { return pl::satisfies(m, s); }
  static Sentence translate(const Morphism& phi, const Sentence& s) { return pl::translate(phi, s); }
  static Model reduct(const Morphism& phi, const Model& m) { return pl::reduct(phi, m); }
  static std::vector<Sentence> enumerate(const Signature& sig, const FragmentSpec<Sentence>& frag) {
    return pl::enumerate(sig, frag.kind, frag.max_depth);
  }
  static bool in_fragment(const Sentence& s, const FragmentSpec<Sentence>& frag) {
    return pl::in_fragment(s, frag);
  }
  static std::vector<Sentence> atoms(const Signature& sig) {
    return pl::enumerate(sig, FragmentKind::Atoms, 0);
  }
  static std::string to_string(const Sentence& s) { return pl::to_string(s); }
};

}  // namespace hybridkit::pl
