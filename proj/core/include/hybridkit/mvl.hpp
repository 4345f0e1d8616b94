#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hybridkit/fragment.hpp"
#include "hybridkit/lexer.hpp"

/// Multi-valued propositional logic graded over a finite residuated lattice.
namespace hybridkit::mvl {

/// Finite residuated lattice given by tables over element indices.
///
/// Construction never rejects an ill-behaved structure (a missing meet, a
/// tensor without unit, ...); those are reported by lattice_validate. Entries
/// that do not exist are stored as -1.
class ResiduatedLattice {
 public:
  /// Łukasiewicz chain {0, 1/(n-1), ..., 1} with x⊗y = max{0, x+y-1} and
  /// x⇒y = min{1, 1-x+y}. Requires n ≥ 2.
  static ResiduatedLattice chain(int n);
  /// Two-element Boolean lattice {0, 1} with ⊗ = ∧.
  static ResiduatedLattice boolean();

  /// `order` lists generating pairs a ≤ b by index; the reflexive-transitive
  /// closure is taken. `tensor` is row-major n×n (-1 = missing). When
  /// `residuum` is absent it is derived as x⇒z = max{y | x⊗y ≤ z}.
  static ResiduatedLattice from_tables(std::string name, std::vector<std::string> elements,
                                       const std::vector<std::pair<int, int>>& order,
                                       std::vector<int> tensor,
                                       std::optional<std::vector<int>> residuum = std::nullopt);

  const std::string& name() const { return name_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::string& label(int x) const { return elements_.at(static_cast<std::size_t>(x)); }
  /// Exact label match, or for numeric labels a match by value (`0.5` finds `1/2`).
  std::optional<int> index_of(std::string_view label) const;

  bool leq(int x, int y) const { return leq_[at(x, y)]; }
  int meet(int x, int y) const { return meet_[at(x, y)]; }
  int join(int x, int y) const { return join_[at(x, y)]; }
  int tensor(int x, int y) const { return tensor_[at(x, y)]; }
  int residuum(int x, int y) const { return residuum_[at(x, y)]; }
  int top() const { return top_; }
  int bottom() const { return bottom_; }

  /// Tables in row-major order, for serialisation.
  const std::vector<int>& tensor_table() const { return tensor_; }
  const std::vector<int>& residuum_table() const { return residuum_; }
  /// Covering pairs (x, y) with x < y and nothing strictly between.
  std::vector<std::pair<int, int>> covers() const;

  friend bool operator==(const ResiduatedLattice&, const ResiduatedLattice&) = default;

 private:
  ResiduatedLattice() = default;
  std::size_t at(int x, int y) const {
    return static_cast<std::size_t>(x) * elements_.size() + static_cast<std::size_t>(y);
  }
  void derive_order_structure();

  std::string name_;
  std::vector<std::string> elements_;
  std::vector<bool> leq_;
  std::vector<int> meet_, join_, tensor_, residuum_;
  int top_ = -1;
  int bottom_ = -1;
};

using LatticeRef = std::shared_ptr<const ResiduatedLattice>;

struct LatticeReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

/// Checks every residuated-lattice law exhaustively, listing each violated
/// instance (order, meets/joins, bounds, associativity, commutativity, unit,
/// monotonicity, and y ≤ (x⇒z) ⇔ x⊗y ≤ z on all triples).
LatticeReport lattice_validate(const ResiduatedLattice& lattice);

enum class Op { Atom, Top, Bottom, Or, Tensor, Implies };

class Formula {
 public:
  static Formula atom(std::string name);
  static Formula top();
  static Formula bottom();
  static Formula disjunction(Formula a, Formula b);
  static Formula tensor(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);

  Op op() const { return node_->op; }
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
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Op op, std::string name, std::vector<Formula> args);
  std::shared_ptr<const Node> node_;
};

/// Graded sentence (ρ, p): holds when p ≤ the value of ρ.
struct Sentence {
  Formula formula;
  int grade = 0;
  std::string grade_label;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

std::string to_string(const Formula& f);
std::string to_string(const Sentence& s);

/// Formula grammar: `*` (⊗) > `\/` > `->` (right-associative); `top`, `bot`.
Formula parse_formula(Lexer& lexer);
/// `(formula, grade)`; the grade must name an element of the lattice.
Sentence parse_sentence(Lexer& lexer, const ResiduatedLattice& lattice);
Sentence parse_sentence(std::string_view text, const ResiduatedLattice& lattice);

Sentence graded(Formula f, const ResiduatedLattice& lattice, int grade);

struct Signature {
  std::vector<std::string> props;
  LatticeRef lattice;

  Signature() = default;
  Signature(std::vector<std::string> props, LatticeRef lattice);

  std::optional<std::size_t> index_of(std::string_view name) const;
  bool declares(std::string_view name) const { return index_of(name).has_value(); }

  friend bool operator==(const Signature& a, const Signature& b);
};

void check_sentence(const Signature& sig, const Sentence& s);

class Model {
 public:
  Model(Signature sig, std::vector<int> values);
  /// Values given as element labels; every proposition exactly once.
  static Model from_assignments(Signature sig, const std::map<std::string, std::string>& values);

  const Signature& signature() const { return sig_; }
  const ResiduatedLattice& lattice() const { return *sig_.lattice; }
  const std::vector<int>& values() const { return values_; }
  int value(std::string_view prop) const;

  friend bool operator==(const Model&, const Model&) = default;

 private:
  Signature sig_;
  std::vector<int> values_;
};

class Morphism {
 public:
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

/// Truth value of a formula: atoms from the valuation, connectives by table.
int eval(const Model& m, const Formula& f);
bool satisfies(const Model& m, const Sentence& s);
Formula translate(const Morphism& phi, const Formula& f);
Sentence translate(const Morphism& phi, const Sentence& s);
Model reduct(const Morphism& phi, const Model& m);

/// Formulas paired with every grade. ATOMS: propositions; NEGATION_FREE:
/// {∨,⊗,⊤,⊥}-closure; FULL: {⇒,∨,⊗,⊤,⊥}-closure, to the depth bound.
std::vector<Sentence> enumerate(const Signature& sig, FragmentKind kind, int max_depth);
bool in_fragment(const Sentence& s, const FragmentSpec<Sentence>& frag);

struct Logic {
  using Signature = mvl::Signature;
  using Sentence = mvl::Sentence;
  using Model = mvl::Model;
  using Morphism = mvl::Morphism;

  static constexpr std::string_view name = "mvl";

  static const Signature& signature_of(const Model& m) { return m.signature(); }
  static const Signature& source(const Morphism& phi) { return phi.source(); }
  static const Signature& target(const Morphism& phi) { return phi.target(); }
  static Morphism identity(const Signature& sig) { return Morphism::identity(sig); }
  static void check_sentence(const Signature& sig, const Sentence& s) { mvl::check_sentence(sig, s); }
  static bool satisfies(const Model& m, const Sentence& s) { return mvl::satisfies(m, s); }
  static Sentence translate(const Morphism& phi, const Sentence& s) { return mvl::translate(phi, s); }
  static Model reduct(const Morphism& phi, const Model& m) { return mvl::reduct(phi, m); }
  static std::vector<Sentence> enumerate(const Signature& sig, const FragmentSpec<Sentence>& frag) {
    return mvl::enumerate(sig, frag.kind, frag.max_depth);
  }
  static bool in_fragment(const Sentence& s, const FragmentSpec<Sentence>& frag) {
    return mvl::in_fragment(s, frag);
  }
  static std::vector<Sentence> atoms(const Signature& sig) {
    return mvl::enumerate(sig, FragmentKind::Atoms, 0);
  }
  static std::string to_string(const Sentence& s) { return mvl::to_string(s); }
};

}  // namespace hybridkit::mvl
