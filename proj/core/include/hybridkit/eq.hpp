#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hybridkit/fragment.hpp"
#include "hybridkit/lexer.hpp"

/// Many-sorted equational logic restricted to finite-carrier algebras, where
/// universally quantified equations are decided by enumerating assignments.
namespace hybridkit::eq {

struct Operation {
  std::string name;
  std::vector<std::string> args;
  std::string result;

  friend bool operator==(const Operation&, const Operation&) = default;
};

struct Signature {
  std::vector<std::string> sorts;
  std::vector<Operation> ops;

  Signature() = default;
  /// Throws ValidationError on duplicate names or undeclared sorts in profiles.
  Signature(std::vector<std::string> sorts, std::vector<Operation> ops);

  std::optional<std::size_t> sort_index(std::string_view sort) const;
  std::optional<std::size_t> op_index(std::string_view op) const;
  const Operation* find_op(std::string_view op) const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

class Term {
 public:
  static Term variable(std::string name, std::string sort);
  static Term apply(std::string op, std::vector<Term> args = {});

  bool is_variable() const { return node_->is_var; }
  /// Variable name or operation name.
  const std::string& name() const { return node_->name; }
  /// Sort of a variable; empty for applications (derive it with sort_of).
  const std::string& sort() const { return node_->sort; }
  const std::vector<Term>& args() const { return node_->args; }
  /// Variables have depth 0; an application is one deeper than its deepest
  /// argument, so constants have depth 1.
  int depth() const { return node_->depth; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    bool is_var;
    std::string name;
    std::string sort;
    std::vector<Term> args;
    int depth;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Variable {
  std::string name;
  std::string sort;
  friend bool operator==(const Variable&, const Variable&) = default;
};

/// (∀ vars) lhs = rhs
struct Equation {
  std::vector<Variable> vars;
  Term lhs;
  Term rhs;

  friend bool operator==(const Equation&, const Equation&) = default;
};

std::string to_string(const Term& t);
std::string to_string(const Equation& e);

/// `forall x:s, y:t . lhs = rhs` or a ground `lhs = rhs`. A bare identifier
/// is a variable when bound by the prefix and a constant otherwise.
Equation parse_equation(Lexer& lexer);
Equation parse_equation(std::string_view text);

/// Sort of a term; throws ValidationError if it is ill-formed.
std::string sort_of(const Signature& sig, const Term& t);
void check_equation(const Signature& sig, const Equation& e);

/// Finite many-sorted algebra. Elements are identified by label; op tables
/// are indexed in mixed radix over the argument carriers (first argument
/// most significant).
class FiniteAlgebra {
 public:
  FiniteAlgebra(Signature sig, std::vector<std::vector<std::string>> carriers,
                std::vector<std::vector<int>> tables);

  struct Entry {
    std::string op;
    std::vector<std::string> args;
    std::string result;
  };
  /// Builds from labelled carriers and table rows; every row of every table
  /// must be given exactly once.
  static FiniteAlgebra from_entries(Signature sig,
                                    const std::map<std::string, std::vector<std::string>>& carriers,
                                    const std::vector<Entry>& entries);

  const Signature& signature() const { return sig_; }
  const std::vector<std::string>& carrier(std::size_t sort) const { return carriers_[sort]; }
  const std::vector<std::vector<std::string>>& carriers() const { return carriers_; }
  const std::vector<std::vector<int>>& tables() const { return tables_; }
  std::optional<int> element(std::size_t sort, std::string_view label) const;
  int apply(std::size_t op, const std::vector<int>& args) const;

  friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;

 private:
  Signature sig_;
  std::vector<std::vector<std::string>> carriers_;
  std::vector<std::vector<int>> tables_;
};

using Environment = std::map<std::string, std::string>;

/// Value (element label) of a term under an assignment of labels to variables.
std::string eval_term(const FiniteAlgebra& a, const Environment& env, const Term& t);
bool satisfies(const FiniteAlgebra& a, const Equation& e);

class Morphism {
 public:
  Morphism(Signature source, Signature target, std::map<std::string, std::string> sorts,
           std::map<std::string, std::string> ops);
  static Morphism identity(const Signature& sig);

  const Signature& source() const { return source_; }
  const Signature& target() const { return target_; }
  const std::map<std::string, std::string>& sort_map() const { return sorts_; }
  const std::map<std::string, std::string>& op_map() const { return ops_; }
  const std::string& sort(const std::string& s) const;
  const std::string& op(const std::string& o) const;

 private:
  Signature source_;
  Signature target_;
  std::map<std::string, std::string> sorts_;
  std::map<std::string, std::string> ops_;
};

Term translate(const Morphism& phi, const Term& t);
Equation translate(const Morphism& phi, const Equation& e);
FiniteAlgebra reduct(const Morphism& phi, const FiniteAlgebra& a);

/// All equations between terms of depth ≤ max_depth over at most max_vars
/// variables per sort (named `<sort>_<i>`), in sort order, then lhs, then rhs.
std::vector<Equation> enumerate_equations(const Signature& sig, int max_depth, int max_vars);

bool in_fragment(const Equation& e, const FragmentSpec<Equation>& frag);

struct Logic {
  using Signature = eq::Signature;
  using Sentence = eq::Equation;
  using Model = eq::FiniteAlgebra;
  using Morphism = eq::Morphism;

  static constexpr std::string_view name = "eq";

  static const Signature& signature_of(const Model& m) { return m.signature(); }
  static const Signature& source(const Morphism& phi) { return phi.source(); }
  static const Signature& target(const Morphism& phi) { return phi.target(); }
  static Morphism identity(const Signature& sig) { return Morphism::identity(sig); }
  static void check_sentence(const Signature& sig, const Sentence& s) { check_equation(sig, s); }
  static bool satisfies(const Model& m, const Sentence& s) { return eq::satisfies(m, s); }
  static Sentence translate(const Morphism& phi, const Sentence& s) { return eq::translate(phi, s); }
  static Model reduct(const Morphism& phi, const Model& m) { return eq::reduct(phi, m); }
  /// Every equation is atomic and negation-free, so all three bounded
  /// selectors enumerate the same list.
  static std::vector<Sentence> enumerate(const Signature& sig, const FragmentSpec<Sentence>& frag) {
    return enumerate_equations(sig, frag.max_depth, frag.max_vars);
  }
  static bool in_fragment(const Sentence& s, const FragmentSpec<Sentence>& frag) {
    return eq::in_fragment(s, frag);
  }
  static std::vector<Sentence> atoms(const Signature& sig) { return enumerate_equations(sig, 1, 1); }
  static std::string to_string(const Sentence& s) { return eq::to_string(s); }
};

}  // namespace hybridkit::eq
