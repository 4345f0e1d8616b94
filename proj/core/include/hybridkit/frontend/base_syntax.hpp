#pragma once

#include <vector>

#include "hybridkit/frontend/ast.hpp"
#include "hybridkit/lexer.hpp"

namespace hybridkit::frontend {

/// Per-logic pieces of the file format: base sentences inside `{ }`, the
/// base part of signatures, local model bodies and base symbol maps. Builders
/// throw ParseError pointing at the offending name.
template <class L>
struct BaseSyntax;

template <>
struct BaseSyntax<pl::Logic> {
  struct Context {};
  static constexpr LogicKind kind = LogicKind::PL;

  static Context context_of(const pl::Signature&) { return {}; }
  static pl::Formula parse(Lexer& lexer, const Context&);
  static pl::Signature signature(const SignatureDecl& decl, const Context&);
  static pl::Model model(const pl::Signature& sig, const LocalBody& body, SourcePos where);
  static pl::Morphism morphism(const pl::Signature& source, const pl::Signature& target,
                               const std::vector<SymbolMap>& maps, SourcePos where);
  static LocalBody describe(const pl::Model& m);
};

template <>
struct BaseSyntax<eq::Logic> {
  struct Context {};
  static constexpr LogicKind kind = LogicKind::EQ;

  static Context context_of(const eq::Signature&) { return {}; }
  static eq::Equation parse(Lexer& lexer, const Context&);
  static eq::Signature signature(const SignatureDecl& decl, const Context&);
  static eq::FiniteAlgebra model(const eq::Signature& sig, const LocalBody& body, SourcePos where);
  static eq::Morphism morphism(const eq::Signature& source, const eq::Signature& target,
                               const std::vector<SymbolMap>& maps, SourcePos where);
  static LocalBody describe(const eq::FiniteAlgebra& m);
};

template <>
struct BaseSyntax<mvl::Logic> {
  struct Context {
    mvl::LatticeRef lattice;
  };
  static constexpr LogicKind kind = LogicKind::MVL;

  static Context context_of(const mvl::Signature& sig) { return {sig.lattice}; }
  static mvl::Sentence parse(Lexer& lexer, const Context& ctx);
  static mvl::Signature signature(const SignatureDecl& decl, const Context& ctx);
  static mvl::Model model(const mvl::Signature& sig, const LocalBody& body, SourcePos where);
  static mvl::Morphism morphism(const mvl::Signature& source, const mvl::Signature& target,
                                const std::vector<SymbolMap>& maps, SourcePos where);
  static LocalBody describe(const mvl::Model& m);
};

}  // namespace hybridkit::frontend
