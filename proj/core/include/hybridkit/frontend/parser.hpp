#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hybridkit/frontend/ast.hpp"
#include "hybridkit/frontend/base_syntax.hpp"
#include "hybridkit/hybrid/signature.hpp"

namespace hybridkit::frontend {

struct ParseOptions {
  /// Directory that relative lattice file names are looked up in first.
  std::filesystem::path base_dir;
  /// Further directories searched for lattice files.
  std::vector<std::filesystem::path> lattice_path;

  /// Adds the directories listed in HYBRIDKIT_LATTICE_PATH (':'-separated).
  static ParseOptions from_environment(std::filesystem::path base_dir);
};

inline constexpr const char* kLatticePathVariable = "HYBRIDKIT_LATTICE_PATH";
inline constexpr int kMaxChainSize = 64;

/// Parses a whole file. Names are not resolved here; see resolve().
SpecFile parse_spec(std::string_view text, const ParseOptions& options = {});

/// Commands given on the command line, in the logic of an existing document.
template <BaseInstitution L>
std::vector<Command<L>> parse_commands(std::string_view text, const Document<L>& doc);

/// Hybrid sentence at the lexer's position. With a signature, nominals,
/// modalities, arities and base sentences are checked as they are read.
template <BaseInstitution L>
HybridSentence<L> parse_hybrid(Lexer& lexer, const typename BaseSyntax<L>::Context& ctx,
                               const HybridSignature<L>* sig = nullptr);

/// Parses and checks a complete hybrid sentence over `sig`.
template <BaseInstitution L>
HybridSentence<L> parse_sentence(std::string_view text, const HybridSignature<L>& sig);

/// Lattice description in the `.lat` format (the body of a `lattice { }`
/// block): `elements ...; order a < b, ...; tensor a * b = c, ...;` and an
/// optional `residuum a -> b = c, ...;`.
LatticeBody parse_lattice_body(std::string_view text);
/// Unlisted tensor entries are completed from their mirror image; the
/// residuum is derived unless given. Never checks the lattice laws.
mvl::ResiduatedLattice build_lattice(const LatticeBody& body, std::string name);
mvl::LatticeRef load_lattice(const LatticeSpec& spec, const ParseOptions& options);

}  // namespace hybridkit::frontend
