#pragma once

#include <string>

#include "hybridkit/frontend/ast.hpp"
#include "hybridkit/hybrid/model.hpp"

namespace hybridkit::frontend {

/// Canonical file text. Parsing the output gives back an equal document.
std::string print_spec(const SpecFile& spec);

template <BaseInstitution L>
std::string print_document(const Document<L>& doc);

template <BaseInstitution L>
std::string print_command(const Command<L>& cmd);

std::string print_lattice_body(const LatticeBody& body);

/// A resolved Kripke model as a `model` declaration.
template <BaseInstitution L>
std::string print_model(const std::string& name, const std::string& signature, const KripkeModel<L>& k);

}  // namespace hybridkit::frontend
