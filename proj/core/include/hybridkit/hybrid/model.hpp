#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hybridkit/hybrid/signature.hpp"

namespace hybridkit {

using Tuple = std::vector<std::string>;

/// Kripke model (M, W) over a hybrid signature, kept by name so that an
/// ill-formed model can still be inspected and reported on.
///
/// `relations` maps each modality to its (n+1)-tuples, source world first.
/// A modality without an entry is interpreted by the empty relation.
template <BaseInstitution L>
struct KripkeModel {
  HybridSignature<L> signature;
  std::vector<std::string> worlds;
  std::map<std::string, std::string> nominals;
  std::map<std::string, std::set<Tuple>> relations;
  std::map<std::string, typename L::Model> locals;

  bool has_world(std::string_view w) const {
    return std::find(worlds.begin(), worlds.end(), w) != worlds.end();
  }
  const std::set<Tuple>& relation(const std::string& lam) const {
    static const std::set<Tuple> empty;
    auto it = relations.find(lam);
    return it == relations.end() ? empty : it->second;
  }
  const typename L::Model& local(const std::string& w) const {
    auto it = locals.find(w);
    if (it == locals.end()) throw ValidationError("world '" + w + "' has no local model");
    return it->second;
  }
  const std::string& denotation(const std::string& i) const {
    auto it = nominals.find(i);
    if (it == nominals.end()) throw ValidationError("nominal '" + i + "' is not interpreted");
    return it->second;
  }
};

/// Every violated model invariant, one message each; empty when valid.
template <BaseInstitution L>
std::vector<std::string> validate_model(const KripkeModel<L>& k) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& w : k.worlds) {
    if (!seen.insert(w).second) out.push_back("duplicate world '" + w + "'");
  }
  for (const auto& i : k.signature.nominals) {
    auto it = k.nominals.find(i);
    if (it == k.nominals.end()) {
      out.push_back("nominal '" + i + "' has no interpretation");
    } else if (!seen.count(it->second)) {
      out.push_back("nominal '" + i + "' denotes unknown world '" + it->second + "'");
    }
  }
  for (const auto& [i, w] : k.nominals) {
    if (!k.signature.has_nominal(i)) out.push_back("interpretation of undeclared nominal '" + i + "'");
  }
  for (const auto& [lam, tuples] : k.relations) {
    auto arity = k.signature.arity(lam);
    if (!arity) {
      out.push_back("relation for undeclared modality '" + lam + "'");
      continue;
    }
    for (const auto& t : tuples) {
      if (t.size() != static_cast<std::size_t>(*arity) + 1) {
        out.push_back("tuple of size " + std::to_string(t.size()) + " in modality '" + lam + "' of arity " +
                      std::to_string(*arity));
      }
      for (const auto& w : t) {
        if (!seen.count(w)) out.push_back("tuple in modality '" + lam + "' mentions unknown world '" + w + "'");
      }
    }
  }
  for (const auto& w : seen) {
    auto it = k.locals.find(w);
    if (it == k.locals.end()) {
      out.push_back("world '" + w + "' has no local model");
    } else if (!(L::signature_of(it->second) == k.signature.base)) {
      out.push_back("local model of world '" + w + "' is not over the base signature");
    }
  }
  for (const auto& [w, m] : k.locals) {
    if (!seen.count(w)) out.push_back("local model for unknown world '" + w + "'");
  }
  return out;
}

template <BaseInstitution L>
void require_valid(const KripkeModel<L>& k) {
  auto violations = validate_model(k);
  if (violations.empty()) return;
  std::string msg = "invalid Kripke model: " + violations.front();
  if (violations.size() > 1) msg += " (and " + std::to_string(violations.size() - 1) + " more)";
  throw ValidationError(msg);
}

/// Same worlds; nominals and modalities read through φ; local models reduced
/// world by world along the base morphism.
template <BaseInstitution L>
KripkeModel<L> hyb_reduct(const HybridMorphism<L>& phi, const KripkeModel<L>& k2) {
  if (!(k2.signature == phi.target())) throw ValidationError("reduct: model is not over the target signature");
  require_valid(k2);
  KripkeModel<L> out{phi.source(), k2.worlds, {}, {}, {}};
  for (const auto& i : phi.source().nominals) out.nominals.emplace(i, k2.denotation(phi.nominal(i)));
  for (const auto& m : phi.source().modalities) {
    const auto& tuples = k2.relation(phi.modality(m.name));
    if (!tuples.empty()) out.relations.emplace(m.name, tuples);
  }
  for (const auto& w : k2.worlds) out.locals.emplace(w, L::reduct(phi.base(), k2.local(w)));
  return out;
}

/// Index-based view of a valid Kripke model used by the bulk algorithms.
template <BaseInstitution L>
class Frame {
 public:
  explicit Frame(const KripkeModel<L>& k) : sig_(k.signature), names_(k.worlds) {
    require_valid(k);
    for (std::size_t w = 0; w < names_.size(); ++w) index_.emplace(names_[w], w);
    for (const auto& w : names_) locals_.push_back(k.local(w));
    for (const auto& i : sig_.nominals) nominals_.emplace(i, index_.at(k.denotation(i)));
    for (const auto& m : sig_.modalities) {
      auto& out = outgoing_[m.name];
      out.resize(names_.size());
      for (const auto& t : k.relation(m.name)) {
        std::vector<std::size_t> idx;
        for (const auto& w : t) idx.push_back(index_.at(w));
        out[idx.front()].push_back(std::vector<std::size_t>(idx.begin() + 1, idx.end()));
      }
    }
  }

  const HybridSignature<L>& signature() const { return sig_; }
  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t w) const { return names_[w]; }
  std::optional<std::size_t> index(const std::string& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t nominal(const std::string& i) const {
    auto it = nominals_.find(i);
    if (it == nominals_.end()) throw ValidationError("undeclared nominal '" + i + "'");
    return it->second;
  }
  /// Targets (w1..wn) of the λ-tuples leaving w.
  const std::vector<std::vector<std::size_t>>& successors(const std::string& lam, std::size_t w) const {
    auto it = outgoing_.find(lam);
    if (it == outgoing_.end()) throw ValidationError("undeclared modality '" + lam + "'");
    return it->second[w];
  }
  const typename L::Model& local(std::size_t w) const { return locals_[w]; }

 private:
  HybridSignature<L> sig_;
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::vector<typename L::Model> locals_;
  std::map<std::string, std::size_t> nominals_;
  std::map<std::string, std::vector<std::vector<std::vector<std::size_t>>>> outgoing_;
};

}  // namespace hybridkit
