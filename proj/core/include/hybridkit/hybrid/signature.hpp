#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hybridkit/error.hpp"
#include "hybridkit/institution.hpp"

namespace hybridkit {

struct Modality {
  std::string name;
  int arity = 1;

  friend bool operator==(const Modality&, const Modality&) = default;
};

/// (Σ, Nom, Λ): a base signature with nominals and polyadic modalities. A
/// modality of arity n is interpreted by an (n+1)-ary relation.
template <BaseInstitution L>
struct HybridSignature {
  typename L::Signature base;
  std::vector<std::string> nominals;
  std::vector<Modality> modalities;

  HybridSignature(typename L::Signature b, std::vector<std::string> noms, std::vector<Modality> mods)
      : base(std::move(b)), nominals(std::move(noms)), modalities(std::move(mods)) {
    std::set<std::string> seen;
    for (const auto& i : nominals) {
      if (!seen.insert(i).second) throw ValidationError("duplicate nominal '" + i + "'");
    }
    seen.clear();
    for (const auto& m : modalities) {
      if (!seen.insert(m.name).second) throw ValidationError("duplicate modality '" + m.name + "'");
      if (m.arity < 1) throw ValidationError("modality '" + m.name + "' must have arity >= 1");
    }
  }

  bool has_nominal(std::string_view i) const {
    return std::find(nominals.begin(), nominals.end(), i) != nominals.end();
  }
  std::optional<int> arity(std::string_view lam) const {
    for (const auto& m : modalities) {
      if (m.name == lam) return m.arity;
    }
    return std::nullopt;
  }

  friend bool operator==(const HybridSignature&, const HybridSignature&) = default;
};

/// (φ_Sig, φ_Nom, φ_MS). Nominal and modality maps must be total on the
/// source and land in declared target symbols; modality maps keep arity.
template <BaseInstitution L>
class HybridMorphism {
 public:
  using BaseMorphism = typename L::Morphism;

  HybridMorphism(HybridSignature<L> source, HybridSignature<L> target, BaseMorphism base,
                 std::map<std::string, std::string> nominals,
                 std::map<std::string, std::string> modalities)
      : source_(std::move(source)),
        target_(std::move(target)),
        base_(std::move(base)),
        nominals_(std::move(nominals)),
        modalities_(std::move(modalities)) {
    if (!(L::source(base_) == source_.base) || !(L::target(base_) == target_.base)) {
      throw ValidationError("base morphism does not connect the base signatures");
    }
    for (const auto& i : source_.nominals) {
      auto it = nominals_.find(i);
      if (it == nominals_.end()) throw ValidationError("morphism leaves nominal '" + i + "' unmapped");
      if (!target_.has_nominal(it->second)) {
        throw ValidationError("morphism maps nominal '" + i + "' to undeclared nominal '" + it->second + "'");
      }
    }
    for (const auto& [from, to] : nominals_) {
      if (!source_.has_nominal(from)) throw ValidationError("morphism maps undeclared nominal '" + from + "'");
    }
    for (const auto& m : source_.modalities) {
      auto it = modalities_.find(m.name);
      if (it == modalities_.end()) {
        throw ValidationError("morphism leaves modality '" + m.name + "' unmapped");
      }
      auto arity = target_.arity(it->second);
      if (!arity) {
        throw ValidationError("morphism maps modality '" + m.name + "' to undeclared modality '" +
                              it->second + "'");
      }
      if (*arity != m.arity) {
        throw ValidationError("morphism maps modality '" + m.name + "' of arity " + std::to_string(m.arity) +
                              " to '" + it->second + "' of arity " + std::to_string(*arity));
      }
    }
    for (const auto& [from, to] : modalities_) {
      if (!source_.arity(from)) throw ValidationError("morphism maps undeclared modality '" + from + "'");
    }
  }

  static HybridMorphism identity(const HybridSignature<L>& sig) {
    std::map<std::string, std::string> noms, mods;
    for (const auto& i : sig.nominals) noms.emplace(i, i);
    for (const auto& m : sig.modalities) mods.emplace(m.name, m.name);
    return HybridMorphism(sig, sig, L::identity(sig.base), std::move(noms), std::move(mods));
  }

  const HybridSignature<L>& source() const { return source_; }
  const HybridSignature<L>& target() const { return target_; }
  const BaseMorphism& base() const { return base_; }
  const std::map<std::string, std::string>& nominal_map() const { return nominals_; }
  const std::map<std::string, std::string>& modality_map() const { return modalities_; }

  const std::string& nominal(const std::string& i) const {
    auto it = nominals_.find(i);
    if (it == nominals_.end()) throw ValidationError("morphism does not map nominal '" + i + "'");
    return it->second;
  }
  const std::string& modality(const std::string& lam) const {
    auto it = modalities_.find(lam);
    if (it == modalities_.end()) throw ValidationError("morphism does not map modality '" + lam + "'");
    return it->second;
  }

 private:
  HybridSignature<L> source_;
  HybridSignature<L> target_;
  BaseMorphism base_;
  std::map<std::string, std::string> nominals_;
  std::map<std::string, std::string> modalities_;
};

}  // namespace hybridkit
