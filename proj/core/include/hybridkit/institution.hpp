#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hybridkit/error.hpp"
#include "hybridkit/fragment.hpp"

namespace hybridkit {

/// The plug-in seam every base logic implements: signatures, sentences,
/// models, satisfaction, signature morphisms with sentence translation and
/// model reduct. All members are static; values are immutable.
template <class L>
concept BaseInstitution =
    requires(const typename L::Signature& sig, const typename L::Sentence& s,
             const typename L::Model& m, const typename L::Morphism& phi,
             const FragmentSpec<typename L::Sentence>& frag) {
      { L::name } -> std::convertible_to<std::string_view>;
      { L::signature_of(m) } -> std::same_as<const typename L::Signature&>;
      { L::source(phi) } -> std::same_as<const typename L::Signature&>;
      { L::target(phi) } -> std::same_as<const typename L::Signature&>;
      { L::identity(sig) } -> std::same_as<typename L::Morphism>;
      { L::check_sentence(sig, s) } -> std::same_as<void>;
      { L::satisfies(m, s) } -> std::same_as<bool>;
      { L::translate(phi, s) } -> std::same_as<typename L::Sentence>;
      { L::reduct(phi, m) } -> std::same_as<typename L::Model>;
      { L::enumerate(sig, frag) } -> std::same_as<std::vector<typename L::Sentence>>;
      { L::in_fragment(s, frag) } -> std::same_as<bool>;
      { L::atoms(sig) } -> std::same_as<std::vector<typename L::Sentence>>;
      { L::to_string(s) } -> std::same_as<std::string>;
    } && std::equality_comparable<typename L::Sentence> &&
    std::equality_comparable<typename L::Signature>;

template <BaseInstitution L>
using FragmentOf = FragmentSpec<typename L::Sentence>;

/// Sen'(sig) within the enumeration bound, deduplicated by syntactic
/// identity, in a deterministic order. EXPLICIT lists are returned verbatim
/// after validation.
template <BaseInstitution L>
std::vector<typename L::Sentence> fragment_sentences(const typename L::Signature& sig,
                                                     const FragmentOf<L>& frag) {
  if (frag.kind == FragmentKind::Explicit) {
    if (frag.sentences.empty()) throw ValidationError("explicit fragment is empty");
    for (const auto& s : frag.sentences) L::check_sentence(sig, s);
    return frag.sentences;
  }
  if (frag.max_depth < 0 || frag.max_vars < 0) {
    throw ValidationError("fragment bounds must be non-negative");
  }
  std::vector<typename L::Sentence> out;
  std::unordered_set<std::string> seen;
  for (auto& s : L::enumerate(sig, frag)) {
    if (seen.insert(L::to_string(s)).second) out.push_back(std::move(s));
  }
  return out;
}

/// Compares base models along a morphism over a fixed fragment. The fragment
/// and its translation are computed once, so comparing many model pairs (as
/// the fixpoint searches do) costs only satisfaction checks.
template <BaseInstitution L>
class ElementaryComparator {
 public:
  using Sentence = typename L::Sentence;
  using Model = typename L::Model;
  using Morphism = typename L::Morphism;

  ElementaryComparator(Morphism phi, FragmentOf<L> frag)
      : phi_(std::move(phi)), sentences_(fragment_sentences<L>(L::source(phi_), frag)) {
    translated_.reserve(sentences_.size());
    for (const auto& s : sentences_) translated_.push_back(L::translate(phi_, s));
  }

  const Morphism& morphism() const { return phi_; }
  const std::vector<Sentence>& sentences() const { return sentences_; }
  const std::vector<Sentence>& translated() const { return translated_; }

  /// Which fragment sentences hold in a source-side model.
  std::vector<bool> left_profile(const Model& m) const {
    if (!(L::signature_of(m) == L::source(phi_))) {
      throw ValidationError("model is not over the source signature of the morphism");
    }
    std::vector<bool> out(sentences_.size());
    for (std::size_t k = 0; k < sentences_.size(); ++k) out[k] = L::satisfies(m, sentences_[k]);
    return out;
  }

  /// Which translated fragment sentences hold in a target-side model.
  std::vector<bool> right_profile(const Model& m) const {
    if (!(L::signature_of(m) == L::target(phi_))) {
      throw ValidationError("model is not over the target signature of the morphism");
    }
    std::vector<bool> out(translated_.size());
    for (std::size_t k = 0; k < translated_.size(); ++k) out[k] = L::satisfies(m, translated_[k]);
    return out;
  }

  /// Index of the first fragment sentence on which the profiles disagree.
  static std::optional<std::size_t> disagreement(const std::vector<bool>& left,
                                                 const std::vector<bool>& right) {
    for (std::size_t k = 0; k < left.size(); ++k) {
      if (left[k] != right[k]) return k;
    }
    return std::nullopt;
  }

  /// Index of the first sentence true on the left and false on the right.
  static std::optional<std::size_t> non_implication(const std::vector<bool>& left,
                                                    const std::vector<bool>& right) {
    for (std::size_t k = 0; k < left.size(); ++k) {
      if (left[k] && !right[k]) return k;
    }
    return std::nullopt;
  }

 private:
  Morphism phi_;
  std::vector<Sentence> sentences_;
  std::vector<Sentence> translated_;
};

/// M ≡ M2 along phi over the fragment: M ⊨ ρ iff M2 ⊨ phi(ρ) for every ρ.
template <BaseInstitution L>
bool elem_equiv(const typename L::Model& m, const typename L::Model& m2,
                const typename L::Morphism& phi, const FragmentOf<L>& frag) {
  ElementaryComparator<L> cmp(phi, frag);
  return !ElementaryComparator<L>::disagreement(cmp.left_profile(m), cmp.right_profile(m2));
}

/// One-directional variant: M ⊨ ρ implies M2 ⊨ phi(ρ).
template <BaseInstitution L>
bool elem_implies(const typename L::Model& m, const typename L::Model& m2,
                  const typename L::Morphism& phi, const FragmentOf<L>& frag) {
  ElementaryComparator<L> cmp(phi, frag);
  return !ElementaryComparator<L>::non_implication(cmp.left_profile(m), cmp.right_profile(m2));
}

/// M2 ⊨ phi(ρ) iff reduct(phi, M2) ⊨ ρ. Always true for a correct logic.
template <BaseInstitution L>
bool check_satisfaction_condition(const typename L::Morphism& phi, const typename L::Model& m2,
                                  const typename L::Sentence& rho) {
  L::check_sentence(L::source(phi), rho);
  if (!(L::signature_of(m2) == L::target(phi))) {
    throw ValidationError("model is not over the target signature of the morphism");
  }
  return L::satisfies(m2, L::translate(phi, rho)) == L::satisfies(L::reduct(phi, m2), rho);
}

}  // namespace hybridkit
