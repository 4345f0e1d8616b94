#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "hybridkit/equiv/check.hpp"
#include "hybridkit/equiv/fixpoint.hpp"

namespace hybridkit {

inline constexpr std::size_t kBruteForcePairLimit = 16;

/// Reference answer for the fixpoint searches: tries every subset of
/// |W| x |W'| against check_bisim / check_refinement and returns the union of
/// the passing ones (bisimulations and refinements are closed under union).
template <BaseInstitution L>
SearchResult<L> brute_force_largest(const KripkeModel<L>& left, const KripkeModel<L>& right,
                                    const HybridMorphism<L>& phi, const FragmentOf<L>& frag, RelationKind kind) {
  std::vector<WorldPair> all;
  for (const auto& w : left.worlds) {
    for (const auto& w2 : right.worlds) all.emplace_back(w, w2);
  }
  if (all.size() > kBruteForcePairLimit) {
    throw ValidationError("brute force is limited to " + std::to_string(kBruteForcePairLimit) + " world pairs");
  }
  WorldRelation<L> candidate{left, right, phi, frag, {}};
  std::vector<std::uint32_t> passing;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << all.size()); ++mask) {
    candidate.pairs.clear();
    for (std::size_t k = 0; k < all.size(); ++k) {
      if (mask >> k & 1U) candidate.pairs.insert(all[k]);
    }
    if (check_relation(candidate, kind).passed()) passing.push_back(mask);
  }
  SearchResult<L> result;
  if (passing.empty()) {
    result.reason = "no relation passes";
    return result;
  }
  auto to_pairs = [&all](std::uint32_t mask) {
    std::set<WorldPair> out;
    for (std::size_t k = 0; k < all.size(); ++k) {
      if (mask >> k & 1U) out.insert(all[k]);
    }
    return out;
  };
  std::uint32_t joined = 0;
  for (auto mask : passing) joined |= mask;
  candidate.pairs = to_pairs(joined);
  if (!check_relation(candidate, kind).passed()) {
    // Not expected for these clauses; fall back to the largest passing set.
    std::uint32_t best = passing.front();
    for (auto mask : passing) {
      if (std::popcount(mask) > std::popcount(best)) best = mask;
    }
    candidate.pairs = to_pairs(best);
  }
  result.relation = std::move(candidate);
  return result;
}

}  // namespace hybridkit
