#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hybridkit/hybrid/model.hpp"

namespace hybridkit {

using WorldPair = std::pair<std::string, std::string>;

/// Candidate bisimulation or refinement between two Kripke models along a
/// hybrid morphism, with the base fragment used for clause (ii) / (f.ii).
template <BaseInstitution L>
struct WorldRelation {
  KripkeModel<L> left;
  KripkeModel<L> right;
  HybridMorphism<L> morphism;
  FragmentOf<L> fragment;
  std::set<WorldPair> pairs;

  bool contains(const std::string& w, const std::string& w2) const { return pairs.count({w, w2}) > 0; }
};

/// Checks that both models are valid and sit on the morphism's source and
/// target signatures, and that every pair names existing worlds.
template <BaseInstitution L>
void validate_relation(const WorldRelation<L>& r) {
  require_valid(r.left);
  require_valid(r.right);
  if (!(r.left.signature == r.morphism.source())) {
    throw ValidationError("left model is not over the source signature of the morphism");
  }
  if (!(r.right.signature == r.morphism.target())) {
    throw ValidationError("right model is not over the target signature of the morphism");
  }
  for (const auto& [w, w2] : r.pairs) {
    if (!r.left.has_world(w)) throw ValidationError("relation mentions unknown left world '" + w + "'");
    if (!r.right.has_world(w2)) throw ValidationError("relation mentions unknown right world '" + w2 + "'");
  }
}

enum class RelationKind { Bisimulation, Refinement };

struct Violation {
  std::string left;
  std::string right;
  std::string subject;
  std::string detail;
};

struct Condition {
  std::string clause;
  std::string description;
  bool holds = true;
  std::vector<Violation> violations;
};

/// Per-clause verdicts. Non-emptiness of the relation is reported on its own
/// and enters the overall verdict next to the clauses.
struct ConditionReport {
  RelationKind kind = RelationKind::Bisimulation;
  std::vector<Condition> conditions;
  bool nonempty = true;

  bool clauses_hold() const {
    for (const auto& c : conditions) {
      if (!c.holds) return false;
    }
    return true;
  }
  bool passed() const { return nonempty && clauses_hold(); }
  const Condition* find(std::string_view clause) const {
    for (const auto& c : conditions) {
      if (c.clause == clause) return &c;
    }
    return nullptr;
  }
};

}  // namespace hybridkit
