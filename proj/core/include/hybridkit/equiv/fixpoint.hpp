#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hybridkit/equiv/relation.hpp"
#include "hybridkit/hybrid/semantics.hpp"

namespace hybridkit {

struct FixpointOptions {
  /// Scan pairs in a seeded random order instead of lexicographically.
  std::optional<std::uint64_t> shuffle_seed;
  bool trace = false;
};

template <BaseInstitution L>
struct SearchResult {
  std::optional<WorldRelation<L>> relation;
  /// Why no relation exists; empty on success.
  std::string reason;
  std::vector<std::string> trace;

  bool found() const { return relation.has_value(); }
};

namespace detail {

/// Greatest-fixpoint search on index matrices. The seed keeps the pairs
/// satisfying the nominal and local clauses; pairs failing forth (and back,
/// for bisimulations) are deleted until nothing changes; nominal-pair
/// containment and non-emptiness are checked on the result.
template <BaseInstitution L>
SearchResult<L> greatest_relation(const KripkeModel<L>& left, const KripkeModel<L>& right,
                                  const HybridMorphism<L>& phi, const FragmentOf<L>& frag, RelationKind kind,
                                  const FixpointOptions& options) {
  if (!(left.signature == phi.source())) {
    throw ValidationError("left model is not over the source signature of the morphism");
  }
  if (!(right.signature == phi.target())) {
    throw ValidationError("right model is not over the target signature of the morphism");
  }
  const Frame<L> a(left);
  const Frame<L> b(right);
  const bool bisim = kind == RelationKind::Bisimulation;
  const std::size_t n = a.size(), m = b.size();
  std::vector<char> rel(n * m, 0);
  auto at = [m](std::size_t x, std::size_t y) { return x * m + y; };
  SearchResult<L> result;

  ElementaryComparator<L> cmp(phi.base(), frag);
  std::vector<std::vector<bool>> lp, rp;
  for (std::size_t x = 0; x < n; ++x) lp.push_back(cmp.left_profile(a.local(x)));
  for (std::size_t y = 0; y < m; ++y) rp.push_back(cmp.right_profile(b.local(y)));

  const auto& noms = phi.source().nominals;
  std::vector<std::size_t> nom_left, nom_right;
  for (const auto& i : noms) {
    nom_left.push_back(a.nominal(i));
    nom_right.push_back(b.nominal(phi.nominal(i)));
  }

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      bool ok = true;
      for (std::size_t k = 0; k < noms.size() && ok; ++k) {
        bool l = nom_left[k] == x, r = nom_right[k] == y;
        ok = bisim ? l == r : (!l || r);
      }
      if (ok) {
        ok = bisim ? !ElementaryComparator<L>::disagreement(lp[x], rp[y])
                   : !ElementaryComparator<L>::non_implication(lp[x], rp[y]);
      }
      rel[at(x, y)] = ok;
    }
  }

  std::vector<std::pair<std::string, std::string>> modalities;
  for (const auto& md : phi.source().modalities) modalities.emplace_back(md.name, phi.modality(md.name));

  // Does every tuple from `src` in `from` have a partner from `dst` in `to`
  // whose components are related? `swap` flips the matrix orientation.
  auto matched = [&](const auto& from, const auto& to, const std::string& lam_from, const std::string& lam_to,
                     std::size_t src, std::size_t dst, bool swap) -> const std::vector<std::size_t>* {
    for (const auto& t : from.successors(lam_from, src)) {
      bool found = false;
      for (const auto& u : to.successors(lam_to, dst)) {
        bool all = true;
        for (std::size_t k = 0; k < t.size() && all; ++k) all = swap ? rel[at(u[k], t[k])] : rel[at(t[k], u[k])];
        if (all) {
          found = true;
          break;
        }
      }
      if (!found) return &t;
    }
    return nullptr;
  };

  std::vector<std::size_t> order(n * m);
  std::iota(order.begin(), order.end(), 0);
  if (options.shuffle_seed) {
    std::mt19937_64 rng(*options.shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }

  auto tuple_names = [](const auto& frame, std::size_t src, const std::vector<std::size_t>& t) {
    Tuple out{frame.name(src)};
    for (auto w : t) out.push_back(frame.name(w));
    return format_tuple(out);
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t p : order) {
      if (!rel[p]) continue;
      const std::size_t x = p / m, y = p % m;
      std::string why;
      for (const auto& [lam, lam2] : modalities) {
        if (const auto* t = matched(a, b, lam, lam2, x, y, false)) {
          why = "forth fails for " + lam + tuple_names(a, x, *t);
          break;
        }
        if (bisim) {
          if (const auto* t = matched(b, a, lam2, lam, y, x, true)) {
            why = "back fails for " + lam2 + tuple_names(b, y, *t);
            break;
          }
        }
      }
      if (why.empty()) continue;
      rel[p] = 0;
      changed = true;
      if (options.trace) result.trace.push_back("remove (" + a.name(x) + ", " + b.name(y) + "): " + why);
    }
  }

  for (std::size_t k = 0; k < noms.size(); ++k) {
    if (!rel[at(nom_left[k], nom_right[k])]) {
      result.reason = "nominal " + noms[k] + ": pair (" + a.name(nom_left[k]) + ", " + b.name(nom_right[k]) +
                      ") is not in the largest relation";
      return result;
    }
  }
  std::set<WorldPair> pairs;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      if (rel[at(x, y)]) pairs.emplace(a.name(x), b.name(y));
    }
  }
  if (pairs.empty()) {
    result.reason = "no pair of worlds survives";
    return result;
  }
  result.relation = WorldRelation<L>{left, right, phi, frag, std::move(pairs)};
  return result;
}

}  // namespace detail

/// Largest φ,Sen'-bisimulation, or the reason none exists.
template <BaseInstitution L>
SearchResult<L> largest_bisim(const KripkeModel<L>& left, const KripkeModel<L>& right, const HybridMorphism<L>& phi,
                              const FragmentOf<L>& frag, const FixpointOptions& options = {}) {
  return detail::greatest_relation(left, right, phi, frag, RelationKind::Bisimulation, options);
}

/// Largest φ,Sen'-refinement relation, or the reason none exists.
template <BaseInstitution L>
SearchResult<L> largest_simulation(const KripkeModel<L>& left, const KripkeModel<L>& right,
                                   const HybridMorphism<L>& phi, const FragmentOf<L>& frag,
                                   const FixpointOptions& options = {}) {
  return detail::greatest_relation(left, right, phi, frag, RelationKind::Refinement, options);
}

}  // namespace hybridkit
