#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace hybridkit {

/// Upper bound on enumerated sentence lists; larger requests are rejected.
inline constexpr std::size_t kMaxEnumeration = 2'000'000;

enum class FragmentKind { Full, Atoms, NegationFree, Explicit };

constexpr std::string_view to_string(FragmentKind kind) {
  switch (kind) {
    case FragmentKind::Full: return "full";
    case FragmentKind::Atoms: return "atoms";
    case FragmentKind::NegationFree: return "negfree";
    case FragmentKind::Explicit: return "explicit";
  }
  return "?";
}

/// Selects the base sentences an elementary-equivalence check ranges over.
///
/// `max_depth` and `max_vars` bound the enumeration of FULL and NEGATION_FREE
/// (and, for equational logic, ATOMS); they do not restrict membership.
template <class Sentence>
struct FragmentSpec {
  FragmentKind kind = FragmentKind::Atoms;
  std::vector<Sentence> sentences;
  int max_depth = 1;
  int max_vars = 1;

  static FragmentSpec atoms() { return {FragmentKind::Atoms, {}, 1, 1}; }
  static FragmentSpec full(int depth, int vars = 1) { return {FragmentKind::Full, {}, depth, vars}; }
  static FragmentSpec negation_free(int depth, int vars = 1) {
    return {FragmentKind::NegationFree, {}, depth, vars};
  }
  static FragmentSpec explicit_list(std::vector<Sentence> list) {
    return {FragmentKind::Explicit, std::move(list), 0, 0};
  }

  friend bool operator==(const FragmentSpec&, const FragmentSpec&) = default;
};

}  // namespace hybridkit
