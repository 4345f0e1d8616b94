#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "hybridkit/equiv/relation.hpp"
#include "hybridkit/hybrid/semantics.hpp"
#include "hybridkit/hybrid/sentence.hpp"

namespace hybridkit {

struct HarnessViolation {
  std::string left;
  std::string right;
  std::string sentence;
  std::string detail;
};

/// Outcome of a truth-preservation harness. Only the first kMaxRecorded
/// violations are kept; `violation_count` counts all of them.
struct HarnessReport {
  static constexpr std::size_t kMaxRecorded = 100;

  std::string property;
  int depth = 0;
  /// Distinct (left extension, right extension) pairs reached.
  std::size_t classes = 0;
  std::size_t violation_count = 0;
  std::vector<HarnessViolation> violations;

  bool passed() const { return violation_count == 0; }
  void add(HarnessViolation v) {
    ++violation_count;
    if (violations.size() < kMaxRecorded) violations.push_back(std::move(v));
  }
};

struct PreservationReport {
  HarnessReport local;
  /// Global preservation, checked when the relation is surjective.
  std::optional<HarnessReport> global;
  /// Boxed or negated sentences true on the left and false on the right.
  std::vector<HarnessViolation> counterexamples;

  bool passed() const { return local.passed() && (!global || global->passed()); }
};

/// Atom pool used when the caller gives none: the fragment's own sentences
/// for EXPLICIT, otherwise the signature's atoms that the fragment
/// enumeration contains.
template <BaseInstitution L>
std::vector<typename L::Sentence> default_pool(const typename L::Signature& sig, const FragmentOf<L>& frag) {
  if (frag.kind == FragmentKind::Explicit) return frag.sentences;
  std::unordered_set<std::string> in_frag;
  for (const auto& s : fragment_sentences<L>(sig, frag)) in_frag.insert(L::to_string(s));
  std::vector<typename L::Sentence> out;
  for (auto& s : L::atoms(sig)) {
    if (in_frag.count(L::to_string(s))) out.push_back(std::move(s));
  }
  return out;
}

namespace detail {

inline constexpr std::size_t kMaxClosureCandidates = 50'000'000;

template <BaseInstitution L>
struct ClosureEntry {
  WorldSet left;
  WorldSet right;
  HybridSentence<L> sentence;
};

enum class ClosureMode { Full, Positive };

/// All sentences up to `depth` over pool ∪ nominals, grouped by the pair
/// (worlds where ρ holds on the left, worlds where φ(ρ) holds on the right).
///
/// Satisfaction is compositional, so a connective's extension pair depends
/// only on its arguments' pairs; building each level from one representative
/// per pair reaches exactly the pairs that the full enumeration reaches.
/// `visit` sees every sentence built, with its extensions.
template <BaseInstitution L, class Visit>
std::vector<ClosureEntry<L>> semantic_closure(const Frame<L>& a, const Frame<L>& b, const HybridMorphism<L>& phi,
                                              const std::vector<typename L::Sentence>& pool, int depth,
                                              ClosureMode mode, Visit&& visit) {
  using S = HybridSentence<L>;
  if (depth < 0) throw ValidationError("harness depth must be non-negative");
  std::vector<ClosureEntry<L>> entries;
  std::unordered_set<std::string> keys;
  std::size_t candidates = 0;

  auto key_of = [](const WorldSet& l, const WorldSet& r) {
    std::string k;
    k.reserve(l.size() + r.size() + 1);
    for (bool x : l) k += x ? '1' : '0';
    k += '|';
    for (bool x : r) k += x ? '1' : '0';
    return k;
  };
  auto offer = [&](S s, WorldSet l, WorldSet r) {
    if (++candidates > kMaxClosureCandidates) throw ValidationError("harness closure too large");
    visit(s, l, r);
    if (keys.insert(key_of(l, r)).second) entries.push_back({std::move(l), std::move(r), std::move(s)});
  };

  for (const auto& s : pool) {
    L::check_sentence(a.signature().base, s);
    offer(S::base(s), worldset::base(a, s), worldset::base(b, L::translate(phi.base(), s)));
  }
  for (const auto& i : a.signature().nominals) {
    offer(S::nominal(i), worldset::nominal(a, i), worldset::nominal(b, phi.nominal(i)));
  }

  const bool full = mode == ClosureMode::Full;
  auto lor = [](bool x, bool y) { return x || y; };
  auto land = [](bool x, bool y) { return x && y; };
  auto limp = [](bool x, bool y) { return !x || y; };

  for (int d = 1; d <= depth; ++d) {
    const std::vector<ClosureEntry<L>> level = entries;
    const std::size_t before = entries.size();
    if (full) {
      for (const auto& e : level) {
        offer(S::negation(e.sentence), worldset::complement(e.left), worldset::complement(e.right));
      }
    }
    for (const auto& x : level) {
      for (const auto& y : level) {
        offer(S::disjunction(x.sentence, y.sentence), worldset::combine(x.left, y.left, lor),
              worldset::combine(x.right, y.right, lor));
      }
    }
    for (const auto& x : level) {
      for (const auto& y : level) {
        offer(S::conjunction(x.sentence, y.sentence), worldset::combine(x.left, y.left, land),
              worldset::combine(x.right, y.right, land));
      }
    }
    if (full) {
      for (const auto& x : level) {
        for (const auto& y : level) {
          offer(S::implication(x.sentence, y.sentence), worldset::combine(x.left, y.left, limp),
                worldset::combine(x.right, y.right, limp));
        }
      }
    }
    for (const auto& i : a.signature().nominals) {
      const std::size_t wl = a.nominal(i), wr = b.nominal(phi.nominal(i));
      for (const auto& e : level) {
        offer(S::at(i, e.sentence), worldset::at(wl, e.left), worldset::at(wr, e.right));
      }
    }
    for (const auto& m : a.signature().modalities) {
      const std::string& lam2 = phi.modality(m.name);
      for (bool is_box : {true, false}) {
        if (is_box && !full) continue;
        if (level.empty()) continue;
        std::vector<std::size_t> pick(static_cast<std::size_t>(m.arity), 0);
        while (true) {
          std::vector<S> args;
          std::vector<const WorldSet*> la, ra;
          for (auto k : pick) {
            args.push_back(level[k].sentence);
            la.push_back(&level[k].left);
            ra.push_back(&level[k].right);
          }
          if (is_box) {
            offer(S::box(m.name, std::move(args)), worldset::box(a, m.name, la), worldset::box(b, lam2, ra));
          } else {
            offer(S::diamond(m.name, std::move(args)), worldset::diamond(a, m.name, la),
                  worldset::diamond(b, lam2, ra));
          }
          std::size_t k = pick.size();
          while (k > 0 && ++pick[k - 1] == level.size()) pick[--k] = 0;
          if (k == 0) break;
        }
      }
    }
    if (entries.size() == before) break;
  }
  return entries;
}

template <BaseInstitution L>
std::vector<std::pair<std::size_t, std::size_t>> indexed_pairs(const WorldRelation<L>& r, const Frame<L>& a,
                                                              const Frame<L>& b) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [w, w2] : r.pairs) out.emplace_back(*a.index(w), *b.index(w2));
  return out;
}

inline bool all_of(const WorldSet& s) {
  for (bool x : s) {
    if (!x) return false;
  }
  return true;
}

inline std::vector<std::string> uncovered(const std::vector<std::string>& worlds, const std::set<std::string>& seen) {
  std::vector<std::string> out;
  for (const auto& w : worlds) {
    if (!seen.count(w)) out.push_back(w);
  }
  return out;
}

inline std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

}  // namespace detail

/// Left worlds without a partner and right worlds without a partner.
template <BaseInstitution L>
std::pair<std::vector<std::string>, std::vector<std::string>> uncovered_worlds(const WorldRelation<L>& r) {
  std::set<std::string> l, rr;
  for (const auto& [w, w2] : r.pairs) {
    l.insert(w);
    rr.insert(w2);
  }
  return {detail::uncovered(r.left.worlds, l), detail::uncovered(r.right.worlds, rr)};
}

/// For every related (w, w') and every sentence ρ up to `depth`:
/// ⊨^w ρ iff ⊨^{w'} φ(ρ). Any violation on a bisimulation is a defect.
template <BaseInstitution L>
HarnessReport verify_invariance(const WorldRelation<L>& r, const std::vector<typename L::Sentence>& pool, int depth) {
  validate_relation(r);
  const Frame<L> a(r.left), b(r.right);
  const auto pairs = detail::indexed_pairs(r, a, b);
  HarnessReport report{"local invariance", depth, 0, 0, {}};
  auto entries = detail::semantic_closure(a, b, r.morphism, pool, depth, detail::ClosureMode::Full,
                                          [](const auto&, const auto&, const auto&) {});
  report.classes = entries.size();
  for (const auto& e : entries) {
    for (auto [x, y] : pairs) {
      if (e.left[x] == e.right[y]) continue;
      report.add({a.name(x), b.name(y), to_string(e.sentence),
                  e.left[x] ? "holds on the left, translation fails on the right"
                            : "fails on the left, translation holds on the right"});
    }
  }
  return report;
}

/// Global truth agreement for a total and surjective relation.
template <BaseInstitution L>
HarnessReport verify_global_invariance(const WorldRelation<L>& r, const std::vector<typename L::Sentence>& pool,
                                       int depth) {
  validate_relation(r);
  auto [left_gap, right_gap] = uncovered_worlds(r);
  if (!left_gap.empty() || !right_gap.empty()) {
    std::string msg = "global invariance needs a total and surjective relation";
    if (!left_gap.empty()) msg += "; unrelated left worlds: " + detail::join_names(left_gap);
    if (!right_gap.empty()) msg += "; unrelated right worlds: " + detail::join_names(right_gap);
    throw PreconditionError(msg);
  }
  const Frame<L> a(r.left), b(r.right);
  HarnessReport report{"global invariance", depth, 0, 0, {}};
  auto entries = detail::semantic_closure(a, b, r.morphism, pool, depth, detail::ClosureMode::Full,
                                          [](const auto&, const auto&, const auto&) {});
  report.classes = entries.size();
  for (const auto& e : entries) {
    bool l = detail::all_of(e.left), rr = detail::all_of(e.right);
    if (l != rr) {
      report.add({"*", "*", to_string(e.sentence),
                  l ? "valid on the left, translation not valid on the right"
                    : "not valid on the left, translation valid on the right"});
    }
  }
  return report;
}

/// Positive existential sentences over the fragment are carried along the
/// refinement: ⊨^w ρ implies ⊨^{w'} φ(ρ). Also checks the global form when
/// the relation is surjective, and collects boxed or negated sentences for
/// which the implication fails.
template <BaseInstitution L>
PreservationReport verify_refinement_preservation(const WorldRelation<L>& r,
                                                  const std::vector<typename L::Sentence>& pool, int depth,
                                                  std::size_t max_counterexamples = 5) {
  validate_relation(r);
  const Frame<L> a(r.left), b(r.right);
  const auto pairs = detail::indexed_pairs(r, a, b);
  std::vector<typename L::Sentence> positive_pool;
  for (const auto& s : pool) {
    if (L::in_fragment(s, r.fragment)) positive_pool.push_back(s);
  }

  PreservationReport out;
  out.local = {"positive existential preservation", depth, 0, 0, {}};
  auto entries = detail::semantic_closure(a, b, r.morphism, positive_pool, depth, detail::ClosureMode::Positive,
                                          [](const auto&, const auto&, const auto&) {});
  out.local.classes = entries.size();
  for (const auto& e : entries) {
    for (auto [x, y] : pairs) {
      if (e.left[x] && !e.right[y]) {
        out.local.add({a.name(x), b.name(y), to_string(e.sentence),
                       "holds on the left, translation fails on the right"});
      }
    }
  }
  if (uncovered_worlds(r).second.empty() && !r.pairs.empty()) {
    HarnessReport global{"global positive existential preservation", depth, entries.size(), 0, {}};
    for (const auto& e : entries) {
      if (detail::all_of(e.left) && !detail::all_of(e.right)) {
        global.add({"*", "*", to_string(e.sentence), "valid on the left, translation not valid on the right"});
      }
    }
    out.global = std::move(global);
  }

  std::unordered_set<std::string> reported;
  detail::semantic_closure(a, b, r.morphism, pool, depth, detail::ClosureMode::Full,
                           [&](const HybridSentence<L>& s, const WorldSet& l, const WorldSet& rr) {
                             if (out.counterexamples.size() >= max_counterexamples) return;
                             if (s.op() != HybridOp::Box && s.op() != HybridOp::Not) return;
                             for (auto [x, y] : pairs) {
                               if (!l[x] || rr[y]) continue;
                               std::string text = to_string(s);
                               if (!reported.insert(text).second) return;
                               out.counterexamples.push_back({a.name(x), b.name(y), std::move(text),
                                                              "holds on the left, translation fails on the right"});
                               return;
                             }
                           });
  return out;
}

}  // namespace hybridkit
