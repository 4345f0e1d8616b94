#pragma once

#include <map>
#include <string>
#include <vector>

#include "hybridkit/equiv/relation.hpp"

namespace hybridkit {

inline std::string format_tuple(const Tuple& t) {
  std::string out = "(";
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k) out += ", ";
    out += t[k];
  }
  return out + ")";
}

namespace detail {

/// Is there a tuple in `candidates` from `source` whose targets are related
/// component by component to `targets`? `related(a, b)` is asked with a from
/// the tuple being matched and b from the candidate.
template <class Related>
bool has_matching_tuple(const std::set<Tuple>& candidates, const std::string& source, const Tuple& targets,
                        Related related) {
  for (const auto& c : candidates) {
    if (c.front() != source) continue;
    bool ok = true;
    for (std::size_t k = 1; k < c.size() && ok; ++k) ok = related(targets[k], c[k]);
    if (ok) return true;
  }
  return false;
}

template <BaseInstitution L>
Condition nominal_agreement(const WorldRelation<L>& r, bool both_ways, std::string clause) {
  Condition c{std::move(clause),
              both_ways ? "W_i = w iff W'_phi(i) = w' for related (w, w')"
                        : "W_i = w implies W'_phi(i) = w' for related (w, w')",
              true,
              {}};
  for (const auto& [w, w2] : r.pairs) {
    for (const auto& i : r.left.signature.nominals) {
      const std::string& j = r.morphism.nominal(i);
      bool left = r.left.denotation(i) == w;
      bool right = r.right.denotation(j) == w2;
      if (left && !right) {
        c.violations.push_back({w, w2, i, i + " denotes " + w + " but " + j + " denotes " + r.right.denotation(j)});
      } else if (both_ways && right && !left) {
        c.violations.push_back({w, w2, i, j + " denotes " + w2 + " but " + i + " denotes " + r.left.denotation(i)});
      }
    }
  }
  c.holds = c.violations.empty();
  return c;
}

template <BaseInstitution L>
Condition local_agreement(const WorldRelation<L>& r, bool both_ways, std::string clause) {
  Condition c{std::move(clause),
              both_ways ? "local models elementarily equivalent along phi over the fragment"
                        : "left local model's fragment sentences hold in the right one along phi",
              true,
              {}};
  ElementaryComparator<L> cmp(r.morphism.base(), r.fragment);
  std::map<std::string, std::vector<bool>> left, right;
  for (const auto& [w, w2] : r.pairs) {
    if (!left.count(w)) left.emplace(w, cmp.left_profile(r.left.local(w)));
    if (!right.count(w2)) right.emplace(w2, cmp.right_profile(r.right.local(w2)));
    const auto& lp = left.at(w);
    const auto& rp = right.at(w2);
    auto k = both_ways ? ElementaryComparator<L>::disagreement(lp, rp)
                       : ElementaryComparator<L>::non_implication(lp, rp);
    if (!k) continue;
    std::string sentence = L::to_string(cmp.sentences()[*k]);
    std::string detail = lp[*k] ? sentence + " holds at " + w + " but its translation fails at " + w2
                                : sentence + " fails at " + w + " but its translation holds at " + w2;
    c.violations.push_back({w, w2, sentence, std::move(detail)});
  }
  c.holds = c.violations.empty();
  return c;
}

template <BaseInstitution L>
Condition nominal_pairs(const WorldRelation<L>& r, std::string clause) {
  Condition c{std::move(clause), "(W_i, W'_phi(i)) is related for every nominal i", true, {}};
  for (const auto& i : r.left.signature.nominals) {
    const std::string& w = r.left.denotation(i);
    const std::string& w2 = r.right.denotation(r.morphism.nominal(i));
    if (!r.contains(w, w2)) c.violations.push_back({w, w2, i, "pair for nominal " + i + " is missing"});
  }
  c.holds = c.violations.empty();
  return c;
}

template <BaseInstitution L>
Condition forth(const WorldRelation<L>& r, std::string clause) {
  Condition c{std::move(clause), "every left transition is matched by a related right transition", true, {}};
  for (const auto& [w, w2] : r.pairs) {
    for (const auto& m : r.left.signature.modalities) {
      const auto& targets = r.right.relation(r.morphism.modality(m.name));
      for (const auto& t : r.left.relation(m.name)) {
        if (t.front() != w) continue;
        bool matched = has_matching_tuple(targets, w2, t, [&r](const std::string& a, const std::string& b) {
          return r.contains(a, b);
        });
        if (!matched) {
          c.violations.push_back({w, w2, m.name, "no related match for " + m.name + format_tuple(t)});
        }
      }
    }
  }
  c.holds = c.violations.empty();
  return c;
}

template <BaseInstitution L>
Condition back(const WorldRelation<L>& r, std::string clause) {
  Condition c{std::move(clause), "every right transition is matched by a related left transition", true, {}};
  for (const auto& [w, w2] : r.pairs) {
    for (const auto& m : r.left.signature.modalities) {
      const std::string& lam2 = r.morphism.modality(m.name);
      const auto& targets = r.left.relation(m.name);
      for (const auto& t : r.right.relation(lam2)) {
        if (t.front() != w2) continue;
        bool matched = has_matching_tuple(targets, w, t, [&r](const std::string& b, const std::string& a) {
          return r.contains(a, b);
        });
        if (!matched) {
          c.violations.push_back({w, w2, lam2, "no related match for " + lam2 + format_tuple(t)});
        }
      }
    }
  }
  c.holds = c.violations.empty();
  return c;
}

}  // namespace detail

/// Evaluates clauses (i)-(v) of a φ,Sen'-bisimulation literally on the pairs.
template <BaseInstitution L>
ConditionReport check_bisim(const WorldRelation<L>& r) {
  validate_relation(r);
  ConditionReport report;
  report.kind = RelationKind::Bisimulation;
  report.conditions.push_back(detail::nominal_agreement(r, true, "i"));
  report.conditions.push_back(detail::local_agreement(r, true, "ii"));
  report.conditions.push_back(detail::nominal_pairs(r, "iii"));
  report.conditions.push_back(detail::forth(r, "iv"));
  report.conditions.push_back(detail::back(r, "v"));
  report.nonempty = !r.pairs.empty();
  return report;
}

/// Evaluates clauses (f.i)-(f.iv) of a φ,Sen'-refinement literally.
template <BaseInstitution L>
ConditionReport check_refinement(const WorldRelation<L>& r) {
  validate_relation(r);
  ConditionReport report;
  report.kind = RelationKind::Refinement;
  report.conditions.push_back(detail::nominal_agreement(r, false, "f.i"));
  report.conditions.push_back(detail::local_agreement(r, false, "f.ii"));
  report.conditions.push_back(detail::nominal_pairs(r, "f.iii"));
  report.conditions.push_back(detail::forth(r, "f.iv"));
  report.nonempty = !r.pairs.empty();
  return report;
}

template <BaseInstitution L>
ConditionReport check_relation(const WorldRelation<L>& r, RelationKind kind) {
  return kind == RelationKind::Bisimulation ? check_bisim(r) : check_refinement(r);
}

}  // namespace hybridkit
