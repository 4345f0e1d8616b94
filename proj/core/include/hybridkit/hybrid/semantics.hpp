#pragma once

#include <string>
#include <vector>

#include "hybridkit/hybrid/model.hpp"
#include "hybridkit/hybrid/sentence.hpp"

namespace hybridkit {

/// (M, W) ⊨^w ρ, evaluated directly on the named model clause by clause.
///
/// ⟨λ⟩(ξ1..ξn) holds iff some tuple (w, w1..wn) ∈ W_λ has every ξk true at
/// wk; [λ](ξ1..ξn) holds iff every such tuple has some ξk true at wk.
template <BaseInstitution L>
bool hyb_sat_local(const KripkeModel<L>& k, const std::string& w, const HybridSentence<L>& s) {
  if (!k.has_world(w)) throw ValidationError("unknown world '" + w + "'");
  switch (s.op()) {
    case HybridOp::Base: return L::satisfies(k.local(w), s.base_sentence());
    case HybridOp::Nominal: return k.denotation(s.name()) == w;
    case HybridOp::Not: return !hyb_sat_local(k, w, s.arg(0));
    case HybridOp::Or: return hyb_sat_local(k, w, s.arg(0)) || hyb_sat_local(k, w, s.arg(1));
    case HybridOp::And: return hyb_sat_local(k, w, s.arg(0)) && hyb_sat_local(k, w, s.arg(1));
    case HybridOp::Implies: return !hyb_sat_local(k, w, s.arg(0)) || hyb_sat_local(k, w, s.arg(1));
    case HybridOp::At: return hyb_sat_local(k, k.denotation(s.name()), s.arg(0));
    case HybridOp::Diamond:
      for (const auto& t : k.relation(s.name())) {
        if (t.front() != w) continue;
        bool all = true;
        for (std::size_t j = 0; j < s.args().size() && all; ++j) all = hyb_sat_local(k, t[j + 1], s.arg(j));
        if (all) return true;
      }
      return false;
    case HybridOp::Box:
      for (const auto& t : k.relation(s.name())) {
        if (t.front() != w) continue;
        bool some = false;
        for (std::size_t j = 0; j < s.args().size() && !some; ++j) some = hyb_sat_local(k, t[j + 1], s.arg(j));
        if (!some) return false;
      }
      return true;
  }
  return false;
}

/// (M, W) ⊨ ρ: true at every world.
template <BaseInstitution L>
bool hyb_sat_global(const KripkeModel<L>& k, const HybridSentence<L>& s) {
  for (const auto& w : k.worlds) {
    if (!hyb_sat_local(k, w, s)) return false;
  }
  return true;
}

/// Set of worlds, indexed like the frame.
using WorldSet = std::vector<bool>;

namespace worldset {

inline WorldSet complement(const WorldSet& a) {
  WorldSet out(a.size());
  for (std::size_t w = 0; w < a.size(); ++w) out[w] = !a[w];
  return out;
}

template <class F>
WorldSet combine(const WorldSet& a, const WorldSet& b, F f) {
  WorldSet out(a.size());
  for (std::size_t w = 0; w < a.size(); ++w) out[w] = f(a[w], b[w]);
  return out;
}

inline WorldSet at(std::size_t target, const WorldSet& a) { return WorldSet(a.size(), a[target]); }

template <BaseInstitution L>
WorldSet base(const Frame<L>& f, const typename L::Sentence& s) {
  WorldSet out(f.size());
  for (std::size_t w = 0; w < f.size(); ++w) out[w] = L::satisfies(f.local(w), s);
  return out;
}

template <BaseInstitution L>
WorldSet nominal(const Frame<L>& f, const std::string& i) {
  WorldSet out(f.size());
  out[f.nominal(i)] = true;
  return out;
}

template <BaseInstitution L>
WorldSet diamond(const Frame<L>& f, const std::string& lam, const std::vector<const WorldSet*>& args) {
  WorldSet out(f.size());
  for (std::size_t w = 0; w < f.size(); ++w) {
    for (const auto& t : f.successors(lam, w)) {
      bool all = true;
      for (std::size_t j = 0; j < t.size() && all; ++j) all = (*args[j])[t[j]];
      if (all) {
        out[w] = true;
        break;
      }
    }
  }
  return out;
}

template <BaseInstitution L>
WorldSet box(const Frame<L>& f, const std::string& lam, const std::vector<const WorldSet*>& args) {
  WorldSet out(f.size(), true);
  for (std::size_t w = 0; w < f.size(); ++w) {
    for (const auto& t : f.successors(lam, w)) {
      bool some = false;
      for (std::size_t j = 0; j < t.size() && !some; ++j) some = (*args[j])[t[j]];
      if (!some) {
        out[w] = false;
        break;
      }
    }
  }
  return out;
}

}  // namespace worldset

/// The worlds where ρ holds, computed bottom-up on the frame.
template <BaseInstitution L>
WorldSet extension(const Frame<L>& f, const HybridSentence<L>& s) {
  std::vector<WorldSet> sub;
  sub.reserve(s.args().size());
  for (const auto& a : s.args()) sub.push_back(extension(f, a));
  std::vector<const WorldSet*> ptrs;
  for (const auto& x : sub) ptrs.push_back(&x);
  switch (s.op()) {
    case HybridOp::Base: return worldset::base(f, s.base_sentence());
    case HybridOp::Nominal: return worldset::nominal(f, s.name());
    case HybridOp::Not: return worldset::complement(sub[0]);
    case HybridOp::Or: return worldset::combine(sub[0], sub[1], [](bool a, bool b) { return a || b; });
    case HybridOp::And: return worldset::combine(sub[0], sub[1], [](bool a, bool b) { return a && b; });
    case HybridOp::Implies: return worldset::combine(sub[0], sub[1], [](bool a, bool b) { return !a || b; });
    case HybridOp::At: return worldset::at(f.nominal(s.name()), sub[0]);
    case HybridOp::Diamond: return worldset::diamond(f, s.name(), ptrs);
    case HybridOp::Box: return worldset::box(f, s.name(), ptrs);
  }
  return WorldSet(f.size());
}

}  // namespace hybridkit
