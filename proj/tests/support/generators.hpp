#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hybridkit/eq.hpp"
#include "hybridkit/equiv.hpp"
#include "hybridkit/hybrid.hpp"
#include "hybridkit/mvl.hpp"
#include "hybridkit/pl.hpp"

// Random signatures, models, sentences and morphisms for the property tests.
// Sizes stay small: at most three base symbols, four worlds, depth three.
namespace hktest {

using namespace hybridkit;
using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }
template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

inline std::vector<std::string> names(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Base logics ----------------------------------------------------------------

/// Per-logic generators. Each provides signature(rng), model(rng, sig),
/// sentence(rng, sig, depth) and morphism(rng, source-size hints).
template <class L>
struct Gen;

template <>
struct Gen<pl::Logic> {
  static pl::Signature signature(Rng& rng, int max_symbols = 3) {
    return pl::Signature(names("p", uniform(rng, 1, max_symbols)));
  }
  static pl::Model model(Rng& rng, const pl::Signature& sig) {
    std::vector<bool> v;
    for (std::size_t i = 0; i < sig.props.size(); ++i) v.push_back(coin(rng));
    return pl::Model(sig, v);
  }
  static pl::Formula sentence(Rng& rng, const pl::Signature& sig, int depth) {
    if (depth == 0 || coin(rng, 0.3)) return pl::Formula::atom(pick(rng, sig.props));
    switch (uniform(rng, 0, 3)) {
      case 0: return pl::Formula::negation(sentence(rng, sig, depth - 1));
      case 1: return pl::Formula::conjunction(sentence(rng, sig, depth - 1), sentence(rng, sig, depth - 1));
      case 2: return pl::Formula::disjunction(sentence(rng, sig, depth - 1), sentence(rng, sig, depth - 1));
      default: return pl::Formula::implication(sentence(rng, sig, depth - 1), sentence(rng, sig, depth - 1));
    }
  }
  /// Source signature plus a random (not necessarily injective) map into `target`.
  static pl::Morphism morphism_into(Rng& rng, const pl::Signature& target, int max_symbols = 3) {
    pl::Signature source(names("a", uniform(rng, 1, max_symbols)));
    std::map<std::string, std::string> m;
    for (const auto& p : source.props) m[p] = pick(rng, target.props);
    return pl::Morphism(source, target, m);
  }
};

template <>
struct Gen<mvl::Logic> {
  static mvl::LatticeRef lattice(Rng& rng) {
    static const auto chain4 = std::make_shared<const mvl::ResiduatedLattice>(mvl::ResiduatedLattice::chain(4));
    static const auto chain3 = std::make_shared<const mvl::ResiduatedLattice>(mvl::ResiduatedLattice::chain(3));
    static const auto boolean = std::make_shared<const mvl::ResiduatedLattice>(mvl::ResiduatedLattice::boolean());
    switch (uniform(rng, 0, 3)) {
      case 0: return boolean;
      case 1: return chain3;
      default: return chain4;
    }
  }
  static mvl::Signature signature(Rng& rng, int max_symbols = 3) {
    return mvl::Signature(names("p", uniform(rng, 1, max_symbols)), lattice(rng));
  }
  static mvl::Signature signature(Rng& rng, mvl::LatticeRef l, int max_symbols = 3) {
    return mvl::Signature(names("p", uniform(rng, 1, max_symbols)), std::move(l));
  }
  static mvl::Model model(Rng& rng, const mvl::Signature& sig) {
    std::vector<int> v;
    const int n = static_cast<int>(sig.lattice->size());
    for (std::size_t i = 0; i < sig.props.size(); ++i) v.push_back(uniform(rng, 0, n - 1));
    return mvl::Model(sig, v);
  }
  static mvl::Formula formula(Rng& rng, const mvl::Signature& sig, int depth) {
    if (depth == 0 || coin(rng, 0.3)) {
      int r = uniform(rng, 0, 9);
      if (r == 0) return mvl::Formula::top();
      if (r == 1) return mvl::Formula::bottom();
      return mvl::Formula::atom(pick(rng, sig.props));
    }
    switch (uniform(rng, 0, 2)) {
      case 0: return mvl::Formula::disjunction(formula(rng, sig, depth - 1), formula(rng, sig, depth - 1));
      case 1: return mvl::Formula::tensor(formula(rng, sig, depth - 1), formula(rng, sig, depth - 1));
      default: return mvl::Formula::implication(formula(rng, sig, depth - 1), formula(rng, sig, depth - 1));
    }
  }
  static mvl::Sentence sentence(Rng& rng, const mvl::Signature& sig, int depth) {
    const int n = static_cast<int>(sig.lattice->size());
    return mvl::graded(formula(rng, sig, depth), *sig.lattice, uniform(rng, 0, n - 1));
  }
  static mvl::Morphism morphism_into(Rng& rng, const mvl::Signature& target, int max_symbols = 3) {
    mvl::Signature source(names("a", uniform(rng, 1, max_symbols)), target.lattice);
    std::map<std::string, std::string> m;
    for (const auto& p : source.props) m[p] = pick(rng, target.props);
    return mvl::Morphism(source, target, m);
  }
};

template <>
struct Gen<eq::Logic> {
  /// One or two sorts and one to three operations of arity at most two;
  /// every sort gets a constant-free carrier so terms may still be empty of
  /// ground instances.
  static eq::Signature signature(Rng& rng, int max_symbols = 3) {
    auto sorts = names("s", uniform(rng, 1, 2));
    std::vector<eq::Operation> ops;
    const int n = uniform(rng, 1, std::max(1, max_symbols));
    for (int o = 0; o < n; ++o) {
      eq::Operation op{"f" + std::to_string(o), {}, pick(rng, sorts)};
      const int arity = uniform(rng, 0, 2);
      for (int a = 0; a < arity; ++a) op.args.push_back(pick(rng, sorts));
      ops.push_back(std::move(op));
    }
    return eq::Signature(sorts, ops);
  }
  static eq::FiniteAlgebra model(Rng& rng, const eq::Signature& sig) {
    std::vector<std::vector<std::string>> carriers;
    for (std::size_t s = 0; s < sig.sorts.size(); ++s) carriers.push_back(names("e" + std::to_string(s) + "_", uniform(rng, 1, 3)));
    std::vector<std::vector<int>> tables;
    for (const auto& op : sig.ops) {
      std::size_t size = 1;
      for (const auto& a : op.args) size *= carriers[*sig.sort_index(a)].size();
      const int range = static_cast<int>(carriers[*sig.sort_index(op.result)].size());
      std::vector<int> t;
      for (std::size_t i = 0; i < size; ++i) t.push_back(uniform(rng, 0, range - 1));
      tables.push_back(std::move(t));
    }
    return eq::FiniteAlgebra(sig, carriers, tables);
  }
  static std::optional<eq::Term> term(Rng& rng, const eq::Signature& sig, const std::string& sort,
                                      const std::vector<eq::Variable>& vars, int depth) {
    std::vector<const eq::Variable*> var_choices;
    for (const auto& v : vars) {
      if (v.sort == sort) var_choices.push_back(&v);
    }
    std::vector<const eq::Operation*> op_choices;
    for (const auto& op : sig.ops) {
      if (op.result == sort && (depth > 0 || op.args.empty())) op_choices.push_back(&op);
    }
    if (!var_choices.empty() && (op_choices.empty() || coin(rng, depth == 0 ? 0.8 : 0.3))) {
      const auto* v = pick(rng, var_choices);
      return eq::Term::variable(v->name, v->sort);
    }
    std::shuffle(op_choices.begin(), op_choices.end(), rng);
    for (const auto* op : op_choices) {
      std::vector<eq::Term> args;
      bool ok = true;
      for (const auto& a : op->args) {
        auto t = term(rng, sig, a, vars, depth - 1);
        if (!t) {
          ok = false;
          break;
        }
        args.push_back(*t);
      }
      if (ok) return eq::Term::apply(op->name, std::move(args));
    }
    if (!var_choices.empty()) return eq::Term::variable(var_choices.front()->name, sort);
    return std::nullopt;
  }
  static eq::Equation sentence(Rng& rng, const eq::Signature& sig, int depth) {
    for (;;) {
      std::vector<eq::Variable> vars;
      const int nv = uniform(rng, 0, 2);
      for (int i = 0; i < nv; ++i) vars.push_back({"x" + std::to_string(i), pick(rng, sig.sorts)});
      const std::string& sort = pick(rng, sig.sorts);
      auto l = term(rng, sig, sort, vars, depth);
      auto r = term(rng, sig, sort, vars, depth);
      if (l && r) return eq::Equation{vars, *l, *r};
    }
  }
  /// Sort map first, then each source operation copies the profile of a
  /// target operation through a preimage of its sorts.
  static eq::Morphism morphism_into(Rng& rng, const eq::Signature& target, int max_symbols = 3) {
    for (;;) {
      auto sorts = names("t", uniform(rng, 1, 2));
      std::map<std::string, std::string> sort_map;
      for (const auto& s : sorts) sort_map[s] = pick(rng, target.sorts);
      auto preimage = [&](const std::string& t) {
        std::vector<std::string> out;
        for (const auto& [s, img] : sort_map) {
          if (img == t) out.push_back(s);
        }
        return out;
      };
      std::vector<eq::Operation> ops;
      std::map<std::string, std::string> op_map;
      const int n = uniform(rng, 1, std::max(1, max_symbols));
      for (int o = 0; o < n; ++o) {
        const auto& t = pick(rng, target.ops);
        eq::Operation op{"g" + std::to_string(o), {}, {}};
        bool ok = true;
        for (const auto& a : t.args) {
          auto pre = preimage(a);
          if (pre.empty()) {
            ok = false;
            break;
          }
          op.args.push_back(pick(rng, pre));
        }
        auto pre = preimage(t.result);
        if (!ok || pre.empty()) continue;
        op.result = pick(rng, pre);
        op_map[op.name] = t.name;
        ops.push_back(std::move(op));
      }
      if (ops.empty()) continue;
      return eq::Morphism(eq::Signature(sorts, ops), target, sort_map, op_map);
    }
  }
};

// Hybrid layer -----------------------------------------------------------------

template <class L>
HybridSignature<L> hybrid_signature(Rng& rng, typename L::Signature base, int max_nominals = 2,
                                    int max_modalities = 2, int max_arity = 2) {
  std::vector<Modality> mods;
  const int m = uniform(rng, 1, max_modalities);
  for (int k = 0; k < m; ++k) mods.push_back({"m" + std::to_string(k), uniform(rng, 1, max_arity)});
  return HybridSignature<L>(std::move(base), names("i", uniform(rng, 0, max_nominals)), mods);
}

template <class L>
KripkeModel<L> kripke(Rng& rng, const HybridSignature<L>& sig, int worlds, double density = 0.35) {
  KripkeModel<L> k{sig, names("w", worlds), {}, {}, {}};
  for (const auto& i : sig.nominals) k.nominals[i] = pick(rng, k.worlds);
  for (const auto& m : sig.modalities) {
    std::set<Tuple> tuples;
    std::vector<std::size_t> idx(static_cast<std::size_t>(m.arity) + 1, 0);
    const std::size_t n = k.worlds.size();
    for (;;) {
      if (coin(rng, density)) {
        Tuple t;
        for (auto x : idx) t.push_back(k.worlds[x]);
        tuples.insert(std::move(t));
      }
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == n) idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
    if (!tuples.empty()) k.relations[m.name] = std::move(tuples);
  }
  for (const auto& w : k.worlds) k.locals.emplace(w, Gen<L>::model(rng, sig.base));
  return k;
}

template <class L>
HybridSentence<L> hybrid_sentence(Rng& rng, const HybridSignature<L>& sig, int depth, int base_depth = 1) {
  using S = HybridSentence<L>;
  if (depth == 0 || coin(rng, 0.25)) {
    if (!sig.nominals.empty() && coin(rng, 0.3)) return S::nominal(pick(rng, sig.nominals));
    return S::base(Gen<L>::sentence(rng, sig.base, base_depth));
  }
  auto sub = [&] { return hybrid_sentence(rng, sig, depth - 1, base_depth); };
  switch (uniform(rng, 0, 6)) {
    case 0: return S::negation(sub());
    case 1: return S::disjunction(sub(), sub());
    case 2: return S::conjunction(sub(), sub());
    case 3: return S::implication(sub(), sub());
    case 4:
      if (!sig.nominals.empty()) return S::at(pick(rng, sig.nominals), sub());
      return S::negation(sub());
    default: {
      const auto& m = pick(rng, sig.modalities);
      std::vector<S> args;
      for (int k = 0; k < m.arity; ++k) args.push_back(sub());
      return coin(rng) ? S::box(m.name, std::move(args)) : S::diamond(m.name, std::move(args));
    }
  }
}

/// Hybrid morphism into `target`: a random base morphism, nominals sent to
/// random target nominals, modalities to random target modalities of the
/// same arity.
template <class L>
HybridMorphism<L> hybrid_morphism_into(Rng& rng, const HybridSignature<L>& target) {
  auto base = Gen<L>::morphism_into(rng, target.base);
  std::vector<std::string> noms;
  std::map<std::string, std::string> nom_map;
  if (!target.nominals.empty()) {
    const int n = uniform(rng, 0, 2);
    for (int i = 0; i < n; ++i) {
      noms.push_back("j" + std::to_string(i));
      nom_map[noms.back()] = pick(rng, target.nominals);
    }
  }
  std::vector<Modality> mods;
  std::map<std::string, std::string> mod_map;
  const int m = uniform(rng, 0, 2);
  for (int k = 0; k < m; ++k) {
    const auto& t = pick(rng, target.modalities);
    mods.push_back({"n" + std::to_string(k), t.arity});
    mod_map[mods.back().name] = t.name;
  }
  if (mods.empty()) {
    mods.push_back({"n0", target.modalities.front().arity});
    mod_map["n0"] = target.modalities.front().name;
  }
  HybridSignature<L> source(L::source(base), noms, mods);
  return HybridMorphism<L>(source, target, base, nom_map, mod_map);
}

/// Copies every world of `k` one or two times (nominal worlds once) and
/// lifts each tuple to every combination of copies that keeps the source
/// copy fixed; the copy map is then a bisimulation along the identity.
template <class L>
KripkeModel<L> unfold(Rng& rng, const KripkeModel<L>& k) {
  std::set<std::string> named;
  for (const auto& [i, w] : k.nominals) named.insert(w);
  std::map<std::string, std::vector<std::string>> copies;
  KripkeModel<L> out{k.signature, {}, k.nominals, {}, {}};
  for (const auto& w : k.worlds) {
    const int n = named.count(w) ? 1 : uniform(rng, 1, 2);
    for (int c = 0; c < n; ++c) {
      std::string name = c == 0 ? w : w + "_" + std::to_string(c);
      copies[w].push_back(name);
      out.worlds.push_back(name);
      out.locals.emplace(name, k.local(w));
    }
  }
  for (const auto& [lam, tuples] : k.relations) {
    for (const auto& t : tuples) {
      for (const auto& src : copies[t.front()]) {
        Tuple lifted{src};
        for (std::size_t x = 1; x < t.size(); ++x) lifted.push_back(pick(rng, copies[t[x]]));
        out.relations[lam].insert(std::move(lifted));
      }
    }
  }
  std::shuffle(out.worlds.begin(), out.worlds.end(), rng);
  return out;
}

// Oracles -------------------------------------------------------------------

/// Direct recursive satisfaction on the named model, independent of Frame
/// and extension().
template <class L>
bool naive_sat(const KripkeModel<L>& k, const std::string& w, const HybridSentence<L>& s) {
  switch (s.op()) {
    case HybridOp::Base: return L::satisfies(k.local(w), s.base_sentence());
    case HybridOp::Nominal: return k.nominals.at(s.name()) == w;
    case HybridOp::Not: return !naive_sat(k, w, s.arg(0));
    case HybridOp::Or: return naive_sat(k, w, s.arg(0)) || naive_sat(k, w, s.arg(1));
    case HybridOp::And: return naive_sat(k, w, s.arg(0)) && naive_sat(k, w, s.arg(1));
    case HybridOp::Implies: return !naive_sat(k, w, s.arg(0)) || naive_sat(k, w, s.arg(1));
    case HybridOp::At: return naive_sat(k, k.nominals.at(s.name()), s.arg(0));
    case HybridOp::Box:
    case HybridOp::Diamond: {
      const bool box = s.op() == HybridOp::Box;
      for (const auto& t : k.relation(s.name())) {
        if (t.front() != w) continue;
        bool all = true, some = false;
        for (std::size_t x = 1; x < t.size(); ++x) {
          bool v = naive_sat(k, t[x], s.arg(x - 1));
          all = all && v;
          some = some || v;
        }
        if (box && !some) return false;
        if (!box && all) return true;
      }
      return box;
    }
  }
  return false;
}

/// Plain back-and-forth bisimulation for Kripke structures with one unary
/// relation and a propositional labelling: start from all label-equal pairs
/// and delete pairs violating forth or back until stable.
inline std::set<std::pair<std::string, std::string>> textbook_bisimulation(const KripkeModel<pl::Logic>& a,
                                                                           const KripkeModel<pl::Logic>& b,
                                                                           const std::string& rel) {
  auto succ = [&rel](const KripkeModel<pl::Logic>& k, const std::string& w) {
    std::vector<std::string> out;
    for (const auto& t : k.relation(rel)) {
      if (t[0] == w) out.push_back(t[1]);
    }
    return out;
  };
  std::set<std::pair<std::string, std::string>> z;
  for (const auto& w : a.worlds) {
    for (const auto& v : b.worlds) {
      if (a.local(w).values() == b.local(v).values()) z.insert({w, v});
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (auto it = z.begin(); it != z.end();) {
      auto [w, v] = *it;
      bool forth = true, back = true;
      for (const auto& w2 : succ(a, w)) {
        bool matched = false;
        for (const auto& v2 : succ(b, v)) matched = matched || z.count({w2, v2});
        forth = forth && matched;
      }
      for (const auto& v2 : succ(b, v)) {
        bool matched = false;
        for (const auto& w2 : succ(a, w)) matched = matched || z.count({w2, v2});
        back = back && matched;
      }
      if (forth && back) {
        ++it;
      } else {
        it = z.erase(it);
        changed = true;
      }
    }
  }
  return z;
}

/// Literal invariance check: enumerate every sentence up to `depth` and
/// compare truth at each related pair. Exponential; for tiny instances.
template <class L>
std::size_t literal_invariance_violations(const WorldRelation<L>& r, const std::vector<typename L::Sentence>& pool,
                                          int depth) {
  std::size_t out = 0;
  for (const auto& s : enumerate_hybrid(r.left.signature, pool, depth)) {
    auto t = hyb_translate(r.morphism, s);
    for (const auto& [w, v] : r.pairs) {
      if (naive_sat(r.left, w, s) != naive_sat(r.right, v, t)) ++out;
    }
  }
  return out;
}

}  // namespace hktest
