#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hybridkit/hybrid/signature.hpp"

namespace hybridkit {

enum class HybridOp { Base, Nominal, Not, Or, And, Implies, At, Box, Diamond };

/// Hybrid sentence tree. `name` holds the nominal (Nominal, At) or the
/// modality (Box, Diamond); Box and Diamond carry one argument per modality
/// argument position.
template <BaseInstitution L>
class HybridSentence {
 public:
  using Base = typename L::Sentence;

  static HybridSentence base(Base s) { return make(HybridOp::Base, {}, std::move(s), {}); }
  static HybridSentence nominal(std::string i) { return make(HybridOp::Nominal, std::move(i), {}, {}); }
  static HybridSentence negation(HybridSentence a) { return make(HybridOp::Not, {}, {}, {std::move(a)}); }
  static HybridSentence disjunction(HybridSentence a, HybridSentence b) {
    return make(HybridOp::Or, {}, {}, {std::move(a), std::move(b)});
  }
  static HybridSentence conjunction(HybridSentence a, HybridSentence b) {
    return make(HybridOp::And, {}, {}, {std::move(a), std::move(b)});
  }
  static HybridSentence implication(HybridSentence a, HybridSentence b) {
    return make(HybridOp::Implies, {}, {}, {std::move(a), std::move(b)});
  }
  static HybridSentence at(std::string i, HybridSentence a) {
    return make(HybridOp::At, std::move(i), {}, {std::move(a)});
  }
  static HybridSentence box(std::string lam, std::vector<HybridSentence> args) {
    return make(HybridOp::Box, std::move(lam), {}, std::move(args));
  }
  static HybridSentence diamond(std::string lam, std::vector<HybridSentence> args) {
    return make(HybridOp::Diamond, std::move(lam), {}, std::move(args));
  }

  HybridOp op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  const Base& base_sentence() const { return *node_->base; }
  const std::vector<HybridSentence>& args() const { return node_->args; }
  const HybridSentence& arg(std::size_t k) const { return node_->args.at(k); }
  int depth() const { return node_->depth; }

  friend bool operator==(const HybridSentence& a, const HybridSentence& b) {
    if (a.node_ == b.node_) return true;
    return a.op() == b.op() && a.name() == b.name() && a.node_->base == b.node_->base &&
           a.args() == b.args();
  }

 private:
  struct Node {
    HybridOp op;
    std::string name;
    std::optional<Base> base;
    std::vector<HybridSentence> args;
    int depth;
  };
  explicit HybridSentence(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static HybridSentence make(HybridOp op, std::string name, std::optional<Base> base,
                             std::vector<HybridSentence> args) {
    int depth = 0;
    for (const auto& a : args) depth = std::max(depth, a.depth() + 1);
    return HybridSentence(std::make_shared<const Node>(
        Node{op, std::move(name), std::move(base), std::move(args), depth}));
  }
  std::shared_ptr<const Node> node_;
};

namespace detail {

inline int hybrid_precedence(HybridOp op) {
  switch (op) {
    case HybridOp::Implies: return 1;
    case HybridOp::Or: return 2;
    case HybridOp::And: return 3;
    default: return 4;
  }
}

template <BaseInstitution L>
void print_hybrid(const HybridSentence<L>& s, std::string& out) {
  auto child = [&out](const HybridSentence<L>& c, bool parens) {
    if (parens) out += '(';
    print_hybrid(c, out);
    if (parens) out += ')';
  };
  auto list = [&out](const std::vector<HybridSentence<L>>& args) {
    out += '(';
    for (std::size_t k = 0; k < args.size(); ++k) {
      if (k) out += ", ";
      print_hybrid(args[k], out);
    }
    out += ')';
  };
  const int p = hybrid_precedence(s.op());
  switch (s.op()) {
    case HybridOp::Base:
      out += "{ " + L::to_string(s.base_sentence()) + " }";
      break;
    case HybridOp::Nominal: out += s.name(); break;
    case HybridOp::Not:
      out += '!';
      child(s.arg(0), hybrid_precedence(s.arg(0).op()) < p);
      break;
    case HybridOp::At:
      out += "@" + s.name() + " ";
      child(s.arg(0), hybrid_precedence(s.arg(0).op()) < p);
      break;
    case HybridOp::Or:
    case HybridOp::And:
      child(s.arg(0), hybrid_precedence(s.arg(0).op()) < p);
      out += s.op() == HybridOp::Or ? " \\/ " : " /\\ ";
      child(s.arg(1), hybrid_precedence(s.arg(1).op()) <= p);
      break;
    case HybridOp::Implies:
      child(s.arg(0), hybrid_precedence(s.arg(0).op()) <= p);
      out += " => ";
      child(s.arg(1), hybrid_precedence(s.arg(1).op()) < p);
      break;
    case HybridOp::Box:
      out += "[" + s.name() + "]";
      list(s.args());
      break;
    case HybridOp::Diamond:
      out += "<" + s.name() + ">";
      list(s.args());
      break;
  }
}

}  // namespace detail

/// Concrete syntax: `{ base }`, nominals as identifiers, `! /\ \/ =>`,
/// `@i rho`, `<lam>(r1, ..., rn)`, `[lam](r1, ..., rn)`.
template <BaseInstitution L>
std::string to_string(const HybridSentence<L>& s) {
  std::string out;
  detail::print_hybrid(s, out);
  return out;
}

/// Throws ValidationError on an undeclared nominal or modality, an arity
/// mismatch, or an ill-formed base sentence.
template <BaseInstitution L>
void validate_sentence(const HybridSignature<L>& sig, const HybridSentence<L>& s) {
  switch (s.op()) {
    case HybridOp::Base: L::check_sentence(sig.base, s.base_sentence()); return;
    case HybridOp::Nominal:
    case HybridOp::At:
      if (!sig.has_nominal(s.name())) throw ValidationError("undeclared nominal '" + s.name() + "'");
      break;
    case HybridOp::Box:
    case HybridOp::Diamond: {
      auto arity = sig.arity(s.name());
      if (!arity) throw ValidationError("undeclared modality '" + s.name() + "'");
      if (static_cast<std::size_t>(*arity) != s.args().size()) {
        throw ValidationError("modality '" + s.name() + "' has arity " + std::to_string(*arity) + " but is given " +
                              std::to_string(s.args().size()) + " argument(s)");
      }
      break;
    }
    default: break;
  }
  for (const auto& a : s.args()) validate_sentence(sig, a);
}

template <BaseInstitution L>
HybridSentence<L> hyb_translate(const HybridMorphism<L>& phi, const HybridSentence<L>& s) {
  using S = HybridSentence<L>;
  auto map_args = [&phi](const std::vector<S>& args) {
    std::vector<S> out;
    out.reserve(args.size());
    for (const auto& a : args) out.push_back(hyb_translate(phi, a));
    return out;
  };
  switch (s.op()) {
    case HybridOp::Base:
      L::check_sentence(phi.source().base, s.base_sentence());
      return S::base(L::translate(phi.base(), s.base_sentence()));
    case HybridOp::Nominal: return S::nominal(phi.nominal(s.name()));
    case HybridOp::Not: return S::negation(hyb_translate(phi, s.arg(0)));
    case HybridOp::Or: return S::disjunction(hyb_translate(phi, s.arg(0)), hyb_translate(phi, s.arg(1)));
    case HybridOp::And: return S::conjunction(hyb_translate(phi, s.arg(0)), hyb_translate(phi, s.arg(1)));
    case HybridOp::Implies:
      return S::implication(hyb_translate(phi, s.arg(0)), hyb_translate(phi, s.arg(1)));
    case HybridOp::At: return S::at(phi.nominal(s.name()), hyb_translate(phi, s.arg(0)));
    case HybridOp::Box: return S::box(phi.modality(s.name()), map_args(s.args()));
    case HybridOp::Diamond: return S::diamond(phi.modality(s.name()), map_args(s.args()));
  }
  return s;
}

/// No negation, no box and no implication anywhere, and every base sentence
/// inside the fragment. Implication is excluded as well: `a => b` is
/// `!a \/ b` and is not preserved along refinements.
template <BaseInstitution L>
bool is_positive_existential(const HybridSentence<L>& s, const FragmentOf<L>& frag) {
  switch (s.op()) {
    case HybridOp::Not:
    case HybridOp::Box:
    case HybridOp::Implies: return false;
    case HybridOp::Base: return L::in_fragment(s.base_sentence(), frag);
    default: break;
  }
  for (const auto& a : s.args()) {
    if (!is_positive_existential(a, frag)) return false;
  }
  return true;
}

/// Every sentence of depth ≤ `depth` over `pool` ∪ nominals, closed under
/// ¬, ∨, ∧, ⇒, @ and all boxes and diamonds. Level d is the pool and the
/// nominals followed by every connective applied to level d-1, so each
/// sentence occurs once.
template <BaseInstitution L>
std::vector<HybridSentence<L>> enumerate_hybrid(const HybridSignature<L>& sig,
                                                const std::vector<typename L::Sentence>& pool,
                                                int depth) {
  using S = HybridSentence<L>;
  if (depth < 0) throw ValidationError("enumeration depth must be non-negative");
  std::vector<S> atoms;
  std::unordered_set<std::string> seen;
  for (const auto& b : pool) {
    L::check_sentence(sig.base, b);
    if (seen.insert(L::to_string(b)).second) atoms.push_back(S::base(b));
  }
  for (const auto& i : sig.nominals) atoms.push_back(S::nominal(i));

  std::vector<S> level = atoms;
  for (int d = 1; d <= depth; ++d) {
    std::vector<S> next = atoms;
    auto push = [&next](S s) {
      if (next.size() >= kMaxEnumeration) throw ValidationError("hybrid enumeration too large");
      next.push_back(std::move(s));
    };
    for (const auto& a : level) push(S::negation(a));
    for (const auto& a : level) {
      for (const auto& b : level) push(S::disjunction(a, b));
    }
    for (const auto& a : level) {
      for (const auto& b : level) push(S::conjunction(a, b));
    }
    for (const auto& a : level) {
      for (const auto& b : level) push(S::implication(a, b));
    }
    for (const auto& i : sig.nominals) {
      for (const auto& a : level) push(S::at(i, a));
    }
    for (const auto& m : sig.modalities) {
      for (bool is_box : {true, false}) {
        std::vector<std::size_t> pick(static_cast<std::size_t>(m.arity), 0);
        if (level.empty()) continue;
        while (true) {
          std::vector<S> args;
          for (auto k : pick) args.push_back(level[k]);
          push(is_box ? S::box(m.name, std::move(args)) : S::diamond(m.name, std::move(args)));
          std::size_t k = pick.size();
          while (k > 0 && ++pick[k - 1] == level.size()) pick[--k] = 0;
          if (k == 0) break;
        }
      }
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace hybridkit
