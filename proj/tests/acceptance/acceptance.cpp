// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "generators.hpp"
#include "hybridkit/frontend/driver.hpp"
#include "hybridkit/frontend/parser.hpp"
#include "hybridkit/frontend/printer.hpp"
#include "hybridkit/frontend/resolve.hpp"

using namespace hybridkit;
using namespace hktest;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = HYBRIDKIT_FIXTURES;

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> fixture_files() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(kFixtures)) {
    if (e.path().extension() == ".hyb") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// 1 ---------------------------------------------------------------------------

template <class L>
std::pair<int, int> satisfaction_triples(Rng& rng, int n) {
  int base_bad = 0, hybrid_bad = 0;
  for (int k = 0; k < n; ++k) {
    auto target = Gen<L>::signature(rng);
    auto phi = Gen<L>::morphism_into(rng, target);
    auto m = Gen<L>::model(rng, target);
    auto rho = Gen<L>::sentence(rng, L::source(phi), 3);
    if (!check_satisfaction_condition<L>(phi, m, rho)) ++base_bad;

    auto htarget = hybrid_signature<L>(rng, Gen<L>::signature(rng));
    auto hphi = hybrid_morphism_into<L>(rng, htarget);
    auto km = kripke<L>(rng, htarget, uniform(rng, 1, 4));
    auto s = hybrid_sentence<L>(rng, hphi.source(), 3);
    auto reduct = hyb_reduct(hphi, km);
    auto t = hyb_translate(hphi, s);
    for (const auto& w : km.worlds) {
      if (naive_sat(km, w, t) != naive_sat(reduct, w, s)) {
        ++hybrid_bad;
        break;
      }
    }
  }
  return {base_bad, hybrid_bad};
}

Outcome criterion_satisfaction() {
  Stopwatch sw;
  Rng rng(1001);
  const int n = 1000;
  auto [pb, ph] = satisfaction_triples<pl::Logic>(rng, n);
  auto [eb, eh] = satisfaction_triples<eq::Logic>(rng, n);
  auto [mb, mh] = satisfaction_triples<mvl::Logic>(rng, n);
  const double t = sw.seconds();
  const int bad = pb + ph + eb + eh + mb + mh;
  return {bad == 0 && t < 60,
          fmt("%d base + %d hybrid triples per logic (pl, eq, mvl), %d failures, %.1fs", n, n, bad, t)};
}

// 2 ---------------------------------------------------------------------------

struct InvarianceTally {
  int pairs = 0;
  int violations = 0;
  int mutants = 0;
  int detected = 0;
  int undetected_but_rejected = 0;
};

template <class L>
void invariance_pairs(Rng& rng, int wanted, InvarianceTally& t) {
  int made = 0;
  while (made < wanted) {
    auto sig = hybrid_signature<L>(rng, Gen<L>::signature(rng, 2), 1, 1, 2);
    auto left = kripke<L>(rng, sig, uniform(rng, 1, 3));
    auto right = coin(rng, 0.7) ? unfold<L>(rng, left) : kripke<L>(rng, sig, uniform(rng, 1, 3));
    auto found = largest_bisim(left, right, HybridMorphism<L>::identity(sig), FragmentOf<L>::atoms());
    if (!found.found()) continue;
    ++made;
    ++t.pairs;
    const auto pool = L::atoms(sig.base);
    if (!verify_invariance(*found.relation, pool, 3).passed()) ++t.violations;

    std::vector<WorldPair> outside;
    for (const auto& w : left.worlds) {
      for (const auto& v : right.worlds) {
        if (!found.relation->contains(w, v)) outside.emplace_back(w, v);
      }
    }
    if (outside.empty()) continue;
    auto mutant = *found.relation;
    mutant.pairs.insert(pick(rng, outside));
    ++t.mutants;
    if (!verify_invariance(mutant, pool, 3).passed()) {
      ++t.detected;
    } else if (!check_bisim(mutant).passed()) {
      ++t.undetected_but_rejected;
    }
  }
}

Outcome criterion_invariance() {
  Rng rng(2002);
  InvarianceTally pl_t, mvl_t;
  invariance_pairs<pl::Logic>(rng, 200, pl_t);
  invariance_pairs<mvl::Logic>(rng, 200, mvl_t);
  auto rate = [](const InvarianceTally& t) { return t.mutants ? double(t.detected) / t.mutants : 1.0; };
  const bool rest_rejected = pl_t.detected + pl_t.undetected_but_rejected == pl_t.mutants &&
                             mvl_t.detected + mvl_t.undetected_but_rejected == mvl_t.mutants;
  const bool pass = pl_t.violations == 0 && mvl_t.violations == 0 && rate(pl_t) >= 0.95 && rate(mvl_t) >= 0.95 &&
                    rest_rejected;
  return {pass, fmt("H-PL %d pairs/%d violations, mutants %d/%d detected; H-MVL %d pairs/%d violations, "
                    "mutants %d/%d detected",
                    pl_t.pairs, pl_t.violations, pl_t.detected, pl_t.mutants, mvl_t.pairs, mvl_t.violations,
                    mvl_t.detected, mvl_t.mutants)};
}

// 3 ---------------------------------------------------------------------------

template <class L>
bool fixpoint_instance(Rng& rng, int& found) {
  auto target = hybrid_signature<L>(rng, Gen<L>::signature(rng, 2), 1, 2, 2);
  auto phi = coin(rng) ? HybridMorphism<L>::identity(target) : hybrid_morphism_into<L>(rng, target);
  const int lw = uniform(rng, 1, 3);
  const int rw = uniform(rng, 1, 9 / lw);
  auto left = kripke<L>(rng, phi.source(), lw);
  auto right = coin(rng, 0.3) && phi.source() == target ? unfold<L>(rng, left) : kripke<L>(rng, target, rw);
  if (left.worlds.size() * right.worlds.size() > 9) right = kripke<L>(rng, target, rw);
  auto frag = coin(rng) ? FragmentOf<L>::atoms() : FragmentOf<L>::negation_free(1);
  for (auto kind : {RelationKind::Bisimulation, RelationKind::Refinement}) {
    auto fast = kind == RelationKind::Bisimulation ? largest_bisim(left, right, phi, frag)
                                                   : largest_simulation(left, right, phi, frag);
    auto slow = brute_force_largest(left, right, phi, frag, kind);
    if (fast.found() != slow.found()) return false;
    if (fast.found()) {
      ++found;
      if (fast.relation->pairs != slow.relation->pairs) return false;
    }
  }
  return true;
}

Outcome criterion_fixpoint() {
  Stopwatch sw;
  Rng rng(3003);
  const int n = 600;
  int bad = 0, found = 0;
  for (int k = 0; k < n; ++k) {
    bool ok = false;
    switch (k % 3) {
      case 0: ok = fixpoint_instance<pl::Logic>(rng, found); break;
      case 1: ok = fixpoint_instance<mvl::Logic>(rng, found); break;
      default: ok = fixpoint_instance<eq::Logic>(rng, found); break;
    }
    if (!ok) ++bad;
  }
  const double t = sw.seconds();
  return {bad == 0 && t < 120,
          fmt("%d instances x {bisim, refine}, %d mismatches, %d non-empty results, %.1fs", n, bad, found, t)};
}

// 4 ---------------------------------------------------------------------------

Outcome criterion_refinement_boundary() {
  using L = pl::Logic;
  auto spec = frontend::parse_spec(slurp(kFixtures / "refinement_box.hyb"));
  auto ws = frontend::resolve(std::get<frontend::Document<L>>(spec));
  const auto& r = ws.relations.at("R");
  if (!check_refinement(r).passed()) return {false, "R is not a refinement"};
  if (!r.left.relation("lam").empty()) return {false, "abstract model has transitions"};
  auto report = verify_refinement_preservation(r, default_pool<L>(r.left.signature.base, r.fragment), 3);
  int boxed = 0;
  std::string example;
  for (const auto& c : report.counterexamples) {
    auto s = frontend::parse_sentence<L>(c.sentence, r.left.signature);
    if (s.op() != HybridOp::Box) continue;
    // Re-evaluate independently before counting it.
    if (naive_sat(r.left, c.left, s) && !naive_sat(r.right, c.right, hyb_translate(r.morphism, s))) {
      ++boxed;
      if (example.empty()) example = c.sentence + " at (" + c.left + ", " + c.right + ")";
    }
  }
  return {report.local.passed() && boxed > 0,
          fmt("%zu positive classes, %zu violations; %d boxed counterexamples, e.g. %s", report.local.classes,
              report.local.violation_count, boxed, example.c_str())};
}

// 5 ---------------------------------------------------------------------------

Outcome criterion_lattices() {
  auto b = mvl::lattice_validate(mvl::ResiduatedLattice::boolean());
  auto c4 = mvl::lattice_validate(mvl::ResiduatedLattice::chain(4));
  frontend::LatticeSpec spec;
  spec.source = frontend::LatticeSpec::Source::File;
  spec.path = "erratum.lat";
  frontend::ParseOptions options;
  options.base_dir = kFixtures;
  auto printed = mvl::lattice_validate(*frontend::load_lattice(spec, options));
  return {b.valid() && c4.valid() && !printed.valid(),
          fmt("bool %s, chain(4) %s, printed tensor %s (%zu violations)", b.valid() ? "valid" : "INVALID",
              c4.valid() ? "valid" : "INVALID", printed.valid() ? "VALID" : "invalid", printed.violations.size())};
}

// 6 ---------------------------------------------------------------------------

Outcome criterion_valuation_order() {
  using L = mvl::Logic;
  Rng rng(6006);
  const int n = 300;
  int bad = 0;
  for (int k = 0; k < n; ++k) {
    auto sig = hybrid_signature<L>(rng, Gen<L>::signature(rng), 1, 1, 2);
    auto phi = coin(rng) ? HybridMorphism<L>::identity(sig) : hybrid_morphism_into<L>(rng, sig);
    const auto& lat = *sig.base.lattice;
    auto right = kripke<L>(rng, sig, uniform(rng, 1, 4));
    for (const auto& w : right.worlds) {
      const auto& m2 = right.local(w);
      // Pointwise v(p) <= v'(phi(p)), the lower value drawn below the upper one.
      std::vector<int> values;
      for (const auto& p : phi.source().base.props) {
        const int upper = m2.value(phi.base().apply(p));
        std::vector<int> below;
        for (int x = 0; x < static_cast<int>(lat.size()); ++x) {
          if (lat.leq(x, upper)) below.push_back(x);
        }
        values.push_back(pick(rng, below));
      }
      mvl::Model m(phi.source().base, values);
      if (!elem_implies<L>(m, m2, phi.base(), FragmentOf<L>::atoms())) ++bad;
    }
  }
  return {bad == 0, fmt("%d H-MVL models, every world checked, %d failures", n, bad)};
}

// 7 ---------------------------------------------------------------------------

Outcome criterion_store() {
  frontend::CheckOptions o;
  o.filename = "store.hyb";
  o.base_dir = kFixtures;
  o.json = true;
  std::ostringstream out, err;
  const int code = frontend::run_check(o, slurp(kFixtures / "store.hyb"), out, err);

  using L = eq::Logic;
  auto spec = frontend::parse_spec(slurp(kFixtures / "store.hyb"));
  auto ws = frontend::resolve(std::get<frontend::Document<L>>(spec));
  const auto& r = ws.relations.at("R");
  const std::set<WorldPair> expected{{"star", "s1"}, {"star", "s2"}};
  const bool explicit_fragment = r.fragment.kind == FragmentKind::Explicit && r.pairs == expected;
  const bool refines = check_refinement(r).passed();
  auto found = largest_simulation(r.left, r.right, r.morphism, r.fragment);
  bool contains = found.found();
  for (const auto& p : expected) contains = contains && found.relation->contains(p.first, p.second);
  const bool driver_ok = out.str().find("\"command\":\"find-refine") != std::string::npos;
  return {code == 0 && explicit_fragment && refines && contains && driver_ok,
          fmt("exit %d, R = {(star,s1),(star,s2)} %s under the store law, find-refine %s R", code,
              refines ? "refines" : "does NOT refine", contains ? "contains" : "misses")};
}

// 8 ---------------------------------------------------------------------------

Outcome criterion_textbook() {
  using L = pl::Logic;
  Rng rng(8008);
  const int n = 300;
  int bad = 0, nonempty = 0;
  for (int k = 0; k < n; ++k) {
    HybridSignature<L> sig(Gen<L>::signature(rng), {}, {{"r", 1}});
    auto a = kripke<L>(rng, sig, uniform(rng, 1, 5), 0.3);
    auto b = coin(rng) ? unfold<L>(rng, a) : kripke<L>(rng, sig, uniform(rng, 1, 5), 0.3);
    auto expected = textbook_bisimulation(a, b, "r");
    auto got = largest_bisim(a, b, HybridMorphism<L>::identity(sig), FragmentOf<L>::atoms());
    std::set<WorldPair> pairs = got.found() ? got.relation->pairs : std::set<WorldPair>{};
    if (pairs != expected) ++bad;
    if (!expected.empty()) ++nonempty;
  }
  return {bad == 0, fmt("%d instances (%d with a non-empty bisimulation), %d disagreements", n, nonempty, bad)};
}

// 9 ---------------------------------------------------------------------------

std::string mutate(Rng& rng, std::string text) {
  static const std::vector<std::string> tokens = {";", "{", "}", "(", ")", ",", "->", "=", "@", "<", ">", "[",
                                                  "]", "!", "\\/", "/\\", "=>", "*", ":", "world", "model",
                                                  "logic", "0", "1", "p", "depth 9", "\"", "chain(3)"};
  const int edits = uniform(rng, 1, 4);
  for (int e = 0; e < edits && !text.empty(); ++e) {
    const auto pos = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(text.size()) - 1));
    switch (uniform(rng, 0, 4)) {
      case 0: text.erase(pos, static_cast<std::size_t>(uniform(rng, 1, 8))); break;
      case 1: text.insert(pos, pick(rng, tokens)); break;
      case 2: text[pos] = static_cast<char>(uniform(rng, 0, 255)); break;
      case 3: text.resize(pos); break;
      default: {
        const auto other = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(text.size()) - 1));
        std::swap(text[pos], text[other]);
        break;
      }
    }
  }
  return text;
}

// A '$' at the start of a line is outside every comment and string.
std::string break_input(Rng& rng, std::string text) {
  std::vector<std::size_t> starts{0};
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] == '\n') starts.push_back(i + 1);
  }
  text.insert(pick(rng, starts), "$");
  return text;
}

Outcome criterion_frontend() {
  frontend::ParseOptions options;
  options.base_dir = kFixtures;
  std::vector<std::string> sources;
  int round_trip_bad = 0;
  for (const auto& f : fixture_files()) {
    sources.push_back(slurp(f));
    auto spec = frontend::parse_spec(sources.back(), options);
    auto printed = frontend::print_spec(spec);
    auto again = frontend::parse_spec(printed, options);
    if (!(again == spec) || frontend::print_spec(again) != printed) ++round_trip_bad;
  }

  Rng rng(9009);
  const int n = 10000;
  std::string first_crash;
  int crashes = 0, malformed = 0, malformed_bad = 0, codes[3] = {0, 0, 0};
  frontend::CheckOptions o;
  o.filename = "fuzz.hyb";
  o.base_dir = kFixtures;
  o.json = true;
  for (int k = 0; k < n; ++k) {
    const bool broken = k % 4 == 0;
    std::string input = pick(rng, sources);
    input = broken ? break_input(rng, mutate(rng, input)) : mutate(rng, input);
    std::ostringstream out, err;
    int code = -1;
    try {
      o.json = k % 2 == 0;
      code = frontend::run_check(o, input, out, err);
      if (k % 3 == 0) {
        std::ostringstream fout, ferr;
        const int fcode = frontend::run_format(o, input, fout, ferr);
        if (fcode != frontend::kExitPass && fcode != frontend::kExitInputError) code = -1;
        if (broken && fcode != frontend::kExitInputError) code = -1;
      }
    } catch (const std::exception& e) {
      if (!crashes++) first_crash = e.what();
      continue;
    } catch (...) {
      if (!crashes++) first_crash = "non-standard exception";
      continue;
    }
    if (code < 0 || code > 2) {
      if (!crashes++) first_crash = "exit code " + std::to_string(code);
      continue;
    }
    ++codes[code];
    if (broken) {
      ++malformed;
      if (code != frontend::kExitInputError) ++malformed_bad;
    }
  }
  return {round_trip_bad == 0 && crashes == 0 && malformed_bad == 0,
          fmt("%zu fixtures round-trip (%d failures); %d fuzz inputs, %d crashes, exit codes 0/1/2 = %d/%d/%d; "
              "%d malformed, %d not exiting 2%s",
              sources.size(), round_trip_bad, n, crashes, codes[0], codes[1], codes[2], malformed, malformed_bad,
              first_crash.empty() ? "" : ("; first crash: " + first_crash).c_str())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"satisfaction condition", criterion_satisfaction},
      {"bisimulation invariance", criterion_invariance},
      {"fixpoint vs brute force", criterion_fixpoint},
      {"refinement preservation boundary", criterion_refinement_boundary},
      {"residuated lattice laws", criterion_lattices},
      {"valuation order implies atom flow", criterion_valuation_order},
      {"store refinement end to end", criterion_store},
      {"textbook bisimulation cross-check", criterion_textbook},
      {"frontend robustness", criterion_frontend},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s  %d. %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
