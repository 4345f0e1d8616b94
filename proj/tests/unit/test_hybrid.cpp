#include <doctest.h>

#include "generators.hpp"
#include "hybridkit/frontend/parser.hpp"

using namespace hybridkit;
using hktest::Gen;
using hktest::Rng;
using PL = pl::Logic;
using HS = HybridSentence<PL>;

namespace {

HybridSignature<PL> two_props() {
  return HybridSignature<PL>(pl::Signature({"p", "q"}), {"i", "j"}, {{"lam", 1}, {"tri", 2}});
}

pl::Model val(const pl::Signature& sig, bool p, bool q) { return pl::Model(sig, {p, q}); }

// w0 -lam-> w1, w0 -lam-> w2, tri = {(w1, w2, w0)}; p at w1, q at w2.
KripkeModel<PL> small() {
  auto sig = two_props();
  KripkeModel<PL> k{sig, {"w0", "w1", "w2"}, {{"i", "w1"}, {"j", "w2"}}, {}, {}};
  k.relations["lam"] = {{"w0", "w1"}, {"w0", "w2"}};
  k.relations["tri"] = {{"w1", "w2", "w0"}};
  k.locals.emplace("w0", val(sig.base, false, false));
  k.locals.emplace("w1", val(sig.base, true, false));
  k.locals.emplace("w2", val(sig.base, false, true));
  return k;
}

HS parse(std::string_view text) { return frontend::parse_sentence<PL>(text, two_props()); }

}  // namespace

TEST_CASE("hybrid: signatures and morphisms reject malformed maps") {
  pl::Signature base({"p"});
  CHECK_THROWS_AS(HybridSignature<PL>(base, {"i", "i"}, {}), ValidationError);
  CHECK_THROWS_AS(HybridSignature<PL>(base, {}, {{"m", 1}, {"m", 2}}), ValidationError);
  CHECK_THROWS_AS(HybridSignature<PL>(base, {}, {{"m", 0}}), ValidationError);

  HybridSignature<PL> src(base, {"i"}, {{"m", 2}});
  HybridSignature<PL> tgt(base, {"k"}, {{"n", 2}, {"u", 1}});
  auto id = pl::Morphism::identity(base);
  CHECK_NOTHROW(HybridMorphism<PL>(src, tgt, id, {{"i", "k"}}, {{"m", "n"}}));
  CHECK_THROWS_AS(HybridMorphism<PL>(src, tgt, id, {}, {{"m", "n"}}), ValidationError);
  CHECK_THROWS_AS(HybridMorphism<PL>(src, tgt, id, {{"i", "zz"}}, {{"m", "n"}}), ValidationError);
  CHECK_THROWS_AS(HybridMorphism<PL>(src, tgt, id, {{"i", "k"}}, {{"m", "u"}}), ValidationError);
  CHECK_THROWS_AS(HybridMorphism<PL>(src, tgt, id, {{"i", "k"}}, {{"m", "n"}, {"x", "n"}}), ValidationError);
  CHECK_THROWS_AS(HybridMorphism<PL>(src, tgt, pl::Morphism::identity(pl::Signature({"q"})), {{"i", "k"}},
                                     {{"m", "n"}}),
                  ValidationError);
}

TEST_CASE("hybrid: validate_model lists every problem") {
  auto k = small();
  CHECK(validate_model(k).empty());

  auto bad = k;
  bad.worlds.push_back("w0");
  bad.nominals["i"] = "nowhere";
  bad.nominals.erase("j");
  bad.nominals["zz"] = "w0";
  bad.relations["lam"].insert({"w0", "w1", "w2"});
  bad.relations["tri"].insert({"w0", "w9", "w1"});
  bad.relations["ghost"] = {{"w0", "w0"}};
  bad.locals.erase("w2");
  bad.locals.emplace("w7", val(k.signature.base, true, true));
  auto v = validate_model(bad);
  auto has = [&v](std::string_view needle) {
    return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
  };
  CHECK(has("duplicate world 'w0'"));
  CHECK(has("unknown world 'nowhere'"));
  CHECK(has("nominal 'j' has no interpretation"));
  CHECK(has("undeclared nominal 'zz'"));
  CHECK(has("tuple of size 3 in modality 'lam'"));
  CHECK(has("unknown world 'w9'"));
  CHECK(has("undeclared modality 'ghost'"));
  CHECK(has("world 'w2' has no local model"));
  CHECK(has("unknown world 'w7'"));
  CHECK_THROWS_AS(require_valid(bad), ValidationError);
  CHECK_THROWS_AS(Frame<PL>{bad}, ValidationError);

  auto foreign = k;
  foreign.locals.at("w0") = pl::Model(pl::Signature({"p"}), {true});
  CHECK(validate_model(foreign).size() == 1);
}

TEST_CASE("hybrid: polyadic clauses on a hand model") {
  auto k = small();
  CHECK(hyb_sat_local(k, "w0", parse("<lam>({ p })")));
  CHECK(hyb_sat_local(k, "w0", parse("<lam>({ q })")));
  CHECK_FALSE(hyb_sat_local(k, "w0", parse("[lam]({ p })")));
  CHECK(hyb_sat_local(k, "w0", parse("[lam]({ p \\/ q })")));
  // Box needs some argument true per tuple, diamond all of them.
  CHECK(hyb_sat_local(k, "w1", parse("<tri>({ q }, !{ p })")));
  CHECK_FALSE(hyb_sat_local(k, "w1", parse("<tri>({ p }, !{ p })")));
  CHECK(hyb_sat_local(k, "w1", parse("[tri]({ p }, !{ p })")));
  CHECK_FALSE(hyb_sat_local(k, "w1", parse("[tri]({ p }, { p })")));
  // Worlds without successors: every box holds, no diamond does.
  CHECK(hyb_sat_local(k, "w2", parse("[lam]({ p /\\ !p })")));
  CHECK_FALSE(hyb_sat_local(k, "w2", parse("<lam>({ p \\/ !p })")));
  CHECK(hyb_sat_local(k, "w0", parse("@i { p }")));
  CHECK(hyb_sat_local(k, "w0", parse("<lam>(j)")));
  CHECK_FALSE(hyb_sat_local(k, "w0", parse("i")));
  CHECK(hyb_sat_global(k, parse("@j { q }")));
  CHECK_FALSE(hyb_sat_global(k, parse("{ p } \\/ { q }")));
  CHECK_THROWS_AS(hyb_sat_local(k, "w5", parse("i")), ValidationError);
}

TEST_CASE("hybrid: sentence syntax round-trips and is checked") {
  auto sig = two_props();
  CHECK(to_string(parse("{ p } /\\ ({ q } \\/ i) => @j !<lam>({ p })")) ==
        "{ p } /\\ ({ q } \\/ i) => @j !<lam>({ p })");
  CHECK(to_string(parse("!({ p } \\/ { q })")) == "!({ p } \\/ { q })");
  CHECK(to_string(parse("{ p } => { q } => i")) == "{ p } => { q } => i");
  CHECK(to_string(parse("({ p } => { q }) => i")) == "({ p } => { q }) => i");
  CHECK_THROWS_AS(parse("<lam>({ p }, { q })"), Error);
  CHECK_THROWS_AS(parse("@k { p }"), Error);
  CHECK_THROWS_AS(parse("<mu>({ p })"), Error);
  CHECK_THROWS_AS(parse("{ r }"), Error);
  CHECK_THROWS_AS(parse("{ p } /\\"), ParseError);
  CHECK_THROWS_AS(validate_sentence(sig, HS::box("tri", {HS::nominal("i")})), ValidationError);

  Rng rng(11);
  for (int n = 0; n < 300; ++n) {
    auto hs = hktest::hybrid_signature<PL>(rng, Gen<PL>::signature(rng));
    auto s = hktest::hybrid_sentence<PL>(rng, hs, 4);
    CHECK(frontend::parse_sentence<PL>(to_string(s), hs) == s);
  }
}

TEST_CASE("hybrid: three evaluators agree") {
  Rng rng(5);
  for (int n = 0; n < 300; ++n) {
    auto hs = hktest::hybrid_signature<PL>(rng, Gen<PL>::signature(rng));
    auto k = hktest::kripke<PL>(rng, hs, hktest::uniform(rng, 1, 4));
    Frame<PL> f(k);
    auto s = hktest::hybrid_sentence<PL>(rng, hs, 4);
    auto ext = extension(f, s);
    for (std::size_t w = 0; w < f.size(); ++w) {
      const auto& name = f.name(w);
      const bool expected = hktest::naive_sat(k, name, s);
      CHECK(hyb_sat_local(k, name, s) == expected);
      CHECK(ext[w] == expected);
    }
  }
}

TEST_CASE("hybrid: box and diamond are dual") {
  Rng rng(9);
  for (int n = 0; n < 200; ++n) {
    auto hs = hktest::hybrid_signature<PL>(rng, Gen<PL>::signature(rng));
    auto k = hktest::kripke<PL>(rng, hs, hktest::uniform(rng, 1, 4));
    const auto& m = hktest::pick(rng, hs.modalities);
    std::vector<HS> args, negated;
    for (int a = 0; a < m.arity; ++a) {
      args.push_back(hktest::hybrid_sentence<PL>(rng, hs, 2));
      negated.push_back(HS::negation(args.back()));
    }
    auto box = HS::box(m.name, args);
    auto dual = HS::negation(HS::diamond(m.name, negated));
    for (const auto& w : k.worlds) CHECK(hyb_sat_local(k, w, box) == hyb_sat_local(k, w, dual));
  }
}

TEST_CASE("hybrid: reduct reads symbols through the morphism") {
  auto k = small();
  pl::Signature base({"a"});
  HybridSignature<PL> src(base, {"n"}, {{"step", 1}});
  HybridMorphism<PL> phi(src, k.signature, pl::Morphism(base, k.signature.base, {{"a", "q"}}), {{"n", "j"}},
                         {{"step", "lam"}});
  auto r = hyb_reduct(phi, k);
  CHECK(r.signature == src);
  CHECK(r.worlds == k.worlds);
  CHECK(r.nominals.at("n") == "w2");
  CHECK(r.relation("step") == k.relation("lam"));
  CHECK(r.local("w2").value("a"));
  CHECK_FALSE(r.local("w1").value("a"));
  CHECK(validate_model(r).empty());
  CHECK_THROWS_AS(hyb_reduct(phi, r), ValidationError);

  auto s = frontend::parse_sentence<PL>("<step>(n /\\ { a })", src);
  CHECK(to_string(hyb_translate(phi, s)) == "<lam>(j /\\ { q })");
}

TEST_CASE("hybrid: satisfaction condition on random triples") {
  Rng rng(21);
  for (int n = 0; n < 300; ++n) {
    auto target = hktest::hybrid_signature<PL>(rng, Gen<PL>::signature(rng));
    auto phi = hktest::hybrid_morphism_into<PL>(rng, target);
    auto k = hktest::kripke<PL>(rng, target, hktest::uniform(rng, 1, 4));
    auto s = hktest::hybrid_sentence<PL>(rng, phi.source(), 3);
    auto reduct = hyb_reduct(phi, k);
    auto t = hyb_translate(phi, s);
    for (const auto& w : k.worlds) CHECK(hyb_sat_local(reduct, w, s) == hyb_sat_local(k, w, t));
  }
}

TEST_CASE("hybrid: enumeration sizes") {
  HybridSignature<PL> sig(pl::Signature({"p"}), {"i"}, {{"m", 1}});
  std::vector<pl::Formula> pool{pl::Formula::atom("p")};
  CHECK(enumerate_hybrid(sig, pool, 0).size() == 2);
  // Atoms 2; not 2; or, and, implies 3 * 4; @ 2; box and diamond 2 * 2.
  CHECK(enumerate_hybrid(sig, pool, 1).size() == 2 + 2 + 12 + 2 + 4);
  HybridSignature<PL> tri(pl::Signature({"p"}), {}, {{"t", 2}});
  // Atoms 1; not 1; binary 3; box and diamond 2 * 1^2.
  CHECK(enumerate_hybrid(tri, pool, 1).size() == 1 + 1 + 3 + 2);
  CHECK_THROWS_AS(enumerate_hybrid(sig, pool, -1), ValidationError);
}

TEST_CASE("hybrid: positive existential fragment") {
  auto frag = FragmentSpec<pl::Formula>::atoms();
  CHECK(is_positive_existential(parse("<lam>({ p } /\\ i) \\/ @j <tri>({ q }, i)"), frag));
  CHECK_FALSE(is_positive_existential(parse("[lam]({ p })"), frag));
  CHECK_FALSE(is_positive_existential(parse("!{ p }"), frag));
  CHECK_FALSE(is_positive_existential(parse("{ p } => { q }"), frag));
  CHECK_FALSE(is_positive_existential(parse("{ p /\\ q }"), frag));
}
