#include <doctest.h>

#include "generators.hpp"

using namespace hybridkit;
using hktest::Gen;
using hktest::Rng;

namespace {

eq::Signature arithmetic() {
  return eq::Signature({"n"}, {{"add", {"n", "n"}, "n"}, {"zero", {}, "n"}, {"succ", {"n"}, "n"}});
}

// Integers mod 3 with add, zero and successor.
eq::FiniteAlgebra mod3() {
  std::vector<eq::FiniteAlgebra::Entry> entries;
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      entries.push_back({"add", {std::to_string(x), std::to_string(y)}, std::to_string((x + y) % 3)});
    }
    entries.push_back({"succ", {std::to_string(x)}, std::to_string((x + 1) % 3)});
  }
  entries.push_back({"zero", {}, "0"});
  return eq::FiniteAlgebra::from_entries(arithmetic(), {{"n", {"0", "1", "2"}}}, entries);
}

// Index-level term evaluation with variables bound by position.
int eval(const eq::FiniteAlgebra& a, const eq::Term& t, const std::vector<eq::Variable>& vars,
         const std::vector<int>& env) {
  if (t.is_variable()) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (vars[i].name == t.name()) return env[i];
    }
  }
  std::vector<int> args;
  for (const auto& s : t.args()) args.push_back(eval(a, s, vars, env));
  return a.apply(*a.signature().op_index(t.name()), args);
}

// An equation holds iff both sides agree under every environment.
bool oracle(const eq::FiniteAlgebra& a, const eq::Equation& e) {
  std::vector<int> env(e.vars.size(), 0);
  std::vector<std::size_t> sizes;
  for (const auto& v : e.vars) sizes.push_back(a.carrier(*a.signature().sort_index(v.sort)).size());
  for (;;) {
    if (eval(a, e.lhs, e.vars, env) != eval(a, e.rhs, e.vars, env)) return false;
    std::size_t i = 0;
    while (i < env.size() && static_cast<std::size_t>(++env[i]) == sizes[i]) env[i++] = 0;
    if (i == env.size()) return true;
  }
}

}  // namespace

TEST_CASE("eq: parsing and printing") {
  auto e = eq::parse_equation("forall x:n, y:n . add(x, y) = add(y, x)");
  CHECK(e.vars.size() == 2);
  CHECK(e.lhs.name() == "add");
  CHECK(e.lhs.args()[0].is_variable());
  CHECK(eq::to_string(e) == "forall x:n, y:n . add(x, y) = add(y, x)");
  auto g = eq::parse_equation("succ(zero) = zero");
  CHECK(g.vars.empty());
  CHECK_FALSE(g.lhs.args()[0].is_variable());
  CHECK(eq::to_string(g) == "succ(zero) = zero");
  CHECK_THROWS_AS(eq::parse_equation("forall x n . x = x"), ParseError);
  CHECK_THROWS_AS(eq::parse_equation("f(x"), ParseError);
}

TEST_CASE("eq: satisfaction in Z/3") {
  auto a = mod3();
  CHECK(eq::satisfies(a, eq::parse_equation("forall x:n, y:n . add(x, y) = add(y, x)")));
  CHECK(eq::satisfies(a, eq::parse_equation("forall x:n . add(x, zero) = x")));
  CHECK(eq::satisfies(a, eq::parse_equation("succ(succ(succ(zero))) = zero")));
  CHECK_FALSE(eq::satisfies(a, eq::parse_equation("forall x:n . add(x, x) = zero")));
  CHECK_FALSE(eq::satisfies(a, eq::parse_equation("succ(zero) = zero")));
  // Quantified variables need not occur.
  CHECK(eq::satisfies(a, eq::parse_equation("forall x:n . zero = zero")));
  CHECK(eq::eval_term(a, {{"x", "2"}}, eq::Term::apply("succ", {eq::Term::variable("x", "n")})) == "0");
}

TEST_CASE("eq: well-sortedness and algebra construction") {
  eq::Signature sig({"a", "b"}, {{"f", {"a"}, "b"}, {"c", {}, "a"}});
  CHECK_NOTHROW(eq::check_equation(sig, eq::parse_equation("forall x:a . f(x) = f(c)")));
  CHECK_THROWS_AS(eq::check_equation(sig, eq::parse_equation("forall x:a . f(x) = x")), ValidationError);
  CHECK_THROWS_AS(eq::check_equation(sig, eq::parse_equation("g(c) = c")), ValidationError);
  CHECK_THROWS_AS(eq::check_equation(sig, eq::parse_equation("forall x:z . c = c")), ValidationError);
  CHECK_THROWS_AS(eq::check_equation(sig, eq::parse_equation("f(c, c) = f(c)")), ValidationError);
  CHECK_THROWS_AS(eq::Signature({"a", "a"}, {}), ValidationError);
  CHECK_THROWS_AS(eq::Signature({"a"}, {{"f", {"z"}, "a"}}), ValidationError);

  std::map<std::string, std::vector<std::string>> carriers{{"a", {"u"}}, {"b", {"v", "w"}}};
  CHECK_THROWS_WITH_AS(eq::FiniteAlgebra::from_entries(sig, carriers, {{"c", {}, "u"}}),
                       doctest::Contains("missing table entry for f(u)"), ValidationError);
  CHECK_THROWS_AS(eq::FiniteAlgebra::from_entries(sig, carriers, {{"c", {}, "v"}, {"f", {"u"}, "v"}}),
                  ValidationError);
  CHECK_THROWS_AS(eq::FiniteAlgebra::from_entries(sig, {{"a", {"u"}}}, {}), ValidationError);
  auto alg = eq::FiniteAlgebra::from_entries(sig, carriers, {{"c", {}, "u"}, {"f", {"u"}, "w"}});
  CHECK(eq::satisfies(alg, eq::parse_equation("forall x:a . f(x) = f(c)")));
}

TEST_CASE("eq: satisfaction agrees with exhaustive environments") {
  Rng rng(5);
  for (int n = 0; n < 400; ++n) {
    auto sig = Gen<eq::Logic>::signature(rng);
    auto a = Gen<eq::Logic>::model(rng, sig);
    auto e = Gen<eq::Logic>::sentence(rng, sig, 3);
    REQUIRE_NOTHROW(eq::check_equation(sig, e));
    CHECK(eq::satisfies(a, e) == oracle(a, e));
    CHECK(eq::parse_equation(eq::to_string(e)) == e);
  }
}

TEST_CASE("eq: translation, reduct and the satisfaction condition") {
  eq::Signature src({"s"}, {{"g", {"s"}, "s"}});
  auto tgt = arithmetic();
  eq::Morphism phi(src, tgt, {{"s", "n"}}, {{"g", "succ"}});
  auto e = eq::parse_equation("forall x:s . g(g(g(x))) = x");
  CHECK(eq::to_string(eq::translate(phi, e)) == "forall x:n . succ(succ(succ(x))) = x");
  auto r = eq::reduct(phi, mod3());
  CHECK(r.carrier(0).size() == 3);
  CHECK(eq::satisfies(r, e));
  CHECK_THROWS_AS(eq::Morphism(src, tgt, {{"s", "n"}}, {{"g", "add"}}), ValidationError);
  CHECK_THROWS_AS(eq::Morphism(src, tgt, {{"s", "n"}}, {}), ValidationError);

  Rng rng(6);
  for (int n = 0; n < 400; ++n) {
    auto target = Gen<eq::Logic>::signature(rng);
    auto m = Gen<eq::Logic>::morphism_into(rng, target);
    auto alg = Gen<eq::Logic>::model(rng, target);
    auto s = Gen<eq::Logic>::sentence(rng, m.source(), 3);
    CHECK(check_satisfaction_condition<eq::Logic>(m, alg, s));
  }
}

TEST_CASE("eq: equation enumeration") {
  // One sort, a constant c and a unary f: depth-1 terms x, c, f(x) give 9
  // equations with one variable.
  eq::Signature sig({"s"}, {{"c", {}, "s"}, {"f", {"s"}, "s"}});
  auto all = eq::enumerate_equations(sig, 1, 1);
  CHECK(all.size() == 9);
  for (const auto& e : all) CHECK_NOTHROW(eq::check_equation(sig, e));
  // Depth 2 adds f(c) and f(f(x)): 5 terms.
  CHECK(eq::enumerate_equations(sig, 2, 1).size() == 25);
  CHECK(eq::enumerate_equations(sig, 0, 2).size() == 4);
}
