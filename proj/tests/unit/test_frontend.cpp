#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "hybridkit/frontend/driver.hpp"
#include "hybridkit/frontend/parser.hpp"
#include "hybridkit/frontend/printer.hpp"
#include "hybridkit/frontend/resolve.hpp"

using namespace hybridkit;
using namespace hybridkit::frontend;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = HYBRIDKIT_FIXTURES;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run check(std::string_view text, bool json = true, std::optional<std::string> commands = std::nullopt,
          fs::path base_dir = kFixtures) {
  CheckOptions o;
  o.filename = "t.hyb";
  o.base_dir = std::move(base_dir);
  o.json = json;
  o.commands = std::move(commands);
  std::ostringstream out, err;
  int code = run_check(o, text, out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> results(const Run& r) {
  std::vector<nlohmann::json> out;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  }
  return out;
}

SourcePos error_pos(std::string_view text) {
  try {
    auto spec = parse_spec(text);
    std::visit([](const auto& doc) { resolve(doc); }, spec);
  } catch (const ParseError& e) {
    return e.pos();
  }
  FAIL("no error raised");
  return {};
}

const char* kSmall = R"(logic pl;
signature S { props p; modalities lam/1; }
model M : S {
  worlds a, b;
  relation lam = (a, b);
  world a { p = 1; }
  world b { p = 0; }
}
)";

}  // namespace

TEST_CASE("frontend: every fixture round-trips through the printer") {
  ParseOptions options;
  options.base_dir = kFixtures;
  for (const auto& entry : fs::directory_iterator(kFixtures)) {
    if (entry.path().extension() != ".hyb") continue;
    CAPTURE(entry.path().filename().string());
    auto spec = parse_spec(slurp(entry.path()), options);
    auto printed = print_spec(spec);
    auto again = parse_spec(printed, options);
    CHECK(again == spec);
    CHECK(print_spec(again) == printed);
  }
}

TEST_CASE("frontend: syntax errors carry positions") {
  auto pos = error_pos("logic pl;\n$signature S { }");
  CHECK(pos.line == 2);
  CHECK(pos.column == 1);
  pos = error_pos("logic pl;\nsignature S { props p }\n");
  CHECK(pos.line == 2);
  pos = error_pos("logic quux;");
  CHECK(pos.column == 7);
  try {
    parse_spec("logic pl;\nsignature S { props p; }\nmodel M : S { worlds w world w { p = 1; } }");
    FAIL("accepted");
  } catch (const ParseError& e) {
    CHECK(e.pos().line == 3);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse_spec("logic mvl chain(1);"), ParseError);
  CHECK_THROWS_AS(parse_spec("logic mvl chain(65);"), ParseError);
}

TEST_CASE("frontend: name resolution errors point at the name") {
  auto pos = error_pos(std::string(kSmall) + "model N : T { }\n");
  CHECK(pos.line == 9);
  CHECK(pos.column == 11);
  pos = error_pos(std::string(kSmall) + "signature M { props q; }\n");
  CHECK(pos.known());
  pos = error_pos(std::string(kSmall) + "relation R { left M; right M; pairs (a, z); }\n");
  CHECK(pos.line == 9);
  pos = error_pos(std::string(kSmall) + "morphism id : S -> S { }\n");
  CHECK(pos.line == 9);
  // Missing local model, wrong tuple size, unknown proposition.
  CHECK(error_pos("signature S { props p; }\nmodel M : S { worlds a; }").line == 2);
  CHECK(error_pos("signature S { props p; modalities m/1; }\nmodel M : S { worlds a; relation m = (a);\n"
                  "world a { p = 1; } }")
            .line == 2);
  CHECK(error_pos("signature S { props p; }\nmodel M : S { worlds a;\nworld a { q = 1; } }").line == 3);
}

TEST_CASE("frontend: missing header means propositional") {
  auto spec = parse_spec("signature S { props p; }");
  REQUIRE(std::holds_alternative<Document<pl::Logic>>(spec));
  CHECK_FALSE(std::get<Document<pl::Logic>>(spec).has_header);
  CHECK(print_spec(spec) == "signature S {\n  props p;\n}\n");
}

TEST_CASE("frontend: driver verdicts and exit codes") {
  auto r = check(std::string(kSmall) + "sat M @ a : <lam>({ !p });\nsat M : { p };\n");
  CHECK(r.code == kExitFail);
  auto js = results(r);
  REQUIRE(js.size() == 2);
  CHECK(js[0]["verdict"] == true);
  CHECK(js[0]["world"] == "a");
  CHECK(js[1]["verdict"] == false);

  r = check(std::string(kSmall) + "sat M @ a : { p };\n");
  CHECK(r.code == kExitPass);

  r = check(std::string(kSmall) + "sat M @ a : <mu>({ p });\n");
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("t.hyb:9:") != std::string::npos);

  r = check(std::string(kSmall) + "sat M : { p };\n", true, "sat M @ a : { p };");
  CHECK(r.code == kExitPass);
  CHECK(results(r).size() == 1);

  r = check(std::string(kSmall), false, "sat M @ b : { p };");
  CHECK(r.code == kExitFail);
  CHECK(r.out.find("FAIL") != std::string::npos);

  r = check(std::string(kSmall) + "sat M @ c : { p };\n");
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("t.hyb:9:") != std::string::npos);

  r = check("logic pl;\nsignature S {");
  CHECK(r.code == kExitInputError);
  auto err = results(r);
  REQUIRE(err.size() == 1);
  CHECK(err[0]["error"]["line"] == 2);
  CHECK(err[0]["verdict"].is_null());
}

TEST_CASE("frontend: fixtures through the driver") {
  struct Expect {
    const char* file;
    int code;
  };
  for (auto [file, code] : {Expect{"pl_basics.hyb", 0}, Expect{"nominals.hyb", 1}, Expect{"refinement_box.hyb", 0},
                            Expect{"store.hyb", 0}, Expect{"mvl_refinement.hyb", 0},
                            Expect{"lattice_inline.hyb", 0}, Expect{"lattice_erratum.hyb", 1}}) {
    CAPTURE(file);
    auto r = check(slurp(kFixtures / file));
    CHECK(r.code == code);
    CHECK(r.err.empty());
  }

  auto js = results(check(slurp(kFixtures / "store.hyb")));
  bool found_refine = false;
  for (const auto& j : js) {
    if (j["command"].get<std::string>().rfind("find-refine", 0) != 0) continue;
    found_refine = true;
    auto pairs = j["relation"]["pairs"];
    CHECK(pairs.size() == 2);
  }
  CHECK(found_refine);

  js = results(check(slurp(kFixtures / "lattice_erratum.hyb")));
  REQUIRE(js.size() == 1);
  CHECK(js[0]["lattice"]["valid"] == false);
  CHECK_FALSE(js[0]["lattice"]["violations"].empty());
}

TEST_CASE("frontend: lattice files are found through the search path") {
  const std::string text = "logic mvl \"erratum.lat\";\nvalidate;\n";
  auto r = check(text, true, std::nullopt, fs::temp_directory_path());
  CHECK(r.code == kExitInputError);

  ::setenv("HYBRIDKIT_LATTICE_PATH", ("/nonexistent:" + kFixtures.string()).c_str(), 1);
  auto options = ParseOptions::from_environment(fs::temp_directory_path());
  ::unsetenv("HYBRIDKIT_LATTICE_PATH");
  REQUIRE(options.lattice_path.size() == 2);
  auto spec = parse_spec(text, options);
  const auto& doc = std::get<Document<mvl::Logic>>(spec);
  REQUIRE(doc.resolved_lattice);
  CHECK(doc.resolved_lattice->size() == 4);
  CHECK_FALSE(mvl::lattice_validate(*doc.resolved_lattice).valid());
}

TEST_CASE("frontend: lattice bodies") {
  auto body = parse_lattice_body("elements lo, hi; order lo < hi; tensor lo * hi = lo, hi * hi = hi, lo * lo = lo;");
  auto l = build_lattice(body, "two");
  CHECK(l.size() == 2);
  CHECK(l.tensor(1, 0) == 0);
  CHECK(l.residuum(1, 0) == 0);
  CHECK(mvl::lattice_validate(l).valid());
  CHECK(print_lattice_body(body) ==
        "elements lo, hi;\norder lo < hi;\ntensor lo * hi = lo, hi * hi = hi, lo * lo = lo;\n");
  CHECK_THROWS_AS(build_lattice(parse_lattice_body("elements a; tensor a * b = a;"), "x"), ParseError);
  CHECK_THROWS_AS(build_lattice(parse_lattice_body("elements a, b; tensor a * b = a, a * b = b;"), "x"),
                  ParseError);
}

TEST_CASE("frontend: format output is stable") {
  CheckOptions o;
  o.base_dir = kFixtures;
  std::ostringstream out, err;
  CHECK(run_format(o, slurp(kFixtures / "pl_basics.hyb"), out, err) == kExitPass);
  std::ostringstream out2, err2;
  CHECK(run_format(o, out.str(), out2, err2) == kExitPass);
  CHECK(out.str() == out2.str());
  std::ostringstream out3, err3;
  CHECK(run_format(o, "signature {", out3, err3) == kExitInputError);
  CHECK_FALSE(err3.str().empty());
}
