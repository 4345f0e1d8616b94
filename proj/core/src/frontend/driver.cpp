#include "hybridkit/frontend/driver.hpp"

#include <ostream>

#include <json.hpp>

#include "hybridkit/equiv.hpp"
#include "hybridkit/frontend/parser.hpp"
#include "hybridkit/frontend/printer.hpp"
#include "hybridkit/frontend/resolve.hpp"
#include "hybridkit/mvl.hpp"

namespace hybridkit::frontend {

namespace {

using nlohmann::json;

json error_json(const SourcePos& pos, const std::string& message) {
  json e = {{"message", message}, {"line", nullptr}, {"column", nullptr}};
  if (pos.known()) {
    e["line"] = pos.line;
    e["column"] = pos.column;
  }
  return e;
}

std::string diagnostic(const std::string& file, const SourcePos& pos, const std::string& message,
                       const std::vector<std::string>& expected) {
  std::string out = file + ":";
  if (pos.known()) out += pos.str() + ":";
  out += " error: " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

json conditions_json(const ConditionReport& report) {
  json out = json::array();
  for (const auto& c : report.conditions) {
    json vs = json::array();
    for (const auto& v : c.violations) {
      vs.push_back({{"left", v.left}, {"right", v.right}, {"subject", v.subject}, {"detail", v.detail}});
    }
    out.push_back({{"clause", c.clause}, {"description", c.description}, {"holds", c.holds}, {"violations", vs}});
  }
  return out;
}

json harness_json(const HarnessReport& r) {
  json vs = json::array();
  for (const auto& v : r.violations) {
    vs.push_back({{"left", v.left}, {"right", v.right}, {"sentence", v.sentence}, {"detail", v.detail}});
  }
  return {{"property", r.property},   {"depth", r.depth},   {"classes", r.classes},
          {"passed", r.passed()},     {"violation_count", r.violation_count}, {"violations", vs}};
}

template <BaseInstitution L>
json relation_json(const std::optional<std::string>& name, const std::string& left, const std::string& right,
                   const WorldRelation<L>& r) {
  json pairs = json::array();
  for (const auto& [a, b] : r.pairs) pairs.push_back({a, b});
  json out = {{"name", nullptr}, {"left", left}, {"right", right}, {"pairs", pairs}};
  if (name) out["name"] = *name;
  return out;
}

template <BaseInstitution L>
class Runner {
 public:
  Runner(const CheckOptions& options, const Document<L>& doc, const Workspace<L>& ws)
      : options_(options), doc_(doc), ws_(ws) {}

  json run(const Command<L>& c) {
    json out = {{"command", print_command(c)}, {"verdict", nullptr}};
    switch (c.kind) {
      case CommandKind::Sat: sat(c, out); break;
      case CommandKind::CheckBisim: check(c, RelationKind::Bisimulation, out); break;
      case CommandKind::CheckRefine: check(c, RelationKind::Refinement, out); break;
      case CommandKind::FindBisim: find(c, RelationKind::Bisimulation, out); break;
      case CommandKind::FindRefine: find(c, RelationKind::Refinement, out); break;
      case CommandKind::Translate: translate(c, out); break;
      case CommandKind::Reduct: reduct(c, out); break;
      case CommandKind::Verify: verify(c, out); break;
      case CommandKind::Validate: validate(out); break;
    }
    return out;
  }

 private:
  void sat(const Command<L>& c, json& out) {
    const auto& k = ws_.model(c.subject);
    auto s = ws_.sentence(*c.sentence, k.signature);
    out["model"] = c.subject.text;
    out["sentence"] = to_string(s);
    if (c.world) {
      if (!k.has_world(c.world->text)) {
        throw ParseError(c.world->pos, "unknown world '" + c.world->text + "' in model " + c.subject.text);
      }
      out["world"] = c.world->text;
      out["verdict"] = hyb_sat_local(k, c.world->text, s);
    } else {
      out["world"] = nullptr;
      out["verdict"] = hyb_sat_global(k, s);
    }
  }

  void check(const Command<L>& c, RelationKind kind, json& out) {
    const auto& r = ws_.relation(c.subject);
    auto report = check_relation(r, kind);
    out["verdict"] = report.passed();
    out["conditions"] = conditions_json(report);
    out["nonempty"] = report.nonempty;
    out["relation"] = relation_json(c.subject.text, left_name(c.subject), right_name(c.subject), r);
  }

  void find(const Command<L>& c, RelationKind kind, json& out) {
    const auto& left = ws_.model(c.subject);
    const auto& right = ws_.model(c.object);
    auto phi = ws_.morphism_or_identity(c.via, left.signature);
    SourcePos where = c.via ? c.via->pos : c.object.pos;
    if (!(phi.source() == left.signature)) {
      throw ParseError(where, "morphism does not start at the signature of " + c.subject.text);
    }
    if (!(phi.target() == right.signature)) {
      throw ParseError(where, "morphism does not end at the signature of " + c.object.text);
    }
    auto frag = ws_.fragment(c.fragment, left.signature.base);
    FixpointOptions fo;
    fo.trace = options_.trace;
    auto result = kind == RelationKind::Bisimulation ? largest_bisim(left, right, phi, frag, fo)
                                                     : largest_simulation(left, right, phi, frag, fo);
    out["verdict"] = result.found();
    out["relation"] = result.found() ? relation_json(std::nullopt, c.subject.text, c.object.text, *result.relation)
                                     : json(nullptr);
    out["reason"] = result.reason.empty() ? json(nullptr) : json(result.reason);
    if (options_.trace) out["trace"] = result.trace;
  }

  void translate(const Command<L>& c, json& out) {
    if (c.subject.text == kIdentityMorphism) {
      throw ParseError(c.subject.pos, "translate needs a declared morphism");
    }
    const auto& phi = ws_.morphism(c.subject);
    auto s = ws_.sentence(*c.sentence, phi.source());
    out["sentence"] = to_string(s);
    out["translation"] = to_string(hyb_translate(phi, s));
    out["verdict"] = true;
  }

  void reduct(const Command<L>& c, json& out) {
    const auto& k = ws_.model(c.object);
    auto phi = ws_.morphism_or_identity(c.subject, k.signature);
    if (!(phi.target() == k.signature)) {
      throw ParseError(c.object.pos, "model " + c.object.text + " is not over the target signature of " + c.subject.text);
    }
    std::string sig = c.subject.text == kIdentityMorphism ? ws_.signature_of.at(c.object.text)
                                                          : ws_.signature_of.at(c.subject.text);
    std::string name = c.object.text + "_reduct";
    out["model"] = print_model(name, sig, hyb_reduct(phi, k));
    out["verdict"] = true;
  }

  void verify(const Command<L>& c, json& out) {
    const auto& r = ws_.relation(c.subject);
    const int depth = c.depth.value_or(options_.depth);
    if (depth < 0 || depth > 8) throw ParseError(c.pos, "verify depth must be between 0 and 8");
    auto pool = c.pool ? ws_.base_sentences(*c.pool, r.left.signature.base)
                       : default_pool<L>(r.left.signature.base, r.fragment);
    RelationKind kind;
    ConditionReport report;
    if (c.mode) {
      kind = c.mode->text == "bisim" ? RelationKind::Bisimulation : RelationKind::Refinement;
      report = check_relation(r, kind);
    } else {
      report = check_bisim(r);
      kind = RelationKind::Bisimulation;
      if (!report.passed()) {
        auto refinement = check_refinement(r);
        if (refinement.passed()) {
          kind = RelationKind::Refinement;
          report = std::move(refinement);
        }
      }
    }
    out["mode"] = kind == RelationKind::Bisimulation ? "bisim" : "refine";
    out["depth"] = depth;
    out["conditions"] = conditions_json(report);
    out["nonempty"] = report.nonempty;
    out["relation"] = relation_json(c.subject.text, left_name(c.subject), right_name(c.subject), r);
    bool ok = report.passed();
    if (kind == RelationKind::Bisimulation) {
      auto local = verify_invariance(r, pool, depth);
      out["local"] = harness_json(local);
      out["classes"] = local.classes;
      ok = ok && local.passed();
      auto [lg, rg] = uncovered_worlds(r);
      if (lg.empty() && rg.empty()) {
        auto global = verify_global_invariance(r, pool, depth);
        out["global"] = harness_json(global);
        ok = ok && global.passed();
      } else {
        out["global"] = nullptr;
      }
      out["counterexamples"] = json::array();
    } else {
      auto p = verify_refinement_preservation(r, pool, depth);
      out["local"] = harness_json(p.local);
      out["classes"] = p.local.classes;
      out["global"] = p.global ? harness_json(*p.global) : json(nullptr);
      json ce = json::array();
      for (const auto& v : p.counterexamples) {
        ce.push_back({{"left", v.left}, {"right", v.right}, {"sentence", v.sentence}, {"detail", v.detail}});
      }
      out["counterexamples"] = ce;
      ok = ok && p.passed();
    }
    if (!report.passed()) {
      out["reason"] = std::string("relation is not a ") +
                      (kind == RelationKind::Bisimulation ? "bisimulation" : "refinement");
    }
    out["verdict"] = ok;
  }

  void validate(json& out) {
    out["models"] = ws_.models.size();
    if constexpr (std::is_same_v<L, mvl::Logic>) {
      const auto& lattice = *ws_.context.lattice;
      auto report = mvl::lattice_validate(lattice);
      out["lattice"] = {{"name", lattice.name()},
                        {"elements", lattice.elements()},
                        {"valid", report.valid()},
                        {"violations", report.violations}};
      out["verdict"] = report.valid();
    } else {
      out["verdict"] = true;
    }
  }

  std::string left_name(const Ident& relation) const { return decl(relation).left.text; }
  std::string right_name(const Ident& relation) const { return decl(relation).right.text; }
  const RelationDecl<L>& decl(const Ident& relation) const {
    for (const auto& d : doc_.relations) {
      if (d.name.text == relation.text) return d;
    }
    throw ParseError(relation.pos, "unknown relation '" + relation.text + "'");
  }

  const CheckOptions& options_;
  const Document<L>& doc_;
  const Workspace<L>& ws_;
};

void render_text(const json& r, std::ostream& out) {
  std::string verdict = r.contains("error") ? "ERROR" : r["verdict"].get<bool>() ? "PASS" : "FAIL";
  out << r["command"].get<std::string>() << "  =>  " << verdict << "\n";
  if (r.contains("error")) {
    out << "  " << r["error"]["message"].get<std::string>() << "\n";
    return;
  }
  auto line = [&out](const std::string& s) { out << "  " << s << "\n"; };
  if (r.contains("translation")) line("translation: " + r["translation"].get<std::string>());
  if (r.contains("mode")) line("mode: " + r["mode"].get<std::string>() + ", depth " + std::to_string(r["depth"].get<int>()));
  if (r.contains("conditions")) {
    for (const auto& c : r["conditions"]) {
      line("(" + c["clause"].get<std::string>() + ") " + c["description"].get<std::string>() + ": " +
           (c["holds"].get<bool>() ? "holds" : "fails"));
      for (const auto& v : c["violations"]) {
        line("    (" + v["left"].get<std::string>() + ", " + v["right"].get<std::string>() + ") " +
             v["subject"].get<std::string>() + ": " + v["detail"].get<std::string>());
      }
    }
    if (!r["nonempty"].get<bool>()) line("relation is empty");
  }
  if (r.contains("relation") && !r["relation"].is_null()) {
    std::string pairs;
    for (const auto& p : r["relation"]["pairs"]) {
      if (!pairs.empty()) pairs += ", ";
      pairs += "(" + p[0].get<std::string>() + ", " + p[1].get<std::string>() + ")";
    }
    line("relation: {" + pairs + "}");
  }
  for (const char* key : {"local", "global"}) {
    if (!r.contains(key) || r[key].is_null()) continue;
    const auto& h = r[key];
    line(h["property"].get<std::string>() + ": " + (h["passed"].get<bool>() ? "holds" : "fails") + " (" +
         std::to_string(h["classes"].get<std::size_t>()) + " classes)");
    for (const auto& v : h["violations"]) {
      line("    (" + v["left"].get<std::string>() + ", " + v["right"].get<std::string>() + ") " +
           v["sentence"].get<std::string>() + ": " + v["detail"].get<std::string>());
    }
  }
  if (r.contains("counterexamples")) {
    for (const auto& v : r["counterexamples"]) {
      line("not preserved at (" + v["left"].get<std::string>() + ", " + v["right"].get<std::string>() +
           "): " + v["sentence"].get<std::string>());
    }
  }
  if (r.contains("reason") && !r["reason"].is_null()) line("reason: " + r["reason"].get<std::string>());
  if (r.contains("trace")) {
    for (const auto& t : r["trace"]) line("trace: " + t.get<std::string>());
  }
  if (r.contains("lattice")) {
    for (const auto& v : r["lattice"]["violations"]) line(v.get<std::string>());
  }
  if (r.contains("model") && r["model"].get<std::string>().find('\n') != std::string::npos) {
    out << r["model"].get<std::string>();
  }
}

template <BaseInstitution L>
int run_document(const CheckOptions& options, Document<L>& doc, std::ostream& out,
                 std::ostream& err) {
  if (options.commands) doc.commands = parse_commands<L>(*options.commands, doc);
  const Workspace<L> ws = resolve(doc);
  Runner<L> runner(options, doc, ws);
  int code = kExitPass;
  for (const auto& c : doc.commands) {
    json result;
    try {
      result = runner.run(c);
    } catch (const ParseError& e) {
      result = {{"command", print_command(c)}, {"verdict", nullptr}, {"error", error_json(e.pos(), e.message())}};
      err << diagnostic(options.filename, e.pos(), e.message(), e.expected()) << "\n";
    } catch (const Error& e) {
      result = {{"command", print_command(c)}, {"verdict", nullptr}, {"error", error_json(c.pos, e.what())}};
      err << diagnostic(options.filename, c.pos, e.what(), {}) << "\n";
    }
    if (result.contains("error")) {
      code = kExitInputError;
    } else if (!result["verdict"].get<bool>() && code == kExitPass) {
      code = kExitFail;
    }
    if (options.json) {
      out << result.dump(-1, ' ', false, json::error_handler_t::replace) << "\n";
    } else {
      render_text(result, out);
    }
  }
  return code;
}

int report_input_error(const CheckOptions& options, const SourcePos& pos, const std::string& message,
                       const std::vector<std::string>& expected, std::ostream& out, std::ostream& err) {
  err << diagnostic(options.filename, pos, message, expected) << "\n";
  if (options.json) {
    json j{{"command", nullptr}, {"verdict", nullptr}, {"error", error_json(pos, message)}};
    out << j.dump(-1, ' ', false, json::error_handler_t::replace) << "\n";
  }
  return kExitInputError;
}

}  // namespace

int run_check(const CheckOptions& options, std::string_view text, std::ostream& out, std::ostream& err) {
  try {
    SpecFile spec = parse_spec(text, ParseOptions::from_environment(options.base_dir));
    return std::visit([&](auto& doc) { return run_document(options, doc, out, err); }, spec);
  } catch (const ParseError& e) {
    return report_input_error(options, e.pos(), e.message(), e.expected(), out, err);
  } catch (const std::exception& e) {
    return report_input_error(options, {}, e.what(), {}, out, err);
  }
}

int run_format(const CheckOptions& options, std::string_view text, std::ostream& out, std::ostream& err) {
  try {
    SpecFile spec = parse_spec(text, ParseOptions::from_environment(options.base_dir));
    std::visit([](const auto& doc) { (void)resolve(doc); }, spec);
    out << print_spec(spec);
    return kExitPass;
  } catch (const ParseError& e) {
    err << diagnostic(options.filename, e.pos(), e.message(), e.expected()) << "\n";
  } catch (const std::exception& e) {
    err << diagnostic(options.filename, {}, e.what(), {}) << "\n";
  }
  return kExitInputError;
}

}  // namespace hybridkit::frontend
