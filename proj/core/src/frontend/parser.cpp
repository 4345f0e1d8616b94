#include "hybridkit/frontend/parser.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace hybridkit::frontend {

std::string_view to_string(CommandKind kind) {
  switch (kind) {
    case CommandKind::Sat: return "sat";
    case CommandKind::CheckBisim: return "check-bisim";
    case CommandKind::FindBisim: return "find-bisim";
    case CommandKind::CheckRefine: return "check-refine";
    case CommandKind::FindRefine: return "find-refine";
    case CommandKind::Translate: return "translate";
    case CommandKind::Reduct: return "reduct";
    case CommandKind::Verify: return "verify";
    case CommandKind::Validate: return "validate";
  }
  return "?";
}

ParseOptions ParseOptions::from_environment(std::filesystem::path base_dir) {
  ParseOptions options;
  options.base_dir = std::move(base_dir);
  if (const char* env = std::getenv(kLatticePathVariable)) {
    std::stringstream in(env);
    std::string dir;
    while (std::getline(in, dir, ':')) {
      if (!dir.empty()) options.lattice_path.emplace_back(dir);
    }
  }
  return options;
}

namespace {

Ident ident(Lexer& lx, std::string_view what) {
  Token t = lx.expect_identifier(what);
  return {t.text, t.pos};
}

Ident label(Lexer& lx, std::string_view what) {
  Token t = lx.expect_label(what);
  return {t.text, t.pos};
}

int number(Lexer& lx, std::string_view what) {
  const Token& t = lx.peek();
  if (t.kind != TokenKind::Number || t.text.find_first_not_of("0123456789") != std::string::npos ||
      t.text.size() > 6) {
    lx.fail(t, "expected " + std::string(what) + ", found " + describe(t), {std::string(what)});
  }
  return std::stoi(lx.next().text);
}

/// Comma-separated list of items read by `item`, at least one.
template <class F>
void comma_list(Lexer& lx, F item) {
  do {
    item();
  } while (lx.accept(","));
}

// Lattices ------------------------------------------------------------------

void lattice_item(Lexer& lx, LatticeBody& body) {
  const Token& t = lx.peek();
  if (lx.accept("elements")) {
    comma_list(lx, [&] { body.elements.push_back(label(lx, "element")); });
  } else if (lx.accept("order")) {
    comma_list(lx, [&] {
      Ident a = label(lx, "element");
      if (!lx.accept("<=")) lx.expect("<");
      body.order.emplace_back(std::move(a), label(lx, "element"));
    });
  } else if (lx.accept("tensor")) {
    comma_list(lx, [&] {
      Ident a = label(lx, "element");
      lx.expect("*");
      Ident b = label(lx, "element");
      lx.expect("=");
      body.tensor.push_back({std::move(a), std::move(b), label(lx, "element")});
    });
  } else if (lx.accept("residuum")) {
    comma_list(lx, [&] {
      Ident a = label(lx, "element");
      lx.expect("->");
      Ident b = label(lx, "element");
      lx.expect("=");
      body.residuum.push_back({std::move(a), std::move(b), label(lx, "element")});
    });
  } else {
    lx.fail(t, "unexpected " + describe(t) + " in lattice", {"'elements'", "'order'", "'tensor'", "'residuum'"});
  }
  lx.expect(";");
}

LatticeSpec parse_lattice_spec(Lexer& lx) {
  LatticeSpec spec;
  const Token& t = lx.peek();
  spec.pos = t.pos;
  if (lx.accept("bool")) {
    spec.source = LatticeSpec::Source::Bool;
  } else if (lx.accept("chain")) {
    spec.source = LatticeSpec::Source::Chain;
    lx.expect("(");
    const Token& n = lx.peek();
    spec.chain = number(lx, "chain size");
    if (spec.chain < 2 || spec.chain > kMaxChainSize) {
      lx.fail(n, "chain size must be between 2 and " + std::to_string(kMaxChainSize));
    }
    lx.expect(")");
  } else if (t.kind == TokenKind::String) {
    spec.source = LatticeSpec::Source::File;
    spec.path = lx.next().text;
  } else if (lx.accept("lattice")) {
    spec.source = LatticeSpec::Source::Inline;
    lx.expect("{");
    while (!lx.accept("}")) lattice_item(lx, spec.body);
  } else {
    lx.fail(t, "expected a lattice, found " + describe(t), {"'bool'", "'chain'", "file name", "'lattice'"});
  }
  return spec;
}

// Shared pieces ----------------------------------------------------------------

std::vector<Ident> tuple(Lexer& lx) {
  std::vector<Ident> out;
  lx.expect("(");
  comma_list(lx, [&] { out.push_back(ident(lx, "world")); });
  lx.expect(")");
  return out;
}

/// `carrier s = {a, b}`, `f(a, b) = c`, `p = v`, separated by ',' or ';'.
LocalBody local_body(Lexer& lx) {
  LocalBody body;
  lx.expect("{");
  while (!lx.accept("}")) {
    if (lx.accept("carrier")) {
      CarrierDecl c{ident(lx, "sort"), {}};
      lx.expect("=");
      lx.expect("{");
      if (!lx.peek().is("}")) comma_list(lx, [&] { c.elements.push_back(label(lx, "element")); });
      lx.expect("}");
      body.carriers.push_back(std::move(c));
    } else {
      Assignment a;
      a.name = ident(lx, "symbol");
      if (lx.accept("(")) {
        a.applied = true;
        if (!lx.peek().is(")")) comma_list(lx, [&] { a.args.push_back(label(lx, "element")); });
        lx.expect(")");
      }
      lx.expect("=");
      a.value = label(lx, "value");
      body.entries.push_back(std::move(a));
    }
    if (!lx.accept(";") && !lx.accept(",") && !lx.peek().is("}")) {
      lx.fail(lx.peek(), "unexpected " + describe(lx.peek()), {"';'", "','", "'}'"});
    }
  }
  return body;
}

template <BaseInstitution L>
class DocumentParser {
 public:
  using Syntax = BaseSyntax<L>;
  using Base = typename L::Sentence;

  DocumentParser(Lexer& lx, typename Syntax::Context ctx) : lx_(lx), ctx_(std::move(ctx)) {}

  void parse(Document<L>& doc) {
    while (!lx_.at_end()) item(doc);
  }

  Command<L> command() {
    Command<L> c;
    const Token& t = lx_.peek();
    c.pos = t.pos;
    if (lx_.accept("sat")) {
      c.kind = CommandKind::Sat;
      c.subject = ident(lx_, "model");
      if (lx_.accept("@")) c.world = ident(lx_, "world");
      lx_.expect(":");
      c.sentence = located_sentence();
    } else if (lx_.accept("check")) {
      lx_.expect("-");
      c.kind = relation_word() ? CommandKind::CheckBisim : CommandKind::CheckRefine;
      c.subject = ident(lx_, "relation");
    } else if (lx_.accept("find")) {
      lx_.expect("-");
      c.kind = relation_word() ? CommandKind::FindBisim : CommandKind::FindRefine;
      c.subject = ident(lx_, "model");
      lx_.expect(",");
      c.object = ident(lx_, "model");
      if (lx_.accept("via")) c.via = ident(lx_, "morphism");
      if (lx_.peek().is("fragment")) c.fragment = fragment();
    } else if (lx_.accept("translate")) {
      c.kind = CommandKind::Translate;
      c.subject = ident(lx_, "morphism");
      lx_.expect(":");
      c.sentence = located_sentence();
    } else if (lx_.accept("reduct")) {
      c.kind = CommandKind::Reduct;
      c.subject = ident(lx_, "morphism");
      c.object = ident(lx_, "model");
    } else if (lx_.accept("verify")) {
      c.kind = CommandKind::Verify;
      c.subject = ident(lx_, "relation");
      if (lx_.accept("as")) {
        const Token& m = lx_.peek();
        c.mode = Ident{m.text, m.pos};
        relation_word();
      }
      if (lx_.accept("depth")) c.depth = number(lx_, "depth");
      if (lx_.accept("pool")) c.pool = base_block();
    } else if (lx_.accept("validate")) {
      c.kind = CommandKind::Validate;
    } else {
      lx_.fail(t, "unexpected " + describe(t),
               {"'signature'", "'local'", "'model'", "'morphism'", "'relation'", "'sentence'", "a command"});
    }
    lx_.expect(";");
    return c;
  }

  bool is_command_start() const {
    for (auto kw : {"sat", "check", "find", "translate", "reduct", "verify", "validate"}) {
      if (lx_.peek().is(kw)) return true;
    }
    return false;
  }

 private:
  void item(Document<L>& doc) {
    if (lx_.accept("signature")) {
      doc.signatures.push_back(signature());
    } else if (lx_.accept("local")) {
      LocalDecl d{ident(lx_, "local model name"), {}, {}};
      lx_.expect(":");
      d.signature = ident(lx_, "signature");
      d.body = local_body(lx_);
      doc.locals.push_back(std::move(d));
    } else if (lx_.accept("model")) {
      doc.models.push_back(model());
    } else if (lx_.accept("morphism")) {
      doc.morphisms.push_back(morphism());
    } else if (lx_.accept("relation")) {
      doc.relations.push_back(relation());
    } else if (lx_.accept("sentence")) {
      Ident name = ident(lx_, "sentence name");
      lx_.expect(":");
      Ident sig = ident(lx_, "signature");
      lx_.expect("=");
      auto s = located_sentence();
      lx_.expect(";");
      doc.sentences.push_back({std::move(name), std::move(sig), std::move(s)});
    } else {
      doc.commands.push_back(command());
    }
  }

  /// true for `bisim`, false for `refine`.
  bool relation_word() {
    const Token& t = lx_.peek();
    if (lx_.accept("bisim")) return true;
    if (lx_.accept("refine")) return false;
    lx_.fail(t, "expected 'bisim' or 'refine', found " + describe(t), {"'bisim'", "'refine'"});
  }

  SignatureDecl signature() {
    SignatureDecl d;
    d.name = ident(lx_, "signature name");
    lx_.expect("{");
    while (!lx_.accept("}")) {
      const Token& t = lx_.peek();
      if (lx_.accept("props")) {
        comma_list(lx_, [&] { d.props.push_back(ident(lx_, "proposition")); });
      } else if (lx_.accept("sorts")) {
        comma_list(lx_, [&] { d.sorts.push_back(ident(lx_, "sort")); });
      } else if (lx_.accept("ops")) {
        comma_list(lx_, [&] {
          OpDecl op;
          op.name = ident(lx_, "operation");
          lx_.expect(":");
          while (!lx_.peek().is("->")) op.args.push_back(ident(lx_, "sort"));
          lx_.expect("->");
          op.result = ident(lx_, "sort");
          d.ops.push_back(std::move(op));
        });
      } else if (lx_.accept("nominals")) {
        comma_list(lx_, [&] { d.nominals.push_back(ident(lx_, "nominal")); });
      } else if (lx_.accept("modalities")) {
        comma_list(lx_, [&] {
          ModalityDecl m{ident(lx_, "modality"), 1};
          lx_.expect("/");
          const Token& n = lx_.peek();
          m.arity = number(lx_, "arity");
          if (m.arity < 1) lx_.fail(n, "modality arity must be at least 1");
          d.modalities.push_back(std::move(m));
        });
      } else {
        lx_.fail(t, "unexpected " + describe(t) + " in signature",
                 {"'props'", "'sorts'", "'ops'", "'nominals'", "'modalities'", "'}'"});
      }
      lx_.expect(";");
    }
    return d;
  }

  ModelDecl model() {
    ModelDecl d;
    d.name = ident(lx_, "model name");
    lx_.expect(":");
    d.signature = ident(lx_, "signature");
    lx_.expect("{");
    while (!lx_.accept("}")) {
      const Token& t = lx_.peek();
      if (lx_.accept("worlds")) {
        comma_list(lx_, [&] { d.worlds.push_back(ident(lx_, "world")); });
        lx_.expect(";");
      } else if (lx_.accept("nominal")) {
        comma_list(lx_, [&] {
          Ident i = ident(lx_, "nominal");
          lx_.expect("=");
          d.nominals.push_back({std::move(i), ident(lx_, "world")});
        });
        lx_.expect(";");
      } else if (lx_.accept("relation")) {
        RelationBinding r{ident(lx_, "modality"), {}};
        lx_.expect("=");
        comma_list(lx_, [&] { r.tuples.push_back(tuple(lx_)); });
        lx_.expect(";");
        d.relations.push_back(std::move(r));
      } else if (lx_.accept("world")) {
        WorldBody w{ident(lx_, "world"), std::nullopt, {}};
        if (lx_.accept("=")) {
          w.local = ident(lx_, "local model");
          lx_.expect(";");
        } else {
          w.body = local_body(lx_);
        }
        d.bodies.push_back(std::move(w));
      } else {
        lx_.fail(t, "unexpected " + describe(t) + " in model",
                 {"'worlds'", "'nominal'", "'relation'", "'world'", "'}'"});
      }
    }
    return d;
  }

  MorphismDecl morphism() {
    MorphismDecl d;
    d.name = ident(lx_, "morphism name");
    lx_.expect(":");
    d.source = ident(lx_, "signature");
    lx_.expect("->");
    d.target = ident(lx_, "signature");
    lx_.expect("{");
    while (!lx_.accept("}")) {
      const Token& t = lx_.peek();
      std::string kind;
      for (auto k : {"prop", "sort", "op", "nominal", "modality"}) {
        if (t.is(k)) kind = k;
      }
      if (kind.empty()) {
        lx_.fail(t, "unexpected " + describe(t) + " in morphism",
                 {"'prop'", "'sort'", "'op'", "'nominal'", "'modality'", "'}'"});
      }
      lx_.next();
      comma_list(lx_, [&] {
        Ident from = ident(lx_, "symbol");
        lx_.expect("->");
        d.maps.push_back({kind, std::move(from), ident(lx_, "symbol")});
      });
      lx_.expect(";");
    }
    return d;
  }

  RelationDecl<L> relation() {
    RelationDecl<L> d;
    d.name = ident(lx_, "relation name");
    lx_.expect("{");
    while (!lx_.accept("}")) {
      const Token& t = lx_.peek();
      if (lx_.accept("left")) {
        d.left = ident(lx_, "model");
      } else if (lx_.accept("right")) {
        d.right = ident(lx_, "model");
      } else if (lx_.accept("morphism")) {
        d.morphism = ident(lx_, "morphism");
      } else if (t.is("fragment")) {
        d.fragment = fragment();
      } else if (lx_.accept("pairs")) {
        comma_list(lx_, [&] {
          lx_.expect("(");
          Ident a = ident(lx_, "world");
          lx_.expect(",");
          Ident b = ident(lx_, "world");
          lx_.expect(")");
          d.pairs.emplace_back(std::move(a), std::move(b));
        });
      } else {
        lx_.fail(t, "unexpected " + describe(t) + " in relation",
                 {"'left'", "'right'", "'morphism'", "'fragment'", "'pairs'", "'}'"});
      }
      lx_.expect(";");
    }
    return d;
  }

  FragmentSyntax<Base> fragment() {
    FragmentSyntax<Base> f;
    f.pos = lx_.expect("fragment").pos;
    const Token& t = lx_.peek();
    if (lx_.accept("atoms")) {
      f.kind = FragmentKind::Atoms;
    } else if (lx_.accept("full") || lx_.accept("negfree")) {
      f.kind = t.is("full") ? FragmentKind::Full : FragmentKind::NegationFree;
      if (lx_.accept("(")) {
        comma_list(lx_, [&] {
          const Token& key = lx_.peek();
          if (lx_.accept("depth")) {
            lx_.expect("=");
            f.depth = number(lx_, "depth");
          } else if (lx_.accept("vars")) {
            lx_.expect("=");
            f.vars = number(lx_, "variable count");
          } else {
            lx_.fail(key, "unexpected " + describe(key), {"'depth'", "'vars'"});
          }
        });
        lx_.expect(")");
      }
    } else if (lx_.accept("explicit")) {
      f.kind = FragmentKind::Explicit;
      f.sentences = base_block();
    } else {
      lx_.fail(t, "unexpected " + describe(t), {"'atoms'", "'full'", "'negfree'", "'explicit'"});
    }
    return f;
  }

  std::vector<Located<Base>> base_block() {
    std::vector<Located<Base>> out;
    lx_.expect("{");
    while (!lx_.accept("}")) {
      SourcePos pos = lx_.peek().pos;
      out.push_back({Syntax::parse(lx_, ctx_), pos});
      if (!lx_.accept(";") && !lx_.peek().is("}")) {
        lx_.fail(lx_.peek(), "unexpected " + describe(lx_.peek()), {"';'", "'}'"});
      }
    }
    return out;
  }

  Located<HybridSentence<L>> located_sentence() {
    SourcePos pos = lx_.peek().pos;
    return {parse_hybrid<L>(lx_, ctx_), pos};
  }

  Lexer& lx_;
  typename Syntax::Context ctx_;
};

template <BaseInstitution L>
class HybridParser {
 public:
  using S = HybridSentence<L>;

  HybridParser(Lexer& lx, const typename BaseSyntax<L>::Context& ctx, const HybridSignature<L>* sig)
      : lx_(lx), ctx_(ctx), sig_(sig) {}

  S implication() {
    Lexer::Nesting guard(lx_);
    S s = disjunction();
    if (lx_.accept("=>")) return S::implication(std::move(s), implication());
    return s;
  }

 private:
  S disjunction() {
    S s = conjunction();
    while (lx_.accept("\\/")) s = S::disjunction(std::move(s), conjunction());
    return s;
  }

  S conjunction() {
    S s = unary();
    while (lx_.accept("/\\")) s = S::conjunction(std::move(s), unary());
    return s;
  }

  S unary() {
    Lexer::Nesting guard(lx_);
    const Token t = lx_.peek();
    if (lx_.accept("!")) return S::negation(unary());
    if (lx_.accept("@")) {
      Token i = lx_.expect_identifier("nominal");
      check_nominal(i);
      return S::at(i.text, unary());
    }
    if (lx_.accept("<") || lx_.accept("[")) {
      const bool box = t.is("[");
      Token lam = lx_.expect_identifier("modality");
      lx_.expect(box ? "]" : ">");
      lx_.expect("(");
      std::vector<S> args;
      comma_list(lx_, [&] { args.push_back(implication()); });
      lx_.expect(")");
      check_modality(lam, args.size());
      return box ? S::box(lam.text, std::move(args)) : S::diamond(lam.text, std::move(args));
    }
    if (lx_.accept("{")) {
      const Token& start = lx_.peek();
      auto b = BaseSyntax<L>::parse(lx_, ctx_);
      if (sig_) {
        try {
          L::check_sentence(sig_->base, b);
        } catch (const ValidationError& e) {
          lx_.fail(start, e.what());
        }
      }
      lx_.expect("}");
      return S::base(std::move(b));
    }
    if (lx_.accept("(")) {
      S s = implication();
      lx_.expect(")");
      return s;
    }
    if (t.kind == TokenKind::Identifier) {
      check_nominal(t);
      return S::nominal(lx_.next().text);
    }
    lx_.fail(t, "unexpected " + describe(t) + " in sentence",
             {"nominal", "'{'", "'!'", "'@'", "'<'", "'['", "'('"});
  }

  void check_nominal(const Token& t) const {
    if (sig_ && !sig_->has_nominal(t.text)) lx_.fail(t, "undeclared nominal '" + t.text + "'");
  }

  void check_modality(const Token& t, std::size_t given) const {
    if (!sig_) return;
    auto arity = sig_->arity(t.text);
    if (!arity) lx_.fail(t, "undeclared modality '" + t.text + "'");
    if (static_cast<std::size_t>(*arity) != given) {
      lx_.fail(t, "modality '" + t.text + "' has arity " + std::to_string(*arity) + " but is given " +
                      std::to_string(given) + " argument(s)");
    }
  }

  Lexer& lx_;
  const typename BaseSyntax<L>::Context& ctx_;
  const HybridSignature<L>* sig_;
};

std::filesystem::path find_lattice_file(const std::string& name, const ParseOptions& options) {
  std::filesystem::path p(name);
  if (p.is_absolute()) return p;
  std::vector<std::filesystem::path> candidates;
  if (!options.base_dir.empty()) candidates.push_back(options.base_dir / p);
  for (const auto& dir : options.lattice_path) candidates.push_back(dir / p);
  candidates.push_back(p);
  for (const auto& c : candidates) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(c, ec)) return c;
  }
  return {};
}

template <BaseInstitution L>
SpecFile parse_as(Lexer& lx, Document<L> doc, typename BaseSyntax<L>::Context ctx) {
  DocumentParser<L> parser(lx, std::move(ctx));
  parser.parse(doc);
  return doc;
}

}  // namespace

LatticeBody parse_lattice_body(std::string_view text) {
  Lexer lx(text);
  LatticeBody body;
  while (!lx.at_end()) lattice_item(lx, body);
  return body;
}

mvl::ResiduatedLattice build_lattice(const LatticeBody& body, std::string name) {
  if (body.elements.empty()) throw ParseError({}, "lattice has no elements");
  if (body.elements.size() > 256) throw ParseError(body.elements[256].pos, "lattice has more than 256 elements");
  std::map<std::string, int> index;
  std::vector<std::string> labels;
  for (const auto& e : body.elements) {
    if (!index.emplace(e.text, static_cast<int>(labels.size())).second) {
      throw ParseError(e.pos, "duplicate lattice element '" + e.text + "'");
    }
    labels.push_back(e.text);
  }
  auto find = [&index](const Ident& id) {
    auto it = index.find(id.text);
    if (it == index.end()) throw ParseError(id.pos, "unknown lattice element '" + id.text + "'");
    return it->second;
  };
  const std::size_t n = labels.size();
  std::vector<std::pair<int, int>> order;
  for (const auto& [a, b] : body.order) order.emplace_back(find(a), find(b));
  std::vector<int> tensor(n * n, -1);
  for (const auto& e : body.tensor) {
    auto& slot = tensor[static_cast<std::size_t>(find(e.x)) * n + static_cast<std::size_t>(find(e.y))];
    int value = find(e.result);
    if (slot >= 0 && slot != value) {
      throw ParseError(e.x.pos, "conflicting tensor entries for " + e.x.text + " * " + e.y.text);
    }
    slot = value;
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (tensor[x * n + y] < 0) tensor[x * n + y] = tensor[y * n + x];
    }
  }
  std::optional<std::vector<int>> residuum;
  if (!body.residuum.empty()) {
    residuum.emplace(n * n, -1);
    for (const auto& e : body.residuum) {
      (*residuum)[static_cast<std::size_t>(find(e.x)) * n + static_cast<std::size_t>(find(e.y))] = find(e.result);
    }
  }
  try {
    return mvl::ResiduatedLattice::from_tables(std::move(name), std::move(labels), order, std::move(tensor),
                                               std::move(residuum));
  } catch (const ValidationError& e) {
    throw ParseError(body.elements.front().pos, e.what());
  }
}

mvl::LatticeRef load_lattice(const LatticeSpec& spec, const ParseOptions& options) {
  switch (spec.source) {
    case LatticeSpec::Source::Bool:
      return std::make_shared<const mvl::ResiduatedLattice>(mvl::ResiduatedLattice::boolean());
    case LatticeSpec::Source::Chain:
      return std::make_shared<const mvl::ResiduatedLattice>(mvl::ResiduatedLattice::chain(spec.chain));
    case LatticeSpec::Source::Inline:
      return std::make_shared<const mvl::ResiduatedLattice>(build_lattice(spec.body, "lattice"));
    case LatticeSpec::Source::File: break;
  }
  auto path = find_lattice_file(spec.path, options);
  if (path.empty()) throw ParseError(spec.pos, "lattice file '" + spec.path + "' not found");
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (!in) throw ParseError(spec.pos, "cannot read lattice file '" + spec.path + "'");
  try {
    return std::make_shared<const mvl::ResiduatedLattice>(
        build_lattice(parse_lattice_body(buffer.str()), path.stem().string()));
  } catch (const ParseError& e) {
    std::string where = e.pos().known() ? e.pos().str() + ": " : "";
    throw ParseError(spec.pos, "in lattice file '" + spec.path + "': " + where + e.message(), e.expected());
  }
}

SpecFile parse_spec(std::string_view text, const ParseOptions& options) {
  Lexer lx(text);
  if (!lx.peek().is("logic")) return parse_as<pl::Logic>(lx, Document<pl::Logic>{}, {});
  lx.next();
  const Token t = lx.peek();
  if (lx.accept("pl")) {
    lx.expect(";");
    Document<pl::Logic> doc;
    doc.has_header = true;
    return parse_as<pl::Logic>(lx, std::move(doc), {});
  }
  if (lx.accept("eq")) {
    lx.expect(";");
    Document<eq::Logic> doc;
    doc.logic = LogicKind::EQ;
    doc.has_header = true;
    return parse_as<eq::Logic>(lx, std::move(doc), {});
  }
  if (lx.accept("mvl")) {
    Document<mvl::Logic> doc;
    doc.logic = LogicKind::MVL;
    doc.has_header = true;
    doc.lattice = parse_lattice_spec(lx);
    lx.expect(";");
    doc.resolved_lattice = load_lattice(*doc.lattice, options);
    return parse_as<mvl::Logic>(lx, std::move(doc), {doc.resolved_lattice});
  }
  lx.fail(t, "unknown logic " + describe(t), {"'pl'", "'eq'", "'mvl'"});
}

template <BaseInstitution L>
std::vector<Command<L>> parse_commands(std::string_view text, const Document<L>& doc) {
  typename BaseSyntax<L>::Context ctx{};
  if constexpr (std::is_same_v<L, mvl::Logic>) ctx.lattice = doc.resolved_lattice;
  Lexer lx(text);
  DocumentParser<L> parser(lx, ctx);
  std::vector<Command<L>> out;
  while (!lx.at_end()) {
    if (!parser.is_command_start()) lx.fail(lx.peek(), "expected a command, found " + describe(lx.peek()));
    out.push_back(parser.command());
  }
  if (out.empty()) lx.fail(lx.peek(), "expected a command", {"a command"});
  return out;
}

template <BaseInstitution L>
HybridSentence<L> parse_hybrid(Lexer& lexer, const typename BaseSyntax<L>::Context& ctx,
                               const HybridSignature<L>* sig) {
  return HybridParser<L>(lexer, ctx, sig).implication();
}

template <BaseInstitution L>
HybridSentence<L> parse_sentence(std::string_view text, const HybridSignature<L>& sig) {
  Lexer lx(text);
  auto ctx = BaseSyntax<L>::context_of(sig.base);
  auto s = parse_hybrid<L>(lx, ctx, &sig);
  if (!lx.at_end()) lx.fail(lx.peek(), "unexpected " + describe(lx.peek()), {"end of sentence"});
  return s;
}

#define HYBRIDKIT_INSTANTIATE(L)                                                                        \
  template std::vector<Command<L>> parse_commands<L>(std::string_view, const Document<L>&);             \
  template HybridSentence<L> parse_hybrid<L>(Lexer&, const BaseSyntax<L>::Context&,                     \
                                             const HybridSignature<L>*);                                \
  template HybridSentence<L> parse_sentence<L>(std::string_view, const HybridSignature<L>&);

HYBRIDKIT_INSTANTIATE(pl::Logic)
HYBRIDKIT_INSTANTIATE(eq::Logic)
HYBRIDKIT_INSTANTIATE(mvl::Logic)

#undef HYBRIDKIT_INSTANTIATE

}  // namespace hybridkit::frontend
