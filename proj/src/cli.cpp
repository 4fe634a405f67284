#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "genlab/approx.hpp"
#include "genlab/cli.hpp"
#include "genlab/forcing.hpp"
#include "genlab/marked.hpp"
#include "genlab/order.hpp"
#include "genlab/presentation.hpp"

namespace genlab {

namespace {

constexpr int kUsage = 64;
constexpr int kDataError = 65;
constexpr int kNoInput = 66;

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Yes: return 0;
    case Outcome::No: return 1;
    case Outcome::Unknown: return 2;
  }
  return 2;
}

class Usage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int emit(std::ostream& out, const Verdict& v, bool json) {
  if (json) {
    out << to_json(v).dump(2) << '\n';
  } else {
    out << to_string(v.outcome) << " (bound " << v.bound << ")\n";
    if (!v.certificate.is_null()) out << v.certificate.dump() << '\n';
  }
  return exit_code(v.outcome);
}

int emit_bool(std::ostream& out, bool pass, const nlohmann::json& detail, bool json) {
  if (json)
    out << nlohmann::json{{"pass", pass}, {"detail", detail}}.dump(2) << '\n';
  else
    out << (pass ? "pass" : "fail") << '\n' << detail.dump() << '\n';
  return pass ? 0 : 1;
}

nlohmann::json render_all(const GroupOracle& g, const std::vector<Element>& xs) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : xs) a.push_back(g.render(x));
  return a;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::filesystem::filesystem_error("cannot open input file", path,
                                            std::make_error_code(std::errc::no_such_file_or_directory));
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

System read_system(const std::filesystem::path& path) {
  try {
    return system_from_json(read_json_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    const std::string what = e.what();
    if (what.rfind(path.string(), 0) == 0) throw;
    throw ParseError(path.string() + ": " + what);
  }
}

std::vector<std::size_t> parse_sizes(const std::string& list) {
  std::vector<std::size_t> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoul(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("expected a comma-separated list of naturals, got \"" + list + "\"");
    }
  }
  return out;
}

// Corpus and game files share the line-oriented clause syntax "w = e" / "w != e".
Equation parse_clause(const std::string& text) {
  const auto ne = text.find("!=");
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ParseError("clause \"" + text + "\" needs \"= e\" or \"!= e\"");
  const bool equal = ne == std::string::npos;
  const std::string lhs = text.substr(0, equal ? eq : ne);
  const std::string rhs = text.substr((equal ? eq : ne) + (equal ? 1 : 2));
  return {parse_word(lhs) * parse_word(rhs).inverse(), equal};
}

struct Commands {
  CLI::App app{"genlab: bounded computations with countable groups", "genlab"};
  bool json = false;

  // shared option storage
  std::string group, group_b, set, set2, graph, embedding, file, strategy = "centralizer", opponent = "random:1";
  std::string eps = "1/10", moduli, subsets, log_out;
  std::vector<std::string> marks;
  std::size_t bound = 3, depth = 0, radius = 3, n = 2, rounds = 10, size = 4, max_vars = 2, max_len = 4;
  std::size_t audit_bound = 0, check_bound = 0;
  bool literal = false;

  CLI::App* word = nullptr;
  CLI::App* marked = nullptr;
  CLI::App* marked_dist = nullptr;
  CLI::App* marked_ball = nullptr;
  CLI::App* order = nullptr;
  std::map<std::string, CLI::App*> order_subs;
  CLI::App* folner = nullptr;
  CLI::App* folner_check = nullptr;
  CLI::App* folner_search = nullptr;
  CLI::App* sofic = nullptr;
  CLI::App* sofic_check = nullptr;
  CLI::App* sofic_quotient = nullptr;
  CLI::App* game = nullptr;
  CLI::App* game_replay = nullptr;
  CLI::App* game_auto = nullptr;
  CLI::App* game_play = nullptr;
  CLI::App* system = nullptr;
  CLI::App* system_check = nullptr;
  CLI::App* system_compile = nullptr;
  CLI::App* embed = nullptr;
  CLI::App* ec = nullptr;
  CLI::App* corpus = nullptr;

  Commands() {
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", json, "emit JSON");

    word = app.add_subcommand("word", "reduce a word");
    word->add_option("word", file, "word text")->required();

    marked = app.add_subcommand("marked", "marked groups");
    marked->require_subcommand(1);
    marked_dist = marked->add_subcommand("dist", "distance between marked groups");
    marked_dist->add_option("--a", group, "first group")->required();
    marked_dist->add_option("--b", group_b, "second group")->required();
    marked_dist->add_option("--mark", marks, "marking of --a, then of --b");
    marked_dist->add_option("--max-radius", radius, "largest radius compared");
    marked_ball = marked->add_subcommand("ball", "Cayley ball as JSON");
    marked_ball->add_option("--group", group)->required();
    marked_ball->add_option("--mark", marks);
    marked_ball->add_option("--radius", radius);

    order = app.add_subcommand("order", "orderability refutations");
    order->require_subcommand(1);
    for (const char* name : {"left", "li", "bi", "upp", "sigma"}) {
      auto* s = order->add_subcommand(name);
      s->add_option("--group", group)->required();
      s->add_option("--set", set, "comma-separated words");
      s->add_option("--bound", bound, "product length m");
      s->add_option("--depth", depth, "closure rounds (li, bi)");
      order_subs[name] = s;
    }
    order_subs["upp"]->add_option("--with", set2, "second set (defaults to --set)");
    order_subs["upp"]->add_flag("--literal", literal, "literal reading of unique product");
    order_subs["sigma"]->add_option("--n", n, "tuple length");

    folner = app.add_subcommand("folner", "Folner sets");
    folner->require_subcommand(1);
    folner_check = folner->add_subcommand("check");
    folner_check->add_option("--group", group)->required();
    folner_check->add_option("--set", set, "F")->required();
    folner_check->add_option("--k", set2, "candidate K")->required();
    folner_check->add_option("--eps", eps);
    folner_search = folner->add_subcommand("search");
    folner_search->add_option("--group", group)->required();
    folner_search->add_option("--set", set, "F")->required();
    folner_search->add_option("--eps", eps);
    folner_search->add_option("--max-radius", radius);
    folner_search->add_option("--subsets", subsets, "radius,max_size");

    sofic = app.add_subcommand("sofic", "sofic approximations");
    sofic->require_subcommand(1);
    sofic_check = sofic->add_subcommand("check");
    sofic_check->add_option("--graph", graph)->required();
    sofic_check->add_option("--group", group)->required();
    sofic_check->add_option("--mark", marks);
    sofic_check->add_option("--n", n);
    sofic_quotient = sofic->add_subcommand("quotient", "Cayley graph of a finite quotient of Z^d");
    sofic_quotient->add_option("--moduli", moduli)->required();

    game = app.add_subcommand("game", "forcing games");
    game->require_subcommand(1);
    game_replay = game->add_subcommand("replay");
    game_replay->add_option("log", file)->required();
    game_replay->add_option("--audit-bound", audit_bound, "re-check the play at this derivation bound");
    game_auto = game->add_subcommand("auto");
    game_auto->add_option("--rounds", rounds);
    game_auto->add_option("--strategy", strategy, "centralizer | open-dense:<system-file>");
    game_auto->add_option("--opponent", opponent, "random:<seed>");
    game_auto->add_option("--log", log_out, "write the game log here");
    game_play = game->add_subcommand("play", "line-oriented play against the scheduler");
    game_play->add_option("--strategy", strategy);

    system = app.add_subcommand("system", "constant systems");
    system->require_subcommand(1);
    system_check = system->add_subcommand("check", "consistency of a constant system");
    system_check->add_option("file", file)->required();
    system_check->add_option("--bound", check_bound, "derivation bound (default GENLAB_DEFAULT_BOUND or 2000)");
    system_compile = system->add_subcommand("compile", "compile into a partial enumerated group");
    system_compile->add_option("file", file)->required();

    embed = app.add_subcommand("embed", "embedding of G into H via multiplication-table systems");
    embed->add_option("--group", group, "G")->required();
    embed->add_option("--into", group_b, "H")->required();
    embed->add_option("--size", size);
    embed->add_option("--bound", bound);

    ec = app.add_subcommand("ec", "existential closedness of G in H");
    ec->add_option("--group", group, "G")->required();
    ec->add_option("--in", group_b, "H")->required();
    ec->add_option("--embedding", embedding, "images of G's elements as words over H's generators");
    ec->add_option("--max-vars", max_vars);
    ec->add_option("--max-len", max_len);

    corpus = app.add_subcommand("corpus", "run a regression corpus");
    corpus->add_option("file", file)->required();
  }
};

MarkedGroup marked_group(const std::string& spec, const std::vector<std::string>& marks, std::size_t i,
                         const InputContext& ctx) {
  auto g = parse_group(spec, ctx);
  if (i < marks.size()) return {g, parse_elements(*g, marks[i])};
  return default_marking(g);
}

std::unique_ptr<Strategy> make_strategy(const std::string& spec, const InputContext& ctx) {
  if (spec == "centralizer") return strategy_centralizer();
  if (spec.rfind("open-dense:", 0) == 0) return strategy_open_dense(read_system(ctx.resolve(spec.substr(11))));
  throw Usage("unknown strategy \"" + spec + "\"");
}

nlohmann::json game_summary(GameState& st) {
  nlohmann::json j{{"moves", st.log().size()},
                   {"clauses", st.system().size()},
                   {"constants", st.checker().constants().size()},
                   {"last_check", to_string(st.last_check())}};
  try {
    const auto g = compile(st.system());
    j["products"] = g.products.size();
    j["violations"] = g.violations();
  } catch (const CompileError& e) {
    j["compile_error"] = e.what();
  }
  return j;
}

int run_game_play(Commands& c, std::istream& in, std::ostream& out, const InputContext& ctx) {
  auto strategy = make_strategy(c.strategy, ctx);
  GameState st;
  out << "clauses separated by ';' (e.g. c1*c2 = c3; c1 != e), \"pass\", \"log\" or \"quit\"\n";
  std::string line;
  while (out << "I> " << std::flush, std::getline(in, line)) {
    if (line == "quit") break;
    if (line == "log") {
      out << game_log_to_json(st).dump() << '\n';
      continue;
    }
    System added;
    try {
      if (line != "pass") {
        std::stringstream parts(line);
        std::string clause;
        while (std::getline(parts, clause, ';'))
          if (clause.find_first_not_of(" \t") != std::string::npos) added.add(parse_clause(clause));
      }
      st.play_added(added);
    } catch (const std::exception& e) {
      out << "rejected: " << e.what() << '\n';
      continue;
    }
    play_response(st, *strategy);
    out << "II: " << to_json(st.log().back().added)["clauses"].dump() << '\n';
  }
  out << game_summary(st).dump() << '\n';
  return 0;
}

int dispatch(Commands& c, std::ostream& out, std::ostream& err, const InputContext& ctx);

int run_corpus(const std::filesystem::path& path, std::ostream& out, std::ostream& err, std::istream* ctx_input) {
  const auto entries = parse_corpus(read_text(path));
  InputContext sub{path.parent_path(), ctx_input};
  std::size_t failures = 0;
  for (const auto& e : entries) {
    std::ostringstream o, er;
    const int code = run(e.args, o, er, sub);
    const bool ok = code == e.expected;
    if (!ok) ++failures;
    std::string cmd;
    for (const auto& a : e.args) cmd += (cmd.empty() ? "" : " ") + a;
    out << (ok ? "PASS" : "FAIL") << " line " << e.line << ": " << cmd << " (expected " << e.expected << ", got "
        << code << ")\n";
    if (!ok && !er.str().empty()) err << er.str();
  }
  out << entries.size() - failures << " passed, " << failures << " failed, " << entries.size() << " total\n";
  return failures == 0 ? 0 : 1;
}

int dispatch(Commands& c, std::ostream& out, std::ostream& err, const InputContext& ctx) {
  const bool json = c.json;

  if (c.word->parsed()) {
    const Word w = parse_word(c.file);
    if (json)
      out << nlohmann::json{{"word", render(w)}, {"length", w.size()}}.dump(2) << '\n';
    else
      out << render(w) << '\n';
    return 0;
  }

  if (c.marked_dist->parsed()) {
    if (c.marks.size() > 2) throw Usage("at most two --mark options");
    const auto a = marked_group(c.group, c.marks, 0, ctx);
    const auto b = marked_group(c.group_b, c.marks, 1, ctx);
    const auto d = marked_distance(a, b, c.radius);
    if (json)
      out << nlohmann::json{{"exact", d.exact}, {"n", d.n}, {"value", d.render()}}.dump(2) << '\n';
    else
      out << d.render() << '\n';
    return d.exact ? 0 : 2;
  }
  if (c.marked_ball->parsed()) {
    out << to_json(ball(marked_group(c.group, c.marks, 0, ctx), c.radius)).dump(json ? 2 : -1) << '\n';
    return 0;
  }

  for (const auto& [name, sub] : c.order_subs) {
    if (!sub->parsed()) continue;
    const auto g = parse_group(c.group, ctx);
    const auto f = parse_elements(*g, c.set);
    if (name == "left") return emit(out, left_order_test(*g, f, c.bound), json);
    if (name == "li") return emit(out, locally_indicable_test(*g, f, c.depth ? c.depth : c.bound), json);
    if (name == "bi") return emit(out, biorderable_test(*g, f, c.depth ? c.depth : c.bound), json);
    if (name == "upp") {
      const auto y = c.set2.empty() ? f : parse_elements(*g, c.set2);
      const auto r = upp_test(*g, f, y, c.literal ? UppMode::Literal : UppMode::Standard);
      nlohmann::json d = nlohmann::json::object();
      if (r.witness) d["witness"] = {g->render((*r.witness)[0]), g->render((*r.witness)[1]), g->render((*r.witness)[2])};
      nlohmann::json table = nlohmann::json::array();
      for (const auto& [p, fs] : r.table) table.push_back({{"product", g->render(p)}, {"factorizations", fs}});
      d["products"] = table;
      return emit_bool(out, r.holds, d, json);
    }
    const auto r = sigma_mn_check(*g, c.bound, c.n);
    return emit_bool(out, r.holds, {{"m", c.bound}, {"n", c.n}, {"counterexample", render_all(*g, r.counterexample)}},
                     json);
  }

  if (c.folner_check->parsed()) {
    const auto g = parse_group(c.group, ctx);
    const auto r = folner_check(*g, parse_elements(*g, c.set), parse_elements(*g, c.set2), parse_rational(c.eps));
    return emit_bool(out, r.pass, {{"eps", r.eps.render()}, {"k_size", r.k.size()}, {"sizes", r.sizes}}, json);
  }
  if (c.folner_search->parsed()) {
    const auto g = parse_group(c.group, ctx);
    const auto f = parse_elements(*g, c.set);
    FolnerSearchResult r;
    if (!c.subsets.empty()) {
      const auto s = parse_sizes(c.subsets);
      if (s.size() != 2) throw Usage("--subsets takes radius,max_size");
      r = folner_search(*g, f, parse_rational(c.eps), SubsetsStrategy{s[0], s[1]});
    } else {
      r = folner_search(*g, f, parse_rational(c.eps), BallsStrategy{c.radius});
    }
    nlohmann::json d{{"candidates_tried", r.candidates_tried}};
    if (r.found) {
      d["k"] = render_all(*g, r.found->k);
      d["sizes"] = r.found->sizes;
    }
    if (r.radius) d["radius"] = *r.radius;
    const Verdict v = r.found ? Verdict::yes(d, c.radius) : Verdict::unknown(c.radius, d);
    return emit(out, v, json);
  }

  if (c.sofic_check->parsed()) {
    const auto path = ctx.resolve(c.graph);
    LabeledGraph graph(0, 0);
    try {
      graph = labeled_graph_from_json(read_json_file(path));
    } catch (const ParseError& e) {
      const std::string what = e.what();
      if (what.rfind(path.string(), 0) == 0) throw;
      throw ParseError(path.string() + ": " + what);
    }
    const auto r = sofic_check(graph, marked_group(c.group, c.marks, 0, ctx), c.n);
    return emit_bool(out, r.pass, {{"good", r.good.size()}, {"vertices", r.vertices}, {"n", c.n}}, json);
  }
  if (c.sofic_quotient->parsed()) {
    const auto m = parse_sizes(c.moduli);
    out << to_json(sofic_from_quotient(m.size(), m)).dump(json ? 2 : -1) << '\n';
    return 0;
  }

  if (c.game_replay->parsed()) {
    const auto path = ctx.resolve(c.file);
    std::vector<GameMove> log;
    try {
      log = game_log_from_json(read_json_file(path));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
    GameState st;
    try {
      st = replay(log);
    } catch (const IllegalMove& e) {
      const nlohmann::json d{{"illegal", e.what()}, {"certificate", e.certificate()}};
      return emit_bool(out, false, d, json);
    }
    nlohmann::json d = game_summary(st);
    if (c.audit_bound) {
      GameConfig cfg;
      cfg.fp.bound = c.audit_bound;
      if (auto bad = audit(st, cfg)) {
        d["invalidated_from_move"] = *bad;
        return emit_bool(out, false, d, json);
      }
    }
    return emit_bool(out, true, d, json);
  }
  if (c.game_auto->parsed()) {
    if (c.opponent.rfind("random:", 0) != 0) throw Usage("--opponent must be random:<seed>");
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(c.opponent.substr(7));
    } catch (const std::exception&) {
      throw Usage("bad seed in \"" + c.opponent + "\"");
    }
    auto strategy = make_strategy(c.strategy, ctx);
    GameState st = auto_game(c.rounds, *strategy, seed);
    const auto log = game_log_to_json(st);
    if (!c.log_out.empty()) {
      std::ofstream f(c.log_out);
      if (!f) throw std::filesystem::filesystem_error("cannot write", c.log_out, std::make_error_code(std::errc::io_error));
      f << log.dump(2) << '\n';
    }
    if (json)
      out << nlohmann::json{{"log", log}, {"summary", game_summary(st)}}.dump(2) << '\n';
    else
      out << game_summary(st).dump() << '\n';
    return 0;
  }
  if (c.game_play->parsed()) return run_game_play(c, ctx.input ? *ctx.input : std::cin, out, ctx);

  if (c.system_check->parsed()) {
    FpConfig cfg;
    cfg.bound = c.check_bound ? c.check_bound : default_bound();
    return emit(out, consistency_check(read_system(ctx.resolve(c.file)), ConsistencyClass::All, cfg), json);
  }
  if (c.system_compile->parsed()) {
    try {
      const auto g = compile(read_system(ctx.resolve(c.file)));
      out << to_json(g).dump(json ? 2 : -1) << '\n';
      return 0;
    } catch (const CompileError& e) {
      return emit_bool(out, false, {{"error", e.what()}, {"trace", e.trace()}}, json);
    }
  }

  if (c.embed->parsed()) {
    const auto g = parse_group(c.group, ctx);
    const auto h = parse_group(c.group_b, ctx);
    return emit(out, embeds_via_systems(*g, *h, c.size, c.bound), json);
  }
  if (c.ec->parsed()) {
    const auto g = parse_group(c.group, ctx);
    const auto h = parse_group(c.group_b, ctx);
    std::vector<Element> emb;
    if (c.embedding.empty()) {
      if (c.group != c.group_b) throw Usage("--embedding is required unless G and H are the same group");
      emb = g->elements();
    } else {
      emb = parse_elements(*h, c.embedding);
    }
    return emit(out, is_ec_in(*g, *h, emb, c.max_vars, c.max_len), json);
  }

  if (c.corpus->parsed()) return run_corpus(ctx.resolve(c.file), out, err, ctx.input);
  throw Usage("no command given");
}

}  // namespace

std::vector<CorpusEntry> parse_corpus(const std::string& text) {
  std::vector<CorpusEntry> out;
  std::stringstream lines(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(lines, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<std::string> tokens;
    std::string cur;
    bool in_token = false;
    char quote = 0;
    for (std::size_t i = first; i < line.size(); ++i) {
      const char ch = line[i];
      if (quote) {
        if (ch == quote)
          quote = 0;
        else
          cur += ch;
      } else if (ch == '"' || ch == '\'') {
        quote = ch;
        in_token = true;
      } else if (ch == ' ' || ch == '\t' || ch == '\r') {
        if (in_token) tokens.push_back(std::move(cur));
        cur.clear();
        in_token = false;
      } else {
        cur += ch;
        in_token = true;
      }
    }
    if (quote) throw ParseError("unterminated quote on line " + std::to_string(number));
    if (in_token) tokens.push_back(std::move(cur));
    CorpusEntry e;
    e.line = number;
    try {
      std::size_t used = 0;
      e.expected = std::stoi(tokens.at(0), &used);
      if (used != tokens[0].size()) throw std::invalid_argument(tokens[0]);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(number) + " must start with the expected exit code");
    }
    e.args.assign(tokens.begin() + 1, tokens.end());
    if (!e.args.empty() && e.args[0] == "genlab") e.args.erase(e.args.begin());
    out.push_back(std::move(e));
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const InputContext& ctx) {
  Commands c;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    c.app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << c.app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << c.app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "genlab: " << e.what() << '\n';
    return kUsage;
  }
  try {
    return dispatch(c, out, err, ctx);
  } catch (const Usage& e) {
    err << "genlab: " << e.what() << '\n';
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "genlab: " << e.path1().string() << ": " << e.code().message() << '\n';
    return kNoInput;
  } catch (const ParseError& e) {
    err << "genlab: " << e.what() << '\n';
    return kDataError;
  } catch (const UndecidedError& e) {
    err << "genlab: undecided at bound " << e.bound() << ": " << e.what() << '\n';
    if (c.json) out << to_json(Verdict::unknown(e.bound(), {{"reason", e.what()}})).dump(2) << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "genlab: " << e.what() << '\n';
    return kDataError;
  } catch (const std::out_of_range& e) {
    err << "genlab: " << e.what() << '\n';
    return kDataError;
  } catch (const std::overflow_error& e) {
    err << "genlab: " << e.what() << '\n';
    return kDataError;
  }
}

}  // namespace genlab
