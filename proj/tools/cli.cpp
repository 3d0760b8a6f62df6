#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "demos.hpp"
#include "json.hpp"
#include "pidec/decompose.hpp"
#include "pidec/error.hpp"
#include "pidec/normalize.hpp"
#include "pidec/parser.hpp"

namespace pidec::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::optional<std::uint32_t> fresh_pool;
  InputMode inputs = InputMode::Early;
  bool json = false;
  std::uint64_t seed = 1;
};

struct Context {
  const Options& opt;
  std::ostream& out;
  std::ostream& err;
  std::string command;
  Json inputs = Json::array();
  Json results = Json::object();
  Json universe = Json::object();
  std::vector<std::string> text;  // plain-text output lines
};

std::vector<Name> split_names(const std::string& csv) {
  std::vector<Name> names;
  std::stringstream ss(csv);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    if (!is_valid_user_name(part)) throw Error(ErrorKind::Usage, "invalid name '" + part + "'");
    names.push_back(Name::user(part));
  }
  return names;
}

Json names_json(const std::vector<Name>& names) {
  Json a = Json::array();
  for (Name n : names) a.push_back(n.text());
  return a;
}

std::vector<Process> read_terms(Context& ctx, const std::vector<std::string>& args, std::size_t expected) {
  std::vector<std::string> texts = args;
  if (texts.empty() && expected == 1) {
    std::string all((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    texts.push_back(all);
  }
  if (texts.size() != expected)
    throw Error(ErrorKind::Usage, "expected " + std::to_string(expected) + " term(s), got " +
                                      std::to_string(texts.size()));
  std::vector<Process> terms;
  for (const auto& t : texts) {
    terms.push_back(parse(t));
    ctx.inputs.push_back(pretty(terms.back()));
  }
  return terms;
}

NameUniverse make_universe(Context& ctx, const std::vector<Process>& terms, InputMode inputs) {
  NameUniverse u = NameUniverse::covering(terms, inputs);
  if (ctx.opt.fresh_pool) u.fresh_pool = *ctx.opt.fresh_pool;
  ctx.universe = {{"known", names_json(u.known)}, {"fresh_pool", u.fresh_pool}, {"inputs", to_string(u.mode)}};
  return u;
}

NameUniverse make_universe(Context& ctx, const std::vector<Process>& terms) {
  return make_universe(ctx, terms, ctx.opt.inputs);
}

Mode parse_mode(const std::string& s) {
  if (s == "strong") return Mode::Strong;
  if (s == "weak") return Mode::Weak;
  throw Error(ErrorKind::Usage, "mode must be strong or weak, got '" + s + "'");
}

Json opt_json(const std::optional<unsigned>& v) { return v ? Json(*v) : Json("infinity"); }

std::string opt_text(const std::optional<unsigned>& v) { return v ? std::to_string(*v) : "infinity"; }

int cmd_parse(Context& ctx, const std::vector<std::string>& args) {
  Json items = Json::array();
  std::vector<std::string> texts = args;
  if (texts.empty()) {
    std::string all((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    texts.push_back(all);
  }
  for (const auto& t : texts) {
    Process p = parse(t);
    ctx.inputs.push_back(pretty(p));
    items.push_back({{"pretty", pretty(p)},
                     {"free_names", names_json(p.free_names())},
                     {"size", p.size()},
                     {"prefixes", p.prefix_count()},
                     {"replication_free", is_replication_free(p)}});
    ctx.text.push_back(pretty(p));
  }
  ctx.results["terms"] = items;
  return kOk;
}

int cmd_lts(Context& ctx, const std::vector<std::string>& args, bool dot, bool json_graph,
            std::optional<unsigned> max_weight) {
  auto terms = read_terms(ctx, args, 1);
  NameUniverse u = make_universe(ctx, terms);
  Lts l = max_weight ? build_lts_bounded(terms[0], u, *max_weight) : build_lts(terms[0], u);
  ctx.results = {{"states", l.size()}, {"edges", l.edges().size()}, {"truncated", l.truncated()}};
  if (dot) {
    ctx.text.push_back(to_dot(l));
  } else if (json_graph) {
    ctx.results["graph"] = Json::parse(to_json(l));
    ctx.text.push_back(to_json(l));
  } else {
    ctx.text.push_back(std::to_string(l.size()) + " states, " + std::to_string(l.edges().size()) + " edges" +
                       (l.truncated() ? " (truncated)" : ""));
    for (const auto& e : l.edges())
      ctx.text.push_back("  " + std::to_string(e.src) + " --" + e.action.text() + "--> " + std::to_string(e.dst));
  }
  return kOk;
}

int cmd_depth(Context& ctx, const std::vector<std::string>& args) {
  auto terms = read_terms(ctx, args, 1);
  NameUniverse u = make_universe(ctx, terms);
  unsigned d = depth(build_lts(terms[0], u));
  ctx.results["depth"] = d;
  ctx.text.push_back(std::to_string(d));
  return kOk;
}

int cmd_norm(Context& ctx, const std::vector<std::string>& args, std::optional<unsigned> max_weight) {
  auto terms = read_terms(ctx, args, 1);
  NameUniverse u = make_universe(ctx, terms);
  bool bounded = max_weight || !is_replication_free(terms[0]);
  Lts l = bounded ? build_lts_bounded(terms[0], u, max_weight.value_or(12)) : build_lts(terms[0], u);
  auto n = norm(l);
  ctx.results = {{"norm", opt_json(n)}, {"bounded", bounded}, {"truncated", l.truncated()}};
  if (bounded) ctx.results["max_weight"] = max_weight.value_or(12);
  ctx.text.push_back(opt_text(n));
  return kOk;
}

int cmd_bisim(Context& ctx, const std::vector<std::string>& args, Mode mode, bool partition) {
  auto terms = read_terms(ctx, args, 2);
  NameUniverse u = make_universe(ctx, terms);
  BisimResult r = bisim(terms[0], terms[1], mode, u);
  ctx.results = {{"mode", to_string(mode)}, {"equivalent", r.equivalent}};
  ctx.text.push_back(r.equivalent ? "true" : "false");
  if (partition) {
    ctx.results["partition"] = Json::parse(r.partition_json());
    ctx.text.push_back(r.partition_json());
  }
  return kOk;
}

Json witness_json(const StutterWitness& w) {
  return {{"from", pretty(w.from.term)}, {"to", pretty(w.to.term)}};
}

int cmd_stutter_check(Context& ctx, const std::vector<std::string>& args) {
  auto terms = read_terms(ctx, args, 1);
  NameUniverse u = make_universe(ctx, terms);
  auto w = find_stuttering(terms[0], u);
  ctx.results = {{"stutter-free", !w.has_value()}};
  if (w) {
    ctx.results["witness"] = witness_json(*w);
    ctx.text.push_back("stuttering: " + pretty(w->from.term) + " -tau-> " + pretty(w->to.term));
  } else {
    ctx.text.push_back("stutter-free");
  }
  return kOk;
}

int cmd_normalize(Context& ctx, const std::vector<std::string>& args) {
  auto terms = read_terms(ctx, args, 1);
  NameUniverse u = make_universe(ctx, terms);
  NormalizationReport r = normalize_stuttering(terms[0], u);
  ctx.results = Json::parse(r.json());
  ctx.text.push_back(pretty(r.result));
  ctx.text.push_back(std::string("equivalent-to-input: ") + (r.equivalent_to_input ? "true" : "false"));
  ctx.text.push_back(std::string("stutter-free: ") + (r.stutter_free ? "true" : "false"));
  if (r.witness) ctx.text.push_back("witness: " + pretty(r.witness->from.term) + " -tau-> " + pretty(r.witness->to.term));
  return r.ok() ? kOk : kInconclusive;
}

TermUniverse oracle_universe(const Process& p, const std::string& names, unsigned max_size) {
  TermUniverse tu;
  tu.max_size = max_size;
  if (!names.empty()) {
    tu.names = split_names(names);
  } else {
    for (Name n : p.free_names())
      if (n.is_user()) tu.names.push_back(n);
    if (tu.names.empty()) tu.names.push_back(Name::user("a"));
  }
  return tu;
}

int cmd_decompose(Context& ctx, const std::vector<std::string>& args, Mode mode, const std::string& names,
                  unsigned max_size, std::size_t budget) {
  auto terms = read_terms(ctx, args, 1);
  InputMode inputs = mode == Mode::Weak ? ctx.opt.inputs : InputMode::Early;
  NameUniverse u = make_universe(ctx, terms, inputs);
  Decomposition d = decomposition(terms[0], mode, u);
  TermUniverse tu = oracle_universe(terms[0], names, max_size);
  Json factors = Json::array(), checks = Json::array();
  bool violation = !d.verified_equivalent, aborted = false;
  for (const auto& f : d.factors) {
    factors.push_back(pretty(f.term));
    SplitResult s = find_split(f.term, mode, tu, budget, inputs);
    checks.push_back({{"factor", pretty(f.term)}, {"find_split", to_string(s.status)}});
    violation = violation || s.status == SplitResult::Status::SplitFound;
    aborted = aborted || s.status == SplitResult::Status::Aborted;
  }
  ctx.results = {{"input", pretty(terms[0])},
                 {"mode", to_string(mode)},
                 {"factors", factors},
                 {"verified_equivalent", d.verified_equivalent},
                 {"oracle_universe", {{"names", names_json(tu.names)}, {"max_size", tu.max_size}}},
                 {"prime_checks", checks}};
  for (const auto& t : d.texts()) ctx.text.push_back(t);
  if (d.factors.empty()) ctx.text.push_back("0");
  if (violation) return kViolation;
  return aborted ? kInconclusive : kOk;
}

int cmd_find_split(Context& ctx, const std::vector<std::string>& args, Mode mode, const std::string& names,
                   unsigned max_size, std::size_t budget) {
  auto terms = read_terms(ctx, args, 1);
  InputMode inputs = mode == Mode::Weak ? ctx.opt.inputs : InputMode::Early;
  TermUniverse tu = oracle_universe(terms[0], names, max_size);
  ctx.universe = {{"names", names_json(tu.names)}, {"max_size", tu.max_size}, {"inputs", to_string(inputs)}};
  SplitResult s = find_split(terms[0], mode, tu, budget, inputs);
  ctx.results = {{"mode", to_string(mode)}, {"status", to_string(s.status)}, {"progress", s.progress}};
  ctx.text.push_back(to_string(s.status));
  if (s.left && s.right) {
    ctx.results["left"] = pretty(s.left->term);
    ctx.results["right"] = pretty(s.right->term);
    ctx.text.push_back("  " + pretty(s.left->term));
    ctx.text.push_back("  " + pretty(s.right->term));
  }
  return s.status == SplitResult::Status::Aborted ? kInconclusive : kOk;
}

int cmd_verify_upd_pair(Context& ctx, const std::vector<std::string>& args, Mode mode) {
  auto terms = read_terms(ctx, args, 2);
  InputMode inputs = mode == Mode::Weak ? ctx.opt.inputs : InputMode::Early;
  NameUniverse u = make_universe(ctx, terms, inputs);
  UpdVerdict v = verify_upd(terms[0], terms[1], mode, u);
  Json left = Json::array(), right = Json::array();
  for (const auto& t : v.left.texts()) left.push_back(t);
  for (const auto& t : v.right.texts()) right.push_back(t);
  ctx.results = {{"mode", to_string(mode)}, {"equivalent", v.equivalent}, {"unique", v.unique},
                 {"left", left}, {"right", right}};
  ctx.text.push_back(std::string("equivalent: ") + (v.equivalent ? "true" : "false"));
  ctx.text.push_back(std::string("unique decomposition: ") + (v.unique ? "true" : "false"));
  return v.unique ? kOk : kViolation;
}

int cmd_verify_upd_sweep(Context& ctx, const std::vector<std::string>& args, Mode mode) {
  std::map<std::string, std::string> kv{{"names", "a,b"}, {"max-size", "4"}};
  for (const auto& a : args) {
    auto eq = a.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Usage, "expected key=value, got '" + a + "'");
    std::string key = a.substr(0, eq);
    if (key != "names" && key != "max-size") throw Error(ErrorKind::Usage, "unknown sweep parameter '" + key + "'");
    kv[key] = a.substr(eq + 1);
  }
  TermUniverse tu;
  tu.names = split_names(kv["names"]);
  try {
    tu.max_size = static_cast<unsigned>(std::stoul(kv["max-size"]));
  } catch (const std::exception&) {
    throw Error(ErrorKind::Usage, "max-size must be a number");
  }
  InputMode inputs = mode == Mode::Weak ? ctx.opt.inputs : InputMode::Early;
  ctx.universe = {{"names", names_json(tu.names)}, {"max_size", tu.max_size}, {"inputs", to_string(inputs)}};
  SweepReport r = sweep_upd(tu, mode, inputs);
  Json violations = Json::array();
  for (const auto& v : r.violations)
    violations.push_back({{"kind", v.kind}, {"first", v.first}, {"second", v.second}, {"detail", v.detail}});
  ctx.results = {{"mode", to_string(mode)},
                 {"terms", r.terms},
                 {"classes", r.classes},
                 {"nontrivial_classes", r.nontrivial_classes},
                 {"equivalent_pairs", r.equivalent_pairs},
                 {"violations", r.violation_count},
                 {"examples", violations}};
  ctx.text.push_back("terms: " + std::to_string(r.terms));
  ctx.text.push_back("classes: " + std::to_string(r.classes) + " (" + std::to_string(r.nontrivial_classes) +
                     " with more than one term)");
  ctx.text.push_back("equivalent pairs: " + std::to_string(r.equivalent_pairs));
  ctx.text.push_back("violations: " + std::to_string(r.violation_count));
  for (const auto& v : r.violations) ctx.text.push_back("  " + v.kind + ": " + v.first + " / " + v.second + " " + v.detail);
  return r.violation_count == 0 ? kOk : kViolation;
}

int cmd_demo(Context& ctx, const std::string& name, bool list, unsigned max_weight) {
  if (list || name.empty()) {
    Json names = Json::array();
    for (const auto& n : demo_names()) {
      names.push_back(n);
      ctx.text.push_back(n);
    }
    ctx.results["demos"] = names;
    return kOk;
  }
  DemoOutcome o = run_demo(name, max_weight);
  Json checks = Json::array();
  for (const auto& c : o.checks) checks.push_back({{"check", c.name}, {"passed", c.passed}});
  ctx.inputs.push_back(name);
  ctx.results = {{"demo", name}, {"passed", o.passed()}, {"facts", o.facts}, {"checks", checks}};
  ctx.text = o.lines;
  ctx.text.push_back(o.passed() ? "demo passed" : "demo FAILED");
  return o.passed() ? kOk : kViolation;
}

int cmd_random(Context& ctx, unsigned count, unsigned max_size, const std::string& names, bool summation) {
  RandomTermOptions ro;
  ro.names = split_names(names);
  ro.max_size = max_size;
  if (ro.names.empty()) throw Error(ErrorKind::Usage, "at least one name is required");
  RandomTermGenerator gen(ctx.opt.seed, ro);
  Json terms = Json::array();
  for (unsigned i = 0; i < count; ++i) {
    Process p = summation ? gen.next_summation() : gen.next();
    terms.push_back(pretty(p));
    ctx.text.push_back(pretty(p));
  }
  ctx.universe = {{"names", names_json(ro.names)}, {"max_size", max_size}, {"seed", ctx.opt.seed}};
  ctx.results["terms"] = terms;
  return kOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Inconclusive:
    case ErrorKind::NormalizationIncomplete:
    case ErrorKind::TooLarge:
    case ErrorKind::UniverseTooSmall:
    case ErrorKind::CyclicLts:
      return kInconclusive;
    default:
      return kUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pidec: pi-calculus workbench", "pidec"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  std::uint32_t pool = 0;
  std::string inputs = "early";
  app.add_option("--fresh-pool", pool, "Fresh names available for input instantiation")->envname("PIDEC_FRESH_POOL");
  app.add_option("--inputs", inputs, "Input instantiation: early or fresh-only")
      ->check(CLI::IsMember({"early", "fresh-only"}));
  app.add_flag("--json", opt.json, "Print a JSON report");
  app.add_option("--seed", opt.seed, "Seed for the random term generator");

  std::vector<std::string> terms;
  std::string mode = "strong";
  std::optional<unsigned> max_weight;
  bool dot = false, json_graph = false, partition = false, sweep = false, list = false, summation = false;
  std::string names;
  unsigned max_size = 6, count = 10;
  std::size_t budget = 1'000'000;
  std::string demo;

  auto term_arg = [&](CLI::App* sub, std::size_t n) {
    auto* o = sub->add_option("terms", terms, "Process terms (read from stdin when omitted)");
    if (n > 0) o->expected(0, static_cast<int>(n));
  };
  auto mode_opt = [&](CLI::App* sub) {
    sub->add_option("--mode", mode, "strong or weak")->check(CLI::IsMember({"strong", "weak"}));
  };
  auto oracle_opts = [&](CLI::App* sub) {
    sub->add_option("--names", names, "Oracle universe names, comma separated (default: free names)");
    sub->add_option("--max-size", max_size, "Oracle universe size bound");
    sub->add_option("--budget", budget, "Maximum number of universe terms examined");
  };

  auto* s_parse = app.add_subcommand("parse", "Parse, validate and pretty-print terms");
  term_arg(s_parse, 0);
  auto* s_lts = app.add_subcommand("lts", "Build the transition graph");
  term_arg(s_lts, 1);
  s_lts->add_flag("--dot", dot, "Print Graphviz DOT");
  s_lts->add_flag("--json", json_graph, "Print the graph as JSON");
  s_lts->add_option("--max-weight", max_weight, "Bounded exploration up to this path weight");
  auto* s_depth = app.add_subcommand("depth", "Depth of a replication-free term");
  term_arg(s_depth, 1);
  auto* s_norm = app.add_subcommand("norm", "Norm of a term");
  term_arg(s_norm, 1);
  s_norm->add_option("--max-weight", max_weight, "Bounded exploration up to this path weight");
  auto* s_bisim = app.add_subcommand("bisim", "Decide strong or weak bisimilarity");
  term_arg(s_bisim, 2);
  mode_opt(s_bisim);
  s_bisim->add_flag("--partition", partition, "Include the coarsest partition");
  auto* s_stutter = app.add_subcommand("stutter-check", "Look for a stuttering transition");
  term_arg(s_stutter, 1);
  auto* s_normalize = app.add_subcommand("normalize", "Build a stutter-free weakly equivalent term");
  term_arg(s_normalize, 1);
  auto* s_decompose = app.add_subcommand("decompose", "Decompose into prime parallel factors");
  term_arg(s_decompose, 1);
  mode_opt(s_decompose);
  oracle_opts(s_decompose);
  auto* s_split = app.add_subcommand("find-split", "Search for a nontrivial parallel split");
  term_arg(s_split, 1);
  mode_opt(s_split);
  oracle_opts(s_split);
  auto* s_upd = app.add_subcommand("verify-upd", "Check unique decomposition for a pair or a universe");
  s_upd->add_option("args", terms, "Two terms, or key=value sweep parameters");
  mode_opt(s_upd);
  s_upd->add_flag("--sweep", sweep, "Sweep a term universe (names=a,b max-size=N)");
  auto* s_demo = app.add_subcommand("demo", "Run a worked example");
  s_demo->add_option("name", demo, "Demo name");
  s_demo->add_flag("--list", list, "List demo names");
  s_demo->add_option("--max-weight", max_weight, "Exploration bound for replicated demos");
  auto* s_random = app.add_subcommand("random", "Generate random replication-free terms");
  s_random->add_option("--count", count, "Number of terms");
  s_random->add_option("--max-size", max_size, "Size bound");
  std::string random_names = "a,b,c";
  s_random->add_option("--names", random_names, "Names, comma separated");
  s_random->add_flag("--summation", summation, "Generate summations only");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (!app.get_option("--fresh-pool")->empty()) opt.fresh_pool = pool;
  opt.inputs = inputs == "fresh-only" ? InputMode::FreshOnly : InputMode::Early;

  CLI::App* sub = app.get_subcommands().front();
  Context ctx{opt, out, err, sub->get_name(), Json::array(), Json::object(), Json::object(), {}};
  auto start = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    Mode m = parse_mode(mode);
    if (sub == s_parse) code = cmd_parse(ctx, terms);
    else if (sub == s_lts) code = cmd_lts(ctx, terms, dot, json_graph, max_weight);
    else if (sub == s_depth) code = cmd_depth(ctx, terms);
    else if (sub == s_norm) code = cmd_norm(ctx, terms, max_weight);
    else if (sub == s_bisim) code = cmd_bisim(ctx, terms, m, partition);
    else if (sub == s_stutter) code = cmd_stutter_check(ctx, terms);
    else if (sub == s_normalize) code = cmd_normalize(ctx, terms);
    else if (sub == s_decompose) code = cmd_decompose(ctx, terms, m, names, max_size, budget);
    else if (sub == s_split) code = cmd_find_split(ctx, terms, m, names, max_size, budget);
    else if (sub == s_upd) code = sweep ? cmd_verify_upd_sweep(ctx, terms, m) : cmd_verify_upd_pair(ctx, terms, m);
    else if (sub == s_demo) code = cmd_demo(ctx, demo, list, max_weight.value_or(12));
    else if (sub == s_random) code = cmd_random(ctx, count, max_size, random_names, summation);
  } catch (const Error& e) {
    code = exit_code_for(e.kind());
    if (const auto* se = dynamic_cast<const SyntaxError*>(&e)) {
      code = kUsage;
      err << "syntax error at " << se->span().start << ": " << e.what() << "\n";
    } else {
      err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    }
    ctx.results = Json::object();
    ctx.results["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    ctx.text.clear();
  }
  auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (opt.json) {
    Json report = {{"command", ctx.command},
                   {"inputs", ctx.inputs},
                   {"results", ctx.results},
                   {"universe", ctx.universe},
                   {"exit_code", code},
                   {"timing_ms", ms}};
    out << report.dump(2) << "\n";
  } else {
    for (const auto& line : ctx.text) out << line << "\n";
  }
  return code;
}

}  // namespace pidec::cli
