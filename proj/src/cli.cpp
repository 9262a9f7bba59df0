#include "regsyn/cli.h"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "regsyn/automaton.h"
#include "regsyn/error.h"
#include "regsyn/fd.h"
#include "regsyn/problem.h"
#include "regsyn/reductions.h"
#include "regsyn/regular_euf.h"

namespace regsyn::cli {

std::string result_line(const Verdict& v)
{
  return std::string("result=") + to_string(v.outcome)
         + " witness=" + (v.witness ? render(*v.witness) : std::string("-"))
         + " engine=" + v.engine;
}

int exit_code(Outcome o)
{
  switch (o)
  {
    case Outcome::Solvable: return kSolvable;
    case Outcome::Unsolvable: return kUnsolvable;
    case Outcome::Unknown: return kUnknown;
  }
  return kUnknown;
}

namespace {

struct RunConfig
{
  std::string input;
  std::string engine = "auto";
  std::string model_path;
  std::size_t max_size = 8;
  std::string automaton_path;
  std::string candidate;
  std::string kind;
  std::string output;
  std::size_t y_size = 2;
  bool verbose = false;
};

std::string read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Usage, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Usage, "cannot write " + path);
  out << text;
}

std::optional<FiniteModel> load_model(const RunConfig& cfg)
{
  if (cfg.model_path.empty()) return std::nullopt;
  return parse_model(read_file(cfg.model_path));
}

bool is_exact_reduction(const SygusProblem& p)
{
  auto r = p.info_value(":reduction");
  return r && (*r == "pcp-tree" || *r == "pcp-arrays" || *r == "pcp-regular" || *r == "cfg-bv");
}

class Runner
{
 public:
  Runner(std::ostream& out, std::ostream& err) : d_out(out), d_err(err) {}

  int solve(const RunConfig& cfg)
  {
    SygusProblem p = parse_problem(read_file(cfg.input));
    std::optional<FiniteModel> model = load_model(cfg);
    Verdict v = dispatch(p, cfg, model);
    if (!cfg.automaton_path.empty())
    {
      if (v.solutions)
      {
        write_file(cfg.automaton_path, to_dot(*v.solutions, "solutions"));
      }
      else
      {
        d_err << "note: engine " << v.engine << " builds no automaton; "
              << cfg.automaton_path << " not written\n";
      }
    }
    d_out << result_line(v) << '\n';
    return exit_code(v.outcome);
  }

  int check(const RunConfig& cfg)
  {
    SygusProblem p = parse_problem(read_file(cfg.input));
    std::optional<FiniteModel> model = load_model(cfg);
    Term w = parse_candidate_text(p, cfg.candidate);
    Oracle oracle = default_oracle(p, model ? &*model : nullptr);
    bool valid = oracle(w);
    d_out << (valid ? "valid" : "invalid") << '\n';
    return valid ? kSolvable : kUnsolvable;
  }

  int gen(const RunConfig& cfg)
  {
    std::string spec = read_file(cfg.input);
    SygusProblem p;
    const std::string& k = cfg.kind;
    if (k == "pcp-tree")
    {
      p = gen_pcp_tree(parse_pcp_json(spec), cfg.y_size);
    }
    else if (k == "pcp-arrays")
    {
      p = gen_pcp_arrays(parse_pcp_json(spec), cfg.y_size);
    }
    else if (k == "pcp-regular")
    {
      p = gen_pcp_regular(parse_pcp_json(spec), cfg.y_size);
    }
    else if (k == "pcp-wellformed")
    {
      auto [m, n] = wellformed_arities(spec);
      p = gen_pcp_wellformed(parse_pcp_json(spec), m, n);
    }
    else if (k == "sreu")
    {
      p = gen_sreu(parse_sreu(spec));
    }
    else if (k == "cfg-bv")
    {
      p = gen_cfg_bv(parse_cfg_pair(spec));
    }
    else
    {
      fail(ErrorKind::Usage, "unknown generator kind " + k);
    }
    write_file(cfg.output, print_problem(p));
    return kSolvable;
  }

  int enumerate(const RunConfig& cfg)
  {
    SygusProblem p = parse_problem(read_file(cfg.input));
    std::optional<FiniteModel> model = load_model(cfg);
    std::vector<Term> found;
    bool decided = false;
    if (p.theory == Theory::EUF && !p.string_grammar && !is_exact_reduction(p)
        && cfg.engine != "bounded")
    {
      try
      {
        Verdict v = solve_regular(p);
        found = enumerate_language(*v.solutions, cfg.max_size, witness_order(p));
        decided = true;
      }
      catch (const Error& e)
      {
        if (e.kind() != ErrorKind::NotRegular && e.kind() != ErrorKind::IteInGrammar) throw;
        d_err << "note: " << e.what() << "; listing by bounded search\n";
      }
    }
    if (!decided)
    {
      Oracle oracle = default_oracle(p, model ? &*model : nullptr);
      for (const Term& w : enumerate_candidates(p, cfg.max_size))
      {
        if (oracle(w)) found.push_back(w);
      }
      decided = p.theory == Theory::FD;
    }
    for (const Term& w : found) d_out << render(w) << '\n';
    if (!found.empty()) return kSolvable;
    return decided ? kUnsolvable : kUnknown;
  }

 private:
  Verdict dispatch(const SygusProblem& p, const RunConfig& cfg,
                   const std::optional<FiniteModel>& model)
  {
    const std::string& engine = cfg.engine;
    if (engine == "regular-euf") return solve_regular(p);
    if (engine == "fd") return solve_fd(p, require_model(model));
    if (engine == "bounded") return bounded(p, cfg, model);
    if (engine != "auto") fail(ErrorKind::Usage, "unknown engine " + engine);
    switch (p.theory)
    {
      case Theory::FD: return solve_fd(p, require_model(model));
      case Theory::BV: return bounded(p, cfg, model);
      case Theory::EUF: break;
    }
    if (p.string_grammar || is_exact_reduction(p)) return bounded(p, cfg, model);
    try
    {
      if (cfg.verbose)
      {
        for (const RegularClause& c : normalize(p))
        {
          d_err << "clause " << to_string(c.kind) << ": " << render(to_formula(c)) << '\n';
        }
      }
      return solve_regular(p);
    }
    catch (const Error& e)
    {
      if (e.kind() != ErrorKind::NotRegular && e.kind() != ErrorKind::IteInGrammar) throw;
      d_err << "note: " << e.what() << "; falling back to bounded search up to size "
            << cfg.max_size << '\n';
    }
    return bounded(p, cfg, model);
  }

  Verdict bounded(const SygusProblem& p, const RunConfig& cfg,
                  const std::optional<FiniteModel>& model)
  {
    return bounded_solve(p, default_oracle(p, model ? &*model : nullptr), cfg.max_size);
  }

  static const FiniteModel& require_model(const std::optional<FiniteModel>& model)
  {
    if (!model) fail(ErrorKind::Usage, "the fd engine needs --model");
    return *model;
  }

  static Term parse_candidate_text(const SygusProblem& p, const std::string& text)
  {
    if (p.string_grammar && text.find('(') != 0)
    {
      if (auto t = parse_call_syntax(text, candidate_arities(p))) return *t;
    }
    return parse_candidate(p, text);
  }

  static std::pair<std::size_t, std::size_t> wellformed_arities(const std::string& spec)
  {
    try
    {
      nlohmann::json j = nlohmann::json::parse(spec);
      if (!j.contains("arities")) return {1, 2};
      auto a = j.at("arities").get<std::vector<std::size_t>>();
      if (a.size() != 2) fail(ErrorKind::Syntax, "\"arities\" needs two entries");
      return {a[0], a[1]};
    }
    catch (const nlohmann::json::exception& e)
    {
      fail(ErrorKind::Syntax, std::string("PCP instance: ") + e.what());
    }
  }

  std::ostream& d_out;
  std::ostream& d_err;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Syntax-guided synthesis over EUF, finite domains and reduction instances",
               "regsyn"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_flag("-v,--verbose", cfg.verbose, "Print diagnostics on standard error");

  const std::vector<std::string> engines{"auto", "regular-euf", "fd", "bounded"};
  CLI::App* solve = app.add_subcommand("solve", "Decide a problem and print one result line");
  solve->add_option("file", cfg.input, "Problem file")->required();
  solve->add_option("--engine", cfg.engine, "Solver engine")
      ->check(CLI::IsMember(engines));
  solve->add_option("--model", cfg.model_path, "Finite model (JSON) for FD problems");
  solve->add_option("--max-size", cfg.max_size, "Size bound for bounded search");
  solve->add_option("--emit-automaton", cfg.automaton_path,
                    "Write the solution automaton as Graphviz");

  CLI::App* check = app.add_subcommand("check", "Check one candidate body");
  check->add_option("file", cfg.input, "Problem file")->required();
  check->add_option("--candidate", cfg.candidate, "Candidate term")->required();
  check->add_option("--model", cfg.model_path, "Finite model (JSON) for FD problems");

  CLI::App* gen = app.add_subcommand("gen", "Generate a reduction instance");
  gen->add_option("kind", cfg.kind,
                  "sreu, pcp-tree, pcp-regular, pcp-arrays, pcp-wellformed or cfg-bv")
      ->required();
  gen->add_option("spec", cfg.input, "Instance description")->required();
  gen->add_option("-o,--output", cfg.output, "Problem file to write")->required();
  gen->add_option("--y-size", cfg.y_size, "Size bound of the psi instances (PCP)");

  CLI::App* enumerate = app.add_subcommand("enum", "List solutions up to a size bound");
  enumerate->add_option("file", cfg.input, "Problem file")->required();
  enumerate->add_option("--max-size", cfg.max_size, "Size bound")->required();
  enumerate->add_option("--engine", cfg.engine, "auto or bounded")
      ->check(CLI::IsMember(engines));
  enumerate->add_option("--model", cfg.model_path, "Finite model (JSON) for FD problems");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    return app.exit(e, out, err) == 0 ? 0 : kUsageOrParse;
  }

  Runner runner(out, err);
  try
  {
    if (*solve) return runner.solve(cfg);
    if (*check) return runner.check(cfg);
    if (*gen) return runner.gen(cfg);
    return runner.enumerate(cfg);
  }
  catch (const Error& e)
  {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return e.kind() == ErrorKind::ResourceLimit ? kResource : kUsageOrParse;
  }
  catch (const std::bad_alloc&)
  {
    err << "error: out of memory\n";
    return kResource;
  }
}

}  // namespace regsyn::cli
