#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fiberwalk/error.hpp"
#include "fiberwalk/experiments.hpp"

using namespace fiberwalk;

namespace {

struct Invocation {
  std::string experiment;
  Json params = Json::object();
};

void set_if(Json& params, const char* key, const std::string& value) {
  if (!value.empty()) params[key] = value;
}

void add_moves_options(CLI::App* cmd, std::string& moves, bool& global, bool& basis) {
  auto* m = cmd->add_option("--moves", moves, "move list JSON file");
  auto* g = cmd->add_flag("--global-markov", global, "use the global Markov quadrics");
  auto* b = cmd->add_flag("--basis", basis, "use the family Markov basis");
  m->excludes(g)->excludes(b);
  g->excludes(b);
}

void put_moves(Json& params, const std::string& moves, bool global, bool basis) {
  if (global) params["moves"] = "global-markov";
  else if (basis) params["moves"] = "basis";
  else set_if(params, "moves", moves);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fiber connectivity and marginal cone experiments for graphical models"};
  app.require_subcommand(1);
  app.fallthrough();

  RunOptions options;
  std::string json_out;
  app.add_option("--threads", options.threads, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--cap", options.cap, "node cap for searches")->check(CLI::PositiveNumber);
  app.add_option("--json", json_out, "write the report to this file");
  app.add_flag("--dump", options.dump, "emit all component members");
  bool no_timing = false;
  app.add_flag("--no-timing", no_timing, "report elapsed_ms as null");

  Invocation inv;
  std::string graph, start, u, v, moves, prime, mode, family, move_file, expectations;
  bool global = false, basis = false, count_only = false, search = false;
  int max_degree = 0, order = 0, q = 0;
  std::size_t budget = 0, max_rank = 0, max_pairs = 0;
  long long c = 1;
  std::vector<int> family_args;

  auto* component = app.add_subcommand("component", "connected component of a table");
  component->add_option("--graph", graph, "graph JSON file or preset")->required();
  component->add_option("--start", start, "table JSON file");
  add_moves_options(component, moves, global, basis);

  auto* connected = app.add_subcommand("connected", "path search between two tables");
  connected->add_option("--graph", graph, "graph JSON file or preset")->required();
  connected->add_option("--u", u, "table JSON file")->required();
  connected->add_option("--v", v, "table JSON file")->required();
  add_moves_options(connected, moves, global, basis);

  auto* verify = app.add_subcommand("verify-basis", "check fiber connectivity up to a degree");
  verify->add_option("--graph", graph, "graph JSON file or preset")->required();
  verify->add_option("--max-degree", max_degree, "degree bound")->required()->check(CLI::PositiveNumber);
  verify->add_option("--budget", budget, "maximum number of tables enumerated");
  add_moves_options(verify, moves, global, basis);

  auto* facets = app.add_subcommand("facets", "facets of the marginal cone");
  facets->add_option("--graph", graph, "graph JSON file or preset")->required();
  facets->add_option("--max-rank", max_rank, "rank limit for the facet enumeration");

  auto* check = app.add_subcommand("check-margins", "positive margins or interior point verdict");
  check->add_option("--graph", graph, "graph JSON file or preset")->required();
  check->add_option("--family", family, "cycle or k2n")->check(CLI::IsMember({"cycle", "k2n", "pyramid"}));
  check->add_option("--mode", mode, "positive or interior")->required()->check(CLI::IsMember({"positive", "interior"}));
  check->add_option("--max-rank", max_rank, "rank limit for the facet enumeration");

  auto* witness = app.add_subcommand("witness-disconnect", "disconnected pair with equal margins for a prime");
  witness->add_option("--graph", graph, "graph JSON file or preset")->required();
  witness->add_option("--prime", prime, "prime id")->required();
  witness->add_option("--c", c, "multiplicity of the witness table")->check(CLI::NonNegativeNumber);
  witness->add_option("--move", move_file, "move JSON file");

  auto* fam = app.add_subcommand("family", "Markov bases and prime witnesses of the cycle and K2N families");
  fam->require_subcommand(1);
  auto* cycle_basis = fam->add_subcommand("cycle-basis", "Markov basis of the binary N-cycle");
  cycle_basis->add_option("N", family_args, "cycle length")->required()->expected(1);
  cycle_basis->add_flag("--count-only", count_only);
  auto* k2n_basis = fam->add_subcommand("k2n-basis", "Markov basis of K_{2,N-2}");
  k2n_basis->add_option("args", family_args, "N d3 d4 ... dN")->required()->expected(1, -1);
  k2n_basis->add_flag("--count-only", count_only);
  auto* primes = fam->add_subcommand("primes", "minimal prime witnesses");
  primes->add_option("--graph", family, "cycle or k2n")->required()->check(CLI::IsMember({"cycle", "k2n"}));
  primes->add_option("args", family_args, "N [d3 ... dN]")->required()->expected(1, -1);
  primes->add_flag("--count-only", count_only);

  auto* latin = app.add_subcommand("latin", "Latin square constructions");
  latin->require_subcommand(1);
  auto* mols_cmd = latin->add_subcommand("mols", "q-1 mutually orthogonal Latin squares");
  mols_cmd->add_option("q", q, "prime power order")->required();
  auto* disconnect = latin->add_subcommand("disconnect", "isolated table from Latin squares");
  disconnect->add_option("--graph", graph, "graph JSON file or preset")->required();
  disconnect->add_option("--order", order, "levels per vertex")->required();

  auto* k33 = app.add_subcommand("k33", "the K33 witness experiment");
  k33->add_flag("--search", search, "search degree-4 moves and degree-2 cofactors instead");
  k33->add_option("--graph", graph, "k33 or g154 for the search");
  k33->add_option("--max-pairs", max_pairs, "candidate moves examined by the search");

  auto* summary = app.add_subcommand("summary", "margin properties and prime counts for the named models");
  summary->add_option("--expectations", expectations, "expectations JSON file");

  std::string run_name, params_file;
  auto* run = app.add_subcommand("run", "run an experiment by name with a params file");
  run->add_option("name", run_name, "experiment name")->required();
  run->add_option("--params", params_file, "params JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  options.timing = !no_timing;

  Json& p = inv.params;
  try {
    if (*component) {
      inv.experiment = "component";
      p["graph"] = graph;
      set_if(p, "start", start);
      put_moves(p, moves, global, basis);
    } else if (*connected) {
      inv.experiment = "connected";
      p = {{"graph", graph}, {"u", u}, {"v", v}};
      put_moves(p, moves, global, basis);
    } else if (*verify) {
      inv.experiment = "verify-basis";
      p = {{"graph", graph}, {"max_degree", max_degree}};
      if (budget) p["budget"] = budget;
      put_moves(p, moves, global, basis);
    } else if (*facets) {
      inv.experiment = "facets";
      p["graph"] = graph;
      if (max_rank) p["max_rank"] = max_rank;
    } else if (*check) {
      inv.experiment = "check-margins";
      p = {{"graph", graph}, {"mode", mode}};
      set_if(p, "family", family);
      if (max_rank) p["max_rank"] = max_rank;
    } else if (*witness) {
      inv.experiment = "witness-disconnect";
      p = {{"graph", graph}, {"prime", prime}, {"c", c}};
      set_if(p, "move", move_file);
    } else if (*fam) {
      inv.experiment = "family";
      p["action"] = *primes ? "primes" : "basis";
      p["family"] = *cycle_basis ? "cycle" : *k2n_basis ? "k2n" : family;
      p["n"] = family_args.front();
      if (family_args.size() > 1) p["levels"] = std::vector<int>(family_args.begin() + 1, family_args.end());
      p["count_only"] = count_only;
    } else if (*latin) {
      inv.experiment = "latin";
      if (*mols_cmd) p = {{"action", "mols"}, {"q", q}};
      else p = {{"action", "disconnect"}, {"graph", graph}, {"order", order}};
    } else if (*k33) {
      inv.experiment = "k33";
      p["search"] = search;
      set_if(p, "graph", graph);
      if (max_pairs) p["max_pairs"] = max_pairs;
    } else if (*summary) {
      inv.experiment = "summary";
      set_if(p, "expectations", expectations);
    } else if (*run) {
      inv.experiment = run_name;
      if (!params_file.empty()) p = read_json_file(params_file);
    }

    auto outcome = run_experiment(inv.experiment, p, options);
    if (json_out.empty()) {
      std::cout << outcome.report.dump(2) << '\n';
    } else {
      write_json_file(json_out, outcome.report);
    }
    if (outcome.exit_code != 0 && outcome.report.contains("error")) {
      std::cerr << "fiberwalk: " << outcome.report["error"]["message"].get<std::string>() << '\n';
    }
    return outcome.exit_code;
  } catch (const Error& e) {
    Json err{{"experiment", inv.experiment}, {"params", p},
             {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
    std::cout << err.dump(2) << '\n';
    std::cerr << "fiberwalk: " << e.what() << '\n';
    return e.kind() == ErrorKind::usage ? 2 : 1;
  }
}
