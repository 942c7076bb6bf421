#include "fiberwalk/experiments.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <map>

#include "fiberwalk/error.hpp"
#include "fiberwalk/families.hpp"
#include "fiberwalk/fiber.hpp"
#include "fiberwalk/k33.hpp"
#include "fiberwalk/latin.hpp"

namespace fiberwalk {

namespace {

template <class T>
T param(const Json& params, const char* key, T fallback) {
  if (!params.contains(key) || params.at(key).is_null()) return fallback;
  try {
    return params.at(key).get<T>();
  } catch (const Json::exception&) {
    throw Error(ErrorKind::usage, std::string("parameter \"") + key + "\" has the wrong type");
  }
}

std::string required_string(const Json& params, const char* key) {
  auto s = param<std::string>(params, key, "");
  if (s.empty()) throw Error(ErrorKind::usage, std::string("missing parameter \"") + key + "\"");
  return s;
}

Table load_table(const std::string& path, const StateSpace& space) {
  auto loaded = table_from_json(read_json_file(path));
  if (!(loaded.space == space)) throw Error(ErrorKind::incompatible, path + " does not match the graph levels");
  return loaded.table;
}

std::vector<Move> load_moves(const Preset& p, const Json& params) {
  const auto source = param<std::string>(params, "moves", "");
  if (source.empty() || source == "preferred") return preset_moves(p);
  if (source == "global-markov") return preset_moves(p, MoveSource::global_markov);
  if (source == "basis") return preset_moves(p, MoveSource::family_basis);
  return moves_from_json(read_json_file(source), p.graph.space());
}

std::size_t cap_of(const Json& params, const RunOptions& options) {
  const auto cap = param<std::size_t>(params, "cap", options.cap);
  if (cap < 1) throw Error(ErrorKind::usage, "cap must be positive");
  return cap;
}

const char* status_name(Connectivity c) {
  switch (c) {
    case Connectivity::connected: return "connected";
    case Connectivity::not_connected: return "not-connected";
    case Connectivity::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Json run_component(const Json& params, const RunOptions& options) {
  const auto p = resolve_graph_argument(required_string(params, "graph"));
  const auto start_path = param<std::string>(params, "start", "");
  Table start;
  if (!start_path.empty()) {
    start = load_table(start_path, p.graph.space());
  } else if (p.table) {
    start = *p.table;
  } else {
    throw Error(ErrorKind::usage, "preset " + p.name + " has no table; pass a start table");
  }
  const auto moves = load_moves(p, params);
  const auto comp = connected_component(start, moves, cap_of(params, options));
  auto out = component_to_json(comp, p.graph.space(), param<bool>(params, "dump", options.dump));
  out["moves"] = moves.size();
  return out;
}

Json run_connected(const Json& params, const RunOptions& options) {
  const auto p = resolve_graph_argument(required_string(params, "graph"));
  const auto u = load_table(required_string(params, "u"), p.graph.space());
  const auto v = load_table(required_string(params, "v"), p.graph.space());
  const auto am = preset_margin_map(p);
  if (margins(am, u) != margins(am, v)) throw Error(ErrorKind::incompatible, "u and v have different margins");
  const auto moves = load_moves(p, params);
  const auto r = are_connected(u, v, moves, cap_of(params, options));
  Json out{{"status", status_name(r.status)}, {"explored", r.explored}};
  if (r.status == Connectivity::connected) {
    out["path_length"] = r.path.size();
    out["path"] = path_to_json(r.path);
  }
  return out;
}

Json run_verify_basis(const Json& params, const RunOptions& options) {
  const auto p = resolve_graph_argument(required_string(params, "graph"));
  const auto moves = load_moves(p, params);
  const int degree = param<int>(params, "max_degree", 0);
  if (degree < 1) throw Error(ErrorKind::usage, "max_degree must be at least 1");
  VerifyOptions vo;
  vo.threads = options.threads;
  vo.table_budget = param<std::size_t>(params, "budget", vo.table_budget);
  const auto v = verify_markov_basis(moves, preset_margin_map(p), degree, vo);
  Json out{{"pass", v.pass},
           {"moves", moves.size()},
           {"tables_checked", v.tables_checked},
           {"fibers_checked", v.fibers_checked}};
  if (v.witness) {
    out["witness_degree"] = v.witness_degree;
    out["witness"] = {{"u", cells_to_json(v.witness->first, p.graph.space())},
                      {"v", cells_to_json(v.witness->second, p.graph.space())}};
  }
  return out;
}

FacetLimits limits_of(const Json& params) {
  FacetLimits limits;
  limits.max_rank = param<std::size_t>(params, "max_rank", limits.max_rank);
  return limits;
}

Json run_facets(const Json& params, const RunOptions&) {
  const auto p = resolve_graph_argument(required_string(params, "graph"));
  const auto am = preset_margin_map(p);
  const auto cf = cone_facets(am, limits_of(params));
  Json facets = Json::array();
  for (const auto& f : cf.facets) facets.push_back(functional_to_json(f, am));
  return {{"rank", cf.rank}, {"ray", cf.ray}, {"facet_count", cf.facets.size()}, {"facets", facets}};
}

Json verdict_json(const PropertyVerdict& v, std::size_t prime_count) {
  Json profile = Json::array();
  for (const auto& w : v.margin_profile) {
    profile.push_back({{"id", w.id}, {"zeros", w.zeros.size()}, {"on_boundary", w.on_boundary}});
  }
  return {{"holds", v.holds},
          {"failing_witness", v.failing_witness ? Json(v.failing_witness->id) : Json(nullptr)},
          {"prime_count", prime_count},
          {"profile", profile}};
}

Preset with_family(Preset p, const Json& params) {
  const auto family = param<std::string>(params, "family", "");
  if (!family.empty() && family_from_string(family) != p.family) {
    throw Error(ErrorKind::incompatible, p.name + " is not a " + family + " graph");
  }
  return p;
}

Json run_check_margins(const Json& params, const RunOptions&) {
  const auto p = with_family(resolve_graph_argument(required_string(params, "graph")), params);
  const auto mode = param<std::string>(params, "mode", "positive");
  const auto primes = preset_primes(p);
  const auto am = preset_margin_map(p);
  if (mode == "positive") {
    auto out = verdict_json(check_margin_property(primes, am, MarginMode::positive_margins), primes.size());
    out["mode"] = "positive";
    return out;
  }
  if (mode != "interior") throw Error(ErrorKind::usage, "mode must be positive or interior");
  const auto f = interior_facets(p, am, limits_of(params));
  auto out = verdict_json(check_margin_property(primes, am, MarginMode::interior_point, &f.facets), primes.size());
  out["mode"] = "interior";
  out["facet_source"] = f.source;
  out["facet_count"] = f.facets.size();
  return out;
}

Json run_witness_disconnect(const Json& params, const RunOptions& options) {
  const auto p = with_family(resolve_graph_argument(required_string(params, "graph")), params);
  const auto id = required_string(params, "prime");
  const auto primes = preset_primes(p);
  auto it = std::find_if(primes.begin(), primes.end(), [&](const PrimeWitness& w) { return w.id == id; });
  if (it == primes.end()) throw Error(ErrorKind::invalid_input, "no prime " + id + " for " + p.name);
  if (it->is_toric()) throw Error(ErrorKind::invalid_input, "the toric component has no witness table");
  const auto c = param<Count>(params, "c", 1);

  const auto move_path = param<std::string>(params, "move", "");
  std::optional<Move> f;
  if (!move_path.empty()) {
    f = move_from_json(read_json_file(move_path), p.graph.space());
  } else {
    f = find_witness_move(*it, preset_moves(p, MoveSource::family_basis));
    if (!f) throw Error(ErrorKind::invalid_witness_move, "no basis move avoids the variables of " + id);
  }
  const auto [x, y] = build_disconnection_witness(*it, *f, c);
  const auto am = preset_margin_map(p);
  const auto mx = margins(am, x);
  const auto quadrics = glG_moves(p.graph);
  const auto cap = cap_of(params, options);
  const auto cx = connected_component(x, quadrics, cap);
  const auto cy = connected_component(y, quadrics, cap);
  const auto& s = p.graph.space();
  return {{"prime", id},
          {"c", c},
          {"move", move_to_json(*f, s)},
          {"u", cells_to_json(x, s)},
          {"v", cells_to_json(y, s)},
          {"margins_equal", mx == margins(am, y)},
          {"strictly_positive", is_strictly_positive(mx)},
          {"component_sizes", {cx.size, cy.size}},
          {"truncated", cx.truncated || cy.truncated},
          {"disjoint", !cx.truncated && !cx.contains(y)}};
}

Json run_latin(const Json& params, const RunOptions& options) {
  const auto action = required_string(params, "action");
  if (action == "mols") {
    const int q = param<int>(params, "q", 0);
    const auto squares = mols(q);
    bool orthogonal = true;
    Json list = Json::array();
    for (std::size_t a = 0; a < squares.size(); ++a) {
      list.push_back(square_to_json(squares[a]));
      for (std::size_t b = a + 1; b < squares.size(); ++b) orthogonal = orthogonal && are_orthogonal(squares[a], squares[b]);
    }
    return {{"q", q}, {"count", squares.size()}, {"pairwise_orthogonal", orthogonal}, {"squares", list}};
  }
  if (action != "disconnect") throw Error(ErrorKind::usage, "latin action must be mols or disconnect");
  const auto base = resolve_graph_argument(required_string(params, "graph")).graph;
  const int d0 = param<int>(params, "order", 0);
  if (d0 < 2) throw Error(ErrorKind::usage, "order must be at least 2");
  // The graph structure is kept; every vertex gets d0 levels.
  const LabeledGraph g(StateSpace(std::vector<int>(static_cast<std::size_t>(base.n_vertices()), d0)), base.edges());
  DisconnectionOptions opts;
  opts.node_cap = cap_of(params, options);
  Json out{{"order", d0}, {"graph", graph_to_json(g)}};
  const auto t = latin_table(g, mols(d0));
  out["table"] = cells_to_json(t, g.space());
  out["report"] = disconnection_to_json(verify_disconnection(g, t, opts), g.space());
  return out;
}

Json run_k33(const Json& params, const RunOptions& options) {
  if (!param<bool>(params, "search", false)) {
    const auto r = k33_run(cap_of(params, options));
    Json out{{"c18a", r.c18a},
             {"c18b", r.c18b},
             {"c90", r.c90},
             {"disjoint", r.disjoint},
             {"c90_contains_both", r.c90_contains_both},
             {"path_length", r.path_length ? Json(*r.path_length) : Json(nullptr)},
             {"inconclusive", r.inconclusive},
             {"moves", r.move_count}};
    out["path"] = path_to_json(r.path);
    return out;
  }
  const auto p = resolve_graph_argument(param<std::string>(params, "graph", "k33"));
  SearchOptions so;
  so.max_pairs = param<std::size_t>(params, "max_pairs", so.max_pairs);
  so.node_cap = param<std::size_t>(params, "node_cap", so.node_cap);
  const auto r = search_nonradical_witness(p.graph, so);
  Json out{{"graph", p.name},
           {"found", r.move.has_value()},
           {"pairs_examined", r.pairs_examined},
           {"cofactors_examined", r.cofactors_examined}};
  if (r.move) {
    out["move"] = move_to_json(*r.move, p.graph.space());
    out["w"] = cells_to_json(*r.w, p.graph.space());
  }
  return out;
}

Preset family_preset(const Json& params) {
  const auto family = required_string(params, "family");
  const int n = param<int>(params, "n", 0);
  if (family == "cycle") {
    if (n < 4) throw Error(ErrorKind::usage, "cycle needs N >= 4");
    return preset_from_graph("c" + std::to_string(n), cycle_graph(n, std::vector<int>(static_cast<std::size_t>(n), 2)));
  }
  if (family != "k2n") throw Error(ErrorKind::usage, "family must be cycle or k2n");
  std::string name = "k2n(" + std::to_string(n);
  for (int d : param<std::vector<int>>(params, "levels", {})) name += "," + std::to_string(d);
  return resolve_preset(name + ")");
}

Json run_family(const Json& params, const RunOptions&) {
  const auto action = required_string(params, "action");
  const auto p = family_preset(params);
  const auto& s = p.graph.space();
  const bool count_only = param<bool>(params, "count_only", false);
  if (action == "basis") {
    const bool cycle = p.family == Family::cycle;
    const auto quadrics = cycle ? cycle_quadrics(p.cycle_length) : k2n_quadrics(*p.k2n_shape);
    const auto quartics = cycle ? cycle_quartics(p.cycle_length) : k2n_quartics(*p.k2n_shape);
    const auto basis = preset_moves(p, MoveSource::family_basis);
    Json out{{"graph", graph_to_json(p.graph)},
             {"quadrics", quadrics.size()},
             {"quartics", quartics.size()},
             {"count", basis.size()}};
    if (!count_only) out["moves"] = moves_to_json(basis, s);
    return out;
  }
  if (action != "primes") throw Error(ErrorKind::usage, "family action must be basis or primes");
  const auto primes = preset_primes(p);
  Json out{{"graph", graph_to_json(p.graph)}, {"count", primes.size()}};
  if (!count_only) {
    Json list = Json::array();
    for (const auto& w : primes) list.push_back(prime_to_json(w, s));
    out["primes"] = list;
  }
  return out;
}

Json run_summary_experiment(const Json& params, const RunOptions& options, int& exit_code) {
  const auto path = param<std::string>(params, "expectations", "");
  auto result = run_summary(path.empty() ? pinned_expectations() : read_json_file(path), options);
  if (!result.at("matched").get<bool>()) exit_code = 1;
  return result;
}

}  // namespace

std::vector<std::string> experiment_names() {
  return {"component", "connected",    "verify-basis", "facets", "check-margins", "witness-disconnect",
          "latin",     "k33",          "summary",       "family"};
}

Json pinned_expectations() { return Json::parse(pinned_expectations_text()); }

InteriorFacets interior_facets(const Preset& p, const MarginMap& am, const FacetLimits& limits) {
  try {
    auto cf = cone_facets(am, limits);
    return {std::move(cf.facets), "double-description", cf.rank};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::too_large || p.family != Family::k2n) throw;
  }
  InteriorFacets out;
  out.source = "k2n-inequalities";
  out.facets = k2n_facet_inequalities(*p.k2n_shape, {.ordered_pairs = true});
  for (std::size_t r = 0; r < am.n_rows(); ++r) {
    Functional f;
    f.coeffs.assign(am.n_rows(), 0);
    f.coeffs[r] = 1;
    f.label = am.row_label(r);
    out.facets.push_back(std::move(f));
  }
  return out;
}

Json summary_row(const std::string& name) {
  try {
    const auto p = resolve_preset(name);
    const auto am = preset_margin_map(p);
    const auto primes = preset_primes(p);
    const auto positive = check_margin_property(primes, am, MarginMode::positive_margins);
    const auto f = interior_facets(p, am);
    const auto interior = check_margin_property(primes, am, MarginMode::interior_point, &f.facets);
    std::uint64_t count = primes.size();
    Json row{{"preset", name}};
    if (p.family == Family::pyramid) {
      count = pyramid_prime_count(cycle_prime_witnesses(p.cycle_length).size(), 2);
      row["enumerated_primes"] = primes.size();
    }
    row["positive_margins"] = positive.holds;
    row["interior_point"] = interior.holds;
    row["prime_count"] = count;
    row["failing_witness"] = positive.failing_witness ? Json(positive.failing_witness->id) : Json(nullptr);
    row["facet_source"] = f.source;
    row["facet_count"] = f.facets.size();
    row["rank"] = f.rank;
    return row;
  } catch (const Error& e) {
    throw Error(e.kind(), name + ": " + e.what());
  }
}

Json run_summary(const Json& expectations, const RunOptions& options) {
  const std::vector<std::string> names{"c4", "c5", "k23", "g48", "square-pyramid"};
  std::vector<Json> rows(names.size());
  if (options.threads > 1) {
    std::vector<std::future<Json>> pending;
    for (const auto& n : names) pending.push_back(std::async(std::launch::async, summary_row, n));
    for (std::size_t i = 0; i < names.size(); ++i) rows[i] = pending[i].get();
  } else {
    for (std::size_t i = 0; i < names.size(); ++i) rows[i] = summary_row(names[i]);
  }

  Json mismatches = Json::array();
  const Json& table = expectations.at("summary");
  for (const auto& row : rows) {
    const auto& name = row.at("preset").get_ref<const std::string&>();
    if (!table.contains(name)) {
      mismatches.push_back({{"preset", name}, {"field", "*"}, {"expected", nullptr}, {"actual", nullptr}});
      continue;
    }
    for (const auto& [field, expected] : table.at(name).items()) {
      if (!row.contains(field) || row.at(field) != expected) {
        mismatches.push_back({{"preset", name},
                              {"field", field},
                              {"expected", expected},
                              {"actual", row.contains(field) ? row.at(field) : Json(nullptr)}});
      }
    }
  }
  return {{"rows", rows}, {"matched", mismatches.empty()}, {"mismatches", mismatches}};
}

ExperimentOutcome run_experiment(const std::string& name, const Json& params, const RunOptions& options) {
  using Runner = std::function<Json(const Json&, const RunOptions&, int&)>;
  auto plain = [](Json (*f)(const Json&, const RunOptions&)) -> Runner {
    return [f](const Json& p, const RunOptions& o, int&) { return f(p, o); };
  };
  const std::map<std::string, Runner> runners{
      {"component", plain(run_component)},
      {"connected", plain(run_connected)},
      {"verify-basis", plain(run_verify_basis)},
      {"facets", plain(run_facets)},
      {"check-margins", plain(run_check_margins)},
      {"witness-disconnect", plain(run_witness_disconnect)},
      {"latin", plain(run_latin)},
      {"k33", plain(run_k33)},
      {"family", plain(run_family)},
      {"summary", run_summary_experiment},
  };
  auto it = runners.find(name);
  if (it == runners.end()) throw Error(ErrorKind::usage, "unknown experiment " + name);

  ExperimentOutcome outcome;
  outcome.report = {{"experiment", name}, {"params", params}};
  const auto start = std::chrono::steady_clock::now();
  try {
    outcome.report["result"] = it->second(params, options, outcome.exit_code);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::usage) throw;
    outcome.exit_code = 1;
    outcome.report["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
  } catch (const std::exception& e) {
    outcome.exit_code = 1;
    outcome.report["error"] = {{"kind", "internal"}, {"message", e.what()}};
  }
  if (options.timing) {
    outcome.report["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  } else {
    outcome.report["elapsed_ms"] = nullptr;
  }
  return outcome;
}

}  // namespace fiberwalk
