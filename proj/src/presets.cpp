#include "fiberwalk/presets.hpp"

#include <filesystem>
#include <regex>

#include "fiberwalk/error.hpp"
#include "fiberwalk/io.hpp"
#include "fiberwalk/latin.hpp"

namespace fiberwalk {

namespace {

std::vector<int> binary(int n) { return std::vector<int>(static_cast<std::size_t>(n), 2); }

Preset cycle_preset(std::string name, int n) {
  Preset p(std::move(name), cycle_graph(n, binary(n)));
  p.family = Family::cycle;
  p.cycle_length = n;
  return p;
}

Preset k2n_preset(std::string name, std::vector<int> tail) {
  K2NShape shape(std::move(tail));
  Preset p(std::move(name), k2n_graph(shape));
  p.family = Family::k2n;
  p.k2n_shape = shape;
  return p;
}

Preset parse_k2n(const std::string& name) {
  static const std::regex form(R"(k2n\((\d+)((?:,\d+)*)\))");
  std::smatch m;
  if (!std::regex_match(name, m, form)) throw Error(ErrorKind::usage, "malformed preset " + name);
  const int n = std::stoi(m[1].str());
  std::vector<int> levels;
  const std::string rest = m[2].str();
  static const std::regex number(R"(\d+)");
  for (auto it = std::sregex_iterator(rest.begin(), rest.end(), number); it != std::sregex_iterator(); ++it) {
    levels.push_back(std::stoi(it->str()));
  }
  if (n < 4) throw Error(ErrorKind::usage, "k2n needs N >= 4");
  if (levels.empty()) levels = binary(n - 2);
  if (levels.size() != static_cast<std::size_t>(n - 2)) {
    throw Error(ErrorKind::usage, "k2n(N,...) takes the N-2 levels d3..dN");
  }
  return k2n_preset(name, levels);
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::none: return "none";
    case Family::cycle: return "cycle";
    case Family::k2n: return "k2n";
    case Family::pyramid: return "pyramid";
  }
  return "none";
}

Family family_from_string(const std::string& name) {
  if (name == "cycle") return Family::cycle;
  if (name == "k2n") return Family::k2n;
  if (name == "pyramid") return Family::pyramid;
  if (name == "none") return Family::none;
  throw Error(ErrorKind::usage, "unknown family " + name);
}

std::vector<std::string> preset_names() {
  return {"c4", "c5", "c6", "k22", "k23", "k2n(5)", "square-pyramid", "g48", "k33", "g154", "latin-c4-3", "e-simple"};
}

Preset resolve_preset(const std::string& name) {
  if (name == "c4") return cycle_preset(name, 4);
  if (name == "c5") return cycle_preset(name, 5);
  if (name == "c6") return cycle_preset(name, 6);
  if (name == "k22") return k2n_preset(name, {2, 2});
  if (name == "k23") return k2n_preset(name, {2, 2, 2});
  if (name == "g48") return k2n_preset(name, {2, 4});
  if (name.starts_with("k2n(")) return parse_k2n(name);
  if (name == "square-pyramid") {
    Preset p(name, cone_graph(cycle_graph(4, binary(4)), 2));
    p.family = Family::pyramid;
    p.cycle_length = 4;
    return p;
  }
  if (name == "k33") return Preset(name, complete_bipartite_graph(3, 3, binary(6)));
  if (name == "g154") {
    auto k33 = complete_bipartite_graph(3, 3, binary(6));
    std::vector<std::pair<int, int>> edges;
    for (auto e : k33.edges()) {
      if (e != std::pair{2, 5}) edges.push_back(e);
    }
    return Preset(name, LabeledGraph(StateSpace(binary(6)), edges));
  }
  if (name == "latin-c4-3") {
    Preset p(name, cycle_graph(4, std::vector<int>(4, 3)));
    p.table = latin_table(p.graph, mols(3));
    return p;
  }
  if (name == "e-simple") {
    Preset p(name, LabeledGraph(StateSpace({2}), {}));
    p.margin_override = MarginMap(p.graph.space(), {VertexSet{}});
    p.moves = std::vector<Move>{Move(Table::unit(0, 2), Table::unit(1, 2)), Move(Table::unit(0, 3), Table::unit(1, 3))};
    return p;
  }
  throw Error(ErrorKind::usage, "unknown preset " + name);
}

bool same_graph(const LabeledGraph& a, const LabeledGraph& b) {
  return a.space() == b.space() && a.edges() == b.edges();
}

Preset preset_from_graph(std::string name, const LabeledGraph& g) {
  const int n = g.n_vertices();
  const auto& levels = g.space().levels();
  const bool all_binary = std::all_of(levels.begin(), levels.end(), [](int d) { return d == 2; });
  if (n >= 4 && all_binary && same_graph(g, cycle_graph(n, binary(n)))) {
    return cycle_preset(std::move(name), n);
  }
  if (n >= 4 && levels[0] == 2 && levels[1] == 2) {
    std::vector<int> tail(levels.begin() + 2, levels.end());
    K2NShape shape(tail);
    if (same_graph(g, k2n_graph(shape))) return k2n_preset(std::move(name), tail);
  }
  return Preset(std::move(name), g);
}

Preset resolve_graph_argument(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return preset_from_graph(arg, graph_from_json(read_json_file(arg)));
  return resolve_preset(arg);
}

MarginMap preset_margin_map(const Preset& p) { return p.margin_override ? *p.margin_override : margin_map(p.graph); }

std::vector<Move> preset_moves(const Preset& p, MoveSource source) {
  if (source == MoveSource::preferred && p.moves) return *p.moves;
  if (source != MoveSource::global_markov) {
    if (p.family == Family::cycle) return cycle_markov_basis(p.cycle_length);
    if (p.family == Family::k2n) return k2n_markov_basis(*p.k2n_shape);
    if (source == MoveSource::family_basis) {
      throw Error(ErrorKind::unsupported, "no Markov basis is known for " + p.name);
    }
  }
  return glG_moves(p.graph);
}

std::vector<PrimeWitness> preset_primes(const Preset& p) {
  switch (p.family) {
    case Family::cycle: return cycle_prime_witnesses(p.cycle_length);
    case Family::k2n: return k2n_prime_witnesses(*p.k2n_shape);
    case Family::pyramid:
      return pyramid_prime_witnesses(cycle_prime_witnesses(p.cycle_length), StateSpace(binary(p.cycle_length)),
                                     p.graph.space().level(p.graph.space().n_vertices() - 1));
    case Family::none: break;
  }
  throw Error(ErrorKind::unsupported, "no prime decomposition is known for " + p.name);
}

}  // namespace fiberwalk
