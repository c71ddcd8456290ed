#include "graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <queue>
#include <sstream>
#include <tuple>

namespace sf {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

std::vector<std::vector<std::pair<VertexId, EdgeId>>> adjacency(const Instance& g) {
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(
      static_cast<std::size_t>(g.vertex_count));
  for (const Edge& e : g.edges) {
    adj[e.u].emplace_back(e.v, e.id);
    adj[e.v].emplace_back(e.u, e.id);
  }
  return adj;
}

void require_vertex(const Instance& g, VertexId v, const char* what) {
  if (v < 0 || v >= g.vertex_count)
    throw Error(ErrorCode::invalid_argument, std::string(what) + ": vertex id out of range");
}

}  // namespace

Rational Instance::total_edge_cost() const {
  Rational total = 0;
  for (const Edge& e : edges) total += e.cost;
  return total;
}

bool Fingerprint::dominates(const Fingerprint& other) const {
  if (t.size() != other.t.size()) return false;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] < other.t[i]) return false;
  return true;
}

PathResult shortest_path(const Instance& instance, VertexId u, VertexId v) {
  require_vertex(instance, u, "shortest_path");
  require_vertex(instance, v, "shortest_path");
  PathResult result;
  if (u == v) {
    result.reachable = true;
    result.cost = 0;
    return result;
  }
  auto adj = adjacency(instance);
  int n = instance.vertex_count;
  std::vector<std::optional<Rational>> dist(static_cast<std::size_t>(n));
  std::vector<long long> hops(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<VertexId, EdgeId>> prev(static_cast<std::size_t>(n), {-1, -1});
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  dist[u] = Rational(0);
  for (;;) {
    int best = -1;
    for (int x = 0; x < n; ++x) {
      if (done[x] || !dist[x]) continue;
      if (best == -1 || *dist[x] < *dist[best] ||
          (*dist[x] == *dist[best] && hops[x] < hops[best]))
        best = x;
    }
    if (best == -1) break;
    done[best] = 1;
    if (best == v) break;
    for (auto [w, eid] : adj[best]) {
      if (done[w]) continue;
      Rational cand = *dist[best] + instance.edges[eid].cost;
      long long cand_hops = hops[best] + 1;
      bool better = !dist[w] || cand < *dist[w];
      if (!better && dist[w] && cand == *dist[w]) {
        if (cand_hops < hops[w]) better = true;
        else if (cand_hops == hops[w] &&
                 std::make_pair(best, eid) < prev[w])
          better = true;
      }
      if (better) {
        dist[w] = cand;
        hops[w] = cand_hops;
        prev[w] = {best, eid};
      }
    }
  }
  if (!dist[v]) return result;  // unreachable
  result.reachable = true;
  result.cost = *dist[v];
  for (VertexId x = v; x != u;) {
    result.path.push_back(prev[x].second);
    x = prev[x].first;
  }
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

std::vector<std::optional<Rational>> shortest_distances(const Instance& instance,
                                                        VertexId source) {
  require_vertex(instance, source, "shortest_distances");
  auto adj = adjacency(instance);
  int n = instance.vertex_count;
  std::vector<std::optional<Rational>> dist(static_cast<std::size_t>(n));
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  dist[source] = Rational(0);
  for (;;) {
    int best = -1;
    for (int x = 0; x < n; ++x) {
      if (done[x] || !dist[x]) continue;
      if (best == -1 || *dist[x] < *dist[best]) best = x;
    }
    if (best == -1) break;
    done[best] = 1;
    for (auto [w, eid] : adj[best]) {
      if (done[w]) continue;
      Rational cand = *dist[best] + instance.edges[eid].cost;
      if (!dist[w] || cand < *dist[w]) dist[w] = cand;
    }
  }
  return dist;
}

Rational forest_cost(const Instance& instance, const Forest& forest) {
  Rational total = 0;
  for (EdgeId e : forest.edge_ids) {
    if (e < 0 || e >= static_cast<EdgeId>(instance.edges.size()))
      throw Error(ErrorCode::invalid_argument, "forest_cost: unknown edge id");
    total += instance.edges[e].cost;
  }
  return total;
}

bool check_feasible(const Instance& instance, const Forest& forest) {
  Dsu dsu(instance.vertex_count);
  for (EdgeId e : forest.edge_ids) {
    if (e < 0 || e >= static_cast<EdgeId>(instance.edges.size()))
      throw Error(ErrorCode::invalid_argument, "check_feasible: unknown edge id");
    dsu.unite(instance.edges[e].u, instance.edges[e].v);
  }
  for (VertexId v = 0; v < instance.vertex_count; ++v)
    if (dsu.find(v) != dsu.find(instance.pair[v])) return false;
  return true;
}

void validate_instance(const Instance& instance) {
  if (instance.vertex_count < 0)
    throw Error(ErrorCode::invalid_argument, "negative vertex count");
  if (static_cast<int>(instance.pair.size()) != instance.vertex_count)
    throw Error(ErrorCode::invalid_argument, "pair map must cover every vertex");
  for (VertexId v = 0; v < instance.vertex_count; ++v) {
    VertexId p = instance.pair[v];
    if (p < 0 || p >= instance.vertex_count)
      throw Error(ErrorCode::invalid_argument, "pair target out of range");
    if (instance.pair[p] != v)
      throw Error(ErrorCode::invalid_argument,
                  "pair map is not an involution at vertex " + std::to_string(v));
  }
  for (std::size_t i = 0; i < instance.edges.size(); ++i) {
    const Edge& e = instance.edges[i];
    if (e.id != static_cast<EdgeId>(i))
      throw Error(ErrorCode::invalid_argument, "edge ids must be dense and ordered");
    if (e.u < 0 || e.u >= instance.vertex_count || e.v < 0 || e.v >= instance.vertex_count)
      throw Error(ErrorCode::invalid_argument, "edge endpoint out of range");
    if (e.u == e.v)
      throw Error(ErrorCode::invalid_argument,
                  "self-loop at vertex " + std::to_string(e.u));
    if (e.cost < 0)
      throw Error(ErrorCode::invalid_argument,
                  "negative cost on edge " + std::to_string(e.id));
  }
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void parse_fail(int line_no, const std::string& message) {
  throw Error(ErrorCode::parse, "line " + std::to_string(line_no) + ": " + message);
}

}  // namespace

Instance parse_instance(std::istream& in) {
  Instance instance;
  bool seen_n = false;
  bool eof_marker = false;
  enum class Section { none, graph, pairs } section = Section::none;
  std::vector<std::pair<VertexId, VertexId>> pair_lines;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (eof_marker) parse_fail(line_no, "content after EOF");
    const std::string& head = tokens[0];
    if (head == "SECTION") {
      if (tokens.size() != 2) parse_fail(line_no, "SECTION expects a name");
      if (tokens[1] == "Graph") section = Section::graph;
      else if (tokens[1] == "Pairs") section = Section::pairs;
      else parse_fail(line_no, "unknown section '" + tokens[1] + "'");
    } else if (head == "N") {
      if (section != Section::graph) parse_fail(line_no, "N outside SECTION Graph");
      if (tokens.size() != 2) parse_fail(line_no, "N expects one integer");
      try {
        instance.vertex_count = std::stoi(tokens[1]);
      } catch (const std::exception&) {
        parse_fail(line_no, "bad vertex count '" + tokens[1] + "'");
      }
      if (instance.vertex_count < 0) parse_fail(line_no, "negative vertex count");
      seen_n = true;
    } else if (head == "E") {
      if (section != Section::graph) parse_fail(line_no, "E outside SECTION Graph");
      if (!seen_n) parse_fail(line_no, "E before N");
      if (tokens.size() != 4) parse_fail(line_no, "E expects: E <u> <v> <cost>");
      Edge e;
      e.id = static_cast<EdgeId>(instance.edges.size());
      try {
        e.u = std::stoi(tokens[1]);
        e.v = std::stoi(tokens[2]);
      } catch (const std::exception&) {
        parse_fail(line_no, "bad endpoint");
      }
      if (e.u < 0 || e.u >= instance.vertex_count || e.v < 0 || e.v >= instance.vertex_count)
        parse_fail(line_no, "edge endpoint out of range");
      if (e.u == e.v) parse_fail(line_no, "self-loop");
      try {
        e.cost = rat_parse(tokens[3]);
      } catch (const std::exception& ex) {
        parse_fail(line_no, ex.what());
      }
      if (e.cost < 0) parse_fail(line_no, "negative cost");
      instance.edges.push_back(std::move(e));
    } else if (head == "P") {
      if (section != Section::pairs) parse_fail(line_no, "P outside SECTION Pairs");
      if (!seen_n) parse_fail(line_no, "P before N");
      if (tokens.size() != 3) parse_fail(line_no, "P expects: P <u> <v>");
      VertexId a, b;
      try {
        a = std::stoi(tokens[1]);
        b = std::stoi(tokens[2]);
      } catch (const std::exception&) {
        parse_fail(line_no, "bad vertex id");
      }
      if (a < 0 || a >= instance.vertex_count || b < 0 || b >= instance.vertex_count)
        parse_fail(line_no, "pair vertex out of range");
      pair_lines.emplace_back(a, b);
    } else if (head == "EOF") {
      eof_marker = true;
    } else {
      parse_fail(line_no, "unknown directive '" + head + "'");
    }
  }
  if (!seen_n) throw Error(ErrorCode::parse, "missing N line");
  instance.pair.assign(static_cast<std::size_t>(instance.vertex_count), -1);
  for (auto [a, b] : pair_lines) {
    // Symmetric closure: "P a b" implies pair[b] = a. Conflicts are errors.
    if (instance.pair[a] != -1 && instance.pair[a] != b)
      throw Error(ErrorCode::parse,
                  "non-involutive pair section at vertex " + std::to_string(a));
    if (instance.pair[b] != -1 && instance.pair[b] != a)
      throw Error(ErrorCode::parse,
                  "non-involutive pair section at vertex " + std::to_string(b));
    instance.pair[a] = b;
    instance.pair[b] = a;
  }
  for (VertexId v = 0; v < instance.vertex_count; ++v)
    if (instance.pair[v] == -1) instance.pair[v] = v;
  validate_instance(instance);
  return instance;
}

Instance parse_instance_text(const std::string& text) {
  std::istringstream ss(text);
  return parse_instance(ss);
}

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  out << "SECTION Graph\n";
  out << "N " << instance.vertex_count << "\n";
  for (const Edge& e : instance.edges)
    out << "E " << e.u << " " << e.v << " " << rat_str(e.cost) << "\n";
  out << "SECTION Pairs\n";
  for (VertexId v = 0; v < instance.vertex_count; ++v)
    if (instance.pair[v] > v) out << "P " << v << " " << instance.pair[v] << "\n";
  out << "EOF\n";
  return out.str();
}

Instance steiner_tree_embed(const Instance& graph, const std::vector<VertexId>& terminals,
                            VertexId root) {
  for (VertexId t : terminals) require_vertex(graph, t, "steiner_tree_embed");
  require_vertex(graph, root, "steiner_tree_embed");
  if (std::find(terminals.begin(), terminals.end(), root) == terminals.end())
    throw Error(ErrorCode::invalid_argument, "steiner_tree_embed: root not a terminal");
  if (terminals.size() < 2)
    throw Error(ErrorCode::invalid_argument, "steiner_tree_embed: need at least 2 terminals");
  std::set<VertexId> seen(terminals.begin(), terminals.end());
  if (seen.size() != terminals.size())
    throw Error(ErrorCode::invalid_argument, "steiner_tree_embed: duplicate terminal");

  Instance out;
  out.vertex_count = graph.vertex_count;
  out.edges = graph.edges;
  out.pair.assign(static_cast<std::size_t>(graph.vertex_count), -1);
  for (VertexId v = 0; v < graph.vertex_count; ++v) out.pair[v] = v;
  for (VertexId t : terminals) {
    if (t == root) continue;
    VertexId dup = out.vertex_count++;
    out.pair.push_back(dup);
    Edge link;
    link.id = static_cast<EdgeId>(out.edges.size());
    link.u = root;
    link.v = dup;
    link.cost = 0;
    out.edges.push_back(std::move(link));
    out.pair[dup] = t;
    out.pair[t] = dup;
  }
  validate_instance(out);
  return out;
}

}  // namespace sf
