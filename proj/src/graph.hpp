#pragma once

#include "rational.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sf {

using VertexId = int;
using EdgeId = int;

// Error taxonomy shared across the library. The C API maps these onto status
// codes; inside the library they travel as exceptions.
enum class ErrorCode {
  invalid_argument,
  parse,
  infeasible,
  capacity,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct Edge {
  EdgeId id;
  VertexId u;
  VertexId v;
  Rational cost;
};

// Weighted undirected multigraph plus a Pair involution on vertices.
// Vertices are dense ids 0..n-1; parallel edges are distinguished by id;
// self-paired vertices (pair[v] == v) are non-terminals.
struct Instance {
  int vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<VertexId> pair;

  bool self_paired(VertexId v) const { return pair[v] == v; }
  Rational total_edge_cost() const;
};

struct Forest {
  std::set<EdgeId> edge_ids;

  bool contains(EdgeId e) const { return edge_ids.count(e) != 0; }
  bool operator==(const Forest& other) const = default;
};

// Per-vertex required-active-until time; the interface between all
// moat-growing executions. Total: one entry per vertex.
struct Fingerprint {
  std::vector<Rational> t;

  explicit Fingerprint(int n = 0) : t(static_cast<std::size_t>(n)) {}
  Rational& operator[](VertexId v) { return t[static_cast<std::size_t>(v)]; }
  const Rational& operator[](VertexId v) const { return t[static_cast<std::size_t>(v)]; }
  int size() const { return static_cast<int>(t.size()); }
  bool operator==(const Fingerprint& other) const { return t == other.t; }

  // pointwise >=
  bool dominates(const Fingerprint& other) const;
};

struct PathResult {
  bool reachable = false;
  Rational cost;
  std::vector<EdgeId> path;  // empty for u == v or unreachable
};

// Minimum-cost u-v path. Deterministic: ties broken by fewer hops, then by
// predecessor vertex and edge id, so equal-cost alternatives never depend on
// container order.
PathResult shortest_path(const Instance& instance, VertexId u, VertexId v);

// Distances from a single source to every vertex (unreachable ones absent).
std::vector<std::optional<Rational>> shortest_distances(const Instance& instance, VertexId source);

Rational forest_cost(const Instance& instance, const Forest& forest);

// True iff every vertex is connected to its pair within the forest.
bool check_feasible(const Instance& instance, const Forest& forest);

void validate_instance(const Instance& instance);

Instance parse_instance(std::istream& in);
Instance parse_instance_text(const std::string& text);
std::string serialize_instance(const Instance& instance);

// Turns a Steiner Tree instance (graph + terminal set) into a Steiner Forest
// instance: |terminals|-1 duplicates of the root, each joined to the root by
// a zero-cost edge and paired with one non-root terminal.
Instance steiner_tree_embed(const Instance& graph, const std::vector<VertexId>& terminals,
                            VertexId root);

}  // namespace sf
