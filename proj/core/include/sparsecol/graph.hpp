#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sparsecol/common.hpp"
#include "sparsecol/rng.hpp"

namespace sparsecol {

/// Unordered vertex pair stored with first < second.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable undirected simple graph on vertices 0..n-1 with sorted
/// adjacency (CSR layout).
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an arbitrary edge list. Duplicates are merged;
  /// self-loops and out-of-range endpoints are rejected.
  static Graph from_edges(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const;

  /// Edges sorted lexicographically, each with u < v.
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(Vertex a, Vertex b) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
  std::vector<Edge> edges_;
};

// ---------------------------------------------------------------------------
// Generation and I/O

/// Samples G(n, d/n): each of the n(n-1)/2 pairs is an edge independently
/// with probability d/n. Uses geometric skipping, so the cost is O(n + m).
Graph generate_gnp(std::size_t n, double d, std::uint64_t seed);

/// Edge-list text format: "n m" on the first line, then m lines "u v".
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

// ---------------------------------------------------------------------------
// Small named graphs used throughout tests and the verification suite.

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph complete_graph(std::size_t n);
Graph petersen_graph();

/// Random recursive tree (vertex i > 0 joins a uniform earlier vertex),
/// relabelled by a uniform permutation.
Graph random_tree(std::size_t n, Rng& rng);
/// random_tree plus one edge between a uniform non-adjacent pair; n >= 3.
Graph random_unicyclic(std::size_t n, Rng& rng);

// ---------------------------------------------------------------------------
// Structure

enum class BallKind { Tree, Unicyclic, Complex };

std::string to_string(BallKind kind);

/// Structure of a connected graph seen from a root: BFS parent/depth arrays
/// and the classification by edge excess. For unicyclic graphs
/// `cycle_edge` is the unique edge not used by the BFS tree.
struct Rooting {
  Vertex root = 0;
  std::vector<Vertex> order;            // BFS order, order[0] == root
  std::vector<Vertex> parent;           // parent[root] == root
  std::vector<std::uint32_t> depth;
  std::vector<std::vector<Vertex>> children;  // ascending vertex id
  BallKind kind = BallKind::Tree;
  std::optional<Edge> cycle_edge;
};

/// Roots a connected graph. Throws std::invalid_argument if `g` is
/// disconnected.
Rooting root_connected(const Graph& g, Vertex root);

/// Classification of a connected graph by edge excess.
BallKind classify_connected(const Graph& g);

bool is_connected(const Graph& g);

/// Connected components; component id per vertex, ids assigned in order of
/// the smallest vertex.
std::vector<std::uint32_t> components(const Graph& g, std::size_t* count = nullptr);

/// Largest eccentricity over all components (BFS from every vertex).
std::size_t diameter(const Graph& g);

/// Number of independent cycles, |E| - |V| + #components.
std::size_t cyclomatic_number(const Graph& g);

// ---------------------------------------------------------------------------
// Balls

/// Induced subgraph on all vertices within `radius` hops of `center`.
///
/// `vertices` is in BFS order from the center (neighbors expanded in
/// ascending id), so vertices[0] == center, and `depth` is parallel to it. `local` is the
/// induced subgraph relabelled by position in `vertices`.
struct Ball {
  Vertex center = 0;
  std::uint32_t radius = 0;
  std::vector<Vertex> vertices;
  std::vector<std::uint32_t> depth;
  std::vector<Edge> induced_edges;  // host ids, sorted
  BallKind kind = BallKind::Tree;
  std::optional<Edge> cycle_edge;   // host ids; present iff Unicyclic
  Graph local;

  std::size_t size() const { return vertices.size(); }
  bool contains(Vertex host) const { return local_index(host).has_value(); }
  std::optional<Vertex> local_index(Vertex host) const;
  std::uint32_t depth_of(Vertex host) const;

 private:
  friend class BallExtractor;
  std::vector<std::pair<Vertex, Vertex>> index_;  // (host, local) sorted by host
};

/// Reusable ball extraction over a fixed host graph. Keeps O(n) scratch
/// space so repeated extraction costs O(ball size) rather than O(n).
class BallExtractor {
 public:
  explicit BallExtractor(const Graph& g);

  Ball extract(Vertex center, std::uint32_t radius);

  /// Classification only; skips building the local graph.
  BallKind classify(Vertex center, std::uint32_t radius);

 private:
  void explore(Vertex center, std::uint32_t radius);

  const Graph* g_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> dist_;
  std::uint32_t epoch_ = 0;
  std::vector<Vertex> frontier_;
};

Ball ball(const Graph& g, Vertex v, std::uint32_t radius);

struct BallHistogram {
  std::size_t tree = 0;
  std::size_t unicyclic = 0;
  std::size_t complex = 0;
  /// Smallest center whose ball is Complex, if any.
  std::optional<Vertex> first_complex;
};

BallHistogram classify_all_balls(const Graph& g, std::uint32_t radius);

/// Exponent multiplier 0.9 / (4 ln(e^2 d / 2)).
double radius_epsilon(double d);

/// max(1, floor(eps * ln n)); natural logarithm throughout.
std::uint32_t radius_for(double n, double d);

}  // namespace sparsecol
