#include "sparsecol/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <queue>
#include <sstream>

#include "sparsecol/rng.hpp"

namespace sparsecol {

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges) {
  for (const Edge& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (e.v >= n) throw std::invalid_argument("edge endpoint " + std::to_string(e.v) + " out of range");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (const Edge& e : edges) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.targets_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : edges) {
    g.targets_[cursor[e.u]++] = e.v;
    g.targets_[cursor[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
  }
  g.edges_ = std::move(edges);
  return g;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (Vertex v = 0; v < num_vertices(); ++v) best = std::max(best, degree(v));
  return best;
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  if (a >= num_vertices() || b >= num_vertices()) return false;
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

// ---------------------------------------------------------------------------

Graph generate_gnp(std::size_t n, double d, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("generate_gnp: n must be at least 1");
  if (!(d > 0.0)) throw std::invalid_argument("generate_gnp: d must be positive");
  const double p = d / static_cast<double>(n);
  if (p > 1.0) throw std::invalid_argument("generate_gnp: d/n exceeds 1");

  std::vector<Edge> edges;
  if (p == 1.0) {
    for (Vertex v = 1; v < n; ++v)
      for (Vertex w = 0; w < v; ++w) edges.emplace_back(w, v);
    return Graph::from_edges(n, std::move(edges));
  }

  // Batagelj-Brandes skipping over pairs (w, v), w < v, in row-major order.
  Rng rng(seed, streams::kGraph);
  edges.reserve(static_cast<std::size_t>(d * static_cast<double>(n) / 2.0 * 1.1) + 16);
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double r = rng.uniform();
    const double skip = std::floor(std::log1p(-r) / log_q);
    const double capped = std::min(skip, static_cast<double>(nn) * static_cast<double>(nn));
    w += 1 + static_cast<std::int64_t>(capped);
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.emplace_back(static_cast<Vertex>(w), static_cast<Vertex>(v));
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph read_edge_list(std::istream& in) {
  std::size_t n = 0;
  std::size_t m = 0;
  if (!(in >> n >> m)) throw std::invalid_argument("edge list: missing header \"n m\"");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    long long a = 0;
    long long b = 0;
    if (!(in >> a >> b)) throw std::invalid_argument("edge list: expected " + std::to_string(m) + " edges");
    if (a < 0 || b < 0) throw std::invalid_argument("edge list: negative vertex id");
    edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 1; i < n; ++i) e.emplace_back(i - 1, i);
  return Graph::from_edges(n, std::move(e));
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: n must be at least 3");
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i) e.emplace_back(i, static_cast<Vertex>((i + 1) % n));
  return Graph::from_edges(n, std::move(e));
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, std::move(e));
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::from_edges(n, std::move(e));
}

Graph petersen_graph() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);          // outer cycle
    e.emplace_back(i, i + 5);                // spokes
    e.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
  }
  return Graph::from_edges(10, std::move(e));
}

Graph random_tree(std::size_t n, Rng& rng) {
  std::vector<Vertex> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = static_cast<Vertex>(i);
  for (std::size_t i = n; i > 1; --i) std::swap(label[i - 1], label[rng.below(i)]);
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.emplace_back(label[i], label[rng.below(i)]);
  return Graph::from_edges(n, std::move(edges));
}

Graph random_unicyclic(std::size_t n, Rng& rng) {
  if (n < 3) throw std::invalid_argument("random_unicyclic: need at least 3 vertices");
  const Graph t = random_tree(n, rng);
  for (;;) {
    const auto a = static_cast<Vertex>(rng.below(n));
    const auto b = static_cast<Vertex>(rng.below(n));
    if (a == b || t.has_edge(a, b)) continue;
    std::vector<Edge> edges = t.edges();
    edges.emplace_back(a, b);
    return Graph::from_edges(n, std::move(edges));
  }
}

// ---------------------------------------------------------------------------

std::string to_string(BallKind kind) {
  switch (kind) {
    case BallKind::Tree: return "tree";
    case BallKind::Unicyclic: return "unicyclic";
    case BallKind::Complex: return "complex";
  }
  return "unknown";
}

namespace {

BallKind kind_from_excess(std::size_t vertices, std::size_t edges) {
  if (edges + 1 == vertices) return BallKind::Tree;
  if (edges == vertices) return BallKind::Unicyclic;
  return BallKind::Complex;
}

}  // namespace

Rooting root_connected(const Graph& g, Vertex root) {
  const std::size_t n = g.num_vertices();
  if (root >= n) throw std::invalid_argument("root_connected: root out of range");
  Rooting r;
  r.root = root;
  r.parent.assign(n, root);
  r.depth.assign(n, std::numeric_limits<std::uint32_t>::max());
  r.children.assign(n, {});
  r.order.reserve(n);
  r.depth[root] = 0;
  r.order.push_back(root);
  for (std::size_t head = 0; head < r.order.size(); ++head) {
    const Vertex u = r.order[head];
    for (Vertex w : g.neighbors(u)) {
      if (r.depth[w] != std::numeric_limits<std::uint32_t>::max()) continue;
      r.depth[w] = r.depth[u] + 1;
      r.parent[w] = u;
      r.children[u].push_back(w);
      r.order.push_back(w);
    }
  }
  if (r.order.size() != n) throw std::invalid_argument("root_connected: graph is disconnected");
  r.kind = kind_from_excess(n, g.num_edges());
  if (r.kind == BallKind::Unicyclic) {
    for (const Edge& e : g.edges()) {
      if (r.parent[e.u] != e.v && r.parent[e.v] != e.u) {
        r.cycle_edge = e;
        break;
      }
    }
  }
  return r;
}

BallKind classify_connected(const Graph& g) {
  return kind_from_excess(g.num_vertices(), g.num_edges());
}

std::vector<std::uint32_t> components(const Graph& g, std::size_t* count) {
  const std::size_t n = g.num_vertices();
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> comp(n, kUnset);
  std::uint32_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] != kUnset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(u)) {
        if (comp[w] == kUnset) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

bool is_connected(const Graph& g) {
  std::size_t c = 0;
  components(g, &c);
  return c <= 1;
}

std::size_t diameter(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::size_t best = 0;
  std::vector<std::uint32_t> dist(n);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<std::uint32_t>::max());
    queue.clear();
    dist[s] = 0;
    queue.push_back(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      best = std::max<std::size_t>(best, dist[u]);
      for (Vertex w : g.neighbors(u)) {
        if (dist[w] == std::numeric_limits<std::uint32_t>::max()) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
  }
  return best;
}

std::size_t cyclomatic_number(const Graph& g) {
  std::size_t c = 0;
  components(g, &c);
  return g.num_edges() + c - g.num_vertices();
}

// ---------------------------------------------------------------------------

std::optional<Vertex> Ball::local_index(Vertex host) const {
  auto it = std::lower_bound(index_.begin(), index_.end(), std::pair<Vertex, Vertex>{host, 0});
  if (it == index_.end() || it->first != host) return std::nullopt;
  return it->second;
}

std::uint32_t Ball::depth_of(Vertex host) const {
  auto idx = local_index(host);
  if (!idx) throw std::out_of_range("vertex not in ball");
  return depth[*idx];
}

BallExtractor::BallExtractor(const Graph& g)
    : g_(&g), stamp_(g.num_vertices(), 0), dist_(g.num_vertices(), 0) {}

void BallExtractor::explore(Vertex center, std::uint32_t radius) {
  if (center >= g_->num_vertices()) throw std::invalid_argument("ball: center out of range");
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  frontier_.clear();
  frontier_.push_back(center);
  stamp_[center] = epoch_;
  dist_[center] = 0;
  for (std::size_t head = 0; head < frontier_.size(); ++head) {
    const Vertex u = frontier_[head];
    if (dist_[u] == radius) continue;
    for (Vertex w : g_->neighbors(u)) {
      if (stamp_[w] == epoch_) continue;
      stamp_[w] = epoch_;
      dist_[w] = dist_[u] + 1;
      frontier_.push_back(w);
    }
  }
}

BallKind BallExtractor::classify(Vertex center, std::uint32_t radius) {
  explore(center, radius);
  std::size_t twice_edges = 0;
  for (Vertex u : frontier_)
    for (Vertex w : g_->neighbors(u))
      if (stamp_[w] == epoch_) ++twice_edges;
  return kind_from_excess(frontier_.size(), twice_edges / 2);
}

Ball BallExtractor::extract(Vertex center, std::uint32_t radius) {
  explore(center, radius);
  Ball b;
  b.center = center;
  b.radius = radius;
  b.vertices = frontier_;
  const std::size_t k = b.vertices.size();
  b.depth.resize(k);
  b.index_.reserve(k);
  for (Vertex i = 0; i < k; ++i) {
    b.depth[i] = dist_[b.vertices[i]];
    b.index_.emplace_back(b.vertices[i], i);
  }
  std::sort(b.index_.begin(), b.index_.end());

  std::vector<Edge> local_edges;
  for (Vertex i = 0; i < k; ++i) {
    const Vertex u = b.vertices[i];
    for (Vertex w : g_->neighbors(u)) {
      if (w <= u || stamp_[w] != epoch_) continue;
      b.induced_edges.emplace_back(u, w);
    }
  }
  std::sort(b.induced_edges.begin(), b.induced_edges.end());
  local_edges.reserve(b.induced_edges.size());
  for (const Edge& e : b.induced_edges) local_edges.emplace_back(*b.local_index(e.u), *b.local_index(e.v));
  b.local = Graph::from_edges(k, std::move(local_edges));
  b.kind = kind_from_excess(k, b.induced_edges.size());
  if (b.kind == BallKind::Unicyclic) {
    const Rooting r = root_connected(b.local, 0);
    b.cycle_edge = Edge(b.vertices[r.cycle_edge->u], b.vertices[r.cycle_edge->v]);
  }
  return b;
}

Ball ball(const Graph& g, Vertex v, std::uint32_t radius) {
  BallExtractor ex(g);
  return ex.extract(v, radius);
}

BallHistogram classify_all_balls(const Graph& g, std::uint32_t radius) {
  BallHistogram h;
  BallExtractor ex(g);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    switch (ex.classify(v, radius)) {
      case BallKind::Tree: ++h.tree; break;
      case BallKind::Unicyclic: ++h.unicyclic; break;
      case BallKind::Complex:
        ++h.complex;
        if (!h.first_complex) h.first_complex = v;
        break;
    }
  }
  return h;
}

double radius_epsilon(double d) {
  const double base = std::numbers::e * std::numbers::e * d / 2.0;
  if (!(base > 1.0)) throw std::invalid_argument("radius_for: d must exceed 2/e^2");
  return 0.9 / (4.0 * std::log(base));
}

std::uint32_t radius_for(double n, double d) {
  if (!(n >= 2.0)) throw std::invalid_argument("radius_for: n must be at least 2");
  const double eps = radius_epsilon(d);
  const double r = std::floor(eps * std::log(n));
  return r < 1.0 ? 1u : static_cast<std::uint32_t>(r);
}

}  // namespace sparsecol
