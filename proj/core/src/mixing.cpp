#include "sparsecol/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <stdexcept>

#include "sparsecol/oracle.hpp"

namespace sparsecol {

std::string to_string(TreeLaw law) { return law == TreeLaw::Td ? "td" : "trd"; }

TreeLaw parse_tree_law(const std::string& s) {
  if (s == "td") return TreeLaw::Td;
  if (s == "trd") return TreeLaw::Trd;
  throw std::invalid_argument("unknown tree law \"" + s + "\"");
}

std::uint32_t RandomTree::height() const {
  std::uint32_t h = 0;
  for (auto x : depth) h = std::max(h, x);
  return h;
}

Graph RandomTree::to_graph() const {
  std::vector<Edge> edges;
  edges.reserve(size() ? size() - 1 : 0);
  for (Vertex v = 1; v < size(); ++v) edges.emplace_back(parent[v], v);
  return Graph::from_edges(size(), std::move(edges));
}

std::vector<Vertex> RandomTree::at_least(std::uint32_t l) const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < size(); ++v)
    if (depth[v] >= l) out.push_back(v);
  return out;
}

std::uint64_t binomial_draw(Rng& rng, std::uint64_t trials, double p) {
  if (!(p > 0.0) || trials == 0) return 0;
  if (p >= 1.0) return trials;
  if (p > 0.5) return trials - binomial_draw(rng, trials, 1.0 - p);
  const double u = rng.uniform();
  const double m = static_cast<double>(trials);
  const double odds = std::log(p) - std::log1p(-p);
  double log_term = m * std::log1p(-p);
  double cdf = 0.0;
  for (std::uint64_t k = 0;; ++k) {
    cdf += std::exp(log_term);
    if (u < cdf || k == trials) return k;
    const double kd = static_cast<double>(k);
    log_term += std::log((m - kd) / (kd + 1.0)) + odds;
    // Past the mode the remaining mass is below double resolution.
    if (kd > m * p && log_term < -745.0) return k;
  }
}

RandomTree sample_td_tree(std::size_t n, double d, std::uint32_t depth, TreeLaw law, std::uint64_t seed,
                          std::size_t max_vertices) {
  if (n < 1) throw std::invalid_argument("sample_td_tree: n must be positive");
  if (!(d >= 0.0) || d > static_cast<double>(n)) throw std::invalid_argument("sample_td_tree: need 0 <= d <= n");
  if (law == TreeLaw::Trd && n < 3) throw std::invalid_argument("sample_td_tree: Trd law needs n >= 3");
  const double p = d / static_cast<double>(n);
  const std::uint64_t trials = n - 1;
  Rng rng(seed, streams::kTree);

  RandomTree t;
  t.depth_limit = depth;
  t.law = law;
  t.parent.push_back(0);
  t.children.emplace_back();
  t.depth.push_back(0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.depth[i] >= depth) continue;
    std::uint64_t k = binomial_draw(rng, trials, p);
    if (law == TreeLaw::Trd && k == 1) {
      std::size_t guard = 0;
      while (k < 2) {
        if (++guard > 10'000'000) throw std::runtime_error("sample_td_tree: conditioning on two children failed");
        k = binomial_draw(rng, trials, p);
      }
    }
    if (t.size() + k > max_vertices) throw std::length_error("sample_td_tree: tree exceeds vertex cap");
    for (std::uint64_t j = 0; j < k; ++j) {
      const auto c = static_cast<Vertex>(t.size());
      t.parent.push_back(static_cast<Vertex>(i));
      t.children.emplace_back();
      t.depth.push_back(t.depth[i] + 1);
      t.children[i].push_back(c);
    }
  }
  return t;
}

RandomTree tree_from_graph(const Graph& tree, Vertex root, std::vector<Vertex>* relabel) {
  const Rooting r = root_connected(tree, root);
  if (r.kind != BallKind::Tree) throw std::invalid_argument("tree_from_graph: graph is not a tree");
  std::vector<Vertex> id(tree.num_vertices());
  for (std::size_t i = 0; i < r.order.size(); ++i) id[r.order[i]] = static_cast<Vertex>(i);
  RandomTree t;
  t.parent.resize(r.order.size());
  t.children.resize(r.order.size());
  t.depth.resize(r.order.size());
  for (std::size_t i = 0; i < r.order.size(); ++i) {
    const Vertex old = r.order[i];
    t.parent[i] = id[r.parent[old]];
    t.depth[i] = r.depth[old];
    for (Vertex c : r.children[old]) t.children[i].push_back(id[c]);
    std::sort(t.children[i].begin(), t.children[i].end());
  }
  t.depth_limit = t.height();
  if (relabel) *relabel = std::move(id);
  return t;
}

ColourRootResult colour_root(const RandomTree& tree, std::size_t colours, const FixedColours& fixed, Rng& rng,
                             Arithmetic arith) {
  ColourRootResult out;
  out.marginals = subtree_root_marginals(tree.to_graph(), 0, colours, fixed, arith);
  out.colours.resize(tree.size());
  for (Vertex u = 0; u < tree.size(); ++u) {
    if (auto c = fixed.get(u)) out.colours[u] = *c;
    else out.colours[u] = static_cast<Colour>(draw_index(rng, out.marginals[u]) + 1);
  }
  return out;
}

namespace {

/// Subtree on the vertices of depth <= l. BFS numbering makes it a prefix.
Graph truncate(const RandomTree& tree, std::uint32_t l, std::vector<Vertex>& layer) {
  std::size_t cut = 0;
  while (cut < tree.size() && tree.depth[cut] <= l) ++cut;
  std::vector<Edge> edges;
  for (Vertex v = 1; v < cut; ++v) edges.emplace_back(tree.parent[v], v);
  layer.clear();
  for (Vertex v = 0; v < cut; ++v)
    if (tree.depth[v] == l) layer.push_back(v);
  return Graph::from_edges(cut, std::move(edges));
}

}  // namespace

DisagreementResult root_disagreement_tv(const RandomTree& tree, std::size_t colours, std::uint32_t l,
                                        const DisagreementOptions& opts, std::uint64_t seed) {
  DisagreementResult out;
  std::vector<Vertex> layer;
  const Graph sys = truncate(tree, l, layer);
  if (layer.empty()) return out;

  const auto free = conditional_marginal(sys, colours, {}, 0, Arithmetic::Float).probabilities();
  auto marginal_for = [&](const std::vector<Colour>& layer_colours) -> std::optional<std::vector<double>> {
    FixedColours fc;
    for (std::size_t i = 0; i < layer.size(); ++i) fc.set(layer[i], layer_colours[i]);
    try {
      return conditional_marginal(sys, colours, fc, 0, Arithmetic::Float).probabilities();
    } catch (const InfeasibleBoundary&) {
      ++out.infeasible_skipped;
      return std::nullopt;
    }
  };

  const double space = std::pow(static_cast<double>(colours), static_cast<double>(layer.size()));
  if (opts.exhaustive_limit > 0 && space <= static_cast<double>(opts.exhaustive_limit)) {
    out.exhaustive = true;
    std::vector<std::vector<double>> seen;
    std::vector<Colour> a(layer.size(), 1);
    for (;;) {
      if (auto m = marginal_for(a)) {
        ++out.evaluated;
        out.value = std::max(out.value, tv_distance(*m, free));
        for (const auto& q : seen) out.value = std::max(out.value, tv_distance(*m, q));
        seen.push_back(std::move(*m));
      }
      std::size_t i = 0;
      while (i < a.size() && a[i] == colours) a[i++] = 1;
      if (i == a.size()) break;
      ++a[i];
    }
    return out;
  }

  Rng rng(seed, streams::kBoundary);
  auto draw_layer = [&] {
    const ListSample s = sample_exact(sys, colours, {}, rng, Arithmetic::Float);
    std::vector<Colour> a(layer.size());
    for (std::size_t i = 0; i < layer.size(); ++i) a[i] = *s.colouring.get(layer[i]);
    return a;
  };
  for (std::size_t k = 0; k < opts.pairs; ++k) {
    const auto m1 = marginal_for(draw_layer());
    const auto m2 = marginal_for(draw_layer());
    if (m1) out.value = std::max(out.value, tv_distance(*m1, free));
    if (m2) out.value = std::max(out.value, tv_distance(*m2, free));
    if (m1 && m2) {
      ++out.evaluated;
      out.value = std::max(out.value, tv_distance(*m1, *m2));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

UnfoldedTree unfold_unicyclic(const Graph& g, Vertex root) {
  if (root >= g.num_vertices()) throw std::invalid_argument("unfold_unicyclic: root out of range");
  if (!is_connected(g)) throw std::invalid_argument("unfold_unicyclic: graph is not connected");
  const Rooting r = root_connected(g, root);
  if (r.kind != BallKind::Unicyclic) throw std::invalid_argument("unfold_unicyclic: graph is " + to_string(r.kind));
  const std::size_t n = g.num_vertices();

  // Peel leaves; what remains is the cycle.
  std::vector<std::size_t> deg(n);
  std::deque<Vertex> leaves;
  std::vector<std::uint8_t> on_cycle(n, 1);
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] <= 1) leaves.push_back(v);
  }
  while (!leaves.empty()) {
    const Vertex v = leaves.front();
    leaves.pop_front();
    on_cycle[v] = 0;
    for (Vertex w : g.neighbors(v))
      if (on_cycle[w] && --deg[w] == 1) leaves.push_back(w);
  }

  Vertex u = root;
  for (Vertex v : r.order) {
    if (on_cycle[v]) {
      u = v;
      break;
    }
  }
  std::vector<Vertex> ring;
  for (Vertex w : g.neighbors(u))
    if (on_cycle[w]) ring.push_back(w);
  const Vertex w2 = std::max(ring[0], ring[1]);

  // Component of G - u that holds the rest of the cycle.
  std::vector<Vertex> copy_id(n, 0);
  std::vector<Vertex> comp;
  std::vector<std::uint8_t> seen(n, 0);
  seen[u] = 1;
  seen[w2] = 1;
  comp.push_back(w2);
  for (std::size_t i = 0; i < comp.size(); ++i)
    for (Vertex w : g.neighbors(comp[i]))
      if (!seen[w]) {
        seen[w] = 1;
        comp.push_back(w);
      }
  std::vector<std::uint8_t> in_comp(n, 0);
  for (std::size_t i = 0; i < comp.size(); ++i) {
    copy_id[comp[i]] = static_cast<Vertex>(n + i);
    in_comp[comp[i]] = 1;
  }

  std::vector<Edge> edges;
  const Edge dropped(u, w2);
  for (const Edge& e : g.edges()) {
    if (e == dropped) continue;
    edges.push_back(e);
    if (in_comp[e.u] && in_comp[e.v]) edges.emplace_back(copy_id[e.u], copy_id[e.v]);
  }
  edges.emplace_back(u, copy_id[w2]);
  const std::size_t total = n + comp.size();
  const Graph raw = Graph::from_edges(total, std::move(edges));

  std::vector<Vertex> source(total);
  for (Vertex v = 0; v < n; ++v) source[v] = v;
  for (std::size_t i = 0; i < comp.size(); ++i) source[n + i] = comp[i];

  UnfoldedTree out;
  std::vector<Vertex> relabel;
  out.rooted = tree_from_graph(raw, root, &relabel);
  out.tree = out.rooted.to_graph();
  out.h.resize(total);
  for (Vertex x = 0; x < total; ++x) out.h[relabel[x]] = source[x];
  return out;
}

UnfoldedTree unfold_unicyclic(const Ball& b) {
  if (b.kind != BallKind::Unicyclic) throw std::invalid_argument("unfold_unicyclic: ball is " + to_string(b.kind));
  UnfoldedTree out = unfold_unicyclic(b.local, 0);
  for (Vertex& x : out.h) x = b.vertices[x];
  return out;
}

}  // namespace sparsecol
