#include "sparsecol/treedp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sparsecol {
namespace {

using Allowed = std::vector<std::uint8_t>;  // vertex-major, S entries per vertex

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct ExactArith {
  using Value = BigInt;

  struct Message {
    std::vector<BigInt> w;
    BigInt total;
    bool zero() const { return total == 0; }
  };

  static void init(Message& m, const std::uint8_t* allowed, std::size_t colours) {
    m.w.resize(colours);
    for (std::size_t c = 0; c < colours; ++c) m.w[c] = allowed[c] ? 1 : 0;
  }

  static void absorb(Message& m, const Message& child) {
    for (std::size_t c = 0; c < m.w.size(); ++c)
      if (m.w[c] != 0) m.w[c] *= child.total - child.w[c];
  }

  static void finish(Message& m) {
    m.total = 0;
    for (const BigInt& x : m.w) m.total += x;
  }

  static WeightVector to_weights(const Message& m) { return WeightVector::exact(m.w); }
  static const std::vector<BigInt>& weights(const Message& m) { return m.w; }

  class Acc {
   public:
    explicit Acc(std::size_t colours) : sum_(colours, 0) {}
    void add(const Message& m) {
      for (std::size_t c = 0; c < sum_.size(); ++c) sum_[c] += m.w[c];
    }
    WeightVector result() const { return WeightVector::exact(sum_); }

   private:
    std::vector<BigInt> sum_;
  };

  static CountValue count_of(const WeightVector& w) { return CountValue::exact(w.total()); }

  /// Total mass of each entry of `totals` as drawable weights.
  static std::vector<BigInt> to_draw_weights(const std::vector<BigInt>& totals) { return totals; }
  static BigInt total_of(const Message& m) { return m.total; }
};

struct FloatArith {
  using Value = double;

  struct Message {
    std::vector<double> w;  // normalized unless zero
    double log_scale = 0.0;
    bool is_zero = false;
    bool zero() const { return is_zero; }
  };

  static void init(Message& m, const std::uint8_t* allowed, std::size_t colours) {
    m.w.resize(colours);
    for (std::size_t c = 0; c < colours; ++c) m.w[c] = allowed[c] ? 1.0 : 0.0;
    m.log_scale = 0.0;
    m.is_zero = false;
  }

  static void absorb(Message& m, const Message& child) {
    if (m.is_zero) return;
    if (child.is_zero) {
      m.is_zero = true;
      return;
    }
    m.log_scale += child.log_scale;
    const std::size_t colours = m.w.size();
    // 1 - p loses precision when p is near 1; sum the other entries instead.
    std::size_t heavy = colours;
    for (std::size_t c = 0; c < colours; ++c)
      if (child.w[c] > 0.5) heavy = c;
    double rest = 0.0;
    if (heavy < colours)
      for (std::size_t c = 0; c < colours; ++c)
        if (c != heavy) rest += child.w[c];
    double mx = 0.0;
    for (std::size_t c = 0; c < colours; ++c) {
      const double f = c == heavy ? rest : 1.0 - child.w[c];
      m.w[c] *= f;
      mx = std::max(mx, m.w[c]);
    }
    if (mx == 0.0) {
      m.is_zero = true;
    } else if (mx < 1e-150) {
      for (double& x : m.w) x /= mx;
      m.log_scale += std::log(mx);
    }
  }

  static void finish(Message& m) {
    double s = 0.0;
    if (!m.is_zero)
      for (double x : m.w) s += x;
    if (m.is_zero || s == 0.0) {
      m.is_zero = true;
      std::fill(m.w.begin(), m.w.end(), 0.0);
      m.log_scale = kNegInf;
      return;
    }
    for (double& x : m.w) x /= s;
    m.log_scale += std::log(s);
  }

  static WeightVector to_weights(const Message& m) {
    if (m.is_zero) return WeightVector::floating(std::vector<double>(m.w.size(), 0.0));
    return WeightVector::floating(m.w, m.log_scale);
  }
  static const std::vector<double>& weights(const Message& m) { return m.w; }

  class Acc {
   public:
    explicit Acc(std::size_t colours) : colours_(colours) {}
    void add(const Message& m) {
      if (!m.is_zero) parts_.emplace_back(m.log_scale, m.w);
    }
    WeightVector result() const {
      std::vector<double> w(colours_, 0.0);
      if (parts_.empty()) return WeightVector::floating(std::move(w));
      double top = kNegInf;
      for (const auto& p : parts_) top = std::max(top, p.first);
      for (const auto& [ls, v] : parts_) {
        const double f = std::exp(ls - top);
        for (std::size_t c = 0; c < colours_; ++c) w[c] += f * v[c];
      }
      return WeightVector::floating(std::move(w), top);
    }

   private:
    std::size_t colours_;
    std::vector<std::pair<double, std::vector<double>>> parts_;
  };

  static CountValue count_of(const WeightVector& w) { return CountValue::from_log(w.log_normalizer()); }

  static std::vector<double> to_draw_weights(const std::vector<double>& log_totals) {
    double top = kNegInf;
    for (double x : log_totals) top = std::max(top, x);
    std::vector<double> out(log_totals.size(), 0.0);
    if (top == kNegInf) return out;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::exp(log_totals[i] - top);
    return out;
  }
  static double total_of(const Message& m) { return m.is_zero ? kNegInf : m.log_scale; }
};

template <class A>
class Engine {
 public:
  using Message = typename A::Message;

  Engine(const Rooting& r, std::size_t colours, Allowed allowed)
      : r_(r), colours_(colours), allowed_(std::move(allowed)), msgs_(r.order.size()) {}

  void compute_all() {
    for (auto it = r_.order.rbegin(); it != r_.order.rend(); ++it) compute(*it);
  }

  void recompute_upward(Vertex x) {
    for (;;) {
      compute(x);
      if (x == r_.root) return;
      x = r_.parent[x];
    }
  }

  const Message& message(Vertex u) const { return msgs_[u]; }
  std::uint8_t* row(Vertex u) { return allowed_.data() + static_cast<std::size_t>(u) * colours_; }
  std::size_t colours() const { return colours_; }
  const Rooting& rooting() const { return r_; }

 private:
  void compute(Vertex u) {
    Message& m = msgs_[u];
    A::init(m, row(u), colours_);
    for (Vertex w : r_.children[u]) A::absorb(m, msgs_[w]);
    A::finish(m);
  }

  const Rooting& r_;
  std::size_t colours_;
  Allowed allowed_;
  std::vector<Message> msgs_;
};

/// Runs visit(cb) once for every allowed colour cb of the far endpoint b of
/// the non-tree edge {a, b}, with b fixed to cb and cb forbidden at a.
/// Leaves the engine as it found it.
template <class A, class Visit>
void for_each_cycle_colour(Engine<A>& e, Edge cycle, Visit visit) {
  const Vertex a = cycle.u;
  const Vertex b = cycle.v;
  const std::size_t S = e.colours();
  const std::vector<std::uint8_t> saved_a(e.row(a), e.row(a) + S);
  const std::vector<std::uint8_t> saved_b(e.row(b), e.row(b) + S);
  for (std::size_t cb = 0; cb < S; ++cb) {
    if (!saved_b[cb]) continue;
    std::fill(e.row(b), e.row(b) + S, 0);
    e.row(b)[cb] = 1;
    std::copy(saved_a.begin(), saved_a.end(), e.row(a));
    e.row(a)[cb] = 0;
    e.recompute_upward(b);
    e.recompute_upward(a);
    visit(cb);
  }
  std::copy(saved_a.begin(), saved_a.end(), e.row(a));
  std::copy(saved_b.begin(), saved_b.end(), e.row(b));
  e.recompute_upward(b);
  e.recompute_upward(a);
}

template <class F>
auto with_arith(Arithmetic arith, F&& f) {
  if (arith == Arithmetic::Exact) return f(ExactArith{});
  return f(FloatArith{});
}

Allowed make_allowed(std::span<const Colour> fixed, std::size_t colours) {
  Allowed allowed(fixed.size() * colours, 1);
  for (std::size_t u = 0; u < fixed.size(); ++u) {
    const Colour c = fixed[u];
    if (c == kNoColour) continue;
    if (c > colours) throw std::invalid_argument("fixed colour outside 1..S");
    std::fill_n(allowed.begin() + static_cast<std::ptrdiff_t>(u * colours), colours, 0);
    allowed[u * colours + (c - 1)] = 1;
  }
  return allowed;
}

std::vector<Colour> fixed_vector(const Graph& g, std::size_t colours, const FixedColours& fixed) {
  fixed.validate(g.num_vertices(), colours);
  std::vector<Colour> out(g.num_vertices(), kNoColour);
  for (const auto& [v, c] : fixed) out[v] = c;
  return out;
}

std::vector<Colour> fixed_vector(const Ball& b, std::size_t colours, const FixedColours& fixed) {
  std::vector<Colour> out(b.size(), kNoColour);
  for (const auto& [v, c] : fixed) {
    const auto idx = b.local_index(v);
    if (!idx) continue;
    if (c < 1 || c > colours) throw std::invalid_argument("fixed colour outside 1..S");
    out[*idx] = c;
  }
  return out;
}

void require_colours(std::size_t colours) {
  if (colours == 0) throw std::invalid_argument("number of colours must be positive");
}

Rooting require_kind(const Graph& g, Vertex root, BallKind kind, const char* what) {
  if (g.num_vertices() == 0) throw std::invalid_argument(std::string(what) + ": empty graph");
  if (!is_connected(g)) throw std::invalid_argument(std::string(what) + ": graph is not connected");
  Rooting r = root_connected(g, root);
  if (r.kind != kind) throw std::invalid_argument(std::string(what) + ": graph is " + to_string(r.kind));
  return r;
}

Rooting require_tree_or_unicyclic(const Graph& g, Vertex root, const char* what) {
  if (g.num_vertices() == 0) throw std::invalid_argument(std::string(what) + ": empty graph");
  if (root >= g.num_vertices()) throw std::invalid_argument(std::string(what) + ": vertex out of range");
  if (!is_connected(g)) throw std::invalid_argument(std::string(what) + ": graph is not connected");
  Rooting r = root_connected(g, root);
  if (r.kind == BallKind::Complex) throw std::invalid_argument(std::string(what) + ": graph has more than one cycle");
  return r;
}

template <class A>
WeightVector root_weights(const Rooting& r, std::size_t colours, Allowed allowed) {
  Engine<A> e(r, colours, std::move(allowed));
  e.compute_all();
  if (r.kind == BallKind::Tree) return A::to_weights(e.message(r.root));
  typename A::Acc acc(colours);
  for_each_cycle_colour(e, *r.cycle_edge, [&](std::size_t) { acc.add(e.message(r.root)); });
  return acc.result();
}

CountValue count_rooted(const Rooting& r, std::size_t colours, std::span<const Colour> fixed, Arithmetic arith) {
  return with_arith(arith, [&](auto a) {
    using A = decltype(a);
    return A::count_of(root_weights<A>(r, colours, make_allowed(fixed, colours)));
  });
}

WeightVector marginal_rooted(const Rooting& r, std::size_t colours, std::span<const Colour> fixed,
                             Arithmetic arith) {
  WeightVector w = with_arith(arith, [&](auto a) {
    using A = decltype(a);
    return root_weights<A>(r, colours, make_allowed(fixed, colours));
  });
  if (w.is_zero()) throw InfeasibleBoundary("no proper colouring agrees with the fixed colours");
  return w;
}

// --- sampling --------------------------------------------------------------

struct Trace {
  bool exact = false;
  bool dead = false;
  Rational probability = 1;
  double log_probability = 0.0;

  void take(const std::vector<BigInt>& w, std::size_t idx) {
    BigInt total = 0;
    for (const BigInt& x : w) total += x;
    if (idx >= w.size() || w[idx] == 0 || total == 0) {
      kill();
      return;
    }
    probability *= Rational(w[idx], total);
    log_probability += log_of(w[idx]) - log_of(total);
  }

  void take(const std::vector<double>& w, std::size_t idx) {
    double total = 0.0;
    for (double x : w) total += x;
    if (idx >= w.size() || w[idx] == 0.0 || total == 0.0) {
      kill();
      return;
    }
    log_probability += std::log(w[idx] / total);
  }

  void kill() {
    dead = true;
    probability = 0;
    log_probability = kNegInf;
  }
};

std::size_t draw(Rng& rng, const std::vector<BigInt>& w) {
  BigInt total = 0;
  for (const BigInt& x : w) total += x;
  BigInt x = rng.below(total);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (x < w[i]) return i;
    x -= w[i];
  }
  return w.size() - 1;
}

std::size_t draw(Rng& rng, const std::vector<double>& w) {
  double total = 0.0;
  for (double x : w) total += x;
  double x = rng.uniform() * total;
  std::size_t last = w.size();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= 0.0) continue;
    last = i;
    if (x < w[i]) return i;
    x -= w[i];
  }
  return last;
}

struct LocalSample {
  std::vector<Colour> colours;
  Trace trace;
};

/// choose(u, weights) returns the 0-based colour index picked for u.
template <class A, class Choose>
LocalSample sample_rooted(const Rooting& r, std::size_t S, std::span<const Colour> fixed, bool exact,
                          Choose choose) {
  Engine<A> e(r, S, make_allowed(fixed, S));
  e.compute_all();
  LocalSample out;
  out.trace.exact = exact;
  out.colours.assign(r.order.size(), kNoColour);

  if (r.kind == BallKind::Unicyclic) {
    const Edge cyc = *r.cycle_edge;
    using Total = decltype(A::total_of(e.message(r.root)));
    std::vector<Total> totals(S);
    if constexpr (std::is_same_v<A, FloatArith>) std::fill(totals.begin(), totals.end(), kNegInf);
    for_each_cycle_colour(e, cyc, [&](std::size_t cb) { totals[cb] = A::total_of(e.message(r.root)); });
    const auto weights = A::to_draw_weights(totals);
    bool any = false;
    for (const auto& x : weights) any = any || x != 0;
    if (!any) throw InfeasibleBoundary("no proper colouring agrees with the fixed colours");
    const std::size_t cb = choose(cyc.v, weights);
    out.trace.take(weights, cb);
    if (out.trace.dead) return out;
    std::fill(e.row(cyc.v), e.row(cyc.v) + S, 0);
    e.row(cyc.v)[cb] = 1;
    e.row(cyc.u)[cb] = 0;
    e.recompute_upward(cyc.v);
    e.recompute_upward(cyc.u);
  }

  const auto& root_msg = e.message(r.root);
  if (root_msg.zero()) throw InfeasibleBoundary("no proper colouring agrees with the fixed colours");
  {
    const auto& w = A::weights(root_msg);
    const std::size_t idx = choose(r.root, w);
    out.trace.take(w, idx);
    if (out.trace.dead) return out;
    out.colours[r.root] = static_cast<Colour>(idx + 1);
  }
  for (std::size_t i = 1; i < r.order.size(); ++i) {
    const Vertex u = r.order[i];
    auto w = A::weights(e.message(u));
    w[out.colours[r.parent[u]] - 1] = 0;
    const std::size_t idx = choose(u, w);
    out.trace.take(w, idx);
    if (out.trace.dead) return out;
    out.colours[u] = static_cast<Colour>(idx + 1);
  }
  return out;
}

LocalSample sample_random(const Rooting& r, std::size_t S, std::span<const Colour> fixed, Rng& rng,
                          Arithmetic arith) {
  return with_arith(arith, [&](auto a) {
    using A = decltype(a);
    return sample_rooted<A>(r, S, fixed, arith == Arithmetic::Exact,
                            [&](Vertex, const auto& w) { return draw(rng, w); });
  });
}

ListSample finish_sample(const LocalSample& s, const std::vector<Vertex>* host) {
  ListSample out;
  for (std::size_t i = 0; i < s.colours.size(); ++i) {
    const Vertex v = host ? (*host)[i] : static_cast<Vertex>(i);
    out.colouring.set(v, s.colours[i]);
  }
  out.log_probability = s.trace.log_probability;
  out.probability = s.trace.exact ? s.trace.probability : Rational(std::exp(s.trace.log_probability));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

CountValue count_tree(const Graph& tree, std::size_t colours, const FixedColours& fixed, Arithmetic arith) {
  require_colours(colours);
  const Rooting r = require_kind(tree, 0, BallKind::Tree, "count_tree");
  return count_rooted(r, colours, fixed_vector(tree, colours, fixed), arith);
}

CountValue count_unicyclic(const Graph& g, std::size_t colours, const FixedColours& fixed, Arithmetic arith) {
  require_colours(colours);
  const Rooting r = require_kind(g, 0, BallKind::Unicyclic, "count_unicyclic");
  return count_rooted(r, colours, fixed_vector(g, colours, fixed), arith);
}

CountValue count_colourings(const Graph& g, std::size_t colours, const FixedColours& fixed, Arithmetic arith) {
  require_colours(colours);
  const Rooting r = require_tree_or_unicyclic(g, 0, "count_colourings");
  return count_rooted(r, colours, fixed_vector(g, colours, fixed), arith);
}

CountValue count_tree(const Ball& b, std::size_t colours, const FixedColours& fixed, Arithmetic arith) {
  require_colours(colours);
  if (b.kind != BallKind::Tree) throw std::invalid_argument("count_tree: ball is " + to_string(b.kind));
  const Rooting r = root_connected(b.local, 0);
  return count_rooted(r, colours, fixed_vector(b, colours, fixed), arith);
}

CountValue count_unicyclic(const Ball& b, std::size_t colours, const FixedColours& fixed, Arithmetic arith) {
  require_colours(colours);
  if (b.kind != BallKind::Unicyclic) throw std::invalid_argument("count_unicyclic: ball is " + to_string(b.kind));
  const Rooting r = root_connected(b.local, 0);
  return count_rooted(r, colours, fixed_vector(b, colours, fixed), arith);
}

WeightVector local_marginal(const Graph& g, std::span<const Colour> fixed, std::size_t colours, Vertex v,
                            Arithmetic arith) {
  require_colours(colours);
  if (fixed.size() != g.num_vertices()) throw std::invalid_argument("local_marginal: fixed vector size mismatch");
  const Rooting r = require_tree_or_unicyclic(g, v, "conditional_marginal");
  return marginal_rooted(r, colours, fixed, arith);
}

WeightVector conditional_marginal(const Graph& g, std::size_t colours, const FixedColours& fixed, Vertex v,
                                  Arithmetic arith) {
  require_colours(colours);
  const auto fv = fixed_vector(g, colours, fixed);
  return local_marginal(g, fv, colours, v, arith);
}

WeightVector conditional_marginal(const Ball& b, std::size_t colours, const FixedColours& fixed, Vertex v,
                                  Arithmetic arith) {
  require_colours(colours);
  const auto idx = b.local_index(v);
  if (!idx) throw std::invalid_argument("conditional_marginal: vertex not in ball");
  if (b.kind == BallKind::Complex) throw std::invalid_argument("conditional_marginal: ball is complex");
  const auto fv = fixed_vector(b, colours, fixed);
  return local_marginal(b.local, fv, colours, *idx, arith);
}

std::vector<WeightVector> subtree_root_marginals(const Graph& tree, Vertex root, std::size_t colours,
                                                 const FixedColours& fixed, Arithmetic arith) {
  require_colours(colours);
  if (root >= tree.num_vertices()) throw std::invalid_argument("subtree_root_marginals: root out of range");
  const Rooting r = require_kind(tree, root, BallKind::Tree, "subtree_root_marginals");
  const auto fv = fixed_vector(tree, colours, fixed);
  return with_arith(arith, [&](auto a) {
    using A = decltype(a);
    Engine<A> e(r, colours, make_allowed(fv, colours));
    e.compute_all();
    std::vector<WeightVector> out;
    out.reserve(tree.num_vertices());
    for (Vertex u = 0; u < tree.num_vertices(); ++u) {
      if (e.message(u).zero())
        throw InfeasibleBoundary("subtree rooted at " + std::to_string(u) + " has no feasible colouring");
      out.push_back(A::to_weights(e.message(u)));
    }
    return out;
  });
}

ListSample sample_exact(const Graph& g, std::size_t colours, const FixedColours& fixed, Rng& rng,
                        Arithmetic arith) {
  require_colours(colours);
  const Rooting r = require_tree_or_unicyclic(g, 0, "sample_exact");
  const auto fv = fixed_vector(g, colours, fixed);
  return finish_sample(sample_random(r, colours, fv, rng, arith), nullptr);
}

ListSample sample_exact(const Ball& b, std::size_t colours, const FixedColours& fixed, Rng& rng,
                        Arithmetic arith) {
  require_colours(colours);
  if (b.kind == BallKind::Complex) throw std::invalid_argument("sample_exact: ball is complex");
  const Rooting r = root_connected(b.local, 0);
  const auto fv = fixed_vector(b, colours, fixed);
  return finish_sample(sample_random(r, colours, fv, rng, arith), &b.vertices);
}

ListSample replay_probability(const Graph& g, std::size_t colours, const FixedColours& fixed,
                              const FixedColours& colouring, Arithmetic arith) {
  require_colours(colours);
  const Rooting r = require_tree_or_unicyclic(g, 0, "replay_probability");
  const auto fv = fixed_vector(g, colours, fixed);
  std::vector<Colour> target(g.num_vertices(), kNoColour);
  for (const auto& [v, c] : colouring)
    if (v < target.size()) target[v] = c;
  LocalSample s = with_arith(arith, [&](auto a) {
    using A = decltype(a);
    return sample_rooted<A>(r, colours, fv, arith == Arithmetic::Exact, [&](Vertex u, const auto&) {
      return target[u] == kNoColour ? colours : static_cast<std::size_t>(target[u] - 1);
    });
  });
  ListSample out;
  out.colouring = colouring;
  out.log_probability = s.trace.log_probability;
  out.probability = s.trace.dead ? Rational(0)
                    : s.trace.exact ? s.trace.probability
                                    : Rational(std::exp(s.trace.log_probability));
  return out;
}

std::size_t draw_index(Rng& rng, const WeightVector& w) {
  if (w.is_exact()) {
    BigInt x = rng.below(w.total());
    const auto& counts = w.counts();
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (x < counts[i]) return i;
      x -= counts[i];
    }
    return counts.size() - 1;
  }
  const auto p = w.probabilities();
  double x = rng.uniform();
  std::size_t last = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    last = i;
    if (x < p[i]) return i;
    x -= p[i];
  }
  return last;
}

}  // namespace sparsecol
