#include "sparsecol/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>

namespace sparsecol {
namespace {

class Backtracker {
 public:
  Backtracker(const Graph& g, std::size_t colours, const FixedColours& fixed, std::optional<Vertex> pin,
              const EnumerationOptions& opts)
      : g_(g),
        S_(colours),
        opts_(opts),
        pin_(pin),
        allowed_(g.num_vertices() * colours, 1),
        blocked_(g.num_vertices() * colours, 0),
        avail_(g.num_vertices(), static_cast<std::uint32_t>(colours)),
        assigned_(g.num_vertices(), kNoColour) {
    if (colours == 0) throw std::invalid_argument("enumerate: number of colours must be positive");
    fixed.validate(g.num_vertices(), colours);
    if (pin && *pin >= g.num_vertices()) throw std::invalid_argument("enumerate: vertex out of range");
    tally_.assign(colours, 0);
    for (const auto& [v, c] : fixed) {
      std::fill_n(allowed_.begin() + static_cast<std::ptrdiff_t>(v * S_), S_, 0);
      allowed_[v * S_ + (c - 1)] = 1;
      avail_[v] = 1;
    }
    build_order(fixed);
  }

  void run() {
    if (g_.num_vertices() == 0) {
      count_ = 1;
      if (opts_.list_cap > 0) listing_.emplace_back();
      return;
    }
    descend(0);
  }

  BigInt count_ = 0;
  std::vector<BigInt> tally_;
  std::vector<std::vector<Colour>> listing_;
  std::uint64_t nodes_ = 0;

 private:
  void build_order(const FixedColours& fixed) {
    const std::size_t n = g_.num_vertices();
    std::vector<std::uint8_t> placed(n, 0);
    for (const auto& [v, c] : fixed) {
      order_.push_back(v);
      placed[v] = 1;
    }
    if (pin_ && !placed[*pin_]) {
      order_.push_back(*pin_);
      placed[*pin_] = 1;
    }
    // Unassigned vertices forming an independent set go last.
    std::vector<Vertex> tail;
    if (opts_.list_cap == 0) {
      std::vector<Vertex> by_degree;
      for (Vertex v = 0; v < n; ++v)
        if (!placed[v]) by_degree.push_back(v);
      std::stable_sort(by_degree.begin(), by_degree.end(),
                       [&](Vertex a, Vertex b) { return g_.degree(a) < g_.degree(b); });
      std::vector<std::uint8_t> in_tail(n, 0);
      for (Vertex v : by_degree) {
        bool ok = true;
        for (Vertex w : g_.neighbors(v)) ok = ok && !in_tail[w];
        if (ok) {
          in_tail[v] = 1;
          tail.push_back(v);
        }
      }
      for (Vertex v : tail) placed[v] = 2;
    }
    for (Vertex v = 0; v < n; ++v)
      if (!placed[v]) order_.push_back(v);
    tail_start_ = order_.size();
    std::sort(tail.begin(), tail.end());
    order_.insert(order_.end(), tail.begin(), tail.end());
  }

  void visit() {
    if (++nodes_ > opts_.budget)
      throw BudgetExceeded("enumeration budget of " + std::to_string(opts_.budget) + " nodes exceeded");
  }

  void leaf() {
    BigInt ways = 1;
    for (std::size_t i = tail_start_; i < order_.size(); ++i) {
      visit();
      ways *= avail_[order_[i]];
      if (ways == 0) return;
    }
    count_ += ways;
    if (pin_) tally_[assigned_[*pin_] - 1] += ways;
    if (listing_.size() < opts_.list_cap) listing_.push_back(assigned_);
  }

  void descend(std::size_t i) {
    if (i == tail_start_) {
      leaf();
      return;
    }
    const Vertex u = order_[i];
    for (std::size_t c = 0; c < S_; ++c) {
      if (!allowed_[u * S_ + c] || blocked_[u * S_ + c] != 0) continue;
      visit();
      assigned_[u] = static_cast<Colour>(c + 1);
      bool dead = false;
      for (Vertex w : g_.neighbors(u)) {
        if (++blocked_[w * S_ + c] == 1 && allowed_[w * S_ + c]) {
          if (--avail_[w] == 0 && assigned_[w] == kNoColour) dead = true;
        }
      }
      if (!dead) descend(i + 1);
      for (Vertex w : g_.neighbors(u)) {
        if (--blocked_[w * S_ + c] == 0 && allowed_[w * S_ + c]) ++avail_[w];
      }
      assigned_[u] = kNoColour;
    }
  }

  const Graph& g_;
  std::size_t S_;
  EnumerationOptions opts_;
  std::optional<Vertex> pin_;
  std::vector<std::uint8_t> allowed_;
  std::vector<std::uint32_t> blocked_;
  std::vector<std::uint32_t> avail_;
  std::vector<Colour> assigned_;
  std::vector<Vertex> order_;
  std::size_t tail_start_ = 0;
};

struct Tally {
  std::vector<BigInt> counts;
  std::uint64_t nodes = 0;
};

Tally marginal_tally(const Graph& g, std::size_t colours, const FixedColours& fixed, Vertex v,
                     std::uint64_t budget) {
  EnumerationOptions opts;
  opts.budget = budget;
  Backtracker bt(g, colours, fixed, v, opts);
  bt.run();
  return {bt.tally_, bt.nodes_};
}

}  // namespace

EnumerationResult enumerate(const Graph& g, std::size_t colours, const FixedColours& fixed,
                            const EnumerationOptions& opts) {
  Backtracker bt(g, colours, fixed, std::nullopt, opts);
  bt.run();
  EnumerationResult out;
  out.count = bt.count_;
  out.listing = std::move(bt.listing_);
  out.nodes = bt.nodes_;
  return out;
}

BigInt enumerate_product(const Graph& g, std::size_t colours, const FixedColours& fixed, std::uint64_t budget) {
  if (colours == 0) throw std::invalid_argument("enumerate_product: number of colours must be positive");
  fixed.validate(g.num_vertices(), colours);
  const std::size_t n = g.num_vertices();
  std::vector<Colour> a(n, 1);
  std::vector<Vertex> free;
  for (Vertex v = 0; v < n; ++v) {
    if (auto c = fixed.get(v)) a[v] = *c;
    else free.push_back(v);
  }
  BigInt space = boost::multiprecision::pow(BigInt(colours), static_cast<unsigned>(free.size()));
  if (space > budget)
    throw BudgetExceeded("product space of " + space.str() + " assignments exceeds budget " + std::to_string(budget));

  BigInt count = 0;
  for (;;) {
    bool proper = true;
    for (const Edge& e : g.edges()) {
      if (a[e.u] == a[e.v]) {
        proper = false;
        break;
      }
    }
    if (proper) ++count;
    std::size_t i = 0;
    while (i < free.size() && a[free[i]] == colours) a[free[i++]] = 1;
    if (i == free.size()) break;
    ++a[free[i]];
  }
  return count;
}

WeightVector exact_marginal(const Graph& g, std::size_t colours, const FixedColours& fixed, Vertex v,
                            const EnumerationOptions& opts) {
  Tally t = marginal_tally(g, colours, fixed, v, opts.budget);
  WeightVector w = WeightVector::exact(std::move(t.counts));
  if (w.is_zero()) throw InfeasibleBoundary("no proper colouring agrees with the fixed colours");
  return w;
}

// ---------------------------------------------------------------------------

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

double tv_distance(const WeightVector& p, const WeightVector& q) {
  return tv_distance(p.probabilities(), q.probabilities());
}

Rational tv_distance_exact(const WeightVector& p, const WeightVector& q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += abs(p.probability_exact(i) - q.probability_exact(i));
  return s / 2;
}

// ---------------------------------------------------------------------------

SdResult exact_sd(const Graph& g, std::size_t colours, Vertex v, std::uint32_t l, const SdOptions& opts) {
  if (v >= g.num_vertices()) throw std::invalid_argument("exact_sd: vertex out of range");
  const std::uint32_t radius = opts.full_graph ? static_cast<std::uint32_t>(g.num_vertices()) : l;
  const Ball b = ball(g, v, radius);
  const Graph& sys = b.local;

  std::vector<Vertex> boundary;
  for (Vertex i = 0; i < b.size(); ++i)
    if (b.depth[i] >= l) boundary.push_back(i);

  SdResult out;
  out.boundary_size = boundary.size();
  if (boundary.empty()) return out;

  std::uint64_t nodes = 0;
  auto remaining = [&] { return opts.budget > nodes ? opts.budget - nodes : 0; };

  std::set<std::vector<Rational>> marginals;
  std::vector<Colour> a(boundary.size(), 1);
  for (;;) {
    if (++nodes > opts.budget) throw BudgetExceeded("exact_sd: enumeration budget exceeded");
    FixedColours fc;
    for (std::size_t i = 0; i < boundary.size(); ++i) fc.set(boundary[i], a[i]);
    Tally t = marginal_tally(sys, colours, fc, 0, remaining());
    nodes += t.nodes;
    WeightVector w = WeightVector::exact(std::move(t.counts));
    if (!w.is_zero()) {
      ++out.feasible_boundaries;
      marginals.insert(w.probabilities_exact());
    }
    std::size_t i = 0;
    while (i < a.size() && a[i] == colours) a[i++] = 1;
    if (i == a.size()) break;
    ++a[i];
  }
  out.distinct_marginals = marginals.size();

  auto tv = [](const std::vector<Rational>& p, const std::vector<Rational>& q) {
    Rational s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += abs(p[i] - q[i]);
    return Rational(s / 2);
  };
  const std::vector<std::vector<Rational>> list(marginals.begin(), marginals.end());
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = i + 1; j < list.size(); ++j) out.value = std::max(out.value, tv(list[i], list[j]));

  Tally free = marginal_tally(sys, colours, {}, 0, remaining());
  WeightVector wf = WeightVector::exact(std::move(free.counts));
  if (!wf.is_zero()) {
    const auto pf = wf.probabilities_exact();
    for (const auto& p : list) out.max_vs_free = std::max(out.max_vs_free, tv(p, pf));
  }
  return out;
}

}  // namespace sparsecol
