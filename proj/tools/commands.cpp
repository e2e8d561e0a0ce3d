#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <sparsecol/bounds.hpp>
#include <sparsecol/mixing.hpp>
#include <sparsecol/oracle.hpp>
#include <sparsecol/rng.hpp>
#include <sparsecol/sampler.hpp>
#include <sparsecol/treedp.hpp>

namespace sparsecol::cli {

using Json = nlohmann::ordered_json;

std::uint64_t budget_from_env() {
  const char* raw = std::getenv(kBudgetEnv);
  if (!raw || !*raw) return kDefaultEnumerationBudget;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(kBudgetEnv) + " must be a nonnegative integer, got \"" + raw + "\"");
  }
}

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string edge_list_text(const Graph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

Json rationals(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json big_ints(const std::vector<BigInt>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

/// Log-space double for JSON; -inf becomes null.
Json log_json(double x) {
  if (std::isinf(x) && x < 0) return nullptr;
  return x;
}

// ---------------------------------------------------------------------------
// Graph source shared by several commands.

struct GraphSource {
  std::string file;
  std::string gnp;  // "n,d"
  std::uint64_t seed = 1;

  void add(CLI::App* app, bool required = true) {
    auto* f = app->add_option("--graph", file, "Edge-list file");
    auto* r = app->add_option("--gnp", gnp, "Random graph G(n, d/n) given as n,d");
    f->excludes(r);
    r->excludes(f);
    if (required) app->callback([f, r] {
        if (f->count() + r->count() != 1) throw CLI::ValidationError("exactly one of --graph or --gnp is required");
      });
  }

  bool random() const { return !gnp.empty(); }

  std::pair<std::size_t, double> gnp_params() const {
    const auto comma = gnp.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("--gnp expects n,d");
    try {
      const auto n = static_cast<std::size_t>(std::stoull(gnp.substr(0, comma)));
      const double d = std::stod(gnp.substr(comma + 1));
      return {n, d};
    } catch (const std::logic_error&) {
      throw std::invalid_argument("--gnp expects n,d, got \"" + gnp + "\"");
    }
  }

  Graph load(std::uint64_t instance_seed) const {
    if (random()) {
      const auto [n, d] = gnp_params();
      return generate_gnp(n, d, instance_seed);
    }
    return read_edge_list_file(file);
  }

  /// d of the source: the G(n, d/n) parameter, else the average degree.
  double degree(const Graph& g) const {
    if (random()) return gnp_params().second;
    return g.num_vertices() ? 2.0 * static_cast<double>(g.num_edges()) / static_cast<double>(g.num_vertices()) : 0.0;
  }
};

std::uint32_t default_radius(const Graph& g, double d) {
  if (g.num_vertices() < 2 || !(d * std::exp(2.0) / 2.0 > 1.0)) return 1;
  return radius_for(static_cast<double>(g.num_vertices()), d);
}

Json graph_json(const Graph& g) {
  Json j;
  j["n"] = g.num_vertices();
  j["m"] = g.num_edges();
  return j;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------
// Counting any graph: per component, tree DP where it applies, enumeration
// elsewhere.

struct Component {
  Graph graph;
  std::vector<Vertex> vertices;  // local -> host
};

std::vector<Component> split_components(const Graph& g) {
  std::size_t count = 0;
  const auto comp = components(g, &count);
  std::vector<Component> out(count);
  std::vector<Vertex> local(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    local[v] = static_cast<Vertex>(out[comp[v]].vertices.size());
    out[comp[v]].vertices.push_back(v);
  }
  std::vector<std::vector<Edge>> edges(count);
  for (const Edge& e : g.edges()) edges[comp[e.u]].emplace_back(local[e.u], local[e.v]);
  for (std::size_t c = 0; c < count; ++c)
    out[c].graph = Graph::from_edges(out[c].vertices.size(), std::move(edges[c]));
  return out;
}

FixedColours restrict_fixed(const Component& c, const FixedColours& fixed) {
  FixedColours out;
  for (Vertex i = 0; i < c.vertices.size(); ++i)
    if (auto col = fixed.get(c.vertices[i])) out.set(i, *col);
  return out;
}

// ---------------------------------------------------------------------------

int cmd_gen(const GraphSource& src, const std::string& out_path, std::ostream& out) {
  const Graph g = src.load(src.seed);
  if (out_path.empty()) {
    write_edge_list(out, g);
    return kOk;
  }
  std::ofstream f(out_path);
  if (!f) throw std::invalid_argument("cannot open " + out_path);
  write_edge_list(f, g);
  Json j = graph_json(g);
  j["seed"] = src.seed;
  j["out"] = out_path;
  emit(out, j);
  return kOk;
}

struct SampleArgs {
  std::size_t colours = 0;
  std::optional<std::uint32_t> radius;
  std::string order = "identity";
  std::size_t trials = 1;
  bool exact = false;
  bool steps = false;
  bool timing = false;
  bool no_colouring = false;
};

int cmd_sample(const GraphSource& src, const SampleArgs& a, std::ostream& out) {
  const Graph g = src.load(src.seed);
  const double d = src.degree(g);
  SamplerOptions opts;
  opts.radius = a.radius ? *a.radius : default_radius(g, d);
  opts.order = parse_order_policy(a.order);
  opts.arith = a.exact ? Arithmetic::Exact : Arithmetic::Float;
  opts.record_steps = a.steps;

  Json j;
  j["command"] = "sample";
  j["graph"] = graph_json(g);
  j["colours"] = a.colours;
  j["radius"] = opts.radius;
  j["order"] = to_string(opts.order);
  j["arithmetic"] = a.exact ? "exact" : "float";
  j["seed"] = src.seed;
  if (d > 1) j["reference_colours"] = static_cast<double>(reference_colours(d));

  if (a.trials > 1) {
    const BatchStats st = run_batch(g, a.colours, opts, a.trials, src.seed);
    j["trials"] = a.trials;
    j["successes"] = st.successes;
    j["failures"] = st.failures;
    j["infeasible"] = st.infeasible;
    j["success_rate"] = st.success_rate;
    j["mean_log_weight"] = st.mean_log_weight;
    Json runs = Json::array();
    for (const auto& r : st.trials) {
      Json t;
      t["index"] = r.index;
      t["seed"] = r.seed;
      t["status"] = to_string(r.status);
      t["stop_vertex"] = r.stop_vertex ? Json(*r.stop_vertex) : Json(nullptr);
      t["log_weight"] = r.log_weight;
      t["conflicts"] = r.conflicts;
      if (a.timing) t["seconds"] = r.seconds;
      runs.push_back(std::move(t));
    }
    j["runs"] = std::move(runs);
    if (a.timing) j["timing"] = {{"seconds_per_vertex", st.seconds_per_vertex}};
    emit(out, j);
    return kOk;
  }

  const SampleRun run = sample_colouring(g, a.colours, opts, src.seed);
  j["status"] = to_string(run.status);
  if (run.status == RunStatus::Failure) j["failure_vertex"] = *run.stop_vertex;
  if (run.status == RunStatus::Infeasible) j["infeasible_vertex"] = *run.stop_vertex;
  j["log_weight"] = run.log_weight;
  if (run.weight) j["weight"] = to_string(*run.weight);
  if (run.status == RunStatus::Success) {
    j["conflicts"] = count_conflicts(g, run.colouring);
    if (!a.no_colouring) j["colouring"] = run.colouring;
  }
  if (a.steps) {
    Json steps = Json::array();
    for (const auto& s : run.steps)
      steps.push_back({{"vertex", s.vertex},
                       {"colour", s.colour},
                       {"probability", s.probability},
                       {"ball_size", s.ball_size},
                       {"ball_kind", to_string(s.kind)}});
    j["steps"] = std::move(steps);
  }
  if (a.timing) {
    const double n = static_cast<double>(std::max<std::size_t>(1, g.num_vertices()));
    j["timing"] = {{"seconds", run.seconds}, {"seconds_per_vertex", run.seconds / n}};
  }
  emit(out, j);
  return kOk;
}

struct CountArgs {
  std::size_t colours = 0;
  std::string fixed;
  bool floating = false;
  std::size_t estimate = 0;
  std::optional<std::uint32_t> radius;
};

int cmd_count(const GraphSource& src, const CountArgs& a, std::ostream& out) {
  const Graph g = src.load(src.seed);
  const FixedColours fixed = FixedColours::parse(a.fixed);
  fixed.validate(g.num_vertices(), a.colours);
  Json j;
  j["command"] = "count";
  j["graph"] = graph_json(g);
  j["colours"] = a.colours;
  j["fixed"] = fixed.to_string();

  if (a.estimate > 0) {
    if (!fixed.empty()) throw std::invalid_argument("--estimate does not take --fixed");
    SamplerOptions opts;
    opts.radius = a.radius ? *a.radius : default_radius(g, src.degree(g));
    opts.arith = a.floating ? Arithmetic::Float : Arithmetic::Exact;
    const CountEstimate est = estimate_count(g, a.colours, opts, a.estimate, src.seed);
    j["method"] = "estimate";
    j["radius"] = opts.radius;
    j["seed"] = src.seed;
    j["samples"] = a.estimate;
    j["successes"] = est.successes;
    j["failure_fraction"] = est.failure_fraction;
    j["log_mean"] = log_json(est.log_mean);
    j["relative_std_error"] = est.relative_std_error;
    if (est.exact_mean) j["mean"] = to_string(*est.exact_mean);
    emit(out, j);
    return kOk;
  }

  const Arithmetic arith = a.floating ? Arithmetic::Float : Arithmetic::Exact;
  const std::uint64_t budget = budget_from_env();
  BigInt exact = 1;
  double log_total = 0.0;
  bool zero = false;
  Json parts = Json::array();
  for (const Component& c : split_components(g)) {
    const FixedColours f = restrict_fixed(c, fixed);
    const BallKind kind = classify_connected(c.graph);
    Json part;
    part["vertices"] = c.vertices.size();
    part["kind"] = to_string(kind);
    if (kind == BallKind::Complex) {
      EnumerationOptions eo;
      eo.budget = budget;
      const BigInt n = enumerate(c.graph, a.colours, f, eo).count;
      part["method"] = "enumeration";
      exact *= n;
      if (n == 0) zero = true;
      else log_total += log_of(n);
    } else {
      const CountValue v = count_colourings(c.graph, a.colours, f, arith);
      part["method"] = "treedp";
      if (v.is_zero()) zero = true;
      else log_total += v.log_value();
      if (v.is_exact()) exact *= v.exact_value();
    }
    parts.push_back(std::move(part));
  }
  j["method"] = a.floating ? "float" : "exact";
  if (!a.floating || zero) j["count"] = zero ? std::string("0") : exact.str();
  j["log_count"] = zero ? Json(nullptr) : Json(log_total);
  j["components"] = std::move(parts);
  emit(out, j);
  return kOk;
}

struct OracleArgs {
  std::string mode;
  std::size_t colours = 0;
  std::string fixed;
  Vertex vertex = 0;
  std::uint32_t distance = 1;
  bool full_graph = false;
  std::optional<std::uint64_t> budget;
};

int cmd_oracle(const GraphSource& src, const OracleArgs& a, std::ostream& out) {
  const Graph g = src.load(src.seed);
  const FixedColours fixed = FixedColours::parse(a.fixed);
  EnumerationOptions eo;
  eo.budget = a.budget ? *a.budget : budget_from_env();
  Json j;
  j["command"] = "oracle";
  j["mode"] = a.mode;
  j["graph"] = graph_json(g);
  j["colours"] = a.colours;
  if (a.mode == "count") {
    const EnumerationResult r = enumerate(g, a.colours, fixed, eo);
    j["fixed"] = fixed.to_string();
    j["count"] = r.count.str();
    j["nodes"] = r.nodes;
  } else if (a.mode == "marginal") {
    if (a.vertex >= g.num_vertices()) throw std::invalid_argument("--vertex out of range");
    const WeightVector w = exact_marginal(g, a.colours, fixed, a.vertex, eo);
    j["fixed"] = fixed.to_string();
    j["vertex"] = a.vertex;
    j["count"] = w.total().str();
    j["counts"] = big_ints(w.counts());
    j["marginal"] = rationals(w.probabilities_exact());
  } else {
    SdOptions so;
    so.full_graph = a.full_graph;
    so.budget = eo.budget;
    const SdResult r = exact_sd(g, a.colours, a.vertex, a.distance, so);
    j["vertex"] = a.vertex;
    j["distance"] = a.distance;
    j["full_graph"] = a.full_graph;
    j["value"] = to_string(r.value);
    j["value_float"] = r.value.convert_to<double>();
    j["max_vs_free"] = to_string(r.max_vs_free);
    j["boundary_size"] = r.boundary_size;
    j["feasible_boundaries"] = r.feasible_boundaries;
    j["distinct_marginals"] = r.distinct_marginals;
  }
  emit(out, j);
  return kOk;
}

struct MixingArgs {
  std::string mode;
  double d = 0;
  double colours = 0;
  std::optional<double> t;
  double l = 1;
  double n = 1e6;
  std::uint32_t depth = 5;
  std::size_t trees = 10;
  std::size_t pairs = 50;
  std::uint64_t seed = 1;
  std::string law = "td";
  std::uint64_t exhaustive_limit = 0;
};

Json bound_json(long double base, long double log_bound) {
  Json j;
  j["base"] = static_cast<double>(base);
  j["log_bound"] = static_cast<double>(log_bound);
  j["bound"] = static_cast<double>(std::exp(log_bound));
  return j;
}

int cmd_mixing(const MixingArgs& a, std::ostream& out) {
  if (a.mode == "bounds") {
    BoundParams bp;
    bp.n = a.n;
    bp.d = a.d;
    bp.S = a.colours;
    bp.t = a.t ? *a.t : static_cast<double>(default_threshold(a.d, a.colours));
    bp.l = a.l;
    validate(bp);
    const auto ti = static_cast<std::uint64_t>(std::ceil(bp.t));
    Json j;
    j["command"] = "mixing bounds";
    j["params"] = {{"n", bp.n}, {"d", bp.d}, {"colours", bp.S}, {"t", bp.t}, {"l", bp.l}};
    j["q_t"] = static_cast<double>(q_of_t(bp.n, bp.d, ti));
    j["one_minus_q_t"] = static_cast<double>(q_of_t_complement(bp.n, bp.d, ti));
    j["tree_bound"] = bound_json(lemma_d_base(bp), log_lemma_d_bound(bp));
    if (bp.S > 2) j["unfolded_bound"] = bound_json(lemma_g_base(bp), log_lemma_g_bound(bp));
    j["reference_colours"] = static_cast<double>(reference_colours(bp.d));
    emit(out, j);
    return kOk;
  }

  // sd-experiment
  const auto S = static_cast<std::size_t>(a.colours);
  if (static_cast<double>(S) != a.colours || S < 2) throw std::invalid_argument("--colours must be an integer >= 2");
  const TreeLaw law = parse_tree_law(a.law);
  const auto n = static_cast<std::size_t>(a.n);
  std::optional<BoundParams> bp;
  const double t = a.t ? *a.t : (a.d > 1 ? static_cast<double>(default_threshold(a.d, a.colours)) : 0.0);
  if (a.d > 1 && t >= 1 && a.colours > t) bp = BoundParams{a.n, a.d, a.colours, t, 1};

  DisagreementOptions opts;
  opts.pairs = a.pairs;
  opts.exhaustive_limit = a.exhaustive_limit;
  out << "tree,seed,size,height,l,tv,bound\n";
  for (std::size_t i = 0; i < a.trees; ++i) {
    const std::uint64_t tree_seed = derive_seed(a.seed, i);
    const RandomTree tree = sample_td_tree(n, a.d, a.depth, law, tree_seed);
    for (std::uint32_t l = 1; l <= a.depth; ++l) {
      const DisagreementResult r = root_disagreement_tv(tree, S, l, opts, derive_seed(tree_seed, l));
      std::string bound;
      if (bp) {
        BoundParams b = *bp;
        b.l = l;
        bound = fmt_double(static_cast<double>(eval_lemma_d_bound(b)));
      }
      out << i << ',' << tree_seed << ',' << tree.size() << ',' << tree.height() << ',' << l << ','
          << fmt_double(r.value) << ',' << bound << '\n';
    }
  }
  return kOk;
}

int cmd_lemma_a(const GraphSource& src, std::optional<std::uint32_t> radius, std::size_t trials, std::ostream& out) {
  Json j;
  j["command"] = "lemma-a";
  const std::size_t runs = src.random() ? trials : 1;
  std::size_t clean = 0;
  std::size_t complex_total = 0;
  Json inst = Json::array();
  std::optional<std::uint32_t> used_radius;
  for (std::size_t i = 0; i < runs; ++i) {
    const std::uint64_t s = src.random() ? derive_seed(src.seed, i) : src.seed;
    const Graph g = src.load(s);
    const std::uint32_t r = radius ? *radius : default_radius(g, src.degree(g));
    if (i == 0) {
      j["n"] = g.num_vertices();
      j["d"] = src.degree(g);
      used_radius = r;
    }
    const BallHistogram h = classify_all_balls(g, r);
    complex_total += h.complex;
    if (h.complex == 0) ++clean;
    Json row;
    row["index"] = i;
    row["seed"] = s;
    row["tree"] = h.tree;
    row["unicyclic"] = h.unicyclic;
    row["complex"] = h.complex;
    row["first_complex"] = h.first_complex ? Json(*h.first_complex) : Json(nullptr);
    inst.push_back(std::move(row));
  }
  j["radius"] = *used_radius;
  j["trials"] = runs;
  j["complex_ball_count"] = complex_total;
  j["zero_complex_fraction"] = static_cast<double>(clean) / static_cast<double>(runs);
  j["instances"] = std::move(inst);
  emit(out, j);
  return kOk;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& out_path, std::ostream& out) {
  std::ostringstream csv;
  csv << "source,row_kind,index,seed,vertex,colour,probability,ball_size,ball_kind,status,log_weight\n";
  auto schema = [](const std::string& path, const std::string& what) {
    return std::invalid_argument("schema mismatch in " + path + ": " + what);
  };
  for (const auto& path : inputs) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path);
    Json j;
    try {
      j = Json::parse(f);
    } catch (const Json::parse_error& e) {
      throw schema(path, e.what());
    }
    if (!j.is_object() || j.value("command", "") != "sample") throw schema(path, "not the output of sample");
    try {
      if (j.contains("runs")) {
        for (const auto& r : j.at("runs")) {
          csv << path << ",trial," << r.at("index").get<std::size_t>() << ',' << r.at("seed").get<std::uint64_t>()
              << ",,,,,," << r.at("status").get<std::string>() << ','
              << fmt_double(r.at("log_weight").get<double>()) << '\n';
        }
      } else if (j.contains("steps")) {
        const auto seed = j.at("seed").get<std::uint64_t>();
        const auto status = j.at("status").get<std::string>();
        std::size_t i = 0;
        for (const auto& s : j.at("steps")) {
          csv << path << ",step," << i++ << ',' << seed << ',' << s.at("vertex").get<Vertex>() << ','
              << s.at("colour").get<Colour>() << ',' << fmt_double(s.at("probability").get<double>()) << ','
              << s.at("ball_size").get<std::size_t>() << ',' << s.at("ball_kind").get<std::string>() << ','
              << status << ",\n";
        }
      } else {
        throw schema(path, "neither \"runs\" nor \"steps\" present (run sample with --steps or --trials)");
      }
    } catch (const Json::exception& e) {
      throw schema(path, e.what());
    }
  }
  if (out_path.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::invalid_argument("cannot open " + out_path);
    f << csv.str();
  }
  return kOk;
}

}  // namespace

// ---------------------------------------------------------------------------

VerifyReport run_verify(const VerifyConfig& cfg, const Hooks& hooks) {
  const CountFn count = hooks.count ? hooks.count : [](const Graph& g, std::size_t S, const FixedColours& f) {
    const CountValue v = count_colourings(g, S, f, Arithmetic::Exact);
    return BigInt(v.exact_value());
  };
  EnumerationOptions eo;
  eo.budget = cfg.budget ? cfg.budget : budget_from_env();

  VerifyReport rep;
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    const std::uint64_t s = derive_seed(cfg.seed, i);
    Rng rng(s, streams::kVerify);
    const std::size_t n = 1 + rng.below(cfg.max_vertices);
    const std::size_t S = 3 + rng.below(3);
    const bool cyclic = n >= 3 && rng.below(2) == 1;
    const Graph g = cyclic ? random_unicyclic(n, rng) : random_tree(n, rng);
    FixedColours fixed;
    for (Vertex v = 0; v < n; ++v)
      if (rng.below(4) == 0) fixed.set(v, static_cast<Colour>(1 + rng.below(S)));
    const auto v = static_cast<Vertex>(rng.below(n));

    auto fail = [&](const std::string& check, const std::string& expected, const std::string& actual) {
      rep.mismatches.push_back({i, s, edge_list_text(g), S, fixed.to_string(), check, expected, actual});
    };

    const BigInt oracle = enumerate(g, S, fixed, eo).count;
    const BigInt dp = count(g, S, fixed);
    ++rep.checks;
    if (dp != oracle) fail("count", oracle.str(), dp.str());

    ++rep.checks;
    std::optional<std::vector<BigInt>> m_oracle, m_dp;
    try {
      m_oracle = exact_marginal(g, S, fixed, v, eo).counts();
    } catch (const InfeasibleBoundary&) {
    }
    try {
      m_dp = conditional_marginal(g, S, fixed, v, Arithmetic::Exact).counts();
    } catch (const InfeasibleBoundary&) {
    }
    auto show = [](const std::optional<std::vector<BigInt>>& m) {
      return m ? big_ints(*m).dump() : std::string("infeasible");
    };
    if (m_oracle != m_dp) fail("marginal at " + std::to_string(v), show(m_oracle), show(m_dp));

    if (n <= 8) {
      ++rep.checks;
      const BigInt prod = enumerate_product(g, S, fixed, eo.budget);
      if (prod != oracle) fail("product enumeration", prod.str(), oracle.str());
    }

    ++rep.checks;
    const CountValue fl = count_colourings(g, S, fixed, Arithmetic::Float);
    const bool agree = oracle == 0 ? fl.is_zero() : std::abs(fl.log_value() - log_of(oracle)) < 1e-9;
    if (!agree) fail("float count", oracle.str(), fl.to_string());
    ++rep.instances;
  }
  return rep;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const Hooks& hooks) {
  CLI::App app{"Sampling proper colourings of sparse random graphs", "sparsecol"};
  app.require_subcommand(1);

  GraphSource src;
  std::string out_path;

  auto* gen = app.add_subcommand("gen", "Generate G(n, d/n) as an edge list");
  gen->add_option("--gnp", src.gnp, "n,d")->required();
  gen->add_option("--seed", src.seed, "Seed")->capture_default_str();
  gen->add_option("--out", out_path, "Output file (default: stdout)");

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Run the sequential sampler");
  src.add(sample);
  sample->add_option("--colours", sa.colours, "Number of colours S")->required()->check(CLI::Range(2, 1 << 30));
  sample->add_option("--radius", sa.radius, "Ball radius (default: from n and d)")->check(CLI::PositiveNumber);
  sample->add_option("--order", sa.order, "identity|random|degree")->capture_default_str();
  sample->add_option("--seed", src.seed, "Seed")->capture_default_str();
  sample->add_option("--trials", sa.trials, "Independent runs")->check(CLI::PositiveNumber);
  sample->add_flag("--exact", sa.exact, "Exact arithmetic");
  sample->add_flag("--steps", sa.steps, "Include per-step records");
  sample->add_flag("--timing", sa.timing, "Include wall-clock timing");
  sample->add_flag("--no-colouring", sa.no_colouring, "Omit the colouring");

  CountArgs ca;
  auto* count = app.add_subcommand("count", "Count proper colourings");
  src.add(count);
  count->add_option("--colours", ca.colours, "Number of colours S")->required()->check(CLI::PositiveNumber);
  count->add_option("--fixed", ca.fixed, "Fixed colours v:c,...");
  count->add_flag("--float", ca.floating, "Log-space arithmetic");
  count->add_option("--estimate", ca.estimate, "Use the sampler-based estimator with this many runs");
  count->add_option("--radius", ca.radius, "Ball radius for --estimate")->check(CLI::PositiveNumber);
  count->add_option("--seed", src.seed, "Seed")->capture_default_str();

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive enumeration");
  oracle->add_option("mode", oa.mode, "count|marginal|sd")->required()->check(CLI::IsMember({"count", "marginal", "sd"}));
  src.add(oracle);
  oracle->add_option("--colours", oa.colours, "Number of colours S")->required()->check(CLI::PositiveNumber);
  oracle->add_option("--fixed", oa.fixed, "Fixed colours v:c,...");
  oracle->add_option("--vertex", oa.vertex, "Vertex");
  oracle->add_option("--distance", oa.distance, "Boundary distance l")->capture_default_str();
  oracle->add_flag("--full-graph", oa.full_graph, "Marginals in the whole component");
  oracle->add_option("--budget", oa.budget, "Enumeration budget (overrides the environment)");
  oracle->add_option("--seed", src.seed, "Seed for --gnp")->capture_default_str();

  MixingArgs ma;
  auto* mixing = app.add_subcommand("mixing", "Bound evaluators and decay experiments");
  mixing->add_option("mode", ma.mode, "bounds|sd-experiment")->required()->check(CLI::IsMember({"bounds", "sd-experiment"}));
  mixing->add_option("--d", ma.d, "Expected degree")->required();
  mixing->add_option("--colours", ma.colours, "Number of colours S")->required();
  mixing->add_option("--t", ma.t, "Mixing threshold (default: max(ceil(7d), ceil(2 ln S) + 1))");
  mixing->add_option("--l", ma.l, "Distance")->capture_default_str();
  mixing->add_option("--n", ma.n, "Population size")->capture_default_str();
  mixing->add_option("--depth", ma.depth, "Tree depth")->capture_default_str();
  mixing->add_option("--trees", ma.trees, "Number of trees")->capture_default_str();
  mixing->add_option("--pairs", ma.pairs, "Boundary pairs per tree and distance")->capture_default_str();
  mixing->add_option("--seed", ma.seed, "Seed")->capture_default_str();
  mixing->add_option("--law", ma.law, "td|trd")->capture_default_str();
  mixing->add_option("--exhaustive-limit", ma.exhaustive_limit, "Enumerate boundaries up to this many");

  VerifyConfig vc;
  auto* verify = app.add_subcommand("verify", "Cross-check tree DP against enumeration");
  verify->add_option("--instances", vc.instances, "Random instances")->capture_default_str();
  verify->add_option("--seed", vc.seed, "Seed")->capture_default_str();
  verify->add_option("--budget", vc.budget, "Enumeration budget (overrides the environment)");
  verify->add_option("--max-vertices", vc.max_vertices, "Largest instance")->capture_default_str()->check(
      CLI::Range(1, 16));

  std::optional<std::uint32_t> la_radius;
  std::size_t la_trials = 10;
  auto* lemma_a = app.add_subcommand("lemma-a", "Count balls with more than one cycle");
  src.add(lemma_a);
  lemma_a->add_option("--radius", la_radius, "Ball radius (default: from n and d)");
  lemma_a->add_option("--trials", la_trials, "Instances for --gnp")->capture_default_str();
  lemma_a->add_option("--seed", src.seed, "Seed")->capture_default_str();

  std::vector<std::string> inputs;
  auto* report = app.add_subcommand("report", "Flatten sample outputs into CSV");
  report->add_option("--input", inputs, "JSON files written by sample");
  report->add_option("--out", out_path, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*gen) return cmd_gen(src, out_path, out);
    if (*sample) return cmd_sample(src, sa, out);
    if (*count) return cmd_count(src, ca, out);
    if (*oracle) return cmd_oracle(src, oa, out);
    if (*mixing) return cmd_mixing(ma, out);
    if (*lemma_a) return cmd_lemma_a(src, la_radius, la_trials, out);
    if (*report) return cmd_report(inputs, out_path, out);
    if (*verify) {
      const VerifyReport rep = run_verify(vc, hooks);
      Json j;
      j["command"] = "verify";
      j["seed"] = vc.seed;
      j["instances"] = rep.instances;
      j["checks"] = rep.checks;
      j["ok"] = rep.ok();
      Json bad = Json::array();
      for (const auto& m : rep.mismatches)
        bad.push_back({{"index", m.index},
                       {"seed", m.seed},
                       {"colours", m.colours},
                       {"fixed", m.fixed},
                       {"check", m.check},
                       {"expected", m.expected},
                       {"actual", m.actual},
                       {"graph", m.graph}});
      j["mismatches"] = std::move(bad);
      emit(out, j);
      return rep.ok() ? kOk : kVerificationFailed;
    }
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InfeasibleBoundary& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kUsage;
}

}  // namespace sparsecol::cli
