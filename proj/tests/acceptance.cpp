// Copyright 2026 The rbg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rbg/experiment.hpp"

namespace {

using namespace rbg;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

std::string sig6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::vector<std::uint32_t> random_arities(Rng& rng, std::size_t count, std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out(count);
  for (auto& a : out) a = static_cast<std::uint32_t>(rng.uniform_int(lo, hi));
  return out;
}

// 1. Place-graph average degree equals 2(n - t)/n for every seed.
void average_degree_identity(Outcome& o) {
  Rng sig_rng(1);
  const Signature sig = fraction_signature(26, 0.5, 1, 3, sig_rng);
  std::size_t graphs = 0;
  double worst = 0.0;
  for (std::uint32_t t : {1u, 10u, 50u}) {
    for (std::uint32_t n : {10u, 100u, 1000u}) {
      if (n < t) continue;
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto pg = generate_place_graph({t, n, sig, seed, {}});
        const double want = 2.0 * (n - t) / n;
        const double got = degree_distribution(pg).average_degree();
        worst = std::max({worst, std::fabs(got - want), std::fabs(oracle::average_degree(pg) - want)});
        ++graphs;
      }
    }
  }
  o.require(worst <= 1e-12, "deviation " + std::to_string(worst));
  const auto half = generate_place_graph({50, 100, sig, 0, {}});
  o.require(degree_distribution(half).average_degree() == 1.0, "t=50, n=100 average is not 1");
  o.detail << graphs << " graphs, max |error| " << worst << " (tol 1e-12)";
}

// Positive-arity samples for 26-control signatures, t = 1, n nodes (n + 1 places).
struct CountCell {
  double nominal_p;
  double p;  // fraction actually realised by the signature
  std::uint32_t nodes;
  std::vector<double> counts;
};

std::vector<CountCell> positive_count_campaign() {
  ExperimentPlan plan;
  plan.roots = {1};
  plan.places = {11, 101, 1001};
  plan.positive_fractions = {0.1, 0.25, 0.5, 0.8};
  plan.signature.count = 26;
  plan.replications = 1000;
  plan.base_seed = 2024;
  std::vector<CountCell> out;
  for (const auto& s : run_campaign(plan)) {
    out.push_back({*s.cell.fraction, positive_control_fraction(s.cell.signature), s.cell.places - 1,
                   s.positive_counts});
  }
  return out;
}

// 2. Positive-arity count is binomial in (nodes, p).
void binomial_arity_counts(Outcome& o, const std::vector<CountCell>& cells) {
  double worst_z = 0.0, worst_var = 0.0;
  for (const auto& c : cells) {
    const auto m = sample_moments(c.counts);
    const double n = c.nodes, r = static_cast<double>(c.counts.size());
    const double mean = n * c.p, var = n * c.p * (1.0 - c.p);
    const double z = std::fabs(m.mean - mean) / std::sqrt(var / r);
    worst_z = std::max(worst_z, z);
    o.require(z <= 4.0, "mean off for p=" + sig6(c.nominal_p) + " n=" + std::to_string(c.nodes));
    if (c.nodes >= 100) {
      const double rel = std::fabs(m.variance - var) / var;
      worst_var = std::max(worst_var, rel);
      o.require(rel <= 0.15, "variance off for p=" + sig6(c.nominal_p) + " n=" + std::to_string(c.nodes));
    }
  }
  o.detail << cells.size() << " cells x 1000 runs, max |mean z| " << sig6(worst_z)
           << " (tol 4), max variance rel. error " << sig6(worst_var) << " (tol 0.15)";
}

// 3. Model selection on n = 1000 samples; exact AIC and geometric arithmetic.
void aic_model_selection(Outcome& o, const std::vector<CountCell>& cells) {
  std::vector<double> gaps;
  for (const auto& c : cells) {
    if (c.nodes != 1000) continue;
    const auto b = fit_binomial(c.counts, c.nodes);
    const auto p = fit_poisson(c.counts);
    const auto g = fit_geometric(c.counts);
    o.require(b.aic < p.aic && p.aic < g.aic, "AIC ordering at p=" + sig6(c.nominal_p));
    o.require(std::fabs(b.log_likelihood - oracle::binomial_log_likelihood(c.counts, c.nodes, b.estimate)) < 1e-6,
              "binomial log-likelihood disagrees with oracle");
    gaps.push_back(p.aic - b.aic);
  }
  o.require(gaps.size() == 4, "expected four n=1000 cells");
  for (std::size_t i = 1; i < gaps.size(); ++i) o.require(gaps[i] > gaps[i - 1], "gap not increasing");
  o.require(sig6(aic(-37280.12, 1)) == sig6(74562.24), "aic(-37280.12, 1)");
  o.require(sig6(aic(-40558.07, 1)) == sig6(81118.14), "aic(-40558.07, 1)");
  std::vector<double> xs(10000, 115.0);
  for (std::size_t i = 0; i < 2991; ++i) xs[i] += 1.0;  // mean 115.2991
  const double p_hat = fit_geometric(xs).estimate;
  o.require(sig6(p_hat) == sig6(0.008598519), "geometric estimate " + sig6(p_hat));
  o.detail << "poisson-binomial AIC gaps";
  for (double g : gaps) o.detail << " " << sig6(g);
  o.detail << "; aic(-37280.12,1)=" << sig6(aic(-37280.12, 1)) << "; geometric p=" << sig6(p_hat);
}

// 4. MPPL: 5 links on 10 candidates at p = 1, at most one link per node,
//    uniform selection by chi-square at 0.01.
void mppl_contracts(Outcome& o) {
  std::vector<std::uint32_t> arities(20, 0);
  std::vector<NodeId> candidates;
  Rng shape(4);
  for (std::uint32_t i = 0; i < 20; i += 2) {
    arities[i] = static_cast<std::uint32_t>(shape.uniform_int(1, 4));
    candidates.push_back(NodeId{i});
  }
  const auto controls = fixtures::controls_with_arities(arities);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const auto lg = mppl(controls, candidates, MpplParams{1.0, 0.5, 0.5, 0}, rng);
    o.require(lg.edge_count + lg.outer_names.size() == 5, "link count at seed " + std::to_string(seed));
    std::size_t linked = 0;
    for (std::uint32_t v = 0; v < 20; ++v) {
      const auto d = link_degree(lg, NodeId{v});
      o.require(d <= 1 && connected_ports(lg, NodeId{v}).size() <= 1, "node with several links");
      linked += d;
    }
    o.require(static_cast<double>(linked) / 20.0 == 1.0 * 10 / 20, "linked fraction");
    o.require(validate(lg).ok(), "invalid link graph");
  }

  std::vector<double> p_values;
  for (double p : {0.2, 0.6}) {
    std::vector<double> hits(candidates.size(), 0.0);
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
      Rng rng(derive_seed(99, static_cast<std::uint64_t>(p * 10), seed));
      const auto lg = mppl(controls, candidates, MpplParams{p, 0.5, 0.5, 0}, rng);
      for (const auto& [port, link] : lg.links) hits[port.node.value / 2] += 1.0;
    }
    const double total = std::accumulate(hits.begin(), hits.end(), 0.0);
    p_values.push_back(oracle::chi_square_p_value(hits, std::vector<double>(hits.size(), total / hits.size())));
    o.require(p_values.back() > 0.01, "chi-square rejects uniform selection at p=" + sig6(p));
  }
  o.detail << "100 seeds with 5 links each; chi-square p-values " << sig6(p_values[0]) << " (1 link), "
           << sig6(p_values[1]) << " (3 links), alpha 0.01";
}

// 5. MDC: fuzzed arity multisets and saturation on N = 1000.
void mdc_contracts(Outcome& o) {
  Rng gen(5);
  std::size_t max_iter_ratio_fail = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto size = static_cast<std::size_t>(gen.uniform_int(4, 200));
    const auto arities = random_arities(gen, size, 1, 40);
    const auto ports = std::accumulate(arities.begin(), arities.end(), std::uint64_t{0});
    const auto mode = gen.uniform_index(2) ? MdcMode::kAssortative : MdcMode::kDisassortative;
    const auto out = mdc(fixtures::controls_with_arities(arities), MdcParams{mode, gen.next()});
    if (out.iterations > (ports + 1) / 2) ++max_iter_ratio_fail;
    const auto report = validate(out.graph);
    o.require(report.ok(), "invalid link graph in trial " + std::to_string(trial));
    std::vector<std::vector<std::uint32_t>> ends(out.graph.edge_count);
    for (const auto& [port, link] : out.graph.links) {
      o.require(std::holds_alternative<EdgeId>(link), "mdc created an outer name");
      ends[std::get<EdgeId>(link).value].push_back(port.node.value);
    }
    for (const auto& e : ends) o.require(e.size() == 2 && e[0] != e[1], "edge without two distinct endpoints");
  }
  o.require(max_iter_ratio_fail == 0, "iteration bound exceeded");

  double worst = 1.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(derive_seed(55, seed, 0));
    const auto arities = random_arities(rng, 1000, 1, 40);
    const double ports = std::accumulate(arities.begin(), arities.end(), 0.0);
    for (auto mode : {MdcMode::kAssortative, MdcMode::kDisassortative}) {
      const auto out = mdc(fixtures::controls_with_arities(arities), MdcParams{mode, seed});
      worst = std::min(worst, static_cast<double>(out.graph.links.size()) / ports);
    }
  }
  o.require(worst >= 0.95, "saturation " + sig6(worst));
  o.detail << "10000 fuzzed multisets terminated and well-formed; min saturation " << sig6(worst)
           << " over 40 runs (tol 0.95)";
}

// 6. Neighbour-difference and assortativity bookkeeping.
void assortativity_bookkeeping(Outcome& o) {
  const auto fixture = fixtures::four_node_link_graph().link;
  const double d1 = avg_neighbor_difference(fixture, NodeId{0});
  o.require(d1 == 4.0 / 3.0, "delta_v1 = " + sig6(d1));

  std::size_t graphs = 0, degenerate = 0, oracle_checks = 0;
  double worst = 0.0;
  Rng gen(6);
  for (int trial = 0; trial < 300; ++trial) {
    GenerateParams gp;
    gp.roots = static_cast<std::uint32_t>(gen.uniform_int(1, 5));
    gp.places = static_cast<std::uint32_t>(gen.uniform_int(20, 400));
    gp.signature = uniform_arity_signature(static_cast<std::uint32_t>(gen.uniform_int(1, 30)), 0, 12, gen);
    gp.link = trial % 3 == 0 ? LinkStrategy::kMppl : LinkStrategy::kMdc;
    gp.mdc_mode = trial % 2 ? MdcMode::kAssortative : MdcMode::kDisassortative;
    gp.mppl.p = 1.0;
    Generated g;
    try {
      g = generate_bigraph(gp, gen.next());
    } catch (const LinkageError&) {
      continue;
    }
    if (g.bigraph.link.links.empty()) continue;
    for (double r : {1.0, -1.0, 0.3}) {
      const auto rep = node_assortativity(g.bigraph.link, r);
      ++graphs;
      if (rep.degenerate) {
        ++degenerate;
        continue;
      }
      double hat = 0.0, alpha = 0.0;
      for (const auto& na : rep.per_node) {
        hat += na.delta / rep.delta_sum;
        alpha += na.alpha;
        if (r == 1.0 && g.bigraph.link.links.size() <= 300) {
          const double want = oracle::delta(g.bigraph.link, na.node.value);
          o.require(std::fabs(want - na.delta) < 1e-12, "delta disagrees with oracle");
          ++oracle_checks;
        }
      }
      worst = std::max({worst, std::fabs(hat - 1.0), std::fabs(alpha - r)});
    }
  }
  o.require(worst <= 1e-9, "bookkeeping error " + std::to_string(worst));
  o.require(graphs - degenerate > 0, "no non-degenerate graph");

  const auto paired = mppl(fixtures::controls_with_arities(std::vector<std::uint32_t>(1000, 1)),
                           MpplParams{1.0, 0.5, 0.5, 1});
  const auto rep = node_assortativity(paired, 1.0);
  o.require(rep.per_node.size() == 1000 && rep.lambda == 0.002, "lambda " + sig6(rep.lambda));
  o.detail << "delta_v1 " << sig6(d1) << "; " << graphs << " reports (" << degenerate
           << " degenerate), max bookkeeping error " << worst << " (tol 1e-9); " << oracle_checks
           << " deltas checked against brute force; lambda " << rep.lambda;
}

// 7. Assortative wiring correlates arity with alpha; disassortative wiring
//    leaves low-arity nodes below high-arity nodes.
void directional_mixing(Outcome& o) {
  double min_rho = 1.0, sum_rho = 0.0;
  std::size_t ordered = 0;
  ClassFractions mean_classes;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(derive_seed(77, seed, 0));
    const auto arities = random_arities(rng, 1000, 1, 40);
    const auto controls = fixtures::controls_with_arities(arities);

    const auto assort = node_assortativity(mdc(controls, MdcParams{MdcMode::kAssortative, seed}).graph, 1.0);
    std::vector<double> ar, al;
    for (const auto& na : assort.per_node) {
      ar.push_back(na.arity);
      al.push_back(na.alpha);
    }
    const double rho = spearman(ar, al);
    min_rho = std::min(min_rho, rho);
    sum_rho += rho;
    mean_classes.slightly_assortative += assort.classes.slightly_assortative / 20.0;
    mean_classes.slightly_disassortative += assort.classes.slightly_disassortative / 20.0;
    mean_classes.strong_outlier += assort.classes.strong_outlier / 20.0;

    auto dis = node_assortativity(mdc(controls, MdcParams{MdcMode::kDisassortative, seed}).graph, -1.0);
    auto nodes = dis.per_node;
    std::stable_sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) { return a.arity < b.arity; });
    const std::size_t decile = nodes.size() / 10;
    double low = 0.0, high = 0.0;
    for (std::size_t i = 0; i < decile; ++i) {
      low += nodes[i].alpha;
      high += nodes[nodes.size() - 1 - i].alpha;
    }
    if (low / decile < high / decile) ++ordered;
  }
  o.require(min_rho > 0.0, "non-positive Spearman correlation " + sig6(min_rho));
  o.require(ordered == 20, "decile ordering held in " + std::to_string(ordered) + "/20 seeds");
  o.detail << "assortative Spearman min " << sig6(min_rho) << " mean " << sig6(sum_rho / 20)
           << "; disassortative low<high decile in " << ordered << "/20 seeds; mean classes "
           << sig6(mean_classes.slightly_assortative) << "/" << sig6(mean_classes.slightly_disassortative) << "/"
           << sig6(mean_classes.strong_outlier);
}

// 8. Same seed, same bytes; deserialize(serialize(b)) == b.
void determinism_round_trip(Outcome& o) {
  Rng gen(8);
  for (int trial = 0; trial < 100; ++trial) {
    GenerateParams gp;
    gp.roots = static_cast<std::uint32_t>(gen.uniform_int(1, 10));
    gp.places = gp.roots + static_cast<std::uint32_t>(gen.uniform_int(0, 500));
    gp.signature = uniform_arity_signature(static_cast<std::uint32_t>(gen.uniform_int(1, 40)), 0, 8, gen);
    gp.link = static_cast<LinkStrategy>(gen.uniform_index(3));
    gp.mppl = {gen.uniform01(), gen.uniform01() + 0.01, gen.uniform01(), 0};
    gp.mdc_mode = gen.uniform_index(2) ? MdcMode::kAssortative : MdcMode::kDisassortative;
    const auto seed = gen.next();
    Generated a, b;
    try {
      a = generate_bigraph(gp, seed);
      b = generate_bigraph(gp, seed);
    } catch (const LinkageError&) {
      gp.link = LinkStrategy::kNone;
      a = generate_bigraph(gp, seed);
      b = generate_bigraph(gp, seed);
    }
    const auto text = serialize(a.bigraph, a.info);
    o.require(text == serialize(b.bigraph, b.info), "documents differ for identical seeds");
    const auto doc = read_document(text);
    o.require(doc.bigraph == a.bigraph && doc.generation == a.info, "round trip changed the bigraph");
    o.require(serialize(doc.bigraph, doc.generation) == text, "re-serialization differs");
    o.require(validate(doc.bigraph).ok(), "generated bigraph invalid");
  }
  o.detail << "100 random bigraphs byte-identical and round-tripped";
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  std::vector<CountCell> counts;
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"average-degree identity", average_degree_identity},
      {"binomial positive-arity counts",
       [&](Outcome& o) {
         counts = positive_count_campaign();
         binomial_arity_counts(o, counts);
       }},
      {"MLE fits and AIC ordering", [&](Outcome& o) { aic_model_selection(o, counts); }},
      {"MPPL contracts", mppl_contracts},
      {"MDC contracts", mdc_contracts},
      {"assortativity bookkeeping", assortativity_bookkeeping},
      {"directional mixing", directional_mixing},
      {"determinism and round-trip", determinism_round_trip},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = Clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("%s [%zu] %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.str().c_str(), secs);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
