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

// Structural statistics of generated bigraphs.
//
// Place graphs: degree histogram over all places (roots included) and the
// count of positive-arity nodes, with moment summaries and maximum-likelihood
// fits (binomial, Poisson, geometric) ranked by AIC.
//
// Link graphs: per-node average neighbour difference
//   delta_v = (1/d_v) * sum_{u in N(v)} |d_u - d_v|
// where d_v is the number of distinct links at v and N(v) the distinct nodes
// sharing a link with v; and node assortativity
//   alpha_v = lambda - delta_v / S,  S = sum delta_v,  lambda = (1 + r) / N
// for an assumed network coefficient r; sum alpha_v = r.

#ifndef RBG_METRICS_HPP_
#define RBG_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbg/core.hpp"

namespace rbg {

// ---------------------------------------------------------------------------
// Place-graph degree distribution

struct DegreeHistogram {
  std::map<std::size_t, std::size_t> bins;
  std::map<std::size_t, double> fractions;
  std::size_t total_places = 0;

  double average_degree() const {
    if (total_places == 0) return 0.0;
    double sum = 0.0;
    for (const auto& [d, c] : bins) sum += static_cast<double>(d * c);
    return sum / static_cast<double>(total_places);
  }
};

inline DegreeHistogram degree_distribution(const PlaceGraph& pg) {
  DegreeHistogram h;
  h.total_places = pg.place_count();
  const auto kids = child_counts(pg);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    const bool is_node = i >= pg.root_count;
    ++h.bins[kids[i] + (is_node ? 1 : 0)];
  }
  for (const auto& [d, c] : h.bins) {
    h.fractions[d] = static_cast<double>(c) / static_cast<double>(h.total_places);
  }
  return h;
}

// Bin-wise mean of the fractions; a degree absent from a run counts as zero.
inline std::map<std::size_t, double> average_fractions(std::span<const DegreeHistogram> runs) {
  std::map<std::size_t, double> out;
  if (runs.empty()) return out;
  for (const auto& h : runs) {
    for (const auto& [d, f] : h.fractions) out[d] += f;
  }
  for (auto& [d, f] : out) f /= static_cast<double>(runs.size());
  return out;
}

inline std::size_t positive_arity_count(const PlaceGraph& pg) {
  return static_cast<std::size_t>(std::count_if(pg.controls.begin(), pg.controls.end(),
                                                [](const Control& c) { return c.arity >= 1; }));
}

inline std::size_t positive_arity_count(const Bigraph& b) { return positive_arity_count(b.place); }

// ---------------------------------------------------------------------------
// Moments

struct SampleMoments {
  double mean = 0.0;
  double sd = 0.0;
  double variance = 0.0;  // unbiased
  double skewness = 0.0;  // m3 / m2^1.5, population central moments
  double kurtosis = 0.0;  // excess: m4 / m2^2 - 3
};

inline SampleMoments sample_moments(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("sample moments need at least two samples");
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  SampleMoments s;
  s.mean = mean;
  s.variance = m2 / (n - 1.0);
  s.sd = std::sqrt(s.variance);
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 > 0.0) {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.kurtosis = m4 / (m2 * m2) - 3.0;
  } else {
    s.skewness = std::numeric_limits<double>::quiet_NaN();
    s.kurtosis = std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Maximum-likelihood fits

enum class Model { kBinomial, kPoisson, kGeometric };

inline std::string model_name(Model m) {
  switch (m) {
    case Model::kBinomial: return "binomial";
    case Model::kPoisson: return "poisson";
    case Model::kGeometric: return "geometric";
  }
  return "unknown";
}

struct FitResult {
  Model model = Model::kBinomial;
  double estimate = 0.0;
  double standard_error = 0.0;
  double log_likelihood = 0.0;
  double aic = 0.0;
};

inline double aic(double log_likelihood, int k) { return 2.0 * k - 2.0 * log_likelihood; }

namespace detail {

// x * log(y) with the 0 * log(0) = 0 convention.
inline double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }

inline double checked_mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("cannot fit an empty sample");
  for (double x : xs) {
    if (!(x >= 0.0) || x != std::floor(x)) {
      throw std::invalid_argument("samples must be non-negative integers");
    }
  }
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace detail

// Binomial with known trial count; p-hat = mean / trials.
inline FitResult fit_binomial(std::span<const double> xs, std::uint64_t trials) {
  const double mean = detail::checked_mean(xs);
  const double n = static_cast<double>(trials);
  for (double x : xs) {
    if (x > n) throw std::invalid_argument("binomial sample exceeds trial count");
  }
  const double count = static_cast<double>(xs.size());
  FitResult f;
  f.model = Model::kBinomial;
  f.estimate = trials == 0 ? 0.0 : mean / n;
  const double p = f.estimate;
  f.standard_error = trials == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / (n * count));
  double ll = 0.0;
  for (double x : xs) {
    ll += std::lgamma(n + 1.0) - std::lgamma(x + 1.0) - std::lgamma(n - x + 1.0) +
          detail::xlogy(x, p) + detail::xlogy(n - x, 1.0 - p);
  }
  f.log_likelihood = ll;
  f.aic = aic(ll, 1);
  return f;
}

inline FitResult fit_poisson(std::span<const double> xs) {
  const double mean = detail::checked_mean(xs);
  const double count = static_cast<double>(xs.size());
  FitResult f;
  f.model = Model::kPoisson;
  f.estimate = mean;
  f.standard_error = std::sqrt(mean / count);
  double ll = 0.0;
  for (double x : xs) ll += detail::xlogy(x, mean) - mean - std::lgamma(x + 1.0);
  f.log_likelihood = ll;
  f.aic = aic(ll, 1);
  return f;
}

// Failure-count geometric on {0, 1, ...}: P(x) = p (1-p)^x.
inline FitResult fit_geometric(std::span<const double> xs) {
  const double mean = detail::checked_mean(xs);
  const double count = static_cast<double>(xs.size());
  FitResult f;
  f.model = Model::kGeometric;
  f.estimate = 1.0 / (1.0 + mean);
  const double p = f.estimate;
  f.standard_error = std::sqrt(p * p * (1.0 - p) / count);
  f.log_likelihood = count * (std::log(p) + detail::xlogy(mean, 1.0 - p));
  f.aic = aic(f.log_likelihood, 1);
  return f;
}

// ---------------------------------------------------------------------------
// Link-graph neighbourhoods

// Distinct links touched by v's connected ports.
inline std::size_t link_degree(const LinkGraph& lg, NodeId v) {
  std::set<Link> seen;
  for (const auto& port : connected_ports(lg, v)) seen.insert(lg.links.at(port));
  return seen.size();
}

// Distinct other nodes sharing at least one link with v.
inline std::vector<NodeId> link_neighbors(const LinkGraph& lg, NodeId v) {
  std::set<Link> mine;
  for (const auto& port : connected_ports(lg, v)) mine.insert(lg.links.at(port));
  std::set<NodeId> out;
  for (const auto& [port, link] : lg.links) {
    if (port.node != v && mine.count(link) != 0) out.insert(port.node);
  }
  return {out.begin(), out.end()};
}

// Precomputed link incidence.
class LinkIndex {
 public:
  explicit LinkIndex(const LinkGraph& lg)
      : degree_(lg.node_count(), 0), members_(lg.edge_count + lg.outer_names.size()) {
    std::vector<std::set<std::size_t>> links_of(lg.node_count());
    for (const auto& [port, link] : lg.links) {
      const auto id = slot(lg, link);
      links_of[port.node.value].insert(id);
      auto& m = members_[id];
      if (m.empty() || m.back() != port.node.value) m.push_back(port.node.value);
    }
    for (auto& m : members_) {
      std::sort(m.begin(), m.end());
      m.erase(std::unique(m.begin(), m.end()), m.end());
    }
    links_.resize(lg.node_count());
    for (std::size_t v = 0; v < links_of.size(); ++v) {
      degree_[v] = links_of[v].size();
      links_.at(v).assign(links_of[v].begin(), links_of[v].end());
    }
  }

  std::size_t degree(std::uint32_t v) const { return degree_[v]; }

  std::vector<std::uint32_t> neighbors(std::uint32_t v) const {
    std::vector<std::uint32_t> out;
    for (auto l : links_[v]) {
      for (auto u : members_[l]) {
        if (u != v) out.push_back(u);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  static std::size_t slot(const LinkGraph& lg, const Link& l) {
    if (const auto* e = std::get_if<EdgeId>(&l)) return e->value;
    return lg.edge_count + std::get<NameId>(l).value;
  }

  std::vector<std::size_t> degree_;
  std::vector<std::vector<std::uint32_t>> members_;
  std::vector<std::vector<std::size_t>> links_;
};

// Throws std::domain_error for an isolated node (d_v = 0).
inline double avg_neighbor_difference(const LinkGraph& lg, NodeId v) {
  const auto dv = static_cast<double>(link_degree(lg, v));
  if (dv == 0.0) {
    throw std::domain_error("average neighbour difference undefined for isolated node " +
                            node_label(v));
  }
  double sum = 0.0;
  for (auto u : link_neighbors(lg, v)) sum += std::fabs(static_cast<double>(link_degree(lg, u)) - dv);
  return sum / dv;
}

// ---------------------------------------------------------------------------
// Node assortativity

struct NodeAssortativity {
  NodeId node;
  std::uint32_t arity = 0;
  std::size_t connected_ports = 0;
  std::size_t link_degree = 0;
  double delta = 0.0;
  double alpha = 0.0;
};

struct ClassFractions {
  double slightly_assortative = 0.0;     // alpha in (mu, mu + 3 sigma]
  double slightly_disassortative = 0.0;  // alpha in [mu - 3 sigma, mu]
  double strong_outlier = 0.0;           // |alpha - mu| > 3 sigma
};

struct AssortativityReport {
  // Only nodes with at least one link; N = per_node.size().
  std::vector<NodeAssortativity> per_node;
  std::size_t isolated_nodes = 0;
  double r = 1.0;
  double lambda = 0.0;
  double delta_sum = 0.0;  // S
  double mean_alpha = 0.0;
  double sd_alpha = 0.0;  // population
  ClassFractions classes;
  // S = 0: every delta is zero, scaled values are undefined and alpha is not set.
  bool degenerate = false;
};

inline ClassFractions classify(std::span<const double> alphas, double mean, double sd) {
  ClassFractions c;
  if (alphas.empty()) return c;
  for (double a : alphas) {
    if (a > mean && a <= mean + 3.0 * sd) {
      c.slightly_assortative += 1.0;
    } else if (a >= mean - 3.0 * sd && a <= mean) {
      c.slightly_disassortative += 1.0;
    } else {
      c.strong_outlier += 1.0;
    }
  }
  const double n = static_cast<double>(alphas.size());
  c.slightly_assortative /= n;
  c.slightly_disassortative /= n;
  c.strong_outlier /= n;
  return c;
}

// Throws std::invalid_argument unless r lies in [-1, 1] and
// std::domain_error when no node has a link. S = 0 yields a degenerate report.
inline AssortativityReport node_assortativity(const LinkGraph& lg, double r) {
  if (!(r >= -1.0 && r <= 1.0)) throw std::invalid_argument("r must lie in [-1, 1]");
  const LinkIndex index(lg);
  AssortativityReport rep;
  rep.r = r;

  std::vector<std::size_t> ports(lg.node_count(), 0);
  for (const auto& [port, link] : lg.links) ++ports[port.node.value];

  for (std::uint32_t v = 0; v < lg.node_count(); ++v) {
    const auto dv = index.degree(v);
    if (dv == 0) {
      ++rep.isolated_nodes;
      continue;
    }
    double sum = 0.0;
    for (auto u : index.neighbors(v)) {
      sum += std::fabs(static_cast<double>(index.degree(u)) - static_cast<double>(dv));
    }
    NodeAssortativity na;
    na.node = NodeId{v};
    na.arity = lg.controls[v].arity;
    na.connected_ports = ports[v];
    na.link_degree = dv;
    na.delta = sum / static_cast<double>(dv);
    rep.per_node.push_back(na);
    rep.delta_sum += na.delta;
  }
  if (rep.per_node.empty()) throw std::domain_error("node assortativity needs a linked node (N = 0)");

  const double n = static_cast<double>(rep.per_node.size());
  rep.lambda = (1.0 + r) / n;
  if (rep.delta_sum <= 0.0) {
    rep.degenerate = true;
    return rep;
  }

  std::vector<double> alphas;
  alphas.reserve(rep.per_node.size());
  for (auto& na : rep.per_node) {
    na.alpha = rep.lambda - na.delta / rep.delta_sum;
    alphas.push_back(na.alpha);
  }
  rep.mean_alpha = std::accumulate(alphas.begin(), alphas.end(), 0.0) / n;
  double ss = 0.0;
  for (double a : alphas) ss += (a - rep.mean_alpha) * (a - rep.mean_alpha);
  rep.sd_alpha = std::sqrt(ss / n);
  rep.classes = classify(alphas, rep.mean_alpha, rep.sd_alpha);
  return rep;
}

// ---------------------------------------------------------------------------
// Rank correlation

// Ranks starting at 1, ties receive their average rank.
inline std::vector<double> average_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double rank = (static_cast<double>(i + j) / 2.0) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

inline double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("correlation needs two equally long samples of size >= 2");
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

// Spearman's rho: Pearson correlation of average ranks.
inline double spearman(std::span<const double> xs, std::span<const double> ys) {
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  return pearson(rx, ry);
}

}  // namespace rbg

#endif  // RBG_METRICS_HPP_
