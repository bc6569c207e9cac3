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

// Link-graph wiring over a fixed node set.
//
// Two strategies:
//
//  * Minimal pairwise port linkage (mppl): floor(p*m/2) links, each joining
//    port 0 of two uniformly drawn, not yet linked nodes through a fresh edge
//    or outer name. Every node takes part in at most one link.
//
//  * Maximal degree correlation (mdc): repeatedly draws four distinct nodes
//    that still have free ports, ranks them, and wires two fresh two-point
//    edges: top with second and third with bottom (assortative), or top with
//    bottom and the middle two (disassortative). Saturated nodes leave the
//    queue; the loop stops once fewer than four nodes remain.
//
// Both operate on a caller-chosen candidate subset; every candidate must
// have a control with at least one port.

#ifndef RBG_LINKGEN_HPP_
#define RBG_LINKGEN_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbg/core.hpp"
#include "rbg/rng.hpp"

namespace rbg {

class LinkageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MpplParams {
  double p = 1.0;         // fraction of candidates to link
  double outer_weight = 0.5;  // p_o
  double edge_weight = 0.5;   // p_e
  std::uint64_t seed = 0;
};

enum class MdcMode { kAssortative, kDisassortative };

struct MdcParams {
  MdcMode mode = MdcMode::kAssortative;
  std::uint64_t seed = 0;
};

enum class LinkKind { kOuterName, kEdge };

// floor(p*m/2 + 1e-9).
inline std::uint64_t max_pairwise_links(double p, std::uint64_t m) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("link fraction p must lie in [0,1]");
  return static_cast<std::uint64_t>(std::floor(p * static_cast<double>(m) / 2.0 + 1e-9));
}

// Outer name with probability p_o/(p_o+p_e), otherwise edge.
inline LinkKind weighted_link_kind(double outer_weight, double edge_weight, Rng& rng) {
  if (!(outer_weight >= 0.0 && edge_weight >= 0.0) || outer_weight + edge_weight <= 0.0) {
    throw std::invalid_argument("link kind weights must be non-negative with positive sum");
  }
  const double u = rng.uniform01() * (outer_weight + edge_weight);
  return u < outer_weight ? LinkKind::kOuterName : LinkKind::kEdge;
}

namespace detail {

inline void check_candidates(const std::vector<Control>& controls,
                             const std::vector<NodeId>& candidates) {
  std::vector<bool> seen(controls.size(), false);
  for (auto v : candidates) {
    if (v.value >= controls.size()) throw std::out_of_range("unknown node " + node_label(v));
    if (controls[v.value].arity == 0) {
      throw std::invalid_argument("node " + node_label(v) + " has no ports");
    }
    if (seen[v.value]) throw std::invalid_argument("node " + node_label(v) + " listed twice");
    seen[v.value] = true;
  }
}

}  // namespace detail

// Links only among `candidates`; the result spans every node in `controls`.
// Throws LinkageError when floor(p*m/2) < 1.
inline LinkGraph mppl(const std::vector<Control>& controls, const std::vector<NodeId>& candidates,
                      const MpplParams& params, Rng& rng) {
  detail::check_candidates(controls, candidates);
  if (!(params.outer_weight >= 0.0 && params.edge_weight >= 0.0) ||
      params.outer_weight + params.edge_weight <= 0.0) {
    throw std::invalid_argument("link kind weights must be non-negative with positive sum");
  }
  const auto links = max_pairwise_links(params.p, candidates.size());
  if (links < 1) {
    throw LinkageError("probability p is too small or too few nodes for creating links");
  }

  LinkGraph lg;
  lg.controls = controls;
  std::vector<NodeId> pool = candidates;
  for (std::uint64_t c = 0; c < links; ++c) {
    const auto i = rng.uniform_index(pool.size());
    auto j = rng.uniform_index(pool.size());
    while (j == i) j = rng.uniform_index(pool.size());

    Link l;
    if (weighted_link_kind(params.outer_weight, params.edge_weight, rng) ==
        LinkKind::kOuterName) {
      const NameId y{static_cast<std::uint32_t>(lg.outer_names.size())};
      lg.outer_names.push_back("y" + std::to_string(y.value));
      l = y;
    } else {
      l = EdgeId{lg.edge_count++};
    }
    lg.links[Port{pool[i], 0}] = l;
    lg.links[Port{pool[j], 0}] = l;

    // Swap-remove the higher position first.
    for (auto pos : {std::max(i, j), std::min(i, j)}) {
      pool[pos] = pool.back();
      pool.pop_back();
    }
  }
  return lg;
}

// All nodes are candidates.
inline LinkGraph mppl(const std::vector<Control>& controls, const MpplParams& params) {
  std::vector<NodeId> all;
  for (std::size_t i = 0; i < controls.size(); ++i) all.push_back(NodeId{static_cast<std::uint32_t>(i)});
  Rng rng(params.seed);
  return mppl(controls, all, params, rng);
}

struct MdcOutcome {
  LinkGraph graph;
  std::size_t iterations = 0;
  std::optional<std::string> diagnostic;
};

// Ranking used to order the four drawn nodes: arity, then free ports
// (both descending), then node id ascending.
struct MdcRank {
  std::uint32_t arity;
  std::uint32_t free_ports;
  NodeId node;

  friend bool operator<(const MdcRank& a, const MdcRank& b) {
    if (a.arity != b.arity) return a.arity > b.arity;
    if (a.free_ports != b.free_ports) return a.free_ports > b.free_ports;
    return a.node < b.node;
  }
};

// Given four nodes ordered from highest to lowest rank, the two pairs to wire.
inline std::array<std::array<std::size_t, 2>, 2> mdc_pairing(MdcMode mode) {
  if (mode == MdcMode::kAssortative) return {{{0, 1}, {2, 3}}};
  return {{{0, 3}, {1, 2}}};
}

inline MdcOutcome mdc(const std::vector<Control>& controls, const std::vector<NodeId>& candidates,
                      const MdcParams& params, Rng& rng) {
  detail::check_candidates(controls, candidates);

  MdcOutcome out;
  out.graph.controls = controls;
  if (candidates.size() < 4) {
    out.diagnostic = "fewer than four nodes with free ports (" +
                     std::to_string(candidates.size()) + "); no links created";
    return out;
  }

  std::vector<std::uint32_t> free_ports(controls.size(), 0);
  std::vector<std::uint32_t> next_port(controls.size(), 0);
  for (auto v : candidates) free_ports[v.value] = controls[v.value].arity;

  std::vector<NodeId> queue = candidates;
  const auto pairing = mdc_pairing(params.mode);
  std::array<std::size_t, 4> picked{};
  std::array<MdcRank, 4> ranked{};

  while (queue.size() >= 4) {
    for (std::size_t k = 0; k < 4; ++k) {
      std::size_t pos;
      do {
        pos = static_cast<std::size_t>(rng.uniform_index(queue.size()));
      } while (std::find(picked.begin(), picked.begin() + k, pos) != picked.begin() + k);
      picked[k] = pos;
    }
    for (std::size_t k = 0; k < 4; ++k) {
      const auto v = queue[picked[k]];
      ranked[k] = {controls[v.value].arity, free_ports[v.value], v};
    }
    std::sort(ranked.begin(), ranked.end());

    for (const auto& pair : pairing) {
      const EdgeId e{out.graph.edge_count++};
      for (auto k : pair) {
        const auto v = ranked[k].node;
        out.graph.links[Port{v, next_port[v.value]++}] = e;
        --free_ports[v.value];
      }
    }
    ++out.iterations;

    std::sort(picked.begin(), picked.end(), std::greater<>());
    for (auto pos : picked) {
      if (free_ports[queue[pos].value] == 0) {
        queue[pos] = queue.back();
        queue.pop_back();
      }
    }
  }
  return out;
}

inline MdcOutcome mdc(const std::vector<Control>& controls, const MdcParams& params) {
  std::vector<NodeId> all;
  for (std::size_t i = 0; i < controls.size(); ++i) all.push_back(NodeId{static_cast<std::uint32_t>(i)});
  Rng rng(params.seed);
  return mdc(controls, all, params, rng);
}

}  // namespace rbg

#endif  // RBG_LINKGEN_HPP_
