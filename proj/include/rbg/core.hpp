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

// Concrete bigraph data model for agents (ground bigraphs: no sites, no
// inner names). A bigraph is a place graph (forest of roots and nodes) and a
// link graph (ports of nodes wired to edges or outer names) over one node set.
//
// Node, edge and outer-name identifiers are dense generation-order integers.
// They render as v0.., e0.., and roots as r0..; outer names carry their own
// labels (generators emit y0..).

#ifndef RBG_CORE_HPP_
#define RBG_CORE_HPP_

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rbg {

struct NodeId {
  std::uint32_t value = 0;
  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

struct RootIndex {
  std::uint32_t value = 0;
  friend auto operator<=>(const RootIndex&, const RootIndex&) = default;
};

struct EdgeId {
  std::uint32_t value = 0;
  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

struct NameId {
  std::uint32_t value = 0;
  friend auto operator<=>(const NameId&, const NameId&) = default;
};

// A place is either a root (region) or a node.
using Place = std::variant<RootIndex, NodeId>;

// A link is either a closed edge or an open outer name.
using Link = std::variant<EdgeId, NameId>;

// The index-th port of a node.
struct Port {
  NodeId node;
  std::uint32_t index = 0;
  friend auto operator<=>(const Port&, const Port&) = default;
};

struct Control {
  std::string label;
  std::uint32_t arity = 0;
  friend bool operator==(const Control&, const Control&) = default;
};

struct Signature {
  std::vector<Control> controls;

  bool empty() const { return controls.empty(); }
  std::size_t size() const { return controls.size(); }

  const Control* find(const std::string& label) const {
    auto it = std::find_if(controls.begin(), controls.end(),
                           [&](const Control& c) { return c.label == label; });
    return it == controls.end() ? nullptr : &*it;
  }

  friend bool operator==(const Signature&, const Signature&) = default;
};

// Throws std::invalid_argument on duplicate labels.
inline void check_unique_labels(const Signature& sig) {
  std::set<std::string> seen;
  for (const auto& c : sig.controls) {
    if (!seen.insert(c.label).second) {
      throw std::invalid_argument("duplicate control label '" + c.label + "'");
    }
  }
}

struct PlaceGraph {
  std::uint32_t root_count = 0;
  // Indexed by NodeId::value.
  std::vector<Control> controls;
  std::vector<Place> parents;

  std::size_t node_count() const { return controls.size(); }
  std::size_t place_count() const { return root_count + controls.size(); }

  friend bool operator==(const PlaceGraph&, const PlaceGraph&) = default;
};

struct LinkGraph {
  // Indexed by NodeId::value.
  std::vector<Control> controls;
  std::uint32_t edge_count = 0;
  // Indexed by NameId::value.
  std::vector<std::string> outer_names;
  // Only connected ports are present.
  std::map<Port, Link> links;

  std::size_t node_count() const { return controls.size(); }

  friend bool operator==(const LinkGraph&, const LinkGraph&) = default;
};

struct Bigraph {
  Signature signature;
  PlaceGraph place;
  LinkGraph link;

  friend bool operator==(const Bigraph&, const Bigraph&) = default;
};

inline std::string node_label(NodeId v) { return "v" + std::to_string(v.value); }
inline std::string root_label(RootIndex r) { return "r" + std::to_string(r.value); }
inline std::string edge_label(EdgeId e) { return "e" + std::to_string(e.value); }

inline std::string place_label(const Place& p) {
  if (const auto* r = std::get_if<RootIndex>(&p)) return root_label(*r);
  return node_label(std::get<NodeId>(p));
}

inline std::string link_label(const LinkGraph& lg, const Link& l) {
  if (const auto* e = std::get_if<EdgeId>(&l)) return edge_label(*e);
  auto y = std::get<NameId>(l).value;
  return y < lg.outer_names.size() ? lg.outer_names[y] : "y?" + std::to_string(y);
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string rule;
  std::string description;
  std::string element;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string rule, std::string description, std::string element) {
    violations.push_back({std::move(rule), std::move(description), std::move(element)});
  }
  bool has(const std::string& rule) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.rule == rule; });
  }
  void append(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
};

namespace detail {

inline void validate_place(const PlaceGraph& pg, ValidationReport& report) {
  const auto n = pg.node_count();
  if (pg.parents.size() != n) {
    report.add("parent-total",
               "parent map covers " + std::to_string(pg.parents.size()) + " of " +
                   std::to_string(n) + " nodes",
               "place");
  }
  const auto m = std::min(n, pg.parents.size());
  bool ranges_ok = true;
  for (std::size_t i = 0; i < m; ++i) {
    const NodeId v{static_cast<std::uint32_t>(i)};
    const auto& parent = pg.parents[i];
    if (const auto* r = std::get_if<RootIndex>(&parent)) {
      if (r->value >= pg.root_count) {
        report.add("parent-range", "parent is unknown root " + root_label(*r), node_label(v));
        ranges_ok = false;
      }
    } else if (std::get<NodeId>(parent).value >= m) {
      report.add("parent-range", "parent is unknown node " + place_label(parent),
                 node_label(v));
      ranges_ok = false;
    }
  }
  if (!ranges_ok) return;

  // Colour walk: 0 unvisited, 1 on current path, 2 known to reach a root.
  std::vector<std::uint8_t> state(m, 0);
  std::vector<std::uint32_t> path;
  for (std::size_t start = 0; start < m; ++start) {
    if (state[start] != 0) continue;
    path.clear();
    std::uint32_t cur = static_cast<std::uint32_t>(start);
    bool cyclic = false;
    for (;;) {
      if (state[cur] == 2) break;
      if (state[cur] == 1) {
        cyclic = true;
        break;
      }
      state[cur] = 1;
      path.push_back(cur);
      const auto& parent = pg.parents[cur];
      if (std::holds_alternative<RootIndex>(parent)) break;
      cur = std::get<NodeId>(parent).value;
    }
    if (cyclic) {
      report.add("acyclic", "parent chain revisits " + node_label(NodeId{cur}),
                 node_label(NodeId{cur}));
    }
    for (auto p : path) state[p] = 2;
  }
}

inline void validate_link(const LinkGraph& lg, ValidationReport& report) {
  std::vector<bool> used_edges(lg.edge_count, false);
  std::vector<bool> used_names(lg.outer_names.size(), false);

  std::set<std::string> labels;
  for (const auto& y : lg.outer_names) {
    if (!labels.insert(y).second) {
      report.add("name-unique", "outer name label occurs twice", y);
    }
  }

  for (const auto& [port, link] : lg.links) {
    const auto elem = node_label(port.node) + ":" + std::to_string(port.index);
    if (port.node.value >= lg.node_count()) {
      report.add("port-node", "port belongs to unknown node", elem);
      continue;
    }
    const auto arity = lg.controls[port.node.value].arity;
    if (port.index >= arity) {
      report.add("port-range",
                 "port index " + std::to_string(port.index) + " not below arity " +
                     std::to_string(arity),
                 elem);
    }
    if (const auto* e = std::get_if<EdgeId>(&link)) {
      if (e->value >= lg.edge_count) {
        report.add("link-range", "port mapped to unknown edge " + edge_label(*e), elem);
      } else {
        used_edges[e->value] = true;
      }
    } else {
      const auto y = std::get<NameId>(link).value;
      if (y >= lg.outer_names.size()) {
        report.add("link-range", "port mapped to unknown outer name", elem);
      } else {
        used_names[y] = true;
      }
    }
  }

  for (std::uint32_t e = 0; e < lg.edge_count; ++e) {
    if (!used_edges[e]) report.add("idle-link", "edge has no points", edge_label(EdgeId{e}));
  }
  for (std::size_t y = 0; y < lg.outer_names.size(); ++y) {
    if (!used_names[y]) report.add("idle-link", "outer name has no points", lg.outer_names[y]);
  }
}

}  // namespace detail

inline ValidationReport validate(const PlaceGraph& pg) {
  ValidationReport report;
  detail::validate_place(pg, report);
  return report;
}

inline ValidationReport validate(const LinkGraph& lg) {
  ValidationReport report;
  detail::validate_link(lg, report);
  return report;
}

// Lists every violated structural invariant; never throws.
inline ValidationReport validate(const Bigraph& b) {
  ValidationReport report;

  std::set<std::string> labels;
  for (const auto& c : b.signature.controls) {
    if (!labels.insert(c.label).second) {
      report.add("control-unique", "control label occurs twice in signature", c.label);
    }
  }

  detail::validate_place(b.place, report);
  detail::validate_link(b.link, report);

  if (b.place.node_count() != b.link.node_count()) {
    report.add("shared-nodes",
               "place graph has " + std::to_string(b.place.node_count()) +
                   " nodes, link graph has " + std::to_string(b.link.node_count()),
               "bigraph");
  }
  const auto m = std::min(b.place.node_count(), b.link.node_count());
  for (std::size_t i = 0; i < m; ++i) {
    const NodeId v{static_cast<std::uint32_t>(i)};
    if (b.place.controls[i] != b.link.controls[i]) {
      report.add("control-agree", "place and link control differ", node_label(v));
    }
    const auto* c = b.signature.find(b.place.controls[i].label);
    if (c == nullptr) {
      report.add("control-known", "control '" + b.place.controls[i].label + "' not in signature",
                 node_label(v));
    } else if (c->arity != b.place.controls[i].arity) {
      report.add("control-known", "arity differs from signature", node_label(v));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Accessors

namespace detail {

inline void check_place(const PlaceGraph& pg, const Place& p) {
  if (const auto* r = std::get_if<RootIndex>(&p)) {
    if (r->value >= pg.root_count) throw std::out_of_range("unknown root " + root_label(*r));
  } else if (std::get<NodeId>(p).value >= pg.node_count()) {
    throw std::out_of_range("unknown node " + place_label(p));
  }
}

inline void check_node(const LinkGraph& lg, NodeId v) {
  if (v.value >= lg.node_count()) throw std::out_of_range("unknown node " + node_label(v));
}

}  // namespace detail

inline std::vector<NodeId> children(const PlaceGraph& pg, const Place& place) {
  detail::check_place(pg, place);
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < pg.parents.size(); ++i) {
    if (pg.parents[i] == place) out.push_back(NodeId{static_cast<std::uint32_t>(i)});
  }
  return out;
}

// Open-neighbourhood size: one parent for a node (none for a root) plus children.
inline std::size_t place_degree(const PlaceGraph& pg, const Place& place) {
  const auto kids = children(pg, place).size();
  return std::holds_alternative<NodeId>(place) ? kids + 1 : kids;
}

// Child counts for every place in one pass; roots first, then nodes.
// Assumes parent references are in range.
inline std::vector<std::size_t> child_counts(const PlaceGraph& pg) {
  std::vector<std::size_t> counts(pg.place_count(), 0);
  for (const auto& parent : pg.parents) {
    if (const auto* r = std::get_if<RootIndex>(&parent)) {
      ++counts[r->value];
    } else {
      ++counts[pg.root_count + std::get<NodeId>(parent).value];
    }
  }
  return counts;
}

inline std::vector<Port> connected_ports(const LinkGraph& lg, NodeId v) {
  detail::check_node(lg, v);
  std::vector<Port> out;
  for (auto it = lg.links.lower_bound(Port{v, 0}); it != lg.links.end() && it->first.node == v;
       ++it) {
    out.push_back(it->first);
  }
  return out;
}

inline std::uint32_t free_port_count(const LinkGraph& lg, NodeId v) {
  const auto used = static_cast<std::uint32_t>(connected_ports(lg, v).size());
  const auto arity = lg.controls[v.value].arity;
  return used >= arity ? 0 : arity - used;
}

// Nodes whose control has at least one port, in id order.
inline std::vector<NodeId> positive_arity_nodes(const std::vector<Control>& controls) {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < controls.size(); ++i) {
    if (controls[i].arity > 0) out.push_back(NodeId{static_cast<std::uint32_t>(i)});
  }
  return out;
}

// A link graph over the place graph's nodes with no links yet.
inline LinkGraph empty_link_graph(const PlaceGraph& pg) {
  LinkGraph lg;
  lg.controls = pg.controls;
  return lg;
}

}  // namespace rbg

#endif  // RBG_CORE_HPP_
