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

// Bigraph documents, DOT export and CSV reports.
//
// A bigraph document is a JSON object with keys in this fixed order:
//
//   format       "rbg-bigraph"
//   version      1
//   signature    [{"label": L, "arity": A}, ...]
//   roots        t
//   nodes        [{"id": "v<i>", "control": L, "parent": "r<k>" | "v<j>"}, ...]
//   edges        [{"id": "e<i>", "ports": [["v<j>", port], ...]}, ...]
//   outer_names  [{"label": Y, "ports": [["v<j>", port], ...]}, ...]
//   generation   {"seed": S, "parameters": {key: string, ...}}
//
// Nodes and edges appear in id order and ids must be dense from 0. Ports
// within a link are sorted by (node, port). Output is indented by two spaces
// and ends in a newline; equal inputs give byte-identical text.

#ifndef RBG_IO_HPP_
#define RBG_IO_HPP_

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rbg/core.hpp"
#include "rbg/metrics.hpp"

namespace rbg {

inline constexpr const char* kDocumentFormat = "rbg-bigraph";
inline constexpr int kDocumentVersion = 1;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Output files or directories could not be created.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenerationInfo {
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> parameters;

  friend bool operator==(const GenerationInfo&, const GenerationInfo&) = default;
};

struct Document {
  Bigraph bigraph;
  GenerationInfo generation;
  // Problems only visible in the file (sites, inner names, repeated ports).
  ValidationReport file_issues;
};

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson port_list(const std::vector<Port>& ports) {
  ojson arr = ojson::array();
  for (const auto& p : ports) arr.push_back(ojson::array({node_label(p.node), p.index}));
  return arr;
}

}  // namespace detail

inline std::string serialize(const Bigraph& b, const GenerationInfo& gen = {}) {
  using detail::ojson;
  ojson doc;
  doc["format"] = kDocumentFormat;
  doc["version"] = kDocumentVersion;

  ojson sig = ojson::array();
  for (const auto& c : b.signature.controls) {
    ojson entry;
    entry["label"] = c.label;
    entry["arity"] = c.arity;
    sig.push_back(std::move(entry));
  }
  doc["signature"] = std::move(sig);
  doc["roots"] = b.place.root_count;

  ojson nodes = ojson::array();
  for (std::size_t i = 0; i < b.place.node_count(); ++i) {
    ojson entry;
    entry["id"] = node_label(NodeId{static_cast<std::uint32_t>(i)});
    entry["control"] = b.place.controls[i].label;
    entry["parent"] = i < b.place.parents.size() ? place_label(b.place.parents[i]) : "";
    nodes.push_back(std::move(entry));
  }
  doc["nodes"] = std::move(nodes);

  std::vector<std::vector<Port>> edge_ports(b.link.edge_count);
  std::vector<std::vector<Port>> name_ports(b.link.outer_names.size());
  for (const auto& [port, link] : b.link.links) {
    if (const auto* e = std::get_if<EdgeId>(&link)) {
      if (e->value < edge_ports.size()) edge_ports[e->value].push_back(port);
    } else if (auto y = std::get<NameId>(link).value; y < name_ports.size()) {
      name_ports[y].push_back(port);
    }
  }

  ojson edges = ojson::array();
  for (std::uint32_t e = 0; e < b.link.edge_count; ++e) {
    ojson entry;
    entry["id"] = edge_label(EdgeId{e});
    entry["ports"] = detail::port_list(edge_ports[e]);
    edges.push_back(std::move(entry));
  }
  doc["edges"] = std::move(edges);

  ojson names = ojson::array();
  for (std::size_t y = 0; y < b.link.outer_names.size(); ++y) {
    ojson entry;
    entry["label"] = b.link.outer_names[y];
    entry["ports"] = detail::port_list(name_ports[y]);
    names.push_back(std::move(entry));
  }
  doc["outer_names"] = std::move(names);

  ojson params = ojson::object();
  for (const auto& [k, v] : gen.parameters) params[k] = v;
  ojson generation;
  generation["seed"] = gen.seed;
  generation["parameters"] = std::move(params);
  doc["generation"] = std::move(generation);

  return doc.dump(2) + "\n";
}

namespace detail {

inline std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

inline const ojson& require(const ojson& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

template <typename T>
T get_as(const ojson& j, const std::string& where) {
  if constexpr (std::is_integral_v<T> && std::is_unsigned_v<T>) {
    if (!j.is_number_unsigned()) throw ParseError(where + ": expected a non-negative integer");
    if (j.get<std::uint64_t>() > std::numeric_limits<T>::max()) {
      throw ParseError(where + ": integer out of range");
    }
  } else if constexpr (std::is_integral_v<T>) {
    if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  }
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(where + ": unexpected value " + j.dump());
  }
}

// Parses "<prefix><digits>".
inline std::uint32_t parse_id(const std::string& s, char prefix, const std::string& where) {
  if (s.size() < 2 || s[0] != prefix) throw ParseError(where + ": bad identifier '" + s + "'");
  std::uint64_t v = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw ParseError(where + ": bad identifier '" + s + "'");
    v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
    if (v > 0xffffffffULL) throw ParseError(where + ": identifier out of range '" + s + "'");
  }
  return static_cast<std::uint32_t>(v);
}

inline std::vector<Port> parse_ports(const ojson& arr, const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + ": ports must be an array");
  std::vector<Port> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto here = where + ".ports[" + std::to_string(i) + "]";
    const auto& p = arr[i];
    if (!p.is_array() || p.size() != 2) throw ParseError(here + ": expected [node, port]");
    const auto node = parse_id(get_as<std::string>(p[0], here), 'v', here);
    out.push_back(Port{NodeId{node}, get_as<std::uint32_t>(p[1], here)});
  }
  return out;
}

}  // namespace detail

// Throws ParseError (with line or field path) on malformed text. Structural
// problems that the Bigraph can represent are left for validate().
inline Document read_document(const std::string& text) {
  using detail::ojson;
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("line " + std::to_string(detail::line_of(text, e.byte)) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("document: expected a JSON object");
  const auto format = detail::get_as<std::string>(detail::require(doc, "format", "document"), "format");
  if (format != kDocumentFormat) throw ParseError("format: expected '" + std::string(kDocumentFormat) + "'");
  const auto version = detail::get_as<int>(detail::require(doc, "version", "document"), "version");
  if (version != kDocumentVersion) throw ParseError("version: unsupported " + std::to_string(version));

  Document out;
  Bigraph& b = out.bigraph;

  const auto& sig = detail::require(doc, "signature", "document");
  if (!sig.is_array()) throw ParseError("signature: expected an array");
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const auto where = "signature[" + std::to_string(i) + "]";
    Control c;
    c.label = detail::get_as<std::string>(detail::require(sig[i], "label", where), where + ".label");
    c.arity = detail::get_as<std::uint32_t>(detail::require(sig[i], "arity", where), where + ".arity");
    b.signature.controls.push_back(std::move(c));
  }

  b.place.root_count = detail::get_as<std::uint32_t>(detail::require(doc, "roots", "document"), "roots");

  const auto& nodes = detail::require(doc, "nodes", "document");
  if (!nodes.is_array()) throw ParseError("nodes: expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto where = "nodes[" + std::to_string(i) + "]";
    const auto id = detail::parse_id(
        detail::get_as<std::string>(detail::require(nodes[i], "id", where), where + ".id"), 'v', where);
    if (id != i) throw ParseError(where + ": expected id v" + std::to_string(i));
    const auto label =
        detail::get_as<std::string>(detail::require(nodes[i], "control", where), where + ".control");
    const auto* control = b.signature.find(label);
    if (control == nullptr) throw ParseError(where + ": unknown control '" + label + "'");
    const auto parent =
        detail::get_as<std::string>(detail::require(nodes[i], "parent", where), where + ".parent");
    Place place;
    if (!parent.empty() && parent[0] == 'r') {
      place = RootIndex{detail::parse_id(parent, 'r', where + ".parent")};
    } else {
      place = NodeId{detail::parse_id(parent, 'v', where + ".parent")};
    }
    b.place.controls.push_back(*control);
    b.place.parents.push_back(place);
  }
  b.link.controls = b.place.controls;

  auto add_ports = [&](const std::vector<Port>& ports, const Link& link, const std::string& where) {
    for (const auto& p : ports) {
      if (!b.link.links.emplace(p, link).second) {
        out.file_issues.add("port-unique", "port is attached to more than one link",
                            node_label(p.node) + ":" + std::to_string(p.index) + " (" + where + ")");
      }
    }
  };

  const auto& edges = detail::require(doc, "edges", "document");
  if (!edges.is_array()) throw ParseError("edges: expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto where = "edges[" + std::to_string(i) + "]";
    const auto id = detail::parse_id(
        detail::get_as<std::string>(detail::require(edges[i], "id", where), where + ".id"), 'e', where);
    if (id != i) throw ParseError(where + ": expected id e" + std::to_string(i));
    const auto ports = detail::parse_ports(detail::require(edges[i], "ports", where), where);
    b.link.edge_count = static_cast<std::uint32_t>(i + 1);
    add_ports(ports, EdgeId{id}, where);
  }

  const auto& names = detail::require(doc, "outer_names", "document");
  if (!names.is_array()) throw ParseError("outer_names: expected an array");
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto where = "outer_names[" + std::to_string(i) + "]";
    b.link.outer_names.push_back(
        detail::get_as<std::string>(detail::require(names[i], "label", where), where + ".label"));
    const auto ports = detail::parse_ports(detail::require(names[i], "ports", where), where);
    add_ports(ports, NameId{static_cast<std::uint32_t>(i)}, where);
  }

  auto non_empty = [&](const char* key) {
    if (!doc.contains(key)) return false;
    const auto& v = doc.at(key);
    if (v.is_array() || v.is_object()) return !v.empty();
    return !v.is_null() && !(v.is_number() && v.get<double>() == 0.0);
  };
  if (non_empty("sites")) out.file_issues.add("agent-sites", "agents have no sites", "sites");
  if (non_empty("inner_names")) {
    out.file_issues.add("agent-inner-names", "agents have no inner names", "inner_names");
  }

  const auto& gen = detail::require(doc, "generation", "document");
  out.generation.seed =
      detail::get_as<std::uint64_t>(detail::require(gen, "seed", "generation"), "generation.seed");
  const auto& params = detail::require(gen, "parameters", "generation");
  if (!params.is_object()) throw ParseError("generation.parameters: expected an object");
  for (const auto& [k, v] : params.items()) {
    out.generation.parameters.emplace_back(k, detail::get_as<std::string>(v, "generation.parameters." + k));
  }
  return out;
}

inline Bigraph deserialize(const std::string& text) { return read_document(text).bigraph; }

// ---------------------------------------------------------------------------
// DOT

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

// Place hierarchy as parent -> child arcs; each link becomes an auxiliary
// vertex joined to its ports by undirected dotted lines labelled with the
// port index.
inline std::string export_dot(const Bigraph& b) {
  using detail::dot_quote;
  std::ostringstream os;
  os << "digraph bigraph {\n";
  for (std::uint32_t r = 0; r < b.place.root_count; ++r) {
    os << "  " << dot_quote(root_label(RootIndex{r})) << " [shape=box, style=dashed];\n";
  }
  for (std::size_t i = 0; i < b.place.node_count(); ++i) {
    const auto v = node_label(NodeId{static_cast<std::uint32_t>(i)});
    os << "  " << dot_quote(v) << " [label=" << dot_quote(v + ":" + b.place.controls[i].label)
       << "];\n";
  }
  for (std::uint32_t e = 0; e < b.link.edge_count; ++e) {
    os << "  " << dot_quote(edge_label(EdgeId{e})) << " [shape=point];\n";
  }
  for (const auto& y : b.link.outer_names) {
    os << "  " << dot_quote("y:" + y) << " [shape=plaintext, label=" << dot_quote(y) << "];\n";
  }
  for (std::size_t i = 0; i < b.place.parents.size(); ++i) {
    os << "  " << dot_quote(place_label(b.place.parents[i])) << " -> "
       << dot_quote(node_label(NodeId{static_cast<std::uint32_t>(i)})) << ";\n";
  }
  for (const auto& [port, link] : b.link.links) {
    const auto target = std::holds_alternative<EdgeId>(link)
                            ? edge_label(std::get<EdgeId>(link))
                            : "y:" + link_label(b.link, link);
    os << "  " << dot_quote(node_label(port.node)) << " -> " << dot_quote(target)
       << " [dir=none, style=dotted, taillabel=" << dot_quote(std::to_string(port.index)) << "];\n";
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// CSV
//
// Floats carry 9 significant digits; NaN prints as "nan". Headers:
//   histogram      degree,count,fraction
//   mean histogram degree,mean_fraction
//   fits           model,estimate,standard_error,log_likelihood,aic
//   assortativity  node,arity,connected_ports,link_degree,delta,alpha
//   validation     rule,element,description

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string write_metrics_csv(const DegreeHistogram& h) {
  std::string out = "degree,count,fraction\n";
  for (const auto& [d, c] : h.bins) {
    out += std::to_string(d) + "," + std::to_string(c) + "," + format_double(h.fractions.at(d)) + "\n";
  }
  return out;
}

inline std::string write_metrics_csv(const std::map<std::size_t, double>& mean_fractions) {
  std::string out = "degree,mean_fraction\n";
  for (const auto& [d, f] : mean_fractions) out += std::to_string(d) + "," + format_double(f) + "\n";
  return out;
}

inline std::string write_metrics_csv(const std::vector<FitResult>& fits) {
  std::string out = "model,estimate,standard_error,log_likelihood,aic\n";
  for (const auto& f : fits) {
    out += model_name(f.model) + "," + format_double(f.estimate) + "," +
           format_double(f.standard_error) + "," + format_double(f.log_likelihood) + "," +
           format_double(f.aic) + "\n";
  }
  return out;
}

inline std::string write_metrics_csv(const AssortativityReport& rep) {
  std::string out = "node,arity,connected_ports,link_degree,delta,alpha\n";
  for (const auto& n : rep.per_node) {
    out += node_label(n.node) + "," + std::to_string(n.arity) + "," +
           std::to_string(n.connected_ports) + "," + std::to_string(n.link_degree) + "," +
           format_double(n.delta) + "," +
           format_double(rep.degenerate ? std::numeric_limits<double>::quiet_NaN() : n.alpha) + "\n";
  }
  return out;
}

inline std::string write_metrics_csv(const ValidationReport& rep) {
  std::string out = "rule,element,description\n";
  for (const auto& v : rep.violations) {
    out += csv_field(v.rule) + "," + csv_field(v.element) + "," + csv_field(v.description) + "\n";
  }
  return out;
}

}  // namespace rbg

#endif  // RBG_IO_HPP_
