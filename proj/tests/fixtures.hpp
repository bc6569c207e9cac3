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

#ifndef RBG_TESTS_FIXTURES_HPP_
#define RBG_TESTS_FIXTURES_HPP_

#include <string>
#include <vector>

#include "rbg/core.hpp"

namespace rbg::fixtures {

// Four nodes, edges e1 and e2 (here e0 and e1), outer names y1 and y2:
//   v1: e1, e2, y1     v2: e1     v3: e2, y1, y2     v4: y1
// Node indices 0..3 stand for v1..v4.
inline Bigraph four_node_link_graph() {
  Bigraph b;
  b.signature.controls = {{"Hub", 3}, {"Leaf", 1}};
  b.place.root_count = 1;
  const Control hub = b.signature.controls[0];
  const Control leaf = b.signature.controls[1];
  b.place.controls = {hub, leaf, hub, leaf};
  b.place.parents = {RootIndex{0}, RootIndex{0}, RootIndex{0}, RootIndex{0}};
  b.link.controls = b.place.controls;
  b.link.edge_count = 2;
  b.link.outer_names = {"y1", "y2"};
  b.link.links = {
      {Port{NodeId{0}, 0}, EdgeId{0}}, {Port{NodeId{0}, 1}, EdgeId{1}}, {Port{NodeId{0}, 2}, NameId{0}},
      {Port{NodeId{1}, 0}, EdgeId{0}},
      {Port{NodeId{2}, 0}, EdgeId{1}}, {Port{NodeId{2}, 1}, NameId{0}}, {Port{NodeId{2}, 2}, NameId{1}},
      {Port{NodeId{3}, 0}, NameId{0}},
  };
  return b;
}

// Room/Computer/User/Phone/Data example as an agent (sites dropped):
//   r0: Room(v0) { Computer(v1), User(v2) { Phone(v3) } }
//   r1: Data(v4)
// Computer and Phone share the outer name "network".
inline Bigraph office_agent() {
  Bigraph b;
  b.signature.controls = {{"Room", 0}, {"Computer", 1}, {"User", 0}, {"Phone", 1}, {"Data", 0}};
  const auto& c = b.signature.controls;
  b.place.root_count = 2;
  b.place.controls = {c[0], c[1], c[2], c[3], c[4]};
  b.place.parents = {RootIndex{0}, NodeId{0}, NodeId{0}, NodeId{2}, RootIndex{1}};
  b.link.controls = b.place.controls;
  b.link.outer_names = {"network"};
  b.link.links = {{Port{NodeId{1}, 0}, NameId{0}}, {Port{NodeId{3}, 0}, NameId{0}}};
  return b;
}

inline std::vector<Control> controls_with_arities(const std::vector<std::uint32_t>& arities) {
  std::vector<Control> out;
  for (auto a : arities) out.push_back({"A" + std::to_string(a), a});
  return out;
}

}  // namespace rbg::fixtures

#endif  // RBG_TESTS_FIXTURES_HPP_
