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

// Random place graphs with preferential attachment.
//
// The generator keeps a multiset of place references. Roots enter it once
// each; every new node enters once and its parent is entered again, so a
// place is drawn with probability proportional to (children + 1). The first
// node of a single-root graph is the exception: the parent is re-entered only
// when the running place index exceeds 1.

#ifndef RBG_PLACEGEN_HPP_
#define RBG_PLACEGEN_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "rbg/core.hpp"
#include "rbg/rng.hpp"

namespace rbg {

struct PlaceGenParams {
  std::uint32_t roots = 1;   // t
  std::uint32_t places = 1;  // n, roots included
  Signature signature;
  std::uint64_t seed = 0;
  // Optional per-control selection weights; empty means uniform.
  std::vector<double> control_weights;
};

class ReferenceList {
 public:
  void push(const Place& p) { entries_.push_back(p); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Place& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const Place> entries() const { return entries_; }

  std::size_t multiplicity(const Place& p) const {
    return static_cast<std::size_t>(std::count(entries_.begin(), entries_.end(), p));
  }

 private:
  std::vector<Place> entries_;
};

// Index of a uniformly drawn entry. Throws std::invalid_argument on an empty list.
inline std::size_t preferential_pick_index(const ReferenceList& list, Rng& rng) {
  if (list.empty()) throw std::invalid_argument("preferential pick from empty reference list");
  return static_cast<std::size_t>(rng.uniform_index(list.size()));
}

inline Place preferential_pick(const ReferenceList& list, Rng& rng) {
  return list[preferential_pick_index(list, rng)];
}

inline void check_params(const PlaceGenParams& params) {
  if (params.roots < 1) throw std::invalid_argument("t < 1: at least one root is required");
  if (params.places < params.roots) throw std::invalid_argument("n < t");
  if (params.signature.empty()) throw std::invalid_argument("empty signature");
  check_unique_labels(params.signature);
  const auto& w = params.control_weights;
  if (!w.empty()) {
    if (w.size() != params.signature.size()) {
      throw std::invalid_argument("control weight count differs from signature size");
    }
    if (std::any_of(w.begin(), w.end(), [](double x) { return !(x >= 0.0); }) ||
        std::accumulate(w.begin(), w.end(), 0.0) <= 0.0) {
      throw std::invalid_argument("control weights must be non-negative with positive sum");
    }
  }
}

namespace detail {

inline std::size_t pick_control(const PlaceGenParams& params, Rng& rng) {
  const auto& w = params.control_weights;
  if (w.empty()) return static_cast<std::size_t>(rng.uniform_index(params.signature.size()));
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  double u = rng.uniform01() * total;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (u < w[k]) return k;
    u -= w[k];
  }
  // Rounding fell past the end; take the last control with weight.
  for (std::size_t k = w.size(); k-- > 0;) {
    if (w[k] > 0.0) return k;
  }
  return w.size() - 1;
}

}  // namespace detail

inline PlaceGraph generate_place_graph(const PlaceGenParams& params, Rng& rng) {
  check_params(params);

  PlaceGraph pg;
  pg.root_count = params.roots;
  pg.controls.reserve(params.places - params.roots);
  pg.parents.reserve(params.places - params.roots);

  ReferenceList refs;
  for (std::uint32_t i = 0; i < params.roots; ++i) refs.push(RootIndex{i});

  for (std::uint32_t i = params.roots; i < params.places; ++i) {
    const auto r = preferential_pick_index(refs, rng);
    const auto k = detail::pick_control(params, rng);
    const NodeId v{static_cast<std::uint32_t>(pg.controls.size())};
    const Place parent = refs[r];
    pg.controls.push_back(params.signature.controls[k]);
    pg.parents.push_back(parent);
    refs.push(v);
    if (i > 1) refs.push(parent);
  }
  return pg;
}

// Deterministic for a fixed params.seed.
inline PlaceGraph generate_place_graph(const PlaceGenParams& params) {
  Rng rng(params.seed);
  return generate_place_graph(params, rng);
}

}  // namespace rbg

#endif  // RBG_PLACEGEN_HPP_
