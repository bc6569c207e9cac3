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

// Generation pipeline, batch campaigns and analysis of stored documents.
//
// A single generation runs the place generator, keeps the positive-arity
// nodes and hands them to the chosen link strategy. A campaign repeats that
// over a grid of (roots, places, positive fraction) cells with r replications
// each; replication k of cell c uses seed derive_seed(base, c, k) and the
// cell's signature is built from derive_seed(base, c, kSignatureRun).

#ifndef RBG_EXPERIMENT_HPP_
#define RBG_EXPERIMENT_HPP_

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "rbg/core.hpp"
#include "rbg/io.hpp"
#include "rbg/linkgen.hpp"
#include "rbg/metrics.hpp"
#include "rbg/placegen.hpp"
#include "rbg/rng.hpp"

namespace rbg {

// ---------------------------------------------------------------------------
// Signatures

// One "label arity" pair per line; blank lines and '#' comments are skipped.
inline Signature parse_signature(const std::string& text) {
  Signature sig;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string label;
    if (!(fields >> label)) continue;
    long long arity = -1;
    std::string extra;
    if (!(fields >> arity) || arity < 0 || arity > 0xffffffffLL || (fields >> extra)) {
      throw std::invalid_argument("signature line " + std::to_string(lineno) +
                                  ": expected '<label> <arity>'");
    }
    sig.controls.push_back({label, static_cast<std::uint32_t>(arity)});
  }
  check_unique_labels(sig);
  return sig;
}

inline std::string format_signature(const Signature& sig) {
  std::string out;
  for (const auto& c : sig.controls) out += c.label + " " + std::to_string(c.arity) + "\n";
  return out;
}

// `count` controls C0.. with arities drawn uniformly from [lo, hi].
inline Signature uniform_arity_signature(std::uint32_t count, std::uint32_t lo, std::uint32_t hi,
                                         Rng& rng) {
  if (count == 0) throw std::invalid_argument("signature needs at least one control");
  if (lo > hi) throw std::invalid_argument("arity range is empty");
  Signature sig;
  for (std::uint32_t i = 0; i < count; ++i) {
    sig.controls.push_back({"C" + std::to_string(i), static_cast<std::uint32_t>(rng.uniform_int(lo, hi))});
  }
  return sig;
}

// `count` controls of which round(fraction * count) (half away from zero)
// have arity drawn from [max(lo,1), hi]; the rest have arity 0.
inline Signature fraction_signature(std::uint32_t count, double fraction, std::uint32_t lo,
                                    std::uint32_t hi, Rng& rng) {
  if (count == 0) throw std::invalid_argument("signature needs at least one control");
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw std::invalid_argument("fraction must lie in [0,1]");
  lo = std::max<std::uint32_t>(lo, 1);
  if (lo > hi) throw std::invalid_argument("positive arity range is empty");
  const auto positive = static_cast<std::uint32_t>(std::lround(fraction * count));
  Signature sig;
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto arity = i < positive ? static_cast<std::uint32_t>(rng.uniform_int(lo, hi)) : 0u;
    sig.controls.push_back({"C" + std::to_string(i), arity});
  }
  return sig;
}

inline double positive_control_fraction(const Signature& sig) {
  if (sig.empty()) return 0.0;
  const auto k = std::count_if(sig.controls.begin(), sig.controls.end(),
                               [](const Control& c) { return c.arity > 0; });
  return static_cast<double>(k) / static_cast<double>(sig.size());
}

// ---------------------------------------------------------------------------
// Single generation

enum class LinkStrategy { kNone, kMppl, kMdc };

inline std::string strategy_name(LinkStrategy s) {
  switch (s) {
    case LinkStrategy::kNone: return "none";
    case LinkStrategy::kMppl: return "mppl";
    case LinkStrategy::kMdc: return "mdc";
  }
  return "none";
}

inline std::string mode_name(MdcMode m) {
  return m == MdcMode::kAssortative ? "assortative" : "disassortative";
}

struct GenerateParams {
  std::uint32_t roots = 1;
  std::uint32_t places = 1;
  Signature signature;
  LinkStrategy link = LinkStrategy::kNone;
  MpplParams mppl;  // seed ignored
  MdcMode mdc_mode = MdcMode::kAssortative;
};

struct Generated {
  Bigraph bigraph;
  GenerationInfo info;
  std::optional<std::string> warning;
};

// Place stage uses stage_seed(seed, kPlace), link stage stage_seed(seed, kLink).
// With mppl, LinkageError propagates when too few links would be created.
inline Generated generate_bigraph(const GenerateParams& params, std::uint64_t seed) {
  Generated out;
  PlaceGenParams pp;
  pp.roots = params.roots;
  pp.places = params.places;
  pp.signature = params.signature;
  pp.seed = stage_seed(seed, Stage::kPlace);

  Bigraph& b = out.bigraph;
  b.signature = params.signature;
  b.place = generate_place_graph(pp);
  b.link = empty_link_graph(b.place);

  const auto candidates = positive_arity_nodes(b.place.controls);
  Rng link_rng(stage_seed(seed, Stage::kLink));
  switch (params.link) {
    case LinkStrategy::kNone:
      break;
    case LinkStrategy::kMppl:
      b.link = mppl(b.place.controls, candidates, params.mppl, link_rng);
      break;
    case LinkStrategy::kMdc: {
      auto res = mdc(b.place.controls, candidates, MdcParams{params.mdc_mode, 0}, link_rng);
      b.link = std::move(res.graph);
      out.warning = std::move(res.diagnostic);
      break;
    }
  }

  auto& kv = out.info.parameters;
  out.info.seed = seed;
  kv.emplace_back("place_algorithm", "pgg");
  kv.emplace_back("roots", std::to_string(params.roots));
  kv.emplace_back("places", std::to_string(params.places));
  kv.emplace_back("link_algorithm", strategy_name(params.link));
  if (params.link == LinkStrategy::kMppl) {
    kv.emplace_back("p", format_double(params.mppl.p));
    kv.emplace_back("p_o", format_double(params.mppl.outer_weight));
    kv.emplace_back("p_e", format_double(params.mppl.edge_weight));
  } else if (params.link == LinkStrategy::kMdc) {
    kv.emplace_back("mode", mode_name(params.mdc_mode));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Campaigns

inline constexpr std::uint64_t kSignatureRun = ~std::uint64_t{0};

struct SignatureSource {
  // Used as-is when set and the plan has no positive fractions.
  std::optional<Signature> fixed;
  std::uint32_t count = 26;
  std::uint32_t min_arity = 1;
  std::uint32_t max_arity = 1;
};

struct ExperimentPlan {
  std::vector<std::uint32_t> roots{1};
  std::vector<std::uint32_t> places{10};
  // Empty: one cell per (t, n) with the source signature.
  std::vector<double> positive_fractions;
  SignatureSource signature;
  LinkStrategy link = LinkStrategy::kNone;
  MpplParams mppl;
  MdcMode mdc_mode = MdcMode::kAssortative;
  // Assumed network coefficient for node assortativity; unset picks +1,
  // or -1 for disassortative mdc.
  std::optional<double> assumed_r;
  std::uint32_t replications = 1000;
  std::uint64_t base_seed = 1;
  std::filesystem::path output_dir = "results";
  unsigned threads = 0;  // 0: hardware concurrency
};

struct Cell {
  std::size_t index = 0;
  std::uint32_t roots = 1;
  std::uint32_t places = 1;
  std::optional<double> fraction;
  Signature signature;

  std::string tag() const {
    std::string t = "t" + std::to_string(roots) + "_n" + std::to_string(places);
    if (fraction) t += "_p" + format_double(*fraction);
    return t;
  }
};

inline void check_plan(const ExperimentPlan& plan) {
  if (plan.roots.empty() || plan.places.empty()) throw std::invalid_argument("plan grid is empty");
  if (plan.replications < 1) throw std::invalid_argument("replications must be at least 1");
  if (plan.assumed_r && !(*plan.assumed_r >= -1.0 && *plan.assumed_r <= 1.0)) {
    throw std::invalid_argument("assumed r must lie in [-1, 1]");
  }
  for (double p : plan.positive_fractions) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("positive fraction must lie in [0,1]");
  }
}

inline std::vector<Cell> plan_cells(const ExperimentPlan& plan) {
  check_plan(plan);
  std::vector<std::optional<double>> fractions;
  if (plan.positive_fractions.empty()) {
    fractions.emplace_back();
  } else {
    for (double p : plan.positive_fractions) fractions.emplace_back(p);
  }
  std::vector<Cell> cells;
  for (auto fraction : fractions) {
    for (auto t : plan.roots) {
      for (auto n : plan.places) {
        if (t < 1 || n < t) continue;
        Cell c;
        c.index = cells.size();
        c.roots = t;
        c.places = n;
        c.fraction = fraction;
        Rng rng(derive_seed(plan.base_seed, c.index, kSignatureRun));
        const auto& src = plan.signature;
        if (fraction) {
          c.signature = fraction_signature(src.count, *fraction, src.min_arity, src.max_arity, rng);
        } else if (src.fixed) {
          c.signature = *src.fixed;
        } else {
          c.signature = uniform_arity_signature(src.count, src.min_arity, src.max_arity, rng);
        }
        cells.push_back(std::move(c));
      }
    }
  }
  if (cells.empty()) throw std::invalid_argument("plan has no cell with places >= roots >= 1");
  return cells;
}

struct RunResult {
  DegreeHistogram histogram;
  std::size_t positive = 0;
  std::optional<AssortativityReport> assortativity;
  std::optional<std::string> warning;
};

inline double effective_r(const ExperimentPlan& plan) {
  if (plan.assumed_r) return *plan.assumed_r;
  return plan.link == LinkStrategy::kMdc && plan.mdc_mode == MdcMode::kDisassortative ? -1.0 : 1.0;
}

inline RunResult run_once(const ExperimentPlan& plan, const Cell& cell, std::uint64_t run) {
  GenerateParams gp;
  gp.roots = cell.roots;
  gp.places = cell.places;
  gp.signature = cell.signature;
  gp.link = plan.link;
  gp.mppl = plan.mppl;
  gp.mdc_mode = plan.mdc_mode;

  const auto seed = derive_seed(plan.base_seed, cell.index, run);
  RunResult out;
  Generated g;
  try {
    g = generate_bigraph(gp, seed);
  } catch (const LinkageError& e) {
    gp.link = LinkStrategy::kNone;
    g = generate_bigraph(gp, seed);
    out.warning = e.what();
  }
  if (!out.warning) out.warning = g.warning;

  out.histogram = degree_distribution(g.bigraph.place);
  out.positive = positive_arity_count(g.bigraph);
  if (plan.link != LinkStrategy::kNone && !g.bigraph.link.links.empty()) {
    out.assortativity = node_assortativity(g.bigraph.link, effective_r(plan));
  }
  return out;
}

// Runs every replication of a cell; results are ordered by replication index
// regardless of thread count.
inline std::vector<RunResult> run_cell(const ExperimentPlan& plan, const Cell& cell) {
  std::vector<RunResult> results(plan.replications);
  unsigned workers = plan.threads != 0 ? plan.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, plan.replications);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < results.size();) {
      results[k] = run_once(plan, cell, k);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return results;
}

struct CellSummary {
  Cell cell;
  std::map<std::size_t, double> mean_fractions;
  std::vector<double> positive_counts;
  std::optional<SampleMoments> moments;
  std::vector<FitResult> fits;
  std::vector<std::optional<AssortativityReport>> assortativity;
  std::vector<std::pair<std::size_t, std::string>> warnings;
};

inline CellSummary summarize(const Cell& cell, const std::vector<RunResult>& runs) {
  CellSummary s;
  s.cell = cell;
  std::vector<DegreeHistogram> hists;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    hists.push_back(runs[k].histogram);
    s.positive_counts.push_back(static_cast<double>(runs[k].positive));
    s.assortativity.push_back(runs[k].assortativity);
    if (runs[k].warning) s.warnings.emplace_back(k, *runs[k].warning);
  }
  s.mean_fractions = average_fractions(hists);
  if (s.positive_counts.size() >= 2) s.moments = sample_moments(s.positive_counts);
  s.fits.push_back(fit_binomial(s.positive_counts, cell.places - cell.roots));
  s.fits.push_back(fit_poisson(s.positive_counts));
  s.fits.push_back(fit_geometric(s.positive_counts));
  return s;
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

inline std::string fraction_field(const Cell& c) { return c.fraction ? format_double(*c.fraction) : ""; }

}  // namespace detail

// Output layout under plan.output_dir:
//   cells.csv                       cell,roots,places,positive_fraction,signature_size,effective_p
//   degree/degree_<tag>.csv         degree,mean_fraction
//   positive_arity_samples.csv      cell,run,count
//   moments.csv                     cell,roots,places,positive_fraction,nodes,effective_p,mean,sd,
//                                   variance,skewness,kurtosis,expected_mean,expected_variance
//   fits.csv                        cell,roots,places,positive_fraction,model,estimate,
//                                   standard_error,log_likelihood,aic
//   assortativity/assortativity_<tag>.csv   run,node,arity,connected_ports,link_degree,delta,alpha
//   assortativity_summary.csv       cell,run,nodes,isolated,lambda,mean_alpha,sd_alpha,
//                                   slightly_assortative,slightly_disassortative,strong_outlier,
//                                   spearman_arity_alpha,degenerate
//   warnings.csv                    cell,run,message
// The assortativity files exist only for plans with a link strategy.
inline void write_campaign(const ExperimentPlan& plan, const std::vector<CellSummary>& cells) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(plan.output_dir / "degree", ec);
  if (ec) throw IoError("cannot create " + (plan.output_dir / "degree").string());
  const bool linked = plan.link != LinkStrategy::kNone;
  if (linked) {
    fs::create_directories(plan.output_dir / "assortativity", ec);
    if (ec) throw IoError("cannot create " + (plan.output_dir / "assortativity").string());
  }

  std::string cells_csv = "cell,roots,places,positive_fraction,signature_size,effective_p\n";
  std::string samples = "cell,run,count\n";
  std::string moments =
      "cell,roots,places,positive_fraction,nodes,effective_p,mean,sd,variance,skewness,kurtosis,"
      "expected_mean,expected_variance\n";
  std::string fits = "cell,roots,places,positive_fraction,model,estimate,standard_error,log_likelihood,aic\n";
  std::string summary =
      "cell,run,nodes,isolated,lambda,mean_alpha,sd_alpha,slightly_assortative,"
      "slightly_disassortative,strong_outlier,spearman_arity_alpha,degenerate\n";
  std::string warnings = "cell,run,message\n";
  bool any_warning = false;

  for (const auto& s : cells) {
    const auto& c = s.cell;
    const auto key = std::to_string(c.index) + "," + std::to_string(c.roots) + "," +
                     std::to_string(c.places) + "," + detail::fraction_field(c);
    const double p = positive_control_fraction(c.signature);
    const double nodes = static_cast<double>(c.places - c.roots);
    cells_csv += key + "," + std::to_string(c.signature.size()) + "," + format_double(p) + "\n";
    detail::write_file(plan.output_dir / "degree" / ("degree_" + c.tag() + ".csv"),
                       write_metrics_csv(s.mean_fractions));

    for (std::size_t k = 0; k < s.positive_counts.size(); ++k) {
      samples += std::to_string(c.index) + "," + std::to_string(k) + "," +
                 std::to_string(static_cast<std::uint64_t>(s.positive_counts[k])) + "\n";
    }
    if (s.moments) {
      const auto& m = *s.moments;
      moments += key + "," + std::to_string(c.places - c.roots) + "," + format_double(p) + "," +
                 format_double(m.mean) + "," + format_double(m.sd) + "," + format_double(m.variance) +
                 "," + format_double(m.skewness) + "," + format_double(m.kurtosis) + "," +
                 format_double(nodes * p) + "," + format_double(nodes * p * (1.0 - p)) + "\n";
    }
    for (const auto& f : s.fits) {
      fits += key + "," + model_name(f.model) + "," + format_double(f.estimate) + "," +
              format_double(f.standard_error) + "," + format_double(f.log_likelihood) + "," +
              format_double(f.aic) + "\n";
    }

    if (linked) {
      std::string per_node = "run,node,arity,connected_ports,link_degree,delta,alpha\n";
      for (std::size_t k = 0; k < s.assortativity.size(); ++k) {
        const auto& rep = s.assortativity[k];
        if (!rep) continue;
        std::istringstream rows(write_metrics_csv(*rep));
        std::string row;
        std::getline(rows, row);  // header
        while (std::getline(rows, row)) per_node += std::to_string(k) + "," + row + "\n";

        std::vector<double> arity, alpha;
        for (const auto& na : rep->per_node) {
          arity.push_back(na.arity);
          alpha.push_back(na.alpha);
        }
        const double rho = rep->degenerate || arity.size() < 2
                               ? std::numeric_limits<double>::quiet_NaN()
                               : spearman(arity, alpha);
        summary += std::to_string(c.index) + "," + std::to_string(k) + "," +
                   std::to_string(rep->per_node.size()) + "," + std::to_string(rep->isolated_nodes) +
                   "," + format_double(rep->lambda) + "," + format_double(rep->mean_alpha) + "," +
                   format_double(rep->sd_alpha) + "," + format_double(rep->classes.slightly_assortative) +
                   "," + format_double(rep->classes.slightly_disassortative) + "," +
                   format_double(rep->classes.strong_outlier) + "," + format_double(rho) + "," +
                   (rep->degenerate ? "1" : "0") + "\n";
      }
      detail::write_file(plan.output_dir / "assortativity" / ("assortativity_" + c.tag() + ".csv"),
                         per_node);
    }
    for (const auto& [k, msg] : s.warnings) {
      any_warning = true;
      warnings += std::to_string(c.index) + "," + std::to_string(k) + "," + csv_field(msg) + "\n";
    }
  }

  detail::write_file(plan.output_dir / "cells.csv", cells_csv);
  detail::write_file(plan.output_dir / "positive_arity_samples.csv", samples);
  detail::write_file(plan.output_dir / "moments.csv", moments);
  detail::write_file(plan.output_dir / "fits.csv", fits);
  if (linked) detail::write_file(plan.output_dir / "assortativity_summary.csv", summary);
  if (any_warning) detail::write_file(plan.output_dir / "warnings.csv", warnings);
}

inline std::vector<CellSummary> run_campaign(const ExperimentPlan& plan) {
  std::vector<CellSummary> out;
  for (const auto& cell : plan_cells(plan)) out.push_back(summarize(cell, run_cell(plan, cell)));
  return out;
}

// ---------------------------------------------------------------------------
// Option parsing shared by the CLI and plan files

// "a..b" or a single "a".
inline std::pair<std::uint32_t, std::uint32_t> parse_arity_range(const std::string& s) {
  auto to_u32 = [&](const std::string& part) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos || part.size() > 9) {
      throw std::invalid_argument("bad arity range '" + s + "'");
    }
    return static_cast<std::uint32_t>(std::stoul(part));
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const auto v = to_u32(s);
    return {v, v};
  }
  const auto lo = to_u32(s.substr(0, dots));
  const auto hi = to_u32(s.substr(dots + 2));
  if (lo > hi) throw std::invalid_argument("empty arity range '" + s + "'");
  return {lo, hi};
}

inline LinkStrategy parse_strategy(const std::string& s) {
  if (s == "none") return LinkStrategy::kNone;
  if (s == "mppl") return LinkStrategy::kMppl;
  if (s == "mdc") return LinkStrategy::kMdc;
  throw std::invalid_argument("unknown link strategy '" + s + "' (none, mppl, mdc)");
}

inline MdcMode parse_mode(const std::string& s) {
  if (s == "assortative") return MdcMode::kAssortative;
  if (s == "disassortative") return MdcMode::kDisassortative;
  throw std::invalid_argument("unknown mode '" + s + "' (assortative, disassortative)");
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Plan file: a JSON object with any of the keys
//   roots, places (integer lists), positive_fractions (number list),
//   signature (path, relative to the plan file), uniform_arity ("a..b"),
//   count, link, p, po, pe, mode, r, replications, seed, out, threads.
// Unknown keys are rejected.
inline ExperimentPlan plan_from_json(const std::string& text, const std::filesystem::path& base_dir = {}) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("plan: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("plan: expected a JSON object");
  ExperimentPlan plan;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "roots") {
        plan.roots = v.get<std::vector<std::uint32_t>>();
      } else if (key == "places") {
        plan.places = v.get<std::vector<std::uint32_t>>();
      } else if (key == "positive_fractions") {
        plan.positive_fractions = v.get<std::vector<double>>();
      } else if (key == "signature") {
        plan.signature.fixed = parse_signature(read_text_file(base_dir / v.get<std::string>()));
      } else if (key == "uniform_arity") {
        std::tie(plan.signature.min_arity, plan.signature.max_arity) =
            parse_arity_range(v.get<std::string>());
      } else if (key == "count") {
        plan.signature.count = v.get<std::uint32_t>();
      } else if (key == "link") {
        plan.link = parse_strategy(v.get<std::string>());
      } else if (key == "p") {
        plan.mppl.p = v.get<double>();
      } else if (key == "po") {
        plan.mppl.outer_weight = v.get<double>();
      } else if (key == "pe") {
        plan.mppl.edge_weight = v.get<double>();
      } else if (key == "mode") {
        plan.mdc_mode = parse_mode(v.get<std::string>());
      } else if (key == "r") {
        plan.assumed_r = v.get<double>();
      } else if (key == "replications") {
        plan.replications = v.get<std::uint32_t>();
      } else if (key == "seed") {
        plan.base_seed = v.get<std::uint64_t>();
      } else if (key == "out") {
        plan.output_dir = v.get<std::string>();
      } else if (key == "threads") {
        plan.threads = v.get<unsigned>();
      } else {
        throw std::invalid_argument("plan: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("plan: ") + e.what());
  }
  check_plan(plan);
  return plan;
}

// ---------------------------------------------------------------------------
// Analysis of a stored document

struct Analysis {
  ValidationReport validation;
  std::optional<DegreeHistogram> histogram;
  std::size_t positive = 0;
  std::optional<AssortativityReport> assortativity;
};

// Metrics are computed only when the structure is valid.
inline Analysis analyze(const Document& doc, double r = 1.0) {
  Analysis a;
  a.validation = doc.file_issues;
  a.validation.append(validate(doc.bigraph));
  if (!a.validation.ok()) return a;
  a.histogram = degree_distribution(doc.bigraph.place);
  a.positive = positive_arity_count(doc.bigraph);
  if (!doc.bigraph.link.links.empty()) a.assortativity = node_assortativity(doc.bigraph.link, r);
  return a;
}

// validation.csv always; degree.csv and assortativity.csv when computed.
inline void write_analysis(const std::filesystem::path& dir, const Analysis& a) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string());
  detail::write_file(dir / "validation.csv", write_metrics_csv(a.validation));
  if (a.histogram) detail::write_file(dir / "degree.csv", write_metrics_csv(*a.histogram));
  if (a.assortativity) detail::write_file(dir / "assortativity.csv", write_metrics_csv(*a.assortativity));
}

}  // namespace rbg

#endif  // RBG_EXPERIMENT_HPP_
