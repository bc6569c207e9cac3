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

// rbg: generate, analyze and validate random bigraphs.
//
// Exit codes: 0 success, 1 user error (bad flags, unreadable or invalid
// input), 2 internal error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rbg/experiment.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUserError = 1;
constexpr int kInternalError = 2;

struct SignatureOptions {
  std::string file;
  std::string uniform_arity;
  std::uint32_t count = 26;

  void add(CLI::App* cmd) {
    cmd->add_option("--signature", file, "Signature file, one '<label> <arity>' per line");
    cmd->add_option("--uniform-arity", uniform_arity,
                    "Generate controls with arity drawn uniformly from a..b");
    cmd->add_option("--count", count, "Number of generated controls")->capture_default_str();
  }
};

struct LinkOptions {
  std::string link = "none";
  double p = 1.0;
  double po = 0.5;
  double pe = 0.5;
  std::string mode = "assortative";

  void add(CLI::App* cmd) {
    cmd->add_option("--link", link, "Link strategy: none, mppl or mdc")->capture_default_str();
    cmd->add_option("--p", p, "mppl: fraction of positive-arity nodes to link")->capture_default_str();
    cmd->add_option("--po", po, "mppl: outer-name weight")->capture_default_str();
    cmd->add_option("--pe", pe, "mppl: edge weight")->capture_default_str();
    cmd->add_option("--mode", mode, "mdc: assortative or disassortative")->capture_default_str();
  }
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw std::invalid_argument("cannot write " + path);
}

int cmd_generate(std::uint32_t roots, std::uint32_t places, const SignatureOptions& so,
                 const LinkOptions& lo, std::uint64_t seed, const std::string& out,
                 const std::string& dot) {
  rbg::GenerateParams gp;
  gp.roots = roots;
  gp.places = places;
  if (!so.file.empty()) {
    gp.signature = rbg::parse_signature(rbg::read_text_file(so.file));
  } else {
    const auto [a, b] = rbg::parse_arity_range(so.uniform_arity.empty() ? "1" : so.uniform_arity);
    rbg::Rng rng(rbg::stage_seed(seed, rbg::Stage::kSignature));
    gp.signature = rbg::uniform_arity_signature(so.count, a, b, rng);
  }
  gp.link = rbg::parse_strategy(lo.link);
  gp.mppl.p = lo.p;
  gp.mppl.outer_weight = lo.po;
  gp.mppl.edge_weight = lo.pe;
  gp.mdc_mode = rbg::parse_mode(lo.mode);

  const auto g = rbg::generate_bigraph(gp, seed);
  if (g.warning) std::cerr << "warning: " << *g.warning << "\n";
  write_output(out, rbg::serialize(g.bigraph, g.info));
  if (!dot.empty()) write_output(dot, rbg::export_dot(g.bigraph));
  return kOk;
}

int cmd_validate(const std::string& file) {
  const auto doc = rbg::read_document(rbg::read_text_file(file));
  auto report = doc.file_issues;
  report.append(rbg::validate(doc.bigraph));
  for (const auto& v : report.violations) {
    std::cout << v.rule << "\t" << v.element << "\t" << v.description << "\n";
  }
  if (report.ok()) std::cout << "ok\n";
  return report.ok() ? kOk : kUserError;
}

int cmd_analyze(const std::string& file, const std::string& out_dir, double r,
                const std::string& dot) {
  const auto doc = rbg::read_document(rbg::read_text_file(file));
  const auto a = rbg::analyze(doc, r);
  rbg::write_analysis(out_dir, a);
  if (!dot.empty() && a.validation.ok()) write_output(dot, rbg::export_dot(doc.bigraph));
  if (!a.validation.ok()) {
    for (const auto& v : a.validation.violations) {
      std::cerr << "invalid: " << v.rule << " " << v.element << ": " << v.description << "\n";
    }
    return kUserError;
  }
  std::cout << "places " << doc.bigraph.place.place_count() << "\n"
            << "average_degree " << rbg::format_double(a.histogram->average_degree()) << "\n"
            << "positive_arity_nodes " << a.positive << "\n"
            << "links " << doc.bigraph.link.edge_count + doc.bigraph.link.outer_names.size() << "\n";
  if (a.assortativity) {
    const auto& rep = *a.assortativity;
    std::cout << "linked_nodes " << rep.per_node.size() << "\n"
              << "lambda " << rbg::format_double(rep.lambda) << "\n";
    if (rep.degenerate) {
      std::cout << "assortativity degenerate (all neighbour differences are zero)\n";
    } else {
      std::cout << "mean_alpha " << rbg::format_double(rep.mean_alpha) << "\n"
                << "sd_alpha " << rbg::format_double(rep.sd_alpha) << "\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random bigraph generation and analysis"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Generate one bigraph document");
  std::uint32_t roots = 1, places = 1;
  std::uint64_t seed = 1;
  std::string out = "-", dot;
  SignatureOptions gen_sig;
  LinkOptions gen_link;
  gen->add_option("-t,--roots", roots, "Number of roots")->capture_default_str();
  gen->add_option("-n,--places", places, "Number of places, roots included")->capture_default_str();
  gen->add_option("--seed", seed, "RNG seed")->capture_default_str();
  gen->add_option("-o,--out", out, "Output document ('-' for stdout)")->capture_default_str();
  gen->add_option("--dot", dot, "Also write a Graphviz rendering");
  gen_sig.add(gen);
  gen_link.add(gen);

  auto* exp = app.add_subcommand("experiment", "Run a batch campaign over a parameter grid");
  std::string plan_file;
  std::vector<std::uint32_t> exp_roots, exp_places;
  std::vector<double> exp_fractions;
  std::uint32_t replications = 0;
  std::uint64_t exp_seed = 0;
  double exp_r = 0.0;
  unsigned threads = 0;
  std::string exp_out;
  SignatureOptions exp_sig;
  LinkOptions exp_link;
  exp->add_option("--plan", plan_file, "JSON plan file; flags override its fields");
  exp->add_option("--roots", exp_roots, "Root counts t")->delimiter(',');
  exp->add_option("--places", exp_places, "Place counts n")->delimiter(',');
  exp->add_option("--fractions", exp_fractions, "Positive-arity control fractions")->delimiter(',');
  exp->add_option("-r,--replications", replications, "Runs per cell (default 1000)");
  exp->add_option("--seed", exp_seed, "Base seed (default 1)");
  exp->add_option("--assumed-r", exp_r, "Assumed assortativity coefficient in [-1,1]");
  exp->add_option("--threads", threads, "Worker threads (0: all cores)");
  exp->add_option("-o,--out", exp_out, "Output directory (default results)");
  exp_sig.add(exp);
  exp_link.add(exp);

  auto* ana = app.add_subcommand("analyze", "Validate a document and write metric CSVs");
  std::string ana_file, ana_out = "analysis", ana_dot;
  double ana_r = 1.0;
  ana->add_option("file", ana_file, "Bigraph document")->required();
  ana->add_option("-o,--out", ana_out, "Output directory")->capture_default_str();
  ana->add_option("--assumed-r", ana_r, "Assumed assortativity coefficient in [-1,1]")->capture_default_str();
  ana->add_option("--dot", ana_dot, "Also write a Graphviz rendering");

  auto* val = app.add_subcommand("validate", "Check a document's structural invariants");
  std::string val_file;
  val->add_option("file", val_file, "Bigraph document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUserError;
  }

  try {
    if (*gen) return cmd_generate(roots, places, gen_sig, gen_link, seed, out, dot);
    if (*val) return cmd_validate(val_file);
    if (*ana) return cmd_analyze(ana_file, ana_out, ana_r, ana_dot);
    if (*exp) {
      rbg::ExperimentPlan plan;
      if (!plan_file.empty()) {
        plan = rbg::plan_from_json(rbg::read_text_file(plan_file),
                                   std::filesystem::path(plan_file).parent_path());
      }
      if (exp->count("--roots")) plan.roots = exp_roots;
      if (exp->count("--places")) plan.places = exp_places;
      if (exp->count("--fractions")) plan.positive_fractions = exp_fractions;
      if (exp->count("--replications")) plan.replications = replications;
      if (exp->count("--seed")) plan.base_seed = exp_seed;
      if (exp->count("--assumed-r")) plan.assumed_r = exp_r;
      if (exp->count("--threads")) plan.threads = threads;
      if (exp->count("--out")) plan.output_dir = exp_out;
      if (exp->count("--signature")) {
        plan.signature.fixed = rbg::parse_signature(rbg::read_text_file(exp_sig.file));
      }
      if (exp->count("--uniform-arity")) {
        std::tie(plan.signature.min_arity, plan.signature.max_arity) =
            rbg::parse_arity_range(exp_sig.uniform_arity);
      }
      if (exp->count("--count")) plan.signature.count = exp_sig.count;
      if (exp->count("--link")) plan.link = rbg::parse_strategy(exp_link.link);
      if (exp->count("--p")) plan.mppl.p = exp_link.p;
      if (exp->count("--po")) plan.mppl.outer_weight = exp_link.po;
      if (exp->count("--pe")) plan.mppl.edge_weight = exp_link.pe;
      if (exp->count("--mode")) plan.mdc_mode = rbg::parse_mode(exp_link.mode);

      const auto cells = rbg::run_campaign(plan);
      rbg::write_campaign(plan, cells);
      std::cout << "wrote " << cells.size() << " cells to " << plan.output_dir.string() << "\n";
      return kOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const rbg::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const rbg::LinkageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const rbg::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}
