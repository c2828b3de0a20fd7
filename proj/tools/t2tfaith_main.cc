// Copyright 2026 The t2tfaith Authors.
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

// Command-line front end.
//
// Usage:
//   t2tfaith <subcommand> [options] [-i input.jsonl] [-o output]
//
// Subcommands: align, metrics, filter, truncate, select,
//              plan {extract,augment,postedit}, serialize.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "t2tfaith/pipeline.h"

namespace {

constexpr int kUsageExit = 2;

}  // namespace

int main(int argc, char **argv) {
  using t2tfaith::Command;
  t2tfaith::PipelineConfig config;

  CLI::App app{"Entity-centric faithfulness metrics and corpus tooling for "
               "table-to-text data"};
  app.require_subcommand(1);
  app.fallthrough();

  std::size_t workers = 0;
  std::string on_error = "skip";
  bool strict = false;
  std::string report;
  app.add_option("-i,--input", config.input, "Input JSON Lines (- = stdin)");
  app.add_option("-o,--output", config.output, "Output path (- = stdout)");
  app.add_option("--seed", config.seed, "Seed for hash-based randomness");
  app.add_option("--workers", workers,
                 "Worker threads (default: $T2TFAITH_WORKERS or all cores)");
  app.add_option("--on-error", on_error, "Policy for invalid lines")
      ->check(CLI::IsMember({"strict", "skip"}));
  app.add_flag("--strict", strict, "Same as --on-error strict");
  app.add_option("--report", report, "Emit the run report on stderr")
      ->check(CLI::IsMember({"json"}));

  auto *align = app.add_subcommand("align", "Emit the alignment sidecar");
  align->callback([&] { config.command = Command::kAlign; });

  auto *metrics = app.add_subcommand(
      "metrics", "Per-instance TSV and corpus summary");
  metrics->add_flag("--summary-only", config.summary_only,
                    "Only write the corpus summary block");
  metrics->callback([&] { config.command = Command::kMetrics; });

  auto *filter = app.add_subcommand(
      "filter", "Randomly drop a fraction of uncovered records");
  filter->add_option("--lambda", config.lambda, "Fraction in [0, 1]")
      ->required();
  filter->callback([&] { config.command = Command::kFilter; });

  auto *truncate = app.add_subcommand(
      "truncate", "Keep the first N sentences of each text");
  truncate->add_option("--n-keep", config.n_keep, "Sentences to keep (>= 1)")
      ->required();
  truncate->callback([&] { config.command = Command::kTruncate; });

  auto *select = app.add_subcommand(
      "select", "Keep the top-n% instances (ranked or seeded random)");
  std::string select_mode = "ranked";
  select->add_option("--top-percent", config.top_percent,
                     "Percentage in (0, 100]")
      ->required();
  select->add_option("--mode", select_mode, "ranked or random")
      ->check(CLI::IsMember({"ranked", "random"}));
  select->add_flag("--preserve-order", config.preserve_order,
                   "Emit kept instances in input order");
  select->callback([&] {
    config.command = Command::kSelect;
    config.select_mode = select_mode == "random"
                             ? t2tfaith::SelectMode::kRandom
                             : t2tfaith::SelectMode::kRanked;
  });

  auto *plan = app.add_subcommand("plan", "Content plan tools");
  plan->require_subcommand(1);
  auto add_plan_flags = [&](CLI::App *sub) {
    sub->add_flag("--attach-values", config.attach_values,
                  "Render records as 'attribute : value'");
    sub->add_flag("--text-out", config.text_out,
                  "Write one plan body per line instead of JSON");
  };
  auto *extract = plan->add_subcommand("extract", "Gold plan from the text");
  add_plan_flags(extract);
  extract->callback([&] { config.command = Command::kPlanExtract; });
  auto *augment = plan->add_subcommand(
      "augment", "Gold plan plus unaligned entities");
  add_plan_flags(augment);
  augment->callback([&] { config.command = Command::kPlanAugment; });
  auto *postedit = plan->add_subcommand(
      "postedit", "Clean up learned plans");
  add_plan_flags(postedit);
  postedit->add_option("--plans", config.plans_path,
                       "Raw plans, one line per input instance");
  postedit->add_option("--plan-field", config.plan_field,
                       "Instance field holding the raw plan");
  postedit->callback([&] { config.command = Command::kPlanPostedit; });

  auto *serialize = app.add_subcommand("serialize", "Render model inputs");
  std::string mode = "r";
  serialize->add_option("--mode", mode, "r, rp, rep, e or val")
      ->check(CLI::IsMember({"r", "rp", "rep", "e", "val"}));
  serialize->add_flag("--attach-values", config.attach_values,
                      "Attach values to plan records in rp mode");
  serialize->add_flag("--plan-from-gold", config.plan_from_gold,
                      "Derive gold (rp) or augmented (rep) plans when the "
                      "instance has no 'plan' field");
  serialize->add_flag("--text-out", config.text_out,
                      "Write one rendered input per line instead of JSON");
  serialize->callback([&] {
    config.command = Command::kSerialize;
    config.render_mode = t2tfaith::ParseRenderMode(mode);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  config.workers = workers > 0 ? workers : t2tfaith::DefaultWorkerCount();
  config.on_error = strict || on_error == "strict"
                        ? t2tfaith::ErrorPolicy::kStrict
                        : t2tfaith::ErrorPolicy::kSkip;

  const t2tfaith::RunReport result = t2tfaith::Run(config, std::cerr);
  if (report == "json") std::cerr << result.ToJson().dump() << "\n";
  return result.exit_code;
}
