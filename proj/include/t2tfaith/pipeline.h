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

#ifndef T2TFAITH_PIPELINE_H_
#define T2TFAITH_PIPELINE_H_

// Streaming corpus pipelines over JSON Lines instance files.
//
// Lines are read in bounded chunks, processed by a pool of workers and
// written back in input order, so output bytes never depend on the worker
// count. Only `select` keeps per-instance state (ids, metrics and line
// offsets), never whole instances.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "t2tfaith/jsonl.h"
#include "t2tfaith/metrics.h"
#include "t2tfaith/planning.h"

namespace t2tfaith {

enum class Command {
  kAlign,
  kMetrics,
  kFilter,
  kTruncate,
  kSelect,
  kPlanExtract,
  kPlanAugment,
  kPlanPostedit,
  kSerialize,
};

std::string_view CommandName(Command command);

enum class ErrorPolicy { kStrict, kSkip };
enum class SelectMode { kRanked, kRandom };

struct PipelineConfig {
  Command command = Command::kMetrics;
  std::string input = "-";   // "-" reads stdin
  std::string output = "-";  // "-" writes stdout
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  ErrorPolicy on_error = ErrorPolicy::kSkip;

  double lambda = 0.0;         // filter
  std::size_t n_keep = 1;      // truncate
  double top_percent = 100.0;  // select, in (0, 100]
  SelectMode select_mode = SelectMode::kRanked;
  bool preserve_order = false;  // select: emit kept instances in input order

  RenderMode render_mode = RenderMode::kRecords;  // serialize
  bool attach_values = false;  // plan bodies: "attribute : value"
  bool plan_from_gold = false;  // serialize: derive missing plans
  std::string plans_path;       // plan postedit: one raw plan per instance
  std::string plan_field = "learned_plan";  // plan postedit: raw plan field
  bool text_out = false;        // plain text line per instance
  bool summary_only = false;    // metrics: corpus block only

  // Throws UsageError for out-of-range parameters.
  void Validate() const;
  Json ToJson() const;
};

struct RunReport {
  std::uint64_t read = 0;
  std::uint64_t emitted = 0;
  std::uint64_t rejected = 0;  // read - emitted
  std::uint64_t errors = 0;    // rejected because the line was invalid
  std::uint64_t dropped = 0;   // rejected by design (empty table, unselected)
  std::optional<CorpusMetrics> corpus;
  double wall_seconds = 0.0;
  Json config;
  int exit_code = 0;

  Json ToJson() const;
};

// Runs one pipeline. Diagnostics for rejected lines go to `diagnostics`.
// Exit codes: 0 success, 1 an invalid line under the strict policy, 2 usage
// or I/O error (bad parameters, unreadable input).
RunReport Run(const PipelineConfig &config, std::ostream &diagnostics);

// Stream-based variant used by tests; `select` spools non-file input.
RunReport Run(const PipelineConfig &config, std::istream &in,
              std::ostream &out, std::ostream &diagnostics);

// Worker count from T2TFAITH_WORKERS, else the hardware concurrency.
std::size_t DefaultWorkerCount();

// Metrics TSV pieces, shared with tests.
std::string FormatFixed(double value);
std::string MetricsHeader();
std::string MetricsRow(const InstanceMetrics &m);
std::string CorpusSummary(const CorpusMetrics &c);

}  // namespace t2tfaith

#endif  // T2TFAITH_PIPELINE_H_
