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

#include "t2tfaith/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <thread>
#include <utility>
#include <vector>

#include <unistd.h>

#include "t2tfaith/alignment.h"
#include "t2tfaith/errors.h"
#include "t2tfaith/transforms.h"

namespace t2tfaith {
namespace {

constexpr std::size_t kChunkPerWorker = 512;

struct Line {
  std::string text;
  std::uint64_t number = 0;  // 1-based physical line number
  std::uint64_t offset = 0;  // byte offset of the line start
  std::optional<std::string> raw_plan;
};

enum class Status { kEmitted, kDropped, kError };

struct Outcome {
  Status status = Status::kEmitted;
  std::string output;  // bytes to write, newline included
  std::optional<InstanceMetrics> metrics;
  std::string error;
};

// Reads non-blank lines, tracking physical line numbers and byte offsets.
class LineReader {
 public:
  explicit LineReader(std::istream &in) : in_(in) {
    const auto pos = in_.tellg();
    offset_ = pos >= 0 ? static_cast<std::uint64_t>(pos) : 0;
  }

  bool Next(Line *line) {
    std::string text;
    while (std::getline(in_, text)) {
      const std::uint64_t start = offset_;
      offset_ += text.size() + 1;
      ++number_;
      if (!text.empty() && text.back() == '\r') text.pop_back();
      if (text.find_first_not_of(" \t") == std::string::npos) continue;
      line->text = std::move(text);
      line->number = number_;
      line->offset = start;
      line->raw_plan.reset();
      return true;
    }
    return false;
  }

 private:
  std::istream &in_;
  std::uint64_t offset_ = 0;
  std::uint64_t number_ = 0;
};

template <class Fn>
void ParallelFor(std::size_t count, std::size_t workers, Fn fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  const std::size_t block = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(count, begin + block);
    if (begin >= end) break;
    threads.emplace_back([begin, end, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
}

Json Extras(const Json &object) {
  Json extras = Json::object();
  for (auto it = object.begin(); it != object.end(); ++it) {
    if (!IsCoreField(it.key())) extras[it.key()] = it.value();
  }
  return extras;
}

// Instance JSON followed by the input's non-core fields, then `added`.
std::string EmitInstance(const Instance &instance, const Json &extras,
                         const Json &added = Json::object()) {
  Json out = InstanceToJson(instance);
  for (auto it = extras.begin(); it != extras.end(); ++it) {
    if (!added.contains(it.key())) out[it.key()] = it.value();
  }
  for (auto it = added.begin(); it != added.end(); ++it) {
    out[it.key()] = it.value();
  }
  return out.dump() + "\n";
}

std::string OneLine(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  std::replace(text.begin(), text.end(), '\r', ' ');
  return text + "\n";
}

std::string EscapeTsv(const std::string &field) {
  std::string out;
  for (char c : field) {
    switch (c) {
      case '\t':
        out += "\\t";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\\':
        out += "\\\\";
        break;
      default:
        out += c;
    }
  }
  return out;
}

Plan PlanForSerialize(const PipelineConfig &config, const Instance &instance,
                      const Json &object) {
  if (auto it = object.find("plan"); it != object.end() && !it->is_null()) {
    return PlanFromJson(*it, instance.table());
  }
  if (!config.plan_from_gold) {
    throw UsageError("instance has no 'plan' field (use --plan-from-gold)");
  }
  const Alignment alignment = AlignInstance(instance);
  Plan gold = ExtractGoldPlan(instance, alignment);
  if (config.render_mode == RenderMode::kRecordsAugPlan) {
    return AugmentPlan(gold, instance, alignment);
  }
  return gold;
}

std::string RawPlanFromField(const Json &object, const std::string &field) {
  auto it = object.find(field);
  if (it == object.end()) {
    throw UsageError("instance has no '" + field + "' field");
  }
  if (it->is_string()) return it->get<std::string>();
  if (it->is_array()) {
    std::string joined;
    for (const Json &token : *it) {
      if (!token.is_string()) throw ParseError("raw plan tokens must be strings");
      if (!joined.empty()) joined += ' ';
      joined += token.get<std::string>();
    }
    return joined;
  }
  throw ParseError("'" + field + "' must be a string or an array of strings");
}

Outcome Process(const PipelineConfig &config, const Line &line) {
  Outcome outcome;
  Json object;
  try {
    object = Json::parse(line.text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(e.what());
  }
  const Instance instance = InstanceFromJson(object);

  switch (config.command) {
    case Command::kAlign:
      outcome.output = AlignmentToJson(instance, AlignInstance(instance)).dump() + "\n";
      break;
    case Command::kMetrics:
    case Command::kSelect: {
      outcome.metrics =
          ComputeInstanceMetrics(instance, AlignInstance(instance));
      if (config.command == Command::kMetrics) {
        outcome.output = MetricsRow(*outcome.metrics);
      }
      break;
    }
    case Command::kFilter: {
      FilterResult result = FilterUncoveredRecords(
          instance, AlignInstance(instance),
          FilterConfig{config.lambda, config.seed});
      if (result.empty_table()) {
        outcome.status = Status::kDropped;
        outcome.error = "every record was filtered out";
      } else if (result.removed.empty()) {
        outcome.output = line.text + "\n";
      } else {
        outcome.output = EmitInstance(*result.instance, Extras(object));
      }
      break;
    }
    case Command::kTruncate:
      outcome.output =
          EmitInstance(TruncateReference(instance, TruncateConfig{config.n_keep}),
                       Extras(object));
      break;
    case Command::kPlanExtract:
    case Command::kPlanAugment:
    case Command::kPlanPostedit: {
      Plan plan;
      if (config.command == Command::kPlanPostedit) {
        const std::string raw = line.raw_plan
                                    ? *line.raw_plan
                                    : RawPlanFromField(object, config.plan_field);
        plan = PostEditPlan(std::string_view(raw), instance.table());
      } else {
        const Alignment alignment = AlignInstance(instance);
        plan = ExtractGoldPlan(instance, alignment);
        if (config.command == Command::kPlanAugment) {
          plan = AugmentPlan(plan, instance, alignment);
        }
      }
      const bool values =
          config.attach_values || config.command == Command::kPlanAugment;
      std::string body = RenderPlan(plan, instance.table(), values);
      if (config.text_out) {
        outcome.output = OneLine(std::move(body));
      } else {
        Json added = Json::object();
        added["plan"] = PlanToJson(plan);
        added["plan_text"] = std::move(body);
        outcome.output = EmitInstance(instance, Extras(object), added);
      }
      break;
    }
    case Command::kSerialize: {
      std::optional<Plan> plan;
      if (config.render_mode == RenderMode::kRecordsPlan ||
          config.render_mode == RenderMode::kRecordsAugPlan) {
        plan = PlanForSerialize(config, instance, object);
      }
      std::string rendered =
          RenderInput(instance, config.render_mode, plan ? &*plan : nullptr,
                      config.attach_values);
      if (config.text_out) {
        outcome.output = OneLine(std::move(rendered));
      } else {
        Json added = Json::object();
        added["rendered"] = std::move(rendered);
        outcome.output = EmitInstance(instance, Extras(object), added);
      }
      break;
    }
  }
  return outcome;
}

Outcome ProcessGuarded(const PipelineConfig &config, const Line &line) {
  try {
    return Process(config, line);
  } catch (const Error &e) {
    Outcome outcome;
    outcome.status = Status::kError;
    outcome.error = e.what();
    return outcome;
  } catch (const std::exception &e) {
    Outcome outcome;
    outcome.status = Status::kError;
    outcome.error = std::string("Error: ") + e.what();
    return outcome;
  }
}

// Shared chunked driver: reads, processes in parallel, then hands outcomes
// to `sink` in input order. Returns false if the strict policy stopped the
// run.
template <class Sink>
bool Drive(const PipelineConfig &config, std::istream &in,
           std::istream *plans, std::ostream &diagnostics, RunReport *report,
           Sink sink) {
  LineReader reader(in);
  const std::size_t chunk_size =
      kChunkPerWorker * std::max<std::size_t>(1, config.workers);
  std::vector<Line> chunk;
  std::vector<Outcome> outcomes;
  bool more = true;
  while (more) {
    chunk.clear();
    Line line;
    while (chunk.size() < chunk_size && (more = reader.Next(&line))) {
      if (plans != nullptr) {
        std::string raw;
        if (std::getline(*plans, raw)) {
          if (!raw.empty() && raw.back() == '\r') raw.pop_back();
          line.raw_plan = std::move(raw);
        }
      }
      chunk.push_back(std::move(line));
    }
    outcomes.assign(chunk.size(), Outcome{});
    ParallelFor(chunk.size(), config.workers, [&](std::size_t i) {
      if (config.command == Command::kPlanPostedit && plans != nullptr &&
          !chunk[i].raw_plan) {
        outcomes[i].status = Status::kError;
        outcomes[i].error = "UsageError: plans file has fewer lines than input";
        return;
      }
      outcomes[i] = ProcessGuarded(config, chunk[i]);
    });
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      ++report->read;
      Outcome &o = outcomes[i];
      if (o.status == Status::kError) {
        ++report->errors;
        ++report->rejected;
        diagnostics << "line " << chunk[i].number << ": " << o.error << "\n";
        if (config.on_error == ErrorPolicy::kStrict) {
          report->exit_code = 1;
          return false;
        }
        continue;
      }
      if (o.status == Status::kDropped) {
        ++report->dropped;
        ++report->rejected;
        continue;
      }
      sink(chunk[i], o);
    }
  }
  return true;
}

RunReport RunSelect(const PipelineConfig &config, std::istream &in,
                    std::ostream &out, std::ostream &diagnostics,
                    RunReport report) {
  std::unique_ptr<std::fstream> spool;
  std::filesystem::path spool_path;
  std::istream *source = &in;
  if (in.tellg() < 0) {
    spool_path = std::filesystem::temp_directory_path() /
                 ("t2tfaith-select-" + std::to_string(::getpid()) + "-" +
                  std::to_string(reinterpret_cast<std::uintptr_t>(&report)));
    spool = std::make_unique<std::fstream>(
        spool_path, std::ios::in | std::ios::out | std::ios::trunc |
                        std::ios::binary);
    if (!*spool) {
      diagnostics << "cannot create spool file " << spool_path << "\n";
      report.exit_code = 2;
      return report;
    }
    *spool << in.rdbuf();
    spool->flush();
    spool->seekg(0);
    source = spool.get();
  }

  std::vector<InstanceMetrics> metrics;
  std::vector<std::uint64_t> offsets;
  CorpusAccumulator acc;
  const bool completed = Drive(config, *source, nullptr, diagnostics, &report,
                               [&](const Line &line, Outcome &o) {
                                 acc.Add(*o.metrics);
                                 metrics.push_back(std::move(*o.metrics));
                                 offsets.push_back(line.offset);
                               });
  if (completed && !metrics.empty()) {
    report.corpus = Finalize(acc);
    const double fraction = config.top_percent / 100.0;
    std::vector<std::size_t> order;
    if (config.select_mode == SelectMode::kRanked) {
      order.resize(metrics.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return RanksBefore(metrics[a], metrics[b]);
      });
    } else {
      std::vector<std::string> ids;
      ids.reserve(metrics.size());
      for (const auto &m : metrics) ids.push_back(m.id);
      order = RandomOrder(ids, config.seed);
    }
    order.resize(SelectionCount(fraction, order.size()));
    if (config.preserve_order) std::sort(order.begin(), order.end());

    source->clear();
    std::string text;
    for (std::size_t i : order) {
      source->seekg(static_cast<std::streamoff>(offsets[i]));
      std::getline(*source, text);
      if (!text.empty() && text.back() == '\r') text.pop_back();
      out << text << "\n";
      ++report.emitted;
    }
    report.dropped += metrics.size() - order.size();
    report.rejected += metrics.size() - order.size();
  }
  if (spool) {
    spool.reset();
    std::error_code ignored;
    std::filesystem::remove(spool_path, ignored);
  }
  return report;
}

}  // namespace

std::string_view CommandName(Command command) {
  switch (command) {
    case Command::kAlign:
      return "align";
    case Command::kMetrics:
      return "metrics";
    case Command::kFilter:
      return "filter";
    case Command::kTruncate:
      return "truncate";
    case Command::kSelect:
      return "select";
    case Command::kPlanExtract:
      return "plan extract";
    case Command::kPlanAugment:
      return "plan augment";
    case Command::kPlanPostedit:
      return "plan postedit";
    case Command::kSerialize:
      return "serialize";
  }
  return "";
}

void PipelineConfig::Validate() const {
  if (workers < 1) throw UsageError("worker count must be at least 1");
  if (command == Command::kFilter) t2tfaith::Validate(FilterConfig{lambda, seed});
  if (command == Command::kTruncate) {
    t2tfaith::Validate(TruncateConfig{n_keep});
  }
  if (command == Command::kSelect && !(top_percent > 0 && top_percent <= 100)) {
    throw UsageError("--top-percent must lie in (0, 100]");
  }
}

Json PipelineConfig::ToJson() const {
  Json out = Json::object();
  out["command"] = std::string(CommandName(command));
  out["input"] = input;
  out["output"] = output;
  out["seed"] = seed;
  out["workers"] = workers;
  out["on_error"] = on_error == ErrorPolicy::kStrict ? "strict" : "skip";
  switch (command) {
    case Command::kFilter:
      out["lambda"] = lambda;
      break;
    case Command::kTruncate:
      out["n_keep"] = n_keep;
      break;
    case Command::kSelect:
      out["top_percent"] = top_percent;
      out["mode"] = select_mode == SelectMode::kRanked ? "ranked" : "random";
      out["preserve_order"] = preserve_order;
      break;
    case Command::kSerialize:
      out["mode"] = std::string(RenderModeName(render_mode));
      out["attach_values"] = attach_values;
      out["plan_from_gold"] = plan_from_gold;
      out["text_out"] = text_out;
      break;
    case Command::kPlanExtract:
    case Command::kPlanAugment:
    case Command::kPlanPostedit:
      out["attach_values"] = attach_values;
      out["text_out"] = text_out;
      if (command == Command::kPlanPostedit) {
        out["plans"] = plans_path;
        out["plan_field"] = plan_field;
      }
      break;
    case Command::kMetrics:
      out["summary_only"] = summary_only;
      break;
    case Command::kAlign:
      break;
  }
  return out;
}

Json RunReport::ToJson() const {
  Json out = Json::object();
  out["read"] = read;
  out["emitted"] = emitted;
  out["rejected"] = rejected;
  out["errors"] = errors;
  out["dropped"] = dropped;
  if (corpus) {
    out["corpus"] = Json{{"N", corpus->n},
                         {"P_cover", corpus->p_cover},
                         {"R_hallu", corpus->r_hallu},
                         {"L", corpus->mean_length},
                         {"sentences", corpus->mean_sentences}};
  }
  out["wall_seconds"] = wall_seconds;
  out["config"] = config;
  out["exit_code"] = exit_code;
  return out;
}

std::size_t DefaultWorkerCount() {
  if (const char *env = std::getenv("T2TFAITH_WORKERS")) {
    char *end = nullptr;
    const unsigned long long n = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string FormatFixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

std::string MetricsHeader() {
  return "id\tp_cover\tn_hallu\tl\tsentences\tr_hallu\n";
}

std::string MetricsRow(const InstanceMetrics &m) {
  return EscapeTsv(m.id) + "\t" + FormatFixed(m.p_cover().value()) + "\t" +
         std::to_string(m.n_hallu) + "\t" + std::to_string(m.length) + "\t" +
         std::to_string(m.sentence_count) + "\t" +
         FormatFixed(m.r_hallu().value()) + "\n";
}

std::string CorpusSummary(const CorpusMetrics &c) {
  return "N\t" + std::to_string(c.n) + "\n" + "P_cover\t" +
         FormatFixed(c.p_cover) + "\n" + "R_hallu\t" + FormatFixed(c.r_hallu) +
         "\n" + "L\t" + FormatFixed(c.mean_length) + "\n" + "sentences\t" +
         FormatFixed(c.mean_sentences) + "\n";
}

RunReport Run(const PipelineConfig &config, std::istream &in,
              std::ostream &out, std::ostream &diagnostics) {
  const auto started = std::chrono::steady_clock::now();
  RunReport report;
  report.config = config.ToJson();
  auto finish = [&](RunReport r) {
    r.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - started)
                         .count();
    return r;
  };
  try {
    config.Validate();
  } catch (const Error &e) {
    diagnostics << e.what() << "\n";
    report.exit_code = 2;
    return finish(report);
  }

  if (config.command == Command::kSelect) {
    return finish(RunSelect(config, in, out, diagnostics, std::move(report)));
  }

  std::unique_ptr<std::ifstream> plans;
  if (config.command == Command::kPlanPostedit && !config.plans_path.empty()) {
    plans = std::make_unique<std::ifstream>(config.plans_path, std::ios::binary);
    if (!*plans) {
      diagnostics << "cannot open plans file '" << config.plans_path << "'\n";
      report.exit_code = 2;
      return finish(report);
    }
  }

  CorpusAccumulator acc;
  if (config.command == Command::kMetrics && !config.summary_only) {
    out << MetricsHeader();
  }
  const bool completed = Drive(config, in, plans.get(), diagnostics, &report,
        [&](const Line &, Outcome &o) {
          if (o.metrics) acc.Add(*o.metrics);
          if (!(config.command == Command::kMetrics && config.summary_only)) {
            out << o.output;
          }
          ++report.emitted;
        });

  if (config.command == Command::kMetrics && completed) {
    if (acc.count() == 0) {
      diagnostics << "EmptyCorpus: no valid instances, no summary written\n";
    } else {
      report.corpus = Finalize(acc);
      if (!config.summary_only) out << "\n";
      out << CorpusSummary(*report.corpus);
    }
  }
  out.flush();
  return finish(report);
}

RunReport Run(const PipelineConfig &config, std::ostream &diagnostics) {
  try {
    config.Validate();
  } catch (const Error &e) {
    RunReport report;
    report.config = config.ToJson();
    diagnostics << e.what() << "\n";
    report.exit_code = 2;
    return report;
  }
  std::unique_ptr<std::ifstream> file;
  std::istream *in = &std::cin;
  if (config.input != "-") {
    file = std::make_unique<std::ifstream>(config.input, std::ios::binary);
    if (!*file) {
      RunReport report;
      report.config = config.ToJson();
      diagnostics << "cannot open input '" << config.input << "'\n";
      report.exit_code = 2;
      return report;
    }
    in = file.get();
  }
  std::unique_ptr<std::ofstream> out_file;
  std::ostream *out = &std::cout;
  if (config.output != "-") {
    out_file = std::make_unique<std::ofstream>(config.output, std::ios::binary);
    if (!*out_file) {
      RunReport report;
      report.config = config.ToJson();
      diagnostics << "cannot open output '" << config.output << "'\n";
      report.exit_code = 2;
      return report;
    }
    out = out_file.get();
  }
  return Run(config, *in, *out, diagnostics);
}

}  // namespace t2tfaith
