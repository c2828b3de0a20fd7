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

// Python bindings. Structured values (tables, entities, plans, alignments,
// reports) cross the boundary as plain dicts and lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "t2tfaith/alignment.h"
#include "t2tfaith/errors.h"
#include "t2tfaith/jsonl.h"
#include "t2tfaith/metrics.h"
#include "t2tfaith/pipeline.h"
#include "t2tfaith/planning.h"
#include "t2tfaith/transforms.h"

namespace py = pybind11;

namespace t2tfaith {
namespace {

py::object ToPy(const Json &value) {
  return py::module_::import("json").attr("loads")(value.dump());
}

Json FromPy(const py::handle &value) {
  return Json::parse(
      py::module_::import("json").attr("dumps")(value).cast<std::string>());
}

Instance MakeInstance(const py::object &value) {
  if (py::isinstance<py::str>(value)) {
    return ParseInstance(value.cast<std::string>());
  }
  return InstanceFromJson(FromPy(value));
}

py::dict MetricsDict(const InstanceMetrics &m) {
  py::dict d;
  d["id"] = m.id;
  d["covered"] = m.covered;
  d["records"] = m.records;
  d["p_cover"] = m.p_cover().value();
  d["n_hallu"] = m.n_hallu;
  d["length"] = m.length;
  d["sentences"] = m.sentence_count;
  d["r_hallu"] = m.r_hallu().value();
  return d;
}

std::vector<InstanceMetrics> MetricsOf(const std::vector<Instance> &instances) {
  std::vector<InstanceMetrics> out;
  out.reserve(instances.size());
  for (const Instance &inst : instances) {
    out.push_back(ComputeInstanceMetrics(inst, AlignInstance(inst)));
  }
  return out;
}

Plan ResolvePlan(const py::object &plan, const Instance &instance) {
  return PlanFromJson(FromPy(plan), instance.table());
}

Command ParseCommand(const std::string &name) {
  static const std::vector<std::pair<std::string, Command>> kCommands = {
      {"align", Command::kAlign},
      {"metrics", Command::kMetrics},
      {"filter", Command::kFilter},
      {"truncate", Command::kTruncate},
      {"select", Command::kSelect},
      {"plan extract", Command::kPlanExtract},
      {"plan augment", Command::kPlanAugment},
      {"plan postedit", Command::kPlanPostedit},
      {"serialize", Command::kSerialize},
  };
  for (const auto &[key, command] : kCommands) {
    if (key == name) return command;
  }
  throw UsageError("unknown command '" + name + "'");
}

void ApplyOption(PipelineConfig *c, const std::string &key,
                 const py::handle &value) {
  if (key == "seed") {
    c->seed = value.cast<std::uint64_t>();
  } else if (key == "workers") {
    c->workers = value.cast<std::size_t>();
  } else if (key == "strict") {
    c->on_error =
        value.cast<bool>() ? ErrorPolicy::kStrict : ErrorPolicy::kSkip;
  } else if (key == "lam") {
    c->lambda = value.cast<double>();
  } else if (key == "n_keep") {
    c->n_keep = value.cast<std::size_t>();
  } else if (key == "top_percent") {
    c->top_percent = value.cast<double>();
  } else if (key == "mode" && c->command == Command::kSelect) {
    const auto mode = value.cast<std::string>();
    if (mode != "ranked" && mode != "random") {
      throw UsageError("select mode must be ranked or random");
    }
    c->select_mode = mode == "random" ? SelectMode::kRandom : SelectMode::kRanked;
  } else if (key == "mode") {
    c->render_mode = ParseRenderMode(value.cast<std::string>());
  } else if (key == "preserve_order") {
    c->preserve_order = value.cast<bool>();
  } else if (key == "attach_values") {
    c->attach_values = value.cast<bool>();
  } else if (key == "plan_from_gold") {
    c->plan_from_gold = value.cast<bool>();
  } else if (key == "plans") {
    c->plans_path = value.cast<std::string>();
  } else if (key == "plan_field") {
    c->plan_field = value.cast<std::string>();
  } else if (key == "text_out") {
    c->text_out = value.cast<bool>();
  } else if (key == "summary_only") {
    c->summary_only = value.cast<bool>();
  } else {
    throw UsageError("unknown option '" + key + "'");
  }
}

}  // namespace
}  // namespace t2tfaith

PYBIND11_MODULE(_core, m) {
  using namespace t2tfaith;
  m.doc() = "Entity-centric faithfulness metrics for table-to-text corpora";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
  static py::exception<ValidationError> validation_error(m, "ValidationError",
                                                         error.ptr());
  static py::exception<DegenerateInstance> degenerate(m, "DegenerateInstance",
                                                      error.ptr());
  static py::exception<EmptyCorpus> empty_corpus(m, "EmptyCorpus", error.ptr());
  static py::exception<UsageError> usage_error(m, "UsageError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError &e) {
      py::set_error(parse_error, e.what());
    } catch (const ValidationError &e) {
      py::set_error(validation_error, e.what());
    } catch (const DegenerateInstance &e) {
      py::set_error(degenerate, e.what());
    } catch (const EmptyCorpus &e) {
      py::set_error(empty_corpus, e.what());
    } catch (const UsageError &e) {
      py::set_error(usage_error, e.what());
    } catch (const Error &e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<Instance>(m, "Instance")
      .def(py::init(&MakeInstance), py::arg("value"),
           "Builds an instance from a JSON line or a dict.")
      .def_property_readonly("id", &Instance::id)
      .def_property_readonly("text", &Instance::text)
      .def_property_readonly("table",
                             [](const Instance &inst) {
                               py::list out;
                               for (const Record &r : inst.table()) {
                                 out.append(py::make_tuple(r.attribute, r.value));
                               }
                               return out;
                             })
      .def_property_readonly(
          "entities",
          [](const Instance &inst) {
            return ToPy(InstanceToJson(inst)["entities"]);
          })
      .def_property_readonly("sentences",
                             [](const Instance &inst) {
                               py::list out;
                               for (const Span &s : inst.sentences()) {
                                 out.append(py::make_tuple(s.begin, s.end));
                               }
                               return out;
                             })
      .def_property_readonly("tokens",
                             [](const Instance &inst) {
                               py::list out;
                               for (const Token &t : inst.tokens()) {
                                 out.append(t.text);
                               }
                               return out;
                             })
      .def("to_dict", [](const Instance &inst) { return ToPy(InstanceToJson(inst)); })
      .def("to_json", &SerializeInstance)
      .def("__eq__", [](const Instance &a, const Instance &b) { return a == b; })
      .def("__repr__", [](const Instance &inst) {
        return "<Instance " + inst.id() + ">";
      });

  m.def("tokenize", [](const std::string &text) {
    std::vector<std::string> out;
    for (const Token &t : Tokenize(std::string_view(text))) out.push_back(t.text);
    return out;
  });
  m.def("split_sentences", [](const std::string &text) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const Span &s : SegmentSentences(std::string_view(text))) {
      out.emplace_back(s.begin, s.end);
    }
    return out;
  });
  m.def("normalize_token", [](const std::string &token) {
    return NormalizeToken(token);
  });

  m.def("align", [](const Instance &inst) {
    return ToPy(AlignmentToJson(inst, AlignInstance(inst)));
  });
  m.def("filtered_subsequence_match",
        [](const std::string &entity, const std::string &label,
           const std::string &value) {
          return FilteredSubsequenceMatch(
              EntityMention{entity, LabelFromName(label), Span{0, 0}},
              Record{"", value});
        },
        py::arg("entity"), py::arg("label"), py::arg("value"));

  m.def("instance_metrics", [](const Instance &inst) {
    return MetricsDict(ComputeInstanceMetrics(inst, AlignInstance(inst)));
  });
  m.def("corpus_metrics", [](const std::vector<Instance> &instances) {
    const auto metrics = MetricsOf(instances);
    const CorpusMetrics c = ComputeCorpusMetrics(metrics);
    py::dict d;
    d["N"] = c.n;
    d["P_cover"] = c.p_cover;
    d["R_hallu"] = c.r_hallu;
    d["L"] = c.mean_length;
    d["sentences"] = c.mean_sentences;
    return d;
  });

  m.def("filter_records",
        [](const Instance &inst, double lam, std::uint64_t seed)
            -> std::optional<Instance> {
          return FilterUncoveredRecords(inst, AlignInstance(inst),
                                        FilterConfig{lam, seed})
              .instance;
        },
        py::arg("instance"), py::arg("lam"), py::arg("seed") = 0,
        "Returns None when every record was removed.");
  m.def("record_draw",
        [](std::uint64_t seed, const std::string &id, const std::string &attr,
           const std::string &value, std::size_t index) {
          return RecordDraw(seed, id, Record{attr, value}, index);
        });
  m.def("truncate",
        [](const Instance &inst, std::size_t n_keep) {
          return TruncateReference(inst, TruncateConfig{n_keep});
        },
        py::arg("instance"), py::arg("n_keep"));
  m.def("select_top_fraction",
        [](const std::vector<Instance> &instances, double fraction) {
          return SelectTopFraction(MetricsOf(instances), fraction);
        },
        py::arg("instances"), py::arg("fraction"));
  m.def("sample_random_fraction",
        [](const std::vector<std::string> &ids, double fraction,
           std::uint64_t seed) {
          return SampleRandomFraction(ids, fraction, seed);
        },
        py::arg("ids"), py::arg("fraction"), py::arg("seed"));

  m.def("gold_plan", [](const Instance &inst) {
    return ToPy(PlanToJson(ExtractGoldPlan(inst, AlignInstance(inst))));
  });
  m.def("augmented_plan", [](const Instance &inst) {
    const Alignment a = AlignInstance(inst);
    return ToPy(PlanToJson(AugmentPlan(ExtractGoldPlan(inst, a), inst, a)));
  });
  m.def("postedit_plan",
        [](const py::object &raw, const Instance &inst) {
          if (py::isinstance<py::str>(raw)) {
            return ToPy(PlanToJson(
                PostEditPlan(raw.cast<std::string>(), inst.table())));
          }
          const auto tokens = raw.cast<std::vector<std::string>>();
          return ToPy(PlanToJson(PostEditPlan(
              std::span<const std::string>(tokens), inst.table())));
        },
        py::arg("raw"), py::arg("instance"));
  m.def("render_plan",
        [](const py::object &plan, const Instance &inst, bool attach_values) {
          return RenderPlan(ResolvePlan(plan, inst), inst.table(),
                            attach_values);
        },
        py::arg("plan"), py::arg("instance"), py::arg("attach_values") = false);
  m.def("parse_plan",
        [](const std::string &text, const Instance &inst) {
          return ToPy(PlanToJson(ParsePlan(text, inst.table())));
        },
        py::arg("text"), py::arg("instance"));
  m.def("check_plan_grammar",
        [](const py::object &plan, const Instance &inst) {
          return CheckPlanGrammar(ResolvePlan(plan, inst), inst.table());
        },
        py::arg("plan"), py::arg("instance"));
  m.def("render_input",
        [](const Instance &inst, const std::string &mode,
           const py::object &plan, bool attach_values) {
          std::optional<Plan> p;
          if (!plan.is_none()) p = ResolvePlan(plan, inst);
          return RenderInput(inst, ParseRenderMode(mode), p ? &*p : nullptr,
                             attach_values);
        },
        py::arg("instance"), py::arg("mode"), py::arg("plan") = py::none(),
        py::arg("attach_values") = false);

  m.def("run",
        [](const std::string &command, const std::string &input,
           const std::string &output, const py::dict &options) {
          PipelineConfig c;
          c.command = ParseCommand(command);
          c.input = input;
          c.output = output;
          c.workers = DefaultWorkerCount();
          for (auto [key, value] : options) {
            ApplyOption(&c, key.cast<std::string>(), value);
          }
          std::ostringstream diagnostics;
          RunReport report;
          {
            py::gil_scoped_release release;
            report = Run(c, diagnostics);
          }
          py::dict out = ToPy(report.ToJson());
          out["diagnostics"] = diagnostics.str();
          return out;
        },
        py::arg("command"), py::arg("input"), py::arg("output"),
        py::arg("options") = py::dict(),
        "Runs one pipeline file to file and returns the run report.");
}
