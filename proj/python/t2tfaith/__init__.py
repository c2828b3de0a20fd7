# Copyright 2026 The t2tfaith Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Entity-centric faithfulness metrics for table-to-text corpora."""

from t2tfaith._core import (
    DegenerateInstance,
    EmptyCorpus,
    Error,
    Instance,
    ParseError,
    UsageError,
    ValidationError,
    align,
    augmented_plan,
    check_plan_grammar,
    corpus_metrics,
    filter_records,
    filtered_subsequence_match,
    gold_plan,
    instance_metrics,
    normalize_token,
    parse_plan,
    postedit_plan,
    record_draw,
    render_input,
    render_plan,
    sample_random_fraction,
    select_top_fraction,
    split_sentences,
    tokenize,
    truncate,
)
from t2tfaith._core import run as _run


def run(command, input, output="-", **options):
    """Runs a pipeline subcommand, e.g. run("filter", src, dst, lam=0.5)."""
    return _run(command, str(input), str(output), options)


def read_jsonl(path):
    """Yields the instances of a JSON Lines file, skipping blank lines."""
    with open(path, encoding="utf-8") as f:
        for line in f:
            if line.strip():
                yield Instance(line)


__all__ = [name for name in dir() if not name.startswith("_")]
