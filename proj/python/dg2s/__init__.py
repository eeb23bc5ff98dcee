# Copyright 2026 The dg2s Authors.
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

"""Graph-based statistical translation toolkit."""

from ._dg2s import (
    ConfigError,
    DepGraph,
    Error,
    LanguageModel,
    MalformedTreeError,
    NoDerivationError,
    ParseError,
    RuleTable,
    build_graph,
    corpus_bleu,
    extract_rules,
    read_conll,
    run_cli,
    translate,
)

__all__ = [
    "ConfigError",
    "DepGraph",
    "Error",
    "LanguageModel",
    "MalformedTreeError",
    "NoDerivationError",
    "ParseError",
    "RuleTable",
    "build_graph",
    "corpus_bleu",
    "extract_rules",
    "read_conll",
    "run_cli",
    "translate",
]
