# Copyright 2026 The sebfs Authors
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

"""Semi-external BFS over binary edge-list files."""

from ._sebfs import (
    ROOT,
    BfsTree,
    BudgetError,
    Error,
    FormatError,
    StorageError,
    TimeLimitError,
    WatchdogError,
    generate_er,
    read_edges,
    read_header,
    read_tree,
    reference_bfs,
    run,
    subsample,
    verify,
    write_edges,
    write_tree,
)


def ee_bfs(graph, **kwargs):
    """Edge-at-a-time baseline. Returns (tree, metrics)."""
    return run("ee", graph, **kwargs)


def eb_bfs(graph, **kwargs):
    """Batched variant. Returns (tree, metrics)."""
    return run("eb", graph, **kwargs)


def ep_bfs(graph, **kwargs):
    """Partitioned, pruning variant. Returns (tree, metrics)."""
    return run("ep", graph, **kwargs)


__all__ = [
    "ROOT",
    "BfsTree",
    "BudgetError",
    "Error",
    "FormatError",
    "StorageError",
    "TimeLimitError",
    "WatchdogError",
    "eb_bfs",
    "ee_bfs",
    "ep_bfs",
    "generate_er",
    "read_edges",
    "read_header",
    "read_tree",
    "reference_bfs",
    "run",
    "subsample",
    "verify",
    "write_edges",
    "write_tree",
]
