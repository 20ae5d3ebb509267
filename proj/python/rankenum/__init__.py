# Copyright 2026 The rankenum Authors
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

"""Ranked enumeration of weighted transducer outputs.

Transducers are given as JSON text, a dict in the same layout, or a path to
a JSON file. Results are ``(weight, [(marker, position), ...])`` pairs in
non-decreasing weight order.
"""

import json
import os

from ._rankenum import (
    AmbiguityDetected,
    Enumeration,
    ParseError,
    PreconditionViolation,
    SizeBoundExceeded,
)
from . import _rankenum

__all__ = [
    "AmbiguityDetected",
    "Enumeration",
    "ParseError",
    "PreconditionViolation",
    "SizeBoundExceeded",
    "brute_force",
    "enumerate",
    "sort_nsums",
    "validate",
]


def _transducer_text(transducer):
    if isinstance(transducer, dict):
        return json.dumps(transducer)
    if isinstance(transducer, os.PathLike) or (
        isinstance(transducer, str) and not transducer.lstrip().startswith("{")
    ):
        with open(transducer, encoding="utf-8") as f:
            return f.read()
    return transducer


def enumerate(transducer, document, algorithm="simple", limit=-1, seed=0, n=0, backend="auto"):
    """Iterates over outputs on ``document`` by increasing weight."""
    return Enumeration(_transducer_text(transducer), document, algorithm, limit, seed, n, backend)


def validate(transducer, max_len=8):
    """Returns None if no ambiguity witness exists up to ``max_len``, else the witness."""
    return _rankenum.validate(_transducer_text(transducer), max_len)


def brute_force(transducer, document, max_len=12):
    """All outputs by exhaustive run enumeration, sorted by weight."""
    return _rankenum.brute_force(_transducer_text(transducer), document, max_len)


def sort_nsums(basis, sums, bound=None, group="int64", backend="auto", seed=0):
    """Sorts n-sums over ``basis``; returns (0-based permutation, report dict)."""
    sums = [list(s) for s in sums]
    if bound is None:
        bound = max((sum(s) for s in sums), default=0)
    basis = [str(g) if group == "bigint" else g for g in basis]
    text = json.dumps({"group": group, "basis": basis, "bound": bound, "sums": sums})
    return _rankenum.sort_nsums_json(text, backend, seed)
