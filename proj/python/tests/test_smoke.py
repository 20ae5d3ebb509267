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

import json
import os
import random
from pathlib import Path

import pytest

import rankenum

DATA = Path(os.environ.get("RANKENUM_DATA", Path(__file__).resolve().parents[2] / "data"))


def test_annotation_matches_brute_force():
    t = DATA / "annotation.json"
    got = list(rankenum.enumerate(t, "abaabc"))
    assert len(got) == 64
    weights = [w for w, _ in got]
    assert weights == sorted(weights)
    assert sorted(got, key=repr) == sorted(rankenum.brute_force(t, "abaabc"), key=repr)
    assert (5, [("γ", 2), ("δ", 3), ("δ", 6)]) in [(w, list(map(tuple, e))) for w, e in got]


def test_epoch_matches_simple():
    t = json.loads((DATA / "email.json").read_text())
    simple = list(rankenum.enumerate(t, "ab@b aba b"))
    epoch = list(rankenum.enumerate(t, "ab@b aba b", algorithm="epoch", n=2))
    assert simple == epoch


def test_limit_and_emitted():
    e = rankenum.enumerate(DATA / "annotation.json", "abaabc", limit=3)
    assert len(list(e)) == 3
    assert e.emitted == 3


def test_validate():
    assert rankenum.validate(DATA / "deterministic.json") is None
    w = rankenum.validate(DATA / "parallel_ambiguous.json")
    assert w["document"] == "a"
    assert w["run1"] != w["run2"]


def test_errors():
    with pytest.raises(rankenum.ParseError):
        list(rankenum.enumerate(DATA / "regex_spanner.json", "abxab"))
    with pytest.raises(rankenum.AmbiguityDetected):
        rankenum.brute_force(DATA / "parallel_ambiguous.json", "a")
    with pytest.raises(rankenum.ParseError):
        rankenum.enumerate("{", "a")


def test_sort_nsums():
    perm, report = rankenum.sort_nsums([1], [[3], [1], [2]])
    assert perm == [1, 2, 0]
    assert report["used"] == "baseline"
    rng = random.Random(3)
    basis = [rng.randint(-50, 50) for _ in range(3)]
    sums = [[rng.randint(0, 20) for _ in range(3)] for _ in range(6000)]
    values = [sum(a * g for a, g in zip(s, basis)) for s in sums]
    want = sorted(range(len(sums)), key=lambda i: values[i])
    for backend in ["auto", "baseline", "radix", "rounding"]:
        perm, report = rankenum.sort_nsums(basis, sums, backend=backend, seed=5)
        assert perm == want, backend
    assert report["used"] == "rounding"


def test_sort_lex_and_bigint():
    perm, _ = rankenum.sort_nsums([[1, 0], [0, 1]], [[1, 1], [0, 2], [2, 0]], group="lex:2")
    assert perm == [1, 0, 2]
    big = 10**30
    perm, _ = rankenum.sort_nsums([big, -1], [[1, 0], [0, 1], [0, 0]], group="bigint")
    assert perm == [1, 2, 0]
