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
import subprocess
from pathlib import Path

import pytest

BIN = os.environ.get("RANKENUM_BIN", "rankenum")
DATA = Path(os.environ.get("RANKENUM_DATA", Path(__file__).resolve().parents[2] / "data"))


def run(*args, env=None):
    full_env = {k: v for k, v in os.environ.items() if not k.startswith("RANKENUM_")}
    full_env.update(env or {})
    return subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, env=full_env, timeout=300)


def enumerate_lines(transducer, doc, *extra):
    r = run("enumerate", "--transducer", DATA / transducer, "--doc", DATA / doc, *extra)
    assert r.returncode == 0, r.stderr
    return [json.loads(line) for line in r.stdout.splitlines()]


def test_limit_two_on_annotation():
    rows = enumerate_lines("annotation.json", "annotation_doc.txt", "--limit", "2")
    assert [r["rank"] for r in rows] == [1, 2]
    assert rows[0]["weight"] <= rows[1]["weight"]


def test_limit_zero_prints_nothing():
    r = run("enumerate", "--transducer", DATA / "annotation.json", "--doc", DATA / "annotation_doc.txt",
            "--limit", "0")
    assert r.returncode == 0
    assert r.stdout == ""


def test_regex_spanner_contains_expected_tuples():
    rows = enumerate_lines("regex_spanner.json", "regex_doc.txt")
    tuples = [r["tuple"] for r in rows]
    assert [["⊢x", 4], ["⊣x", 7], ["⊢y", 8], ["⊣y", 9]] in tuples
    assert [["⊢x", 4], ["⊣x⊢y", 6], ["⊣y", 9]] in tuples
    weights = [r["weight"] for r in rows]
    assert weights == sorted(weights)


@pytest.mark.parametrize("algo", ["simple", "epoch"])
def test_algorithms_agree(algo):
    base = enumerate_lines("email.json", "email_doc.txt", "--algo", "simple")
    rows = enumerate_lines("email.json", "email_doc.txt", "--algo", algo)
    assert rows == base
    weights = [r["weight"] for r in rows]
    assert 0 in weights and 1 in weights
    assert weights.index(1) > max(i for i, w in enumerate(weights) if w == 0)


def test_symbol_outside_alphabet():
    r = run("enumerate", "--transducer", DATA / "regex_spanner.json", "--doc", DATA / "bad_doc.txt")
    assert r.returncode == 2
    assert "position 3" in r.stderr


def test_malformed_transition(tmp_path):
    text = (DATA / "deterministic.json").read_text().splitlines()
    idx = next(i for i, line in enumerate(text) if '"to": "q"' in line)
    text[idx] = text[idx].replace('"q"', '"nowhere"')
    bad = tmp_path / "bad.json"
    bad.write_text("\n".join(text) + "\n")
    r = run("enumerate", "--transducer", bad, "--doc", DATA / "deterministic_doc.txt")
    assert r.returncode == 2
    assert f"line {idx + 1}" in r.stderr
    assert "transitions[1].to" in r.stderr


def test_usage_error_exit_code():
    assert run("enumerate").returncode == 2
    assert run("enumerate", "--transducer", DATA / "annotation.json", "--doc", DATA / "annotation_doc.txt",
               "--algo", "fast").returncode == 2


def test_csv_format():
    r = run("enumerate", "--transducer", DATA / "annotation.json", "--doc", DATA / "annotation_doc.txt",
            "--format", "csv", "--limit", "3")
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    assert lines[0].startswith("rank,")
    assert len(lines) == 4


def test_validate():
    assert run("validate", "--transducer", DATA / "deterministic.json").returncode == 0
    amb = run("validate", "--transducer", DATA / "parallel_ambiguous.json")
    assert amb.returncode == 3
    assert 'document "a"' in amb.stdout
    assert run("validate", "--transducer", DATA / "regex_spanner.json", "--max-len", "9").returncode == 0


def test_enumerate_ambiguous_transducer_still_runs():
    r = run("enumerate", "--transducer", DATA / "parallel_ambiguous.json", "--doc", DATA / "parallel_doc.txt")
    assert r.returncode == 0


def test_sort(tmp_path):
    f = tmp_path / "s.json"
    f.write_text(json.dumps({"group": "int64", "basis": [1], "bound": 3, "sums": [[3], [1], [2]]}))
    for backend in ["auto", "baseline", "radix", "rounding"]:
        r = run("sort", f, "--backend", backend)
        assert r.returncode == 0, r.stderr
        assert json.loads(r.stdout) == [2, 3, 1]
    r = run("sort", "--input", f, "--instrument")
    assert "comparisons=" in r.stderr
    f.write_text("{broken")
    assert run("sort", f).returncode == 2


def test_sort_lex(tmp_path):
    f = tmp_path / "lex.json"
    f.write_text(json.dumps({"group": "lex:2", "basis": [[1, 0], [0, 1]], "bound": 4,
                             "sums": [[1, 1], [0, 2], [2, 0], [0, 0]]}))
    r = run("sort", f, "--backend", "rounding")
    assert json.loads(r.stdout) == [4, 2, 1, 3]


def bench(algo, transducer="annotation.json", doc="annotation_doc.txt", *extra):
    r = run("bench", "--transducer", DATA / transducer, "--doc", DATA / doc, "--algo", algo, *extra)
    assert r.returncode == 0, r.stderr
    lines = r.stdout.splitlines()
    assert lines[0].startswith("# preprocessing_ns=")
    meta = dict(kv.split("=") for kv in lines[0][2:].split())
    header = lines[1].split(",")
    rows = [dict(zip(header, line.split(","))) for line in lines[2:]]
    return meta, header, rows


def test_bench_row_count():
    _, header, rows = bench("simple")
    assert header == ["rank", "size", "delay_ns", "aux_heap"]
    assert len(rows) == 64
    _, _, rows = bench("simple", "annotation.json", "annotation_doc.txt", "--limit", "10")
    assert len(rows) == 10


def test_bench_aux_heap_bound():
    meta, _, rows = bench("simple")
    bound = int(meta["heap_edges"]) + 1
    assert max(int(r["aux_heap"]) for r in rows) <= bound


def test_bench_epoch_boundaries():
    meta, header, rows = bench("epoch")
    assert header[-1] == "epoch"
    n = int(meta["nodes"])
    starts = [int(r["rank"]) for i, r in enumerate(rows) if i == 0 or r["epoch"] != rows[i - 1]["epoch"]]
    expected = [1]
    boundary = n
    while boundary < len(rows):
        expected.append(boundary + 1)
        boundary *= 2
    assert starts == expected


def test_environment_overrides():
    env = {"RANKENUM_TRANSDUCER": str(DATA / "annotation.json"), "RANKENUM_DOC": str(DATA / "annotation_doc.txt"),
           "RANKENUM_LIMIT": "4"}
    r = run("enumerate", env=env)
    assert r.returncode == 0
    assert len(r.stdout.splitlines()) == 4


def test_output_is_byte_identical():
    args = ("enumerate", "--transducer", DATA / "email.json", "--doc", DATA / "email_doc.txt", "--algo", "epoch",
            "--seed", "7")
    assert run(*args).stdout == run(*args).stdout
