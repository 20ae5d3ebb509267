#!/usr/bin/env python3
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
"""Writes the transducer fixtures under data/."""

import json
import pathlib
import sys

EMPTY = "_"


def transducer(group, alphabet, markers, states, initial, finals, transitions):
    return {
        "group": group,
        "alphabet": alphabet,
        "markers": markers,
        "empty_marker": EMPTY,
        "states": states,
        "initial": initial,
        "finals": finals,
        "transitions": [
            {"from": f, "symbol": s, "weight": w, "marker": m, "to": t}
            for (f, s, w, m, t) in transitions
        ],
    }


def regex_spanner():
    # (c+b)* [x (a+b)* x] a* [y a* y] c*
    # Brackets that fire before a letter are combined into one marker; a span
    # (i, j) shows its opening bracket at i and its closing bracket at j + 1.
    phases = ["P0", "X", "A", "Y", "C"]
    letters = [["c", "b"], ["a", "b"], ["a"], ["a"], ["c"]]
    brackets = ["⊢x", "⊣x", "⊢y", "⊣y"]
    inside = {1, 3}
    markers = [EMPTY]
    trans = []
    for p in range(5):
        for q in range(p, 5):
            marker = "".join(brackets[p:q]) or EMPTY
            if marker not in markers:
                markers.append(marker)
            for ch in letters[q]:
                trans.append((phases[p], ch, -1 if q in inside else 0, marker, phases[q]))
    return transducer("int64", ["a", "b", "c"], markers, phases, "P0", ["C"], trans)


def annotation():
    # One state; any letter may stay unmarked, b may carry gamma, a and c delta.
    trans = []
    for ch in "abc":
        trans.append(("q", ch, 0, EMPTY, "q"))
    trans.append(("q", "b", 1, "γ", "q"))
    trans.append(("q", "a", 2, "δ", "q"))
    trans.append(("q", "c", 2, "δ", "q"))
    return transducer("int64", ["a", "b", "c"], [EMPTY, "γ", "δ"], ["q"], "q", ["q"], trans)


def email():
    # One factor [ab]+ @ [ab]+; a letter standing in for '@' costs 1.
    sigma = ["a", "b", "@", " "]
    trans = []
    for ch in sigma:
        trans.append(("O", ch, 0, EMPTY, "O"))
        trans.append(("O2", ch, 0, EMPTY, "O2"))
    for ch in "ab":
        trans.append(("O", ch, 0, "⊢e", "L"))
        trans.append(("L", ch, 0, EMPTY, "L"))
        trans.append(("L", ch, 1, "fix", "D0"))
        trans.append(("D0", ch, 0, EMPTY, "D"))
        trans.append(("D", ch, 0, EMPTY, "D"))
    trans.append(("L", "@", 0, EMPTY, "D0"))
    trans.append(("D", " ", 0, "⊣e", "O2"))
    return transducer("int64", sigma, [EMPTY, "⊢e", "⊣e", "fix"], ["O", "L", "D0", "D", "O2"], "O",
                      ["D", "O2"], trans)


def parallel():
    trans = [("p", "a", 0, EMPTY, "q"), ("p", "a", 1, EMPTY, "q")]
    return transducer("int64", ["a"], [EMPTY], ["p", "q"], "p", ["q"], trans)


def deterministic():
    trans = [
        ("p", "a", 0, EMPTY, "p"),
        ("p", "b", 1, "m", "q"),
        ("q", "a", 2, EMPTY, "q"),
        ("q", "b", 0, "m", "p"),
    ]
    return transducer("int64", ["a", "b"], [EMPTY, "m"], ["p", "q"], "p", ["p", "q"], trans)


def scaling():
    # Four states; exponentially many outputs of varying size.
    trans = []
    for ch in "ab":
        trans.append(("B", ch, 0, EMPTY, "B"))
        trans.append(("B", ch, 1, "⊢x", "X"))
        trans.append(("X", ch, 1, EMPTY, "X"))
        trans.append(("X", ch, 0, "⊣x", "A"))
        trans.append(("A", ch, 0, EMPTY, "A"))
        trans.append(("C", ch, 0, EMPTY, "C"))
    trans.append(("X", "b", 2, "•", "X"))
    trans.append(("A", "a", 3, "!", "C"))
    return transducer("int64", ["a", "b"], [EMPTY, "⊢x", "⊣x", "•", "!"], ["B", "X", "A", "C"], "B",
                      ["A", "C"], trans)


def main(out_dir):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    fixtures = {
        "regex_spanner.json": regex_spanner(),
        "annotation.json": annotation(),
        "email.json": email(),
        "parallel_ambiguous.json": parallel(),
        "deterministic.json": deterministic(),
        "scaling.json": scaling(),
    }
    for name, t in fixtures.items():
        (out / name).write_text(json.dumps(t, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    docs = {
        "regex_doc.txt": "cbcabaaac",
        "annotation_doc.txt": "abaabc",
        "email_doc.txt": "ab@b aba b",
        "parallel_doc.txt": "a",
        "deterministic_doc.txt": "abbaab",
        "bad_doc.txt": "abxab",
    }
    for name, text in docs.items():
        (out / name).write_text(text + "\n", encoding="utf-8")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else str(pathlib.Path(__file__).resolve().parent.parent / "data"))
