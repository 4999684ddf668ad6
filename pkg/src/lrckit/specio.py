"""JSON code-spec files: save a constructed code, reload it elsewhere.

The file embeds the derived evaluation set and line registry for
reproducibility; loading rebuilds the code from its parameters and
cross-checks the embedded geometry, so a stale or edited file fails loudly
instead of decoding against the wrong layout.  Integers throughout;
rationals appear as "p/q" strings; no floats in the data plane.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .errors import SpecFileError
from .evalset import PairSet
from .inner import InnerCode, make_explicit_code
from .lrc2 import LrcCode, build_lrc2, make_systematic2
from .lrc3 import Lrc3Code, build_lrc3

FORMAT = "lrckit-code-spec"
VERSION = 1

AnyCode = Union[LrcCode, Lrc3Code]


def code_to_dict(code: AnyCode) -> dict:
    doc = {
        "format": FORMAT,
        "version": VERSION,
        "kind": code.kind,
        "q": code.field.q,
        "L": code.L,
        "pairs": [list(p) for p in code.pair_set],
        "inner": code.inner.as_dict(),
        "K": code.K,
        "points": [list(p) for p in code.eval_set.points],
        "lines": [
            {
                "base": list(line.base),
                "direction": list(line.direction),
                "ts": list(line.ts),
                "nodes": list(line.nodes),
            }
            for line in code.eval_set.lines
        ],
    }
    if isinstance(code, Lrc3Code):
        doc["case"] = code.case
    if isinstance(code, LrcCode) and code.systematic:
        doc["systematic"] = True
    return doc


def save_code(code: AnyCode, path: str | Path) -> None:
    Path(path).write_text(json.dumps(code_to_dict(code), indent=2) + "\n")


def _require(doc: dict, key: str, types) -> object:
    if key not in doc:
        raise SpecFileError(f"spec file missing key {key!r}")
    val = doc[key]
    if not isinstance(val, types):
        raise SpecFileError(f"spec key {key!r} has wrong type {type(val).__name__}")
    return val


def code_from_dict(doc: dict) -> AnyCode:
    if _require(doc, "format", str) != FORMAT:
        raise SpecFileError(f"not a {FORMAT} document")
    if _require(doc, "version", int) != VERSION:
        raise SpecFileError(f"unsupported version {doc['version']}")
    kind = _require(doc, "kind", str)
    q = _require(doc, "q", int)
    L = _require(doc, "L", int)
    pairs_raw = _require(doc, "pairs", list)
    inner_doc = _require(doc, "inner", dict)
    if _require(inner_doc, "q", int) != q:
        raise SpecFileError("inner code field disagrees with outer q")
    rows = _require(inner_doc, "rows", list)
    try:
        inner = make_explicit_code(q, [tuple(r) for r in rows])
        pair_set = PairSet.of([tuple(p) for p in pairs_raw])
        if kind == "locality2":
            if doc.get("systematic"):
                code: AnyCode = make_systematic2(inner, pair_set, L)
            else:
                code = build_lrc2(inner, pair_set, L, allow_uncovered=True)
        elif kind == "locality3":
            case = doc.get("case", "A")
            code = build_lrc3(inner, pair_set, L, case=case, allow_uncovered=True)
        else:
            raise SpecFileError(f"unknown kind {kind!r}")
    except SpecFileError:
        raise
    except Exception as exc:
        raise SpecFileError(f"cannot rebuild code from spec: {exc}") from exc

    embedded_points = [tuple(p) for p in _require(doc, "points", list)]
    if list(code.eval_set.points) != embedded_points:
        raise SpecFileError(
            "embedded evaluation points disagree with the rebuilt construction"
        )
    embedded_lines = _require(doc, "lines", list)
    rebuilt = [
        {
            "base": list(line.base),
            "direction": list(line.direction),
            "ts": list(line.ts),
            "nodes": list(line.nodes),
        }
        for line in code.eval_set.lines
    ]
    if rebuilt != embedded_lines:
        raise SpecFileError(
            "embedded line registry disagrees with the rebuilt construction"
        )
    return code


def load_code(path: str | Path) -> AnyCode:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SpecFileError(f"{path}: top level must be an object")
    return code_from_dict(doc)


def save_codeword(symbols, path: str | Path) -> None:
    Path(path).write_text(json.dumps(list(symbols)) + "\n")


def load_codeword(path: str | Path) -> list:
    doc = json.loads(Path(path).read_text())
    if not isinstance(doc, list) or not all(
        v is None or isinstance(v, int) for v in doc
    ):
        raise SpecFileError(f"{path}: codeword must be a JSON array of ints/nulls")
    return doc
