"""JSON file formats for judgment matrices and binary comparison matrices."""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .baselines import BinaryComparisonMatrix
from .core import (
    ComparisonScale,
    JudgmentMatrix,
    free_scale,
    new_matrix,
    saaty9,
    set_judgment,
    three_point,
)
from .errors import BadDimension, BadIndex, BadScale, BadValue, MalformedMatrix


def scale_to_dict(scale: ComparisonScale) -> dict:
    if scale.kind == "three_point":
        return {"kind": "three_point", "F": scale.F, "G": scale.G}
    if scale.kind in ("saaty9", "free"):
        return {"kind": scale.kind}
    raise BadScale(f"unknown scale kind {scale.kind!r}")


def scale_from_dict(d: dict) -> ComparisonScale:
    kind = d.get("kind")
    if kind == "saaty9":
        return saaty9()
    if kind == "three_point":
        return three_point(d["F"], d["G"])
    if kind == "free":
        return free_scale()
    raise BadScale(f"unknown scale kind {kind!r}")


def matrix_to_dict(matrix: JudgmentMatrix, scale: ComparisonScale | None = None) -> dict:
    """Upper-triangle serialization; rationals as num/den, floats as "value"."""
    entries = []
    for i in range(1, matrix.h + 1):
        for j in range(i + 1, matrix.h + 1):
            v = matrix.get(i, j)
            if v is None:
                continue
            if isinstance(v, Fraction):
                entries.append(
                    {"i": i, "j": j, "value_num": v.numerator, "value_den": v.denominator}
                )
            else:
                entries.append({"i": i, "j": j, "value": float(v)})
    return {
        "h": matrix.h,
        "labels": list(matrix.labels),
        "scale": scale_to_dict(scale if scale is not None else free_scale()),
        "entries": entries,
    }


def matrix_from_dict(d: dict) -> tuple[JudgmentMatrix, ComparisonScale]:
    try:
        h = d["h"]
        labels = d["labels"]
        scale = scale_from_dict(d["scale"])
        entries = d["entries"]
    except (KeyError, TypeError) as exc:
        raise MalformedMatrix(f"missing or malformed field: {exc}") from exc
    try:
        m = new_matrix(h, labels)
    except (BadDimension, TypeError) as exc:
        raise MalformedMatrix(str(exc)) from exc
    for e in entries:
        try:
            i, j = e["i"], e["j"]
            if "value_num" in e:
                v = Fraction(e["value_num"], e["value_den"])
            else:
                v = float(e["value"])
            set_judgment(m, i, j, v)
        except (KeyError, TypeError, ValueError, ZeroDivisionError, BadIndex, BadValue) as exc:
            raise MalformedMatrix(f"bad entry {e!r}") from exc
    return m, scale


def save_matrix(matrix: JudgmentMatrix, path, scale: ComparisonScale | None = None) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(matrix_to_dict(matrix, scale), f, indent=1)
        f.write("\n")


def load_matrix(path) -> tuple[JudgmentMatrix, ComparisonScale]:
    with open(path, encoding="utf-8") as f:
        return matrix_from_dict(json.load(f))


def binary_to_dict(b: BinaryComparisonMatrix) -> dict:
    entries = []
    for i in range(1, b.h + 1):
        for j in range(i + 1, b.h + 1):
            entries.append({"i": i, "j": j, "value": float(b.b[i - 1, j - 1])})
    return {"h": b.h, "labels": list(b.labels), "entries": entries}


def binary_from_dict(d: dict) -> BinaryComparisonMatrix:
    try:
        h = d["h"]
        labels = d.get("labels") or [str(i) for i in range(1, h + 1)]
        entries = d["entries"]
    except (KeyError, TypeError) as exc:
        raise MalformedMatrix(f"missing or malformed field: {exc}") from exc
    b = np.full((h, h), np.nan)
    for e in entries:
        try:
            i, j, v = e["i"], e["j"], float(e["value"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedMatrix(f"bad entry {e!r}") from exc
        if not (1 <= i < j <= h):
            raise MalformedMatrix(f"entry ({i},{j}) not in the upper triangle")
        b[i - 1, j - 1] = v
        b[j - 1, i - 1] = 1.0 - v
    return BinaryComparisonMatrix(b, labels)


def save_binary(b: BinaryComparisonMatrix, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(binary_to_dict(b), f, indent=1)
        f.write("\n")


def load_binary(path) -> BinaryComparisonMatrix:
    with open(path, encoding="utf-8") as f:
        return binary_from_dict(json.load(f))
