"""Comparison scales, ordinal relations, and the reciprocal judgment matrix.

Scale values are stored as exact rationals so that a value and its
reciprocal multiply to 1 without floating-point drift; free-form matrices
loaded from files may carry arbitrary positive reals instead.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

import numpy as np

from .errors import BadDimension, BadIndex, BadScale, BadValue, IncompleteMatrix

__all__ = [
    "ComparisonScale",
    "saaty9",
    "three_point",
    "free_scale",
    "Relation",
    "JudgmentMatrix",
    "new_matrix",
    "set_judgment",
    "pair_sequence",
    "relation_of",
    "is_complete",
]


class Relation(enum.Enum):
    """Ordinal class of a judgment value: compared exactly against 1."""

    MORE = "more"
    EQUAL = "equal"
    LESS = "less"

    @property
    def sign(self) -> int:
        if self is Relation.MORE:
            return 1
        if self is Relation.LESS:
            return -1
        return 0

    @staticmethod
    def from_sign(s: int) -> "Relation":
        if s > 0:
            return Relation.MORE
        if s < 0:
            return Relation.LESS
        return Relation.EQUAL

    def inverse(self) -> "Relation":
        return Relation.from_sign(-self.sign)


_SAATY_VERBAL = {
    1: "equal importance",
    2: "weakly more important",
    3: "moderately more important",
    4: "moderately to strongly more important",
    5: "strongly more important",
    6: "strongly to very strongly more important",
    7: "very strongly more important",
    8: "very to extremely more important",
    9: "extremely more important",
}


@dataclass(frozen=True)
class ComparisonScale:
    """A finite menu of ratio values an expert may choose from.

    kind is one of "saaty9", "three_point", "free".  For three_point the
    value set is {1/G, 1/F, 1, F, G} with integer G > F > 1.  The "free"
    kind has no menu and admits any positive real (raw matrix files only).
    """

    kind: str
    F: int | None
    G: int | None
    values: tuple[Fraction, ...]
    labels: tuple[str, ...]

    def contains(self, v) -> bool:
        if self.kind == "free":
            return v > 0
        return any(v == u for u in self.values)

    @property
    def name(self) -> str:
        if self.kind == "three_point":
            return f"three_point({self.F},{self.G})"
        return self.kind


def saaty9() -> ComparisonScale:
    """The 9-point scale: integers 1..9 and their reciprocals (17 values)."""
    values = [Fraction(1, d) for d in range(9, 1, -1)]
    values.append(Fraction(1))
    values.extend(Fraction(n) for n in range(2, 10))
    labels = []
    for v in values:
        if v == 1:
            labels.append(_SAATY_VERBAL[1])
        elif v > 1:
            labels.append(_SAATY_VERBAL[int(v)])
        else:
            labels.append(_SAATY_VERBAL[v.denominator].replace("more", "less"))
    return ComparisonScale("saaty9", None, None, tuple(values), tuple(labels))


def three_point(F: int = 3, G: int = 9) -> ComparisonScale:
    """The 5-value scale {1/G, 1/F, 1, F, G}.

    Args:
        F: the "more important" ratio, integer > 1.
        G: the "much more important" ratio, integer > F.

    Raises:
        BadScale: unless F and G are integers with G > F > 1.
    """
    if not (isinstance(F, int) and isinstance(G, int)):
        raise BadScale(f"F and G must be integers, got {F!r}, {G!r}")
    if not (G > F > 1):
        raise BadScale(f"need G > F > 1, got F={F}, G={G}")
    values = (Fraction(1, G), Fraction(1, F), Fraction(1), Fraction(F), Fraction(G))
    labels = (
        "much less important",
        "less important",
        "the objects are equal",
        "more important",
        "much more important",
    )
    return ComparisonScale("three_point", F, G, values, labels)


def free_scale() -> ComparisonScale:
    """Marker scale for raw matrices: any positive real is admissible."""
    return ComparisonScale("free", None, None, (), ())


class JudgmentMatrix:
    """h x h positive reciprocal matrix, possibly partially filled.

    Off-diagonal cells hold None until set.  Indices are 1-based in the
    public API.  Reciprocal entries are stored explicitly; setting a_ij
    writes a_ji = 1/a_ij in the same step.
    """

    def __init__(self, h: int, labels: list[str]):
        if h < 2:
            raise BadDimension(f"need h >= 2, got {h}")
        if len(labels) != h:
            raise BadDimension(f"expected {h} labels, got {len(labels)}")
        self.h = h
        self.labels = list(labels)
        self._a: list[list] = [[None] * h for _ in range(h)]
        for d in range(h):
            self._a[d][d] = Fraction(1)

    def get(self, i: int, j: int):
        """Entry a_ij (1-based), or None when unset."""
        self._check_range(i, j)
        return self._a[i - 1][j - 1]

    def is_set(self, i: int, j: int) -> bool:
        return self.get(i, j) is not None

    def _check_range(self, i: int, j: int) -> None:
        if not (1 <= i <= self.h and 1 <= j <= self.h):
            raise BadIndex(f"indices ({i},{j}) out of range for h={self.h}")

    def _set(self, i: int, j: int, v) -> None:
        # upper-triangle write only; reciprocal filled in the same step
        self._check_range(i, j)
        if i >= j:
            raise BadIndex(f"need i < j, got ({i},{j})")
        if not isinstance(v, Real) or isinstance(v, bool) or not v > 0:
            raise BadValue(f"judgment value must be a positive real, got {v!r}")
        if isinstance(v, int):
            v = Fraction(v)
        self._a[i - 1][j - 1] = v
        self._a[j - 1][i - 1] = 1 / v if isinstance(v, Fraction) else 1.0 / v

    def to_array(self) -> np.ndarray:
        """Dense float copy; raises IncompleteMatrix if any cell is unset."""
        if not is_complete(self):
            raise IncompleteMatrix(f"matrix has unset cells (h={self.h})")
        return np.array([[float(x) for x in row] for row in self._a])

    def copy(self) -> "JudgmentMatrix":
        m = JudgmentMatrix(self.h, self.labels)
        m._a = [row[:] for row in self._a]
        return m

    def __eq__(self, other) -> bool:
        if not isinstance(other, JudgmentMatrix):
            return NotImplemented
        return (
            self.h == other.h
            and self.labels == other.labels
            and self._a == other._a
        )

    def __repr__(self) -> str:
        filled = sum(
            1
            for i, j in pair_sequence(self.h)
            if self._a[i - 1][j - 1] is not None
        )
        return f"JudgmentMatrix(h={self.h}, filled={filled}/{self.h * (self.h - 1) // 2})"


def new_matrix(h: int, labels: list[str]) -> JudgmentMatrix:
    """Fresh matrix: diagonal ones, all off-diagonal cells unset.

    Raises:
        BadDimension: if h < 2 or the label count differs from h.
    """
    return JudgmentMatrix(h, labels)


def set_judgment(matrix: JudgmentMatrix, i: int, j: int, v) -> JudgmentMatrix:
    """Write a_ij = v and a_ji = 1/v (overwrite allowed).

    Args:
        i, j: 1-based indices with i < j.
        v: positive real; integers are promoted to exact rationals.

    Returns:
        The same matrix, updated in place.
    """
    matrix._set(i, j, v)
    return matrix


def pair_sequence(h: int) -> list[tuple[int, int]]:
    """Row-major upper-triangle elicitation order: (1,2),(1,3),...,(h-1,h)."""
    if h < 2:
        raise BadDimension(f"need h >= 2, got {h}")
    return list(itertools.combinations(range(1, h + 1), 2))


def relation_of(v) -> Relation:
    """Ordinal class of a judgment value (exact comparison against 1)."""
    if not isinstance(v, Real) or isinstance(v, bool) or not v > 0:
        raise BadValue(f"judgment value must be a positive real, got {v!r}")
    if v > 1:
        return Relation.MORE
    if v < 1:
        return Relation.LESS
    return Relation.EQUAL


def is_complete(matrix: JudgmentMatrix) -> bool:
    """True iff every off-diagonal cell is set."""
    return all(cell is not None for row in matrix._a for cell in row)
