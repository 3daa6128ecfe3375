"""Ordinal transitivity control for judgment triads.

A triad joins the current pair (i, j) with an earlier object m < i through
the two committed judgments a_mi and a_mj.  The relation alphabet has three
classes (more / equal / less), so a triad takes one of 27 relation
combinations; 14 of them cannot be realized by any weak order and are
rejected as conflicts.  The checker is purely ordinal: magnitude slips that
keep the direction of a judgment are undetectable by design.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .core import JudgmentMatrix, Relation, relation_of
from .errors import BadIndex, IncompleteMatrix, MissingPrerequisite

__all__ = [
    "TriadStatus",
    "Triad",
    "ConflictVerdict",
    "RevisionCandidates",
    "classify_triad",
    "conflict_census",
    "admissible_relations",
    "admissible_for_pair",
    "check_new_judgment",
    "revision_candidates",
    "full_matrix_audit",
]


class TriadStatus(enum.Enum):
    CONSISTENT = "consistent"
    CONFLICT = "conflict"


@dataclass(frozen=True)
class Triad:
    """Positions (m, i, j) with m < i < j and their three relations."""

    m: int
    i: int
    j: int
    r_mj: Relation
    r_ij: Relation
    r_mi: Relation


@dataclass(frozen=True)
class ConflictVerdict:
    """Outcome of a triad check.

    When status is CONFLICT, required carries the relation the submitted
    pair (i, j) would need for the triad to become consistent; it always
    differs from the observed r_ij.
    """

    status: TriadStatus
    required: Relation | None


def _clamp(s: int) -> int:
    return max(-1, min(1, s))


def classify_triad(r_mj: Relation, r_ij: Relation, r_mi: Relation) -> ConflictVerdict:
    """Sign-transitivity verdict for one relation triple.

    Composing M vs J (sign u) with J vs I (sign -s(r_ij)) determines M vs I
    unless the two signs oppose; a determined composition that contradicts
    the observed r_mi is a conflict.  Equivalently: the triple is consistent
    iff some weak order on {m, i, j} realizes all three relations.

    Args:
        r_mj: relation of a_mj (M vs J).
        r_ij: relation of a_ij (I vs J), the judgment under test.
        r_mi: relation of a_mi (M vs I).

    Returns:
        ConflictVerdict; on conflict, required is the forced r_ij.
    """
    u = r_mj.sign
    v = -r_ij.sign
    if u * v == -1:
        # M vs J and J vs I pull in opposite strict directions: any r_mi fits
        return ConflictVerdict(TriadStatus.CONSISTENT, None)
    if r_mi.sign == _clamp(u + v):
        return ConflictVerdict(TriadStatus.CONSISTENT, None)
    # chain I -> M -> J is determined here (the conflict rules out the
    # unconstrained column s(r_mi) == s(r_mj) != 0), so r_ij is forced
    required = Relation.from_sign(_clamp(u - r_mi.sign))
    return ConflictVerdict(TriadStatus.CONFLICT, required)


def conflict_census() -> int:
    """Count of conflicting relation triples among all 3^3 = 27."""
    return sum(
        1
        for r_mj, r_ij, r_mi in itertools.product(Relation, repeat=3)
        if classify_triad(r_mj, r_ij, r_mi).status is TriadStatus.CONFLICT
    )


def admissible_relations(r_mi: Relation, r_mj: Relation) -> set[Relation]:
    """Relations r_ij that keep the triad consistent; never empty.

    Either all three relations are admissible (when m strictly dominates or
    is dominated by both i and j) or exactly one is forced.
    """
    return {
        r
        for r in Relation
        if classify_triad(r_mj, r, r_mi).status is TriadStatus.CONSISTENT
    }


def admissible_for_pair(matrix: JudgmentMatrix, i: int, j: int) -> set[Relation]:
    """Intersection of admissible relations for (i, j) over all m < i.

    All three relations for a first-row pair.  Raises MissingPrerequisite
    if some required a_mi or a_mj is unset.
    """
    allowed = set(Relation)
    for m in range(1, i):
        a_mi, a_mj = matrix.get(m, i), matrix.get(m, j)
        if a_mi is None or a_mj is None:
            raise MissingPrerequisite(f"triad ({m},{i},{j}) context is unset")
        allowed &= admissible_relations(relation_of(a_mi), relation_of(a_mj))
    return allowed


def check_new_judgment(matrix: JudgmentMatrix, i: int, j: int, v) -> list[Triad]:
    """All triads the candidate judgment a_ij = v would violate.

    Args:
        matrix: holds the committed judgments a_mi, a_mj for every m < i.
        i, j: the pair under elicitation (1-based, i < j).
        v: the candidate value; only its ordinal class matters.

    Returns:
        One Triad per conflicting m, in ascending m order; empty means
        accept.  Row-1 pairs have no prior rows and always return empty.
    """
    r_ij = relation_of(v)
    conflicts = []
    for m in range(1, i):
        a_mi, a_mj = matrix.get(m, i), matrix.get(m, j)
        if a_mi is None or a_mj is None:
            raise MissingPrerequisite(f"triad ({m},{i},{j}) context is unset")
        r_mi, r_mj = relation_of(a_mi), relation_of(a_mj)
        if classify_triad(r_mj, r_ij, r_mi).status is TriadStatus.CONFLICT:
            conflicts.append(Triad(m, i, j, r_mj, r_ij, r_mi))
    return conflicts


@dataclass(frozen=True)
class RevisionCandidates:
    """Pairs the expert may change to resolve a conflict, in offer order."""

    pairs: tuple[tuple[int, int], ...]


def revision_candidates(i: int, j: int) -> RevisionCandidates:
    """Which pairs may be revised after a conflict on (i, j).

    Row 2 offers the current pair plus both pairs against m = 1; from row 3
    onward the error can only sit in the current pair itself.
    """
    if i < 2:
        raise BadIndex(f"row {i} has no triads to conflict")
    if j <= i:
        raise BadIndex(f"need i < j, got ({i},{j})")
    if i == 2:
        return RevisionCandidates(((i, j), (1, j), (1, i)))
    return RevisionCandidates(((i, j),))


def full_matrix_audit(matrix: JudgmentMatrix) -> list[Triad]:
    """Post-hoc scan of every (m, i, j) triple of a complete matrix."""
    from .core import is_complete

    if not is_complete(matrix):
        raise IncompleteMatrix("audit needs a complete matrix")
    conflicts = []
    for m, i, j in itertools.combinations(range(1, matrix.h + 1), 3):
        r_mj = relation_of(matrix.get(m, j))
        r_ij = relation_of(matrix.get(i, j))
        r_mi = relation_of(matrix.get(m, i))
        if classify_triad(r_mj, r_ij, r_mi).status is TriadStatus.CONFLICT:
            conflicts.append(Triad(m, i, j, r_mj, r_ij, r_mi))
    return conflicts
