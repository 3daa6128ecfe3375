"""
Catching an intransitive judgment as it happens
===============================================

The session engine checks every submission against all committed
judgments.  An ordinally impossible answer is bounced back with the
offending triads, the pairs the expert may revise, and the relations
that would actually fit.
"""

from paircomp import (
    Accepted,
    ConflictDetected,
    create_study,
    new_session,
    next_pair,
    session_results,
    submit_judgment,
    submit_revision,
    three_point,
)

study = create_study(["coffee", "tea", "water"], three_point())
session = new_session(study, "demo-expert")

# first two pairs: coffee ~ tea, coffee ~ water
for value in (1, 1):
    pair = next_pair(session)
    print(f"pair {pair.label_i} vs {pair.label_j}: submitting {value}")
    res = submit_judgment(session, value)
    assert isinstance(res, Accepted)

# now claim tea > water; but tea ~ coffee ~ water makes that impossible
pair = next_pair(session)
print(f"pair {pair.label_i} vs {pair.label_j}: submitting 3")
res = submit_judgment(session, 3)
assert isinstance(res, ConflictDetected)

print("\nconflict detected:")
for t in res.triads:
    print(f"  triad (m={t.m}, i={t.i}, j={t.j}): "
          f"r_mj={t.r_mj.value} r_ij={t.r_ij.value} r_mi={t.r_mi.value}")
print(f"  revisable pairs: {res.candidates.pairs}")
print(f"  admissible relations for the pair: "
      f"{sorted(r.value for r in res.admissible)}")

# the expert concedes and marks the pair equal
res = submit_revision(session, (2, 3), 1)
print(f"\nrevised to 1: accepted, done={res.done}")

results = session_results(session)
print(f"weights (eigen): {[round(x, 4) for x in results['w_eigen']]}")
print(f"CR = {results['cr']:.4f}")
