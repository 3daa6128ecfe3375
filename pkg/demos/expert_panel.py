"""
A panel of experts, three ways to combine them
==============================================

Three experts rank the same four wants.  Their full judgment matrices
give mean weights with Student-t intervals; collapsing each matrix to
binary wins gives the C-frequency ranking; pooling the wins across the
panel gives Thurstone scale scores.
"""

import numpy as np

from paircomp import (
    aggregate,
    binary_from_scores,
    c_frequencies,
    consistency_report,
    eigen_weights,
    new_matrix,
    pair_sequence,
    preference_intensities,
    set_judgment,
    thurstone_scale,
    three_point,
)

labels = ["range", "comfort", "price", "styling"]
scale = three_point()

# each expert's latent scores; their matrices quantize the exact ratios
latent = [
    [0.40, 0.30, 0.20, 0.10],
    [0.45, 0.20, 0.25, 0.10],
    [0.35, 0.30, 0.25, 0.10],
]

from paircomp import quantize_ratio

vectors, crs = [], []
for scores in latent:
    m = new_matrix(4, labels)
    for i, j in pair_sequence(4):
        set_judgment(m, i, j, quantize_ratio(scores[i - 1] / scores[j - 1], scale))
    w, _ = eigen_weights(m)
    vectors.append(w)
    crs.append(consistency_report(m).cr)

agg = aggregate(vectors, crs, level=0.95)
print(f"{'want':<10} {'mean w':>8} {'+/-':>8}")
for idx, label in enumerate(labels):
    print(f"{label:<10} {agg.mean_w[idx]:>8.4f} {agg.half_width[idx]:>8.4f}")
print(f"per-expert CR: {[round(c, 3) for c in crs]}")

# binary view: strict wins only
binaries = [binary_from_scores(s, labels) for s in latent]
c = c_frequencies(binaries[0])
print(f"\nexpert 1 C-frequencies: {[int(x) for x in c.c]}  ranking {list(c.ranking)}")

# panel view: preference intensities and Thurstone scores
p = preference_intensities(binaries)
s = thurstone_scale(p)
order = np.argsort(s)[::-1]
print("\nThurstone scale (0 = weakest):")
for idx in order:
    print(f"  {labels[idx]:<10} {s[idx]:>7.3f}")
